//! Experiment orchestration: build an instance from a file or a generator,
//! run the solver (and optionally the smoothing baseline), write traces,
//! summaries and SVG charts.
//!
//! Output names inside `output_dir`:
//!
//! * single run: `{label}.main.csv`, `{label}.baseline.csv`, `{label}.svg`
//! * sweep: `{label}.n{n}.main.csv` (and `.baseline.csv`) per size,
//!   `{label}.summary.csv`, `{label}.coreset.svg`, `{label}.iterations.svg`

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{generate_gaussian_points, generate_two_gaussians};
use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::io;
use crate::io::{SweepRow, TraceSummary};
use crate::plot::LineChart;
use crate::problems::{
    build_balanced_dev, build_graph_cut, build_l1svm, build_one_median, build_piecewise_linear, BalancedDevData,
    PiecewiseLinearData,
};
use crate::solver::{run, smoothed_fw_baseline, BaselineConfig, IterationRecord, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    /// l1-SVM dual; data is LIBSVM text.
    Svm,
    /// 1-median; data is a points CSV.
    Median,
    /// Multiway graph cut; data is an edge list plus a seeds file.
    GraphCut,
    /// Balanced development; data is JSON ([`BalancedDevData`]).
    Balanced,
    /// Piecewise-linear max; data is JSON ([`PiecewiseLinearData`]).
    Piecewise,
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svm" => Ok(ProblemKind::Svm),
            "median" => Ok(ProblemKind::Median),
            "graph_cut" | "graph-cut" => Ok(ProblemKind::GraphCut),
            "balanced" => Ok(ProblemKind::Balanced),
            "piecewise" => Ok(ProblemKind::Piecewise),
            other => Err(Error::Config(format!("unknown problem {other:?}"))),
        }
    }
}

/// Synthetic data source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    GaussianPoints {
        n: usize,
        d: usize,
        seed: u64,
    },
    TwoGaussians {
        m: usize,
        n: usize,
        d: usize,
        shift: f64,
        sigma: f64,
        seed: u64,
    },
}

impl GeneratorSpec {
    /// The same generator at size `n` (both classes for two Gaussians).
    pub fn with_size(&self, size: usize) -> Self {
        match *self {
            GeneratorSpec::GaussianPoints { d, seed, .. } => GeneratorSpec::GaussianPoints { n: size, d, seed },
            GeneratorSpec::TwoGaussians {
                d, shift, sigma, seed, ..
            } => GeneratorSpec::TwoGaussians {
                m: size,
                n: size,
                d,
                shift,
                sigma,
                seed,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub problem: ProblemKind,
    /// Input file. Exactly one of `data` and `generator` must be set.
    pub data: Option<PathBuf>,
    /// Seeds file for graph cuts.
    pub seeds: Option<PathBuf>,
    /// Label count for graph cuts; defaults to the largest seed label + 1.
    pub num_labels: Option<usize>,
    pub generator: Option<GeneratorSpec>,
    /// Reduction parameter `R` of the SVM dual.
    pub reduction: f64,
    pub solver: SolverConfig,
    pub baseline: bool,
    pub baseline_params: BaselineConfig,
    pub output_dir: PathBuf,
    pub label: String,
    /// Sizes for a sweep; empty means a single run.
    pub sweep_n: Vec<usize>,
    /// Worker threads for sweeps.
    pub jobs: usize,
    pub plots: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: ProblemKind::Median,
            data: None,
            seeds: None,
            num_labels: None,
            generator: None,
            reduction: 1.0,
            solver: SolverConfig::default(),
            baseline: false,
            baseline_params: BaselineConfig::default(),
            output_dir: PathBuf::from("out"),
            label: "run".into(),
            sweep_n: Vec::new(),
            jobs: 1,
            plots: true,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad experiment config: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        match (&self.data, &self.generator) {
            (Some(_), None) | (None, Some(_)) => {}
            _ => return Err(Error::Config("set exactly one of data and generator".into())),
        }
        if let Some(g) = &self.generator {
            let ok = matches!(
                (self.problem, g),
                (ProblemKind::Median, GeneratorSpec::GaussianPoints { .. })
                    | (ProblemKind::Svm, GeneratorSpec::TwoGaussians { .. })
            );
            if !ok {
                return Err(Error::Config(format!(
                    "generator {g:?} does not produce {:?} data",
                    self.problem
                )));
            }
        }
        if self.problem == ProblemKind::GraphCut && self.data.is_some() && self.seeds.is_none() {
            return Err(Error::Config("graph cut needs a seeds file".into()));
        }
        if !self.sweep_n.is_empty() && self.generator.is_none() {
            return Err(Error::Config("a sweep needs a generator".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if self.label.is_empty() || self.label.contains(['/', '\\']) {
            return Err(Error::Config(format!("bad label {:?}", self.label)));
        }
        Ok(())
    }

    /// Builds the instance described by the data source.
    pub fn build_instance(&self) -> Result<ProblemInstance> {
        match (&self.generator, &self.data) {
            (Some(g), _) => self.build_generated(g),
            (None, Some(path)) => self.build_from_file(path),
            (None, None) => Err(Error::Config("no data source".into())),
        }
    }

    fn build_generated(&self, g: &GeneratorSpec) -> Result<ProblemInstance> {
        match *g {
            GeneratorSpec::GaussianPoints { n, d, seed } => build_one_median(&generate_gaussian_points(n, d, seed)?),
            GeneratorSpec::TwoGaussians {
                m,
                n,
                d,
                shift,
                sigma,
                seed,
            } => Ok(
                build_l1svm(&generate_two_gaussians(m, n, d, shift, sigma, seed)?, self.reduction)?
                    .instance()
                    .clone(),
            ),
        }
    }

    fn build_from_file(&self, path: &Path) -> Result<ProblemInstance> {
        match self.problem {
            ProblemKind::Svm => Ok(build_l1svm(&io::load_libsvm(path)?, self.reduction)?.instance().clone()),
            ProblemKind::Median => build_one_median(&io::load_points(path)?),
            ProblemKind::GraphCut => {
                let seeds = self
                    .seeds
                    .as_ref()
                    .ok_or_else(|| Error::Config("graph cut needs a seeds file".into()))?;
                let graph = io::load_graph(path, seeds, self.num_labels)?;
                Ok(build_graph_cut(&graph)?.instance().clone())
            }
            ProblemKind::Balanced => build_balanced_dev(&load_json::<BalancedDevData>(path)?),
            ProblemKind::Piecewise => build_piecewise_linear(&load_json::<PiecewiseLinearData>(path)?),
        }
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = io::read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path, e.line(), e.to_string()))
}

/// Traces of one run.
#[derive(Debug, Clone)]
pub struct RunTraces {
    pub main: Vec<IterationRecord>,
    pub baseline: Option<Vec<IterationRecord>>,
}

/// Files written by [`run_experiment`].
#[derive(Debug, Clone, Default)]
pub struct ExperimentOutput {
    pub traces: Vec<PathBuf>,
    pub summary: Option<PathBuf>,
    pub plots: Vec<PathBuf>,
    pub rows: Vec<SweepRow>,
}

/// Runs the main solver and, if requested, the baseline on the same
/// instance. The two runs execute concurrently.
pub fn run_pair(
    instance: &ProblemInstance,
    solver: &SolverConfig,
    baseline: Option<&BaselineConfig>,
) -> Result<RunTraces> {
    let (main, base) = rayon::join(
        || run(instance, solver),
        || baseline.map(|b| smoothed_fw_baseline(instance, solver, b)),
    );
    Ok(RunTraces {
        main: main?.trace,
        baseline: base.transpose()?.map(|r| r.trace),
    })
}

fn write_run(dir: &Path, stem: &str, traces: &RunTraces, plots: bool, out: &mut ExperimentOutput) -> Result<()> {
    let main_path = dir.join(format!("{stem}.main.csv"));
    io::write_trace(&main_path, &traces.main)?;
    out.traces.push(main_path);
    if let Some(b) = &traces.baseline {
        let p = dir.join(format!("{stem}.baseline.csv"));
        io::write_trace(&p, b)?;
        out.traces.push(p);
    }
    if plots {
        let p = dir.join(format!("{stem}.svg"));
        convergence_chart(stem, traces).write(&p)?;
        out.plots.push(p);
    }
    Ok(())
}

/// Objective gap proxies against `k` on a log axis.
pub fn convergence_chart(title: &str, traces: &RunTraces) -> LineChart {
    let pts = |f: fn(&IterationRecord) -> f64, t: &[IterationRecord]| -> Vec<(f64, f64)> {
        t.iter().map(|r| (r.k as f64, f(r))).collect()
    };
    let mut chart = LineChart::new(title)
        .x_label("iteration k")
        .y_label("value")
        .log_y(true)
        .series("objective", pts(|r| r.objective, &traces.main))
        .series("certified bound", pts(|r| r.certified_bound, &traces.main));
    if let Some(b) = &traces.baseline {
        chart = chart
            .series("baseline objective", pts(|r| r.objective, b))
            .series("baseline gap", pts(|r| r.gap_surrogate, b));
    }
    chart
}

/// Runs one experiment or a sweep, depending on `config.sweep_n`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    if !config.sweep_n.is_empty() {
        return run_sweep(config);
    }
    let instance = config.build_instance()?;
    let traces = run_pair(
        &instance,
        &config.solver,
        config.baseline.then_some(&config.baseline_params),
    )?;
    let mut out = ExperimentOutput::default();
    write_run(dir, &config.label, &traces, config.plots, &mut out)?;
    Ok(out)
}

fn run_sweep(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let generator = config
        .generator
        .as_ref()
        .ok_or_else(|| Error::Config("a sweep needs a generator".into()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", config.jobs)))?;
    let dir = &config.output_dir;
    let results: Vec<Result<(usize, ExperimentOutput, TraceSummary)>> = pool.install(|| {
        config
            .sweep_n
            .par_iter()
            .map(|&n| {
                let single = ExperimentConfig {
                    generator: Some(generator.with_size(n)),
                    sweep_n: Vec::new(),
                    ..config.clone()
                };
                let instance = single.build_instance()?;
                let traces = run_pair(
                    &instance,
                    &config.solver,
                    config.baseline.then_some(&config.baseline_params),
                )?;
                let mut out = ExperimentOutput::default();
                write_run(dir, &format!("{}.n{n}", config.label), &traces, config.plots, &mut out)?;
                let summary = io::summarize(&traces.main).ok_or_else(|| Error::Config("empty trace".into()))?;
                Ok((n, out, summary))
            })
            .collect()
    });

    let mut out = ExperimentOutput::default();
    for r in results {
        let (n, run_out, summary) = r?;
        out.traces.extend(run_out.traces);
        out.plots.extend(run_out.plots);
        out.rows.push(SweepRow { n, summary });
    }
    let summary_path = dir.join(format!("{}.summary.csv", config.label));
    io::write_summary(&summary_path, &out.rows)?;
    out.summary = Some(summary_path);
    if config.plots {
        let ns = |f: fn(&TraceSummary) -> f64| -> Vec<(f64, f64)> {
            out.rows.iter().map(|r| (r.n as f64, f(&r.summary))).collect()
        };
        let coreset = dir.join(format!("{}.coreset.svg", config.label));
        LineChart::new("coreset size")
            .x_label("n")
            .y_label("coreset size")
            .series("coreset", ns(|s| s.coreset_size as f64))
            .write(&coreset)?;
        let iters = dir.join(format!("{}.iterations.svg", config.label));
        LineChart::new("iterations")
            .x_label("n")
            .y_label("iterations")
            .series("iterations", ns(|s| s.iterations as f64))
            .write(&iters)?;
        out.plots.push(coreset);
        out.plots.push(iters);
    }
    Ok(out)
}
