use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nonsmooth_fw::datagen::{generate_gaussian_points, generate_two_gaussians};
use nonsmooth_fw::experiment::{run_experiment, ExperimentConfig, ExperimentOutput, GeneratorSpec, ProblemKind};
use nonsmooth_fw::io;
use nonsmooth_fw::solver::estimate_curvature;
use nonsmooth_fw::{Error, Result, StepPolicy};

#[derive(Parser)]
#[command(
    name = "nonsmooth-fw",
    version,
    about = "Nonsmooth Frank-Wolfe with coresets and certified bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and write its trace.
    Solve(RunArgs),
    /// Generate synthetic data.
    Gen(GenArgs),
    /// Solve generated instances of several sizes.
    Sweep(SweepArgs),
    /// Estimate the curvature constant of an instance.
    Curvature(CurvatureArgs),
    /// Solve with both the main algorithm and the smoothing baseline.
    Compare(RunArgs),
}

#[derive(Args, Clone)]
struct DataArgs {
    /// svm, median, graph_cut, balanced or piecewise.
    #[arg(long)]
    problem: Option<ProblemKind>,
    /// Input file (LIBSVM, points CSV, edge list or JSON by problem).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Seeds file for graph cuts.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Number of labels for graph cuts.
    #[arg(long)]
    labels: Option<usize>,
    /// SVM reduction parameter R.
    #[arg(long)]
    reduction: Option<f64>,
    /// Generated size (points, or negative examples for svm).
    #[arg(long)]
    n: Option<usize>,
    /// Generated positive examples for svm (defaults to n).
    #[arg(long)]
    m: Option<usize>,
    /// Generated dimension.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Seed for generated data and the baseline.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// schedule or bisection.
    #[arg(long)]
    step: Option<StepPolicy>,
    #[arg(long = "eps-coeff")]
    eps_coeff: Option<f64>,
    /// Also run the smoothing baseline.
    #[arg(long)]
    baseline: bool,
    /// Record zero elapsed times so traces are reproducible.
    #[arg(long = "no-timing")]
    no_timing: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File name stem for outputs.
    #[arg(long)]
    label: Option<String>,
    #[arg(long = "no-plots")]
    no_plots: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Concurrent runs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

fn base_config(data: &DataArgs) -> Result<ExperimentConfig> {
    let mut c = match &data.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(p) = data.problem {
        c.problem = p;
    } else if data.config.is_none() {
        return Err(Error::Config("--problem is required".into()));
    }
    if let Some(p) = &data.data {
        c.data = Some(p.clone());
        c.generator = None;
    }
    if data.seeds.is_some() {
        c.seeds = data.seeds.clone();
    }
    if data.labels.is_some() {
        c.num_labels = data.labels;
    }
    if let Some(r) = data.reduction {
        c.reduction = r;
    }
    if let Some(s) = data.seed {
        c.solver.rng_seed = s;
    }
    if c.data.is_none() && data.n.is_some() {
        c.generator = Some(generator(c.problem, data)?);
    }
    Ok(c)
}

fn generator(problem: ProblemKind, data: &DataArgs) -> Result<GeneratorSpec> {
    let n = data
        .n
        .ok_or_else(|| Error::Config("give --data, or --n to generate data".into()))?;
    let seed = data.seed.unwrap_or(0);
    let d = data.d.unwrap_or(2);
    match problem {
        ProblemKind::Median => Ok(GeneratorSpec::GaussianPoints { n, d, seed }),
        ProblemKind::Svm => Ok(GeneratorSpec::TwoGaussians {
            m: data.m.unwrap_or(n),
            n,
            d,
            shift: data.shift.unwrap_or(2.0),
            sigma: data.sigma.unwrap_or(1.0),
            seed,
        }),
        other => Err(Error::Config(format!("{other:?} has no generator; pass --data"))),
    }
}

fn apply_solver(c: &mut ExperimentConfig, s: &SolverArgs) {
    if let Some(k) = s.iters {
        c.solver.max_iters = k;
    }
    if let Some(t) = s.tol {
        c.solver.tol = t;
    }
    if let Some(p) = s.step {
        c.solver.step_policy = p;
    }
    if let Some(e) = s.eps_coeff {
        c.solver.epsilon_coeff = e;
    }
    if s.baseline {
        c.baseline = true;
    }
    if s.no_timing {
        c.solver.record_timing = false;
    }
    if let Some(o) = &s.out {
        c.output_dir = o.clone();
    }
    if let Some(l) = &s.label {
        c.label = l.clone();
    }
    if s.no_plots {
        c.plots = false;
    }
}

fn report(out: &ExperimentOutput) -> Result<()> {
    for path in &out.traces {
        let trace = io::read_trace(path)?;
        if let Some(s) = io::summarize(&trace) {
            println!(
                "{}: iterations {} objective {:.6e} certified_bound {:.6e} coreset {}",
                path.display(),
                s.iterations,
                s.final_objective,
                s.final_certified_bound,
                s.coreset_size
            );
        }
    }
    if let Some(p) = &out.summary {
        println!("summary: {}", p.display());
    }
    for p in &out.plots {
        println!("plot: {}", p.display());
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => {
            let mut c = base_config(&args.data)?;
            apply_solver(&mut c, &args.solver);
            c.sweep_n.clear();
            report(&run_experiment(&c)?)
        }
        Command::Compare(args) => {
            let mut c = base_config(&args.data)?;
            apply_solver(&mut c, &args.solver);
            c.baseline = true;
            c.sweep_n.clear();
            report(&run_experiment(&c)?)
        }
        Command::Sweep(args) => {
            let mut c = base_config(&args.data)?;
            apply_solver(&mut c, &args.solver);
            if !args.sizes.is_empty() {
                c.sweep_n = args.sizes.clone();
            }
            if let Some(j) = args.jobs {
                c.jobs = j;
            }
            if c.sweep_n.is_empty() {
                return Err(Error::Config("--sizes is required for a sweep".into()));
            }
            if c.generator.is_none() {
                let first = DataArgs {
                    n: Some(c.sweep_n[0]),
                    ..args.data.clone()
                };
                c.generator = Some(generator(c.problem, &first)?);
                c.data = None;
            }
            report(&run_experiment(&c)?)
        }
        Command::Gen(args) => {
            let c = base_config(&args.data)?;
            match c.generator {
                Some(GeneratorSpec::GaussianPoints { n, d, seed }) => {
                    io::write_points(&args.out, &generate_gaussian_points(n, d, seed)?)?
                }
                Some(GeneratorSpec::TwoGaussians {
                    m,
                    n,
                    d,
                    shift,
                    sigma,
                    seed,
                }) => io::write_libsvm(&args.out, &generate_two_gaussians(m, n, d, shift, sigma, seed)?)?,
                None => return Err(Error::Config("gen needs --n".into())),
            }
            println!("wrote {}", args.out.display());
            Ok(())
        }
        Command::Curvature(args) => {
            let c = base_config(&args.data)?;
            c.validate()?;
            let instance = c.build_instance()?;
            let seed = args.data.seed.unwrap_or(0);
            let est = estimate_curvature(&instance, args.eps, args.samples, seed)?;
            println!(
                "curvature estimate {est:.6e} (eps {}, {} samples)",
                args.eps, args.samples
            );
            println!(
                "curvature constant used by the solver {:.6e}",
                instance.curvature_coeff()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
