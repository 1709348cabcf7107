//! Two-phase bounded-variable primal simplex on a dense tableau.
//!
//! The entering column has the most negative reduced cost (Dantzig). The
//! leaving row is the largest pivot among rows that block within a small
//! tolerance of the shortest step. Long degenerate runs switch both choices
//! to Bland's rule. Every choice is deterministic, so runs are reproducible bit
//! for bit.
//! Every optimum is checked against the dual bound recovered from the final
//! basis before it is returned.

/// Reduced costs below this magnitude count as zero.
const COST_TOL: f64 = 1e-10;
/// Smallest tableau entry accepted as a pivot.
const PIVOT_TOL: f64 = 1e-9;
/// Relative slack in the ratio test when choosing among blocking rows.
const RATIO_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots before the leaving row falls back to Bland.
const BLAND_AFTER: usize = 50;
pub const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("infeasible")]
    Infeasible,
    #[error("unbounded")]
    Unbounded,
    #[error("pivot limit of {0} exceeded")]
    PivotLimit(usize),
    #[error("optimality check failed: primal {primal}, dual bound {dual}, residual {residual}")]
    Verification { primal: f64, dual: f64, residual: f64 },
    #[error("malformed linear program: {0}")]
    Malformed(String),
}

/// `min cᵀx` subject to `a x <= beta`, `a x = beta` and `lo <= x <= hi`.
///
/// Bounds may be infinite; free variables are split internally.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub inequalities: Vec<(Vec<f64>, f64)>,
    pub equalities: Vec<(Vec<f64>, f64)>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LpProblem {
    /// A problem with the given costs and bounds `0 <= x < inf`.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            inequalities: Vec::new(),
            equalities: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_inequality(&mut self, row: Vec<f64>, rhs: f64) -> &mut Self {
        self.inequalities.push((row, rhs));
        self
    }

    pub fn add_equality(&mut self, row: Vec<f64>, rhs: f64) -> &mut Self {
        self.equalities.push((row, rhs));
        self
    }

    pub fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) -> &mut Self {
        self.lower[j] = lo;
        self.upper[j] = hi;
        self
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::Malformed("bound vectors do not match the objective".into()));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::Malformed("non-finite objective coefficient".into()));
        }
        for (row, rhs) in self.inequalities.iter().chain(&self.equalities) {
            if row.len() != n {
                return Err(LpError::Malformed(format!(
                    "constraint row of length {} for {n} variables",
                    row.len()
                )));
            }
            if !rhs.is_finite() || row.iter().any(|a| !a.is_finite()) {
                return Err(LpError::Malformed("non-finite constraint entry".into()));
            }
        }
        for j in 0..n {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(LpError::Malformed(format!("bad bounds [{lo}, {hi}] on variable {j}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

/// How an original variable maps onto nonnegative internal columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lo + y`.
    Shift { col: usize, lo: f64 },
    /// `x = hi - y`.
    Mirror { col: usize, hi: f64 },
    /// `x = y_pos - y_neg`.
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// Row-major `rows x cols`, holding `B⁻¹ M`.
    t: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    values: Vec<f64>,
    upper: Vec<f64>,
    at_upper: Vec<bool>,
    pivots: usize,
    degenerate_run: usize,
}

impl Tableau {
    fn entry(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.cols + j]
    }

    fn optimize(&mut self, cost: &[f64]) -> Result<(), LpError> {
        let mut reduced = vec![0.0; self.cols];
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::PivotLimit(MAX_PIVOTS));
            }
            reduced.copy_from_slice(cost);
            for i in 0..self.rows {
                let cb = cost[self.basis[i]];
                if cb != 0.0 {
                    let row = &self.t[i * self.cols..(i + 1) * self.cols];
                    for (r, &a) in reduced.iter_mut().zip(row) {
                        *r -= cb * a;
                    }
                }
            }
            // After a long run of degenerate pivots both choices fall back to
            // the lowest index (Bland), which rules out cycling.
            let bland = self.degenerate_run >= BLAND_AFTER;
            let mut entering: Option<(usize, f64)> = None;
            for (j, &rc) in reduced.iter().enumerate() {
                if self.is_basic[j] || self.upper[j] <= 0.0 {
                    continue;
                }
                let gain = if self.at_upper[j] { rc } else { -rc };
                if gain > COST_TOL && entering.is_none_or(|(_, g)| gain > g) {
                    entering = Some((j, gain));
                    if bland {
                        break;
                    }
                }
            }
            let Some((j, _)) = entering else {
                return Ok(());
            };
            let dir = if self.at_upper[j] { -1.0 } else { 1.0 };

            // Two passes: the shortest step, then the largest pivot among rows
            // that block within a tolerance of it (lowest basic index on ties).
            let mut candidates = Vec::new();
            let mut shortest = f64::INFINITY;
            for i in 0..self.rows {
                let a = self.entry(i, j) * dir;
                let b = self.basis[i];
                let candidate = if a > PIVOT_TOL {
                    Some(((self.values[i] / a).max(0.0), false))
                } else if a < -PIVOT_TOL && self.upper[b].is_finite() {
                    Some((((self.upper[b] - self.values[i]) / -a).max(0.0), true))
                } else {
                    None
                };
                if let Some((step, to_upper)) = candidate {
                    shortest = shortest.min(step);
                    candidates.push((step, i, to_upper, a.abs()));
                }
            }
            let reach = shortest + RATIO_TOL * (1.0 + shortest);
            let mut best: Option<(f64, usize, bool)> = None;
            let mut best_pivot = 0.0;
            for &(step, i, to_upper, size) in &candidates {
                if step > reach {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, r, _)) if bland => self.basis[i] < self.basis[r],
                    Some((_, r, _)) => size > best_pivot || (size == best_pivot && self.basis[i] < self.basis[r]),
                };
                if better {
                    best = Some((shortest, i, to_upper));
                    best_pivot = size;
                }
            }

            let flip = self.upper[j];
            if flip.is_finite() && best.is_none_or(|(s, _, _)| flip <= s) {
                for i in 0..self.rows {
                    self.values[i] -= self.entry(i, j) * dir * flip;
                }
                self.at_upper[j] = !self.at_upper[j];
                self.pivots += 1;
                self.degenerate_run = 0;
                continue;
            }
            let Some((step, r, to_upper)) = best else {
                return Err(LpError::Unbounded);
            };
            if step > 0.0 {
                self.degenerate_run = 0;
            } else {
                self.degenerate_run += 1;
            }

            for i in 0..self.rows {
                self.values[i] -= self.entry(i, j) * dir * step;
            }
            let entering_value = if self.at_upper[j] { self.upper[j] - step } else { step };
            let leaving = self.basis[r];
            self.is_basic[leaving] = false;
            self.at_upper[leaving] = to_upper;
            self.values[r] = entering_value;
            self.basis[r] = j;
            self.is_basic[j] = true;
            self.at_upper[j] = false;
            self.pivot(r, j);
            self.pivots += 1;
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let cols = self.cols;
        let p = self.t[r * cols + j];
        for v in &mut self.t[r * cols..(r + 1) * cols] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.t[r * cols..(r + 1) * cols].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * cols + j];
            if f != 0.0 {
                let row = &mut self.t[i * cols..(i + 1) * cols];
                for (v, &pr) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                row[j] = 0.0;
            }
        }
    }
}

/// Solves `p` to a verified vertex optimum.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.validate()?;
    let n = p.num_vars();

    // Internal columns: mapped structural variables, then one slack per
    // inequality.
    let mut maps = Vec::with_capacity(n);
    let mut col_upper = Vec::new();
    let mut col_cost = Vec::new();
    let mut cost_offset = 0.0;
    for j in 0..n {
        let (lo, hi, c) = (p.lower[j], p.upper[j], p.objective[j]);
        if lo.is_finite() {
            maps.push(VarMap::Shift {
                col: col_upper.len(),
                lo,
            });
            col_upper.push(hi - lo);
            col_cost.push(c);
            cost_offset += c * lo;
        } else if hi.is_finite() {
            maps.push(VarMap::Mirror {
                col: col_upper.len(),
                hi,
            });
            col_upper.push(f64::INFINITY);
            col_cost.push(-c);
            cost_offset += c * hi;
        } else {
            let pos = col_upper.len();
            maps.push(VarMap::Split { pos, neg: pos + 1 });
            col_upper.extend([f64::INFINITY, f64::INFINITY]);
            col_cost.extend([c, -c]);
        }
    }
    let structural = col_upper.len();
    let num_slack = p.inequalities.len();
    let m = p.inequalities.len() + p.equalities.len();
    let ncols_model = structural + num_slack;
    col_upper.extend(std::iter::repeat_n(f64::INFINITY, num_slack));
    col_cost.extend(std::iter::repeat_n(0.0, num_slack));

    // Model rows `M y = r` with `r >= 0` after sign flips.
    let mut model = vec![0.0; m * ncols_model];
    let mut rhs = vec![0.0; m];
    let rows = p.inequalities.iter().chain(&p.equalities);
    for (i, (row, beta)) in rows.enumerate() {
        let mut r = *beta;
        let out = &mut model[i * ncols_model..(i + 1) * ncols_model];
        for (j, &a) in row.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            match maps[j] {
                VarMap::Shift { col, lo } => {
                    out[col] = a;
                    r -= a * lo;
                }
                VarMap::Mirror { col, hi } => {
                    out[col] = -a;
                    r -= a * hi;
                }
                VarMap::Split { pos, neg } => {
                    out[pos] = a;
                    out[neg] = -a;
                }
            }
        }
        if i < num_slack {
            out[structural + i] = 1.0;
        }
        if r < 0.0 {
            out.iter_mut().for_each(|v| *v = -*v);
            r = -r;
        }
        rhs[i] = r;
    }

    // Crash basis: a column with a single positive entry can start basic in
    // its row (after scaling the row) instead of that row's artificial.
    let mut crash: Vec<Option<usize>> = vec![None; m];
    for j in 0..ncols_model {
        let mut only = None;
        let mut count = 0;
        for i in 0..m {
            if model[i * ncols_model + j] != 0.0 {
                count += 1;
                only = Some(i);
            }
        }
        let Some(i) = only else { continue };
        let a = model[i * ncols_model + j];
        if count == 1 && crash[i].is_none() && a > 0.0 && rhs[i] / a <= col_upper[j] {
            crash[i] = Some(j);
            model[i * ncols_model..(i + 1) * ncols_model]
                .iter_mut()
                .for_each(|v| *v /= a);
            model[i * ncols_model + j] = 1.0;
            rhs[i] /= a;
        }
    }

    let cols = ncols_model + m;
    let mut t = vec![0.0; m * cols];
    for i in 0..m {
        t[i * cols..i * cols + ncols_model].copy_from_slice(&model[i * ncols_model..(i + 1) * ncols_model]);
        t[i * cols + ncols_model + i] = 1.0;
    }
    let mut upper = col_upper.clone();
    upper.extend(std::iter::repeat_n(f64::INFINITY, m));
    let mut is_basic = vec![false; cols];
    for i in 0..m {
        is_basic[ncols_model + i] = true;
    }
    let mut basis: Vec<usize> = (ncols_model..cols).collect();
    for (i, c) in crash.iter().enumerate() {
        if let Some(j) = *c {
            basis[i] = j;
            is_basic[j] = true;
            is_basic[ncols_model + i] = false;
            // The artificial of a crashed row never enters.
            upper[ncols_model + i] = 0.0;
        }
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        basis,
        is_basic,
        values: rhs.clone(),
        upper,
        at_upper: vec![false; cols],
        pivots: 0,
        degenerate_run: 0,
    };

    // Phase 1: drive the artificials to zero.
    let mut phase1 = vec![0.0; cols];
    phase1[ncols_model..].iter_mut().for_each(|c| *c = 1.0);
    tab.optimize(&phase1)?;
    let rmax = rhs.iter().fold(0.0f64, |a, &b| a.max(b));
    let infeasibility: f64 = (0..m)
        .filter(|&i| tab.basis[i] >= ncols_model)
        .map(|i| tab.values[i])
        .sum();
    if infeasibility > 1e-9 * (1.0 + rmax) {
        return Err(LpError::Infeasible);
    }

    // Phase 2: artificials stay fixed at zero.
    for a in ncols_model..cols {
        tab.upper[a] = 0.0;
        tab.at_upper[a] = false;
    }
    let mut phase2 = col_cost.clone();
    phase2.extend(std::iter::repeat_n(0.0, m));
    tab.optimize(&phase2)?;

    // Recompute the basic values from B⁻¹, which sits in the artificial columns.
    let binv = |i: usize, k: usize| tab.t[i * cols + ncols_model + k];
    let mut y = vec![0.0; ncols_model];
    for j in 0..ncols_model {
        if !tab.is_basic[j] && tab.at_upper[j] {
            y[j] = col_upper[j];
        }
    }
    let mut adjusted = rhs.clone();
    for (k, a) in adjusted.iter_mut().enumerate() {
        let row = &model[k * ncols_model..(k + 1) * ncols_model];
        for j in 0..ncols_model {
            if y[j] != 0.0 {
                *a -= row[j] * y[j];
            }
        }
    }
    for i in 0..m {
        let b = tab.basis[i];
        if b < ncols_model {
            let v: f64 = (0..m).map(|k| binv(i, k) * adjusted[k]).sum();
            y[b] = v.clamp(0.0, col_upper[b]);
        }
    }

    // Optimality certificate: duals from the basis, then the Lagrangian bound.
    let mut duals = vec![0.0; m];
    for i in 0..m {
        let cb = phase2[tab.basis[i]];
        if cb != 0.0 {
            for (k, d) in duals.iter_mut().enumerate() {
                *d += cb * binv(i, k);
            }
        }
    }
    let mut dual_bound: f64 = duals.iter().zip(&rhs).map(|(d, r)| d * r).sum();
    let mut residual: f64 = 0.0;
    for k in 0..m {
        let row = &model[k * ncols_model..(k + 1) * ncols_model];
        let lhs: f64 = row.iter().zip(&y).map(|(a, v)| a * v).sum();
        residual = residual.max((lhs - rhs[k]).abs());
    }
    for j in 0..ncols_model {
        let mut d = col_cost[j];
        for k in 0..m {
            d -= duals[k] * model[k * ncols_model + j];
        }
        if d < 0.0 {
            if col_upper[j].is_finite() {
                dual_bound += d * col_upper[j];
            } else if d < -1e-9 {
                dual_bound = f64::NEG_INFINITY;
            }
        }
    }
    let primal: f64 = col_cost.iter().zip(&y).map(|(c, v)| c * v).sum();
    let scale = 1.0 + primal.abs();
    if primal - dual_bound > 1e-8 * scale || residual > 1e-8 * (1.0 + rmax) {
        return Err(LpError::Verification {
            primal,
            dual: dual_bound,
            residual,
        });
    }

    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shift { col, lo } => lo + y[col],
            VarMap::Mirror { col, hi } => hi - y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();
    let value = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>();
    debug_assert!((value - (primal + cost_offset)).abs() <= 1e-8 * (1.0 + value.abs()));
    Ok(LpSolution {
        x,
        value,
        pivots: tab.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_vertex() {
        let mut p = LpProblem::new(vec![1.0, 0.0]);
        p.add_equality(vec![1.0, 1.0], 1.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.x, vec![0.0, 1.0]);
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn equality_forces_value() {
        let mut p = LpProblem::new(vec![1.0, 1.0]);
        p.add_equality(vec![1.0, 1.0], 1.0);
        p.set_bounds(0, 0.3, f64::INFINITY).set_bounds(1, 0.3, f64::INFINITY);
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LpProblem::new(vec![1.0]);
        p.add_inequality(vec![1.0], -1.0);
        assert_eq!(solve_lp(&p), Err(LpError::Infeasible));

        let mut p = LpProblem::new(vec![-1.0, 0.0]);
        p.add_inequality(vec![1.0, -1.0], 1.0);
        assert_eq!(solve_lp(&p), Err(LpError::Unbounded));
    }

    #[test]
    fn free_and_mirrored_variables() {
        // min mu s.t. mu >= x - 2, mu >= -x, x in (-inf, 3]
        let mut p = LpProblem::new(vec![0.0, 1.0]);
        p.set_bounds(0, f64::NEG_INFINITY, 3.0);
        p.set_bounds(1, f64::NEG_INFINITY, f64::INFINITY);
        p.add_inequality(vec![1.0, -1.0], 2.0);
        p.add_inequality(vec![-1.0, -1.0], 0.0);
        let s = solve_lp(&p).unwrap();
        assert!((s.value + 1.0).abs() < 1e-12, "{s:?}");
        assert!((s.x[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn upper_bounds_are_respected() {
        // max x1 + 2 x2 with x <= 0.5 each and x1 + x2 <= 0.8
        let mut p = LpProblem::new(vec![-1.0, -2.0]);
        p.set_bounds(0, 0.0, 0.5).set_bounds(1, 0.0, 0.5);
        p.add_inequality(vec![1.0, 1.0], 0.8);
        let s = solve_lp(&p).unwrap();
        assert!((s.value + 1.3).abs() < 1e-12);
        assert!((s.x[1] - 0.5).abs() < 1e-12 && (s.x[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn malformed_bounds_are_rejected() {
        let mut p = LpProblem::new(vec![1.0]);
        p.set_bounds(0, 1.0, 0.0);
        assert!(matches!(solve_lp(&p), Err(LpError::Malformed(_))));
    }
}
