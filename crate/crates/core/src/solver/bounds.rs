//! Step schedule, a-priori convergence bounds and gap certificates.

/// `(alpha_k, eps_k) = (2 / (k + 2), c * sqrt(alpha_k))`.
pub fn step_schedule(k: usize, epsilon_coeff: f64) -> (f64, f64) {
    let alpha = 2.0 / (k as f64 + 2.0);
    (alpha, epsilon_coeff * alpha.sqrt())
}

/// Constants of the convergence bound: `L`, `D_f` and `E = 2L + D_f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremBound {
    pub lipschitz: f64,
    pub curvature: f64,
}

impl TheoremBound {
    pub fn new(lipschitz: f64, curvature: f64) -> Self {
        Self { lipschitz, curvature }
    }

    pub fn constant(&self) -> f64 {
        2.0 * self.lipschitz + self.curvature
    }

    pub fn bound(&self, k: usize) -> f64 {
        a_priori_bound(self.lipschitz, self.curvature, k)
    }

    pub fn iterations_for(&self, eps: f64) -> u64 {
        coreset_k(self.lipschitz, self.curvature, eps)
    }
}

/// `(2^{5/2} L + 2^{3/2} D_f) / sqrt(k + 2)`.
///
/// Evaluated as `sqrt(8 / (k + 2)) (2L + D_f)`, the same quantity with fewer
/// roundings.
pub fn a_priori_bound(lipschitz: f64, curvature: f64, k: usize) -> f64 {
    (8.0 / (k as f64 + 2.0)).sqrt() * (2.0 * lipschitz + curvature)
}

/// Smallest `K >= 0` with `(2^{5/2} L + 2^{3/2} D_f)^2 / (1 + eps)^2 - 2 <= K`.
pub fn coreset_k(lipschitz: f64, curvature: f64, eps: f64) -> u64 {
    let e = 2.0 * lipschitz + curvature;
    let k = 8.0 * e * e / ((1.0 + eps) * (1.0 + eps)) - 2.0;
    if k.is_finite() {
        k.ceil().max(0.0) as u64
    } else if k > 0.0 {
        u64::MAX
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCertificate {
    /// `-(subproblem value) + extra`.
    pub gap_surrogate: f64,
    /// `gap_surrogate + 2 L eps`, an upper bound on `f(x) - f*`.
    pub certified_bound: f64,
}

pub fn gap_certificate(subproblem_value: f64, lipschitz: f64, eps: f64, extra: f64) -> GapCertificate {
    let gap_surrogate = -subproblem_value + extra;
    GapCertificate {
        gap_surrogate,
        certified_bound: gap_surrogate + 2.0 * lipschitz * eps,
    }
}
