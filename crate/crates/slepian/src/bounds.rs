//! Closed-form tail bounds, constants, and feasibility conditions for
//! random sampling of concentrated band-limited functions.
//!
//! Everything here is a pure function of its arguments. Logarithms are
//! natural throughout, matching the exponentials they pair with. Tail
//! bounds are reported unclipped above by their trivial caps so callers
//! can see the slack; values above 1 mean the bound is vacuous at those
//! parameters.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Explicit constant of the sampled-energy inequality
/// `Σ|f(x_j)|² ≤ N₀·κ·‖f‖₂²`: `κ = e^{dπ}`.
pub fn plancherel_polya_constant(dim: usize) -> f64 {
    (dim as f64 * PI).exp()
}

/// Matrix Bernstein tail for the extreme eigenvalue of a sum of `r`
/// independent, centered, self-adjoint `n×n` matrices with norms at most
/// `bound` and total variance `variance`:
/// `n·exp(-(t²/2)/(variance + bound·t/3))`.
pub fn matrix_bernstein_tail(n: f64, variance: f64, bound: f64, t: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::invalid("matrix dimension must be positive"));
    }
    if !(variance >= 0.0) {
        return Err(Error::invalid("variance must be non-negative"));
    }
    if !(bound > 0.0) {
        return Err(Error::invalid("norm bound must be positive"));
    }
    if !(t >= 0.0) {
        return Err(Error::invalid("deviation level must be non-negative"));
    }
    if t == 0.0 {
        return Ok(n);
    }
    let value = n * (-(t * t / 2.0) / (variance + bound * t / 3.0)).exp();
    Ok(value.clamp(0.0, n))
}

/// Tail bound for the frame-deviation event: the probability that the
/// smallest eigenvalue of the centered frame matrix over an `n`-dimensional
/// head span drops to `-ν/R^d` or below after `samples` uniform draws.
///
/// This is [`matrix_bernstein_tail`] with per-sample norm bound 1, variance
/// `r/R^d`, and deviation level `t = rν/R^d`, which simplifies to
/// `n·exp(-ν²r / (2·R^d·(1+ν/3)))`.
pub fn frame_deviation_tail(
    n: f64,
    samples: usize,
    bandwidth: f64,
    dim: usize,
    nu: f64,
) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(Error::invalid("nu must be non-negative"));
    }
    if !(n > 0.0) {
        return Err(Error::invalid("span dimension must be positive"));
    }
    let scale = bandwidth.powi(dim as i32);
    let r = samples as f64;
    let value = n * (-(nu * nu * r) / (2.0 * scale * (1.0 + nu / 3.0))).exp();
    Ok(value.clamp(0.0, n))
}

/// The two competing sample-count terms and their resolution.
#[derive(Debug, Clone, Copy)]
pub struct SampleBudget {
    /// `⌈max(spectral_term, covering_term)⌉`.
    pub required: usize,
    /// `R^d·(1+ν/3)/ν²·ln(2R^d/ε)`: controls the frame deviation.
    pub spectral_term: f64,
    /// `R^d/(3ln3-2)·ln(2(R+2)^d/ε)`: controls the covering index.
    pub covering_term: f64,
    /// Whether the spectral term decided the budget (it always does for
    /// `ν < 1/2`, `R ≥ 2`; flagged so callers can see if it ever did not).
    pub spectral_dominates: bool,
}

/// Number of uniform samples sufficient for the sampling inequality at
/// failure probability `ε`, for `R ≥ 2`, `ν ∈ (0, 1/2)`, `ε ∈ (0,1)`.
pub fn required_samples(bandwidth: f64, dim: usize, nu: f64, epsilon: f64) -> Result<SampleBudget> {
    if !(bandwidth >= 2.0) {
        return Err(Error::invalid("bandwidth must be at least 2"));
    }
    if !(nu > 0.0 && nu < 0.5) {
        return Err(Error::invalid("nu must lie in (0, 1/2)"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon must lie in (0, 1)"));
    }
    let scale = bandwidth.powi(dim as i32);
    let spectral_term = scale * (1.0 + nu / 3.0) / (nu * nu) * (2.0 * scale / epsilon).ln();
    let covering_term = scale / (3.0 * 3.0f64.ln() - 2.0)
        * (2.0 * (bandwidth + 2.0).powi(dim as i32) / epsilon).ln();
    let required = spectral_term.max(covering_term).ceil() as usize;
    Ok(SampleBudget {
        required,
        spectral_term,
        covering_term,
        spectral_dominates: spectral_term >= covering_term,
    })
}

/// Lower frame constant of the sampling inequality for the concentration
/// class with defect `delta`: `A = (r/R^d)·(1/2 - δ - ν - 12δκ)`.
///
/// May be negative, in which case the lower bound is vacuous; callers
/// check the hypotheses via [`hypothesis_check`].
pub fn lower_frame_constant(
    samples: usize,
    bandwidth: f64,
    dim: usize,
    delta: f64,
    nu: f64,
) -> f64 {
    let scale = bandwidth.powi(dim as i32);
    let kappa = plancherel_polya_constant(dim);
    samples as f64 / scale * (0.5 - delta - nu - 12.0 * delta * kappa)
}

/// General form of the lower frame constant for an arbitrary truncation
/// value `alpha` and covering index:
/// `A = (r/R^d)·(α - αδ/(1-α) - ν) - 2κN₀δ/(1-α)`.
///
/// With `α = 1/2` and `N₀ = 3r/R^d` this reduces exactly to
/// [`lower_frame_constant`].
pub fn lower_frame_constant_general(
    samples: usize,
    bandwidth: f64,
    dim: usize,
    alpha: f64,
    delta: f64,
    nu: f64,
    covering_index: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha must lie in (0, 1)"));
    }
    if !(delta < 1.0 - alpha) {
        return Err(Error::invalid(format!(
            "delta = {delta} must be below 1 - alpha = {}",
            1.0 - alpha
        )));
    }
    let scale = bandwidth.powi(dim as i32);
    let kappa = plancherel_polya_constant(dim);
    Ok(samples as f64 / scale * (alpha - alpha * delta / (1.0 - alpha) - nu)
        - 2.0 * kappa * covering_index * delta / (1.0 - alpha))
}

/// Tail bound for the covering index exceeding `a·r`:
/// `(R+2)^d·exp(-r·(a·ln(aR^d) - (a - R^{-d})))`, valid for `a > R^{-d}`.
pub fn covering_tail(bandwidth: f64, dim: usize, samples: usize, a: f64) -> Result<f64> {
    let scale = bandwidth.powi(dim as i32);
    if !(a > 1.0 / scale) {
        return Err(Error::invalid(format!(
            "a = {a} must exceed R^-d = {} for the bound to be non-vacuous",
            1.0 / scale
        )));
    }
    let r = samples as f64;
    let exponent = r * (a * (a * scale).ln() - (a - 1.0 / scale));
    Ok(((bandwidth + 2.0).powi(dim as i32) * (-exponent).exp()).max(0.0))
}

/// Success probability of the sampling inequality after `samples` uniform
/// draws: one minus the frame-deviation tail over an `R^d`-dimensional
/// head, minus the covering tail at `a = 3R^{-d}`. May be negative for
/// small `r`; reported as-is.
pub fn sampling_success_probability(
    bandwidth: f64,
    dim: usize,
    samples: usize,
    nu: f64,
) -> Result<f64> {
    if !(bandwidth >= 2.0) {
        return Err(Error::invalid("bandwidth must be at least 2"));
    }
    let scale = bandwidth.powi(dim as i32);
    let spectral = frame_deviation_tail(scale, samples, bandwidth, dim, nu)?;
    let covering = covering_tail(bandwidth, dim, samples, 3.0 / scale)?;
    Ok(1.0 - spectral - covering)
}

/// Outcome of the smallness hypotheses on `(δ, ν)`.
#[derive(Debug, Clone, Copy)]
pub struct HypothesisReport {
    pub delta_ok: bool,
    pub nu_ok: bool,
    /// `1 / (2(1 + 12κ))`.
    pub delta_threshold: f64,
    /// `1/2 - δ(1 + 12κ)`.
    pub nu_threshold: f64,
    pub ok: bool,
}

/// Checks `δ < 1/(2(1+12κ))` and `ν < 1/2 - δ(1+12κ)`; both are needed
/// for a positive lower frame constant.
pub fn hypothesis_check(delta: f64, nu: f64, dim: usize) -> HypothesisReport {
    let kappa = plancherel_polya_constant(dim);
    let delta_threshold = 1.0 / (2.0 * (1.0 + 12.0 * kappa));
    let nu_threshold = 0.5 - delta * (1.0 + 12.0 * kappa);
    let delta_ok = delta < delta_threshold;
    let nu_ok = nu < nu_threshold;
    HypothesisReport {
        delta_ok,
        nu_ok,
        delta_threshold,
        nu_threshold,
        ok: delta_ok && nu_ok,
    }
}

/// Smallest concentration defect for which the class is non-empty (to
/// higher order): `2π√(2R)·e^{-πR}`. Requested targets below this floor
/// deserve a warning.
pub fn min_feasible_delta(bandwidth: f64) -> f64 {
    2.0 * PI * (2.0 * bandwidth).sqrt() * (-PI * bandwidth).exp()
}

/// Parameter set for a bound table.
#[derive(Debug, Clone, Copy)]
pub struct BoundParams {
    pub bandwidth: f64,
    pub dim: usize,
    /// Sample count; resolved from [`required_samples`] when absent.
    pub num_samples: Option<usize>,
    pub nu: f64,
    pub delta: f64,
    pub epsilon: f64,
}

/// One row of the bound table: a named value plus an optional pass/fail
/// status.
#[derive(Debug, Clone)]
pub struct BoundRow {
    pub name: &'static str,
    pub value: f64,
    pub status: Option<bool>,
}

/// Evaluates every bound for one parameter set; returns the rows and the
/// resolved sample count.
pub fn bound_table(p: &BoundParams) -> Result<(Vec<BoundRow>, usize)> {
    let budget = required_samples(p.bandwidth, p.dim, p.nu, p.epsilon)?;
    let samples = p.num_samples.unwrap_or(budget.required);
    let hyp = hypothesis_check(p.delta, p.nu, p.dim);
    let scale = p.bandwidth.powi(p.dim as i32);
    let a_main = lower_frame_constant(samples, p.bandwidth, p.dim, p.delta, p.nu);
    let floor = min_feasible_delta(p.bandwidth);
    let rows = vec![
        BoundRow {
            name: "kappa",
            value: plancherel_polya_constant(p.dim),
            status: None,
        },
        BoundRow {
            name: "delta_threshold",
            value: hyp.delta_threshold,
            status: Some(hyp.delta_ok),
        },
        BoundRow {
            name: "nu_threshold",
            value: hyp.nu_threshold,
            status: Some(hyp.nu_ok),
        },
        BoundRow {
            name: "delta_feasibility_floor",
            value: floor,
            status: Some(p.delta >= floor),
        },
        BoundRow {
            name: "required_samples",
            value: budget.required as f64,
            status: Some(budget.spectral_dominates),
        },
        BoundRow {
            name: "lower_frame_constant",
            value: a_main,
            status: Some(a_main > 0.0),
        },
        BoundRow {
            name: "frame_deviation_tail",
            value: frame_deviation_tail(scale, samples, p.bandwidth, p.dim, p.nu)?,
            status: None,
        },
        BoundRow {
            name: "covering_tail",
            value: covering_tail(p.bandwidth, p.dim, samples, 3.0 / scale)?,
            status: None,
        },
        BoundRow {
            name: "success_probability",
            value: sampling_success_probability(p.bandwidth, p.dim, samples, p.nu)?,
            status: None,
        },
    ];
    Ok((rows, samples))
}
