//! Least-squares recovery of the head component from samples, and a
//! constructive demonstration that cube samples cannot determine the
//! function.
//!
//! The recovered polynomial minimizes the sampled residual over the head
//! span via an orthogonal factorization of the design matrix (never the
//! normal equations: clustered designs make the cross-product matrix far
//! worse conditioned than the design itself). Rank-deficient designs fall
//! back to the minimum-norm minimizer.

use std::sync::Arc;

use ndarray::Array2;

use crate::blfunc::BandlimitedFunction;
use crate::bounds;
use crate::error::{Error, Result};
use crate::linalg;
use crate::prolate::TensorBasis;
use crate::sampling::SampleSet;

fn design_matrix(basis: &TensorBasis, samples: &SampleSet, cols: usize) -> Array2<f64> {
    let mut a = Array2::<f64>::zeros((samples.len(), cols));
    let mut phi = vec![0.0; cols];
    for (j, x) in samples.iter().enumerate() {
        basis.eval_many(x, &mut phi);
        for (k, &v) in phi.iter().enumerate() {
            a[[j, k]] = v;
        }
    }
    a
}

/// Coefficients over the basis head minimizing `Σ_j (values[j] -
/// p(x_j))²`; the minimum-norm minimizer when the design is
/// numerically rank-deficient (tolerance `1e-10` relative to the largest
/// singular value scale).
pub fn least_squares(
    basis: &TensorBasis,
    samples: &SampleSet,
    values: &[f64],
) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::invalid("least squares needs at least one sample"));
    }
    if samples.dim != basis.dim {
        return Err(Error::invalid(format!(
            "samples have dimension {}, basis has {}",
            samples.dim, basis.dim
        )));
    }
    if values.len() != samples.len() {
        return Err(Error::invalid(format!(
            "{} samples but {} values",
            samples.len(),
            values.len()
        )));
    }
    let a = design_matrix(basis, samples, basis.head_len);
    Ok(linalg::solve_min_norm(&a, values, linalg::RANK_REL_TOL)?.to_vec())
}

/// Least-squares recovery of a known function from its samples, together
/// with the residual bound `N₀·κ·δ_f/(1-α)·‖f‖₂²` it must satisfy.
#[derive(Debug, Clone)]
pub struct Recovery {
    pub coeffs: Vec<f64>,
    pub residual: f64,
    pub bound: f64,
    pub covering_index: usize,
    pub ok: bool,
}

/// Samples `f`, recovers the head component, and checks the sampled
/// residual against its closed-form bound. `ok` must hold whenever
/// `δ_f < 1 - α`.
pub fn residual_bound_check(f: &BandlimitedFunction, samples: &SampleSet) -> Result<Recovery> {
    let basis = &f.basis;
    let values: Vec<f64> = samples.iter().map(|x| f.evaluate(x)).collect();
    let coeffs = least_squares(basis, samples, &values)?;
    let a = design_matrix(basis, samples, basis.head_len);
    let mut residual = 0.0;
    for j in 0..samples.len() {
        let pred: f64 = (0..basis.head_len).map(|k| a[[j, k]] * coeffs[k]).sum();
        let e = values[j] - pred;
        residual += e * e;
    }
    let n0 = samples.covering_index();
    let norm_sq = f.norm_sq();
    let bound = if norm_sq == 0.0 {
        0.0
    } else {
        n0 as f64 * bounds::plancherel_polya_constant(basis.dim) * f.delta()
            / (1.0 - basis.alpha)
            * norm_sq
    };
    Ok(Recovery {
        coeffs,
        residual,
        bound,
        covering_index: n0,
        ok: residual <= bound + 1e-12 * norm_sq.max(1.0),
    })
}

/// A nonzero function in the `len`-dimensional span that vanishes (to
/// `1e-8·‖g‖₂`) at every sample point, when the sampled evaluation map has
/// a numerical null space; `None` otherwise. Adding a small multiple of
/// such a `g` to any `f` changes the function without changing its
/// samples.
pub fn null_perturbation(
    basis: &Arc<TensorBasis>,
    len: usize,
    samples: &SampleSet,
) -> Result<Option<BandlimitedFunction>> {
    if len < basis.head_len || len > basis.len() {
        return Err(Error::invalid(format!(
            "span length {} must lie in [head {}, retained {}]",
            len,
            basis.head_len,
            basis.len()
        )));
    }
    if samples.is_empty() {
        return Err(Error::invalid("need at least one sample"));
    }
    if samples.dim != basis.dim {
        return Err(Error::invalid(format!(
            "samples have dimension {}, basis has {}",
            samples.dim, basis.dim
        )));
    }
    let a = design_matrix(basis, samples, len);
    let null = linalg::null_space_basis(&a, linalg::RANK_REL_TOL);
    for col in 0..null.ncols() {
        let coeffs: Vec<f64> = (0..len).map(|j| null[[j, col]]).collect();
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let worst = samples
            .iter()
            .enumerate()
            .map(|(j, _)| {
                (0..len)
                    .map(|k| a[[j, k]] * coeffs[k])
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0f64, f64::max);
        if worst <= 1e-8 * norm {
            return Ok(Some(BandlimitedFunction::from_coeffs(
                basis.clone(),
                coeffs,
            )?));
        }
    }
    Ok(None)
}

/// Largest perturbation size `ε` (from a descending geometric sweep) such
/// that `f + εg` still meets the concentration target; `None` when even
/// the smallest probe fails.
pub fn perturbation_budget(
    f: &BandlimitedFunction,
    g: &BandlimitedFunction,
    delta_target: f64,
) -> Option<f64> {
    let len = f.len().max(g.len());
    let mut eps = f.norm_sq().sqrt().max(1e-300);
    for _ in 0..120 {
        let coeffs: Vec<f64> = (0..len)
            .map(|j| {
                f.coeffs.get(j).copied().unwrap_or(0.0) + eps * g.coeffs.get(j).copied().unwrap_or(0.0)
            })
            .collect();
        let h = BandlimitedFunction {
            basis: f.basis.clone(),
            coeffs,
            seed: None,
        };
        if h.delta() <= delta_target {
            return Some(eps);
        }
        eps /= 2.0;
    }
    None
}
