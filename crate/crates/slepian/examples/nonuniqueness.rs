//! Samples inside the cube never pin the function down: construct a
//! nonzero perturbation that vanishes at every sample point yet keeps the
//! perturbed function inside the concentration class.
//!
//! ```bash
//! cargo run --example nonuniqueness
//! ```

use std::sync::Arc;

use slepian::blfunc::BandlimitedFunction;
use slepian::prolate::{ProlateBasis1D, TensorBasis};
use slepian::reconstruct;
use slepian::sampling::SampleSet;

fn main() -> slepian::Result<()> {
    let bandwidth = 2.0;
    let base = ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth))?;
    let basis = Arc::new(TensorBasis::build(base, 1, 2)?);

    // With more coefficients than samples, the sampled evaluation map has a
    // null space.
    let r = 8;
    let span = r + 1;
    let samples = SampleSet::uniform(bandwidth, 1, r, 99)?;
    let g = reconstruct::null_perturbation(&basis, span, &samples)?
        .expect("a null vector exists for span > sample count");
    let gnorm = g.norm_sq().sqrt();
    let worst = samples
        .iter()
        .map(|x| g.evaluate(x).abs())
        .fold(0.0f64, f64::max);
    println!("null perturbation g: |g|_2 = {gnorm}, max_j |g(x_j)| = {worst:.3e}");

    let delta_target = 0.1;
    let f = BandlimitedFunction::synth_random(basis.clone(), span, delta_target / 2.0, 7)?;
    let eps = reconstruct::perturbation_budget(&f, &g, delta_target)
        .expect("small perturbations stay in the class");
    let coeffs: Vec<f64> = (0..span)
        .map(|j| f.coeffs[j] + eps * g.coeffs[j])
        .collect();
    let h = BandlimitedFunction::from_coeffs(basis, coeffs)?;

    println!("\nperturbation size eps = {eps:.6}");
    println!("delta(f)      = {:.6} (target {delta_target})", f.delta());
    println!("delta(f+eps*g) = {:.6}", h.delta());
    println!("|f - (f+eps*g)|_2 = {:.6}", eps * gnorm);
    let agree = samples
        .iter()
        .map(|x| (f.evaluate(x) - h.evaluate(x)).abs())
        .fold(0.0f64, f64::max);
    println!("max sample disagreement = {agree:.3e} (two different functions, same samples)");
    Ok(())
}
