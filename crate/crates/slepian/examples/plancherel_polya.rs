//! The sampled-energy inequality `Σ|f(x_j)|² ≤ N₀·e^{dπ}·‖f‖₂²` holds for
//! every point set, including adversarial clusters piled onto the
//! function's peak.
//!
//! ```bash
//! cargo run --example plancherel_polya
//! ```

use std::sync::Arc;

use slepian::blfunc::BandlimitedFunction;
use slepian::prolate::{ProlateBasis1D, TensorBasis};
use slepian::sampling::{plancherel_polya_check, SampleSet};

fn main() -> slepian::Result<()> {
    let bandwidth = 2.0;
    let base = ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth))?;
    let basis = Arc::new(TensorBasis::build(base, 1, 2)?);
    let f = BandlimitedFunction::synth_random(basis.clone(), 4, 0.05, 11)?;

    // Uniform samples: the covering index stays near r/R.
    let uniform = SampleSet::uniform(bandwidth, 1, 200, 3)?;
    let check = plancherel_polya_check(&f, &uniform)?;
    println!(
        "uniform:   sum = {:>10.4}, bound = {:>12.4}, N0 = {:>3}, ok = {}",
        check.lhs, check.rhs, check.covering_index, check.ok
    );

    // Adversarial: all samples crowd the function's peak in one unit cube,
    // driving N0 to r.
    let peak = (0..400)
        .map(|g| -1.0 + 2.0 * g as f64 / 399.0)
        .max_by(|a, b| {
            f.evaluate(&[*a])
                .abs()
                .partial_cmp(&f.evaluate(&[*b]).abs())
                .unwrap()
        })
        .unwrap();
    let cluster: Vec<f64> = (0..200)
        .map(|i| (peak + 1e-4 * i as f64).clamp(-1.0, 1.0))
        .collect();
    let clustered = SampleSet::from_points(bandwidth, 1, cluster, 0)?;
    let check = plancherel_polya_check(&f, &clustered)?;
    println!(
        "clustered: sum = {:>10.4}, bound = {:>12.4}, N0 = {:>3}, ok = {}",
        check.lhs, check.rhs, check.covering_index, check.ok
    );
    println!("\nthe bound scales with N0, so clustering inflates both sides together");
    Ok(())
}
