//! Synthesize a random band-limited function in a concentration class and
//! inspect its exact norms and projection-energy guarantees.
//!
//! ```bash
//! cargo run --example random_function
//! ```

use std::sync::Arc;

use slepian::blfunc::BandlimitedFunction;
use slepian::prolate::{ProlateBasis1D, TensorBasis};

fn main() -> slepian::Result<()> {
    let bandwidth = 4.0;
    let base = ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth))?;
    let basis = Arc::new(TensorBasis::build(base, 1, 4)?);

    let delta_target = 0.01;
    let f = BandlimitedFunction::synth_random(
        basis.clone(),
        BandlimitedFunction::default_len(&basis),
        delta_target,
        42,
    )?;
    println!("coefficients: {:?}", f.coeffs);
    println!("L2 norm^2            = {}", f.norm_sq());
    println!("energy inside C_R    = {}", f.norm_sq_concentrated());
    println!("concentration defect = {} (target {delta_target})", f.delta());

    // The defect controls how much energy can sit past the truncation.
    let report = f.projection_energy_check();
    println!("\nprojection energies (alpha = {:.6}):", report.alpha);
    println!(
        "  head  >= bound: {} >= {} ({})",
        report.head_lower.lhs, report.head_lower.rhs, report.head_lower.ok
    );
    println!(
        "  head in-cube  : {} >= {} ({})",
        report.head_concentrated_lower.lhs,
        report.head_concentrated_lower.rhs,
        report.head_concentrated_lower.ok
    );
    println!(
        "  tail  <= bound: {} <= {} ({})",
        report.tail_upper.lhs, report.tail_upper.rhs, report.tail_upper.ok
    );

    // Integer samples carry the whole norm (truncated Shannon sum).
    let reach = (4.0 * bandwidth) as i64;
    let shannon: f64 = (-reach..=reach)
        .map(|k| {
            let v = f.evaluate(&[k as f64]);
            v * v
        })
        .sum();
    println!(
        "\ntruncated Shannon sum over |k| <= {reach}: {shannon} (norm^2 = {})",
        f.norm_sq()
    );

    // CSV export round-trips bit-exactly.
    let text = f.csv_string();
    let g = BandlimitedFunction::read_csv_str(basis, &text, "demo")?;
    println!("CSV round trip exact: {}", g.coeffs == f.coeffs);
    Ok(())
}
