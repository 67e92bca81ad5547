//! Build a prolate basis and inspect its eigenvalue structure.
//!
//! ```bash
//! cargo run --example basis_spectrum
//! ```

use slepian::prolate::{ProlateBasis1D, TensorBasis};

fn main() -> slepian::Result<()> {
    let bandwidth = 4.0;
    let order = ProlateBasis1D::min_quad_order(bandwidth);
    let basis = ProlateBasis1D::build(bandwidth, order)?;

    println!("1-D spectrum at R = {bandwidth} (quadrature order {order}):");
    for (k, mu) in basis.mu.iter().enumerate() {
        println!("  mu_{:<2} = {mu:.12}", k + 1);
    }
    let sum: f64 = basis.mu.iter().sum();
    println!("eigenvalue sum = {sum:.6} (equals the bandwidth up to truncation)");

    // The spectrum plunges right after the first R eigenvalues.
    let r = bandwidth as usize;
    println!(
        "half-point: mu_{} = {:.4} <= 1/2 <= mu_{} = {:.4}",
        r + 1,
        basis.mu[r],
        r - 1,
        basis.mu[r - 2]
    );

    // Two-dimensional tensor products, truncated at the eigenvalues >= 1/2.
    let probe = TensorBasis::build(basis.clone(), 2, 1)?;
    let head = probe.lambda.iter().filter(|&&l| l >= 0.5).count();
    let tensor = TensorBasis::build(basis, 2, head)?;
    println!(
        "\n2-D tensor basis: {} products above the retention floor, N = {} with alpha = {:.6}",
        tensor.len(),
        tensor.head_len,
        tensor.alpha
    );
    println!("largest products:");
    for j in 0..head.min(8) {
        println!(
            "  lambda_{:<2} = {:.10}  from 1-D modes {:?}",
            j + 1,
            tensor.lambda[j],
            tensor.multi_indices[j].iter().map(|k| k + 1).collect::<Vec<_>>()
        );
    }

    print!("\nCSV export of the 1-D table:\n{}", tensor.base.csv_string());
    Ok(())
}
