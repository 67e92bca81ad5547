//! Build the random frame matrix from uniform samples and compare its
//! smallest-eigenvalue deviation against the matrix Bernstein tail.
//!
//! ```bash
//! cargo run --example frame_deviation
//! ```

use std::sync::Arc;

use slepian::bounds;
use slepian::prolate::{ProlateBasis1D, TensorBasis};
use slepian::sampling::{rank_one, FrameMatrix, SampleSet};

fn main() -> slepian::Result<()> {
    let bandwidth = 2.0;
    let dim = 1;
    let head = 2;
    let base = ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth))?;
    let basis = Arc::new(TensorBasis::build(base, dim, head)?);

    // One rank-one sample matrix: T_j² = m(x_j)·T_j.
    let samples = SampleSet::uniform(bandwidth, dim, 400, 7)?;
    let x = samples.point(0);
    let t = rank_one(&basis, x);
    let m = basis.kernel_diag(x);
    println!("sample x = {x:?}: trace(T) = {:.12} = m(x) = {m:.12}", t[[0, 0]] + t[[1, 1]]);

    let frame = FrameMatrix::build(&basis, &samples)?;
    println!("\nframe matrix from {} samples:", samples.len());
    for k in 0..head {
        let row: Vec<String> = (0..head).map(|l| format!("{:>12.8}", frame.matrix[[k, l]])).collect();
        println!("  [{}]", row.join(" "));
    }
    let scale = bandwidth.powi(dim as i32);
    println!("expectation diagonal: {:?}", (0..head).map(|k| basis.lambda[k] / scale).collect::<Vec<_>>());

    let nu = 0.2;
    let deviation = frame.deviation_min_eigenvalue()?;
    let tail = bounds::frame_deviation_tail(head as f64, samples.len(), bandwidth, dim, nu)?;
    println!(
        "\nsmallest deviation eigenvalue = {deviation:.6}; event threshold -nu/R^d = {:.6}",
        -nu / scale
    );
    println!("event fired: {}", deviation <= -nu / scale);
    println!("theoretical tail bound for this event: {tail:.6}");
    Ok(())
}
