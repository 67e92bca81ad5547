//! # slepian
//!
//! Random sampling of band-limited functions, built on prolate spheroidal
//! bases.
//!
//! A band-limited function (Fourier transform supported in the unit cube
//! `[-1/2,1/2]^d`) that carries most of its energy on a cube `C_R =
//! [-R/2,R/2]^d` is well approximated inside the span of the top
//! eigenfunctions of the time-frequency limiting operator: the prolate
//! spheroidal functions. Sampling such a function at i.i.d. uniform points
//! of `C_R` yields, with high probability, a stable sampling inequality
//! `A·‖f‖₂² ≤ Σ|f(x_j)|² ≤ r·‖f‖₂²`, and the function can be recovered up
//! to its concentration defect by least squares.
//!
//! This crate implements the full pipeline and the closed-form bounds that
//! govern it:
//!
//! - [`prolate`]: Nyström discretization of the 1-D time-frequency
//!   limiting operator, its symmetric eigenproblem, pointwise evaluation of
//!   the eigenfunctions, and tensor-product bases in dimension `d`.
//! - [`blfunc`]: band-limited functions as finite prolate coefficient
//!   vectors with exact norms, concentration, head/tail projections, and
//!   the sinc reproducing kernel.
//! - [`sampling`]: seeded uniform sample sets in `C_R`, rank-one sample
//!   matrices, the random frame matrix and its smallest-eigenvalue
//!   deviation, covering indices, and the sampled-norm (Plancherel-Polya)
//!   check.
//! - [`bounds`]: every closed-form tail bound, constant, and feasibility
//!   condition: matrix Bernstein tails, sample-count formulas, lower frame
//!   constants, covering-index tails, and hypothesis checks.
//! - [`reconstruct`]: least-squares recovery of the head component from
//!   samples and a constructive demonstration of non-uniqueness.
//! - [`experiment`]: seeded, reproducible Monte Carlo campaigns comparing
//!   empirical failure frequencies against the theoretical tails, with CSV
//!   persistence.
//!
//! Start with the runnable examples (`cargo run --example basis_spectrum`,
//! `--example monte_carlo`, ...) or the `slepian` CLI, a thin front end
//! over the same functions.
//!
//! All randomness flows through explicitly seeded ChaCha8 streams, so every
//! result in this crate is bit-reproducible from its configuration.

// Indexed loops mirror the triangular/Householder update formulas, and the
// negated comparisons are NaN-rejecting argument guards.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blfunc;
pub mod bounds;
mod error;
pub mod experiment;
mod linalg;
pub mod prolate;
pub mod reconstruct;
pub mod sampling;
mod seeded;
mod textio;

pub use error::{Error, Result};
