//! Prolate spheroidal bases via Nyström discretization.
//!
//! The 1-D time-frequency limiting operator acts on the spectral interval
//! `[-1/2,1/2]` through the kernel `sin(πR(ξ-η))/(π(ξ-η))`. Discretizing
//! the integral with Gauss-Legendre quadrature and symmetrizing with
//! `√(w_i w_j)` turns the eigenproblem into a dense symmetric matrix whose
//! eigenvalues approximate the concentration spectrum `μ_k(R)` with
//! spectral accuracy, and whose eigenvectors carry the weighted frequency
//! samples of the eigenfunctions. Tensor products of the 1-D factors give
//! the basis in dimension `d`.

use std::f64::consts::PI;
use std::io::Write;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg;

/// Eigenvalues below this are indistinguishable from discretization noise
/// and are not retained in a basis.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

/// Nodes and weights integrating over the spectral interval `[-1/2, 1/2]`.
///
/// Nodes are strictly increasing, exactly symmetric about 0, and the
/// weights sum to the interval length 1. An order-`n` rule integrates
/// polynomials up to degree `2n-1` exactly.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre polynomial `P_n` and its derivative at `x`, by the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x² - 1)
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    /// Gauss-Legendre rule of the given order on `[-1/2, 1/2]`.
    ///
    /// Roots of the Legendre polynomial are located by Newton iteration
    /// from Chebyshev initial guesses and refined to `1e-14`; mirrored
    /// pairs share one computed root, so the node symmetry is exact.
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("quadrature order must be at least 1"));
        }
        let n = order;
        let half = n.div_ceil(2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..half {
            let odd_center = n % 2 == 1 && i == half - 1;
            let mut z = if odd_center {
                0.0
            } else {
                (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos()
            };
            if !odd_center {
                for _ in 0..100 {
                    let (p, dp) = legendre_with_derivative(n, z);
                    let dz = p / dp;
                    z -= dz;
                    if dz.abs() < 1e-14 {
                        break;
                    }
                }
            }
            let (_, dp) = legendre_with_derivative(n, z);
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            // z is the i-th largest positive root; scale [-1,1] → [-1/2,1/2].
            nodes[n - 1 - i] = z / 2.0;
            nodes[i] = -z / 2.0;
            weights[n - 1 - i] = w / 2.0;
            weights[i] = w / 2.0;
        }
        Ok(QuadratureRule {
            order: n,
            nodes,
            weights,
        })
    }

    /// Weighted sum `Σ w_i f(ξ_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Symmetrized Nyström matrix of the 1-D time-frequency limiting operator:
/// `M[i][j] = √(w_i w_j) · sin(πR(ξ_i-ξ_j))/(π(ξ_i-ξ_j))`, with the
/// diagonal at the ξ→η limit `w_i · R`.
pub fn kernel_matrix(bandwidth: f64, quad: &QuadratureRule) -> Result<Array2<f64>> {
    if !(bandwidth > 0.0) {
        return Err(Error::invalid("bandwidth must be positive"));
    }
    let n = quad.order;
    let mut m = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        m[[i, i]] = quad.weights[i] * bandwidth;
        for j in (i + 1)..n {
            let u = quad.nodes[i] - quad.nodes[j];
            let k = (PI * bandwidth * u).sin() / (PI * u);
            let v = (quad.weights[i] * quad.weights[j]).sqrt() * k;
            m[[i, j]] = v;
            m[[j, i]] = v;
        }
    }
    Ok(m)
}

/// Symmetric eigendecomposition: eigenvalues descending, orthonormal
/// eigenvector columns with deterministic signs.
///
/// Rejects matrices whose asymmetry exceeds `1e-12` (relative to the
/// largest entry for matrices of scale above 1).
pub fn sym_eig(m: &Array2<f64>) -> Result<(Vec<f64>, Array2<f64>)> {
    if m.nrows() != m.ncols() {
        return Err(Error::invalid(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    let asym = linalg::symmetry_error(m);
    if asym > 1e-12 * scale {
        return Err(Error::invalid(format!(
            "matrix is not symmetric: max |M[i][j] - M[j][i]| = {asym:e}"
        )));
    }
    linalg::jacobi_eigen(m)
}

/// One-dimensional prolate basis: eigenvalues `μ_k` in `(0,1)` sorted
/// descending and the weighted frequency-side eigenvectors, plus the fixed
/// global phases that make time-domain evaluation real-valued.
#[derive(Debug, Clone)]
pub struct ProlateBasis1D {
    pub bandwidth: f64,
    pub quad: QuadratureRule,
    /// Retained eigenvalues, strictly decreasing, each in `(0,1)`.
    pub mu: Vec<f64>,
    /// Column `k` holds the weighted frequency samples of eigenfunction `k`.
    pub eigvecs: Array2<f64>,
    pub count: usize,
    sqrt_w: Vec<f64>,
    /// `(cos θ_k, sin θ_k)` of the global phase per eigenfunction.
    phases: Vec<(f64, f64)>,
}

impl ProlateBasis1D {
    /// Smallest quadrature order resolving the kernel oscillations for a
    /// given bandwidth: `⌈4R⌉ + 30`.
    pub fn min_quad_order(bandwidth: f64) -> usize {
        (4.0 * bandwidth).ceil() as usize + 30
    }

    /// Builds the basis for `bandwidth ≥ 1`, retaining eigenpairs with
    /// `μ_k ≥ EIGENVALUE_FLOOR`.
    pub fn build(bandwidth: f64, quad_order: usize) -> Result<Self> {
        if !(bandwidth >= 1.0) {
            return Err(Error::invalid("bandwidth must be at least 1"));
        }
        let min_order = Self::min_quad_order(bandwidth);
        if quad_order < min_order {
            return Err(Error::invalid(format!(
                "quadrature order {quad_order} is below the required minimum {min_order} for bandwidth {bandwidth}"
            )));
        }
        let quad = QuadratureRule::gauss_legendre(quad_order)?;
        let m = kernel_matrix(bandwidth, &quad)?;
        let (vals, vecs) = linalg::jacobi_eigen(&m)?;
        if vals[0] >= 1.0 {
            return Err(Error::NonConvergence(format!(
                "leading eigenvalue {} reached 1; the spectrum is not resolved at this precision",
                vals[0]
            )));
        }
        let count = vals.iter().take_while(|&&v| v >= EIGENVALUE_FLOOR).count();
        if count == 0 {
            return Err(Error::NonConvergence(
                "no eigenvalue above the retention floor".into(),
            ));
        }
        let mu: Vec<f64> = vals[..count].to_vec();
        let eigvecs = vecs.slice(ndarray::s![.., ..count]).to_owned();
        let sqrt_w: Vec<f64> = quad.weights.iter().map(|w| w.sqrt()).collect();

        let mut basis = ProlateBasis1D {
            bandwidth,
            quad,
            mu,
            eigvecs,
            count,
            sqrt_w,
            phases: Vec::new(),
        };
        basis.fix_phases();
        Ok(basis)
    }

    /// Raw complex time-domain value `Σ_i √w_i v_ik e^{2πi x ξ_i}`.
    fn eval_complex_raw(&self, k: usize, x: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..self.quad.order {
            let (s, c) = (2.0 * PI * x * self.quad.nodes[i]).sin_cos();
            let a = self.sqrt_w[i] * self.eigvecs[[i, k]];
            re += a * c;
            im += a * s;
        }
        (re, im)
    }

    /// The raw evaluation has a constant phase per eigenfunction; fix it at
    /// the largest-modulus point of a coarse grid on `[-R, R]` so the real
    /// part carries the whole function.
    fn fix_phases(&mut self) {
        const GRID: usize = 257;
        let r = self.bandwidth;
        self.phases = (0..self.count)
            .map(|k| {
                let mut best = (0.0, 0.0);
                let mut best_mag = -1.0;
                for g in 0..GRID {
                    let x = -r + 2.0 * r * g as f64 / (GRID - 1) as f64;
                    let (re, im) = self.eval_complex_raw(k, x);
                    let mag = re * re + im * im;
                    if mag > best_mag {
                        best_mag = mag;
                        best = (re, im);
                    }
                }
                let norm = best_mag.sqrt();
                if norm == 0.0 {
                    (1.0, 0.0)
                } else {
                    (best.0 / norm, best.1 / norm)
                }
            })
            .collect();
    }

    /// Evaluates eigenfunction `k` at time point `x`.
    pub fn eval(&self, k: usize, x: f64) -> Result<f64> {
        if k >= self.count {
            return Err(Error::invalid(format!(
                "eigenfunction index {k} out of range (count = {})",
                self.count
            )));
        }
        let (re, im) = self.eval_complex_raw(k, x);
        let (pc, ps) = self.phases[k];
        Ok(pc * re + ps * im)
    }

    /// Imaginary residue left after the phase fix; stays at rounding level
    /// for a resolved basis.
    pub fn eval_imag_residual(&self, k: usize, x: f64) -> Result<f64> {
        if k >= self.count {
            return Err(Error::invalid(format!(
                "eigenfunction index {k} out of range (count = {})",
                self.count
            )));
        }
        let (re, im) = self.eval_complex_raw(k, x);
        let (pc, ps) = self.phases[k];
        Ok((pc * im - ps * re).abs())
    }

    /// Evaluates eigenfunctions `0..out.len()` at `x` in one pass over the
    /// quadrature nodes.
    pub(crate) fn eval_all(&self, x: f64, out: &mut [f64]) {
        let want = out.len();
        debug_assert!(want <= self.count);
        let mut re = vec![0.0; want];
        let mut im = vec![0.0; want];
        for i in 0..self.quad.order {
            let (s, c) = (2.0 * PI * x * self.quad.nodes[i]).sin_cos();
            let a = self.sqrt_w[i] * c;
            let b = self.sqrt_w[i] * s;
            for k in 0..want {
                let v = self.eigvecs[[i, k]];
                re[k] += a * v;
                im[k] += b * v;
            }
        }
        for k in 0..want {
            let (pc, ps) = self.phases[k];
            out[k] = pc * re[k] + ps * im[k];
        }
    }

    /// Writes the eigenvalue table as CSV with 1-based indices.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,mu_k")?;
        for (k, mu) in self.mu.iter().enumerate() {
            writeln!(w, "{},{}", k + 1, mu)?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("string write cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}

/// Tensor-product basis in dimension `d`: product eigenvalues `λ_j` sorted
/// descending with deterministic tie-breaking, their multi-indices, and a
/// truncation level `head_len` (the N of the reports and file formats)
/// with `alpha = λ_N`.
#[derive(Debug, Clone)]
pub struct TensorBasis {
    pub base: ProlateBasis1D,
    pub dim: usize,
    /// 1-D factor indices of each retained product, aligned with `lambda`.
    pub multi_indices: Vec<Vec<usize>>,
    /// Product eigenvalues, non-increasing; ties sorted lexicographically
    /// by multi-index.
    pub lambda: Vec<f64>,
    /// Truncation level: the head span is `φ_0 .. φ_{head_len-1}`.
    pub head_len: usize,
    /// The smallest head eigenvalue, `lambda[head_len - 1]`.
    pub alpha: f64,
}

fn enumerate_products(mu: &[f64], dim: usize) -> Vec<(f64, Vec<usize>)> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    fn rec(mu: &[f64], dim: usize, axis: usize, prod: f64, idx: &mut Vec<usize>, out: &mut Vec<(f64, Vec<usize>)>) {
        if axis == dim {
            out.push((prod, idx.clone()));
            return;
        }
        for k in 0..mu.len() {
            let p = prod * mu[k];
            if p < EIGENVALUE_FLOOR {
                // mu is descending, so later k only shrink the product.
                break;
            }
            idx[axis] = k;
            rec(mu, dim, axis + 1, p, idx, out);
        }
    }
    rec(mu, dim, 0, 1.0, &mut idx, &mut out);
    out.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.1.cmp(&b.1))
    });
    out
}

impl TensorBasis {
    /// Assembles the `d`-fold product basis and truncates the head at
    /// `head_len`. All products above [`EIGENVALUE_FLOOR`] are retained so
    /// coefficient vectors may extend past the head.
    pub fn build(base: ProlateBasis1D, dim: usize, head_len: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if head_len == 0 {
            return Err(Error::invalid("truncation level must be at least 1"));
        }
        let products = enumerate_products(&base.mu, dim);
        if products.len() < head_len {
            return Err(Error::invalid(format!(
                "only {} tensor eigenvalues lie above the retention floor; cannot truncate at {}",
                products.len(),
                head_len
            )));
        }
        let lambda: Vec<f64> = products.iter().map(|p| p.0).collect();
        let multi_indices: Vec<Vec<usize>> = products.into_iter().map(|p| p.1).collect();
        let alpha = lambda[head_len - 1];
        Ok(TensorBasis {
            base,
            dim,
            multi_indices,
            lambda,
            head_len,
            alpha,
        })
    }

    /// Number of retained product eigenpairs (at least `head_len`).
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Evaluates basis function `j` at a point.
    ///
    /// Indices up to [`len`](Self::len) are accepted so that coefficient
    /// vectors extending past the head remain evaluable.
    pub fn eval(&self, j: usize, x: &[f64]) -> Result<f64> {
        if j >= self.len() {
            return Err(Error::invalid(format!(
                "basis index {j} out of range (retained = {})",
                self.len()
            )));
        }
        if x.len() != self.dim {
            return Err(Error::invalid(format!(
                "point has {} coordinates, basis dimension is {}",
                x.len(),
                self.dim
            )));
        }
        let mut prod = 1.0;
        for (axis, &k) in self.multi_indices[j].iter().enumerate() {
            prod *= self.base.eval(k, x[axis])?;
        }
        Ok(prod)
    }

    /// Evaluates basis functions `0..out.len()` at `x`, sharing the 1-D
    /// factor evaluations across products.
    ///
    /// # Panics
    /// Panics when `x.len()` differs from the basis dimension or
    /// `out.len()` exceeds the retained eigenpairs (debug builds).
    pub fn eval_many(&self, x: &[f64], out: &mut [f64]) {
        let want = out.len();
        debug_assert!(want <= self.len());
        debug_assert_eq!(x.len(), self.dim);
        if want == 0 {
            return;
        }
        let mut need = 0usize;
        for j in 0..want {
            for &k in &self.multi_indices[j] {
                need = need.max(k + 1);
            }
        }
        let mut per_axis = vec![vec![0.0; need]; self.dim];
        for (axis, buf) in per_axis.iter_mut().enumerate() {
            self.base.eval_all(x[axis], buf);
        }
        for (j, slot) in out.iter_mut().enumerate() {
            let mut prod = 1.0;
            for (axis, &k) in self.multi_indices[j].iter().enumerate() {
                prod *= per_axis[axis][k];
            }
            *slot = prod;
        }
    }

    /// Diagonal of the head reproducing kernel, `m(x) = Σ_{l<N} φ_l(x)²`.
    ///
    /// For any point this stays within `[0, 1]` up to evaluation error.
    ///
    /// # Panics
    /// Panics when `x.len()` differs from the basis dimension.
    pub fn kernel_diag(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        let mut vals = vec![0.0; self.head_len];
        self.eval_many(x, &mut vals);
        vals.iter().map(|v| v * v).sum()
    }

    /// Writes the product-eigenvalue table as CSV with 1-based indices.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "j,lambda_j")?;
        for axis in 0..self.dim {
            write!(w, ",i_{}", axis + 1)?;
        }
        writeln!(w)?;
        for j in 0..self.len() {
            write!(w, "{},{}", j + 1, self.lambda[j])?;
            for &k in &self.multi_indices[j] {
                write!(w, ",{}", k + 1)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("string write cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}
