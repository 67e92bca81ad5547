//! Dense symmetric eigensolver and orthogonal factorizations.
//!
//! Everything here operates on matrices of order at most a few hundred, so
//! simple, robust algorithms win: cyclic Jacobi rotations for symmetric
//! eigenproblems and Householder QR (with column pivoting) for least
//! squares and null spaces.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Relative numerical-rank tolerance shared by the least-squares and
/// null-space routines: diagonal entries of the pivoted R factor below
/// `RANK_REL_TOL * |r_11|` are treated as zero.
pub(crate) const RANK_REL_TOL: f64 = 1e-10;

fn frobenius(m: &Array2<f64>) -> f64 {
    m.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn off_diagonal_norm(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[[i, j]] * m[[i, j]];
            }
        }
    }
    s.sqrt()
}

/// Largest absolute difference between `m` and its transpose.
pub(crate) fn symmetry_error(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    worst
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted in descending order (ties broken by original
/// position) and the matching orthonormal eigenvectors as columns. Each
/// column's sign is fixed so its largest-magnitude component is positive,
/// which makes the output deterministic. Sweeps stop once the off-diagonal
/// Frobenius norm drops below `1e-12` times the Frobenius norm of the
/// input.
pub(crate) fn jacobi_eigen(m: &Array2<f64>) -> Result<(Vec<f64>, Array2<f64>)> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::invalid(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            n,
            m.ncols()
        )));
    }
    let mut a = m.clone();
    let mut v = Array2::<f64>::eye(n);
    let scale = frobenius(&a);
    let tol = 1e-12 * scale;

    const MAX_SWEEPS: usize = 60;
    let mut converged = scale == 0.0 || n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged || off_diagonal_norm(&a) <= tol {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[[p, p]];
                let aqq = a[[q, q]];
                a[[p, p]] = app - t * apq;
                a[[q, q]] = aqq + t * apq;
                a[[p, q]] = 0.0;
                a[[q, p]] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[[i, p]];
                        let aiq = a[[i, q]];
                        a[[i, p]] = aip - s * (aiq + tau * aip);
                        a[[i, q]] = aiq + s * (aip - tau * aiq);
                        a[[p, i]] = a[[i, p]];
                        a[[q, i]] = a[[i, q]];
                    }
                }
                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = vip - s * (viq + tau * vip);
                    v[[i, q]] = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > tol {
        return Err(Error::NonConvergence(format!(
            "Jacobi sweeps did not reduce the off-diagonal norm below {tol:e}"
        )));
    }

    // Sort descending; stable tie-break on the pre-sort position.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[[j, j]]
            .partial_cmp(&a[[i, i]])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let eigvals: Vec<f64> = order.iter().map(|&i| a[[i, i]]).collect();
    let mut eigvecs = Array2::<f64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        let mut arg = 0;
        let mut best = 0.0f64;
        for i in 0..n {
            let mag = v[[i, src]].abs();
            if mag > best {
                best = mag;
                arg = i;
            }
        }
        let flip = if v[[arg, src]] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            eigvecs[[i, dst]] = flip * v[[i, src]];
        }
    }
    Ok((eigvals, eigvecs))
}

/// Householder QR factorization, optionally with column pivoting.
///
/// Stores the reflectors in the strict lower part of `f` (column `k`, rows
/// `k..m`), the R diagonal separately, and R's off-diagonal entries in the
/// upper part of `f`.
pub(crate) struct HouseholderQr {
    f: Array2<f64>,
    r_diag: Vec<f64>,
    beta: Vec<f64>,
    perm: Vec<usize>,
    m: usize,
}

impl HouseholderQr {
    pub(crate) fn factor(a: &Array2<f64>, pivot: bool) -> Self {
        let (m, n) = a.dim();
        let kmax = m.min(n);
        let mut f = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut r_diag = vec![0.0; kmax];
        let mut beta = vec![0.0; kmax];

        let col_norm = |f: &Array2<f64>, row0: usize, j: usize| -> f64 {
            (row0..m).map(|i| f[[i, j]] * f[[i, j]]).sum::<f64>().sqrt()
        };

        for k in 0..kmax {
            if pivot {
                let mut best = k;
                let mut best_norm = col_norm(&f, k, k);
                for j in (k + 1)..n {
                    let nj = col_norm(&f, k, j);
                    if nj > best_norm {
                        best = j;
                        best_norm = nj;
                    }
                }
                if best != k {
                    for i in 0..m {
                        f.swap([i, k], [i, best]);
                    }
                    perm.swap(k, best);
                }
            }
            let norm = col_norm(&f, k, k);
            if norm == 0.0 {
                continue;
            }
            let x0 = f[[k, k]];
            let alpha = if x0 >= 0.0 { -norm } else { norm };
            f[[k, k]] = x0 - alpha;
            let vnorm2: f64 = (k..m).map(|i| f[[i, k]] * f[[i, k]]).sum();
            r_diag[k] = alpha;
            beta[k] = 2.0 / vnorm2;
            for j in (k + 1)..n {
                let dot: f64 = (k..m).map(|i| f[[i, k]] * f[[i, j]]).sum();
                let scale = beta[k] * dot;
                for i in k..m {
                    f[[i, j]] -= scale * f[[i, k]];
                }
            }
        }
        HouseholderQr {
            f,
            r_diag,
            beta,
            perm,
            m,
        }
    }

    /// Numerical rank at a relative tolerance on the pivoted R diagonal.
    pub(crate) fn rank(&self, rel_tol: f64) -> usize {
        let r0 = self.r_diag.first().map(|v| v.abs()).unwrap_or(0.0);
        if r0 == 0.0 {
            return 0;
        }
        self.r_diag
            .iter()
            .take_while(|d| d.abs() > rel_tol * r0)
            .count()
    }

    /// Applies `Qᵀ` in place to a vector of length `m`.
    pub(crate) fn apply_qt(&self, w: &mut [f64]) {
        for k in 0..self.r_diag.len() {
            if self.beta[k] == 0.0 {
                continue;
            }
            let dot: f64 = (k..self.m).map(|i| self.f[[i, k]] * w[i]).sum();
            let scale = self.beta[k] * dot;
            for i in k..self.m {
                w[i] -= scale * self.f[[i, k]];
            }
        }
    }

    /// Applies `Q` in place to a vector of length `m`.
    pub(crate) fn apply_q(&self, w: &mut [f64]) {
        for k in (0..self.r_diag.len()).rev() {
            if self.beta[k] == 0.0 {
                continue;
            }
            let dot: f64 = (k..self.m).map(|i| self.f[[i, k]] * w[i]).sum();
            let scale = self.beta[k] * dot;
            for i in k..self.m {
                w[i] -= scale * self.f[[i, k]];
            }
        }
    }

    fn r_entry(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.f[[i, j]],
            std::cmp::Ordering::Equal => self.r_diag[i],
            std::cmp::Ordering::Greater => 0.0,
        }
    }
}

/// Minimum-norm least-squares solution of `a · x ≈ b`.
///
/// Full column rank reduces to plain QR back-substitution; otherwise a
/// second (unpivoted) QR of the leading rows of Rᵀ yields the minimum-norm
/// minimizer, with numerical rank decided at `rel_tol` relative to the
/// largest R diagonal.
pub(crate) fn solve_min_norm(a: &Array2<f64>, b: &[f64], rel_tol: f64) -> Result<Array1<f64>> {
    let (m, n) = a.dim();
    if b.len() != m {
        return Err(Error::invalid(format!(
            "matrix has {m} rows but the right-hand side has {} entries",
            b.len()
        )));
    }
    let qr = HouseholderQr::factor(a, true);
    let rank = qr.rank(rel_tol);
    let mut x = Array1::<f64>::zeros(n);
    if rank == 0 {
        return Ok(x);
    }
    let mut qb = b.to_vec();
    qr.apply_qt(&mut qb);

    let mut x_perm = vec![0.0; n];
    if rank == n {
        for k in (0..n).rev() {
            let mut s = qb[k];
            for j in (k + 1)..n {
                s -= qr.r_entry(k, j) * x_perm[j];
            }
            x_perm[k] = s / qr.r_diag[k];
        }
    } else {
        // Minimum-norm completion: factor the transposed leading rows of R.
        let mut r1t = Array2::<f64>::zeros((n, rank));
        for k in 0..rank {
            for j in 0..n {
                r1t[[j, k]] = qr.r_entry(k, j);
            }
        }
        let qr2 = HouseholderQr::factor(&r1t, false);
        // Forward substitution on R2ᵀ z = c.
        let mut z = vec![0.0; rank];
        for k in 0..rank {
            let mut s = qb[k];
            for j in 0..k {
                s -= qr2.r_entry(j, k) * z[j];
            }
            let d = qr2.r_diag[k];
            z[k] = if d != 0.0 { s / d } else { 0.0 };
        }
        let mut y = vec![0.0; n];
        y[..rank].copy_from_slice(&z);
        qr2.apply_q(&mut y);
        x_perm.copy_from_slice(&y);
    }
    for j in 0..n {
        x[qr.perm[j]] = x_perm[j];
    }
    Ok(x)
}

/// Orthonormal basis of the numerical null space of `a`, one vector per
/// column; empty (zero-column) result when `a` has full column rank.
pub(crate) fn null_space_basis(a: &Array2<f64>, rel_tol: f64) -> Array2<f64> {
    let n = a.ncols();
    let at = a.t().to_owned();
    let qr = HouseholderQr::factor(&at, true);
    let rank = qr.rank(rel_tol);
    let dim = n - rank;
    let mut basis = Array2::<f64>::zeros((n, dim));
    for (col, k) in (rank..n).enumerate() {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        qr.apply_q(&mut e);
        for i in 0..n {
            basis[[i, col]] = e[i];
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn random_symmetric(n: usize, seed: u64) -> Array2<f64> {
        // Small deterministic LCG; test-only.
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).max(1);
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let v = next();
                m[[i, j]] = v;
                m[[j, i]] = v;
            }
        }
        m
    }

    #[test]
    fn jacobi_identity() {
        let m = Array2::<f64>::eye(3);
        let (vals, _) = jacobi_eigen(&m).unwrap();
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn jacobi_analytic_2x2() {
        let m = array![[2.0, 1.0], [1.0, 2.0]];
        let (vals, vecs) = jacobi_eigen(&m).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        // Residual check M v = λ v.
        for k in 0..2 {
            for i in 0..2 {
                let mv: f64 = (0..2).map(|j| m[[i, j]] * vecs[[j, k]]).sum();
                assert!((mv - vals[k] * vecs[[i, k]]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_reconstructs_random_matrix() {
        let m = random_symmetric(12, 7);
        let (vals, vecs) = jacobi_eigen(&m).unwrap();
        let n = 12;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += vecs[[i, k]] * vals[k] * vecs[[j, k]];
                }
                assert!((s - m[[i, j]]).abs() < 1e-10, "entry ({i},{j})");
            }
        }
        // Orthonormal columns.
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = (0..n).map(|i| vecs[[i, a]] * vecs[[i, b]]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10);
            }
        }
        // Descending order.
        for k in 1..n {
            assert!(vals[k - 1] >= vals[k]);
        }
    }

    #[test]
    fn jacobi_sign_convention() {
        let m = random_symmetric(6, 11);
        let (_, vecs) = jacobi_eigen(&m).unwrap();
        for k in 0..6 {
            let mut arg = 0;
            let mut best = 0.0f64;
            for i in 0..6 {
                if vecs[[i, k]].abs() > best {
                    best = vecs[[i, k]].abs();
                    arg = i;
                }
            }
            assert!(vecs[[arg, k]] > 0.0);
        }
    }

    #[test]
    fn qr_solves_full_rank_system() {
        let a = array![[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 3.0]];
        // b from x = (0.5, -2.0) exactly.
        let b: Vec<f64> = (0..4).map(|i| 0.5 - 2.0 * i as f64).collect();
        let x = solve_min_norm(&a, &b, RANK_REL_TOL).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-12);
        assert!((x[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn min_norm_on_rank_deficient_design() {
        // Second column duplicates the first: minimizer is not unique, the
        // minimum-norm one splits the weight evenly.
        let a = array![[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]];
        let b = vec![2.0, 4.0, 6.0];
        let x = solve_min_norm(&a, &b, RANK_REL_TOL).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-10);
        assert!((x[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn min_norm_zero_rhs_gives_zero() {
        let a = random_symmetric(5, 3);
        let x = solve_min_norm(&a, &[0.0; 5], RANK_REL_TOL).unwrap();
        assert!(x.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let a = array![[1.0, 2.0, 3.0], [0.0, 1.0, 1.0]];
        let basis = null_space_basis(&a, RANK_REL_TOL);
        assert_eq!(basis.dim(), (3, 1));
        let g = [basis[[0, 0]], basis[[1, 0]], basis[[2, 0]]];
        let norm: f64 = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        for i in 0..2 {
            let dot: f64 = (0..3).map(|j| a[[i, j]] * g[j]).sum();
            assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn null_space_empty_for_tall_full_rank() {
        let a = array![[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
        let basis = null_space_basis(&a, RANK_REL_TOL);
        assert_eq!(basis.ncols(), 0);
    }
}
