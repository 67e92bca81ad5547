//! Random samples in the concentration cube and the rank-one frame
//! machinery built on them.
//!
//! Sample coordinates are i.i.d. uniform on `[-R/2, R/2]` from a seeded
//! ChaCha8 stream (see the crate root for the exact mapping), so a
//! `SampleSet` is reproducible from `(R, d, r, seed)` alone.

use std::collections::HashMap;
use std::io::Write;
use std::sync::Arc;

use ndarray::Array2;

use crate::blfunc::BandlimitedFunction;
use crate::bounds;
use crate::error::{Error, Result};
use crate::linalg;
use crate::prolate::TensorBasis;
use crate::seeded;
use crate::textio;

/// `r` points of the cube `C_R = [-R/2, R/2]^d`, stored flat in row-major
/// order.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub bandwidth: f64,
    pub dim: usize,
    points: Vec<f64>,
    pub seed: u64,
}

impl SampleSet {
    /// Draws `count ≥ 1` i.i.d. uniform points, deterministically in
    /// `seed`.
    pub fn uniform(bandwidth: f64, dim: usize, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("sample count must be at least 1"));
        }
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !(bandwidth > 0.0) {
            return Err(Error::invalid("bandwidth must be positive"));
        }
        let mut rng = seeded::rng_from_seed(seed);
        let points = (0..count * dim)
            .map(|_| bandwidth * (seeded::uniform01(&mut rng) - 0.5))
            .collect();
        Ok(SampleSet {
            bandwidth,
            dim,
            points,
            seed,
        })
    }

    /// Wraps explicit coordinates (flat, row-major); every coordinate must
    /// lie inside the cube. Useful for adversarial clustered designs.
    pub fn from_points(bandwidth: f64, dim: usize, points: Vec<f64>, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !points.len().is_multiple_of(dim) {
            return Err(Error::invalid(format!(
                "{} coordinates do not form points of dimension {dim}",
                points.len()
            )));
        }
        let half = bandwidth / 2.0;
        if let Some(bad) = points.iter().find(|v| v.abs() > half) {
            return Err(Error::invalid(format!(
                "coordinate {bad} lies outside [-{half}, {half}]"
            )));
        }
        Ok(SampleSet {
            bandwidth,
            dim,
            points,
            seed,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.points[j * self.dim..(j + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks_exact(self.dim)
    }

    /// Largest number of samples in any integer-translated unit cube.
    ///
    /// Cubes are half-open, `k + [-1/2, 1/2)^d`, so every point counts in
    /// exactly one cube and the counts partition the set.
    pub fn covering_index(&self) -> usize {
        let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
        for x in self.iter() {
            let key: Vec<i64> = x.iter().map(|&v| (v + 0.5).floor() as i64).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Writes coordinates as CSV with a `(R, d, r, seed)` header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# R = {}", self.bandwidth)?;
        writeln!(w, "# d = {}", self.dim)?;
        writeln!(w, "# r = {}", self.len())?;
        writeln!(w, "# seed = {}", self.seed)?;
        let cols: Vec<String> = (1..=self.dim).map(|i| format!("x_{i}")).collect();
        writeln!(w, "{}", cols.join(","))?;
        for x in self.iter() {
            let row: Vec<String> = x.iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("string write cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn read_csv_str(text: &str, path: &str) -> Result<Self> {
        let mut meta_r = None;
        let mut meta_d = None;
        let mut meta_count = None;
        let mut seed = None;
        let mut points: Vec<f64> = Vec::new();
        let mut saw_columns = false;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some((key, value)) = textio::header_kv(trimmed) {
                match key {
                    "R" => meta_r = Some(textio::parse_f64(path, lineno, "R", value)?),
                    "d" => meta_d = Some(textio::parse_usize(path, lineno, "d", value)?),
                    "r" => meta_count = Some(textio::parse_usize(path, lineno, "r", value)?),
                    "seed" => seed = Some(textio::parse_u64(path, lineno, "seed", value)?),
                    other => {
                        return Err(Error::parse(
                            path,
                            lineno,
                            format!("unknown header key `{other}`"),
                        ))
                    }
                }
                continue;
            }
            let dim = meta_d
                .ok_or_else(|| Error::parse(path, lineno, "data before `# d = ...` header".to_string()))?;
            if !saw_columns {
                saw_columns = true;
                continue; // column header row
            }
            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != dim {
                return Err(Error::parse(
                    path,
                    lineno,
                    format!("expected {dim} coordinates, got {}", fields.len()),
                ));
            }
            for f in fields {
                points.push(textio::parse_f64(path, lineno, "coordinate", f)?);
            }
        }
        for (name, present) in [
            ("R", meta_r.is_some()),
            ("d", meta_d.is_some()),
            ("r", meta_count.is_some()),
            ("seed", seed.is_some()),
        ] {
            if !present {
                return Err(Error::parse(path, 0, format!("missing header key `{name}`")));
            }
        }
        let set = Self::from_points(
            meta_r.unwrap(),
            meta_d.unwrap(),
            points,
            seed.unwrap(),
        )?;
        if set.len() != meta_count.unwrap() {
            return Err(Error::invalid(format!(
                "header r = {} but {} points were read",
                meta_count.unwrap(),
                set.len()
            )));
        }
        Ok(set)
    }

    pub fn read_csv_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::read_csv_str(&text, &path.display().to_string())
    }
}

/// Rank-one sample matrix `T[k][l] = φ_k(x)·φ_l(x)` over the basis head.
pub fn rank_one(basis: &TensorBasis, x: &[f64]) -> Array2<f64> {
    let n = basis.head_len;
    let mut phi = vec![0.0; n];
    basis.eval_many(x, &mut phi);
    let mut t = Array2::<f64>::zeros((n, n));
    for k in 0..n {
        for l in 0..n {
            t[[k, l]] = phi[k] * phi[l];
        }
    }
    t
}

/// The random frame matrix `G = (1/r) Σ_j T_j`, positive semidefinite and
/// exactly symmetric by construction. Its expectation under uniform
/// sampling is `R^{-d}·diag(λ_k)`.
#[derive(Debug, Clone)]
pub struct FrameMatrix {
    pub basis: Arc<TensorBasis>,
    pub matrix: Array2<f64>,
    pub num_samples: usize,
}

impl FrameMatrix {
    /// Accumulates the rank-one sample matrices with compensated (Kahan)
    /// summation, so large `r` does not eat into the `1e-10` invariant
    /// budgets downstream.
    pub fn build(basis: &Arc<TensorBasis>, samples: &SampleSet) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("frame matrix needs at least one sample"));
        }
        if samples.dim != basis.dim {
            return Err(Error::invalid(format!(
                "samples have dimension {}, basis has {}",
                samples.dim, basis.dim
            )));
        }
        let n = basis.head_len;
        let mut sum = Array2::<f64>::zeros((n, n));
        let mut comp = Array2::<f64>::zeros((n, n));
        let mut phi = vec![0.0; n];
        for x in samples.iter() {
            basis.eval_many(x, &mut phi);
            for k in 0..n {
                for l in 0..n {
                    let y = phi[k] * phi[l] - comp[[k, l]];
                    let s = sum[[k, l]] + y;
                    comp[[k, l]] = (s - sum[[k, l]]) - y;
                    sum[[k, l]] = s;
                }
            }
        }
        let r = samples.len() as f64;
        sum.mapv_inplace(|v| v / r);
        Ok(FrameMatrix {
            basis: basis.clone(),
            matrix: sum,
            num_samples: samples.len(),
        })
    }

    /// Smallest eigenvalue of `G`.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (vals, _) = linalg::jacobi_eigen(&self.matrix)?;
        Ok(*vals.last().expect("head is nonempty"))
    }

    /// Smallest eigenvalue of the centered matrix `G - R^{-d}·diag(λ_k)`:
    /// the worst deviation of the sampled quadratic form from its
    /// expectation over unit-norm head functions.
    pub fn deviation_min_eigenvalue(&self) -> Result<f64> {
        let scale = self.basis.base.bandwidth.powi(self.basis.dim as i32);
        let mut dev = self.matrix.clone();
        for k in 0..self.basis.head_len {
            dev[[k, k]] -= self.basis.lambda[k] / scale;
        }
        let (vals, _) = linalg::jacobi_eigen(&dev)?;
        Ok(*vals.last().expect("head is nonempty"))
    }
}

/// Result of the sampled-energy (Plancherel-Polya) inequality
/// `Σ|f(x_j)|² ≤ N₀·e^{dπ}·‖f‖₂²`.
#[derive(Debug, Clone, Copy)]
pub struct SampledEnergyCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub covering_index: usize,
    pub ok: bool,
}

/// Evaluates both sides of the sampled-energy inequality; `ok` must hold
/// for every band-limited `f` and every point set.
pub fn plancherel_polya_check(
    f: &BandlimitedFunction,
    samples: &SampleSet,
) -> Result<SampledEnergyCheck> {
    if samples.dim != f.basis.dim {
        return Err(Error::invalid(format!(
            "samples have dimension {}, function has {}",
            samples.dim, f.basis.dim
        )));
    }
    let lhs: f64 = samples
        .iter()
        .map(|x| {
            let v = f.evaluate(x);
            v * v
        })
        .sum();
    let n0 = samples.covering_index();
    let rhs = n0 as f64 * bounds::plancherel_polya_constant(samples.dim) * f.norm_sq();
    Ok(SampledEnergyCheck {
        lhs,
        rhs,
        covering_index: n0,
        ok: lhs <= rhs,
    })
}
