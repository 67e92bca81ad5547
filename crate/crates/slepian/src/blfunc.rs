//! Band-limited functions as finite prolate coefficient vectors.
//!
//! A function `f = Σ_j c_j φ_j` over the orthonormal tensor basis has exact
//! norms in coefficient space: `‖f‖₂² = Σ c_j²` and the energy inside the
//! concentration cube is `Σ λ_j c_j²`. Membership of the concentration
//! class (defect `δ_f = 1 - Σλc²/Σc²` at most a target) is therefore
//! certified through eigenvalues rather than by numerical integration.

use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::prolate::TensorBasis;
use crate::seeded;
use crate::textio;

/// A band-limited function described by `M ≥ head_len` coefficients over a
/// tensor prolate basis.
#[derive(Debug, Clone)]
pub struct BandlimitedFunction {
    pub basis: Arc<TensorBasis>,
    pub coeffs: Vec<f64>,
    /// Synthesis seed, recorded for provenance; `None` for hand-built
    /// coefficient vectors.
    pub seed: Option<u64>,
}

/// One inequality of the projection-energy report: `lhs`, `rhs`, and
/// whether the claimed direction holds (up to a `1e-12·‖f‖²` rounding
/// allowance).
#[derive(Debug, Clone, Copy)]
pub struct ProjectionBound {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Energy-split guarantees for a function with concentration defect `δ`
/// over a basis truncated at `α`: the head holds at least
/// `(1-δ/(1-α))‖f‖₂²`, its in-cube energy at least `α` times that, and the
/// tail at most `δ/(1-α)‖f‖₂²`. All three must hold whenever `δ < 1-α`;
/// otherwise the report is flagged vacuous.
#[derive(Debug, Clone)]
pub struct ProjectionReport {
    pub delta: f64,
    pub alpha: f64,
    pub vacuous: bool,
    pub head_lower: ProjectionBound,
    pub head_concentrated_lower: ProjectionBound,
    pub tail_upper: ProjectionBound,
    pub all_ok: bool,
}

/// Largest scale in `[0,1]` for a coefficient block `(extra_total,
/// extra_conc)` added onto a block with energies `(base_total, base_conc)`
/// such that the combined concentration stays at least `1 - delta`. The
/// added block is never more concentrated than the base, so the defect
/// grows monotonically with the scale and the threshold is closed-form.
fn largest_scale(
    base_total: f64,
    base_conc: f64,
    extra_total: f64,
    extra_conc: f64,
    delta: f64,
) -> f64 {
    if extra_total == 0.0 {
        return 1.0;
    }
    let keep = 1.0 - delta;
    // s²·(extra_conc - keep·extra_total) ≥ keep·base_total - base_conc
    let denom = extra_conc - keep * extra_total;
    if denom >= 0.0 {
        return 1.0; // the extra block alone meets the target
    }
    let numer = base_conc - keep * base_total;
    if numer <= 0.0 {
        return 0.0;
    }
    (numer / -denom).sqrt().min(1.0)
}

impl BandlimitedFunction {
    /// Wraps an explicit coefficient vector. The length must cover the
    /// basis head and stay within the retained eigenpairs.
    pub fn from_coeffs(basis: Arc<TensorBasis>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < basis.head_len || coeffs.len() > basis.len() {
            return Err(Error::invalid(format!(
                "coefficient count {} must lie in [head {}, retained {}]",
                coeffs.len(),
                basis.head_len,
                basis.len()
            )));
        }
        Ok(BandlimitedFunction {
            basis,
            coeffs,
            seed: None,
        })
    }

    /// Default coefficient count for synthesis: twice the head, capped at
    /// the retained eigenpairs.
    pub fn default_len(basis: &TensorBasis) -> usize {
        (2 * basis.head_len).min(basis.len())
    }

    /// Draws a random function with concentration defect at most
    /// `delta_target`, deterministically in `seed`.
    ///
    /// Head and tail coefficients are standard normal draws; the tail, and
    /// if necessary the head beyond the leading coefficient, are then
    /// damped by the largest factors keeping the defect within target. The
    /// floor of achievable targets is `1 - λ_1` (all energy on the leading
    /// eigenfunction); below it, [`Error::InfeasibleTarget`] reports the
    /// floor.
    pub fn synth_random(
        basis: Arc<TensorBasis>,
        len: usize,
        delta_target: f64,
        seed: u64,
    ) -> Result<Self> {
        if len < basis.head_len || len > basis.len() {
            return Err(Error::invalid(format!(
                "coefficient count {} must lie in [head {}, retained {}]",
                len,
                basis.head_len,
                basis.len()
            )));
        }
        if !(delta_target > 0.0 && delta_target < 1.0) {
            return Err(Error::invalid("delta target must lie in (0, 1)"));
        }
        let floor = 1.0 - basis.lambda[0];
        if delta_target < floor {
            return Err(Error::InfeasibleTarget {
                requested: delta_target,
                floor,
            });
        }
        let mut rng = seeded::rng_from_seed(seed);
        let mut coeffs: Vec<f64> = (0..len).map(|_| seeded::standard_normal(&mut rng)).collect();
        if coeffs[0] == 0.0 {
            coeffs[0] = 1.0;
        }
        let head = basis.head_len;
        let block = |lo: usize, hi: usize, coeffs: &[f64]| {
            let mut total = 0.0;
            let mut conc = 0.0;
            for j in lo..hi {
                total += coeffs[j] * coeffs[j];
                conc += basis.lambda[j] * coeffs[j] * coeffs[j];
            }
            (total, conc)
        };
        // Damp the rest of the head against the leading coefficient, then
        // the tail against the whole head.
        let lead_total = coeffs[0] * coeffs[0];
        let lead_conc = basis.lambda[0] * lead_total;
        let (ht, hc) = block(1, head, &coeffs);
        let s_head = largest_scale(lead_total, lead_conc, ht, hc, delta_target);
        for c in coeffs[1..head].iter_mut() {
            *c *= s_head;
        }
        let (ht, hc) = block(0, head, &coeffs);
        let (tt, tc) = block(head, len, &coeffs);
        let s_tail = largest_scale(ht, hc, tt, tc, delta_target);
        for c in coeffs[head..].iter_mut() {
            *c *= s_tail;
        }
        let f = BandlimitedFunction {
            basis,
            coeffs,
            seed: Some(seed),
        };
        debug_assert!(f.delta() <= delta_target + 1e-12);
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `‖f‖₂²`, exact from the orthonormal expansion.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Energy inside the concentration cube, `Σ λ_j c_j²`.
    pub fn norm_sq_concentrated(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| self.basis.lambda[j] * c * c)
            .sum()
    }

    /// In-cube energy fraction; NaN for the zero function.
    pub fn concentration(&self) -> f64 {
        self.norm_sq_concentrated() / self.norm_sq()
    }

    /// Concentration defect `δ_f = 1 - concentration`.
    pub fn delta(&self) -> f64 {
        1.0 - self.concentration()
    }

    /// Pointwise evaluation `Σ_j c_j φ_j(x)`.
    ///
    /// # Panics
    /// Panics when `x.len()` differs from the basis dimension.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.basis.dim, "point dimension mismatch");
        let mut vals = vec![0.0; self.len()];
        self.basis.eval_many(x, &mut vals);
        vals.iter().zip(&self.coeffs).map(|(v, c)| v * c).sum()
    }

    /// Orthogonal projection onto the head span (coefficients past the
    /// truncation level zeroed).
    pub fn project_head(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs[self.basis.head_len.min(self.coeffs.len())..].iter_mut() {
            *c = 0.0;
        }
        BandlimitedFunction {
            basis: self.basis.clone(),
            coeffs,
            seed: None,
        }
    }

    /// Complement of [`project_head`](Self::project_head); the two sum
    /// back to the original coefficients exactly.
    pub fn project_tail(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs[..self.basis.head_len.min(self.coeffs.len())].iter_mut() {
            *c = 0.0;
        }
        BandlimitedFunction {
            basis: self.basis.clone(),
            coeffs,
            seed: None,
        }
    }

    /// Evaluates the three projection-energy inequalities with the
    /// function's exact defect and the basis truncation value.
    pub fn projection_energy_check(&self) -> ProjectionReport {
        let delta = self.delta();
        let alpha = self.basis.alpha;
        let total = self.norm_sq();
        let head = self.project_head();
        let tail = self.project_tail();
        let slack = 1e-12 * total;
        let ratio = delta / (1.0 - alpha);
        let head_lower = ProjectionBound {
            lhs: head.norm_sq(),
            rhs: (1.0 - ratio) * total,
            ok: head.norm_sq() >= (1.0 - ratio) * total - slack,
        };
        let head_concentrated_lower = ProjectionBound {
            lhs: head.norm_sq_concentrated(),
            rhs: alpha * (1.0 - ratio) * total,
            ok: head.norm_sq_concentrated() >= alpha * (1.0 - ratio) * total - slack,
        };
        let tail_upper = ProjectionBound {
            lhs: tail.norm_sq(),
            rhs: ratio * total,
            ok: tail.norm_sq() <= ratio * total + slack,
        };
        ProjectionReport {
            delta,
            alpha,
            vacuous: !(delta < 1.0 - alpha),
            all_ok: head_lower.ok && head_concentrated_lower.ok && tail_upper.ok,
            head_lower,
            head_concentrated_lower,
            tail_upper,
        }
    }

    /// Writes the coefficients as CSV with a provenance header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# R = {}", self.basis.base.bandwidth)?;
        writeln!(w, "# d = {}", self.basis.dim)?;
        writeln!(w, "# N = {}", self.basis.head_len)?;
        writeln!(w, "# M = {}", self.len())?;
        match self.seed {
            Some(s) => writeln!(w, "# seed = {s}")?,
            None => writeln!(w, "# seed = none")?,
        }
        writeln!(w, "j,c_j")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            writeln!(w, "{},{}", j + 1, c)?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("string write cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Parses a coefficient CSV against a basis, validating the header
    /// metadata (`R`, `d`, `N`, `M`) and the 1-based row indices.
    pub fn read_csv_str(basis: Arc<TensorBasis>, text: &str, path: &str) -> Result<Self> {
        let mut meta_r = None;
        let mut meta_d = None;
        let mut meta_n = None;
        let mut meta_m = None;
        let mut seed = None;
        let mut coeffs: Vec<f64> = Vec::new();
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
                    "N" => meta_n = Some(textio::parse_usize(path, lineno, "N", value)?),
                    "M" => meta_m = Some(textio::parse_usize(path, lineno, "M", value)?),
                    "seed" => {
                        if value != "none" {
                            seed = Some(textio::parse_u64(path, lineno, "seed", value)?);
                        }
                    }
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
            if !saw_columns {
                if trimmed != "j,c_j" {
                    return Err(Error::parse(
                        path,
                        lineno,
                        format!("expected column header `j,c_j`, got `{trimmed}`"),
                    ));
                }
                saw_columns = true;
                continue;
            }
            let (j_str, c_str) = trimmed
                .split_once(',')
                .ok_or_else(|| Error::parse(path, lineno, "expected `j,c_j` data row".to_string()))?;
            let j = textio::parse_usize(path, lineno, "j", j_str)?;
            if j != coeffs.len() + 1 {
                return Err(Error::parse(
                    path,
                    lineno,
                    format!("row index {} out of order (expected {})", j, coeffs.len() + 1),
                ));
            }
            coeffs.push(textio::parse_f64(path, lineno, "c_j", c_str)?);
        }
        for (name, present) in [
            ("R", meta_r.is_some()),
            ("d", meta_d.is_some()),
            ("N", meta_n.is_some()),
            ("M", meta_m.is_some()),
        ] {
            if !present {
                return Err(Error::parse(path, 0, format!("missing header key `{name}`")));
            }
        }
        if meta_r != Some(basis.base.bandwidth) || meta_d != Some(basis.dim) {
            return Err(Error::invalid(format!(
                "file was written for R = {:?}, d = {:?}; the supplied basis has R = {}, d = {}",
                meta_r, meta_d, basis.base.bandwidth, basis.dim
            )));
        }
        if meta_n != Some(basis.head_len) {
            return Err(Error::invalid(format!(
                "file truncation level {:?} does not match basis head {}",
                meta_n, basis.head_len
            )));
        }
        if meta_m != Some(coeffs.len()) {
            return Err(Error::invalid(format!(
                "header M = {:?} but {} rows were read",
                meta_m,
                coeffs.len()
            )));
        }
        let mut f = Self::from_coeffs(basis, coeffs)?;
        f.seed = seed;
        Ok(f)
    }

    pub fn read_csv_path(basis: Arc<TensorBasis>, path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::read_csv_str(basis, &text, &path.display().to_string())
    }
}

/// Product sinc kernel `Π_i sin(π(x_i - y_i))/(π(x_i - y_i))`; the
/// reproducing kernel of the unit-cube band-limited space, with value 1 on
/// coinciding coordinates.
pub fn sinc_kernel(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let u = a - b;
            if u == 0.0 {
                1.0
            } else {
                (std::f64::consts::PI * u).sin() / (std::f64::consts::PI * u)
            }
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prolate::ProlateBasis1D;
    use proptest::prelude::*;

    fn basis_1d(bandwidth: f64, head: usize) -> Arc<TensorBasis> {
        let b =
            ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth)).unwrap();
        Arc::new(TensorBasis::build(b, 1, head).unwrap())
    }

    #[test]
    fn unit_vector_concentration_is_eigenvalue() {
        let tb = basis_1d(2.0, 2);
        for j in 0..4 {
            let mut coeffs = vec![0.0; 4];
            coeffs[j] = 1.0;
            let f = BandlimitedFunction::from_coeffs(tb.clone(), coeffs).unwrap();
            assert_eq!(f.concentration(), tb.lambda[j]);
        }
    }

    #[test]
    fn synth_honors_target_and_seed() {
        let tb = basis_1d(2.0, 2);
        let m = BandlimitedFunction::default_len(&tb);
        let f = BandlimitedFunction::synth_random(tb.clone(), m, 0.05, 42).unwrap();
        assert!(f.delta() <= 0.05 + 1e-12);
        let g = BandlimitedFunction::synth_random(tb.clone(), m, 0.05, 42).unwrap();
        assert_eq!(f.coeffs, g.coeffs);
        let h = BandlimitedFunction::synth_random(tb, m, 0.05, 43).unwrap();
        assert_ne!(f.coeffs, h.coeffs);
    }

    #[test]
    fn synth_at_floor_collapses_to_leading_mode() {
        let tb = basis_1d(2.0, 2);
        let floor = 1.0 - tb.lambda[0];
        let f = BandlimitedFunction::synth_random(tb, 4, floor, 9).unwrap();
        assert!((f.delta() - floor).abs() < 1e-12);
        assert!(f.coeffs[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn synth_below_floor_reports_minimum() {
        let tb = basis_1d(2.0, 2);
        let floor = 1.0 - tb.lambda[0];
        match BandlimitedFunction::synth_random(tb, 4, floor / 2.0, 1) {
            Err(Error::InfeasibleTarget { requested, floor: f }) => {
                assert_eq!(requested, floor / 2.0);
                assert_eq!(f, floor);
            }
            other => panic!("expected infeasible-target error, got {other:?}"),
        }
    }

    #[test]
    fn zero_function_evaluates_to_zero() {
        let tb = basis_1d(2.0, 2);
        let f = BandlimitedFunction::from_coeffs(tb, vec![0.0; 3]).unwrap();
        for x in [-3.0, -0.4, 0.0, 1.1, 2.9] {
            assert_eq!(f.evaluate(&[x]), 0.0);
        }
    }

    #[test]
    fn pointwise_bound_by_l2_norm() {
        // |f(x)| ≤ ‖f‖₂ for any band-limited f; probe the leading
        // eigenfunction at random points of the doubled cube.
        let tb = basis_1d(2.0, 2);
        let mut coeffs = vec![0.0; 4];
        coeffs[0] = 1.0;
        let f = BandlimitedFunction::from_coeffs(tb, coeffs).unwrap();
        let mut rng = crate::seeded::rng_from_seed(5);
        for _ in 0..1000 {
            let x = 4.0 * (crate::seeded::uniform01(&mut rng) - 0.5);
            assert!(f.evaluate(&[x]).abs() <= f.norm_sq().sqrt() + 1e-6);
        }
    }

    #[test]
    fn projections_split_orthogonally() {
        let tb = basis_1d(2.0, 2);
        let f = BandlimitedFunction::synth_random(tb.clone(), 4, 0.3, 3).unwrap();
        let head = f.project_head();
        let tail = f.project_tail();
        for j in 0..f.len() {
            assert_eq!(head.coeffs[j] + tail.coeffs[j], f.coeffs[j]);
        }
        assert!((head.norm_sq() + tail.norm_sq() - f.norm_sq()).abs() <= 1e-12 * f.norm_sq());
        assert_eq!(head.project_tail().norm_sq(), 0.0);
        assert_eq!(tail.project_head().norm_sq(), 0.0);
    }

    #[test]
    fn projection_bounds_for_concentrated_function() {
        // At bandwidth 4 a defect of 0.01 is feasible and the truncation
        // value sits below 1/2, so the tail carries at most 2% of the
        // energy.
        let tb = basis_1d(4.0, 5);
        assert!(tb.alpha <= 0.5);
        let f = BandlimitedFunction::synth_random(tb, 8, 0.01, 11).unwrap();
        let report = f.projection_energy_check();
        assert!(!report.vacuous);
        assert!(report.all_ok);
        assert!(report.tail_upper.lhs <= 0.02 * f.norm_sq() + 1e-12);
    }

    #[test]
    fn projection_bounds_hold_on_many_random_functions() {
        let tb = basis_1d(2.0, 2);
        for seed in 0..100u64 {
            let delta_target = 0.02 + 0.2 * (seed as f64 / 100.0);
            let f =
                BandlimitedFunction::synth_random(tb.clone(), 4, delta_target, seed).unwrap();
            let report = f.projection_energy_check();
            if !report.vacuous {
                assert!(report.all_ok, "seed {seed}: {report:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn projection_bounds_hold_for_arbitrary_coefficients(
            raw in proptest::collection::vec(-1.0f64..1.0, 4),
        ) {
            // The inequalities are a theorem for every nonzero f with
            // δ < 1-α, whatever the coefficients.
            let tb = basis_1d(2.0, 2);
            prop_assume!(raw.iter().any(|c| c.abs() > 1e-3));
            let f = BandlimitedFunction::from_coeffs(tb, raw).unwrap();
            let report = f.projection_energy_check();
            if !report.vacuous {
                prop_assert!(report.all_ok);
            }
        }
    }

    #[test]
    fn truncated_shannon_sum_recovers_norm() {
        let tb = basis_1d(2.0, 2);
        let f = BandlimitedFunction::synth_random(tb, 4, 0.05, 21).unwrap();
        let reach = 8i64; // 4R
        let sum: f64 = (-reach..=reach)
            .map(|k| {
                let v = f.evaluate(&[k as f64]);
                v * v
            })
            .sum();
        let rel = (sum - f.norm_sq()).abs() / f.norm_sq();
        assert!(rel < 1e-2, "relative Shannon defect {rel}");
    }

    #[test]
    fn cube_energy_matches_trapezoid_integral() {
        // Σ λ_j c_j² equals the integral over the concentration cube;
        // trapezoid with 2000 points as the independent oracle.
        for bandwidth in [2.0f64, 4.0] {
            let b = ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth))
                .unwrap();
            let head = b.mu.iter().take_while(|&&m| m >= 0.5).count();
            let tb = Arc::new(TensorBasis::build(b, 1, head).unwrap());
            let m = BandlimitedFunction::default_len(&tb);
            let f = BandlimitedFunction::synth_random(tb, m, 0.2, 17).unwrap();
            let steps = 2000usize;
            let h = bandwidth / steps as f64;
            let mut acc = 0.0;
            for g in 0..=steps {
                let x = -bandwidth / 2.0 + g as f64 * h;
                let w = if g == 0 || g == steps { 0.5 } else { 1.0 };
                let v = f.evaluate(&[x]);
                acc += w * v * v;
            }
            acc *= h;
            let exact = f.norm_sq_concentrated();
            assert!(
                (acc - exact).abs() < 1e-3 * exact,
                "cube energy {acc} vs {exact}"
            );
        }
    }

    #[test]
    fn sinc_kernel_basics() {
        assert_eq!(sinc_kernel(&[0.3, -1.2], &[0.3, -1.2]), 1.0);
        assert!(sinc_kernel(&[2.0], &[0.0]).abs() < 1e-15);
        assert!(sinc_kernel(&[1.5, 3.0], &[1.5, 0.0]).abs() < 1e-15);
    }

    #[test]
    fn sinc_cardinal_series_reproduces_function() {
        let tb = basis_1d(2.0, 2);
        let f = BandlimitedFunction::synth_random(tb, 4, 0.05, 33).unwrap();
        let reach = 16i64; // 8R
        for &x in &[-0.7, -0.37, 0.0, 0.21, 0.9] {
            let series: f64 = (-reach..=reach)
                .map(|k| f.evaluate(&[k as f64]) * sinc_kernel(&[x], &[k as f64]))
                .sum();
            let direct = f.evaluate(&[x]);
            assert!(
                (series - direct).abs() < 1e-2 * f.norm_sq().sqrt(),
                "cardinal series at {x}: {series} vs {direct}"
            );
        }
    }

    #[test]
    fn csv_round_trip_preserves_bits() {
        let tb = basis_1d(2.0, 2);
        let f = BandlimitedFunction::synth_random(tb.clone(), 4, 0.05, 77).unwrap();
        let text = f.csv_string();
        let g = BandlimitedFunction::read_csv_str(tb, &text, "mem").unwrap();
        assert_eq!(f.coeffs, g.coeffs);
        assert_eq!(g.seed, Some(77));
    }

    #[test]
    fn csv_rejects_malformed_input() {
        let tb = basis_1d(2.0, 2);
        let f = BandlimitedFunction::synth_random(tb.clone(), 4, 0.05, 1).unwrap();
        let text = f.csv_string();
        // Unknown header key.
        let bad = text.replace("# seed", "# sead");
        let err = BandlimitedFunction::read_csv_str(tb.clone(), &bad, "mem").unwrap_err();
        assert!(err.to_string().contains("sead"), "{err}");
        // Missing required key.
        let bad: String = text
            .lines()
            .filter(|l| !l.starts_with("# M"))
            .fold(String::new(), |mut acc, l| {
                acc.push_str(l);
                acc.push('\n');
                acc
            });
        let err = BandlimitedFunction::read_csv_str(tb.clone(), &bad, "mem").unwrap_err();
        assert!(err.to_string().contains('M'), "{err}");
        // Basis mismatch.
        let other = basis_1d(2.0, 3);
        assert!(BandlimitedFunction::read_csv_str(other, &text, "mem").is_err());
    }
}
