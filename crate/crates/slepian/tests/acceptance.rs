//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them).
//!
//! Statistical criteria follow the documented flake policy: one reseeded
//! rerun before declaring failure. Everything else is deterministic.

use std::sync::Arc;

use slepian::blfunc::BandlimitedFunction;
use slepian::bounds;
use slepian::experiment::{
    run_covering_campaign, run_frame_deviation_campaign, run_sampling_inequality_campaign,
    Campaign, ExperimentConfig,
};
use slepian::prolate::{ProlateBasis1D, TensorBasis};
use slepian::reconstruct;
use slepian::sampling::{plancherel_polya_check, rank_one, FrameMatrix, SampleSet};

fn basis_1d(bandwidth: f64, head: usize) -> Arc<TensorBasis> {
    let base =
        ProlateBasis1D::build(bandwidth, ProlateBasis1D::min_quad_order(bandwidth)).unwrap();
    Arc::new(TensorBasis::build(base, 1, head).unwrap())
}

/// Deterministic uniform stream for test-side draws, separate from the
/// library's generators.
struct TestRng(u64);

impl TestRng {
    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn criterion_1_eigenvalue_structure() {
    for bandwidth in [2.0f64, 4.0, 8.0] {
        let order = ProlateBasis1D::min_quad_order(bandwidth);
        let basis = ProlateBasis1D::build(bandwidth, order).unwrap();
        // (a) every retained eigenvalue strictly inside (0,1)
        for &mu in &basis.mu {
            assert!(mu > 0.0 && mu < 1.0, "mu = {mu} at R = {bandwidth}");
        }
        // (b) trace identity within 1%
        let sum: f64 = basis.mu.iter().sum();
        assert!(
            (sum - bandwidth).abs() <= 0.01 * bandwidth,
            "eigenvalue sum {sum} vs R = {bandwidth}"
        );
        // (c) half-point: mu_{R+1} <= 1/2 <= mu_{R-1} (1-based)
        let r = bandwidth as usize;
        assert!(basis.mu[r] <= 0.5, "mu_{} = {}", r + 1, basis.mu[r]);
        assert!(basis.mu[r - 2] >= 0.5, "mu_{} = {}", r - 1, basis.mu[r - 2]);
    }
    println!("ACCEPTANCE 1 (eigenvalue structure R in {{2,4,8}}): PASS");
}

#[test]
fn criterion_2_exact_identities() {
    let basis = basis_1d(2.0, 2);

    // Rank-one identity T² = m(x)·T within 1e-10 at 1000 random points.
    let mut rng = TestRng(0x51EEF00D);
    for _ in 0..1000 {
        let x = [4.0 * (rng.next_f64() - 0.5)];
        let t = rank_one(&basis, &x);
        let m = basis.kernel_diag(&x);
        for k in 0..2 {
            for l in 0..2 {
                let t2: f64 = (0..2).map(|i| t[[k, i]] * t[[i, l]]).sum();
                assert!(
                    (t2 - m * t[[k, l]]).abs() <= 1e-10,
                    "entry ({k},{l}) at x = {}",
                    x[0]
                );
            }
        }
    }

    // Monte Carlo expectation of T at r = 1e5 within 4 standard errors of
    // diag(lambda_k)/R.
    let count = 100_000usize;
    let samples = SampleSet::uniform(2.0, 1, count, 20240042).unwrap();
    let frame = FrameMatrix::build(&basis, &samples).unwrap();
    let mut phi = vec![0.0; 2];
    for k in 0..2 {
        for l in 0..2 {
            let mean = frame.matrix[[k, l]];
            let mut var = 0.0;
            for x in samples.iter() {
                basis.eval_many(x, &mut phi);
                let dev = phi[k] * phi[l] - mean;
                var += dev * dev;
            }
            var /= (count - 1) as f64;
            let se = (var / count as f64).sqrt();
            let target = if k == l { basis.lambda[k] / 2.0 } else { 0.0 };
            assert!(
                (mean - target).abs() <= 4.0 * se,
                "entry ({k},{l}): mean {mean} vs target {target} (se {se})"
            );
        }
    }
    println!("ACCEPTANCE 2 (rank-one identity and expectation of T): PASS");
}

#[test]
fn criterion_3_bound_algebra() {
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    let mut rng = TestRng(0xB0A71D);
    for _ in 0..20 {
        let n = 1.0 + 30.0 * rng.next_f64();
        let r = 1 + (rng.next_f64() * 4000.0) as usize;
        let bandwidth = 2.0 + 8.0 * rng.next_f64();
        let dim = 1 + (rng.next_f64() * 3.0) as usize;
        let nu = 0.499 * rng.next_f64();
        let delta = 0.4 * rng.next_f64();
        let scale = bandwidth.powi(dim as i32);

        // Spectral tail == matrix Bernstein tail at t = r·nu/R^d.
        let direct = bounds::frame_deviation_tail(n, r, bandwidth, dim, nu).unwrap();
        let via_bernstein =
            bounds::matrix_bernstein_tail(n, r as f64 / scale, 1.0, r as f64 * nu / scale)
                .unwrap();
        assert!(rel(direct, via_bernstein), "{direct} vs {via_bernstein}");

        // Success probability == 1 - spectral tail - covering tail.
        let p = bounds::sampling_success_probability(bandwidth, dim, r, nu).unwrap();
        let spectral = bounds::frame_deviation_tail(scale, r, bandwidth, dim, nu).unwrap();
        let covering = bounds::covering_tail(bandwidth, dim, r, 3.0 / scale).unwrap();
        assert!(rel(p, 1.0 - spectral - covering));

        // General lower constant specializes at alpha = 1/2, N0 = 3r/R^d.
        let gen = bounds::lower_frame_constant_general(
            r,
            bandwidth,
            dim,
            0.5,
            delta,
            nu,
            3.0 * r as f64 / scale,
        )
        .unwrap();
        let main = bounds::lower_frame_constant(r, bandwidth, dim, delta, nu);
        assert!(rel(gen, main), "{gen} vs {main}");
    }
    println!("ACCEPTANCE 3 (bound algebra identities at 20 random tuples): PASS");
}

#[test]
fn criterion_4_sample_count_formula() {
    // Independent evaluation: r = ceil(R^d (1+nu/3)/nu^2 · ln(2R^d/eps))
    // at R=2, d=1, nu=1/4, eps=1/10 equals ceil(2·(13/12)·16·ln 40).
    let oracle = (2.0 * (13.0 / 12.0) * 16.0 * 40f64.ln()).ceil() as usize;
    assert_eq!(oracle, 128);
    let budget = bounds::required_samples(2.0, 1, 0.25, 0.1).unwrap();
    assert_eq!(budget.required, 128);
    assert!(budget.spectral_dominates);
    println!("ACCEPTANCE 4 (sample-count formula gives r = 128): PASS");
}

#[test]
fn criterion_5_theorem_inequalities() {
    // Projection-energy bounds on 500 random functions across two bases.
    let mut rng = TestRng(0x7E57);
    let configs = [(2.0f64, 2usize), (4.0, 4)];
    let mut checked = 0usize;
    for (bandwidth, head) in configs {
        let basis = basis_1d(bandwidth, head);
        let floor = 1.0 - basis.lambda[0];
        let span = BandlimitedFunction::default_len(&basis);
        let vacuous_at = 1.0 - basis.alpha;
        for i in 0..250 {
            let target = (floor + (vacuous_at * 0.9 - floor) * rng.next_f64()).max(floor);
            let f = BandlimitedFunction::synth_random(
                basis.clone(),
                span,
                target,
                0xACCE0000 + i as u64,
            )
            .unwrap();
            let report = f.projection_energy_check();
            assert!(!report.vacuous, "target {target} should be non-vacuous");
            assert!(report.all_ok, "projection bound failed: {report:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 500);

    // Residual bound and sampled-energy bound on 100 (f, samples) pairs,
    // one fifth of them adversarially clustered.
    let basis = basis_1d(2.0, 2);
    for i in 0..100u64 {
        let f =
            BandlimitedFunction::synth_random(basis.clone(), 4, 0.02 + 0.002 * i as f64, 900 + i)
                .unwrap();
        let samples = if i % 5 == 0 {
            // Cluster every sample in one unit cube around a random spot.
            let center = 0.9 * (rng.next_f64() - 0.5);
            let pts: Vec<f64> = (0..40)
                .map(|j| (center + 1e-3 * j as f64).clamp(-1.0, 1.0))
                .collect();
            SampleSet::from_points(2.0, 1, pts, 0).unwrap()
        } else {
            SampleSet::uniform(2.0, 1, 40, 7000 + i).unwrap()
        };
        let recovery = reconstruct::residual_bound_check(&f, &samples).unwrap();
        assert!(
            recovery.ok,
            "residual bound failed at pair {i}: {} > {}",
            recovery.residual, recovery.bound
        );
        let pp = plancherel_polya_check(&f, &samples).unwrap();
        assert!(pp.ok, "sampled-energy bound failed at pair {i}");
        // Upper sampling bound.
        assert!(pp.lhs <= samples.len() as f64 * f.norm_sq() * (1.0 + 1e-9));
    }

    // Adversarial clustering exactly at the peak of the function.
    let f = BandlimitedFunction::synth_random(basis.clone(), 4, 0.05, 4242).unwrap();
    let peak = (0..400)
        .map(|g| -1.0 + 2.0 * g as f64 / 399.0)
        .max_by(|a, b| {
            f.evaluate(&[*a])
                .abs()
                .partial_cmp(&f.evaluate(&[*b]).abs())
                .unwrap()
        })
        .unwrap();
    let pts: Vec<f64> = (0..200)
        .map(|j| (peak + 1e-5 * j as f64).clamp(-1.0, 1.0))
        .collect();
    let clustered = SampleSet::from_points(2.0, 1, pts, 0).unwrap();
    let pp = plancherel_polya_check(&f, &clustered).unwrap();
    assert_eq!(pp.covering_index, 200);
    assert!(pp.ok);

    println!("ACCEPTANCE 5 (theorem-level inequalities, 100% of trials): PASS");
}

/// Runs a statistical campaign check with the one permitted reseeded
/// rerun.
fn with_flake_policy(cfg: ExperimentConfig, check: impl Fn(&Campaign) -> bool) -> bool {
    let campaign = Campaign::new(cfg).unwrap();
    if check(&campaign) {
        return true;
    }
    let campaign = Campaign::new(cfg.rerun_config()).unwrap();
    check(&campaign)
}

#[test]
fn criterion_6_probabilistic_claims() {
    // Hypothesis-satisfying (delta, nu) at R=2, d=1; r from the
    // sample-count rule at eps = 0.2.
    let delta = 1e-3;
    let nu = 0.2;
    let hyp = bounds::hypothesis_check(delta, nu, 1);
    assert!(hyp.ok, "chosen (delta, nu) must satisfy the hypotheses");
    let budget = bounds::required_samples(2.0, 1, nu, 0.2).unwrap();
    assert_eq!(budget.required, 160);
    let cfg = ExperimentConfig {
        bandwidth: 2.0,
        dim: 1,
        head_len: 2,
        coeff_len: 4,
        num_samples: budget.required,
        nu,
        delta_target: delta,
        epsilon: 0.2,
        trials: 200,
        base_seed: 20240913,
        quad_order: 38,
    };

    // Sampling inequality: lower-bound failure frequency within the
    // epsilon budget plus three binomial standard errors (0.2849...).
    let margin = 0.2 + 3.0 * (0.2f64 * 0.8 / 200.0).sqrt();
    assert!((margin - 0.285).abs() < 5e-4);
    let ok = with_flake_policy(cfg, |campaign| {
        let (_, s) = run_sampling_inequality_campaign(campaign).unwrap();
        assert_eq!(s.upper_failures, 0, "upper bound is a theorem");
        assert_eq!(s.theorem_violations, 0);
        assert!(!s.constant_vacuous, "A = {} should be positive", s.lower_constant);
        s.frequency <= margin
    });
    assert!(ok, "lower-bound failure frequency exceeded {margin}");

    // Frame-deviation event frequency against its tail bound.
    let ok = with_flake_policy(cfg, |campaign| {
        let (_, s) = run_frame_deviation_campaign(campaign).unwrap();
        assert_eq!(s.theorem_violations, 0);
        s.margin_ok
    });
    assert!(ok, "frame-deviation frequency exceeded its tail + 3 SE");

    // Covering event at a = 3R^-d; the bound is far below 1 here, so the
    // comparison is informative and the empirical frequency must vanish.
    let a = 3.0 / 2.0;
    let bound = bounds::covering_tail(2.0, 1, cfg.num_samples, a).unwrap();
    assert!(bound < 1.0);
    let ok = with_flake_policy(cfg, |campaign| {
        let (_, s) = run_covering_campaign(campaign, a).unwrap();
        s.frequency <= s.bound || s.margin_ok
    });
    assert!(ok, "covering frequency exceeded its bound");

    println!("ACCEPTANCE 6 (probabilistic claims at desk scale, 200 trials): PASS");
}

#[test]
fn criterion_7_nonuniqueness() {
    let basis = basis_1d(2.0, 2);
    let r = 8usize;
    let span = r + 1;
    assert!(span <= basis.len());
    let samples = SampleSet::uniform(2.0, 1, r, 314159).unwrap();
    let g = reconstruct::null_perturbation(&basis, span, &samples)
        .unwrap()
        .expect("generic samples leave a one-dimensional null space");
    let gnorm = g.norm_sq().sqrt();
    assert!(gnorm > 0.0);
    let worst = samples
        .iter()
        .map(|x| g.evaluate(x).abs())
        .fold(0.0f64, f64::max);
    assert!(
        worst <= 1e-8 * gnorm,
        "perturbation must vanish at the samples: {worst:e}"
    );

    // f + eps·g stays in the delta-target class while differing from f.
    let delta_target = 0.1;
    let f = BandlimitedFunction::synth_random(basis.clone(), span, delta_target / 2.0, 2718).unwrap();
    let eps = reconstruct::perturbation_budget(&f, &g, delta_target)
        .expect("a positive perturbation budget exists");
    assert!(eps > 0.0);
    let coeffs: Vec<f64> = (0..span).map(|j| f.coeffs[j] + eps * g.coeffs[j]).collect();
    let h = BandlimitedFunction::from_coeffs(basis, coeffs).unwrap();
    assert!(h.delta() <= delta_target);
    let dist = eps * gnorm;
    assert!(dist > 0.0);
    let agree = samples
        .iter()
        .map(|x| (f.evaluate(x) - h.evaluate(x)).abs())
        .fold(0.0f64, f64::max);
    assert!(agree <= 1e-8 * dist.max(f.norm_sq().sqrt()));
    println!("ACCEPTANCE 7 (non-uniqueness from cube samples): PASS");
}

// Criterion 8 (byte-identical CLI outputs) lives in tests/cli.rs, which
// drives the installed binary.
