//! Seeded Monte Carlo campaigns comparing empirical failure frequencies of
//! the probabilistic events against their theoretical tails.
//!
//! Per-trial seeds derive from the base seed as `trial_seed_i = base_seed ^
//! splitmix64(i)`; inside a trial, the sample stream uses
//! `splitmix64(trial_seed)` and the function stream
//! `splitmix64(trial_seed ^ 1)`, so both are reproducible from the config
//! alone. Trials run in parallel and are merged in trial-index order, which
//! makes CSV output byte-deterministic.

use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;

use crate::blfunc::BandlimitedFunction;
use crate::bounds;
use crate::error::{Error, Result};
use crate::prolate::{ProlateBasis1D, TensorBasis};
use crate::reconstruct;
use crate::sampling::{FrameMatrix, SampleSet};
use crate::seeded;
use crate::textio;

/// Full parameter set of a campaign. The on-disk form is a flat key-value
/// file with exactly the keys `R, d, N, M, r, nu, delta_target, epsilon,
/// trials, base_seed, quad_order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    /// Side length of the concentration cube (key `R`).
    pub bandwidth: f64,
    /// Ambient dimension (key `d`).
    pub dim: usize,
    /// Basis truncation level (key `N`).
    pub head_len: usize,
    /// Coefficient count of synthesized functions (key `M`).
    pub coeff_len: usize,
    /// Samples per trial (key `r`).
    pub num_samples: usize,
    /// Deviation level of the frame event (key `nu`).
    pub nu: f64,
    /// Concentration-defect target for synthesis and the class constant
    /// (key `delta_target`).
    pub delta_target: f64,
    /// Failure-probability budget the campaign is compared against (key
    /// `epsilon`).
    pub epsilon: f64,
    /// Number of independent trials (key `trials`).
    pub trials: usize,
    /// Base seed; per-trial seeds derive from it (key `base_seed`).
    pub base_seed: u64,
    /// Quadrature order of the basis discretization (key `quad_order`).
    pub quad_order: usize,
}

const CONFIG_KEYS: [&str; 11] = [
    "R",
    "d",
    "N",
    "M",
    "r",
    "nu",
    "delta_target",
    "epsilon",
    "trials",
    "base_seed",
    "quad_order",
];

impl ExperimentConfig {
    /// Parses the flat key-value format. Unknown and missing keys are hard
    /// errors with the offending line.
    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut values: std::collections::HashMap<&str, (usize, String)> =
            std::collections::HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| {
                Error::parse(path, lineno, format!("expected `key = value`, got `{trimmed}`"))
            })?;
            let key = key.trim();
            let slot = CONFIG_KEYS
                .iter()
                .find(|k| **k == key)
                .ok_or_else(|| Error::parse(path, lineno, format!("unknown key `{key}`")))?;
            if values.insert(slot, (lineno, value.trim().to_string())).is_some() {
                return Err(Error::parse(path, lineno, format!("duplicate key `{key}`")));
            }
        }
        let get = |key: &str| -> Result<(usize, String)> {
            values
                .get(key)
                .cloned()
                .ok_or_else(|| Error::parse(path, 0, format!("missing required key `{key}`")))
        };
        let (ln, v) = get("R")?;
        let bandwidth = textio::parse_f64(path, ln, "R", &v)?;
        let (ln, v) = get("d")?;
        let dim = textio::parse_usize(path, ln, "d", &v)?;
        let (ln, v) = get("N")?;
        let head_len = textio::parse_usize(path, ln, "N", &v)?;
        let (ln, v) = get("M")?;
        let coeff_len = textio::parse_usize(path, ln, "M", &v)?;
        let (ln, v) = get("r")?;
        let num_samples = textio::parse_usize(path, ln, "r", &v)?;
        let (ln, v) = get("nu")?;
        let nu = textio::parse_f64(path, ln, "nu", &v)?;
        let (ln, v) = get("delta_target")?;
        let delta_target = textio::parse_f64(path, ln, "delta_target", &v)?;
        let (ln, v) = get("epsilon")?;
        let epsilon = textio::parse_f64(path, ln, "epsilon", &v)?;
        let (ln, v) = get("trials")?;
        let trials = textio::parse_usize(path, ln, "trials", &v)?;
        let (ln, v) = get("base_seed")?;
        let base_seed = textio::parse_u64(path, ln, "base_seed", &v)?;
        let (ln, v) = get("quad_order")?;
        let quad_order = textio::parse_usize(path, ln, "quad_order", &v)?;
        let cfg = ExperimentConfig {
            bandwidth,
            dim,
            head_len,
            coeff_len,
            num_samples,
            nu,
            delta_target,
            epsilon,
            trials,
            base_seed,
            quad_order,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Serializes in the same key-value format `parse` reads.
    pub fn to_config_string(&self) -> String {
        format!(
            "R = {}\nd = {}\nN = {}\nM = {}\nr = {}\nnu = {}\ndelta_target = {}\nepsilon = {}\ntrials = {}\nbase_seed = {}\nquad_order = {}\n",
            self.bandwidth,
            self.dim,
            self.head_len,
            self.coeff_len,
            self.num_samples,
            self.nu,
            self.delta_target,
            self.epsilon,
            self.trials,
            self.base_seed,
            self.quad_order
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.num_samples == 0 {
            return Err(Error::invalid("r must be at least 1"));
        }
        if self.head_len == 0 || self.coeff_len < self.head_len {
            return Err(Error::invalid("need N >= 1 and M >= N"));
        }
        if !(self.nu >= 0.0) {
            return Err(Error::invalid("nu must be non-negative"));
        }
        if !(self.delta_target > 0.0 && self.delta_target < 1.0) {
            return Err(Error::invalid("delta_target must lie in (0, 1)"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::invalid("epsilon must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Seed of trial `i`: `base_seed ^ splitmix64(i)`.
    pub fn trial_seed(&self, index: usize) -> u64 {
        self.base_seed ^ seeded::splitmix64(index as u64)
    }

    /// Seed of trial `i`'s sample stream: `splitmix64(trial_seed)`.
    pub fn sample_seed(&self, index: usize) -> u64 {
        seeded::splitmix64(self.trial_seed(index))
    }

    /// Seed of trial `i`'s function stream: `splitmix64(trial_seed ^ 1)`.
    pub fn function_seed(&self, index: usize) -> u64 {
        seeded::splitmix64(self.trial_seed(index) ^ 1)
    }

    /// Fresh base seed for the one permitted statistical rerun.
    pub fn rerun_config(&self) -> Self {
        let mut cfg = *self;
        cfg.base_seed = seeded::splitmix64(self.base_seed ^ 0x5EED_5EED_5EED_5EED);
        cfg
    }
}

/// Everything measured in one trial. `upper_ok` must be true in every
/// trial of every campaign, and `residual <= residual_bound` likewise;
/// both are theorems, not statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub deviation_min_eigenvalue: f64,
    pub covering_index: usize,
    pub sampling_sum: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub residual: f64,
    pub residual_bound: f64,
}

/// A prepared campaign: parsed config, shared basis, and the synthesis
/// target actually used.
pub struct Campaign {
    pub cfg: ExperimentConfig,
    pub basis: Arc<TensorBasis>,
    /// Defect target handed to the synthesizer. Equal to
    /// `cfg.delta_target` when that is achievable in the span; otherwise
    /// raised to twice the achievability floor `1 - λ_1` and flagged.
    pub delta_synth: f64,
    pub delta_adjusted: bool,
}

impl Campaign {
    pub fn new(cfg: ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let base = ProlateBasis1D::build(cfg.bandwidth, cfg.quad_order)?;
        let basis = Arc::new(TensorBasis::build(base, cfg.dim, cfg.head_len)?);
        if cfg.coeff_len > basis.len() {
            return Err(Error::invalid(format!(
                "M = {} exceeds the {} retained eigenpairs",
                cfg.coeff_len,
                basis.len()
            )));
        }
        let floor = 1.0 - basis.lambda[0];
        let (delta_synth, delta_adjusted) = if cfg.delta_target >= floor {
            (cfg.delta_target, false)
        } else {
            // The configured class is empty in this span; synthesize at
            // twice the floor so trials still exercise the inequalities,
            // and flag the adjustment in every summary.
            (2.0 * floor, true)
        };
        Ok(Campaign {
            cfg,
            basis,
            delta_synth,
            delta_adjusted,
        })
    }

    fn run_trial(&self, index: usize) -> Result<TrialResult> {
        let cfg = &self.cfg;
        let f = BandlimitedFunction::synth_random(
            self.basis.clone(),
            cfg.coeff_len,
            self.delta_synth,
            cfg.function_seed(index),
        )?;
        let samples = SampleSet::uniform(
            cfg.bandwidth,
            cfg.dim,
            cfg.num_samples,
            cfg.sample_seed(index),
        )?;
        let frame = FrameMatrix::build(&self.basis, &samples)?;
        let deviation = frame.deviation_min_eigenvalue()?;
        let sampling_sum: f64 = samples
            .iter()
            .map(|x| {
                let v = f.evaluate(x);
                v * v
            })
            .sum();
        let norm_sq = f.norm_sq();
        let a = bounds::lower_frame_constant(
            cfg.num_samples,
            cfg.bandwidth,
            cfg.dim,
            cfg.delta_target,
            cfg.nu,
        );
        let recovery = reconstruct::residual_bound_check(&f, &samples)?;
        Ok(TrialResult {
            seed: cfg.trial_seed(index),
            deviation_min_eigenvalue: deviation,
            covering_index: recovery.covering_index,
            sampling_sum,
            lower_ok: sampling_sum >= a * norm_sq,
            upper_ok: sampling_sum <= cfg.num_samples as f64 * norm_sq * (1.0 + 1e-9),
            residual: recovery.residual,
            residual_bound: recovery.bound,
        })
    }

    /// Runs every trial (in parallel) and returns them in trial order.
    pub fn run(&self) -> Result<Vec<TrialResult>> {
        (0..self.cfg.trials)
            .into_par_iter()
            .map(|i| self.run_trial(i))
            .collect()
    }
}

/// Empirical frequency of one campaign event next to its theoretical
/// bound.
#[derive(Debug, Clone)]
pub struct CampaignSummary {
    pub event: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub frequency: f64,
    /// Theoretical tail (or budget) the frequency is compared against.
    pub bound: f64,
    /// True when the bound exceeds 1 (or the constant is non-positive)
    /// and the comparison carries no information.
    pub bound_vacuous: bool,
    /// One-sided binomial acceptance: `frequency ≤ bound + 3·√(bound(1-bound)/trials)`.
    pub margin_ok: bool,
    /// Count of hard (theorem-level) violations: the sampled-energy upper
    /// bound and the recovery residual bound. Must be zero.
    pub theorem_violations: usize,
}

/// One-sided binomial acceptance at three standard errors; vacuous bounds
/// (≥ 1) always pass.
pub fn binomial_margin_ok(frequency: f64, bound: f64, trials: usize) -> bool {
    if bound >= 1.0 {
        return true;
    }
    let margin = 3.0 * (bound * (1.0 - bound) / trials as f64).sqrt();
    frequency <= bound + margin
}

fn count_theorem_violations(rows: &[TrialResult]) -> usize {
    rows.iter()
        .filter(|t| {
            !t.upper_ok || t.residual > t.residual_bound + 1e-12 * t.residual_bound.max(1.0)
        })
        .count()
}

/// Frame-deviation campaign: frequency of the event
/// `λ_min(G - R^{-d}Δ) ≤ -ν/R^d` against [`bounds::frame_deviation_tail`].
pub fn run_frame_deviation_campaign(
    campaign: &Campaign,
) -> Result<(Vec<TrialResult>, CampaignSummary)> {
    let rows = campaign.run()?;
    let cfg = &campaign.cfg;
    let scale = cfg.bandwidth.powi(cfg.dim as i32);
    let level = -cfg.nu / scale;
    let failures = rows
        .iter()
        .filter(|t| t.deviation_min_eigenvalue <= level)
        .count();
    let frequency = failures as f64 / cfg.trials as f64;
    let bound = bounds::frame_deviation_tail(
        cfg.head_len as f64,
        cfg.num_samples,
        cfg.bandwidth,
        cfg.dim,
        cfg.nu,
    )?;
    let summary = CampaignSummary {
        event: "frame_deviation",
        trials: cfg.trials,
        failures,
        frequency,
        bound,
        bound_vacuous: bound >= 1.0,
        margin_ok: binomial_margin_ok(frequency, bound.min(1.0), cfg.trials),
        theorem_violations: count_theorem_violations(&rows),
    };
    Ok((rows, summary))
}

/// Summary of the sampling-inequality campaign.
#[derive(Debug, Clone)]
pub struct SamplingSummary {
    pub trials: usize,
    pub lower_failures: usize,
    pub upper_failures: usize,
    pub frequency: f64,
    pub epsilon: f64,
    pub margin_ok: bool,
    pub lower_constant: f64,
    pub constant_vacuous: bool,
    pub hypothesis_ok: bool,
    pub delta_requested: f64,
    pub delta_synth: f64,
    pub delta_adjusted: bool,
    pub success_probability: f64,
    pub theorem_violations: usize,
}

/// Sampling-inequality campaign: per trial, synthesize a function, draw
/// samples, and test `A·‖f‖₂² ≤ Σ|f(x_j)|² ≤ r·‖f‖₂²` with the class
/// constant `A` at the configured `(δ, ν)`. Runs in diagnostic mode
/// (everything still measured, vacuity flagged) when the hypotheses fail
/// or `A ≤ 0`.
pub fn run_sampling_inequality_campaign(
    campaign: &Campaign,
) -> Result<(Vec<TrialResult>, SamplingSummary)> {
    let rows = campaign.run()?;
    let cfg = &campaign.cfg;
    let lower_failures = rows.iter().filter(|t| !t.lower_ok).count();
    let upper_failures = rows.iter().filter(|t| !t.upper_ok).count();
    let frequency = lower_failures as f64 / cfg.trials as f64;
    let a = bounds::lower_frame_constant(
        cfg.num_samples,
        cfg.bandwidth,
        cfg.dim,
        cfg.delta_target,
        cfg.nu,
    );
    let hypothesis = bounds::hypothesis_check(cfg.delta_target, cfg.nu, cfg.dim);
    let success = bounds::sampling_success_probability(
        cfg.bandwidth,
        cfg.dim,
        cfg.num_samples,
        cfg.nu,
    )
    .unwrap_or(f64::NAN);
    let summary = SamplingSummary {
        trials: cfg.trials,
        lower_failures,
        upper_failures,
        frequency,
        epsilon: cfg.epsilon,
        margin_ok: binomial_margin_ok(frequency, cfg.epsilon, cfg.trials),
        lower_constant: a,
        constant_vacuous: a <= 0.0,
        hypothesis_ok: hypothesis.ok,
        delta_requested: cfg.delta_target,
        delta_synth: campaign.delta_synth,
        delta_adjusted: campaign.delta_adjusted,
        success_probability: success,
        theorem_violations: count_theorem_violations(&rows),
    };
    Ok((rows, summary))
}

/// Covering campaign: frequency of `N₀ > a·r` against
/// [`bounds::covering_tail`].
pub fn run_covering_campaign(
    campaign: &Campaign,
    a: f64,
) -> Result<(Vec<TrialResult>, CampaignSummary)> {
    let cfg = &campaign.cfg;
    let bound = bounds::covering_tail(cfg.bandwidth, cfg.dim, cfg.num_samples, a)?;
    let rows = campaign.run()?;
    let level = a * cfg.num_samples as f64;
    let failures = rows
        .iter()
        .filter(|t| t.covering_index as f64 > level)
        .count();
    let frequency = failures as f64 / cfg.trials as f64;
    let summary = CampaignSummary {
        event: "covering_index",
        trials: cfg.trials,
        failures,
        frequency,
        bound,
        bound_vacuous: bound >= 1.0,
        margin_ok: binomial_margin_ok(frequency, bound.min(1.0), cfg.trials),
        theorem_violations: count_theorem_violations(&rows),
    };
    Ok((rows, summary))
}

impl CampaignSummary {
    pub fn csv_line(&self) -> String {
        format!(
            "#summary,event={},trials={},failures={},frequency={},bound={},vacuous={},margin_ok={},theorem_violations={}",
            self.event,
            self.trials,
            self.failures,
            self.frequency,
            self.bound,
            self.bound_vacuous,
            self.margin_ok,
            self.theorem_violations
        )
    }
}

impl SamplingSummary {
    pub fn csv_line(&self) -> String {
        format!(
            "#summary,event=sampling_inequality,trials={},lower_failures={},upper_failures={},frequency={},epsilon={},margin_ok={},lower_constant={},constant_vacuous={},hypothesis_ok={},delta_requested={},delta_synth={},delta_adjusted={},success_probability={},theorem_violations={}",
            self.trials,
            self.lower_failures,
            self.upper_failures,
            self.frequency,
            self.epsilon,
            self.margin_ok,
            self.lower_constant,
            self.constant_vacuous,
            self.hypothesis_ok,
            self.delta_requested,
            self.delta_synth,
            self.delta_adjusted,
            self.success_probability,
            self.theorem_violations
        )
    }
}

const TRIAL_HEADER: &str = "trial,seed,deviation_lambda_min,n0,sampling_sum,a_lhs_ok,upper_ok,residual,residual_bound,R,d,N,M,r,nu,delta_target,epsilon,trials,base_seed,quad_order";

/// Writes one row per trial (with config echo columns) and the summary
/// lines. Identical inputs produce byte-identical output.
pub fn write_trials_csv<W: Write>(
    mut w: W,
    cfg: &ExperimentConfig,
    rows: &[TrialResult],
    summaries: &[String],
) -> std::io::Result<()> {
    writeln!(w, "{TRIAL_HEADER}")?;
    for (i, t) in rows.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            i,
            t.seed,
            t.deviation_min_eigenvalue,
            t.covering_index,
            t.sampling_sum,
            t.lower_ok,
            t.upper_ok,
            t.residual,
            t.residual_bound,
            cfg.bandwidth,
            cfg.dim,
            cfg.head_len,
            cfg.coeff_len,
            cfg.num_samples,
            cfg.nu,
            cfg.delta_target,
            cfg.epsilon,
            cfg.trials,
            cfg.base_seed,
            cfg.quad_order
        )?;
    }
    for line in summaries {
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn trials_csv_string(
    cfg: &ExperimentConfig,
    rows: &[TrialResult],
    summaries: &[String],
) -> String {
    let mut buf = Vec::new();
    write_trials_csv(&mut buf, cfg, rows, summaries).expect("string write cannot fail");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

/// Reads trial rows (and the echoed config) back from CSV; summary lines
/// are skipped.
pub fn read_trials_csv_str(text: &str, path: &str) -> Result<(ExperimentConfig, Vec<TrialResult>)> {
    let mut rows = Vec::new();
    let mut cfg: Option<ExperimentConfig> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed == TRIAL_HEADER {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 20 {
            return Err(Error::parse(
                path,
                lineno,
                format!("expected 20 columns, got {}", fields.len()),
            ));
        }
        let row = TrialResult {
            seed: textio::parse_u64(path, lineno, "seed", fields[1])?,
            deviation_min_eigenvalue: textio::parse_f64(
                path,
                lineno,
                "deviation_lambda_min",
                fields[2],
            )?,
            covering_index: textio::parse_usize(path, lineno, "n0", fields[3])?,
            sampling_sum: textio::parse_f64(path, lineno, "sampling_sum", fields[4])?,
            lower_ok: textio::parse_bool(path, lineno, "a_lhs_ok", fields[5])?,
            upper_ok: textio::parse_bool(path, lineno, "upper_ok", fields[6])?,
            residual: textio::parse_f64(path, lineno, "residual", fields[7])?,
            residual_bound: textio::parse_f64(path, lineno, "residual_bound", fields[8])?,
        };
        let echo = ExperimentConfig {
            bandwidth: textio::parse_f64(path, lineno, "R", fields[9])?,
            dim: textio::parse_usize(path, lineno, "d", fields[10])?,
            head_len: textio::parse_usize(path, lineno, "N", fields[11])?,
            coeff_len: textio::parse_usize(path, lineno, "M", fields[12])?,
            num_samples: textio::parse_usize(path, lineno, "r", fields[13])?,
            nu: textio::parse_f64(path, lineno, "nu", fields[14])?,
            delta_target: textio::parse_f64(path, lineno, "delta_target", fields[15])?,
            epsilon: textio::parse_f64(path, lineno, "epsilon", fields[16])?,
            trials: textio::parse_usize(path, lineno, "trials", fields[17])?,
            base_seed: textio::parse_u64(path, lineno, "base_seed", fields[18])?,
            quad_order: textio::parse_usize(path, lineno, "quad_order", fields[19])?,
        };
        match &cfg {
            None => cfg = Some(echo),
            Some(first) if *first != echo => {
                return Err(Error::parse(path, lineno, "inconsistent config echo".to_string()))
            }
            _ => {}
        }
        rows.push(row);
    }
    let cfg = cfg.ok_or_else(|| Error::parse(path, 0, "no trial rows found".to_string()))?;
    Ok((cfg, rows))
}
