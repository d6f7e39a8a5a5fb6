//! Reproducible Monte Carlo experiments and exact-value dumps.
//!
//! Trial `t` of an experiment draws from stream `t` of the configured seed,
//! trials run in parallel and are collected in index order, so a report's
//! records and aggregates depend only on the configuration. Wall-clock time
//! and thread count live in [`Metadata`], outside the deterministic part.

use std::collections::BTreeMap;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::appt::{appt_exact_small_p, appt_p2_closed_form, appt_verdict, Verdict};
use crate::asymptotics::{
    c_tau, c_tau_quadrature, lambda_c_limit_matrix, semicircle_quantile_c, threshold_p_fixed,
    threshold_scale_s0,
};
use crate::error::{Error, Result};
use crate::perm::{Enumerator, DEFAULT_P_MAX};
use crate::random_states::{centered_normalized, sample_induced_density, sample_induced_state, sample_wishart, RngStream};
use crate::summation::compensated_sum;

/// Largest allowed `d·s`, the number of Gaussian entries drawn per trial.
pub const MAX_ENTRIES: f64 = 1e8;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub wall_clock_seconds: f64,
    pub threads: usize,
}

impl Metadata {
    fn since(start: Instant) -> Self {
        Self {
            version: VERSION.to_string(),
            wall_clock_seconds: start.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport<C, R, A> {
    pub command: String,
    pub config: C,
    pub records: Vec<R>,
    pub aggregates: A,
    pub metadata: Metadata,
}

impl<C: Serialize, R: Serialize, A: Serialize> ExperimentReport<C, R, A> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON of everything except [`Metadata`]; byte-identical across reruns.
    pub fn deterministic_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a, C, R, A> {
            command: &'a str,
            config: &'a C,
            records: &'a [R],
            aggregates: &'a A,
        }
        serde_json::to_string(&Body {
            command: &self.command,
            config: &self.config,
            records: &self.records,
            aggregates: &self.aggregates,
        })
        .expect("reports serialize")
    }
}

/// One row per trial; the column set is fixed per command.
pub trait CsvTable {
    fn csv_header(&self) -> Vec<String>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trial count must be ≥ 1".into()));
    }
    Ok(())
}

fn check_size(d: usize, s: usize) -> Result<()> {
    if d == 0 || s == 0 {
        return Err(Error::InvalidArgument(format!("dimensions must be ≥ 1, got d = {d}, s = {s}")));
    }
    if d as f64 * s as f64 > MAX_ENTRIES {
        return Err(Error::InvalidArgument(format!(
            "d·s = {} exceeds the cap {MAX_ENTRIES:e}",
            d as f64 * s as f64
        )));
    }
    Ok(())
}

fn run_trials<T, F>(trials: usize, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|t| f(&mut RngStream::new(seed, t).rng()))
        .collect()
}

/// Sample mean and standard error (`None` for a single value).
pub fn mean_and_standard_error(xs: &[f64]) -> (f64, Option<f64>) {
    let n = xs.len() as f64;
    let mean = compensated_sum(xs.iter().copied()) / n;
    if xs.len() < 2 {
        return (mean, None);
    }
    let var = compensated_sum(xs.iter().map(|x| (x - mean).powi(2))) / (n - 1.0);
    (mean, Some((var / n).sqrt()))
}

fn fraction(count: usize, total: usize) -> f64 {
    count as f64 / total as f64
}

// ---------------------------------------------------------------- moments

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsConfig {
    pub d: usize,
    pub s: usize,
    pub p: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub p_max: usize,
}

impl MomentsConfig {
    pub fn new(d: usize, s: usize, p: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            d,
            s,
            p,
            trials,
            seed,
            p_max: DEFAULT_P_MAX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_trials(self.trials)?;
        check_size(self.d, self.s)?;
        if self.p.is_empty() {
            return Err(Error::InvalidArgument("at least one moment order p is required".into()));
        }
        if let Some(&p) = self.p.iter().find(|&&p| p == 0 || p > self.p_max) {
            return Err(Error::InvalidArgument(format!(
                "moment order {p} outside 1..={}",
                self.p_max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTrial {
    pub trial: u64,
    /// `(1/d) tr Z_d^p` for each configured `p`, in order.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentAggregate {
    pub p: usize,
    pub exact: f64,
    pub mean: f64,
    pub standard_error: Option<f64>,
    pub z_score: Option<f64>,
}

pub type MomentsReport = ExperimentReport<MomentsConfig, MomentTrial, Vec<MomentAggregate>>;

pub fn aggregate_moments(config: &MomentsConfig, records: &[MomentTrial]) -> Result<Vec<MomentAggregate>> {
    let enumerator = Enumerator::new(config.p_max)?;
    config
        .p
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let exact = enumerator
                .centered_wishart_moment(p, config.d as f64, config.s as f64)?
                .value;
            let xs: Vec<f64> = records.iter().map(|r| r.values[k]).collect();
            let (mean, standard_error) = mean_and_standard_error(&xs);
            Ok(MomentAggregate {
                p,
                exact,
                mean,
                standard_error,
                z_score: standard_error.map(|se| (mean - exact) / se),
            })
        })
        .collect()
}

/// Empirical `(1/d) tr Z_d^p` against the exact genus expansion.
pub fn cmd_moments(config: &MomentsConfig) -> Result<MomentsReport> {
    config.validate()?;
    let start = Instant::now();
    let (d, s) = (config.d, config.s);
    let values = run_trials(config.trials, config.seed, |rng| {
        let z = centered_normalized(&sample_wishart(d, s, rng)?, d, s as f64)?;
        let spectrum = z.eigenvalues()?;
        Ok(config
            .p
            .iter()
            .map(|&p| spectrum.power_sum(p as i32) / d as f64)
            .collect::<Vec<_>>())
    })?;
    let records: Vec<MomentTrial> = values
        .into_iter()
        .enumerate()
        .map(|(t, values)| MomentTrial {
            trial: t as u64,
            values,
        })
        .collect();
    let aggregates = aggregate_moments(config, &records)?;
    Ok(ExperimentReport {
        command: "moments".into(),
        config: config.clone(),
        records,
        aggregates,
        metadata: Metadata::since(start),
    })
}

impl CsvTable for MomentsReport {
    fn csv_header(&self) -> Vec<String> {
        std::iter::once("trial".to_string())
            .chain(self.config.p.iter().map(|p| format!("m{p}")))
            .collect()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.records
            .iter()
            .map(|r| {
                std::iter::once(r.trial.to_string())
                    .chain(r.values.iter().map(f64::to_string))
                    .collect()
            })
            .collect()
    }
}

// ---------------------------------------------------------------- extremal

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalConfig {
    pub d: usize,
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
    /// Half-width of the windows `[2 − eps, 2 + eps]` and `[−2 − eps, −2 + eps]`.
    pub eps: f64,
}

impl ExtremalConfig {
    pub fn validate(&self) -> Result<()> {
        check_trials(self.trials)?;
        check_size(self.d, self.s)?;
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {}", self.eps)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalTrial {
    pub trial: u64,
    pub lambda_max: f64,
    pub lambda_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalAggregate {
    pub max_window: (f64, f64),
    pub min_window: (f64, f64),
    pub fraction_max_in_window: f64,
    pub fraction_min_in_window: f64,
    pub fraction_both_in_window: f64,
    pub mean_lambda_max: f64,
    pub mean_lambda_min: f64,
}

pub type ExtremalReport = ExperimentReport<ExtremalConfig, ExtremalTrial, ExtremalAggregate>;

pub fn aggregate_extremal(config: &ExtremalConfig, records: &[ExtremalTrial]) -> ExtremalAggregate {
    let max_window = (2.0 - config.eps, 2.0 + config.eps);
    let min_window = (-2.0 - config.eps, -2.0 + config.eps);
    let inside = |x: f64, w: (f64, f64)| w.0 <= x && x <= w.1;
    let n = records.len();
    let max_ok = records.iter().filter(|r| inside(r.lambda_max, max_window)).count();
    let min_ok = records.iter().filter(|r| inside(r.lambda_min, min_window)).count();
    let both = records
        .iter()
        .filter(|r| inside(r.lambda_max, max_window) && inside(r.lambda_min, min_window))
        .count();
    ExtremalAggregate {
        max_window,
        min_window,
        fraction_max_in_window: fraction(max_ok, n),
        fraction_min_in_window: fraction(min_ok, n),
        fraction_both_in_window: fraction(both, n),
        mean_lambda_max: compensated_sum(records.iter().map(|r| r.lambda_max)) / n as f64,
        mean_lambda_min: compensated_sum(records.iter().map(|r| r.lambda_min)) / n as f64,
    }
}

/// Largest and smallest eigenvalue of `Z_d` per trial.
pub fn cmd_extremal(config: &ExtremalConfig) -> Result<ExtremalReport> {
    config.validate()?;
    let start = Instant::now();
    let (d, s) = (config.d, config.s);
    let extremes = run_trials(config.trials, config.seed, |rng| {
        let z = centered_normalized(&sample_wishart(d, s, rng)?, d, s as f64)?;
        let spectrum = z.eigenvalues()?;
        Ok((spectrum.largest(), spectrum.smallest()))
    })?;
    let records: Vec<ExtremalTrial> = extremes
        .into_iter()
        .enumerate()
        .map(|(t, (lambda_max, lambda_min))| ExtremalTrial {
            trial: t as u64,
            lambda_max,
            lambda_min,
        })
        .collect();
    let aggregates = aggregate_extremal(config, &records);
    Ok(ExperimentReport {
        command: "extremal".into(),
        config: config.clone(),
        records,
        aggregates,
        metadata: Metadata::since(start),
    })
}

impl CsvTable for ExtremalReport {
    fn csv_header(&self) -> Vec<String> {
        ["trial", "lambda_max", "lambda_min"].map(String::from).to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.records
            .iter()
            .map(|r| vec![r.trial.to_string(), r.lambda_max.to_string(), r.lambda_min.to_string()])
            .collect()
    }
}

// ---------------------------------------------------------------- containment

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentConfig {
    pub d: usize,
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
    pub eps: f64,
}

impl ContainmentConfig {
    pub fn validate(&self) -> Result<()> {
        check_trials(self.trials)?;
        check_size(self.d, self.s)?;
        if !(self.eps > -1.0 && self.eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must exceed −1, got {}", self.eps)));
        }
        Ok(())
    }

    /// `[1/d − 2(1+ε)/√(ds), 1/d + 2(1+ε)/√(ds)]`.
    pub fn interval(&self) -> (f64, f64) {
        let (d, s) = (self.d as f64, self.s as f64);
        let half = 2.0 * (1.0 + self.eps) / (d * s).sqrt();
        (1.0 / d - half, 1.0 / d + half)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentTrial {
    pub trial: u64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentAggregate {
    pub interval: (f64, f64),
    pub contained: usize,
    pub fraction_contained: f64,
}

pub type ContainmentReport = ExperimentReport<ContainmentConfig, ContainmentTrial, ContainmentAggregate>;

pub fn aggregate_containment(config: &ContainmentConfig, records: &[ContainmentTrial]) -> ContainmentAggregate {
    let contained = records.iter().filter(|r| r.contained).count();
    ContainmentAggregate {
        interval: config.interval(),
        contained,
        fraction_contained: fraction(contained, records.len()),
    }
}

/// Whether the whole spectrum of an induced state lies in the interval
/// around `1/d`.
pub fn cmd_spectrum_containment(config: &ContainmentConfig) -> Result<ContainmentReport> {
    config.validate()?;
    let start = Instant::now();
    let (lo, hi) = config.interval();
    let (d, s) = (config.d, config.s);
    let extremes = run_trials(config.trials, config.seed, |rng| {
        let spectrum = sample_induced_density(d, s, rng)?.spectrum()?;
        Ok((spectrum.largest(), spectrum.smallest()))
    })?;
    let records: Vec<ContainmentTrial> = extremes
        .into_iter()
        .enumerate()
        .map(|(t, (lambda_max, lambda_min))| ContainmentTrial {
            trial: t as u64,
            lambda_max,
            lambda_min,
            contained: lo <= lambda_min && lambda_max <= hi,
        })
        .collect();
    let aggregates = aggregate_containment(config, &records);
    Ok(ExperimentReport {
        command: "containment".into(),
        config: config.clone(),
        records,
        aggregates,
        metadata: Metadata::since(start),
    })
}

impl CsvTable for ContainmentReport {
    fn csv_header(&self) -> Vec<String> {
        ["trial", "lambda_max", "lambda_min", "contained"].map(String::from).to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.records
            .iter()
            .map(|r| {
                vec![
                    r.trial.to_string(),
                    r.lambda_max.to_string(),
                    r.lambda_min.to_string(),
                    r.contained.to_string(),
                ]
            })
            .collect()
    }
}

// ---------------------------------------------------------------- appt scan

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApptScanConfig {
    pub d1: usize,
    pub d2: usize,
    pub s_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Extra points evaluated to refine the frequency-½ crossing.
    pub bisection_steps: usize,
    /// PSD tolerance for the exhaustive Θ test.
    pub tol: f64,
}

impl ApptScanConfig {
    pub fn new(d1: usize, d2: usize, s_grid: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            d1,
            d2,
            s_grid,
            trials,
            seed,
            bisection_steps: 6,
            tol: 1e-12,
        }
    }

    pub fn d(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn p(&self) -> usize {
        self.d1.min(self.d2)
    }

    pub fn validate(&self) -> Result<()> {
        check_trials(self.trials)?;
        if self.p() < 2 {
            return Err(Error::InvalidArgument(format!(
                "both factors must be ≥ 2, got ({}, {})",
                self.d1, self.d2
            )));
        }
        if self.s_grid.is_empty() {
            return Err(Error::InvalidArgument("the s grid is empty".into()));
        }
        for &s in &self.s_grid {
            check_size(self.d(), s)?;
        }
        if !(self.tol >= 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be ≥ 0, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanPhase {
    Grid,
    Bisection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApptTrial {
    pub s: usize,
    pub trial: u64,
    pub phase: ScanPhase,
    pub verdict: Verdict,
    pub test: String,
    pub margin: f64,
    /// Exhaustive all-pairs answer, `p = 2` only.
    pub literal: Option<bool>,
    /// Closed-form answer, `p = 2` only.
    pub closed_form: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApptScanPoint {
    pub s: usize,
    pub ratio: f64,
    pub phase: ScanPhase,
    pub trials: usize,
    pub appt: usize,
    pub not_appt: usize,
    pub unknown: usize,
    pub appt_frequency: f64,
    pub unknown_fraction: f64,
    pub disagreements: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub s_below: usize,
    pub s_above: usize,
    /// Linear interpolation of the APPT frequency to ½, in units of `s`.
    pub s_estimate: f64,
    pub ratio_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApptScanAggregate {
    pub p: usize,
    pub d: usize,
    /// `(p + √(p² − 1))²`.
    pub threshold_ratio: f64,
    /// Points sorted by `s`.
    pub points: Vec<ApptScanPoint>,
    pub crossing: Option<Crossing>,
    /// Fraction of `p = 2` trials where the exhaustive and closed-form tests differ.
    pub disagreement_rate: Option<f64>,
}

pub type ApptScanReport = ExperimentReport<ApptScanConfig, ApptTrial, ApptScanAggregate>;

fn scan_points(config: &ApptScanConfig, records: &[ApptTrial]) -> Vec<ApptScanPoint> {
    let mut by_s: BTreeMap<usize, Vec<&ApptTrial>> = BTreeMap::new();
    for r in records {
        by_s.entry(r.s).or_default().push(r);
    }
    by_s.into_iter()
        .map(|(s, rs)| {
            let count = |v: Verdict| rs.iter().filter(|r| r.verdict == v).count();
            let n = rs.len();
            let disagreements = if config.p() == 2 {
                Some(rs.iter().filter(|r| r.literal != r.closed_form).count())
            } else {
                None
            };
            ApptScanPoint {
                s,
                ratio: s as f64 / config.d() as f64,
                phase: rs[0].phase,
                trials: n,
                appt: count(Verdict::AbsolutelyPPT),
                not_appt: count(Verdict::NotAbsolutelyPPT),
                unknown: count(Verdict::Unknown),
                appt_frequency: fraction(count(Verdict::AbsolutelyPPT), n),
                unknown_fraction: fraction(count(Verdict::Unknown), n),
                disagreements,
            }
        })
        .collect()
}

/// First adjacent pair (by `s`) whose APPT frequency goes from below ½ to at
/// least ½.
fn bracket(points: &[ApptScanPoint]) -> Option<(&ApptScanPoint, &ApptScanPoint)> {
    points
        .windows(2)
        .find(|w| w[0].appt_frequency < 0.5 && w[1].appt_frequency >= 0.5)
        .map(|w| (&w[0], &w[1]))
}

pub fn aggregate_appt_scan(config: &ApptScanConfig, records: &[ApptTrial]) -> Result<ApptScanAggregate> {
    let points = scan_points(config, records);
    let crossing = bracket(&points).map(|(lo, hi)| {
        let t = (0.5 - lo.appt_frequency) / (hi.appt_frequency - lo.appt_frequency);
        let s_estimate = lo.s as f64 + t * (hi.s - lo.s) as f64;
        Crossing {
            s_below: lo.s,
            s_above: hi.s,
            s_estimate,
            ratio_estimate: s_estimate / config.d() as f64,
        }
    });
    let disagreement_rate = (config.p() == 2).then(|| {
        let bad = records.iter().filter(|r| r.literal != r.closed_form).count();
        fraction(bad, records.len())
    });
    Ok(ApptScanAggregate {
        p: config.p(),
        d: config.d(),
        threshold_ratio: threshold_p_fixed(config.p())?,
        points,
        crossing,
        disagreement_rate,
    })
}

fn appt_trials(config: &ApptScanConfig, s: usize, phase: ScanPhase) -> Result<Vec<ApptTrial>> {
    let (d1, d2, p) = (config.d1, config.d2, config.p());
    let outcomes = run_trials(config.trials, config.seed, |rng| {
        let spectrum = sample_induced_state(d1, d2, s, rng)?.spectrum()?;
        let verdict = appt_verdict(&spectrum, d1, d2, config.tol)?;
        let (literal, closed_form) = if p == 2 {
            (
                Some(appt_exact_small_p(&spectrum, 2, config.tol)?),
                Some(appt_p2_closed_form(&spectrum, config.tol)?),
            )
        } else {
            (None, None)
        };
        Ok((verdict, literal, closed_form))
    })?;
    Ok(outcomes
        .into_iter()
        .enumerate()
        .map(|(t, (verdict, literal, closed_form))| {
            let summary = verdict.summary();
            ApptTrial {
                s,
                trial: t as u64,
                phase,
                verdict: verdict.verdict,
                test: summary.test,
                margin: summary.margin,
                literal,
                closed_form,
            }
        })
        .collect())
}

/// APPT verdict frequencies of induced states over a grid of `s`, with the
/// frequency-½ crossing refined by bisection.
pub fn cmd_appt_scan(config: &ApptScanConfig) -> Result<ApptScanReport> {
    config.validate()?;
    let start = Instant::now();
    let mut grid = config.s_grid.clone();
    grid.sort_unstable();
    grid.dedup();
    let mut records = Vec::new();
    for &s in &grid {
        records.extend(appt_trials(config, s, ScanPhase::Grid)?);
    }
    for _ in 0..config.bisection_steps {
        let points = scan_points(config, &records);
        let Some((lo, hi)) = bracket(&points) else { break };
        let mid = lo.s + (hi.s - lo.s) / 2;
        if mid == lo.s {
            break;
        }
        records.extend(appt_trials(config, mid, ScanPhase::Bisection)?);
    }
    let aggregates = aggregate_appt_scan(config, &records)?;
    Ok(ExperimentReport {
        command: "appt-scan".into(),
        config: config.clone(),
        records,
        aggregates,
        metadata: Metadata::since(start),
    })
}

impl CsvTable for ApptScanReport {
    fn csv_header(&self) -> Vec<String> {
        ["s", "trial", "phase", "verdict", "test", "margin", "literal", "closed_form"]
            .map(String::from)
            .to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
        self.records
            .iter()
            .map(|r| {
                vec![
                    r.s.to_string(),
                    r.trial.to_string(),
                    match r.phase {
                        ScanPhase::Grid => "grid",
                        ScanPhase::Bisection => "bisection",
                    }
                    .to_string(),
                    format!("{:?}", r.verdict),
                    r.test.clone(),
                    r.margin.to_string(),
                    opt(r.literal),
                    opt(r.closed_form),
                ]
            })
            .collect()
    }
}

// ---------------------------------------------------------------- constants

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsConfig {
    pub tau_grid: Vec<f64>,
    pub p_values: Vec<usize>,
    pub shapes: Vec<(usize, usize)>,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        Self {
            tau_grid: vec![1e-4, 1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0],
            p_values: (2..=8).collect(),
            shapes: vec![(2, 2), (2, 128), (3, 27), (4, 4)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstantRow {
    CTau {
        tau: f64,
        quantile: f64,
        c_tau: f64,
        c_tau_quadrature: f64,
    },
    Threshold {
        p: usize,
        threshold: f64,
        /// Smallest eigenvalue of `Λ_c` at `c` = threshold; zero up to rounding.
        limit_min_eigenvalue: f64,
    },
    Scale {
        d1: usize,
        d2: usize,
        s0: f64,
        tau: f64,
        lower: f64,
        upper: f64,
    },
}

pub type ConstantsReport = ExperimentReport<ConstantsConfig, ConstantRow, ()>;

/// `C_τ` table, fixed-`p` thresholds and `s₀` brackets.
pub fn cmd_constants(config: &ConstantsConfig) -> Result<ConstantsReport> {
    let start = Instant::now();
    let mut records = Vec::new();
    for &tau in &config.tau_grid {
        records.push(ConstantRow::CTau {
            tau,
            quantile: semicircle_quantile_c(tau)?,
            c_tau: c_tau(tau)?,
            c_tau_quadrature: c_tau_quadrature(tau)?,
        });
    }
    for &p in &config.p_values {
        let threshold = threshold_p_fixed(p)?;
        records.push(ConstantRow::Threshold {
            p,
            threshold,
            limit_min_eigenvalue: lambda_c_limit_matrix(threshold, p)?.smallest_eigenvalue(),
        });
    }
    for &(d1, d2) in &config.shapes {
        let sc = threshold_scale_s0(d1, d2)?;
        records.push(ConstantRow::Scale {
            d1,
            d2,
            s0: sc.s0,
            tau: sc.tau,
            lower: sc.lower_constant,
            upper: sc.upper_constant,
        });
    }
    Ok(ExperimentReport {
        command: "constants".into(),
        config: config.clone(),
        records,
        aggregates: (),
        metadata: Metadata::since(start),
    })
}

impl CsvTable for ConstantsReport {
    fn csv_header(&self) -> Vec<String> {
        ["kind", "key", "value", "aux1", "aux2"].map(String::from).to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.records
            .iter()
            .map(|r| match *r {
                ConstantRow::CTau {
                    tau,
                    quantile,
                    c_tau,
                    c_tau_quadrature,
                } => vec![
                    "c_tau".into(),
                    tau.to_string(),
                    c_tau.to_string(),
                    quantile.to_string(),
                    c_tau_quadrature.to_string(),
                ],
                ConstantRow::Threshold {
                    p,
                    threshold,
                    limit_min_eigenvalue,
                } => vec![
                    "threshold".into(),
                    p.to_string(),
                    threshold.to_string(),
                    limit_min_eigenvalue.to_string(),
                    String::new(),
                ],
                ConstantRow::Scale {
                    d1,
                    d2,
                    s0,
                    lower,
                    upper,
                    ..
                } => vec![
                    "s0".into(),
                    format!("{d1}x{d2}"),
                    s0.to_string(),
                    lower.to_string(),
                    upper.to_string(),
                ],
            })
            .collect()
    }
}
