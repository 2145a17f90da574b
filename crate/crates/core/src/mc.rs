//! Replicated simulation of any statistic in the scan engine, comparison of
//! the resulting empirical laws against the closed-form limits, and
//! append-only persistence of experiment results.
//!
//! Reproducibility contract: replicate `r` of an experiment with master
//! seed `s` always draws from the stream seeded by `derive_seed(s, r)`,
//! and results are written at replicate-indexed positions, so the outcome
//! is bit-identical at every parallelism level.

use std::fs;
use std::io::Write as IoWrite;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::limits::{limit_cdf, p_value, threshold, Law};
use crate::sample::{derive_seed, sample_uniform_order_stats, SortedSample};
use crate::scan::{
    eicker_statistics, ks_statistic, min_spacing, scan_fast, ScanSpec, Side, Variant,
};
use crate::{Error, Result};

/// A statistic that can be replicated: any scan, or one of the classical
/// single-pass statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Statistic {
    Scan { spec: ScanSpec },
    KolmogorovSmirnov,
    MinSpacing,
    EickerSup,
    EickerSupStudentized,
}

fn side_word(side: Side) -> &'static str {
    match side {
        Side::Plus => "plus",
        Side::Minus => "minus",
        Side::TwoSided => "two_sided",
    }
}

fn variant_word(variant: Variant) -> &'static str {
    match variant {
        Variant::Studentized => "studentized",
        Variant::Standardized => "standardized",
    }
}

impl Statistic {
    /// Human-readable descriptor used in reports and error messages.
    pub fn name(&self) -> String {
        match self {
            Statistic::Scan { spec } => format!(
                "{} {} scan",
                variant_word(spec.variant),
                side_word(spec.side)
            ),
            Statistic::KolmogorovSmirnov => "kolmogorov_smirnov".into(),
            Statistic::MinSpacing => "min_spacing".into(),
            Statistic::EickerSup => "eicker_sup".into(),
            Statistic::EickerSupStudentized => "eicker_sup_studentized".into(),
        }
    }

    /// Evaluates the statistic on one sample.
    pub fn evaluate(&self, sample: &SortedSample<f64>) -> Result<f64> {
        match self {
            Statistic::Scan { spec } => Ok(scan_fast(sample, spec)?.value),
            Statistic::KolmogorovSmirnov => Ok(ks_statistic(sample)),
            Statistic::MinSpacing => Ok(min_spacing(sample)),
            Statistic::EickerSup => eicker_statistics(sample)?
                .v_plus
                .map(|e| e.value)
                .ok_or(Error::AllDegenerate),
            Statistic::EickerSupStudentized => eicker_statistics(sample)?
                .v_plus_studentized
                .map(|e| e.value)
                .ok_or(Error::AllDegenerate),
        }
    }

    /// Whether the given limit law calibrates this statistic.
    pub fn compatible_with(&self, law: Law<f64>) -> bool {
        match self {
            Statistic::Scan { spec } => match law {
                Law::StudentizedPlus => {
                    spec.variant == Variant::Studentized && spec.side == Side::Plus
                }
                Law::StudentizedMinus => {
                    spec.variant == Variant::Studentized && spec.side == Side::Minus
                }
                Law::StandardizedFull | Law::StandardizedWindowed { .. } => {
                    spec.variant == Variant::Standardized && spec.side == Side::Plus
                }
            },
            _ => false,
        }
    }
}

/// Full description of one experiment; equality of configs is what the
/// persistence layer uses to detect re-runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub statistic: Statistic,
    /// Law to compare against, when one applies.
    pub law: Option<Law<f64>>,
    /// Worker count; 0 picks the runtime default.
    pub parallelism: usize,
}

/// The empirical distribution of a replicated statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalLaw {
    /// Replicate values sorted ascending (total order).
    pub values: Vec<f64>,
    /// The same values in replicate order, for raw export.
    pub replicate_values: Vec<f64>,
    pub n: usize,
    pub statistic: Statistic,
    pub seed: u64,
}

impl EmpiricalLaw {
    pub fn replicates(&self) -> usize {
        self.values.len()
    }

    /// Empirical distribution function: the fraction of replicates `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let below = self.values.partition_point(|&v| v <= x);
        below as f64 / self.values.len() as f64
    }

    /// Order-statistic quantile: the `ceil(p * N)`-th smallest value.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "quantile level must lie in [0, 1], got {p}"
            )));
        }
        let len = self.values.len();
        let idx = ((p * len as f64).ceil() as usize).clamp(1, len) - 1;
        Ok(self.values[idx])
    }

    /// SHA-256 digest of the sorted values (little-endian bit patterns),
    /// identifying the exact numerical outcome of the experiment.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for v in &self.values {
            hasher.update(v.to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Location / spread summary for the persisted record.
    pub fn summary(&self) -> Summary {
        let len = self.values.len();
        let mean = self.values.iter().sum::<f64>() / len as f64;
        let sd = if len > 1 {
            (self
                .values
                .iter()
                .map(|v| (v - mean) * (v - mean))
                .sum::<f64>()
                / (len - 1) as f64)
                .sqrt()
        } else {
            0.0
        };
        Summary {
            replicates: len,
            mean,
            sd,
            min: self.values[0],
            median: self.quantile(0.5).expect("0.5 is a valid level"),
            max: self.values[len - 1],
        }
    }
}

/// Summary statistics of an empirical law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub replicates: usize,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

/// Runs the replicated experiment described by `config`.
///
/// Deterministic given the seed and independent of `parallelism`. The first
/// failing replicate aborts the run, wrapped with its index and derived
/// seed so it can be reproduced in isolation.
pub fn run_experiment(config: &ExperimentConfig) -> Result<EmpiricalLaw> {
    if config.replicates < 1 {
        return Err(Error::Domain("replicates must be at least 1".into()));
    }
    if config.n < 1 {
        return Err(Error::Domain("sample size n must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::Io(format!("could not build worker pool: {e}")))?;
    let replicate_values: Vec<f64> = pool.install(|| {
        (0..config.replicates)
            .into_par_iter()
            .map(|r| {
                let derived = derive_seed(config.seed, r as u64);
                sample_uniform_order_stats(config.n, derived)
                    .and_then(|sample| config.statistic.evaluate(&sample))
                    .map_err(|e| Error::ReplicateFailed {
                        replicate: r,
                        derived_seed: derived,
                        source: Box::new(e),
                    })
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    let mut values = replicate_values.clone();
    values.sort_by(f64::total_cmp);
    Ok(EmpiricalLaw {
        values,
        replicate_values,
        n: config.n,
        statistic: config.statistic.clone(),
        seed: config.seed,
    })
}

/// Agreement between an empirical law and the limit at one grid coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseError {
    pub tau: f64,
    /// The statistic threshold the law associates with `tau`.
    pub threshold: f64,
    pub empirical: f64,
    pub limit: f64,
    pub abs_error: f64,
}

/// Goodness-of-fit of an empirical law against a limit law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    /// Supremum distance between the empirical CDF and the limit CDF,
    /// taken over the replicate values; always in `[0, 1]`.
    pub ks_distance: f64,
    pub pointwise: Vec<PointwiseError>,
    /// Set only by side-coincidence experiments.
    pub coincidence_rate: Option<f64>,
}

/// Compares an empirical law against a limit law: supremum distance over
/// the replicate values plus pointwise errors on the standard `tau` grid
/// (`{-1, 0, 1, 2}`, or `{0.5, 1, 2}` for the full-range standardized law).
pub fn compare_to_limit(emp: &EmpiricalLaw, law: Law<f64>) -> Result<GofReport> {
    if !emp.statistic.compatible_with(law) {
        return Err(Error::IncompatibleLaw {
            law: law.name().into(),
            statistic: emp.statistic.name(),
        });
    }
    let len = emp.values.len() as f64;
    let mut ks_distance = 0.0f64;
    for (idx, &value) in emp.values.iter().enumerate() {
        // Model CDF in statistic coordinates; 1 - p keeps the value exact
        // at both tails thanks to the expm1-based p-value.
        let model = 1.0 - p_value(law, emp.n, value)?;
        let above = (idx + 1) as f64 / len - model;
        let below = model - idx as f64 / len;
        ks_distance = ks_distance.max(above).max(below);
    }
    let grid: &[f64] = match law {
        Law::StandardizedFull => &[0.5, 1.0, 2.0],
        _ => &[-1.0, 0.0, 1.0, 2.0],
    };
    let mut pointwise = Vec::with_capacity(grid.len());
    for &tau in grid {
        let m = threshold(law, emp.n, tau)?;
        let empirical = emp.cdf(m);
        let limit = limit_cdf(law, tau)?;
        pointwise.push(PointwiseError {
            tau,
            threshold: m,
            empirical,
            limit,
            abs_error: (empirical - limit).abs(),
        });
    }
    Ok(GofReport {
        ks_distance: ks_distance.clamp(0.0, 1.0),
        pointwise,
        coincidence_rate: None,
    })
}

/// Estimates how often the two-sided scans are attained on their
/// theoretically dominant sides: the studentized scan on the minus side and
/// the standardized scan on the plus side. Returns
/// `(rate_minus, rate_tilde_plus)` over the given replicates.
pub fn coincidence_rates(n: usize, replicates: usize, seed: u64) -> Result<(f64, f64)> {
    if replicates < 1 {
        return Err(Error::Domain("replicates must be at least 1".into()));
    }
    let studentized = ScanSpec::new(Variant::Studentized, Side::TwoSided);
    let standardized = ScanSpec::new(Variant::Standardized, Side::TwoSided);
    let flags: Vec<(bool, bool)> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let derived = derive_seed(seed, r as u64);
            let run = || -> Result<(bool, bool)> {
                let sample = sample_uniform_order_stats(n, derived)?;
                let stud = scan_fast(&sample, &studentized)?;
                let stan = scan_fast(&sample, &standardized)?;
                Ok((stud.side == Side::Minus, stan.side == Side::Plus))
            };
            run().map_err(|e| Error::ReplicateFailed {
                replicate: r,
                derived_seed: derived,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minus = flags.iter().filter(|f| f.0).count() as f64 / replicates as f64;
    let tilde_plus = flags.iter().filter(|f| f.1).count() as f64 / replicates as f64;
    Ok((minus, tilde_plus))
}

/// One persisted experiment: its config, the digest of the sorted replicate
/// values, and a numerical summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: ExperimentConfig,
    pub digest: String,
    pub summary: Summary,
    pub quantiles: Vec<QuantilePoint>,
}

/// A (probability level, empirical quantile) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantilePoint {
    pub p: f64,
    pub value: f64,
}

const QUANTILE_GRID: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

fn build_record(config: &ExperimentConfig, emp: &EmpiricalLaw) -> Result<ExperimentRecord> {
    let mut quantiles = Vec::with_capacity(QUANTILE_GRID.len());
    for p in QUANTILE_GRID {
        quantiles.push(QuantilePoint {
            p,
            value: emp.quantile(p)?,
        });
    }
    Ok(ExperimentRecord {
        config: config.clone(),
        digest: emp.digest(),
        summary: emp.summary(),
        quantiles,
    })
}

/// Reads every record from a JSON-lines experiment store.
pub fn read_records(path: &Path) -> Result<Vec<ExperimentRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("could not read {}: {e}", path.display())))?;
    let mut records = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: ExperimentRecord = serde_json::from_str(line).map_err(|e| {
            Error::Io(format!(
                "malformed experiment record at {}:{}: {e}",
                path.display(),
                lineno + 1
            ))
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Appends the experiment to a JSON-lines store, unless the identical
/// config is already present — in that case nothing is written and the
/// stored digest must match the recomputed one. Returns whether a new
/// record was appended.
pub fn persist_record(
    path: &Path,
    config: &ExperimentConfig,
    emp: &EmpiricalLaw,
) -> Result<bool> {
    let record = build_record(config, emp)?;
    for existing in read_records(path)? {
        if existing.config == *config {
            if existing.digest == record.digest {
                return Ok(false);
            }
            return Err(Error::DigestMismatch {
                stored: existing.digest,
                recomputed: record.digest,
            });
        }
    }
    let line = serde_json::to_string(&record)
        .map_err(|e| Error::Io(format!("could not serialize record: {e}")))?;
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::Io(format!("could not open {}: {e}", path.display())))?;
    writeln!(file, "{line}")
        .map_err(|e| Error::Io(format!("could not append to {}: {e}", path.display())))?;
    Ok(true)
}

/// Writes the raw replicate values as CSV, one replicate per row.
pub fn write_raw_csv(path: &Path, emp: &EmpiricalLaw) -> Result<()> {
    let mut out = String::from("replicate,value\n");
    for (r, v) in emp.replicate_values.iter().enumerate() {
        out.push_str(&format!("{r},{v}\n"));
    }
    fs::write(path, out)
        .map_err(|e| Error::Io(format!("could not write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::critical_value;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn config(n: usize, replicates: usize, seed: u64, statistic: Statistic) -> ExperimentConfig {
        ExperimentConfig {
            n,
            replicates,
            seed,
            statistic,
            law: None,
            parallelism: 1,
        }
    }

    #[test]
    fn single_replicate_equals_direct_evaluation() {
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus);
        let cfg = config(40, 1, 99, Statistic::Scan { spec });
        let emp = run_experiment(&cfg).unwrap();
        let sample = sample_uniform_order_stats(40, derive_seed(99, 0)).unwrap();
        let direct = scan_fast(&sample, &spec).unwrap().value;
        assert_eq!(emp.values, vec![direct]);
        assert_eq!(emp.replicate_values, vec![direct]);
    }

    #[test]
    fn parallelism_does_not_change_the_outcome() {
        let base = config(60, 48, 12345, Statistic::MinSpacing);
        let runs: Vec<EmpiricalLaw> = [0usize, 1, 8]
            .iter()
            .map(|&p| {
                let mut cfg = base.clone();
                cfg.parallelism = p;
                run_experiment(&cfg).unwrap()
            })
            .collect();
        assert_eq!(runs[0], runs[1]);
        assert_eq!(runs[1], runs[2]);
    }

    #[test]
    fn min_spacing_replication_matches_exact_law() {
        let n = 1000usize;
        let cfg = config(n, 2000, 2024, Statistic::MinSpacing);
        let emp = run_experiment(&cfg).unwrap();
        let t = 1.0 / (n as f64 * n as f64);
        let survival = 1.0 - emp.cdf(t) + emp.values.iter().filter(|&&v| v == t).count() as f64
            / emp.values.len() as f64;
        let exact = crate::limits::exact_min_spacing_sf(n, t).unwrap();
        let se = (exact * (1.0 - exact) / 2000.0).sqrt();
        assert!(
            (survival - exact).abs() <= 3.0 * se,
            "survival {survival} vs exact {exact} (3se = {})",
            3.0 * se
        );
    }

    #[test]
    fn replicate_failure_reports_index_and_seed() {
        // A window of [5, 5] is empty for n = 3 (lengths are capped at 2).
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus).with_window(5, 5);
        let cfg = config(3, 4, 7, Statistic::Scan { spec });
        match run_experiment(&cfg) {
            Err(Error::ReplicateFailed {
                derived_seed,
                source,
                ..
            }) => {
                assert_ne!(derived_seed, 7);
                assert!(matches!(*source, Error::EmptyWindow { .. }));
            }
            other => panic!("expected ReplicateFailed, got {other:?}"),
        }
    }

    #[test]
    fn synthetic_draws_from_the_limit_pass_goodness_of_fit() {
        // Inverse-CDF draws from the studentized-plus law itself.
        let n = 5000usize;
        let law = Law::StudentizedPlus;
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let reps = 10_000usize;
        let mut values: Vec<f64> = (0..reps)
            .map(|_| {
                let u: f64 = rng.gen::<f64>().max(1e-12);
                critical_value(law, n, 1.0 - u).unwrap()
            })
            .collect();
        values.sort_by(f64::total_cmp);
        let emp = EmpiricalLaw {
            replicate_values: values.clone(),
            values,
            n,
            statistic: Statistic::Scan {
                spec: ScanSpec::new(Variant::Studentized, Side::Plus),
            },
            seed: 31,
        };
        let report = compare_to_limit(&emp, law).unwrap();
        assert!(report.ks_distance <= 1.36 / (reps as f64).sqrt() * 1.5);
        assert_eq!(report.pointwise.len(), 4);
        for pw in &report.pointwise {
            assert!(pw.abs_error <= 0.02, "pointwise error {pw:?}");
        }
        assert!(report.coincidence_rate.is_none());
    }

    #[test]
    fn point_mass_at_the_median_has_half_distance() {
        let n = 5000usize;
        let law = Law::StudentizedPlus;
        let median = critical_value(law, n, 0.5).unwrap();
        let emp = EmpiricalLaw {
            values: vec![median; 100],
            replicate_values: vec![median; 100],
            n,
            statistic: Statistic::Scan {
                spec: ScanSpec::new(Variant::Studentized, Side::Plus),
            },
            seed: 0,
        };
        let ks = compare_to_limit(&emp, law).unwrap().ks_distance;
        assert!((0.5..=1.0).contains(&ks), "ks = {ks}");
        assert!((ks - 0.5).abs() < 1e-9);
    }

    #[test]
    fn incompatible_pairings_are_rejected() {
        let emp = EmpiricalLaw {
            values: vec![1.0],
            replicate_values: vec![1.0],
            n: 100,
            statistic: Statistic::MinSpacing,
            seed: 0,
        };
        assert!(matches!(
            compare_to_limit(&emp, Law::StudentizedPlus),
            Err(Error::IncompatibleLaw { .. })
        ));
        let emp2 = EmpiricalLaw {
            values: vec![1.0],
            replicate_values: vec![1.0],
            n: 100,
            statistic: Statistic::Scan {
                spec: ScanSpec::new(Variant::Standardized, Side::Plus),
            },
            seed: 0,
        };
        assert!(compare_to_limit(&emp2, Law::StandardizedFull).is_ok());
        assert!(matches!(
            compare_to_limit(&emp2, Law::StudentizedMinus),
            Err(Error::IncompatibleLaw { .. })
        ));
    }

    #[test]
    fn coincidence_rates_are_bounded_and_reproducible() {
        let (a, b) = coincidence_rates(120, 60, 5).unwrap();
        let (a2, b2) = coincidence_rates(120, 60, 5).unwrap();
        assert_eq!((a, b), (a2, b2));
        assert!((0.0..=1.0).contains(&a));
        assert!((0.0..=1.0).contains(&b));
        // Even far from the asymptotic regime the dominant sides should win
        // more often than not.
        assert!(a >= 0.5, "rate_minus = {a}");
        assert!(b >= 0.5, "rate_tilde_plus = {b}");
    }

    #[test]
    fn statistic_and_config_serde_round_trip() {
        let cfg = ExperimentConfig {
            n: 50,
            replicates: 10,
            seed: 3,
            statistic: Statistic::Scan {
                spec: ScanSpec::new(Variant::Standardized, Side::TwoSided).with_window(2, 9),
            },
            law: Some(Law::StandardizedWindowed { a: 1.5 }),
            parallelism: 0,
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
        let named: Statistic = serde_json::from_str(r#"{"kind":"min_spacing"}"#).unwrap();
        assert_eq!(named, Statistic::MinSpacing);
    }

    #[test]
    fn persistence_appends_verifies_and_detects_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("experiments.jsonl");
        let cfg = config(30, 20, 11, Statistic::KolmogorovSmirnov);
        let emp = run_experiment(&cfg).unwrap();

        assert!(persist_record(&store, &cfg, &emp).unwrap());
        // Same config, same outcome: verified, nothing appended.
        assert!(!persist_record(&store, &cfg, &emp).unwrap());
        assert_eq!(read_records(&store).unwrap().len(), 1);

        // Different config appends a second record.
        let cfg2 = config(30, 20, 12, Statistic::KolmogorovSmirnov);
        let emp2 = run_experiment(&cfg2).unwrap();
        assert!(persist_record(&store, &cfg2, &emp2).unwrap());
        assert_eq!(read_records(&store).unwrap().len(), 2);

        // Same config but different values: digest mismatch.
        let mut tampered = emp.clone();
        tampered.values[0] += 1e-9;
        assert!(matches!(
            persist_record(&store, &cfg, &tampered),
            Err(Error::DigestMismatch { .. })
        ));

        let record = &read_records(&store).unwrap()[0];
        assert_eq!(record.config, cfg);
        assert_eq!(record.digest, emp.digest());
        assert_eq!(record.summary.replicates, 20);
        assert_eq!(record.quantiles.len(), 7);
    }

    #[test]
    fn raw_csv_round_trips_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.csv");
        let cfg = config(25, 5, 4, Statistic::MinSpacing);
        let emp = run_experiment(&cfg).unwrap();
        write_raw_csv(&path, &emp).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("replicate,value"));
        for (r, line) in lines.enumerate() {
            let (idx, val) = line.split_once(',').unwrap();
            assert_eq!(idx.parse::<usize>().unwrap(), r);
            let parsed: f64 = val.parse().unwrap();
            assert_eq!(parsed, emp.replicate_values[r], "row {r}");
        }
    }

    #[test]
    fn empirical_quantiles_and_digest_are_stable() {
        let emp = EmpiricalLaw {
            values: vec![1.0, 2.0, 3.0, 4.0],
            replicate_values: vec![3.0, 1.0, 4.0, 2.0],
            n: 10,
            statistic: Statistic::MinSpacing,
            seed: 0,
        };
        assert_eq!(emp.quantile(0.0).unwrap(), 1.0);
        assert_eq!(emp.quantile(0.5).unwrap(), 2.0);
        assert_eq!(emp.quantile(0.51).unwrap(), 3.0);
        assert_eq!(emp.quantile(1.0).unwrap(), 4.0);
        assert!(emp.quantile(1.5).is_err());
        assert_eq!(emp.cdf(0.5), 0.0);
        assert_eq!(emp.cdf(2.0), 0.5);
        assert_eq!(emp.cdf(9.0), 1.0);
        let d = emp.digest();
        assert_eq!(d.len(), 64);
        assert_eq!(d, emp.clone().digest());
    }
}
