//! The four subcommand implementations and their report shapes.
//!
//! Every report starts with a `config` object echoing the fully resolved
//! flags (after config-file merging), so rerunning the command with exactly
//! those values reproduces the output. Reports are printed as a single line
//! of JSON; `--format csv` switches to a flat table.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use scanstat::limits::{critical_value, p_value, pre_asymptotic, tau_from_threshold, Law};
use scanstat::mc::{
    compare_to_limit, persist_record, run_experiment, write_raw_csv, ExperimentConfig, GofReport,
    QuantilePoint, Statistic, Summary,
};
use scanstat::sample::{cdf_transform, sort_sample, NullDistribution};
use scanstat::scan::{scan_fast, ScanOutcome, ScanSpec, Side, Variant};

use crate::config::{require, resolve, resolve_enum, FileConfig};
use crate::{
    CalibrateArgs, CliError, DetectArgs, FormatArg, LawArg, ScanArgs, SideArg, SimulateArgs,
    StatisticArg, VariantArg,
};

/// Global flags after config-file merging.
pub struct Globals {
    pub seed: u64,
    pub format: FormatArg,
    pub quiet: bool,
}

impl Globals {
    pub fn resolve(
        seed: Option<u64>,
        format: Option<FormatArg>,
        quiet: bool,
        cfg: &mut FileConfig,
    ) -> Result<Self, CliError> {
        Ok(Globals {
            seed: resolve(seed, cfg, "seed")?.unwrap_or(0),
            format: resolve_enum(format, cfg, "format")?.unwrap_or(FormatArg::Json),
            quiet: quiet || cfg.take::<bool>("quiet")?.unwrap_or(false),
        })
    }
}

/// The flag spelling of a clap value enum, used in config echoes.
fn flag_name<T: ValueEnum>(value: T) -> String {
    value
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn variant_of(v: VariantArg) -> Variant {
    match v {
        VariantArg::Studentized => Variant::Studentized,
        VariantArg::Standardized => Variant::Standardized,
    }
}

fn side_of(s: SideArg) -> Side {
    match s {
        SideArg::Plus => Side::Plus,
        SideArg::Minus => Side::Minus,
        SideArg::TwoSided => Side::TwoSided,
    }
}

fn law_of(law: LawArg, a: Option<f64>) -> Result<Law<f64>, CliError> {
    Ok(match law {
        LawArg::Splus => Law::StudentizedPlus,
        LawArg::Sminus => Law::StudentizedMinus,
        LawArg::Sfull => Law::StandardizedFull,
        LawArg::Swindow => Law::StandardizedWindowed {
            a: require(a, "--a (window parameter of the swindow law)")?,
        },
    })
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

fn emit_json<T: Serialize>(report: &T) -> Result<(), CliError> {
    let line = serde_json::to_string(report)
        .map_err(|e| CliError::Core(scanstat::Error::Io(format!("serializing output: {e}"))))?;
    println!("{line}");
    Ok(())
}

fn csv_field<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

// ---------------------------------------------------------------- scan ----

#[derive(Serialize)]
struct ScanEcho {
    command: &'static str,
    input: String,
    variant: String,
    side: String,
    k: usize,
    l: Option<usize>,
    seed: u64,
    format: String,
}

#[derive(Serialize)]
struct ScanReport {
    config: ScanEcho,
    n: usize,
    outcome: ScanOutcome<f64>,
}

pub fn scan(args: ScanArgs, cfg: &mut FileConfig, g: &Globals) -> Result<(), CliError> {
    let variant = require(resolve_enum(args.variant, cfg, "variant")?, "--variant")?;
    let side = require(resolve_enum(args.side, cfg, "side")?, "--side")?;
    let k = resolve(args.k, cfg, "k")?.unwrap_or(1);
    let l = resolve(args.l, cfg, "l")?;

    let data = crate::input::read_column(&args.input)?;
    let sample = sort_sample(&data)?;
    let spec = ScanSpec {
        variant: variant_of(variant),
        side: side_of(side),
        k,
        l: l.unwrap_or(usize::MAX),
    };
    let outcome = scan_fast(&sample, &spec)?;

    let report = ScanReport {
        config: ScanEcho {
            command: "scan",
            input: args.input.display().to_string(),
            variant: flag_name(variant),
            side: flag_name(side),
            k,
            l,
            seed: g.seed,
            format: flag_name(g.format),
        },
        n: sample.n(),
        outcome,
    };
    match g.format {
        FormatArg::Json => emit_json(&report),
        FormatArg::Csv => {
            let o = &report.outcome;
            println!("value,side,variant,i,j,length,lo,hi,pairs_evaluated,exact");
            println!(
                "{},{},{},{},{},{},{},{},{},{}",
                o.value,
                side_word(o.side),
                variant_word(o.variant),
                o.i,
                o.j,
                o.length,
                o.interval[0],
                o.interval[1],
                o.pairs_evaluated,
                o.exact
            );
            Ok(())
        }
    }
}

// -------------------------------------------------------------- detect ----

#[derive(Serialize)]
struct DetectEcho {
    command: &'static str,
    input: String,
    null: String,
    seed: u64,
    format: String,
}

/// A one-sided scan finding with its interval mapped back to data
/// coordinates: the endpoints are order statistics of the raw data, so the
/// interval always lies within the data range.
#[derive(Serialize)]
struct IntervalFinding {
    value: f64,
    p_value: Option<f64>,
    interval: [f64; 2],
    i: usize,
    j: usize,
    length: usize,
}

#[derive(Serialize)]
struct ValueFinding {
    value: f64,
    p_value: Option<f64>,
}

#[derive(Serialize)]
struct DetectReport {
    config: DetectEcho,
    n: usize,
    null: String,
    pre_asymptotic: bool,
    /// Interval holding unusually many points (plus side of the
    /// studentized scan: observed count exceeds expected).
    cluster: Option<IntervalFinding>,
    /// Interval holding unusually few points (minus side: the scan
    /// minimum, attained at underfull intervals).
    gap: Option<IntervalFinding>,
    /// Full-range standardized plus statistic, no interval attached.
    standardized: Option<ValueFinding>,
    warnings: Vec<String>,
}

fn interval_finding(
    sample: &scanstat::Sample,
    sorted_data: &[f64],
    variant: Variant,
    side: Side,
    law: Law<f64>,
    label: &str,
    warnings: &mut Vec<String>,
) -> Option<IntervalFinding> {
    let outcome = match scan_fast(sample, &ScanSpec::new(variant, side)) {
        Ok(o) => o,
        Err(e) => {
            warnings.push(format!("{label} scan unavailable: {e}"));
            return None;
        }
    };
    let p = match p_value(law, sample.n(), outcome.value) {
        Ok(p) => Some(p),
        Err(e) => {
            warnings.push(format!("{label} p-value unavailable: {e}"));
            None
        }
    };
    // Data coordinates: order statistic m maps to sorted_data[m - 1]; the
    // left boundary (i = 0) maps to the data minimum so the interval stays
    // within the data range.
    let lo = if outcome.i == 0 {
        sorted_data[0]
    } else {
        sorted_data[outcome.i - 1]
    };
    let hi = sorted_data[outcome.j - 1];
    Some(IntervalFinding {
        value: outcome.value,
        p_value: p,
        interval: [lo, hi],
        i: outcome.i,
        j: outcome.j,
        length: outcome.length,
    })
}

pub fn detect(args: DetectArgs, cfg: &mut FileConfig, g: &Globals) -> Result<(), CliError> {
    let null_spec = require(resolve(args.null, cfg, "null")?, "--null")?;
    let null = NullDistribution::parse(&null_spec)?;
    let data = crate::input::read_column(&args.input)?;
    let sample = cdf_transform(&data, &null)?;
    let n = sample.n();
    let mut sorted_data = data.clone();
    sorted_data.sort_by(f64::total_cmp);

    let mut warnings = Vec::new();
    let pre = pre_asymptotic(n);
    if pre {
        warnings.push(format!(
            "pre-asymptotic n ({n}): limit-law p-values are unreliable at this sample size"
        ));
    }

    // Plus side: count exceeds expectation (clusters). Minus side: count
    // falls short (gaps). Both are reported because the two-sided scan is
    // asymptotically dominated by the minus side, which would hide clusters.
    let cluster = interval_finding(
        &sample,
        &sorted_data,
        Variant::Studentized,
        Side::Plus,
        Law::StudentizedPlus,
        "cluster",
        &mut warnings,
    );
    let gap = interval_finding(
        &sample,
        &sorted_data,
        Variant::Studentized,
        Side::Minus,
        Law::StudentizedMinus,
        "gap",
        &mut warnings,
    );
    let standardized = match scan_fast(&sample, &ScanSpec::new(Variant::Standardized, Side::Plus))
    {
        Ok(o) => {
            let p = match p_value(Law::StandardizedFull, n, o.value) {
                Ok(p) => Some(p),
                Err(e) => {
                    warnings.push(format!("standardized p-value unavailable: {e}"));
                    None
                }
            };
            Some(ValueFinding { value: o.value, p_value: p })
        }
        Err(e) => {
            warnings.push(format!("standardized scan unavailable: {e}"));
            None
        }
    };

    let report = DetectReport {
        config: DetectEcho {
            command: "detect",
            input: args.input.display().to_string(),
            null: null_spec.clone(),
            seed: g.seed,
            format: flag_name(g.format),
        },
        n,
        null: null.spec_string(),
        pre_asymptotic: pre,
        cluster,
        gap,
        standardized,
        warnings,
    };
    match g.format {
        FormatArg::Json => emit_json(&report),
        FormatArg::Csv => {
            println!("component,value,p_value,lo,hi");
            for (name, finding) in [("cluster", &report.cluster), ("gap", &report.gap)] {
                if let Some(f) = finding {
                    println!(
                        "{name},{},{},{},{}",
                        f.value,
                        csv_field(&f.p_value),
                        f.interval[0],
                        f.interval[1]
                    );
                }
            }
            if let Some(s) = &report.standardized {
                println!("standardized,{},{},,", s.value, csv_field(&s.p_value));
            }
            Ok(())
        }
    }
}

// ----------------------------------------------------------- calibrate ----

#[derive(Serialize)]
struct CalibrateEcho {
    command: &'static str,
    law: String,
    a: Option<f64>,
    n: usize,
    alpha: Option<f64>,
    observed: Option<f64>,
    seed: u64,
    format: String,
}

#[derive(Serialize)]
struct CalibrateReport {
    config: CalibrateEcho,
    law: String,
    n: usize,
    alpha: Option<f64>,
    observed: Option<f64>,
    critical_value: Option<f64>,
    p_value: Option<f64>,
    /// Tail coordinate corresponding to the critical or observed value.
    tau: Option<f64>,
    pre_asymptotic: bool,
    warnings: Vec<String>,
}

pub fn calibrate(args: CalibrateArgs, cfg: &mut FileConfig, g: &Globals) -> Result<(), CliError> {
    let law_arg = require(resolve_enum(args.law, cfg, "law")?, "--law")?;
    let a = resolve(args.a, cfg, "a")?;
    let n = require(resolve(args.n, cfg, "n")?, "--n")?;
    let alpha = resolve(args.alpha, cfg, "alpha")?;
    let observed = resolve(args.observed, cfg, "observed")?;
    let law = law_of(law_arg, a)?;

    let mut warnings = Vec::new();
    let pre = pre_asymptotic(n);
    if pre {
        warnings.push(format!(
            "pre-asymptotic n ({n}): limit-law calibration is unreliable at this sample size"
        ));
    }

    let (cv, p, tau) = match (alpha, observed) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "pass exactly one of --alpha and --observed, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "pass one of --alpha (critical value) or --observed (p-value)".into(),
            ))
        }
        (Some(alpha), None) => {
            let cv = critical_value(law, n, alpha)?;
            (Some(cv), None, tau_from_threshold(law, n, cv).ok())
        }
        (None, Some(m)) => {
            let p = p_value(law, n, m)?;
            if matches!(law, Law::StandardizedFull) && m <= 0.0 {
                warnings.push(
                    "observed value is nonpositive: the full-range law p-value saturates at 1"
                        .into(),
                );
            }
            (None, Some(p), tau_from_threshold(law, n, m).ok())
        }
    };

    let report = CalibrateReport {
        config: CalibrateEcho {
            command: "calibrate",
            law: flag_name(law_arg),
            a,
            n,
            alpha,
            observed,
            seed: g.seed,
            format: flag_name(g.format),
        },
        law: flag_name(law_arg),
        n,
        alpha,
        observed,
        critical_value: cv,
        p_value: p,
        tau,
        pre_asymptotic: pre,
        warnings,
    };
    match g.format {
        FormatArg::Json => emit_json(&report),
        FormatArg::Csv => {
            println!("law,n,alpha,observed,critical_value,p_value,tau");
            println!(
                "{},{},{},{},{},{},{}",
                report.law,
                report.n,
                csv_field(&report.alpha),
                csv_field(&report.observed),
                csv_field(&report.critical_value),
                csv_field(&report.p_value),
                csv_field(&report.tau)
            );
            Ok(())
        }
    }
}

// ------------------------------------------------------------ simulate ----

#[derive(Serialize)]
struct SimulateEcho {
    command: &'static str,
    statistic: String,
    variant: Option<String>,
    side: Option<String>,
    k: Option<usize>,
    l: Option<usize>,
    n: usize,
    replicates: usize,
    parallelism: usize,
    law: Option<String>,
    a: Option<f64>,
    record: Option<String>,
    raw: Option<String>,
    seed: u64,
    format: String,
}

#[derive(Serialize)]
struct SimulateReport {
    config: SimulateEcho,
    /// Human-readable name of the replicated statistic.
    statistic: String,
    n: usize,
    replicates: usize,
    seed: u64,
    summary: Summary,
    /// SHA-256 digest of the sorted replicate values.
    digest: String,
    quantiles: Vec<QuantilePoint>,
    /// Present when `--law` was given.
    gof: Option<GofReport>,
    /// Present when `--record` was given; false means an identical record
    /// already existed and was verified instead of appended.
    persisted: Option<bool>,
}

fn statistic_of(
    stat: StatisticArg,
    variant: Option<VariantArg>,
    side: Option<SideArg>,
    k: Option<usize>,
    l: Option<usize>,
) -> Result<Statistic, CliError> {
    Ok(match stat {
        StatisticArg::Scan => {
            let variant = require(variant, "--variant (with --statistic scan)")?;
            let side = require(side, "--side (with --statistic scan)")?;
            Statistic::Scan {
                spec: ScanSpec {
                    variant: variant_of(variant),
                    side: side_of(side),
                    k: k.unwrap_or(1),
                    l: l.unwrap_or(usize::MAX),
                },
            }
        }
        StatisticArg::Ks => Statistic::KolmogorovSmirnov,
        StatisticArg::MinSpacing => Statistic::MinSpacing,
        StatisticArg::EickerSup => Statistic::EickerSup,
        StatisticArg::EickerSupStudentized => Statistic::EickerSupStudentized,
    })
}

pub fn simulate(args: SimulateArgs, cfg: &mut FileConfig, g: &Globals) -> Result<(), CliError> {
    let stat_arg = require(resolve_enum(args.statistic, cfg, "statistic")?, "--statistic")?;
    let variant = resolve_enum(args.variant, cfg, "variant")?;
    let side = resolve_enum(args.side, cfg, "side")?;
    let k = resolve(args.k, cfg, "k")?;
    let l = resolve(args.l, cfg, "l")?;
    let n = require(resolve(args.n, cfg, "n")?, "--n")?;
    let replicates = require(resolve(args.replicates, cfg, "replicates")?, "--replicates")?;
    let parallelism = resolve(args.parallelism, cfg, "parallelism")?.unwrap_or(0);
    let law_arg = resolve_enum(args.law, cfg, "law")?;
    let a = resolve(args.a, cfg, "a")?;
    let record = resolve::<PathBuf>(args.record, cfg, "record")?;
    let raw = resolve::<PathBuf>(args.raw, cfg, "raw")?;

    let statistic = statistic_of(stat_arg, variant, side, k, l)?;
    let law = law_arg.map(|la| law_of(la, a)).transpose()?;
    let core_cfg = ExperimentConfig {
        n,
        replicates,
        seed: g.seed,
        statistic,
        law,
        parallelism,
    };
    let emp = run_experiment(&core_cfg)?;
    let gof = law.map(|law| compare_to_limit(&emp, law)).transpose()?;
    let persisted = match &record {
        Some(path) => Some(persist_record(path, &core_cfg, &emp)?),
        None => None,
    };
    if let Some(path) = &raw {
        write_raw_csv(path, &emp)?;
    }

    let quantiles = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99]
        .iter()
        .map(|&p| {
            Ok(QuantilePoint {
                p,
                value: emp.quantile(p)?,
            })
        })
        .collect::<Result<Vec<_>, scanstat::Error>>()?;

    let report = SimulateReport {
        config: SimulateEcho {
            command: "simulate",
            statistic: flag_name(stat_arg),
            variant: variant.map(flag_name),
            side: side.map(flag_name),
            k,
            l,
            n,
            replicates,
            parallelism,
            law: law_arg.map(flag_name),
            a,
            record: record.as_ref().map(|p| p.display().to_string()),
            raw: raw.as_ref().map(|p| p.display().to_string()),
            seed: g.seed,
            format: flag_name(g.format),
        },
        statistic: core_cfg.statistic.name(),
        n,
        replicates,
        seed: g.seed,
        summary: emp.summary(),
        digest: emp.digest(),
        quantiles,
        gof,
        persisted,
    };
    match g.format {
        FormatArg::Json => emit_json(&report),
        FormatArg::Csv => {
            println!("replicate,value");
            for (r, v) in emp.replicate_values.iter().enumerate() {
                println!("{r},{v}");
            }
            Ok(())
        }
    }
}
