//! Sample ingestion and generation.
//!
//! Everything downstream operates on a [`SortedSample`]: `n` values in
//! `[0, 1]` sorted ascending, with the virtual endpoints `u(0) = 0` and
//! `u(n+1) = 1`. Raw data reaches that form either by [`sort_sample`] (data
//! already on the unit interval) or by [`cdf_transform`] (arbitrary data
//! pushed through a null-distribution CDF). [`sample_uniform_order_stats`]
//! generates uniform order statistics reproducibly for simulation.

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Real, Result};

/// A sorted sample on the unit interval with virtual endpoints.
///
/// Ties are accepted: discrete data produce zero spacings, which make the
/// mass-normalized statistics degenerate at those pairs. Scans skip such
/// pairs; direct pairwise evaluation reports them as errors.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSample<F> {
    values: Vec<F>,
}

impl<F: Float> SortedSample<F> {
    /// Number of data values `n` (excludes the virtual endpoints).
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Order-statistic accessor for `i` in `0..=n+1`.
    ///
    /// `u(0) = 0` and `u(n+1) = 1` regardless of the data.
    ///
    /// # Panics
    /// If `i > n + 1`.
    pub fn u(&self, i: usize) -> F {
        let n = self.values.len();
        if i == 0 {
            F::zero()
        } else if i <= n {
            self.values[i - 1]
        } else if i == n + 1 {
            F::one()
        } else {
            panic!("order-statistic index {i} out of range 0..={}", n + 1);
        }
    }

    /// The sorted data values (without the virtual endpoints).
    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Builds a sample from values already known to be sorted and in range.
    pub(crate) fn from_sorted_unchecked(values: Vec<F>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        SortedSample { values }
    }
}

/// Sorts raw unit-interval values into a [`SortedSample`].
///
/// Rejects empty input, NaN/infinite values, and values outside `[0, 1]`.
/// Duplicates are kept; the sort is stable, so tied values retain their
/// input order.
pub fn sort_sample<F: Float>(values: &[F]) -> Result<SortedSample<F>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteValue { index });
        }
        if v < F::zero() || v > F::one() {
            return Err(Error::OutOfUnitInterval {
                index,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let mut sorted = values.to_vec();
    // Total order is fine here: NaN has been rejected above.
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values compare"));
    Ok(SortedSample { values: sorted })
}

/// A null distribution whose CDF maps raw data onto the unit interval.
#[derive(Debug, Clone, PartialEq)]
pub enum NullDistribution {
    /// Uniform on `[a, b]`.
    Uniform { a: Real, b: Real },
    /// Normal with the given mean and standard deviation.
    Normal { mean: Real, sd: Real },
    /// Exponential with the given rate.
    Exponential { rate: Real },
    /// User-supplied quantile table, interpolated linearly.
    QuantileTable(QuantileTable),
}

/// A table of `(probability, quantile)` pairs defining a CDF by linear
/// interpolation between tabulated points.
///
/// Linear interpolation is the simplest monotone interpolant and keeps
/// results bit-reproducible across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileTable {
    /// Probability levels, strictly increasing, within `[0, 1]`.
    probs: Vec<Real>,
    /// Quantiles at those levels, strictly increasing.
    quantiles: Vec<Real>,
}

impl QuantileTable {
    /// Builds a table from `(probability, quantile)` rows.
    pub fn new(rows: &[(Real, Real)]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Domain(
                "quantile table needs at least two rows".into(),
            ));
        }
        for (i, &(p, x)) in rows.iter().enumerate() {
            if !p.is_finite() || !x.is_finite() {
                return Err(Error::NonFiniteValue { index: i });
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain(format!(
                    "probability {p} at row {i} lies outside [0, 1]"
                )));
            }
        }
        for w in rows.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::Domain(
                    "quantile table must be strictly increasing in both columns".into(),
                ));
            }
        }
        Ok(QuantileTable {
            probs: rows.iter().map(|r| r.0).collect(),
            quantiles: rows.iter().map(|r| r.1).collect(),
        })
    }

    fn cdf(&self, x: Real) -> Result<Real> {
        let (first, last) = (self.quantiles[0], *self.quantiles.last().unwrap());
        if x < first || x > last {
            return Err(Error::Domain(format!(
                "data point {x} outside the tabulated support [{first}, {last}]"
            )));
        }
        let hi = self.quantiles.partition_point(|&q| q < x).min(self.quantiles.len() - 1);
        let lo = hi.saturating_sub(1);
        if lo == hi {
            return Ok(self.probs[lo]);
        }
        let (x0, x1) = (self.quantiles[lo], self.quantiles[hi]);
        let (p0, p1) = (self.probs[lo], self.probs[hi]);
        Ok(p0 + (p1 - p0) * ((x - x0) / (x1 - x0)))
    }

    fn quantile(&self, p: Real) -> Result<Real> {
        let (first, last) = (self.probs[0], *self.probs.last().unwrap());
        if p < first || p > last {
            return Err(Error::Domain(format!(
                "probability {p} outside the tabulated range [{first}, {last}]"
            )));
        }
        let hi = self.probs.partition_point(|&q| q < p).min(self.probs.len() - 1);
        let lo = hi.saturating_sub(1);
        if lo == hi {
            return Ok(self.quantiles[lo]);
        }
        let (p0, p1) = (self.probs[lo], self.probs[hi]);
        let (x0, x1) = (self.quantiles[lo], self.quantiles[hi]);
        Ok(x0 + (x1 - x0) * ((p - p0) / (p1 - p0)))
    }
}

impl NullDistribution {
    /// Evaluates the CDF, failing for points outside the support.
    pub fn cdf(&self, x: Real) -> Result<Real> {
        match self {
            NullDistribution::Uniform { a, b } => {
                if x < *a || x > *b {
                    Err(Error::Domain(format!(
                        "data point {x} outside the uniform support [{a}, {b}]"
                    )))
                } else {
                    Ok((x - a) / (b - a))
                }
            }
            NullDistribution::Normal { mean, sd } => {
                use statrs::distribution::ContinuousCDF;
                let d = statrs::distribution::Normal::new(*mean, *sd)
                    .map_err(|e| Error::Domain(format!("invalid normal parameters: {e}")))?;
                Ok(d.cdf(x))
            }
            NullDistribution::Exponential { rate } => {
                if x < 0.0 {
                    Err(Error::Domain(format!(
                        "data point {x} outside the exponential support [0, inf)"
                    )))
                } else {
                    // 1 - exp(-rate * x), computed without cancellation.
                    Ok(-(-rate * x).exp_m1())
                }
            }
            NullDistribution::QuantileTable(table) => table.cdf(x),
        }
    }

    /// Evaluates the quantile function (inverse CDF) at `p` in `[0, 1]`.
    pub fn quantile(&self, p: Real) -> Result<Real> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
        }
        match self {
            NullDistribution::Uniform { a, b } => Ok(a + (b - a) * p),
            NullDistribution::Normal { mean, sd } => {
                use statrs::distribution::ContinuousCDF;
                let d = statrs::distribution::Normal::new(*mean, *sd)
                    .map_err(|e| Error::Domain(format!("invalid normal parameters: {e}")))?;
                Ok(d.inverse_cdf(p))
            }
            NullDistribution::Exponential { rate } => {
                if p >= 1.0 {
                    return Err(Error::Domain(
                        "exponential quantile diverges at p = 1".into(),
                    ));
                }
                Ok(-(-p).ln_1p() / rate)
            }
            NullDistribution::QuantileTable(table) => table.quantile(p),
        }
    }

    /// Parses a CLI-style distribution spec.
    ///
    /// Accepted forms: `uniform` (unit interval), `uniform:a,b`,
    /// `normal:mean,sd`, `exponential:rate`, `quantiles:path.csv`
    /// (CSV rows `probability,quantile`, header optional).
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, args) = match spec.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (spec.trim(), None),
        };
        let parse_f = |s: &str| -> Result<Real> {
            s.trim()
                .parse::<Real>()
                .map_err(|_| Error::Domain(format!("malformed number {s:?} in distribution spec")))
        };
        match kind {
            "uniform" => {
                let (a, b) = match args {
                    None | Some("") => (0.0, 1.0),
                    Some(rest) => {
                        let mut it = rest.split(',');
                        let a = parse_f(it.next().unwrap_or(""))?;
                        let b = parse_f(it.next().ok_or_else(|| {
                            Error::Domain("uniform spec needs two parameters: a,b".into())
                        })?)?;
                        (a, b)
                    }
                };
                if !(b > a) {
                    return Err(Error::Domain(format!(
                        "uniform spec needs a < b, got [{a}, {b}]"
                    )));
                }
                Ok(NullDistribution::Uniform { a, b })
            }
            "normal" => {
                let rest = args.unwrap_or("0,1");
                let mut it = rest.split(',');
                let mean = parse_f(it.next().unwrap_or("0"))?;
                let sd = parse_f(it.next().unwrap_or("1"))?;
                if !(sd > 0.0) {
                    return Err(Error::Domain(format!("normal sd must be positive, got {sd}")));
                }
                Ok(NullDistribution::Normal { mean, sd })
            }
            "exponential" => {
                let rate = parse_f(args.unwrap_or("1"))?;
                if !(rate > 0.0) {
                    return Err(Error::Domain(format!(
                        "exponential rate must be positive, got {rate}"
                    )));
                }
                Ok(NullDistribution::Exponential { rate })
            }
            "quantiles" => {
                let path = args.ok_or_else(|| {
                    Error::Domain("quantiles spec needs a file path: quantiles:table.csv".into())
                })?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{path}: {e}")))?;
                let mut rows = Vec::new();
                for (lineno, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() {
                        continue;
                    }
                    let mut cols = line.split(',');
                    let p = cols.next().map(str::trim).unwrap_or("");
                    let x = cols.next().map(str::trim).unwrap_or("");
                    match (p.parse::<Real>(), x.parse::<Real>()) {
                        (Ok(p), Ok(x)) => rows.push((p, x)),
                        // Tolerate one non-numeric header line.
                        _ if lineno == 0 => continue,
                        _ => {
                            return Err(Error::Domain(format!(
                                "malformed quantile row {:?} at line {}",
                                line,
                                lineno + 1
                            )))
                        }
                    }
                }
                Ok(NullDistribution::QuantileTable(QuantileTable::new(&rows)?))
            }
            other => Err(Error::Domain(format!(
                "unknown distribution kind {other:?}; expected uniform, normal, exponential or quantiles"
            ))),
        }
    }

    /// Canonical spec string, the inverse of [`NullDistribution::parse`] for
    /// the parametric families.
    pub fn spec_string(&self) -> String {
        match self {
            NullDistribution::Uniform { a, b } => format!("uniform:{a},{b}"),
            NullDistribution::Normal { mean, sd } => format!("normal:{mean},{sd}"),
            NullDistribution::Exponential { rate } => format!("exponential:{rate}"),
            NullDistribution::QuantileTable(t) => format!("quantiles[{} rows]", t.probs.len()),
        }
    }
}

/// Pushes raw data through the null CDF and sorts the result.
///
/// Under the null hypothesis the output is distributed as uniform order
/// statistics, which is the regime every limit law in [`crate::limits`]
/// describes.
pub fn cdf_transform(data: &[Real], null: &NullDistribution) -> Result<SortedSample<Real>> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, &x) in data.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFiniteValue { index });
        }
    }
    let transformed: Vec<Real> = data
        .iter()
        .map(|&x| null.cdf(x))
        .collect::<Result<_>>()?;
    sort_sample(&transformed)
}

/// Derives the seed for one replicate from an experiment seed.
///
/// SplitMix64 finalizer over the experiment seed advanced by the golden-ratio
/// increment: replicate streams are decorrelated and each is a pure function
/// of `(seed, replicate)`, independent of any scheduling.
pub fn derive_seed(seed: u64, replicate: u64) -> u64 {
    let mut z = seed.wrapping_add(replicate.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generates `n` uniform order statistics, already sorted.
///
/// Uses the exponential-spacings representation: with `Y_1, ..., Y_{n+1}`
/// i.i.d. unit exponentials, the normalized partial sums
/// `(Y_1 + ... + Y_i) / (Y_1 + ... + Y_{n+1})` for `i = 1..=n` are uniform
/// order statistics. Exponentials are drawn as `-ln(1 - U)` from a
/// counter-based stream keyed by `seed`, so coordinate `i` is a pure
/// function of `(seed, i)` and the output is bit-identical across runs and
/// platforms.
pub fn sample_uniform_order_stats(n: usize, seed: u64) -> Result<SortedSample<Real>> {
    if n == 0 {
        return Err(Error::Domain("sample size n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut partial = Vec::with_capacity(n + 1);
    let mut sum = 0.0_f64;
    for _ in 0..=n {
        let u: f64 = rng.gen();
        // -ln(1 - u): exact at u = 0, accurate for small u.
        sum += -(-u).ln_1p();
        partial.push(sum);
    }
    let total = *partial.last().unwrap();
    let values: Vec<Real> = partial[..n].iter().map(|&s| s / total).collect();
    Ok(SortedSample::from_sorted_unchecked(values))
}
