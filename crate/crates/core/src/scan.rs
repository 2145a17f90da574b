//! Scan statistics: pairwise normalized increments and their windowed extrema.
//!
//! Both statistic variants compare the point count of an order-statistic
//! interval with the mass it covers. For a pair `0 <= i < j <= n` with
//! `d = j - i` and `span = u(j) - u(i)`:
//!
//! * studentized: `(d - n*span) / sqrt(d * (1 - d/n))` — normalized by the
//!   expected count,
//! * standardized: `(d - n*span) / sqrt(n * span * (1 - span))` — normalized
//!   by the observed mass.
//!
//! A scan takes the maximum (plus side), the negated minimum (minus side),
//! or the larger of the two (two-sided) over all pairs whose length lies in
//! an inclusive window `[k, l]`, `l` clamped to `n - 1`.
//!
//! [`scan`] enumerates every pair (the oracle path). [`scan_fast`] returns
//! bit-identical results but prunes whole lengths and whole index blocks
//! using precomputed envelopes of the centered path `delta_i = u(i) - i/n`;
//! see [`Tables`] for the bound derivation and the safety margins that keep
//! pruning exact in floating point.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::sample::SortedSample;
use crate::{Error, Result};

/// Which normalization the pairwise statistic uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Denominator `sqrt(d (1 - d/n))`: the interval's expected count.
    Studentized,
    /// Denominator `sqrt(n span (1 - span))`: the interval's observed mass.
    Standardized,
}

/// Which extremum a scan takes; a [`ScanOutcome`] reports the attained side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Maximum of the pairwise statistic: intervals holding too little mass.
    Plus,
    /// Negated minimum: intervals holding too much mass (gaps in density,
    /// clusters in mass). The reported value is `-min`, so it is large when
    /// some interval is extreme in the minus direction.
    Minus,
    /// Larger of the plus and minus values; the outcome records which side
    /// attained it.
    TwoSided,
}

/// What to scan: variant, side, and the inclusive length window `[k, l]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub variant: Variant,
    pub side: Side,
    /// Smallest admissible length `j - i`; must be >= 1.
    pub k: usize,
    /// Largest admissible length; clamped to `n - 1` at scan time, so
    /// `usize::MAX` means "full window".
    pub l: usize,
}

impl ScanSpec {
    /// Full-window spec: every length `1..=n-1` is admissible.
    pub fn new(variant: Variant, side: Side) -> Self {
        ScanSpec { variant, side, k: 1, l: usize::MAX }
    }

    /// Restricts the scan to lengths in the inclusive window `[k, l]`.
    pub fn with_window(mut self, k: usize, l: usize) -> Self {
        self.k = k;
        self.l = l;
        self
    }
}

/// Length-window policy for [`scan_fast_with_mode`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[derive(Default)]
pub enum ScanMode {
    /// Scan the full requested window.
    #[default]
    Exact,
    /// Cap the window at `c * (ln n)^3` — the length scale where the
    /// studentized plus extremum concentrates for large `n`. Only valid for
    /// the studentized plus scan; the outcome is flagged not exact.
    AsymptoticWindow { c: f64 },
}


impl ScanMode {
    /// The capped mode with its default constant `c = 8`.
    pub fn asymptotic_window() -> Self {
        ScanMode::AsymptoticWindow { c: 8.0 }
    }
}

/// Result of a scan: the extremum, where it was attained, and work counters.
///
/// For the minus side, `value` is the negated minimum, so re-evaluating the
/// pairwise statistic at `(i, j)` reproduces `-value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutcome<F> {
    /// The extremum (negated for the minus side, see above).
    pub value: F,
    /// The side that attained the value; `Plus` or `Minus`, never `TwoSided`.
    pub side: Side,
    pub variant: Variant,
    /// Left index of the attaining pair, `0 <= i < j <= n`.
    pub i: usize,
    /// Right index of the attaining pair.
    pub j: usize,
    /// `j - i`.
    pub length: usize,
    /// `[u(i), u(j)]`, the attaining interval on the unit scale.
    pub interval: [F; 2],
    /// Pairs whose span was actually inspected (pruned work excluded).
    pub pairs_evaluated: u64,
    /// False when an asymptotic window cap was in force.
    pub exact: bool,
}

#[inline]
fn studentized_kernel<F: Float>(n: F, d: F, span: F) -> F {
    (d - n * span) / (d * (F::one() - d / n)).sqrt()
}

#[inline]
fn standardized_kernel<F: Float>(n: F, d: F, span: F) -> F {
    (d - n * span) / (n * span * (F::one() - span)).sqrt()
}

#[inline]
fn kernel<F: Float>(variant: Variant, n: F, d: F, span: F) -> F {
    match variant {
        Variant::Studentized => studentized_kernel(n, d, span),
        Variant::Standardized => standardized_kernel(n, d, span),
    }
}

/// The studentized pairwise statistic `(d - n(u(j)-u(i))) / sqrt(d(1-d/n))`.
///
/// Positive when the interval holds less mass than its length predicts (the
/// cluster-of-low-mass direction that the plus scan maximizes).
pub fn studentized_pair<F: Float>(sample: &SortedSample<F>, i: usize, j: usize) -> Result<F> {
    let n = sample.n();
    if i >= j || j > n {
        return Err(Error::Domain(format!(
            "pair indices must satisfy 0 <= i < j <= n, got ({i}, {j}) with n = {n}"
        )));
    }
    if j - i == n {
        return Err(Error::DegenerateLength { i, j });
    }
    let nf = F::from(n).unwrap();
    let df = F::from(j - i).unwrap();
    Ok(studentized_kernel(nf, df, sample.u(j) - sample.u(i)))
}

/// The standardized pairwise statistic
/// `(d - n*span) / sqrt(n*span*(1-span))` with `span = u(j) - u(i)`.
pub fn standardized_pair<F: Float>(sample: &SortedSample<F>, i: usize, j: usize) -> Result<F> {
    let n = sample.n();
    if i >= j || j > n {
        return Err(Error::Domain(format!(
            "pair indices must satisfy 0 <= i < j <= n, got ({i}, {j}) with n = {n}"
        )));
    }
    let span = sample.u(j) - sample.u(i);
    if span <= F::zero() || span >= F::one() {
        return Err(Error::DegenerateSpan {
            i,
            j,
            span: span.to_f64().unwrap_or(f64::NAN),
        });
    }
    let nf = F::from(n).unwrap();
    let df = F::from(j - i).unwrap();
    Ok(standardized_kernel(nf, df, span))
}

/// Exhaustive scan: evaluates every admissible pair.
///
/// Lengths are visited in ascending order and, within a length, left indices
/// in ascending order, with strict improvement only — so ties resolve to the
/// smallest length, then the smallest left index. For the standardized
/// variant, pairs with span 0 (ties in the data) or span 1 are skipped; if
/// every admissible pair is skipped the scan fails with `EmptyWindow`.
pub fn scan<F: Float>(sample: &SortedSample<F>, spec: &ScanSpec) -> Result<ScanOutcome<F>> {
    scan_impl(sample, spec, ScanMode::Exact, false)
}

/// Pruned scan: bit-identical to [`scan`] in value and attaining pair.
///
/// Precomputes block envelopes of `delta_i = u(i) - i/n` and skips every
/// length — and within surviving lengths every index block — that provably
/// cannot improve the running extrema. All bounds carry floating-point
/// safety margins (see [`Tables`]), so pruning never changes the result.
pub fn scan_fast<F: Float>(sample: &SortedSample<F>, spec: &ScanSpec) -> Result<ScanOutcome<F>> {
    scan_impl(sample, spec, ScanMode::Exact, true)
}

/// [`scan_fast`] with an explicit length-window policy.
pub fn scan_fast_with_mode<F: Float>(
    sample: &SortedSample<F>,
    spec: &ScanSpec,
    mode: ScanMode,
) -> Result<ScanOutcome<F>> {
    scan_impl(sample, spec, mode, true)
}

/// Best candidate seen so far on one side.
struct SideBest<F> {
    stat: F,
    d: usize,
    i: usize,
}

/// Pruning envelopes.
///
/// With `delta_i = u(i) - i/n`, a pair of length `d` has
/// `span = d/n + (delta_{i+d} - delta_i)`, so bounds on delta differences
/// bound every span of that length. Indices `0..=n` are cut into blocks of
/// `block` consecutive indices with per-block extrema `bmax`/`bmin`. For a
/// length `d` with `q = d / block`, the partner `i + d` of any `i` in block
/// `b` lands in block `b + q` or `b + q + 1`; hence
///
/// * `drop_q[q] >= delta_i - delta_{i+d}` for every admissible `i`
///   (spans can undershoot `d/n` by at most this much), and
/// * `rise_q[q] >= delta_{i+d} - delta_i` (overshoot bound),
///
/// and the same construction per block gives block-local bounds. `tmin`, the
/// minimum of all `n + 1` spacings, adds the standardized-variant bounds
/// `span >= d*tmin` and `span <= 1 - (n+1-d)*tmin`.
///
/// Floating-point safety: the deltas are rounded, so every span bound is
/// widened by `span_margin` (a few hundred epsilons, versus an actual
/// rounding error of a few epsilons), and every statistic bound derived from
/// it is further inflated by [`inflate`]. A length or block is skipped only
/// when its inflated bound cannot strictly improve the corresponding running
/// best, which makes the skip exact: brute force would have found no
/// improvement there either, and ties already resolve to the earlier
/// candidate, which pruning never removes.
struct Tables<F> {
    block: usize,
    bmax: Vec<F>,
    bmin: Vec<F>,
    drop_q: Vec<F>,
    rise_q: Vec<F>,
    tmin: F,
    span_margin: F,
}

/// Widens a statistic upper bound so it dominates every floating-point
/// evaluation of statistics it bounds in real arithmetic.
#[inline]
fn inflate<F: Float>(bound: F) -> F {
    let eps = F::epsilon() * F::from(1024.0).unwrap();
    bound + bound.abs() * eps + eps
}

impl<F: Float> Tables<F> {
    fn build(ext: &[F], n: usize, nf: F, need_drop: bool, need_rise: bool) -> Self {
        let block = 32usize.max((n as f64).sqrt().round() as usize);
        let nblocks = (n + 1).div_ceil(block);
        let mut bmax = vec![F::neg_infinity(); nblocks];
        let mut bmin = vec![F::infinity(); nblocks];
        let mut tmin = F::one() - ext[n];
        for i in 0..=n {
            let delta = ext[i] - F::from(i).unwrap() / nf;
            let b = i / block;
            if delta > bmax[b] {
                bmax[b] = delta;
            }
            if delta < bmin[b] {
                bmin[b] = delta;
            }
            if i < n {
                let spacing = ext[i + 1] - ext[i];
                if spacing < tmin {
                    tmin = spacing;
                }
            }
        }
        // A table for an unrequested side stays at infinity: its bounds are
        // vacuous and the corresponding skip checks are never consulted.
        let drop_q = if need_drop {
            (0..nblocks)
                .map(|q| {
                    (0..nblocks - q)
                        .map(|b| bmax[b] - Self::pair_min(&bmin, b + q))
                        .fold(F::neg_infinity(), F::max)
                })
                .collect()
        } else {
            vec![F::infinity(); nblocks]
        };
        let rise_q = if need_rise {
            (0..nblocks)
                .map(|q| {
                    (0..nblocks - q)
                        .map(|b| Self::pair_max(&bmax, b + q) - bmin[b])
                        .fold(F::neg_infinity(), F::max)
                })
                .collect()
        } else {
            vec![F::infinity(); nblocks]
        };
        Tables {
            block,
            bmax,
            bmin,
            drop_q,
            rise_q,
            tmin,
            span_margin: F::epsilon() * F::from(256.0).unwrap(),
        }
    }

    /// Min of `bmin` over blocks `b` and `b + 1` (when the latter exists).
    #[inline]
    fn pair_min(bmin: &[F], b: usize) -> F {
        if b + 1 < bmin.len() {
            bmin[b].min(bmin[b + 1])
        } else {
            bmin[b]
        }
    }

    #[inline]
    fn pair_max(bmax: &[F], b: usize) -> F {
        if b + 1 < bmax.len() {
            bmax[b].max(bmax[b + 1])
        } else {
            bmax[b]
        }
    }
}

/// Per-length running extrema of the span, with earliest attaining index.
struct PassTrack<F> {
    min_span: F,
    min_i: usize,
    max_span: F,
    max_i: usize,
}

impl<F: Float> PassTrack<F> {
    fn new() -> Self {
        PassTrack {
            min_span: F::infinity(),
            min_i: usize::MAX,
            max_span: F::neg_infinity(),
            max_i: usize::MAX,
        }
    }

    #[inline]
    fn update(&mut self, span: F, i: usize) {
        if span < self.min_span {
            self.min_span = span;
            self.min_i = i;
        }
        if span > self.max_span {
            self.max_span = span;
            self.max_i = i;
        }
    }
}

/// Span interval `[lo, hi]` that a set of pairs is confined to, already
/// widened by the safety margin. `lo > hi` never occurs; `lo >= 1` or
/// `hi <= 0` means every pair in the set is degenerate.
struct SpanBox<F> {
    lo: F,
    hi: F,
}

struct Engine<'a, F> {
    ext: &'a [F],
    n: usize,
    nf: F,
    variant: Variant,
    need_plus: bool,
    need_minus: bool,
    pairs_evaluated: u64,
    best_plus: Option<SideBest<F>>,
    best_minus: Option<SideBest<F>>,
}

impl<'a, F: Float> Engine<'a, F> {
    /// Span box for lengths or blocks, from a drop/rise bound pair.
    fn span_box(&self, tables: &Tables<F>, d: usize, drop: F, rise: F) -> SpanBox<F> {
        let df = F::from(d).unwrap();
        let center = df / self.nf;
        let mut lo = center - drop;
        let mut hi = center + rise;
        if self.variant == Variant::Standardized {
            // Spacing-sum bounds; only useful for the standardized kernel,
            // whose value diverges as the span approaches 0 or 1.
            lo = lo.max(df * tables.tmin);
            let rest = F::from(self.n + 1 - d).unwrap();
            hi = hi.min(F::one() - rest * tables.tmin);
        }
        SpanBox { lo: lo - tables.span_margin, hi: hi + tables.span_margin }
    }

    /// Largest statistic any pair confined to `sb` could attain on the plus
    /// side, inflated; `None` when unbounded. Boxes entirely inside the
    /// degenerate region (standardized, span >= 1) bound to negative
    /// infinity: such pairs produce no candidate at all.
    fn plus_bound(&self, d: usize, sb: &SpanBox<F>) -> Option<F> {
        let df = F::from(d).unwrap();
        match self.variant {
            Variant::Studentized => Some(inflate(studentized_kernel(self.nf, df, sb.lo))),
            Variant::Standardized => {
                if sb.lo <= F::zero() {
                    None
                } else if sb.lo >= F::one() {
                    Some(F::neg_infinity())
                } else {
                    Some(inflate(standardized_kernel(self.nf, df, sb.lo)))
                }
            }
        }
    }

    /// Largest negated statistic attainable on the minus side, inflated.
    fn minus_bound(&self, d: usize, sb: &SpanBox<F>) -> Option<F> {
        let df = F::from(d).unwrap();
        match self.variant {
            Variant::Studentized => Some(inflate(-studentized_kernel(self.nf, df, sb.hi))),
            Variant::Standardized => {
                if sb.hi >= F::one() {
                    None
                } else if sb.hi <= F::zero() {
                    Some(F::neg_infinity())
                } else {
                    Some(inflate(-standardized_kernel(self.nf, df, sb.hi)))
                }
            }
        }
    }

    /// True when the bound proves no pair in the bounded set can strictly
    /// improve the side's best-so-far. Only called for needed sides; an
    /// absent best or an unbounded set means everything might improve.
    #[inline]
    fn cannot_improve(best: &Option<SideBest<F>>, bound: Option<F>) -> bool {
        match (best, bound) {
            (Some(best), Some(b)) => b <= best.stat,
            _ => false,
        }
    }

    /// Scans every admissible pair of length `d` unless bounds rule the
    /// whole length or individual blocks out.
    fn length_pass(&mut self, d: usize, tables: Option<&Tables<F>>) {
        let i_last = self.n - d;
        let mut track = PassTrack::new();

        match tables {
            Some(tables) => {
                let q = d / tables.block;
                let sb = self.span_box(tables, d, tables.drop_q[q], tables.rise_q[q]);
                if self.variant == Variant::Standardized
                    && (sb.lo >= F::one() || sb.hi <= F::zero())
                {
                    return; // every pair of this length is degenerate
                }
                let plus_skip = !self.need_plus
                    || Self::cannot_improve(&self.best_plus, self.plus_bound(d, &sb));
                let minus_skip = !self.need_minus
                    || Self::cannot_improve(&self.best_minus, self.minus_bound(d, &sb));
                if plus_skip && minus_skip {
                    return;
                }
                let mut b = 0;
                while b * tables.block <= i_last {
                    let i0 = b * tables.block;
                    let i1 = ((b + 1) * tables.block - 1).min(i_last);
                    let drop = tables.bmax[b] - Tables::pair_min(&tables.bmin, b + q);
                    let rise = Tables::pair_max(&tables.bmax, b + q) - tables.bmin[b];
                    let bsb = self.span_box(tables, d, drop, rise);
                    // A side lets the block go when its bound cannot beat
                    // the global best, or when the block's span range
                    // cannot beat the running per-length extremum (an
                    // exact span-space check; margins are in the box, and
                    // ties resolve to the earlier index, already held).
                    let plus_skip = !self.need_plus
                        || bsb.lo >= track.min_span
                        || Self::cannot_improve(&self.best_plus, self.plus_bound(d, &bsb));
                    let both_skip = plus_skip
                        && (!self.need_minus
                            || bsb.hi <= track.max_span
                            || Self::cannot_improve(&self.best_minus, self.minus_bound(d, &bsb)));
                    if !both_skip {
                        self.run_block(d, i0, i1, &mut track);
                    }
                    b += 1;
                }
            }
            None => self.run_block(d, 0, i_last, &mut track),
        }

        self.fold_candidates(d, &track);
    }

    /// The unpruned inner loop over `i0..=i1`; shared by both scan paths.
    fn run_block(&mut self, d: usize, i0: usize, i1: usize, track: &mut PassTrack<F>) {
        let heads = &self.ext[i0..=i1];
        let tails = &self.ext[i0 + d..=i1 + d];
        self.pairs_evaluated += (i1 - i0 + 1) as u64;
        match self.variant {
            Variant::Studentized => {
                for (off, (&lo, &hi)) in heads.iter().zip(tails).enumerate() {
                    track.update(hi - lo, i0 + off);
                }
            }
            Variant::Standardized => {
                for (off, (&lo, &hi)) in heads.iter().zip(tails).enumerate() {
                    let span = hi - lo;
                    if span > F::zero() && span < F::one() {
                        track.update(span, i0 + off);
                    }
                }
            }
        }
    }

    /// Turns a finished length pass into side candidates; strict
    /// improvement keeps the smallest length, then the smallest left index.
    fn fold_candidates(&mut self, d: usize, track: &PassTrack<F>) {
        let df = F::from(d).unwrap();
        if self.need_plus && track.min_i != usize::MAX {
            let stat = kernel(self.variant, self.nf, df, track.min_span);
            if self.best_plus.as_ref().is_none_or(|b| stat > b.stat) {
                self.best_plus = Some(SideBest { stat, d, i: track.min_i });
            }
        }
        if self.need_minus && track.max_i != usize::MAX {
            let stat = -kernel(self.variant, self.nf, df, track.max_span);
            if self.best_minus.as_ref().is_none_or(|b| stat > b.stat) {
                self.best_minus = Some(SideBest { stat, d, i: track.max_i });
            }
        }
    }
}

fn scan_impl<F: Float>(
    sample: &SortedSample<F>,
    spec: &ScanSpec,
    mode: ScanMode,
    prune: bool,
) -> Result<ScanOutcome<F>> {
    let n = sample.n();
    if spec.k < 1 {
        return Err(Error::Domain(
            "window lower bound k must be at least 1".into(),
        ));
    }
    let mut l_eff = spec.l.min(n.saturating_sub(1));
    let mut exact = true;
    if let ScanMode::AsymptoticWindow { c } = mode {
        if spec.variant != Variant::Studentized || spec.side != Side::Plus {
            return Err(Error::Domain(
                "the asymptotic window cap applies only to the studentized plus scan".into(),
            ));
        }
        if !(c > 0.0) {
            return Err(Error::Domain(format!(
                "asymptotic window constant must be positive, got {c}"
            )));
        }
        let cap = (c * (n as f64).ln().powi(3)).floor();
        l_eff = l_eff.min(if cap >= 1.0 { cap as usize } else { 0 });
        exact = false;
    }
    if spec.k > l_eff {
        return Err(Error::EmptyWindow { k: spec.k, l: l_eff, n });
    }

    let mut ext = Vec::with_capacity(n + 1);
    ext.push(F::zero());
    ext.extend_from_slice(sample.values());
    let nf = F::from(n).unwrap();

    let need_plus = matches!(spec.side, Side::Plus | Side::TwoSided);
    let need_minus = matches!(spec.side, Side::Minus | Side::TwoSided);
    let tables = if prune {
        Some(Tables::build(&ext, n, nf, need_plus, need_minus))
    } else {
        None
    };

    let mut engine = Engine {
        ext: &ext,
        n,
        nf,
        variant: spec.variant,
        need_plus,
        need_minus,
        pairs_evaluated: 0,
        best_plus: None,
        best_minus: None,
    };
    for d in spec.k..=l_eff {
        engine.length_pass(d, tables.as_ref());
    }

    let (best, side) = match spec.side {
        Side::Plus => (engine.best_plus, Side::Plus),
        Side::Minus => (engine.best_minus, Side::Minus),
        Side::TwoSided => match (engine.best_plus, engine.best_minus) {
            (Some(p), Some(m)) => {
                if p.stat > m.stat || (p.stat == m.stat && (p.d, p.i) <= (m.d, m.i)) {
                    (Some(p), Side::Plus)
                } else {
                    (Some(m), Side::Minus)
                }
            }
            (Some(p), None) => (Some(p), Side::Plus),
            (None, m) => (m, Side::Minus),
        },
    };
    let best = best.ok_or(Error::EmptyWindow { k: spec.k, l: l_eff, n })?;
    let (i, j) = (best.i, best.i + best.d);
    Ok(ScanOutcome {
        value: best.stat,
        side,
        variant: spec.variant,
        i,
        j,
        length: best.d,
        interval: [ext[i], ext[j]],
        pairs_evaluated: engine.pairs_evaluated,
        exact,
    })
}

/// One supremum form of the endpoint-normalized empirical process, with its
/// attaining index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<F> {
    pub value: F,
    pub arg: usize,
}

/// The two single-index supremum statistics over `(i - n u(i))`.
///
/// Each form is `None` when every index has a vanishing denominator
/// (`u(i)` in `{0, 1}` for the mass-normalized form; `i = n` alone is
/// excluded for the count-normalized form, so it needs `n >= 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EickerStatistics<F> {
    /// `max_i (i - n u(i)) / sqrt(n u(i) (1 - u(i)))` over `1..=n`.
    pub v_plus: Option<Extremum<F>>,
    /// `max_i (i - n u(i)) / sqrt(i (1 - i/n))` over `1..=n-1`.
    pub v_plus_studentized: Option<Extremum<F>>,
}

/// Computes both endpoint-normalized supremum statistics in one pass.
///
/// Fails with `AllDegenerate` only when both forms have no admissible index.
pub fn eicker_statistics<F: Float>(sample: &SortedSample<F>) -> Result<EickerStatistics<F>> {
    let n = sample.n();
    let nf = F::from(n).unwrap();
    let mut v_plus: Option<Extremum<F>> = None;
    let mut v_stu: Option<Extremum<F>> = None;
    for i in 1..=n {
        let u = sample.u(i);
        let num = F::from(i).unwrap() - nf * u;
        if u > F::zero() && u < F::one() {
            let value = num / (nf * u * (F::one() - u)).sqrt();
            if v_plus.is_none_or(|b| value > b.value) {
                v_plus = Some(Extremum { value, arg: i });
            }
        }
        if i < n {
            let iff = F::from(i).unwrap();
            let value = num / (iff * (F::one() - iff / nf)).sqrt();
            if v_stu.is_none_or(|b| value > b.value) {
                v_stu = Some(Extremum { value, arg: i });
            }
        }
    }
    if v_plus.is_none() && v_stu.is_none() {
        return Err(Error::AllDegenerate);
    }
    Ok(EickerStatistics { v_plus, v_plus_studentized: v_stu })
}

/// `sqrt(n) * max_i |u(i) - i/(n+1)|`: the two-sided supremum distance from
/// the expected order-statistic positions.
pub fn ks_statistic<F: Float>(sample: &SortedSample<F>) -> F {
    let n = sample.n();
    let np1 = F::from(n + 1).unwrap();
    let mut worst = F::zero();
    for i in 1..=n {
        let dev = (sample.u(i) - F::from(i).unwrap() / np1).abs();
        if dev > worst {
            worst = dev;
        }
    }
    F::from(n).unwrap().sqrt() * worst
}

/// Minimum of the `n` spacings `u(i+1) - u(i)` for `i = 0..n-1`: includes
/// the left boundary spacing `u(1) - 0`, excludes `1 - u(n)`.
pub fn min_spacing<F: Float>(sample: &SortedSample<F>) -> F {
    let n = sample.n();
    let mut smallest = F::infinity();
    for i in 0..n {
        let spacing = sample.u(i + 1) - sample.u(i);
        if spacing < smallest {
            smallest = spacing;
        }
    }
    smallest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sort_sample;

    fn s(values: &[f64]) -> SortedSample<f64> {
        sort_sample(values).unwrap()
    }

    #[test]
    fn studentized_pair_two_points() {
        let sample = s(&[0.1, 0.2]);
        let v = studentized_pair(&sample, 0, 1).unwrap();
        assert!((v - (1.0 - 2.0 * 0.1) / (1.0f64 * 0.5).sqrt()).abs() < 1e-15);
        assert!((v - 1.1313708).abs() < 1e-7);
    }

    #[test]
    fn studentized_pair_centered_is_zero() {
        let sample = s(&[0.25, 0.5, 0.75, 1.0]);
        assert_eq!(studentized_pair(&sample, 0, 1).unwrap(), 0.0);
        assert_eq!(studentized_pair(&sample, 1, 3).unwrap(), 0.0);
    }

    #[test]
    fn studentized_pair_interior() {
        let sample = s(&[0.1, 0.2, 0.3, 0.9]);
        let v = studentized_pair(&sample, 1, 3).unwrap();
        assert!((v - 1.2).abs() < 1e-15);
    }

    #[test]
    fn studentized_pair_rejects_full_length() {
        let sample = s(&[0.1, 0.2]);
        assert_eq!(
            studentized_pair(&sample, 0, 2),
            Err(Error::DegenerateLength { i: 0, j: 2 })
        );
    }

    #[test]
    fn standardized_pair_two_points() {
        let sample = s(&[0.1, 0.2]);
        let expect = (1.0 - 2.0 * 0.1) / (2.0f64 * 0.1 * 0.9).sqrt();
        let v01 = standardized_pair(&sample, 0, 1).unwrap();
        let v12 = standardized_pair(&sample, 1, 2).unwrap();
        assert!((v01 - expect).abs() < 1e-15);
        assert!((v12 - expect).abs() < 1e-15);
        assert!((v01 - 1.8856181).abs() < 1e-7);
    }

    #[test]
    fn standardized_pair_rejects_ties() {
        let sample = s(&[0.2, 0.2]);
        assert!(matches!(
            standardized_pair(&sample, 1, 2),
            Err(Error::DegenerateSpan { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn scan_two_points_tie_rule() {
        let sample = s(&[0.1, 0.2]);
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus).with_window(1, 1);
        let out = scan(&sample, &spec).unwrap();
        // Pairs (0,1) and (1,2) have equal spans; the earlier index wins.
        assert_eq!((out.i, out.j), (0, 1));
        assert!((out.value - 1.1313708).abs() < 1e-7);
        assert_eq!(out.side, Side::Plus);
        assert!(out.exact);
    }

    #[test]
    fn scan_single_length_window_matches_pairwise() {
        let sample = s(&[0.15, 0.3, 0.45, 0.8]);
        let n = sample.n();
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus).with_window(n - 1, n - 1);
        let out = scan(&sample, &spec).unwrap();
        assert_eq!(out.length, n - 1);
        let recomputed = studentized_pair(&sample, out.i, out.j).unwrap();
        assert_eq!(out.value, recomputed);
    }

    #[test]
    fn scan_minus_value_is_negated_pairwise() {
        let sample = s(&[0.05, 0.1, 0.6, 0.65]);
        let spec = ScanSpec::new(Variant::Studentized, Side::Minus);
        let out = scan(&sample, &spec).unwrap();
        let recomputed = studentized_pair(&sample, out.i, out.j).unwrap();
        assert_eq!(out.value, -recomputed);
        assert_eq!(out.side, Side::Minus);
    }

    #[test]
    fn scan_rejects_bad_windows() {
        let sample = s(&[0.1, 0.2, 0.3]);
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus).with_window(0, 2);
        assert!(matches!(scan(&sample, &spec), Err(Error::Domain(_))));
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus).with_window(3, 5);
        assert!(matches!(scan(&sample, &spec), Err(Error::EmptyWindow { .. })));
    }

    #[test]
    fn scan_standardized_all_ties_is_empty() {
        let sample = s(&[0.4, 0.4, 0.4]);
        // Only spans of length 1 and 2 between tied values are degenerate;
        // pairs reaching u(0) = 0 are not. Restrict to the tied region.
        let spec = ScanSpec::new(Variant::Standardized, Side::Plus).with_window(1, 1);
        let out = scan(&sample, &spec).unwrap();
        assert_eq!((out.i, out.j), (0, 1)); // span 0.4 from the left endpoint
        let tied = sort_sample(&[0.0, 0.0, 0.0]).unwrap();
        let spec = ScanSpec::new(Variant::Standardized, Side::TwoSided).with_window(1, 2);
        assert!(matches!(scan(&tied, &spec), Err(Error::EmptyWindow { .. })));
    }

    #[test]
    fn fast_matches_brute_on_small_samples() {
        use crate::sample::sample_uniform_order_stats;
        for seed in 0..20 {
            let sample = sample_uniform_order_stats(37, seed).unwrap();
            for variant in [Variant::Studentized, Variant::Standardized] {
                for side in [Side::Plus, Side::Minus, Side::TwoSided] {
                    let spec = ScanSpec::new(variant, side);
                    let brute = scan(&sample, &spec).unwrap();
                    let fast = scan_fast(&sample, &spec).unwrap();
                    assert_eq!(brute.value, fast.value);
                    assert_eq!((brute.i, brute.j, brute.side), (fast.i, fast.j, fast.side));
                }
            }
        }
    }

    #[test]
    fn asymptotic_window_flags_inexact() {
        use crate::sample::sample_uniform_order_stats;
        let sample = sample_uniform_order_stats(200, 7).unwrap();
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus);
        let capped =
            scan_fast_with_mode(&sample, &spec, ScanMode::asymptotic_window()).unwrap();
        assert!(!capped.exact);
        let exact = scan_fast(&sample, &spec).unwrap();
        assert!(exact.value >= capped.value);
        let minus = ScanSpec::new(Variant::Studentized, Side::Minus);
        assert!(matches!(
            scan_fast_with_mode(&sample, &minus, ScanMode::asymptotic_window()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn eicker_single_point() {
        let sample = s(&[0.5]);
        let e = eicker_statistics(&sample).unwrap();
        let v = e.v_plus.unwrap();
        assert!((v.value - 1.0).abs() < 1e-15);
        assert_eq!(v.arg, 1);
        assert!(e.v_plus_studentized.is_none());
    }

    #[test]
    fn eicker_all_degenerate() {
        let sample = s(&[0.0]);
        assert_eq!(eicker_statistics(&sample), Err(Error::AllDegenerate));
    }

    #[test]
    fn ks_centered_and_single_point() {
        let n = 9;
        let centered: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        assert_eq!(ks_statistic(&s(&centered)), 0.0);
        assert!((ks_statistic(&s(&[0.9])) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn min_spacing_examples() {
        assert!((min_spacing(&s(&[0.1, 0.2])) - 0.1).abs() < 1e-15);
        assert!((min_spacing(&s(&[0.7])) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn outcome_serializes_expected_fields() {
        let sample = s(&[0.1, 0.2]);
        let spec = ScanSpec::new(Variant::Studentized, Side::Plus);
        let out = scan(&sample, &spec).unwrap();
        let json = serde_json::to_value(&out).unwrap();
        for field in [
            "value",
            "side",
            "variant",
            "i",
            "j",
            "length",
            "interval",
            "pairs_evaluated",
            "exact",
        ] {
            assert!(json.get(field).is_some(), "missing field {field}");
        }
        assert_eq!(json["side"], "plus");
        assert_eq!(json["variant"], "studentized");
    }
}
