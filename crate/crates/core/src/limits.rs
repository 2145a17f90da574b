//! Closed-form calibration: limit laws of the scan statistics, the
//! normalizing sequence that converts scan values to a stable coordinate,
//! the exact minimum-spacing law, and the classical supremum-distance series.
//!
//! Every asymptotic law here is of Gumbel form `exp(-kappa * e^{-tau})` in a
//! `tau`-coordinate, or a direct exponential in the full-range standardized
//! case. The `tau`-coordinate of an observed statistic is defined by each
//! law's threshold map (see [`threshold`]); p-values and critical values are
//! closed-form inversions of that map.
//!
//! ### A note on the minus-side law
//!
//! The minus-side studentized scan at threshold `ln n + tau` converges to
//! `exp(-e^{-(1+tau)})`. Two independent confirmations are built into the
//! test suite: the scan reduces to `n * (largest spacing) - 1`, whose Gumbel
//! limit for uniform spacings is classical, and direct simulation at
//! `n = 2 * 10^4` reproduces the curve to within Monte Carlo error. (With
//! the opposite sign in the exponent, the law would assign probability
//! `exp(-e)` ~ 0.066 to an event that simulation puts at ~0.69.)

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The four limit laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Law<F> {
    /// Studentized plus scan: `exp(-c e^{-tau})` at threshold `u_n(tau)`,
    /// with `c = 8 / (9 sqrt(pi))`.
    StudentizedPlus,
    /// Studentized minus scan: `exp(-e^{-(1+tau)})` at threshold
    /// `ln n + tau`.
    StudentizedMinus,
    /// Standardized plus scan, full window: `P(value <= sqrt(n/tau)) =
    /// e^{-tau}` for `tau > 0`.
    StandardizedFull,
    /// Standardized plus scan restricted to lengths `>= a * (ln n)^3`:
    /// `exp(-c_a e^{-tau})` at threshold `u_n(tau)`.
    StandardizedWindowed { a: F },
}

impl<F: Float> Law<F> {
    /// Short stable name used in reports and persisted records.
    pub fn name(&self) -> &'static str {
        match self {
            Law::StudentizedPlus => "splus",
            Law::StudentizedMinus => "sminus",
            Law::StandardizedFull => "sfull",
            Law::StandardizedWindowed { .. } => "swindow",
        }
    }
}

/// The Gumbel rate constant of the studentized plus law: `8 / (9 sqrt(pi))`.
pub fn gumbel_rate<F: Float>() -> F {
    let eight = F::from(8.0).unwrap();
    let nine = F::from(9.0).unwrap();
    eight / (nine * F::from(std::f64::consts::PI).unwrap().sqrt())
}

fn ln_n<F: Float>(n: usize) -> Result<F> {
    if n <= 2 {
        return Err(Error::Domain(format!(
            "tau-coordinate thresholds need n >= 3, got n = {n}"
        )));
    }
    Ok(F::from(n).unwrap().ln())
}

/// The normalizing sequence
/// `u_n(tau) = sqrt(2 ln n) - 3 ln ln n / (2 sqrt(2 ln n)) + tau / sqrt(2 ln n)`.
///
/// Strictly increasing in `tau`; defined for `n >= 3` (`ln ln n` must exist).
pub fn u_n_tau<F: Float>(n: usize, tau: F) -> Result<F> {
    let ell = ln_n::<F>(n)?;
    let root = (F::from(2.0).unwrap() * ell).sqrt();
    let three = F::from(3.0).unwrap();
    Ok(root - three * ell.ln() / (F::from(2.0).unwrap() * root) + tau / root)
}

/// Algebraically identical factored form
/// `(1 + (-3 ln ln n + 2 tau) / (4 ln n)) * sqrt(2 ln n)`, kept as an
/// independent evaluation route for cross-checking [`u_n_tau`].
pub fn u_n_tau_factored<F: Float>(n: usize, tau: F) -> Result<F> {
    let ell = ln_n::<F>(n)?;
    let two = F::from(2.0).unwrap();
    let correction = (two * tau - F::from(3.0).unwrap() * ell.ln()) / (F::from(4.0).unwrap() * ell);
    Ok((F::one() + correction) * (two * ell).sqrt())
}

/// The threshold a law compares its statistic against at coordinate `tau`.
///
/// Increasing in `tau` for all laws except the full-range standardized one,
/// where the threshold `sqrt(n/tau)` decreases (larger `tau` = smaller
/// threshold = more probability below it... on the statistic's left side).
pub fn threshold<F: Float>(law: Law<F>, n: usize, tau: F) -> Result<F> {
    match law {
        Law::StudentizedPlus | Law::StandardizedWindowed { .. } => u_n_tau(n, tau),
        Law::StudentizedMinus => Ok(ln_n::<F>(n)? + tau),
        Law::StandardizedFull => {
            if tau <= F::zero() {
                return Err(Error::Domain(format!(
                    "the full-range standardized law needs tau > 0, got {}",
                    tau.to_f64().unwrap_or(f64::NAN)
                )));
            }
            Ok((F::from(n).unwrap() / tau).sqrt())
        }
    }
}

/// Inverts [`threshold`]: the `tau`-coordinate of an observed statistic.
pub fn tau_from_threshold<F: Float>(law: Law<F>, n: usize, observed: F) -> Result<F> {
    if !observed.is_finite() {
        return Err(Error::Domain("observed statistic must be finite".into()));
    }
    match law {
        Law::StudentizedPlus | Law::StandardizedWindowed { .. } => {
            let ell = ln_n::<F>(n)?;
            let root = (F::from(2.0).unwrap() * ell).sqrt();
            Ok((observed - root) * root + F::from(1.5).unwrap() * ell.ln())
        }
        Law::StudentizedMinus => Ok(observed - ln_n::<F>(n)?),
        Law::StandardizedFull => {
            if observed <= F::zero() {
                return Err(Error::Domain(format!(
                    "the full-range standardized law needs a positive statistic, got {}",
                    observed.to_f64().unwrap_or(f64::NAN)
                )));
            }
            Ok(F::from(n).unwrap() / (observed * observed))
        }
    }
}

/// The limiting probability that the statistic stays below its threshold at
/// coordinate `tau`.
pub fn limit_cdf<F: Float>(law: Law<F>, tau: F) -> Result<F> {
    let v = match law {
        Law::StudentizedPlus => (-(gumbel_rate::<F>() * (-tau).exp())).exp(),
        Law::StudentizedMinus => (-((-(F::one() + tau)).exp())).exp(),
        Law::StandardizedFull => {
            if tau <= F::zero() {
                return Err(Error::Domain(format!(
                    "the full-range standardized law needs tau > 0, got {}",
                    tau.to_f64().unwrap_or(f64::NAN)
                )));
            }
            (-tau).exp()
        }
        Law::StandardizedWindowed { a } => (-(c_a(a)? * (-tau).exp())).exp(),
    };
    Ok(v.max(F::zero()).min(F::one()))
}

/// Asymptotic p-value of an observed statistic: the limiting probability of
/// a value at least as extreme, clamped to `[0, 1]`.
pub fn p_value<F: Float>(law: Law<F>, n: usize, observed: F) -> Result<F> {
    if !observed.is_finite() {
        return Err(Error::Domain("observed statistic must be finite".into()));
    }
    let p = match law {
        Law::StandardizedFull => {
            if observed <= F::zero() {
                F::one()
            } else {
                // 1 - exp(-n/m^2), evaluated without cancellation.
                -((-(F::from(n).unwrap() / (observed * observed))).exp_m1())
            }
        }
        _ => {
            let tau = tau_from_threshold(law, n, observed)?;
            let lambda = match law {
                Law::StudentizedPlus => gumbel_rate::<F>() * (-tau).exp(),
                Law::StudentizedMinus => (-(F::one() + tau)).exp(),
                Law::StandardizedWindowed { a } => c_a(a)? * (-tau).exp(),
                Law::StandardizedFull => unreachable!(),
            };
            -((-lambda).exp_m1())
        }
    };
    Ok(p.max(F::zero()).min(F::one()))
}

/// The threshold whose p-value equals `alpha`; closed form for all laws.
pub fn critical_value<F: Float>(law: Law<F>, n: usize, alpha: F) -> Result<F> {
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {}",
            alpha.to_f64().unwrap_or(f64::NAN)
        )));
    }
    // lg = -ln(1 - alpha) > 0.
    let lg = -((-alpha).ln_1p());
    match law {
        Law::StudentizedPlus => {
            let tau = (gumbel_rate::<F>() / lg).ln();
            u_n_tau(n, tau)
        }
        Law::StandardizedWindowed { a } => {
            let tau = (c_a(a)? / lg).ln();
            u_n_tau(n, tau)
        }
        Law::StudentizedMinus => {
            let tau = -F::one() - lg.ln();
            Ok(ln_n::<F>(n)? + tau)
        }
        Law::StandardizedFull => Ok((F::from(n).unwrap() / lg).sqrt()),
    }
}

/// Rate constant `c_a` of the length-windowed standardized law: the tail
/// mass of the intensity `(1 / (2 sqrt(pi) a^2)) exp(sqrt(2) / (3 sqrt(a)))`
/// beyond `a`. Substituting `b = 1/a` turns it into the proper integral
/// `(1 / (2 sqrt(pi))) * integral of exp((sqrt(2)/3) sqrt(b)) db over
/// [0, 1/A]`, evaluated by adaptive quadrature to absolute tolerance 1e-10.
pub fn c_a<F: Float>(a: F) -> Result<F> {
    if !(a > F::zero()) {
        return Err(Error::Domain(format!(
            "the windowed law constant needs a > 0, got {}",
            a.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let kappa = F::from(2.0).unwrap().sqrt() / F::from(3.0).unwrap();
    let f = move |b: F| (kappa * b.sqrt()).exp();
    let upper = a.recip();
    let tol = F::from(1e-10)
        .unwrap()
        .max(F::epsilon() * F::from(4.0).unwrap());
    let integral = adaptive_simpson(&f, F::zero(), upper, tol);
    let two_root_pi = F::from(2.0).unwrap() * F::from(std::f64::consts::PI).unwrap().sqrt();
    Ok(integral / two_root_pi)
}

/// Reference evaluation of [`c_a`] through the antiderivative of the
/// substituted integrand (`b = u^2` reduces it to `2 u e^{kappa u}`):
/// `F(u) = 2 (u/kappa - 1/kappa^2) e^{kappa u}`. Kept as an independent
/// route for validating the quadrature, not used in calibration.
pub fn c_a_reference<F: Float>(a: F) -> Result<F> {
    if !(a > F::zero()) {
        return Err(Error::Domain(format!(
            "the windowed law constant needs a > 0, got {}",
            a.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let kappa = F::from(2.0).unwrap().sqrt() / F::from(3.0).unwrap();
    let two = F::from(2.0).unwrap();
    let anti = |u: F| two * (u / kappa - (kappa * kappa).recip()) * (kappa * u).exp();
    let upper = a.recip().sqrt();
    let two_root_pi = two * F::from(std::f64::consts::PI).unwrap().sqrt();
    Ok((anti(upper) - anti(F::zero())) / two_root_pi)
}

/// Adaptive Simpson quadrature with the standard 15-fold error estimate.
fn adaptive_simpson<F: Float>(f: &impl Fn(F) -> F, a: F, b: F, tol: F) -> F {
    fn simpson<F: Float>(fa: F, fm: F, fb: F, h: F) -> F {
        h / F::from(6.0).unwrap() * (fa + F::from(4.0).unwrap() * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Float>(
        f: &impl Fn(F) -> F,
        a: F,
        b: F,
        fa: F,
        fm: F,
        fb: F,
        whole: F,
        tol: F,
        depth: usize,
    ) -> F {
        let m = (a + b) / F::from(2.0).unwrap();
        let lm = (a + m) / F::from(2.0).unwrap();
        let rm = (m + b) / F::from(2.0).unwrap();
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= F::from(15.0).unwrap() * tol {
            return left + right + delta / F::from(15.0).unwrap();
        }
        let half_tol = tol / F::from(2.0).unwrap();
        recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1)
    }
    if b <= a {
        return F::zero();
    }
    let m = (a + b) / F::from(2.0).unwrap();
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Exact survival function of the minimum spacing (left boundary spacing
/// included): `P(T >= t) = (1 - n t)^n` on `[0, 1/n]`, 1 below, 0 above.
pub fn exact_min_spacing_sf<F: Float>(n: usize, t: F) -> Result<F> {
    if n == 0 {
        return Err(Error::Domain("sample size n must be at least 1".into()));
    }
    let nf = F::from(n).unwrap();
    if t < F::zero() {
        return Ok(F::one());
    }
    if t * nf > F::one() {
        return Ok(F::zero());
    }
    // (1 - nt)^n through the log for accuracy at large n.
    let log_base = (-(nf * t)).ln_1p();
    Ok((nf * log_base).exp())
}

/// Distribution function of the scaled supremum distance: the alternating
/// series `1 + 2 * sum_{k>=1} (-1)^k exp(-2 k^2 y^2)`, summed adaptively
/// until the next term drops below 1e-12.
///
/// Below `y = 1e-3` the value is smaller than any representable positive
/// double and is returned as exactly 0.
pub fn kolmogorov_cdf<F: Float>(y: F) -> Result<F> {
    kolmogorov_sum(y, None)
}

/// [`kolmogorov_cdf`] with a fixed number of series terms.
pub fn kolmogorov_cdf_terms<F: Float>(y: F, terms: usize) -> Result<F> {
    if terms < 1 {
        return Err(Error::Domain("series needs at least one term".into()));
    }
    kolmogorov_sum(y, Some(terms))
}

fn kolmogorov_sum<F: Float>(y: F, terms: Option<usize>) -> Result<F> {
    if y < F::zero() {
        return Err(Error::Domain(format!(
            "the supremum-distance law is supported on y >= 0, got {}",
            y.to_f64().unwrap_or(f64::NAN)
        )));
    }
    if y <= F::from(1e-3).unwrap() {
        return Ok(F::zero());
    }
    let tol = F::from(1e-12).unwrap();
    let two = F::from(2.0).unwrap();
    let y2 = y * y;
    let mut sum = F::one();
    let mut k = 1usize;
    loop {
        let kf = F::from(k).unwrap();
        let term = two * (-two * kf * kf * y2).exp();
        let signed = if k % 2 == 1 { -term } else { term };
        sum = sum + signed;
        let done = match terms {
            Some(limit) => k >= limit,
            None => term < tol,
        };
        if done {
            break;
        }
        k += 1;
    }
    Ok(sum.max(F::zero()).min(F::one()))
}

/// Small-sample warning predicate: `tau`-based calibration is computed for
/// any `n >= 3`, but for `n <= 15` the output should carry a
/// "pre-asymptotic n" warning.
pub fn pre_asymptotic(n: usize) -> bool {
    n <= 15
}
