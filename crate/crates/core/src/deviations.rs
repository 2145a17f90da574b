//! Large-deviation diagnostics for partial sums of the centered unit
//! increment `X = 1 - E` (`E` unit exponential, so `X <= 1`, mean 0,
//! variance 1): rate functions, cumulant functions, the variable transforms
//! linking span-space to statistic-space, and the Chernoff /
//! moderate-deviation tail bounds built from them.
//!
//! These serve two purposes: quick analytic tail estimates for scan values,
//! and oracles the Monte Carlo module is property-tested against.

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sample::derive_seed;
use crate::{Error, Result};

/// Selects the upper (`S_k >= ...`) or lower (`-S_k >= ...`) tail family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSign {
    Plus,
    Minus,
}

/// Large-deviation rate function of the chosen tail:
/// `I+(s) = -s - ln(1 - s)` on `[0, 1)` with an exact `+inf` sentinel at
/// `s >= 1` (the increments are bounded above by 1), and
/// `I-(s) = s - ln(1 + s)` on `[0, inf)`.
pub fn rate<F: Float>(sign: TailSign, s: F) -> Result<F> {
    if !(s >= F::zero()) {
        return Err(Error::Domain(format!(
            "rate functions are defined for s >= 0, got {}",
            s.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(match sign {
        TailSign::Plus => {
            if s >= F::one() {
                F::infinity()
            } else {
                -s - (-s).ln_1p()
            }
        }
        TailSign::Minus => s - s.ln_1p(),
    })
}

/// Cumulant generating function of the chosen signed increment:
/// `phi+(t) = t - ln(1 + t)` for `t >= 0`, and `phi-(t) = -t - ln(1 - t)`
/// on `[0, 1)` with a `+inf` sentinel at `t >= 1`.
pub fn cumulant<F: Float>(sign: TailSign, t: F) -> Result<F> {
    if !(t >= F::zero()) {
        return Err(Error::Domain(format!(
            "cumulant functions are defined for t >= 0, got {}",
            t.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(match sign {
        TailSign::Plus => t - t.ln_1p(),
        TailSign::Minus => {
            if t >= F::one() {
                F::infinity()
            } else {
                -t - (-t).ln_1p()
            }
        }
    })
}

/// The strictly increasing transform `phi(x) = x / sqrt(1 - x)` on
/// `(-inf, 1)`, mapping span deficit to statistic scale.
pub fn phi_map<F: Float>(x: F) -> Result<F> {
    if !(x < F::one()) {
        return Err(Error::Domain(format!(
            "phi is defined on x < 1, got {}",
            x.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(x / (F::one() - x).sqrt())
}

/// Inverse of [`phi_map`]: `g+(x) = (x sqrt(x^2 + 4) - x^2) / 2`, valued in
/// `(-inf, 1)` for every real `x`. For positive `x` the algebraically equal
/// form `2x / (sqrt(x^2 + 4) + x)` avoids cancellation.
pub fn g_plus<F: Float>(x: F) -> F {
    let two = F::from(2.0).unwrap();
    let root = (x * x + two * two).sqrt();
    if x >= F::zero() {
        two * x / (root + x)
    } else {
        x * (root - x) / two
    }
}

/// Companion transform `g-(a) = (a sqrt(a^2 + 4) + a^2) / 2` for `a >= 0`;
/// satisfies `g-(a) - g+(a) = a^2` identically.
pub fn g_minus<F: Float>(a: F) -> Result<F> {
    if !(a >= F::zero()) {
        return Err(Error::Domain(format!(
            "g- is defined for a >= 0, got {}",
            a.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let two = F::from(2.0).unwrap();
    let root = (a * a + two * two).sqrt();
    Ok((a * root + a * a) / two)
}

/// Chernoff bound on the scaled partial-sum tail:
/// `P(+-S_k >= x sqrt(k)) <= exp(-k I(x / sqrt(k)))`. The `+inf` rate
/// sentinel makes the bound exactly 0 beyond the support boundary
/// (`x >= sqrt(k)` on the plus side).
pub fn chernoff_tail_bound<F: Float>(sign: TailSign, k: usize, x: F) -> Result<F> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if !(x > F::zero()) {
        return Err(Error::Domain(format!(
            "tail location x must be positive, got {}",
            x.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let kf = F::from(k).unwrap();
    let i = rate(sign, x / kf.sqrt())?;
    Ok((-kf * i).exp())
}

/// Result of [`moderate_dev_approx`]: the approximate tail probability and
/// whether `(k, x)` sits in the regime where the approximation is justified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModerateDeviation<F> {
    pub value: F,
    /// True when `2 <= x <= sqrt(k) / 4`; outside that window the value is
    /// still computed but should be treated as indicative only.
    pub in_asymptotic_range: bool,
}

/// Moderate-deviation tail approximation
/// `P(+-S_k >= x sqrt(k)) ~ (1 / (sqrt(2 pi) x)) exp(-k I(x / sqrt(k)))`,
/// i.e. the Chernoff bound deflated by the Gaussian prefactor. Sharp when
/// `1 << x << sqrt(k)`; for fixed moderate `x` it keeps the usual Mills
/// overshoot of order `1/x^2` relative to the exact tail.
pub fn moderate_dev_approx<F: Float>(
    sign: TailSign,
    k: usize,
    x: F,
) -> Result<ModerateDeviation<F>> {
    let bound = chernoff_tail_bound(sign, k, x)?;
    let two_pi = F::from(2.0 * std::f64::consts::PI).unwrap();
    let value = bound / (two_pi.sqrt() * x);
    let upper = F::from(k).unwrap().sqrt() / F::from(4.0).unwrap();
    let in_asymptotic_range = x >= F::from(2.0).unwrap() && x <= upper;
    Ok(ModerateDeviation {
        value,
        in_asymptotic_range,
    })
}

/// Simulates `replicates` independent copies of the plus-side partial sum
/// `S_k = sum of (1 - E_i)`; the minus-side sum is the negation. Replicate
/// `r` draws from its own stream seeded by `derive_seed(seed, r)`, the same
/// discipline the Monte Carlo module uses, so results are reproducible and
/// order-independent.
pub fn simulate_partial_sums(k: usize, replicates: usize, seed: u64) -> Result<Vec<f64>> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(replicates);
    for r in 0..replicates {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, r as u64));
        let mut sum = 0.0f64;
        for _ in 0..k {
            let u: f64 = rng.gen();
            // X = 1 - E with E = -ln(1 - u) unit exponential.
            sum += 1.0 + (-u).ln_1p();
        }
        out.push(sum);
    }
    Ok(out)
}
