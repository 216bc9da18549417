//! Certified enclosures of π² and exact sign evaluation in `Q + Q·π²`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::{PiQuadratic, Rational, RationalInterval, Sign};
use crate::error::{Error, Result};

pub const DEFAULT_PI2_DIGITS: u32 = 40;
pub const MAX_PI2_DIGITS: u32 = 200;

static DEFAULT_DIGITS: OnceLock<u32> = OnceLock::new();
static ENCLOSURES: OnceLock<Mutex<HashMap<u32, RationalInterval>>> = OnceLock::new();

/// Sets the process-wide default π² precision (decimal digits). Write-once:
/// returns `Err` with the already-installed value on a second call.
pub fn set_default_pi2_digits(digits: u32) -> std::result::Result<(), u32> {
    DEFAULT_DIGITS.set(digits.clamp(1, MAX_PI2_DIGITS)).map_err(|_| default_pi2_digits())
}

pub fn default_pi2_digits() -> u32 {
    *DEFAULT_DIGITS.get().unwrap_or(&DEFAULT_PI2_DIGITS)
}

/// Starting precision and refinement cap for [`qpi2_sign_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pi2Precision {
    pub digits: u32,
    pub max_digits: u32,
}

impl Default for Pi2Precision {
    fn default() -> Self {
        Pi2Precision { digits: default_pi2_digits(), max_digits: MAX_PI2_DIGITS }
    }
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `Σ_j (−1)^j ⌊S / (x^{2j+1}(2j+1))⌋` together with the number of terms.
/// Each floor loses less than one unit and the dropped alternating tail is
/// smaller than the first vanishing term, so the error is below `terms + 1`.
fn arctan_inv_scaled(x: u32, scale: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x * x);
    let mut power = scale / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * j + 1);
        if term.is_zero() {
            break;
        }
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        j += 1;
    }
    (sum, j)
}

/// `(v, e)` with `|π·10^scale_digits − v| ≤ e`, via Machin's formula.
fn pi_scaled(scale_digits: u32) -> (BigInt, BigInt) {
    let scale = pow10(scale_digits);
    let (a5, n5) = arctan_inv_scaled(5, &scale);
    let (a239, n239) = arctan_inv_scaled(239, &scale);
    let v = a5 * 16 - a239 * 4;
    let e = BigInt::from(16 * (n5 + 1) + 4 * (n239 + 1));
    (v, e)
}

/// `⌊π²·10^grid⌋`, raising the internal precision until both ends of the
/// enclosure agree.
fn pi2_floor(grid: u32) -> BigInt {
    let mut guard = 30;
    loop {
        let d = grid + guard;
        let (v, e) = pi_scaled(d);
        let denom = pow10(2 * d);
        let g = pow10(grid);
        let lo = &v - &e;
        let hi = &v + &e;
        let f_lo = (&lo * &lo * &g) / &denom;
        let f_hi = (&hi * &hi * &g) / &denom;
        if f_lo == f_hi {
            return f_lo;
        }
        guard += 30;
    }
}

/// Canonical enclosure on the `10^-grid` lattice: `[F−1, F+2]·10^-grid` with
/// `F = ⌊π²·10^grid⌋`. Enclosures for increasing `grid` are nested.
fn lattice_enclosure(grid: u32) -> RationalInterval {
    let cache = ENCLOSURES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(iv) = cache.lock().expect("enclosure cache poisoned").get(&grid) {
        return iv.clone();
    }
    let f = pi2_floor(grid);
    let den = pow10(grid);
    let iv =
        RationalInterval::new(Rational::new(&f - BigInt::one(), den.clone()), Rational::new(&f + BigInt::from(2), den))
            .expect("lattice enclosure is ordered");
    cache.lock().expect("enclosure cache poisoned").insert(grid, iv.clone());
    iv
}

/// Enclosure of π² of width at most `10^-digits`.
pub fn pi2_enclosure_digits(digits: u32) -> RationalInterval {
    lattice_enclosure(digits + 1)
}

/// Enclosure `[lo, hi] ∋ π²` with `hi − lo ≤ abs_err`. Deterministic, and
/// nested under decreasing `abs_err`.
///
/// # Panics
///
/// If `abs_err ≤ 0`.
pub fn pi2_enclosure(abs_err: &Rational) -> RationalInterval {
    assert!(abs_err.is_positive(), "pi2_enclosure requires a positive width");
    // smallest grid with 3·10^-grid ≤ abs_err
    let mut grid = 0u32;
    let three = BigInt::from(3);
    while &three * abs_err.denom() > abs_err.numer() * pow10(grid) {
        grid += 1;
    }
    lattice_enclosure(grid)
}

pub fn qpi2_sign(v: &PiQuadratic) -> Result<Sign> {
    qpi2_sign_with(v, &Pi2Precision::default())
}

/// Exact sign of `a·π² + b`. For `a ≠ 0` the value is irrational, so refining
/// the π² enclosure always separates it from zero; the digit cap only guards
/// against runaway inputs.
pub fn qpi2_sign_with(v: &PiQuadratic, prec: &Pi2Precision) -> Result<Sign> {
    if v.pi2_coeff.is_zero() {
        return Ok(Sign::of(&v.const_coeff));
    }
    let mut digits = prec.digits.max(1);
    loop {
        let iv = pi2_enclosure_digits(digits).affine(&v.pi2_coeff, &v.const_coeff);
        if let Some(s) = iv.strict_sign() {
            return Ok(s);
        }
        if digits >= prec.max_digits {
            return Err(Error::RefinementBudgetExceeded { max_digits: prec.max_digits });
        }
        digits = (digits * 2).min(prec.max_digits);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, to_f64};
    use proptest::prelude::*;

    // 50 decimals of π², from an independent table (OEIS A002388).
    const PI2_50: &str = "9.86960440108935861883449099987615113531369940724079";

    fn reference() -> Rational {
        let digits: String = PI2_50.chars().filter(|c| *c != '.').collect();
        Rational::new(digits.parse().unwrap(), pow10(50))
    }

    /// Oracle: `π² = 8·Σ_{j≥0} 1/(2j+1)²`; the remainder after `J` terms lies
    /// in `[8/(4J+4), 8/(4J)]`.
    fn odd_square_series_enclosure(terms: u64) -> (Rational, Rational) {
        let mut s = Rational::zero();
        for j in 0..terms {
            let d = BigInt::from(2 * j + 1);
            s += Rational::new(BigInt::from(8), &d * &d);
        }
        let lo = &s + rat(8, 4 * terms as i64 + 4);
        let hi = &s + rat(8, 4 * terms as i64);
        (lo, hi)
    }

    #[test]
    fn machin_agrees_with_independent_series() {
        let (lo, hi) = odd_square_series_enclosure(2000);
        assert!(&hi - &lo < rat(1, 1000));
        for eps in [rat(1, 1), rat(1, 1000), rat(1, 1_000_000)] {
            let iv = pi2_enclosure(&eps);
            assert!(iv.width() <= eps);
            // both enclose π², so they must overlap
            assert!(iv.lo() <= &hi && &lo <= iv.hi());
        }
    }

    #[test]
    fn enclosure_widths_and_reference() {
        let r = reference();
        // the reference is truncated at 50 decimals
        let slack = Rational::new(BigInt::one(), pow10(50));
        for e in [0u32, 1, 2, 6, 10, 30, 40, 45] {
            let eps = Rational::new(BigInt::one(), pow10(e));
            let iv = pi2_enclosure(&eps);
            assert!(iv.width() <= eps, "width at 1e-{e}");
            assert!(iv.lo() <= &(&r + &slack) && &r <= iv.hi(), "1e-{e}: {iv}");
        }
        let iv6 = pi2_enclosure(&rat(1, 1_000_000));
        assert!(iv6.contains(&rat(98_696_044, 10_000_000)));
        assert!(!(iv6.lo() < &rat(987, 100) && &rat(987, 100) < iv6.hi()));
    }

    #[test]
    fn enclosures_are_nested() {
        let mut prev = pi2_enclosure(&rat(10, 1));
        for e in 0..80u32 {
            for m in [5u32, 2, 1] {
                let eps = Rational::new(BigInt::from(m), pow10(e));
                let iv = pi2_enclosure(&eps);
                assert!(prev.contains_interval(&iv), "not nested at {m}e-{e}");
                prev = iv;
            }
        }
    }

    #[test]
    fn sign_examples() {
        let s = |a, b| qpi2_sign(&PiQuadratic::from_ratios(a, b)).unwrap();
        assert_eq!(s((0, 1), (-4, 1)), Sign::Negative);
        assert_eq!(s((2, 3), (-4, 1)), Sign::Positive);
        assert_eq!(s((178, 3), (-585, 1)), Sign::Positive);
        assert_eq!(qpi2_sign(&PiQuadratic::zero()).unwrap(), Sign::Zero);
    }

    #[test]
    fn sign_refines_past_the_starting_precision() {
        // a·π² + b with a = 10^45 and b = −⌊a·π²⌋ lies in (0, 1)
        let a = Rational::new(pow10(45), BigInt::one());
        let b = -(&a * reference()).floor();
        let v = PiQuadratic::new(a, b);
        let prec = Pi2Precision { digits: 10, max_digits: 200 };
        assert_eq!(qpi2_sign_with(&v, &prec).unwrap(), Sign::Positive);
        let capped = Pi2Precision { digits: 10, max_digits: 20 };
        assert_eq!(qpi2_sign_with(&v, &capped), Err(Error::RefinementBudgetExceeded { max_digits: 20 }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn sign_matches_float_away_from_zero(
            an in -10_000i64..10_000, ad in 1i64..1000,
            bn in -100_000i64..100_000, bd in 1i64..1000,
        ) {
            let f = to_f64(&rat(an, ad)) * std::f64::consts::PI.powi(2) + to_f64(&rat(bn, bd));
            prop_assume!(f.abs() > 1e-6);
            let v = PiQuadratic::new(rat(an, ad), rat(bn, bd));
            prop_assert_eq!(qpi2_sign(&v).unwrap(), Sign::of_f64(f));
        }
    }
}
