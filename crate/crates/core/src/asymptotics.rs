//! Euler–Maclaurin enclosures of `S_k`, exact `Δ_k = Σ_k − Σ_{k+1}` sign
//! certificates, the analytic lower bound for `(z−w)²`, and asymptote
//! residual diagnostics.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    bernoulli_even, default_pi2_digits, int, qpi2_sign, rat, to_f64, HarmonicCache, PiQuadratic, Rational,
    RationalInterval, Sign, DEFAULT_PI2_DIGITS,
};
use crate::error::{Error, Result};
use crate::invariants::sigma_closed_with;
use crate::submodule::Submodule;

/// Two-sided rational enclosure of `S_k = Σ_{n≥k} 1/n²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkEnclosure {
    pub k: u64,
    pub order: u32,
    pub interval: RationalInterval,
}

/// `1/k + 1/(2k²) + Σ_{i=1}^{m} B_{2i}/k^{2i+1}`.
fn em_partial(k: u64, m: u32) -> Rational {
    let kk = int(k as i64);
    let mut power = &kk * &kk;
    let mut s = Rational::one() / &kk + Rational::one() / (int(2) * &power);
    for i in 1..=m {
        power = &power * &kk;
        s += bernoulli_even(i) / &power;
        power = &power * &kk;
    }
    s
}

/// Consecutive Euler–Maclaurin partial sums of orders `order − 1` and
/// `order`. The remainder of `Σ 1/n²` alternates in sign and is dominated by
/// the first omitted term, so the two sums bracket `S_k`. At order 3 the
/// upper end is `1/k + 1/(2k²) + 1/(6k³) − 1/(30k⁵) + 1/(42k⁷)` and the width
/// is `1/(42k⁷)`.
pub fn sk_enclosure(k: u64, order: u32) -> Result<SkEnclosure> {
    if k == 0 {
        return Err(Error::Domain("S_k is indexed from k = 1".into()));
    }
    if !(1..=3).contains(&order) {
        return Err(Error::Domain(format!("enclosure order must be 1, 2 or 3, got {order}")));
    }
    let interval = RationalInterval::hull(em_partial(k, order - 1), em_partial(k, order));
    Ok(SkEnclosure { k, order, interval })
}

/// `R(k) = 120k⁴ + 60k³ + 212k² + 96k + 68 + 20/k + 4/k²`.
pub fn r_of_k(k: u64) -> Rational {
    let kk = int(k as i64);
    let poly = [68, 96, 212, 60, 120].iter().rev().fold(Rational::zero(), |acc, &c| acc * &kk + int(c));
    poly + int(20) / &kk + int(4) / (&kk * &kk)
}

/// `T(k) = 8k(15k⁴ + 24k² + 5)`.
pub fn t_of_k(k: u64) -> Rational {
    let kk = int(k as i64);
    let k2 = &kk * &kk;
    int(8) * &kk * (int(15) * &k2 * &k2 + int(24) * &k2 + int(5))
}

pub fn delta_k(sub: Submodule, k: u64) -> Result<PiQuadratic> {
    delta_k_with(&HarmonicCache::new(k), sub, k)
}

/// `Δ_k = Σ_k − Σ_{k+1}` for `k ≥ 1`, from a cache with `max_n ≥ k`. For
/// `(z−w)²` the difference is cross-checked against `R(k) − T(k)·S_k`.
pub fn delta_k_with(cache: &HarmonicCache, sub: Submodule, k: u64) -> Result<PiQuadratic> {
    if k == 0 {
        return Err(Error::Domain("Δ_0 comes from Σ_0 − Σ_1 = 1, not the k ≥ 1 closed forms".into()));
    }
    let delta = sigma_closed_with(cache, sub, k) - sigma_closed_with(cache, sub, k + 1);
    if sub == Submodule::Zw2 {
        let s_k = PiQuadratic::zeta2_tail(cache.h2(k - 1));
        let other = PiQuadratic::rational(r_of_k(k)) - s_k.scale(&t_of_k(k));
        if other != delta {
            return Err(Error::IdentityViolation(format!("Δ_{k} differs from R(k) − T(k)S_k")));
        }
    }
    Ok(delta)
}

/// `92k⁴ − 340k² − 100 > 0`, i.e. `92/(105k²) − 68/(21k⁴) − 20/(21k⁶) > 0`
/// after multiplying by `105k⁶`. Defined for `k ≥ 3`.
pub fn analytic_lower_bound_check(k: u64) -> Result<bool> {
    if k < 3 {
        return Err(Error::Domain(format!("the analytic bound is claimed for k ≥ 3, got {k}")));
    }
    let small = || -> Option<bool> {
        let k2 = i128::from(k).checked_mul(i128::from(k))?;
        let lead = k2.checked_mul(k2)?.checked_mul(92)?;
        Some(lead - 340 * k2 - 100 > 0)
    };
    Ok(small().unwrap_or_else(|| {
        let k = BigInt::from(k);
        let k2 = &k * &k;
        BigInt::from(92) * &k2 * &k2 - BigInt::from(340) * &k2 - BigInt::from(100) > BigInt::zero()
    }))
}

/// Coefficients of `f(x + 3)` for `f(x) = 92x⁴ − 340x² − 100`, ascending.
/// All positive means `f > 0` on `[3, ∞)`.
pub fn analytic_bound_shifted_coeffs() -> Vec<BigInt> {
    let mut coeffs: Vec<BigInt> = [-100i64, 0, -340, 0, 92].iter().map(|&c| BigInt::from(c)).collect();
    // Taylor shift by 3 through repeated synthetic division
    let shift = BigInt::from(3);
    let deg = coeffs.len() - 1;
    for i in 0..deg {
        for j in (i..deg).rev() {
            let carry = &coeffs[j + 1] * &shift;
            coeffs[j] += carry;
        }
    }
    coeffs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityCertificate {
    pub submodule: Submodule,
    pub k_checked_max: u64,
    /// Signs of `Δ_0..Δ_{k_checked_max}`.
    pub exact_signs: Vec<Sign>,
    /// First `k` from which the analytic lower bound is claimed and checked.
    pub analytic_bound_from: Option<u64>,
    /// Whether the bound's positivity on `[3, ∞)` was certified through the
    /// shifted polynomial having only positive coefficients.
    pub analytic_all_k: bool,
}

impl MonotonicityCertificate {
    pub fn is_valid(&self) -> bool {
        self.exact_signs.iter().all(|s| *s == Sign::Positive)
            && (self.analytic_bound_from.is_none() || self.analytic_all_k)
    }
}

/// Exact signs of `Δ_0..Δ_{k_max}`; `Δ_0 = 1` from the Hilbert–Schmidt
/// identity. For `(z−w)²` the analytic lower bound is also checked on
/// `3 ≤ k ≤ k_max` and certified for all `k ≥ 3`. Fails with the smallest
/// offending `k`.
pub fn monotonicity_certificate(sub: Submodule, k_max: u64) -> Result<MonotonicityCertificate> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let cache = HarmonicCache::new(k_max);
    let signs: Vec<Result<Sign>> =
        (1..=k_max).into_par_iter().map(|k| delta_k_with(&cache, sub, k).and_then(|d| qpi2_sign(&d))).collect();
    let mut exact_signs = vec![Sign::Positive];
    for (k, s) in (1..=k_max).zip(signs) {
        match s? {
            Sign::Positive => exact_signs.push(Sign::Positive),
            _ => return Err(Error::CertificateFailure { first_k: k }),
        }
    }
    let (analytic_bound_from, analytic_all_k) = match sub {
        Submodule::Zw2 => {
            if let Some(k) = (3..=k_max.max(3)).find(|&k| !analytic_lower_bound_check(k).unwrap_or(false)) {
                return Err(Error::CertificateFailure { first_k: k });
            }
            (Some(3), analytic_bound_shifted_coeffs().iter().all(Signed::is_positive))
        }
        Submodule::Zw => (None, false),
    };
    Ok(MonotonicityCertificate {
        submodule: sub,
        k_checked_max: k_max,
        exact_signs,
        analytic_bound_from,
        analytic_all_k,
    })
}

/// Two-term asymptote: `92/(105k) + 46/(105k²)` for `(z−w)²` and
/// `1/(3k) + 1/(6k²)` for `z−w`.
pub fn two_term_asymptote(sub: Submodule, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("the asymptote is defined for k ≥ 1".into()));
    }
    let kk = int(k as i64);
    let (a, b) = match sub {
        Submodule::Zw2 => (rat(92, 105), rat(46, 105)),
        Submodule::Zw => (rat(1, 3), rat(1, 6)),
    };
    Ok(a / &kk + b / (&kk * &kk))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoteRow {
    pub k: u64,
    pub sigma: f64,
    pub asym: f64,
    pub residual_k3: f64,
}

/// `(Σ_k − asymptote)·k³`, formed in exact arithmetic from a π² enclosure
/// tight enough that the enclosure error is negligible, then rendered.
pub fn asymptote_row(sub: Submodule, k: u64, sigma: &PiQuadratic) -> Result<AsymptoteRow> {
    let asym = two_term_asymptote(sub, k)?;
    let approx = sigma.approx(default_pi2_digits().max(DEFAULT_PI2_DIGITS));
    let kk = int(k as i64);
    let residual = (&approx - &asym) * &kk * &kk * &kk;
    Ok(AsymptoteRow { k, sigma: to_f64(&approx), asym: to_f64(&asym), residual_k3: to_f64(&residual) })
}

pub fn asymptote_residual(sub: Submodule, k_lo: u64, k_hi: u64) -> Result<Vec<AsymptoteRow>> {
    if k_lo == 0 || k_lo >= k_hi {
        return Err(Error::Domain(format!("need 1 ≤ k_lo < k_hi, got [{k_lo}, {k_hi}]")));
    }
    let cache = HarmonicCache::new(k_hi);
    (k_lo..=k_hi).into_par_iter().map(|k| asymptote_row(sub, k, &sigma_closed_with(&cache, sub, k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_k(cache: &HarmonicCache, k: u64) -> PiQuadratic {
        PiQuadratic::zeta2_tail(cache.h2(k - 1))
    }

    fn encloses(iv: &RationalInterval, v: &PiQuadratic) -> bool {
        let below = v.clone() + (-iv.lo().clone());
        let above = PiQuadratic::rational(iv.hi().clone()) - v.clone();
        qpi2_sign(&below).unwrap() != Sign::Negative && qpi2_sign(&above).unwrap() != Sign::Negative
    }

    #[test]
    fn enclosure_examples() {
        let cache = HarmonicCache::new(20);
        let e1 = sk_enclosure(1, 3).unwrap();
        assert!(e1.interval.lo() < &rat(16449, 10000) && &rat(16450, 10000) < e1.interval.hi());
        assert!(encloses(&e1.interval, &s_k(&cache, 1)));
        let e3 = sk_enclosure(3, 3).unwrap();
        assert!(encloses(&e3.interval, &PiQuadratic::new(rat(1, 6), rat(-5, 4))));
        let e10 = sk_enclosure(10, 3).unwrap();
        assert!(e10.interval.width() <= Rational::new(1.into(), BigInt::from(42) * BigInt::from(10).pow(7)));
        assert_eq!(
            e10.interval.hi(),
            &(rat(1, 10) + rat(1, 200) + rat(1, 6000) - rat(1, 3_000_000) + rat(1, 420_000_000))
        );
        assert!(sk_enclosure(0, 3).is_err());
        assert!(sk_enclosure(4, 4).is_err());
    }

    #[test]
    fn enclosures_hold_for_every_order() {
        let cache = HarmonicCache::new(400);
        for k in 1..=400 {
            for order in 1..=3 {
                let e = sk_enclosure(k, order).unwrap();
                assert!(encloses(&e.interval, &s_k(&cache, k)), "k={k} order={order}");
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_k(Submodule::Zw2, 1).unwrap(), PiQuadratic::from_ratios((-176, 3), (580, 1)));
        assert_eq!(delta_k(Submodule::Zw, 1).unwrap(), PiQuadratic::from_ratios((-2, 3), (7, 1)));
        let d3 = delta_k(Submodule::Zw2, 3).unwrap();
        assert_eq!(
            d3,
            PiQuadratic::from_ratios((2906, 3), (-9560, 1)) - PiQuadratic::from_ratios((20138, 3), (-596260, 9))
        );
        for d in [&d3, &delta_k(Submodule::Zw2, 1).unwrap()] {
            assert_eq!(qpi2_sign(d).unwrap(), Sign::Positive);
        }
        assert!(delta_k(Submodule::Zw, 0).is_err());
    }

    #[test]
    fn delta_two_routes_and_bracketing() {
        let cache = HarmonicCache::new(101);
        for k in 1..=100 {
            let d = delta_k_with(&cache, Submodule::Zw2, k).unwrap();
            let e = sk_enclosure(k, 3).unwrap();
            let (r, t) = (r_of_k(k), t_of_k(k));
            let bracket = RationalInterval::hull(&r - &t * e.interval.hi(), &r - &t * e.interval.lo());
            assert!(encloses(&bracket, &d), "k={k}");
        }
    }

    #[test]
    fn analytic_bound_examples() {
        assert!(analytic_lower_bound_check(3).unwrap());
        assert!(analytic_lower_bound_check(100).unwrap());
        assert!(analytic_lower_bound_check(u64::MAX).unwrap());
        assert!(analytic_lower_bound_check(2).is_err());
        let shifted: Vec<i64> = analytic_bound_shifted_coeffs().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(shifted, vec![4292, 7896, 4628, 1104, 92]);
    }

    #[test]
    fn certificates() {
        let c = monotonicity_certificate(Submodule::Zw2, 1).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.exact_signs, vec![Sign::Positive, Sign::Positive]);
        let c = monotonicity_certificate(Submodule::Zw2, 60).unwrap();
        assert!(c.is_valid() && c.analytic_all_k);
        assert_eq!(c.analytic_bound_from, Some(3));
        let c = monotonicity_certificate(Submodule::Zw, 60).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.exact_signs.len(), 61);
    }

    #[test]
    fn asymptote_examples() {
        let a = two_term_asymptote(Submodule::Zw, 100).unwrap();
        assert_eq!(a, rat(1, 300) + rat(1, 60000));
        assert!((to_f64(&a) - 0.00335).abs() < 1e-6);
        let rows = asymptote_residual(Submodule::Zw, 100, 120).unwrap();
        assert!(rows.iter().all(|r| (0.05..=0.15).contains(&r.residual_k3)));
        let rows = asymptote_residual(Submodule::Zw2, 10, 40).unwrap();
        assert!(rows.iter().all(|r| r.residual_k3.abs() <= 10.0));
        assert!(asymptote_residual(Submodule::Zw, 5, 5).is_err());
    }
}
