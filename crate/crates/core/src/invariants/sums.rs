use num_traits::{One, Zero};

use super::pairing::{sigma_term_closed, PairingEngine};
use crate::arith::{harmonic, harmonic2, int, rat, HarmonicCache, PiQuadratic, Rational};
use crate::error::{Error, Result};
use crate::submodule::{Generator, Submodule};
use crate::toeplitz::{closed_cofactor_first_row_corner, closed_dn};

/// First `n` for which the closed term formula of `Σ_k` is nonzero; every
/// earlier pairing vanishes.
fn first_live_n(sub: Submodule, k: usize) -> usize {
    match sub {
        Submodule::Zw2 => k.saturating_sub(2),
        Submodule::Zw => k.saturating_sub(1),
    }
}

/// `Σ_{n=0}^N |⟨w^k φ_n, z^k ψ_n⟩|²`. `k = 0` goes through
/// `Σ_0 = Σ |A_{0,n}^n/D_n|²`; named submodules use the closed terms, other
/// symbols the exact cofactor engine.
pub fn sigma_partial(generator: &Generator, k: usize, n_max: usize) -> Result<Rational> {
    match generator {
        Generator::Named(sub) => Ok(sigma_partial_named(*sub, k, n_max)),
        Generator::Symbol(p) => {
            let engine = PairingEngine::new(p, n_max)?;
            Ok(sigma_partial_engine(&engine, k))
        }
    }
}

fn sigma_partial_named(sub: Submodule, k: usize, n_max: usize) -> Rational {
    if k == 0 {
        return (0..=n_max).fold(Rational::zero(), |acc, n| {
            let r = closed_cofactor_first_row_corner(sub, n) / closed_dn(sub, n);
            acc + &r * &r
        });
    }
    (first_live_n(sub, k)..=n_max).fold(Rational::zero(), |acc, n| {
        let t = sigma_term_closed(sub, k, n).expect("n is past the first live index");
        acc + &t * &t
    })
}

/// Partial sum from a prepared engine, using all `n ≤ engine.n_max()`.
pub fn sigma_partial_engine(engine: &PairingEngine, k: usize) -> Rational {
    (0..=engine.n_max()).fold(Rational::zero(), |acc, n| {
        let v = if k == 0 { engine.corner(n) / engine.det(n) } else { engine.pairing(n, k) };
        acc + &v * &v
    })
}

/// Certified `U ≥ Σ_{n>N} term²`.
///
/// `(z−w)²`: each term splits as `2(n+3−k)/((n+2)(n+3)) − 6k(k−1)(n+3−k)/((n+1)(n+2)(n+3)(n+4))`,
/// so for `n ≥ k−2` it is at most `2/(n+2) + 6k²/(n+1)³` in size; squaring
/// and comparing with integrals gives `4/(N+2) + 8k²/(N+1)³ + 36k⁴/(5(N+1)⁵)`
/// (just `4/(N+2)` at `k = 0`). `z−w`: each term is at most `1/(n+1)`, so
/// `U = 1/(N+1)`.
pub fn sigma_tail_bound(sub: Submodule, k: usize, n_trunc: usize) -> Result<Rational> {
    if n_trunc < first_live_n(sub, k) {
        return Err(Error::Domain(format!(
            "tail bound for {sub} at k = {k} needs N ≥ {}, got {n_trunc}",
            first_live_n(sub, k)
        )));
    }
    let n = int(n_trunc as i64);
    Ok(match sub {
        Submodule::Zw => Rational::one() / (n + int(1)),
        Submodule::Zw2 => {
            let base = int(4) / (&n + int(2));
            if k == 0 {
                base
            } else {
                let kk = int(k as i64);
                let k2 = &kk * &kk;
                let m = &n + int(1);
                let m3 = &m * &m * &m;
                let m5 = &m3 * &m * &m;
                base + int(8) * &k2 / m3 + int(36) * &k2 * &k2 / (int(5) * m5)
            }
        }
    })
}

/// Tail bound for any generator: the named bounds, 0 for monomial symbols
/// (every pairing past `n = 0` vanishes), and `None` when no certified
/// bound is available.
pub fn sigma_tail_bound_for(generator: &Generator, k: usize, n_trunc: usize) -> Result<Option<Rational>> {
    match generator {
        Generator::Named(sub) => sigma_tail_bound(*sub, k, n_trunc).map(Some),
        Generator::Symbol(p) if p.is_monomial() => Ok(Some(Rational::zero())),
        Generator::Symbol(_) => Ok(None),
    }
}

/// `Σ_{m≥1} (Σ_j A_j/(m + n_j))²` with pairwise distinct shifts `n_j ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionSpec {
    amps: Vec<Rational>,
    shifts: Vec<u64>,
}

impl PartialFractionSpec {
    pub fn new(amps: Vec<Rational>, shifts: Vec<u64>) -> Result<Self> {
        if amps.len() != shifts.len() {
            return Err(Error::DimensionMismatch { expected: amps.len(), found: shifts.len() });
        }
        let mut sorted = shifts.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateShifts);
        }
        Ok(PartialFractionSpec { amps, shifts })
    }

    pub fn amps(&self) -> &[Rational] {
        &self.amps
    }

    pub fn shifts(&self) -> &[u64] {
        &self.shifts
    }

    /// `Σ_j A_j/(m + n_j)`.
    pub fn eval(&self, m: u64) -> Rational {
        self.amps.iter().zip(&self.shifts).fold(Rational::zero(), |acc, (a, s)| acc + a / int((m + s) as i64))
    }
}

/// Amplitudes `A_0..A_3` and shifts `n_j = k−2+j` for
/// `m((m+k−2)(m+k+1)−3k²+3k)/((m+k−2)(m+k−1)(m+k)(m+k+1))`, whose square
/// times 4 is the summand of `Σ_k` for `(z−w)²` at `m = n+3−k`.
pub fn pf_coefficients_zw2(k: u64) -> Result<PartialFractionSpec> {
    if k <= 1 {
        return Err(Error::Domain(format!("partial fractions need k ≥ 2 for nonnegative shifts, got {k}")));
    }
    let kk = int(k as i64);
    let k2 = &kk * &kk;
    let k3 = &k2 * &kk;
    let half = rat(1, 2);
    let amps = vec![
        &half * (&k3 - int(3) * &k2 + int(2) * &kk),
        &half * (int(-3) * &k3 + int(6) * &k2 - int(5) * &kk + int(2)),
        &half * (int(3) * &k3 - int(3) * &k2 + int(2) * &kk),
        &half * (-&k3 + &kk),
    ];
    PartialFractionSpec::new(amps, (0..4).map(|j| k - 2 + j).collect())
}

/// `Σ_j A_j²(ζ(2) − H_{n_j}^{(2)}) + 2Σ_{j<l} A_j A_l (H_{n_l} − H_{n_j})/(n_l − n_j)`.
pub fn squared_pf_sum(spec: &PartialFractionSpec) -> PiQuadratic {
    let mut out = PiQuadratic::zero();
    for (j, (aj, nj)) in spec.amps.iter().zip(&spec.shifts).enumerate() {
        out = out + PiQuadratic::zeta2_tail(&harmonic2(*nj)).scale(&(aj * aj));
        for (al, nl) in spec.amps.iter().zip(&spec.shifts).skip(j + 1) {
            let diff = int(*nl as i64 - *nj as i64);
            let cross = (harmonic(*nl) - harmonic(*nj)) / diff * aj * al * int(2);
            out = out + cross;
        }
    }
    out
}

/// Ascending coefficients of `P(k)` and `Q(k)` in `Σ_k = P(k)·S_k − Q(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Zw2Polynomials {
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
}

impl Zw2Polynomials {
    pub(crate) fn standard() -> Self {
        let p = [2, -10, 29, -48, 49, -30, 10].iter().map(|&c| int(2 * c)).collect();
        let q = [-15, 77, -171, 214, -150, 60].iter().map(|&c| rat(c, 3)).collect();
        Zw2Polynomials { p, q }
    }

    fn horner(coeffs: &[Rational], k: u64) -> Rational {
        let kk = int(k as i64);
        coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &kk + c)
    }

    pub(crate) fn p_at(&self, k: u64) -> Rational {
        Self::horner(&self.p, k)
    }

    pub(crate) fn q_at(&self, k: u64) -> Rational {
        Self::horner(&self.q, k)
    }

    /// `P(k)·S_k − Q(k)` given `H_{k−1}^{(2)}`.
    pub(crate) fn sigma(&self, k: u64, h2_prev: &Rational) -> PiQuadratic {
        PiQuadratic::zeta2_tail(h2_prev).scale(&self.p_at(k)) + (-self.q_at(k))
    }
}

/// `P(k) = 2(10k⁶ − 30k⁵ + 49k⁴ − 48k³ + 29k² − 10k + 2)`.
pub fn zw2_p(k: u64) -> Rational {
    Zw2Polynomials::standard().p_at(k)
}

/// `Q(k) = (60k⁵ − 150k⁴ + 214k³ − 171k² + 77k − 15)/3`.
pub fn zw2_q(k: u64) -> Rational {
    Zw2Polynomials::standard().q_at(k)
}

/// `Σ_k` in closed form: `(2/3)π² − 4` at `k = 0` and `P(k)S_k − Q(k)`
/// beyond for `(z−w)²`; `π²/6` at `k = 0` and `(2k²−2k+1)S_k − (2k−1)`
/// beyond for `z−w`. Here `S_k = π²/6 − H_{k−1}^{(2)}`.
pub fn sigma_closed(sub: Submodule, k: u64) -> PiQuadratic {
    sigma_closed_from(sub, k, &harmonic2(k.saturating_sub(1)))
}

/// [`sigma_closed`] reading `H_{k−1}^{(2)}` from a cache with
/// `max_n ≥ k − 1`.
pub fn sigma_closed_with(cache: &HarmonicCache, sub: Submodule, k: u64) -> PiQuadratic {
    sigma_closed_from(sub, k, cache.h2(k.saturating_sub(1)))
}

fn sigma_closed_from(sub: Submodule, k: u64, h2_prev: &Rational) -> PiQuadratic {
    match (sub, k) {
        (Submodule::Zw2, 0) => PiQuadratic::from_ratios((2, 3), (-4, 1)),
        (Submodule::Zw2, _) => Zw2Polynomials::standard().sigma(k, h2_prev),
        (Submodule::Zw, 0) => PiQuadratic::zeta2(),
        (Submodule::Zw, _) => {
            let kk = int(k as i64);
            let lead = int(2) * &kk * &kk - int(2) * &kk + int(1);
            PiQuadratic::zeta2_tail(h2_prev).scale(&lead) + (int(1) - int(2) * kk)
        }
    }
}

/// `(Σ_0, Σ_1, ‖C‖²_HS = Σ_0 + Σ_1)`, after checking `Σ_0 − Σ_1 = 1`.
pub fn hs_identities(sub: Submodule) -> Result<(PiQuadratic, PiQuadratic, PiQuadratic)> {
    let s0 = sigma_closed(sub, 0);
    let s1 = sigma_closed(sub, 1);
    if &s0 - &s1 != PiQuadratic::rational(Rational::one()) {
        return Err(Error::IdentityViolation(format!("Σ_0 − Σ_1 = {} for {sub}", &s0 - &s1)));
    }
    let hs = &s0 + &s1;
    Ok((s0, s1, hs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qpi2_sign, Sign};
    use proptest::prelude::*;

    fn pq(a: (i64, i64), b: (i64, i64)) -> PiQuadratic {
        PiQuadratic::from_ratios(a, b)
    }

    #[test]
    fn partial_sum_examples() {
        let zw2 = Generator::Named(Submodule::Zw2);
        let zw = Generator::Named(Submodule::Zw);
        assert_eq!(sigma_partial(&zw2, 0, 0).unwrap(), int(1));
        assert_eq!(sigma_partial(&zw, 1, 1).unwrap(), rat(13, 36));
        assert_eq!(sigma_partial(&zw2, 0, 2).unwrap(), rat(61, 36));
    }

    #[test]
    fn named_and_generic_partial_sums_agree() {
        for sub in Submodule::ALL {
            let raw = Generator::Symbol(sub.symbol());
            for k in 0..=6 {
                assert_eq!(
                    sigma_partial(&Generator::Named(sub), k, 15).unwrap(),
                    sigma_partial(&raw, k, 15).unwrap(),
                    "{sub} k={k}"
                );
            }
        }
    }

    #[test]
    fn tail_bound_examples() {
        assert_eq!(sigma_tail_bound(Submodule::Zw, 1, 9).unwrap(), rat(1, 10));
        assert_eq!(sigma_tail_bound(Submodule::Zw2, 0, 8).unwrap(), rat(2, 5));
        assert!(sigma_tail_bound(Submodule::Zw2, 6, 3).is_err());
        assert!(sigma_tail_bound(Submodule::Zw, 6, 4).is_err());
        let z: crate::HomogeneousSymbol = "0,0,1".parse().unwrap();
        assert_eq!(sigma_tail_bound_for(&Generator::Symbol(z), 3, 10).unwrap(), Some(int(0)));
        let p: crate::HomogeneousSymbol = "1,1".parse().unwrap();
        assert_eq!(sigma_tail_bound_for(&Generator::Symbol(p), 3, 10).unwrap(), None);
    }

    #[test]
    fn squared_pf_examples() {
        let spec =
            |a: &[i64], n: &[u64]| PartialFractionSpec::new(a.iter().map(|&x| int(x)).collect(), n.to_vec()).unwrap();
        assert_eq!(squared_pf_sum(&spec(&[1], &[0])), pq((1, 6), (0, 1)));
        assert_eq!(squared_pf_sum(&spec(&[1], &[1])), pq((1, 6), (-1, 1)));
        assert_eq!(squared_pf_sum(&spec(&[1, -1], &[0, 1])), pq((1, 3), (-3, 1)));
        assert_eq!(PartialFractionSpec::new(vec![int(1), int(2)], vec![3, 3]), Err(Error::DuplicateShifts));
    }

    #[test]
    fn pf_coefficient_examples() {
        assert_eq!(pf_coefficients_zw2(2).unwrap().amps()[0], int(0));
        assert_eq!(pf_coefficients_zw2(3).unwrap().amps()[0], int(3));
        assert!(pf_coefficients_zw2(1).is_err());
        for k in 2..=30 {
            let spec = pf_coefficients_zw2(k).unwrap();
            // the decomposed function tends to 1 as m → ∞, so Σ A_j = 1
            let sum: Rational = spec.amps().iter().sum();
            assert_eq!(sum, int(1), "k={k}");
        }
    }

    #[test]
    fn pf_reproduces_term_formula() {
        for k in 2..=12u64 {
            let spec = pf_coefficients_zw2(k).unwrap();
            for m in 1..=20u64 {
                let n = (m + k - 3) as usize;
                let t = sigma_term_closed(Submodule::Zw2, k as usize, n).unwrap();
                assert_eq!(int(2) * spec.eval(m), t, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(sigma_closed(Submodule::Zw2, 0), pq((2, 3), (-4, 1)));
        assert_eq!(sigma_closed(Submodule::Zw2, 1), pq((2, 3), (-5, 1)));
        assert_eq!(sigma_closed(Submodule::Zw2, 2), pq((178, 3), (-585, 1)));
        assert_eq!(sigma_closed(Submodule::Zw2, 3), pq((2906, 3), (-9560, 1)));
        assert_eq!(sigma_closed(Submodule::Zw, 0), pq((1, 6), (0, 1)));
        assert_eq!(sigma_closed(Submodule::Zw, 1), pq((1, 6), (-1, 1)));
        assert_eq!(sigma_closed(Submodule::Zw, 2), pq((5, 6), (-8, 1)));
        assert_eq!(sigma_closed(Submodule::Zw, 3), pq((13, 6), (-85, 4)));
        assert_eq!(sigma_closed(Submodule::Zw2, 4), pq((20138, 3), (-596260, 9)));
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(zw2_p(3), int(5812));
        assert_eq!(zw2_p(4), int(40276));
        assert_eq!(zw2_q(4), int(11431));
        let cache = HarmonicCache::new(50);
        for sub in Submodule::ALL {
            for k in 0..=50 {
                assert_eq!(sigma_closed_with(&cache, sub, k), sigma_closed(sub, k));
            }
        }
    }

    #[test]
    fn series_equals_closed_form() {
        for k in 2..=40u64 {
            let series = squared_pf_sum(&pf_coefficients_zw2(k).unwrap()).scale(&int(4));
            assert_eq!(series, sigma_closed(Submodule::Zw2, k), "k={k}");
        }
    }

    #[test]
    fn hs_identity_values() {
        let (s0, s1, hs) = hs_identities(Submodule::Zw2).unwrap();
        assert_eq!(&s0 - &s1, PiQuadratic::rational(int(1)));
        assert_eq!(hs, pq((4, 3), (-9, 1)));
        let (s0, s1, hs) = hs_identities(Submodule::Zw).unwrap();
        assert_eq!((s0, s1), (pq((1, 6), (0, 1)), pq((1, 6), (-1, 1))));
        assert_eq!(hs, pq((1, 3), (-1, 1)));
    }

    #[test]
    fn closed_form_encloses_partial_sums() {
        for sub in Submodule::ALL {
            for k in 0..=20usize {
                for n in [10usize, 100] {
                    let n = n.max(k);
                    let partial = sigma_partial(&Generator::Named(sub), k, n).unwrap();
                    let gap = sigma_closed(sub, k as u64) + (-partial);
                    let tail = sigma_tail_bound(sub, k, n).unwrap();
                    assert_ne!(qpi2_sign(&gap).unwrap(), Sign::Negative, "{sub} k={k} N={n}");
                    let slack = PiQuadratic::rational(tail) - gap;
                    assert_ne!(qpi2_sign(&slack).unwrap(), Sign::Negative, "{sub} k={k} N={n}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn partial_sums_are_monotone(k in 0usize..12, n in 0usize..40) {
            for sub in Submodule::ALL {
                let g = Generator::Named(sub);
                prop_assert!(sigma_partial(&g, k, n).unwrap() <= sigma_partial(&g, k, n + 1).unwrap());
            }
        }
    }
}
