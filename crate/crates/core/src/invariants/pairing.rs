use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::submodule::Submodule;
use crate::symbol::{AutocorrelationSeq, HomogeneousSymbol};
use crate::toeplitz::{closed_cofactor_first_row_corner, closed_cofactor_last_row, closed_dn, GramFactorization};

/// `⟨w^k φ_n, z^k ψ_n⟩` at one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingValue {
    pub n: usize,
    pub k: usize,
    pub value: Rational,
}

/// Last cofactor rows and determinants of `A^0..A^N` for one symbol, shared
/// across every pairing with `n ≤ N`.
#[derive(Debug, Clone)]
pub struct PairingEngine {
    autocorr: AutocorrelationSeq,
    factor: GramFactorization,
    last_rows: Vec<Vec<Rational>>,
}

impl PairingEngine {
    pub fn new(p: &HomogeneousSymbol, n_max: usize) -> Result<Self> {
        let autocorr = p.autocorrelations();
        let factor = GramFactorization::new(&autocorr, n_max)?;
        if factor.dets().iter().any(Zero::is_zero) {
            let n = factor.dets().iter().position(Zero::is_zero).unwrap_or(0);
            return Err(Error::SingularGram { size: n });
        }
        let last_rows = (0..=n_max).into_par_iter().map(|n| factor.last_row_cofactors(n)).collect();
        Ok(PairingEngine { autocorr, factor, last_rows })
    }

    pub fn n_max(&self) -> usize {
        self.last_rows.len() - 1
    }

    /// `D_n` for `n ≤ n_max + 1`.
    pub fn det(&self, n: usize) -> &Rational {
        self.factor.det(n)
    }

    /// `(A_{n,0}^n, …, A_{n,n}^n)`.
    pub fn last_row(&self, n: usize) -> &[Rational] {
        &self.last_rows[n]
    }

    /// `A_{0,n}^n`, equal to `A_{n,0}^n` by persymmetry.
    pub fn corner(&self, n: usize) -> &Rational {
        &self.last_rows[n][0]
    }

    /// `(1/(D_n D_{n+1}))·Σ_{i,j} A_{0,i}^n a_{j+k−i} A_{n,j}^n`, with the
    /// first row read off the last one through `A_{0,i}^n = A_{n,n−i}^n`.
    pub fn pairing(&self, n: usize, k: usize) -> Rational {
        let row = &self.last_rows[n];
        let band = self.autocorr.bandwidth() as i64;
        let (n_i, k_i) = (n as i64, k as i64);
        let mut total = Rational::zero();
        for (j, a_nj) in row.iter().enumerate() {
            if a_nj.is_zero() {
                continue;
            }
            let centre = j as i64 + k_i;
            let lo = (centre - band).max(0);
            let hi = (centre + band).min(n_i);
            let mut inner = Rational::zero();
            for i in lo..=hi {
                let a = self.autocorr.get(centre - i);
                let first = &row[(n_i - i) as usize];
                if !a.is_zero() && !first.is_zero() {
                    inner += a * first;
                }
            }
            if !inner.is_zero() {
                total += inner * a_nj;
            }
        }
        total / (self.factor.det(n) * self.factor.det(n + 1))
    }

    /// Pairings for `0 ≤ n ≤ n_max` at a fixed `k`.
    pub fn pairings(&self, k: usize) -> Vec<PairingValue> {
        (0..=self.n_max()).into_par_iter().map(|n| PairingValue { n, k, value: self.pairing(n, k) }).collect()
    }
}

pub fn pairing_generic(p: &HomogeneousSymbol, n: usize, k: usize) -> Result<Rational> {
    Ok(PairingEngine::new(p, n)?.pairing(n, k))
}

fn last_or_zero(n: usize, j: i64) -> Rational {
    if j < 0 || j > n as i64 {
        Rational::zero()
    } else {
        closed_cofactor_last_row(Submodule::Zw2, n, j as usize).expect("index checked")
    }
}

/// Case table for `(z−w)²` assembled from the closed determinants and
/// cofactors: `A_{n,0}^n/D_n` at `k = 0`, zero for `k ≥ n+3`,
/// `A_{0,n}^n A_{n,0}^n/(D_n D_{n+1})` at `k = n+2`, and
/// `(−A_{0,n+1}^{n+1} A_{n,n+1−k}^n + A_{0,n}^n A_{n,n+2−k}^n)/(D_n D_{n+1})`
/// for `1 ≤ k ≤ n+1`, where out-of-range cofactors vanish.
pub fn pairing_cases_zw2(n: usize, k: usize) -> Rational {
    let sub = Submodule::Zw2;
    let d_n = closed_dn(sub, n);
    if k == 0 {
        return last_or_zero(n, 0) / d_n;
    }
    if k >= n + 3 {
        return Rational::zero();
    }
    let denom = &d_n * closed_dn(sub, n + 1);
    let corner = closed_cofactor_first_row_corner(sub, n);
    if k == n + 2 {
        return &corner * last_or_zero(n, 0) / denom;
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let lead = closed_cofactor_first_row_corner(sub, n + 1) * last_or_zero(n, n_i + 1 - k_i);
    let tail = corner * last_or_zero(n, n_i + 2 - k_i);
    (tail - lead) / denom
}

/// Signed term whose square is the `n`-th summand of `Σ_k`:
/// `2(n+3−k)(n²+5n+4+3k−3k²)/((n+1)(n+2)(n+3)(n+4))` for `(z−w)²` with
/// `n ≥ k−2`, and `(n+2−k)/((n+1)(n+2))` for `z−w` with `n ≥ k−1`; `k ≥ 1`.
pub fn sigma_term_closed(sub: Submodule, k: usize, n: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("the closed term formulas start at k = 1".into()));
    }
    let (n, k) = (int(n as i64), int(k as i64));
    match sub {
        Submodule::Zw2 => {
            if n < &k - int(2) {
                return Err(Error::Domain(format!("(z−w)² term needs n ≥ k − 2, got n = {n}, k = {k}")));
            }
            let num = int(2) * (&n + int(3) - &k) * (&n * &n + int(5) * &n + int(4) + int(3) * &k - int(3) * &k * &k);
            let den = (&n + int(1)) * (&n + int(2)) * (&n + int(3)) * (&n + int(4));
            Ok(num / den)
        }
        Submodule::Zw => {
            if n < &k - int(1) {
                return Err(Error::Domain(format!("z−w term needs n ≥ k − 1, got n = {n}, k = {k}")));
            }
            Ok((&n + int(2) - &k) / ((&n + int(1)) * (&n + int(2))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::symbol::h2_inner;
    use crate::toeplitz::{first_row_cofactors, last_row_cofactors};

    fn zw2() -> HomogeneousSymbol {
        Submodule::Zw2.symbol()
    }

    #[test]
    fn generic_examples() {
        assert_eq!(pairing_generic(&zw2(), 0, 0).unwrap(), int(1));
        assert_eq!(pairing_generic(&zw2(), 0, 2).unwrap(), rat(1, 6));
        assert_eq!(pairing_generic(&zw2(), 1, 2).unwrap(), rat(-2, 15));
    }

    #[test]
    fn case_table_examples() {
        assert_eq!(pairing_cases_zw2(2, 7), int(0));
        assert_eq!(pairing_cases_zw2(0, 1), rat(-2, 3));
        assert_eq!(pairing_cases_zw2(1, 2), rat(-2, 15));
        assert_eq!(pairing_cases_zw2(0, 0), int(1));
    }

    #[test]
    fn term_examples() {
        assert_eq!(sigma_term_closed(Submodule::Zw2, 1, 0).unwrap(), rat(2, 3));
        assert_eq!(sigma_term_closed(Submodule::Zw2, 2, 0).unwrap(), rat(-1, 6));
        assert_eq!(sigma_term_closed(Submodule::Zw, 1, 2).unwrap(), rat(1, 4));
        assert!(sigma_term_closed(Submodule::Zw2, 5, 2).is_err());
        assert!(sigma_term_closed(Submodule::Zw, 3, 1).is_err());
        assert!(sigma_term_closed(Submodule::Zw, 0, 1).is_err());
    }

    /// Oracle: expand `w^k Φ_n` and `z^k Ψ_n` as polynomials and take the
    /// monomial inner product, normalising by `D_n D_{n+1}`.
    fn pairing_by_polynomials(p: &HomogeneousSymbol, n: usize, k: usize) -> Rational {
        let first = first_row_cofactors(p, n).unwrap();
        let last = last_row_cofactors(p, n).unwrap();
        let (phi, psi) = crate::symbol::defect_basis_unnormalized(p, n, &first.values, &last.values).unwrap();
        h2_inner(&phi.shift(0, k as u32), &psi.shift(k as u32, 0)) / (first.det_n() * &first.det_next)
    }

    #[test]
    fn engine_matches_polynomial_oracle() {
        for s in ["1,-2,1", "-1,1", "2,1,-3", "1/2,0,1"] {
            let p: HomogeneousSymbol = s.parse().unwrap();
            let engine = PairingEngine::new(&p, 7).unwrap();
            for n in 0..=7 {
                for k in 0..=10 {
                    assert_eq!(engine.pairing(n, k), pairing_by_polynomials(&p, n, k), "{s} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn cases_equal_generic_with_sign() {
        let engine = PairingEngine::new(&zw2(), 12).unwrap();
        for n in 0..=12 {
            for k in 0..=16 {
                assert_eq!(pairing_cases_zw2(n, k), engine.pairing(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn monomial_symbol_pairings_vanish() {
        let p: HomogeneousSymbol = "0,1".parse().unwrap();
        let engine = PairingEngine::new(&p, 10).unwrap();
        assert_eq!(engine.pairing(0, 0), int(1));
        for n in 0..=10 {
            for k in 0..=5 {
                if n + k > 0 {
                    assert!(engine.pairing(n, k).is_zero());
                }
            }
        }
    }
}
