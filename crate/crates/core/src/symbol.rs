//! Homogeneous symbols `p = Σ c_j z^j w^{k−j}`, their autocorrelations, the
//! Toeplitz Gram matrices `A^n`, and the monomial inner product on `H²(D²)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;

/// Degree-`k` homogeneous polynomial with rational coefficients `c_0..c_k`,
/// `c_j` multiplying `z^j w^{k−j}`. Never identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousSymbol {
    coeffs: Vec<Rational>,
}

impl HomogeneousSymbol {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSymbol("no coefficients".into()));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidSymbol("the zero polynomial generates no submodule".into()));
        }
        Ok(HomogeneousSymbol { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        HomogeneousSymbol::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True when exactly one coefficient is nonzero (`p = c·z^j w^{k−j}`).
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// `a_m = ⟨p w^m, p z^m⟩ = Σ_i c_{i+m} c_i`, extended by `a_{−m} = a_m`.
    pub fn autocorrelation(&self, m: i64) -> Rational {
        let m = m.unsigned_abs() as usize;
        if m > self.degree() {
            return Rational::zero();
        }
        (0..=self.degree() - m).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i + m] * &self.coeffs[i])
    }

    pub fn autocorrelations(&self) -> AutocorrelationSeq {
        AutocorrelationSeq::new((0..=self.degree() as i64).map(|m| self.autocorrelation(m)).collect())
    }

    /// The `(n+1)×(n+1)` Toeplitz Gram matrix `A^n`, entry `(i, j) = a_{i−j}`.
    pub fn gram_matrix(&self, n: usize) -> ToeplitzGram {
        self.autocorrelations().gram_matrix(n)
    }

    pub fn to_poly(&self) -> BivariatePoly {
        let k = self.degree() as u32;
        let mut p = BivariatePoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            p.add_term(j as u32, k - j as u32, c.clone());
        }
        p
    }
}

impl FromStr for HomogeneousSymbol {
    type Err = Error;

    /// Parses `"c_0,c_1,...,c_k"`, each entry an integer or `a/b`.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                Rational::from_str(tok).map_err(|_| Error::InvalidSymbol(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HomogeneousSymbol::new(coeffs)
    }
}

impl fmt::Display for HomogeneousSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `a_0..a_d` of a symbol; `a_m` for `m < 0` is read through symmetry and
/// vanishes for `|m| > d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutocorrelationSeq {
    values: Vec<Rational>,
}

impl AutocorrelationSeq {
    pub fn new(values: Vec<Rational>) -> Self {
        AutocorrelationSeq { values }
    }

    pub fn get(&self, m: i64) -> Rational {
        self.get_ref(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Borrowing accessor; `None` where the coefficient is structurally zero.
    pub fn get_ref(&self, m: i64) -> Option<&Rational> {
        self.values.get(m.unsigned_abs() as usize)
    }

    /// Largest `m` with `a_m ≠ 0`.
    pub fn bandwidth(&self) -> usize {
        self.values.iter().rposition(|v| !v.is_zero()).unwrap_or(0)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn gram_matrix(&self, n: usize) -> ToeplitzGram {
        let matrix = RatMatrix::from_fn(n + 1, n + 1, |i, j| self.get(i as i64 - j as i64));
        ToeplitzGram { n, matrix }
    }

    /// `a_0 > 0` and `|a_m| ≤ a_0`.
    pub fn is_admissible(&self) -> bool {
        let a0 = &self.values[0];
        a0.is_positive() && self.values.iter().all(|v| v.abs() <= *a0)
    }
}

/// `A^n`: symmetric Toeplitz, `(n+1)×(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzGram {
    n: usize,
    matrix: RatMatrix,
}

impl ToeplitzGram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.matrix
    }
}

/// Polynomial in `z, w` keyed by `(z-exponent, w-exponent)`; zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn monomial(z_exp: u32, w_exp: u32, coeff: Rational) -> Self {
        let mut p = BivariatePoly::zero();
        p.add_term(z_exp, w_exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = BivariatePoly::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, z_exp: u32, w_exp: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = (z_exp, w_exp);
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, z_exp: u32, w_exp: u32) -> Rational {
        self.terms.get(&(z_exp, w_exp)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift(&self, dz: u32, dw: u32) -> Self {
        BivariatePoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + dz, b + dw), c.clone())).collect() }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &BivariatePoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&(a, b), v) in &other.terms {
            self.add_term(a, b, v * c);
        }
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&(a, b), c)| format!("({c})z^{a}w^{b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Inner product of `H²(D²)` on polynomials: the monomials `z^a w^b` are
/// orthonormal, so this is the coefficient dot product (real coefficients).
pub fn h2_inner(q1: &BivariatePoly, q2: &BivariatePoly) -> Rational {
    let (small, large) = if q1.terms.len() <= q2.terms.len() { (q1, q2) } else { (q2, q1) };
    small.terms.iter().filter_map(|(k, c)| large.terms.get(k).map(|d| c * d)).fold(Rational::zero(), |acc, v| acc + v)
}

/// Unnormalised defect-space vectors
/// `Φ_n = Σ_j cof0[j]·p·z^j w^{n−j}` and `Ψ_n = Σ_j cofn[j]·p·z^j w^{n−j}`,
/// where `cof0`, `cofn` are the first and last cofactor rows of `A^n`.
/// Both have squared norm `D_n·D_{n+1}`.
pub fn defect_basis_unnormalized(
    p: &HomogeneousSymbol,
    n: usize,
    cof0: &[Rational],
    cofn: &[Rational],
) -> Result<(BivariatePoly, BivariatePoly)> {
    for row in [cof0, cofn] {
        if row.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, found: row.len() });
        }
    }
    let base = p.to_poly();
    let mut phi = BivariatePoly::zero();
    let mut psi = BivariatePoly::zero();
    for j in 0..=n {
        let shifted = base.shift(j as u32, (n - j) as u32);
        phi.add_scaled(&shifted, &cof0[j]);
        psi.add_scaled(&shifted, &cofn[j]);
    }
    Ok((phi, psi))
}

impl One for BivariatePoly {
    fn one() -> Self {
        BivariatePoly::monomial(0, 0, Rational::one())
    }
}

impl std::ops::Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        BivariatePoly::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn zw() -> HomogeneousSymbol {
        HomogeneousSymbol::from_integers(&[-1, 1]).unwrap()
    }

    fn zw2() -> HomogeneousSymbol {
        HomogeneousSymbol::from_integers(&[1, -2, 1]).unwrap()
    }

    #[test]
    fn autocorrelation_examples() {
        let p = zw2();
        let got: Vec<_> = (0..=2).map(|m| p.autocorrelation(m)).collect();
        assert_eq!(got, vec![int(6), int(-4), int(1)]);
        assert_eq!(p.autocorrelation(3), int(0));
        assert_eq!(zw().autocorrelation(0), int(2));
        assert_eq!(zw().autocorrelation(1), int(-1));
        let z3 = HomogeneousSymbol::from_integers(&[0, 0, 0, 1]).unwrap();
        assert_eq!(z3.autocorrelation(0), int(1));
        for m in 1..=5 {
            assert_eq!(z3.autocorrelation(m), int(0));
            assert_eq!(z3.autocorrelation(-m), int(0));
        }
    }

    #[test]
    fn autocorrelation_is_symmetric() {
        let p: HomogeneousSymbol = "3/2,-1,0,5,2/7".parse().unwrap();
        for m in 0..=4 {
            assert_eq!(p.autocorrelation(m), p.autocorrelation(-m));
        }
        assert!(p.autocorrelations().is_admissible());
    }

    #[test]
    fn gram_examples() {
        let g = zw2().gram_matrix(2);
        assert_eq!(g.matrix(), &RatMatrix::from_i64_rows(&[&[6, -4, 1], &[-4, 6, -4], &[1, -4, 6]]).unwrap());
        let g = zw().gram_matrix(1);
        assert_eq!(g.matrix(), &RatMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]]).unwrap());
        let p: HomogeneousSymbol = "1/2,3".parse().unwrap();
        let g0 = p.gram_matrix(0);
        assert_eq!(g0.size(), 1);
        assert_eq!(g0.entry(0, 0), &rat(37, 4));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("".parse::<HomogeneousSymbol>().is_err());
        assert!("0,0,0".parse::<HomogeneousSymbol>().is_err());
        assert!("1,x".parse::<HomogeneousSymbol>().is_err());
        assert_eq!("1, -2, 1".parse::<HomogeneousSymbol>().unwrap(), zw2());
        assert_eq!(zw2().to_string(), "1,-2,1");
    }

    #[test]
    fn h2_inner_examples() {
        let p = zw().to_poly();
        assert_eq!(h2_inner(&p, &p), int(2));
        let zw_mono = BivariatePoly::monomial(1, 1, int(1));
        let z2 = BivariatePoly::monomial(2, 0, int(1));
        assert_eq!(h2_inner(&zw_mono, &z2), int(0));
        let q = zw2().to_poly();
        assert_eq!(h2_inner(&q.shift(0, 1), &q.shift(1, 0)), int(-4));
    }

    #[test]
    fn gram_entries_match_inner_product_oracle() {
        // ⟨p z^j w^{n−j}, p z^i w^{n−i}⟩ = a_{i−j}
        for p in [zw(), zw2(), "2,0,-1,3".parse().unwrap()] {
            let base = p.to_poly();
            for n in 0..=20usize {
                let g = p.gram_matrix(n);
                for i in 0..=n {
                    for j in 0..=n {
                        let u = base.shift(j as u32, (n - j) as u32);
                        let v = base.shift(i as u32, (n - i) as u32);
                        assert_eq!(&h2_inner(&u, &v), g.entry(i, j), "n={n} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn defect_basis_small_cases() {
        let p = zw2();
        let (phi, psi) = defect_basis_unnormalized(&p, 0, &[int(1)], &[int(1)]).unwrap();
        assert_eq!(phi, p.to_poly());
        assert_eq!(psi, p.to_poly());
        // z − w, n = 1: first cofactor row of [[2,−1],[−1,2]] is (2, 1)
        let (phi, _) = defect_basis_unnormalized(&zw(), 1, &[int(2), int(1)], &[int(1), int(2)]).unwrap();
        assert_eq!(h2_inner(&phi, &phi), int(6));
        assert_eq!(
            defect_basis_unnormalized(&zw(), 1, &[int(2)], &[int(1), int(2)]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn poly_product() {
        let a = BivariatePoly::from_terms([((1, 0), int(1)), ((0, 1), int(-1))]);
        let sq = a.clone() * a;
        assert_eq!(sq, zw2().to_poly());
        assert_eq!(sq.clone() * BivariatePoly::one(), sq);
    }
}
