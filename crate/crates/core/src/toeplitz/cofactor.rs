use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::det::GramFactorization;
use super::fisher_hartwig::{fh_determinant, FhParams};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::symbol::{AutocorrelationSeq, HomogeneousSymbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSelector {
    First,
    Last,
}

/// How a cofactor row was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CofactorRoute {
    /// Polynomial ansatz for `|1 − z|^{2α}`-type symbols, verified on every row.
    Ansatz,
    /// Banded solve of `A^n x = e_n`.
    LinearSolve,
}

/// A full cofactor row of `A^n`, together with `D_{n+1} = det A^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofactorRow {
    pub n: usize,
    pub row: RowSelector,
    pub values: Vec<Rational>,
    pub det_next: Rational,
    pub route: CofactorRoute,
}

impl CofactorRow {
    /// `D_n`, the diagonal cofactor of the selected row.
    pub fn det_n(&self) -> &Rational {
        match self.row {
            RowSelector::First => &self.values[0],
            RowSelector::Last => &self.values[self.n],
        }
    }
}

/// `Σ_j a_{i−j}·values[j] = δ_{i,target}·det_next` for every row `i`.
pub(crate) fn satisfies_expansion(
    ac: &AutocorrelationSeq,
    values: &[Rational],
    target: usize,
    det_next: &Rational,
) -> bool {
    let n = values.len() - 1;
    let band = ac.bandwidth();
    (0..=n).all(|i| {
        let lo = i.saturating_sub(band);
        let hi = (i + band).min(n);
        let s = (lo..=hi).fold(Rational::zero(), |acc, j| {
            let a = ac.get(i as i64 - j as i64);
            if a.is_zero() || values[j].is_zero() {
                acc
            } else {
                acc + a * &values[j]
            }
        });
        if i == target {
            &s == det_next
        } else {
            s.is_zero()
        }
    })
}

/// `Some((α, c))` when `a_m = c·(−1)^m C(2α, α+m)`, i.e. the symbol is a
/// positive multiple of `|1 − z|^{2α}` on the circle.
fn binomial_shape(ac: &AutocorrelationSeq) -> Option<(usize, Rational)> {
    let alpha = ac.bandwidth();
    if alpha == 0 {
        return None;
    }
    let two_a = 2 * alpha;
    let mut row = vec![BigInt::one()];
    for k in 0..two_a {
        let next = &row[k] * BigInt::from(two_a - k) / BigInt::from(k + 1);
        row.push(next);
    }
    let c = ac.get(0) / Rational::from_integer(row[alpha].clone());
    let matches = (1..=alpha).all(|m| {
        let mut want = &c * Rational::from_integer(row[alpha + m].clone());
        if m % 2 == 1 {
            want = -want;
        }
        ac.get(m as i64) == want
    });
    matches.then_some((alpha, c))
}

/// Last cofactor row from the polynomial ansatz `A_{n,j}^n = P(j+1)` with
/// `deg P = 2α − 1`, for `n ≥ 2α − 1`. Interior rows of `A^n x` apply a
/// `2α`-th order difference to `P` and vanish identically; the `α` top rows,
/// the `α − 1` bottom rows above row `n`, and `P(n+1) = D_n` fix the `2α`
/// coefficients.
fn ansatz_row(ac: &AutocorrelationSeq, alpha: usize, scale: &Rational, n: usize) -> Option<CofactorRow> {
    if n + 1 < 2 * alpha {
        return None;
    }
    let unknowns = 2 * alpha;
    let pow_row = |t: usize| -> Vec<Rational> {
        let t = Rational::from_integer(BigInt::from(t));
        let mut out = Vec::with_capacity(unknowns);
        let mut acc = Rational::one();
        for _ in 0..unknowns {
            out.push(acc.clone());
            acc *= &t;
        }
        out
    };
    let equation = |i: usize| -> Vec<Rational> {
        let lo = i.saturating_sub(alpha);
        let hi = (i + alpha).min(n);
        let mut coeffs = vec![Rational::zero(); unknowns];
        for j in lo..=hi {
            let a = ac.get(i as i64 - j as i64);
            for (c, p) in coeffs.iter_mut().zip(pow_row(j + 1)) {
                *c += &a * p;
            }
        }
        coeffs
    };
    let mut rows: Vec<Vec<Rational>> = (0..alpha).map(equation).collect();
    rows.extend((n + 1 - alpha..n).map(equation));
    rows.push(pow_row(n + 1));
    let mut rhs = vec![Rational::zero(); unknowns];

    // D_n = c^n·D_n(|1 − z|^{2α}), with n ≥ 2α − 1 ≥ 1
    rhs[unknowns - 1] = scale.pow(n as i32) * fh_determinant(FhParams::new(alpha as u32, 0), n).ok()?;

    let q = RatMatrix::from_rows(rows).ok()?.solve(&rhs)?;
    let values: Vec<Rational> =
        (0..=n).map(|j| pow_row(j + 1).iter().zip(&q).fold(Rational::zero(), |acc, (p, c)| acc + p * c)).collect();
    let lo = n.saturating_sub(alpha);
    let det_next = (lo..=n).fold(Rational::zero(), |acc, j| acc + ac.get(n as i64 - j as i64) * &values[j]);
    if det_next.is_zero() || !satisfies_expansion(ac, &values, n, &det_next) {
        return None;
    }
    Some(CofactorRow { n, row: RowSelector::Last, values, det_next, route: CofactorRoute::Ansatz })
}

fn solve_route(ac: &AutocorrelationSeq, n: usize) -> Result<CofactorRow> {
    let f = GramFactorization::new(ac, n)?;
    let det_next = f.det(n + 1).clone();
    if det_next.is_zero() {
        return Err(Error::SingularGram { size: n + 1 });
    }
    let values = f.last_row_cofactors(n);
    Ok(CofactorRow { n, row: RowSelector::Last, values, det_next, route: CofactorRoute::LinearSolve })
}

/// `(A_{n,0}^n, …, A_{n,n}^n)`, the solution of `A^n x = D_{n+1} e_n`.
pub fn last_row_cofactors(p: &HomogeneousSymbol, n: usize) -> Result<CofactorRow> {
    let ac = p.autocorrelations();
    if let Some((alpha, scale)) = binomial_shape(&ac) {
        if let Some(row) = ansatz_row(&ac, alpha, &scale, n) {
            return Ok(row);
        }
    }
    solve_route(&ac, n)
}

/// `(A_{0,0}^n, …, A_{0,n}^n)` by persymmetry, `A_{0,j}^n = A_{n,n−j}^n`,
/// checked against the expansion identity for row 0.
pub fn first_row_cofactors(p: &HomogeneousSymbol, n: usize) -> Result<CofactorRow> {
    let last = last_row_cofactors(p, n)?;
    let values: Vec<Rational> = last.values.into_iter().rev().collect();
    if !satisfies_expansion(&p.autocorrelations(), &values, 0, &last.det_next) {
        return Err(Error::IdentityViolation(format!("reversed last row of A^{n} is not the first cofactor row")));
    }
    Ok(CofactorRow { n, row: RowSelector::First, values, det_next: last.det_next, route: last.route })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::toeplitz::cofactor_exact;

    fn sym(s: &str) -> HomogeneousSymbol {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn last_row_examples() {
        let r = last_row_cofactors(&sym("1,-2,1"), 2).unwrap();
        assert_eq!(r.values, ints(&[10, 20, 20]));
        assert_eq!(r.det_next, int(50));
        assert_eq!(last_row_cofactors(&sym("-1,1"), 3).unwrap().values, ints(&[1, 2, 3, 4]));
        assert_eq!(last_row_cofactors(&sym("0,0,1"), 2).unwrap().values, ints(&[0, 0, 1]));
    }

    #[test]
    fn first_row_examples() {
        assert_eq!(first_row_cofactors(&sym("1,-2,1"), 2).unwrap().values, ints(&[20, 20, 10]));
        assert_eq!(first_row_cofactors(&sym("-1,1"), 3).unwrap().values, ints(&[4, 3, 2, 1]));
        let r = first_row_cofactors(&sym("3,5"), 0).unwrap();
        assert_eq!(r.values, ints(&[1]));
        assert_eq!(r.det_next, int(34));
    }

    #[test]
    fn ansatz_route_is_taken_for_binomial_symbols() {
        for (s, alpha) in [("-1,1", 1usize), ("1,-2,1", 2), ("-1,3,-3,1", 3), ("1/2,-1/2", 1)] {
            let p = sym(s);
            for n in 2 * alpha - 1..2 * alpha + 6 {
                let r = last_row_cofactors(&p, n).unwrap();
                assert_eq!(r.route, CofactorRoute::Ansatz, "{s} n={n}");
                let g = p.gram_matrix(n);
                for (j, v) in r.values.iter().enumerate() {
                    assert_eq!(v, &cofactor_exact(g.matrix(), n, j).unwrap(), "{s} n={n} j={j}");
                }
            }
        }
        assert_eq!(last_row_cofactors(&sym("1,-2,1"), 2).unwrap().route, CofactorRoute::LinearSolve);
        assert_eq!(last_row_cofactors(&sym("1,2,1"), 6).unwrap().route, CofactorRoute::LinearSolve);
    }

    #[test]
    fn generic_symbols_match_exact_cofactors() {
        for s in ["2,-1,3", "1/3,0,0,-2", "1,1,1", "5"] {
            let p = sym(s);
            for n in 0..=8 {
                let g = p.gram_matrix(n);
                let last = last_row_cofactors(&p, n).unwrap();
                let first = first_row_cofactors(&p, n).unwrap();
                for j in 0..=n {
                    assert_eq!(last.values[j], cofactor_exact(g.matrix(), n, j).unwrap());
                    assert_eq!(first.values[j], cofactor_exact(g.matrix(), 0, j).unwrap());
                }
                assert_eq!(last.det_n(), first.det_n());
            }
        }
        assert_eq!(last_row_cofactors(&sym("1/2"), 1).unwrap().det_next, rat(1, 16));
    }
}
