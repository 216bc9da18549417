use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{common_denominator, Rational};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::symbol::{AutocorrelationSeq, HomogeneousSymbol};

/// Exact determinant by Bareiss fraction-free elimination. Each row is first
/// cleared of denominators, so elimination runs over integers with exact
/// divisions; zero entries are skipped, which keeps banded inputs cheap.
/// The determinant of a `0×0` matrix is 1.
pub fn det_exact(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let d = common_denominator(row);
            let dr = Rational::from_integer(d.clone());
            scale *= d;
            row.iter().map(|v| (v * &dr).to_integer()).collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let akk = &pivot_row[k];
        for row in bottom.iter_mut() {
            let aik = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let pkj = &pivot_row[j];
                if aik.is_zero() || pkj.is_zero() {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * akk / &prev;
                    }
                } else {
                    row[j] = (akk * &row[j] - &aik * pkj) / &prev;
                }
            }
        }
        prev = akk.clone();
    }
    let det = Rational::new(a[n - 1][n - 1].clone(), scale);
    Ok(if negate { -det } else { det })
}

/// `(−1)^{i+j}·det(M without row i and column j)`.
pub fn cofactor_exact(m: &RatMatrix, i: usize, j: usize) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    if i >= m.rows() || j >= m.cols() {
        return Err(Error::IndexOutOfRange { row: i, col: j, size: m.rows() });
    }
    let minor = det_exact(&m.minor(i, j))?;
    Ok(if (i + j).is_multiple_of(2) { minor } else { -minor })
}

/// `D_0..D_N` of a symbol, with `D_0 = 1` and `D_n = det A^{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetSequence {
    pub symbol: HomogeneousSymbol,
    pub values: Vec<Rational>,
}

impl DetSequence {
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }
}

/// LU factorisation without pivoting of a banded Toeplitz matrix, keeping the
/// upper factor only. Leading principal submatrices of a Toeplitz matrix are
/// again its truncations, and the LU factors of a leading block are the
/// leading blocks of the factors, so one factorisation of the largest matrix
/// serves every smaller size.
#[derive(Debug, Clone)]
pub(crate) struct BandedLu {
    band: usize,
    /// `upper[i][d]` is `U[i][i + d]` for `0 ≤ d ≤ band`.
    upper: Vec<Vec<Rational>>,
}

impl BandedLu {
    /// Factors the `size×size` matrix with entries `entry(i − j)`, which
    /// must vanish for `|i − j| > band`. `Err(k)` reports a zero pivot at
    /// step `k`, i.e. a vanishing leading minor of order `k + 1`.
    pub(crate) fn new(size: usize, band: usize, entry: impl Fn(i64) -> Rational) -> std::result::Result<Self, usize> {
        let width = 2 * band + 1;
        // work[i][c] holds the current value at column i + c − band
        let mut work: Vec<Vec<Rational>> = (0..size)
            .map(|i| {
                (0..width)
                    .map(|c| {
                        let j = i as i64 + c as i64 - band as i64;
                        if j < 0 || j >= size as i64 {
                            Rational::zero()
                        } else {
                            entry(i as i64 - j)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut upper = Vec::with_capacity(size);
        for k in 0..size {
            let pivot_row: Vec<Rational> = work[k][band..].to_vec();
            if pivot_row[0].is_zero() {
                return Err(k);
            }
            for i in k + 1..size.min(k + band + 1) {
                let off = i - k;
                let lead = &work[i][band - off];
                if lead.is_zero() {
                    continue;
                }
                let f = lead / &pivot_row[0];
                for (d, u) in pivot_row.iter().enumerate().skip(1) {
                    if !u.is_zero() {
                        work[i][band - off + d] -= &f * u;
                    }
                }
                work[i][band - off] = Rational::zero();
            }
            upper.push(pivot_row);
        }
        Ok(BandedLu { band, upper })
    }

    pub(crate) fn size(&self) -> usize {
        self.upper.len()
    }

    /// Leading principal minors of orders `0..=size`.
    pub(crate) fn leading_minors(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.size() + 1);
        out.push(Rational::one());
        for row in &self.upper {
            let next = &out[out.len() - 1] * &row[0];
            out.push(next);
        }
        out
    }

    /// Solution `x` of `T x = e_n` for the leading `(n+1)×(n+1)` block `T`.
    /// With `L` unit lower triangular, `L y = e_n` gives `y = e_n`, so only
    /// back substitution through `U` remains.
    pub(crate) fn solve_last_unit(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n + 1];
        x[n] = Rational::one() / &self.upper[n][0];
        for i in (0..n).rev() {
            let row = &self.upper[i];
            let s = (1..=self.band.min(n - i))
                .filter(|&d| !row[d].is_zero())
                .fold(Rational::zero(), |acc, d| acc + &row[d] * &x[i + d]);
            x[i] = -s / &row[0];
        }
        x
    }
}

/// Banded LU of the Gram matrix `A^N`, giving `D_0..D_{N+1}` and the last
/// cofactor row of every `A^n` with `n ≤ N`.
#[derive(Debug, Clone)]
pub struct GramFactorization {
    lu: BandedLu,
    minors: Vec<Rational>,
}

impl GramFactorization {
    pub fn new(autocorr: &AutocorrelationSeq, n_max: usize) -> Result<Self> {
        let band = autocorr.bandwidth();
        let lu =
            BandedLu::new(n_max + 1, band, |m| autocorr.get(m)).map_err(|k| Error::SingularGram { size: k + 1 })?;
        let minors = lu.leading_minors();
        Ok(GramFactorization { lu, minors })
    }

    pub fn n_max(&self) -> usize {
        self.lu.size() - 1
    }

    /// `D_n` for `0 ≤ n ≤ n_max + 1`.
    pub fn det(&self, n: usize) -> &Rational {
        &self.minors[n]
    }

    pub fn dets(&self) -> &[Rational] {
        &self.minors
    }

    /// `(A_{n,0}^n, …, A_{n,n}^n)`: the adjugate's last column, which is
    /// `D_{n+1}·(A^n)^{-1} e_n`, read as a row by symmetry.
    pub fn last_row_cofactors(&self, n: usize) -> Vec<Rational> {
        let d = &self.minors[n + 1];
        self.lu.solve_last_unit(n).into_iter().map(|x| x * d).collect()
    }
}

/// `D_0..D_N` of `p`. One banded factorisation of `A^{N−1}` supplies every
/// leading minor; the values equal independent per-`n` determinants exactly.
pub fn det_sequence(p: &HomogeneousSymbol, n_max: usize) -> DetSequence {
    let ac = p.autocorrelations();
    let values = if n_max == 0 {
        vec![Rational::one()]
    } else {
        match BandedLu::new(n_max, ac.bandwidth(), |m| ac.get(m)) {
            Ok(lu) => lu.leading_minors(),
            Err(_) => (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        Rational::one()
                    } else {
                        det_exact(ac.gram_matrix(n - 1).matrix()).expect("Gram matrices are square")
                    }
                })
                .collect(),
        }
    };
    DetSequence { symbol: p.clone(), values }
}

/// Leading minors `D_0..D_N` of the (not necessarily symmetric) banded
/// Toeplitz matrix with entries `entry(i − j)`, falling back to Bareiss per
/// order once a leading minor vanishes.
pub(crate) fn toeplitz_leading_minors(n_max: usize, band: usize, entry: impl Fn(i64) -> Rational) -> Vec<Rational> {
    match BandedLu::new(n_max, band, &entry) {
        Ok(lu) => lu.leading_minors(),
        Err(_) => (0..=n_max)
            .map(|n| {
                let m = RatMatrix::from_fn(n, n, |i, j| entry(i as i64 - j as i64));
                det_exact(&m).expect("square")
            })
            .collect(),
    }
}
