use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::det::toeplitz_leading_minors;
use crate::arith::{barnes_g_int, Rational};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;

/// Parameters of the single-singularity symbol `φ_{α,β} = (−z)^β |1−z|^{2α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FhParams {
    pub alpha: u32,
    pub beta: i64,
}

impl FhParams {
    pub fn new(alpha: u32, beta: i64) -> Self {
        FhParams { alpha, beta }
    }

    /// Largest `|m|` with a nonzero Fourier coefficient.
    pub fn bandwidth(&self) -> usize {
        (i64::from(self.alpha) + self.beta.abs()) as usize
    }
}

/// Fourier coefficients of `φ_{α,β}`, keyed by frequency; absent keys are 0.
/// Built as the convolution of `(1 − z)^α` with `(1 − 1/z)^α`, shifted by
/// `β` and multiplied by `(−1)^β`. Equals `(−1)^m C(2α, α + m − β)`.
pub fn fh_symbol_coeffs(params: FhParams) -> BTreeMap<i64, BigInt> {
    let a = params.alpha as usize;
    let mut forward = vec![BigInt::one()];
    for _ in 0..a {
        let mut next = vec![BigInt::zero(); forward.len() + 1];
        for (i, c) in forward.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        forward = next;
    }
    let mut out = BTreeMap::new();
    // (1 − z)^α has coefficient forward[i] at z^i, its reflection forward[j] at z^{−j}
    for (i, ci) in forward.iter().enumerate() {
        for (j, cj) in forward.iter().enumerate() {
            let m = i as i64 - j as i64 + params.beta;
            *out.entry(m).or_insert_with(BigInt::zero) += ci * cj;
        }
    }
    let flip = params.beta.rem_euclid(2) == 1;
    out.into_iter().filter(|(_, v)| !v.is_zero()).map(|(m, v)| (m, if flip { -v } else { v })).collect()
}

fn coeff_fn(params: FhParams) -> impl Fn(i64) -> Rational {
    let coeffs = fh_symbol_coeffs(params);
    move |m| coeffs.get(&m).map_or_else(Rational::zero, |v| Rational::from_integer(v.clone()))
}

/// The `n×n` truncation `T_n(φ_{α,β})` with entry `(i, j) = φ_{i−j}`.
pub fn fh_toeplitz(params: FhParams, n: usize) -> RatMatrix {
    let phi = coeff_fn(params);
    RatMatrix::from_fn(n, n, |i, j| phi(i as i64 - j as i64))
}

/// `D_0..D_N` of `φ_{α,β}` computed from the matrix entries.
pub fn fh_truncated_determinants(params: FhParams, n_max: usize) -> Vec<Rational> {
    toeplitz_leading_minors(n_max, params.bandwidth(), coeff_fn(params))
}

/// `D_n(φ_{α,β})` from the Barnes G formula
/// `G(1+α+β)G(1+α−β)/G(1+2α) · G(1+n)G(1+n+2α)/(G(1+n+α+β)G(1+n+α−β))`,
/// and 0 when `α+β` or `α−β` is a negative integer.
///
/// The `n`-dependent quotient telescopes through `G(m+1) = m!·G(m)` into
/// `Π_{i<α−β} (n+α+β+i)!/(n+i)!`, a product of `2α` linear factors in `n`,
/// so large `n` never materialises `G(n)` itself.
pub fn fh_determinant(params: FhParams, n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("Fisher–Hartwig determinants are indexed from n = 1".into()));
    }
    let alpha = i64::from(params.alpha);
    let s = alpha + params.beta;
    let d = alpha - params.beta;
    if s < 0 || d < 0 {
        return Ok(Rational::zero());
    }
    let g = |x: i64| -> Result<BigInt> {
        u64::try_from(x)
            .ok()
            .filter(|&x| x >= 1)
            .map(barnes_g_int)
            .ok_or_else(|| Error::OutOfScopeParams(format!("Barnes G argument {x} is not a positive integer")))
    };
    let prefactor = Rational::new(g(1 + s)? * g(1 + d)?, g(1 + 2 * alpha)?);
    let n = n as i64;
    let mut product = BigInt::one();
    for i in 0..d {
        for t in (n + i + 1)..=(n + i + s) {
            product *= BigInt::from(t);
        }
    }
    Ok(prefactor * Rational::from_integer(product))
}

fn ln_positive(r: &Rational) -> f64 {
    fn ln_big(x: &BigInt) -> f64 {
        let bits = x.bits();
        if bits <= 1000 {
            return x.to_f64().expect("finite below 2^1000").ln();
        }
        let shift = bits - 64;
        (x >> shift).to_f64().expect("64-bit mantissa").ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Growth exponent of `D_n(φ_{α,β})` over `n_lo ≤ n ≤ n_hi`: the `log n`
/// coefficient of the least-squares fit `log D_n ≈ c + σ·log n + b/n`. The
/// `1/n` column absorbs the leading correction to `D_n ~ E·n^σ`, which a bare
/// log-log slope would otherwise fold into `σ`. A diagnostic from exact
/// determinants, not a certificate.
pub fn fh_exponent_estimate(params: FhParams, n_lo: usize, n_hi: usize) -> Result<f64> {
    if n_lo < 2 || n_lo >= n_hi {
        return Err(Error::Domain(format!("need 2 ≤ n_lo < n_hi, got [{n_lo}, {n_hi}]")));
    }
    let dets = fh_truncated_determinants(params, n_hi);
    // normal equations for the basis (1, log n, 1/n)
    let mut gram = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (n, d) in dets.iter().enumerate().skip(n_lo) {
        if !d.is_positive() {
            return Err(Error::ZeroDeterminantInRange { n });
        }
        let basis = [1.0, (n as f64).ln(), 1.0 / n as f64];
        let y = ln_positive(d);
        for r in 0..3 {
            rhs[r] += basis[r] * y;
            for c in 0..3 {
                gram[r][c] += basis[r] * basis[c];
            }
        }
    }
    Ok(solve3(gram, rhs)[1])
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for k in 0..3 {
        let p = (k..3).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).expect("nonempty range");
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..3 {
            let f = a[i][k] / a[k][k];
            for j in k..3 {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}
