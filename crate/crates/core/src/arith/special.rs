use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{int, Rational};

/// `H_n = Σ_{r=1}^n 1/r`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, r| acc + Rational::new(BigInt::one(), BigInt::from(r)))
}

/// `H_n^{(2)} = Σ_{r=1}^n 1/r²`, with `H_0^{(2)} = 0`.
pub fn harmonic2(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, r| {
        let r = BigInt::from(r);
        acc + Rational::new(BigInt::one(), &r * &r)
    })
}

/// Prefix tables of `H_n` and `H_n^{(2)}` for `0 ≤ n ≤ max_n`. Built once,
/// read-only afterwards.
#[derive(Debug, Clone)]
pub struct HarmonicCache {
    h: Vec<Rational>,
    h2: Vec<Rational>,
}

impl HarmonicCache {
    pub fn new(max_n: u64) -> Self {
        let len = max_n as usize + 1;
        let mut h = Vec::with_capacity(len);
        let mut h2 = Vec::with_capacity(len);
        h.push(Rational::zero());
        h2.push(Rational::zero());
        for r in 1..=max_n {
            let rb = BigInt::from(r);
            let next = &h[h.len() - 1] + Rational::new(BigInt::one(), rb.clone());
            let next2 = &h2[h2.len() - 1] + Rational::new(BigInt::one(), &rb * &rb);
            h.push(next);
            h2.push(next2);
        }
        HarmonicCache { h, h2 }
    }

    pub fn max_n(&self) -> u64 {
        self.h.len() as u64 - 1
    }

    /// `H_n`; panics past `max_n`.
    pub fn h(&self, n: u64) -> &Rational {
        &self.h[n as usize]
    }

    /// `H_n^{(2)}`; panics past `max_n`.
    pub fn h2(&self, n: u64) -> &Rational {
        &self.h2[n as usize]
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Even-index Bernoulli number `B_{2m}` (`B_2 = 1/6`, `B_4 = −1/30`, …), from
/// the recurrence `Σ_{j=0}^{n} C(n+1, j) B_j = 0`.
///
/// # Panics
///
/// If `m == 0`.
pub fn bernoulli_even(m: u32) -> Rational {
    assert!(m >= 1, "bernoulli_even is defined for m ≥ 1");
    let top = 2 * m as usize;
    let mut b: Vec<Rational> = vec![Rational::one()];
    for n in 1..=top {
        let c = binomial_row(n + 1);
        let s = (0..n).fold(Rational::zero(), |acc, j| acc + &b[j] * Rational::from_integer(c[j].clone()));
        b.push(-s / int(n as i64 + 1));
    }
    b.swap_remove(top)
}

/// Barnes G at a positive integer: `G(1) = 1`, `G(n) = Π_{j=0}^{n−2} j!`.
///
/// # Panics
///
/// If `n == 0`.
pub fn barnes_g_int(n: u64) -> BigInt {
    assert!(n >= 1, "barnes_g_int is defined for n ≥ 1");
    let mut g = BigInt::one();
    let mut fact = BigInt::one();
    for j in 1..n.saturating_sub(1) {
        fact *= BigInt::from(j);
        g *= &fact;
    }
    g
}
