use num_traits::{One, Zero};
use serde::Serialize;

use super::pairing::PairingEngine;
use crate::arith::{to_f64, Rational};
use crate::error::{Error, Result};
use crate::submodule::{Generator, Submodule};
use crate::toeplitz::{closed_cofactor_first_row_corner, closed_dn};

/// The eigenvalue pair `±λ_n` of the core operator, `λ_n ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueRow {
    pub n: usize,
    #[serde(serialize_with = "crate::invariants::ser_rational")]
    pub lambda_sq: Rational,
    pub lambda_float: f64,
}

/// Nonzero spectrum of the core operator up to `n_max`, after the fixed
/// eigenvalues `0` and `1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreSpectrum {
    #[serde(serialize_with = "crate::invariants::ser_rationals")]
    pub fixed: Vec<Rational>,
    pub pairs: Vec<EigenvalueRow>,
}

/// `λ_n² = 1 − (D_n² − (A_{0,n}^n)²)² / (D_{n−1} D_n² D_{n+1})`.
fn lambda_sq(d_prev: &Rational, d_n: &Rational, d_next: &Rational, corner: &Rational) -> Rational {
    let gap = d_n * d_n - corner * corner;
    Rational::one() - &gap * &gap / (d_prev * d_n * d_n * d_next)
}

pub fn core_eigenvalues(generator: &Generator, n_max: usize) -> Result<CoreSpectrum> {
    if n_max == 0 {
        return Err(Error::Domain("core eigenvalues are indexed from n = 1".into()));
    }
    let values: Vec<(usize, Rational)> = match generator {
        Generator::Named(sub) => (1..=n_max)
            .map(|n| {
                let d = |m| closed_dn(*sub, m);
                (n, lambda_sq(&d(n - 1), &d(n), &d(n + 1), &closed_cofactor_first_row_corner(*sub, n)))
            })
            .collect(),
        Generator::Symbol(p) => {
            let engine = PairingEngine::new(p, n_max)?;
            (1..=n_max)
                .map(|n| (n, lambda_sq(engine.det(n - 1), engine.det(n), engine.det(n + 1), engine.corner(n))))
                .collect()
        }
    };
    let pairs = values
        .into_iter()
        .map(|(n, lambda_sq)| {
            let lambda_float = to_f64(&lambda_sq).max(0.0).sqrt();
            EigenvalueRow { n, lambda_sq, lambda_float }
        })
        .collect();
    Ok(CoreSpectrum { fixed: vec![Rational::zero(), Rational::one()], pairs })
}

/// `4/(n+2)²` for `(z−w)²` and `1/(n+1)²` for `z−w`.
pub fn closed_lambda_sq(sub: Submodule, n: usize) -> Rational {
    let n = n as i64;
    match sub {
        Submodule::Zw2 => Rational::new(4.into(), ((n + 2) * (n + 2)).into()),
        Submodule::Zw => Rational::new(1.into(), ((n + 1) * (n + 1)).into()),
    }
}
