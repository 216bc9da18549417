use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::pairing::PairingEngine;
use super::sums::{sigma_closed_with, sigma_partial_engine, sigma_tail_bound, sigma_tail_bound_for};
use crate::arith::{qpi2_sign, to_f64, HarmonicCache, PiQuadratic, Rational, Sign};
use crate::asymptotics::asymptote_row;
use crate::error::{Error, Result};
use crate::submodule::{Generator, Submodule};

/// One row of the `Σ_k` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub k: usize,
    /// Truncation `N` of the partial sum.
    pub truncation: usize,
    #[serde(serialize_with = "super::ser_opt_pi_quadratic")]
    pub closed: Option<PiQuadratic>,
    #[serde(serialize_with = "super::ser_rational")]
    pub partial: Rational,
    #[serde(serialize_with = "super::ser_opt_rational")]
    pub tail_bound: Option<Rational>,
    /// The closed form when present, the partial sum otherwise.
    pub float_value: f64,
    pub asymptote: Option<f64>,
    pub residual_k3: Option<f64>,
}

/// Rows `k = 0..=k_max`. Named submodules sum to `N = max(truncation, k)`
/// so that the certified tail bound applies, and each row is checked to
/// satisfy `0 ≤ closed − partial ≤ tail_bound` exactly. Other symbols sum to
/// `truncation` through the exact cofactor engine.
pub fn invariant_report(generator: &Generator, k_max: usize, truncation: usize) -> Result<Vec<InvariantReport>> {
    match generator {
        Generator::Named(sub) => {
            let cache = HarmonicCache::new(k_max as u64 + 1);
            (0..=k_max).into_par_iter().map(|k| named_row(&cache, *sub, k, truncation.max(k))).collect()
        }
        Generator::Symbol(p) => {
            let engine = PairingEngine::new(p, truncation)?;
            (0..=k_max)
                .into_par_iter()
                .map(|k| {
                    let partial = sigma_partial_engine(&engine, k);
                    let tail_bound = sigma_tail_bound_for(generator, k, truncation)?;
                    Ok(InvariantReport {
                        k,
                        truncation,
                        closed: None,
                        float_value: to_f64(&partial),
                        partial,
                        tail_bound,
                        asymptote: None,
                        residual_k3: None,
                    })
                })
                .collect()
        }
    }
}

fn named_row(cache: &HarmonicCache, sub: Submodule, k: usize, n: usize) -> Result<InvariantReport> {
    let partial = super::sums::sigma_partial(&Generator::Named(sub), k, n)?;
    let tail = sigma_tail_bound(sub, k, n)?;
    let closed = sigma_closed_with(cache, sub, k as u64);

    let gap = closed.clone() + (-partial.clone());
    let slack = PiQuadratic::rational(tail.clone()) - gap.clone();
    if qpi2_sign(&gap)? == Sign::Negative || qpi2_sign(&slack)? == Sign::Negative {
        return Err(Error::IdentityViolation(format!("Σ_{k} of {sub} escapes its partial sum plus tail")));
    }

    let (asymptote, residual_k3) = if k.is_zero() {
        (None, None)
    } else {
        let row = asymptote_row(sub, k as u64, &closed)?;
        (Some(row.asym), Some(row.residual_k3))
    };
    Ok(InvariantReport {
        k,
        truncation: n,
        float_value: closed.to_f64(),
        closed: Some(closed),
        partial,
        tail_bound: Some(tail),
        asymptote,
        residual_k3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn named_rows() {
        let rows = invariant_report(&Generator::Named(Submodule::Zw2), 3, 50).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].closed, Some(PiQuadratic::from_ratios((2, 3), (-4, 1))));
        assert_eq!(rows[2].closed, Some(PiQuadratic::from_ratios((178, 3), (-585, 1))));
        assert!(rows[0].asymptote.is_none());
        assert!(rows[3].residual_k3.is_some());
        let rows = invariant_report(&Generator::Named(Submodule::Zw), 1, 10).unwrap();
        assert_eq!(rows[1].closed, Some(PiQuadratic::from_ratios((1, 6), (-1, 1))));
        assert_eq!(rows[1].tail_bound, Some(rat(1, 11)));
    }

    #[test]
    fn truncation_is_raised_to_k() {
        let rows = invariant_report(&Generator::Named(Submodule::Zw2), 12, 4).unwrap();
        assert_eq!(rows[12].truncation, 12);
        assert_eq!(rows[2].truncation, 4);
    }

    #[test]
    fn raw_symbol_rows() {
        let z: crate::HomogeneousSymbol = "0,1".parse().unwrap();
        let rows = invariant_report(&Generator::Symbol(z), 2, 50).unwrap();
        assert_eq!(rows[0].partial, int(1));
        assert!(rows[1].partial.is_zero() && rows[2].partial.is_zero());
        assert!(rows.iter().all(|r| r.closed.is_none() && r.tail_bound == Some(int(0))));
    }
}
