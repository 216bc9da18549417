//! Pairings between the two defect bases, the sums `Σ_k`, and the spectrum
//! of the core operator.

mod eigen;
mod pairing;
mod report;
mod sums;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serializer;

use crate::arith::{PiQuadratic, Rational};

pub use eigen::{closed_lambda_sq, core_eigenvalues, CoreSpectrum, EigenvalueRow};
pub use pairing::{pairing_cases_zw2, pairing_generic, sigma_term_closed, PairingEngine, PairingValue};
pub use report::{invariant_report, InvariantReport};
pub(crate) use sums::Zw2Polynomials;
pub use sums::{
    hs_identities, pf_coefficients_zw2, sigma_closed, sigma_closed_with, sigma_partial, sigma_partial_engine,
    sigma_tail_bound, sigma_tail_bound_for, squared_pf_sum, zw2_p, zw2_q, PartialFractionSpec,
};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn ser_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rs.len()))?;
    for r in rs {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

pub(crate) fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_opt_pi_quadratic<S: Serializer>(q: &Option<PiQuadratic>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => {
            let mut st = s.serialize_struct("PiQuadratic", 2)?;
            st.serialize_field("pi2_coeff", &q.pi2_coeff.to_string())?;
            st.serialize_field("const_coeff", &q.const_coeff.to_string())?;
            st.end()
        }
        None => s.serialize_none(),
    }
}
