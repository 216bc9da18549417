//! Exact Toeplitz linear algebra: determinants `D_n`, cofactor rows of the
//! Gram matrices `A^n`, closed forms for the named submodules, and
//! Fisher–Hartwig determinants at integer parameters.

mod closed;
mod cofactor;
mod det;
mod fisher_hartwig;

pub use closed::{closed_cofactor_first_row_corner, closed_cofactor_last_row, closed_dn};
pub use cofactor::{first_row_cofactors, last_row_cofactors, CofactorRoute, CofactorRow, RowSelector};
pub use det::{cofactor_exact, det_exact, det_sequence, DetSequence, GramFactorization};
pub use fisher_hartwig::{
    fh_determinant, fh_exponent_estimate, fh_symbol_coeffs, fh_toeplitz, fh_truncated_determinants, FhParams,
};
