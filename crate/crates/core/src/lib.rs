//! Exact engine for the numerical invariants of homogeneous polynomial
//! submodules `[p]` of the Hardy space over the bidisk.
//!
//! Everything that carries a correctness claim is computed in exact
//! arithmetic: rationals for Toeplitz determinants, cofactors and pairings,
//! and the ring `Q + Q·π²` for closed-form values of `Σ_k`. Floats appear only
//! in diagnostics (exponent fits, asymptote residuals, table renderings).
//!
//! Module map:
//!
//! * [`arith`]: rationals, `a·π² + b` values with certified signs, harmonic
//!   and Bernoulli numbers, Barnes G at integers.
//! * [`symbol`]: homogeneous symbols, autocorrelations, Gram matrices and the
//!   monomial inner product on `H²(D²)`.
//! * [`toeplitz`]: exact determinants and cofactors, closed forms for the two
//!   named submodules, Fisher–Hartwig determinants.
//! * [`invariants`]: pairings `⟨w^k φ_n, z^k ψ_n⟩`, `Σ_k` partial sums, tails
//!   and closed forms, core-operator eigenvalues.
//! * [`asymptotics`]: Euler–Maclaurin enclosures, `Δ_k` monotonicity
//!   certificates, asymptote residuals.
//! * [`verify`]: property suites used by the `verify` CLI command.

pub mod arith;
pub mod asymptotics;
mod error;
pub mod invariants;
pub mod matrix;
mod submodule;
pub mod symbol;
pub mod toeplitz;
pub mod verify;

pub use arith::{PiQuadratic, Rational, RationalInterval, Sign};
pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use submodule::{Generator, Submodule};
pub use symbol::{BivariatePoly, HomogeneousSymbol};
