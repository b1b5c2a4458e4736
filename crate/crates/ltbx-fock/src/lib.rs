//! Concrete field specifications with closed-form derivatives and scalar
//! potentials, numeric evaluation of symbolic polynomials, and Gram /
//! weighted (Toeplitz-type) matrix assembly over the zero-mode basis.
//!
//! Fields are finite sums of translated radial polynomial bumps rather than
//! arbitrary smooth functions: every Wirtinger derivative up to order k−1 and
//! the logarithmic potential are closed-form, which removes 2D log-kernel
//! convolution quadrature from the picture entirely. When targeting Landau
//! level q, bump smoothness k ≥ 2q+6 is required (`Z_{q+2}` consumes
//! derivatives of order 2q+2; the margin of 3 keeps the top derivatives
//! continuous).

pub mod bump;
pub mod error;
pub mod eval;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod quad;
pub mod special;

pub use bump::{DerivTable, RadialBump};
pub use error::FockError;
pub use eval::{eval_funcpoly, FieldEvaluator, ScalarBindings};
pub use field::{scalar_potential, FieldSpec};
pub use matrix::{gram_matrix, ln_basis_norm, weighted_matrix, CMatrix};
pub use oracle::{radial_toeplitz_oracle, RadialProfile};
pub use quad::{gauss_legendre, QuadratureGrid, EPS_TAIL};

/// Bump smoothness rule for Landau level `q`: `k ≥ 2q + 6`.
pub fn required_smoothness(q: u16) -> u32 {
    2 * q as u32 + 6
}
