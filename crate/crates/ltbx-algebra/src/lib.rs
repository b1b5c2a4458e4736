//! Exact symbolic engine for the deformed Heisenberg algebra
//! `[Q, Q̄] = 2B° + 2b`, `[Q, h] = −2i∂̄h`, `[Q̄, h] = −2i∂h`.
//!
//! The crate computes normal forms of operator words over `{Q, Q̄, functions}`,
//! extracts vacuum forms (the function `F` with `(A u, u) = (F u, u)` on zero
//! modes), and assembles the effective potentials that govern Landau-level
//! splitting. All coefficients are Gaussian rationals over a polynomial ring
//! in six scalar symbols — the claims being checked are exact algebraic
//! identities, and floating point would mask the near-miss cases, so none is
//! used here.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

pub mod coeff;
pub mod diffop;
pub mod error;
pub mod op;
pub mod poly;
pub mod potential;
pub mod serial;

pub use coeff::GaussRat;
pub use diffop::LinDiffOp;
pub use error::AlgebraError;
pub use op::{normal_order_smallstep, NormalForm, OpExpr, OpLetter, OpWord};
pub use poly::{Field, FieldAtom, FuncPoly, Monomial, ScalarSymbol};
pub use potential::{
    c_q, derive_effective_potential, effective_potential, effective_potential_diff,
    field_free_combination, field_free_reference, substitute_window_scalars, weight_of, x_op, y_op,
    z_poly, DerivedForm, Sign,
};
