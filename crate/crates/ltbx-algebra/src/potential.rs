//! The named vacuum forms `Z_q`, `X_q`, `Y_q` and the two routes to the
//! effective potentials `W±`.
//!
//! `effective_potential` assembles the printed closed-form expression for
//! `W±`; `derive_effective_potential` recomputes the same quadratic form from
//! first principles by normal-ordering `Q^q (Q̄Q + V − μ)² Q̄^q` directly and
//! is the ground truth when the two disagree. The un-subscripted `s` in the
//! printed formula is read as `s±` matching the chosen sign; that reading
//! makes the field-free coefficients match exactly and is cross-checked
//! against the first-principles route in the tests and in `verify`.

use crate::coeff::GaussRat;
use crate::diffop::LinDiffOp;
use crate::error::AlgebraError;
use crate::op::OpExpr;
use crate::poly::{Field, FuncPoly, Monomial, ScalarSymbol};

/// Which side of the Landau level the spectral window sits on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// `C_q = q!(2B°)^q` as a polynomial in `B°`.
pub fn c_q(q: u16) -> FuncPoly {
    let mut fact: i64 = 1;
    for i in 1..=q as i64 {
        fact *= i;
    }
    let two_b0 = FuncPoly::scalar(ScalarSymbol::B0).scale_int(2);
    two_b0.pow(q as u32).scale_int(fact)
}

/// `Z_q[b]`: the function with `‖Q̄^q u‖² = C_q‖u‖² + (Z_q[b]u, u)` on zero
/// modes. Computed as the vacuum form of `Q^q Q̄^q` minus its field-free
/// part, which is checked to be exactly `C_q`.
pub fn z_poly(q: u16) -> Result<FuncPoly, AlgebraError> {
    if q == 0 {
        return Err(AlgebraError::QOutOfRange(0));
    }
    let vf = OpExpr::q_pow(q).mul(&OpExpr::qbar_pow(q)).vacuum_form();
    let constant = vf.scalar_part();
    let expected = c_q(q);
    if constant != expected {
        return Err(AlgebraError::ConstantTermMismatch {
            q,
            got: constant.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(&vf - &expected)
}

/// `X_q[b, ·]`: the order-`2q` linear differential operator with
/// `(U Q̄^q u, Q̄^q u) = (X_q[b,U] u, u)`. Structural checks: order ≤ 2q,
/// zero-order coefficient `C_q + Z_q[b]`, top coefficient `4^q` at `(q, q)`
/// (the `Δ^q U` term).
pub fn x_op(q: u16) -> Result<LinDiffOp, AlgebraError> {
    if q == 0 {
        return Err(AlgebraError::QOutOfRange(0));
    }
    let e = OpExpr::q_pow(q)
        .mul(&OpExpr::func(FuncPoly::field(Field::U)))
        .mul(&OpExpr::qbar_pow(q));
    let op = LinDiffOp::from_linear_in_u(&e.vacuum_form())?;
    if op.order() > 2 * q as u32 {
        return Err(AlgebraError::OrderExceeded {
            got: op.order(),
            bound: 2 * q as u32,
        });
    }
    let zero_order = op.coeff(0, 0);
    let expected_zero = &c_q(q) + &z_poly(q)?;
    if zero_order != expected_zero {
        return Err(AlgebraError::TopCoefficientMismatch {
            d: 0,
            dbar: 0,
            got: zero_order.to_string(),
            expected: expected_zero.to_string(),
        });
    }
    let top = op.coeff(q, q);
    let expected_top = FuncPoly::from_int(4i64.pow(q as u32));
    if top != expected_top {
        return Err(AlgebraError::TopCoefficientMismatch {
            d: q,
            dbar: q,
            got: top.to_string(),
            expected: expected_top.to_string(),
        });
    }
    Ok(op)
}

/// `Y_q[b, ·]`: the order-`2q+1` operator with
/// `(U Q̄^q u, Q̄^{q+1} u) = (Y_q[b,U] u, u)`, i.e. the vacuum form of
/// `Q^{q+1} U Q̄^q`. Top coefficient `−2i·4^q` at `(q, q+1)` (the
/// `(−2i)Δ^q ∂̄U` term). `q = 0` is accepted as the natural extension even
/// though the source statement assumes `q > 0`; callers that care flag it.
pub fn y_op(q: u16) -> Result<LinDiffOp, AlgebraError> {
    let e = OpExpr::q_pow(q + 1)
        .mul(&OpExpr::func(FuncPoly::field(Field::U)))
        .mul(&OpExpr::qbar_pow(q));
    let op = LinDiffOp::from_linear_in_u(&e.vacuum_form())?;
    if op.order() > 2 * q as u32 + 1 {
        return Err(AlgebraError::OrderExceeded {
            got: op.order(),
            bound: 2 * q as u32 + 1,
        });
    }
    let top = op.coeff(q, q + 1);
    let expected_top =
        FuncPoly::constant(GaussRat::from_parts(0, -2)).scale_int(4i64.pow(q as u32));
    if top != expected_top {
        return Err(AlgebraError::TopCoefficientMismatch {
            d: q,
            dbar: q + 1,
            got: top.to_string(),
            expected: expected_top.to_string(),
        });
    }
    Ok(op)
}

fn b0() -> FuncPoly {
    FuncPoly::scalar(ScalarSymbol::B0)
}

fn mu() -> FuncPoly {
    FuncPoly::scalar(ScalarSymbol::Mu)
}

/// The printed effective potential `W±[b, V, λ]`, scalars kept symbolic:
///
/// ```text
/// W± = −(Λ±λ+2B°)(s+2B°) Z_q − Z_{q+2} + 2(μ+3B°) Z_{q+1}
///      − X_q[4(2B−b+μ)b − (4B−2μ+V)V] − 2 X_{q+1}[V−3b]
///      − 4 Im Y_q[∂V − 2∂b]
/// ```
///
/// with `B = B° + b`; `μ` and `s` stand for `μ±`, `s±` of the chosen sign.
pub fn effective_potential(q: u16, sign: Sign) -> Result<FuncPoly, AlgebraError> {
    if q == 0 {
        return Err(AlgebraError::QOutOfRange(0));
    }
    let b = FuncPoly::field(Field::B);
    let v = FuncPoly::field(Field::V);
    let lam = FuncPoly::scalar(ScalarSymbol::CapLambda);
    let lambda = FuncPoly::scalar(ScalarSymbol::Lambda);
    let s = FuncPoly::scalar(ScalarSymbol::S);

    let z_q = z_poly(q)?;
    let z_q1 = z_poly(q + 1)?;
    let z_q2 = z_poly(q + 2)?;
    let x_q = x_op(q)?;
    let x_q1 = x_op(q + 1)?;
    let y_q = y_op(q)?;

    // −(Λ±λ+2B°)(s+2B°) Z_q
    let lead = &(&lam + &lambda.scale_int(sign.factor())) + &b0().scale_int(2);
    let lead = &lead * &(&s + &b0().scale_int(2));
    let term1 = (&lead * &z_q).scale_int(-1);

    // +2(μ+3B°) Z_{q+1} − Z_{q+2}
    let term2 = (&(&mu() + &b0().scale_int(3)) * &z_q1).scale_int(2);
    let term3 = z_q2.scale_int(-1);

    // −X_q[4(2B−b+μ)b − (4B−2μ+V)V], with 2B−b = 2B°+b and 4B = 4B°+4b
    let arg_b = (&(&(&b0().scale_int(2) + &b) + &mu()) * &b).scale_int(4);
    let arg_v = &(&(&(&b0().scale_int(4) + &b.scale_int(4)) - &mu().scale_int(2)) + &v) * &v;
    let term4 = x_q.apply(&(&arg_b - &arg_v)).scale_int(-1);

    // −2 X_{q+1}[V − 3b]
    let term5 = x_q1.apply(&(&v - &b.scale_int(3))).scale_int(-2);

    // −4 Im Y_q[∂V − 2∂b]
    let arg_y = &v.d() - &b.d().scale_int(2);
    let term6 = y_q.apply(&arg_y).im().scale_int(-4);

    Ok(&(&(&(&(&term1 + &term2) + &term3) + &term4) + &term5) + &term6)
}

/// Result of the first-principles expansion of
/// `‖(P₋ + V − μ)u‖² − τ²‖u‖²` with `u = Q̄^q v`.
#[derive(Clone, Debug)]
pub struct DerivedForm {
    /// Field-free part: a polynomial in `μ, τ, B°` multiplying `‖v‖²`.
    pub field_free: FuncPoly,
    /// The remaining terms; equals `−W_sign` when the printed formula is
    /// consistent with the expansion.
    pub remainder: FuncPoly,
}

impl DerivedForm {
    /// The ground-truth effective potential `W = −remainder`.
    pub fn ground_truth_w(&self) -> FuncPoly {
        self.remainder.scale_int(-1)
    }
}

/// First-principles oracle: with `P₋ = Q̄Q`, expand
/// `vacuum_form(Q^q (Q̄Q + V − μ)(Q̄Q + V − μ) Q̄^q) − τ² vacuum_form(Q^q Q̄^q)`
/// and split off the field-free part. Symbolic in `μ` and `τ`; the ± choice
/// only enters later through scalar substitution.
pub fn derive_effective_potential(q: u16) -> Result<DerivedForm, AlgebraError> {
    if q == 0 {
        return Err(AlgebraError::QOutOfRange(0));
    }
    let p_minus = OpExpr::qbar().mul(&OpExpr::q());
    let v_minus_mu = &FuncPoly::field(Field::V) - &mu();
    let m = p_minus.add(&OpExpr::func(v_minus_mu));
    let form = OpExpr::q_pow(q)
        .mul(&m)
        .mul(&m)
        .mul(&OpExpr::qbar_pow(q))
        .vacuum_form();
    let tau_sq = FuncPoly::scalar(ScalarSymbol::Tau).pow(2);
    let gram = OpExpr::q_pow(q).mul(&OpExpr::qbar_pow(q)).vacuum_form();
    let full = &form - &(&tau_sq * &gram);
    Ok(DerivedForm {
        field_free: full.scalar_part(),
        remainder: full.field_part(),
    })
}

/// Substitute the window scalars for a fixed level and sign:
/// `s → Λ ± B°`, `μ → Λ ± (λ+B°)/2`, `τ → (B°−λ)/2`, then `Λ → 2qB°`.
/// The result is a polynomial in `λ`, `B°` and the fields.
pub fn substitute_window_scalars(p: &FuncPoly, q: u16, sign: Sign) -> FuncPoly {
    let sigma = sign.factor();
    let lam = FuncPoly::scalar(ScalarSymbol::CapLambda);
    let lambda = FuncPoly::scalar(ScalarSymbol::Lambda);
    let half = GaussRat::from_ratio(1, 2);

    let s_val = &lam + &b0().scale_int(sigma);
    let mu_val = &lam + &(&lambda + &b0()).scale(&half).scale_int(sigma);
    let tau_val = (&b0() - &lambda).scale(&half);
    let cap_lambda_val = b0().scale_int(2 * q as i64);

    p.substitute_scalar(ScalarSymbol::S, &s_val)
        .substitute_scalar(ScalarSymbol::Mu, &mu_val)
        .substitute_scalar(ScalarSymbol::Tau, &tau_val)
        .substitute_scalar(ScalarSymbol::CapLambda, &cap_lambda_val)
}

/// `λ(Λ−s)C_q` after full substitution for the given sign: the value the
/// field-free part of the derived form must match. For the minus sign
/// `Λ − s₋ = B°`; for the plus sign `Λ − s₊ = −B°` while the expansion's
/// coefficient is `+λB°C_q`, so the match is up to the sign of `(Λ−s)` —
/// both routes are returned by [`field_free_reference`].
pub fn field_free_reference(q: u16) -> FuncPoly {
    // λ B° C_q, the actual value of ((μ²−τ²) − 2μΛ + Λ²)C_q for either sign
    &(&FuncPoly::scalar(ScalarSymbol::Lambda) * &b0()) * &c_q(q)
}

/// The window-bookkeeping combination for the `‖v‖²` coefficient,
/// `(μ²−τ²)C_q − 2μC_{q+1} + 4μB°C_q + C_{q+2} − 2B°C_{q+1} + 4B°²C_q − 4B°C_{q+1}`,
/// kept symbolic in `μ, τ, B°`.
pub fn field_free_combination(q: u16) -> FuncPoly {
    let tau = FuncPoly::scalar(ScalarSymbol::Tau);
    let cq = c_q(q);
    let cq1 = c_q(q + 1);
    let cq2 = c_q(q + 2);
    let mut acc = &(&mu().pow(2) - &tau.pow(2)) * &cq;
    acc = &acc - &(&mu() * &cq1).scale_int(2);
    acc = &acc + &(&(&mu() * &b0()) * &cq).scale_int(4);
    acc = &acc + &cq2;
    acc = &acc - &(&b0() * &cq1).scale_int(2);
    acc = &acc + &(&b0().pow(2) * &cq).scale_int(4);
    acc = &acc - &(&b0() * &cq1).scale_int(4);
    acc
}

/// Term-level difference `printed − ground truth` of the two `W±` routes
/// after full scalar substitution. Empty iff the printed formula agrees
/// with the first-principles expansion.
pub fn effective_potential_diff(q: u16, sign: Sign) -> Result<FuncPoly, AlgebraError> {
    let printed = substitute_window_scalars(&effective_potential(q, sign)?, q, sign);
    let truth =
        substitute_window_scalars(&derive_effective_potential(q)?.ground_truth_w(), q, sign);
    Ok(&printed - &truth)
}

/// `weight_of`: the weight grading of a monomial.
pub fn weight_of(m: &Monomial) -> u32 {
    m.weight()
}
