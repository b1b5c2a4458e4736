//! Rayleigh–Ritz matrices for `P₋ + V` on the trial space
//! `Q̄^q · span{φ_0, …, φ_{N−1}}` — the approximate Landau subspace built by
//! applying the creation operator to scaled zero modes.
//!
//! Both matrices reduce to weighted forms on the zero-mode space through the
//! vacuum forms: `((Q̄^q φ_m, Q̄^q φ_n)) = C_q·G + M(Z_q[b])` and
//! `((P₋+V) Q̄^q φ_m, Q̄^q φ_n) = M(vacuum(Q^q (Q̄Q + V) Q̄^q))`, so no basis
//! function is ever differentiated numerically.

use crate::error::SpectralError;
use ltbx_algebra::op::OpExpr;
use ltbx_algebra::poly::{Field, FuncPoly, ScalarSymbol};
use ltbx_algebra::potential::z_poly;
use ltbx_fock::{
    gram_matrix, required_smoothness, weighted_matrix, CMatrix, FieldSpec, QuadratureGrid,
    ScalarBindings,
};

fn check_smoothness(spec: &FieldSpec, q: u16) -> Result<(), SpectralError> {
    let needed = required_smoothness(q);
    for bump in spec.b_terms.iter().chain(spec.v_terms.iter()) {
        if bump.k < needed {
            return Err(SpectralError::SmoothnessTooLow {
                q,
                needed,
                got: bump.k,
            });
        }
    }
    Ok(())
}

fn b0_bindings(spec: &FieldSpec) -> ScalarBindings {
    let mut b = ScalarBindings::new();
    b.insert(ScalarSymbol::B0, spec.b0);
    b
}

/// `(A, Bm)` with `A` the form of `P₋ + V` and `Bm` the Gram form on the
/// level-q trial space.
pub fn landau_form_matrices(
    q: u16,
    spec: &FieldSpec,
    basis_size: usize,
    grid: &QuadratureGrid,
) -> Result<(CMatrix, CMatrix), SpectralError> {
    check_smoothness(spec, q)?;
    let bindings = b0_bindings(spec);
    let g = gram_matrix(spec, basis_size, grid)?;

    let bm = if q == 0 {
        g
    } else {
        let z = z_poly(q)?;
        let c_q = c_q_value(q, spec.b0);
        let zg = weighted_matrix(&z, spec, basis_size, grid, &bindings)?;
        g.scale(c_q).add(&zg)
    };

    let sandwich = OpExpr::q_pow(q)
        .mul(
            &OpExpr::qbar()
                .mul(&OpExpr::q())
                .add(&OpExpr::func(FuncPoly::field(Field::V))),
        )
        .mul(&OpExpr::qbar_pow(q))
        .vacuum_form();
    let a = weighted_matrix(&sandwich, spec, basis_size, grid, &bindings)?;
    Ok((a, bm))
}

/// Numeric `C_q = q!(2B°)^q`.
pub fn c_q_value(q: u16, b0: f64) -> f64 {
    let mut v = 1.0f64;
    for i in 1..=q as u64 {
        v *= i as f64;
    }
    v * (2.0 * b0).powi(q as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{gen_eigensolve, SpectrumKind};

    #[test]
    fn zero_fields_give_exact_landau_levels() {
        let spec = FieldSpec::background(1.5);
        let n = 10;
        let grid = QuadratureGrid::for_basis(&spec, n);
        for q in 0..=3u16 {
            let (a, bm) = landau_form_matrices(q, &spec, n, &grid).unwrap();
            let (res, _) = gen_eigensolve(&a, &bm, SpectrumKind::Hamiltonian).unwrap();
            let level = 2.0 * q as f64 * 1.5;
            for &e in &res.eigenvalues {
                let denom = level.abs().max(1.0);
                assert!(
                    ((e - level) / denom).abs() < 1e-10,
                    "q={} e={} level={}",
                    q,
                    e,
                    level
                );
            }
        }
    }

    #[test]
    fn q0_reduces_to_toeplitz_form() {
        // q=0, b=0, V radial: Ritz values are exactly the Toeplitz
        // eigenvalues of the weighted matrix
        let spec = FieldSpec {
            b0: 1.0,
            b_terms: vec![],
            v_terms: vec![ltbx_fock::RadialBump::origin(0.05, 1.5, 6)],
        };
        let n = 8;
        let grid = QuadratureGrid::for_basis(&spec, n);
        let (a, bm) = landau_form_matrices(0, &spec, n, &grid).unwrap();
        let (res, _) = gen_eigensolve(&a, &bm, SpectrumKind::Hamiltonian).unwrap();
        let w = weighted_matrix(
            &FuncPoly::field(Field::V),
            &spec,
            n,
            &grid,
            &b0_bindings(&spec),
        )
        .unwrap();
        let mut diag: Vec<f64> = (0..n).map(|i| w.get(i, i).re).collect();
        diag.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (e, d) in res.eigenvalues.iter().zip(&diag) {
            assert!((e - d).abs() < 1e-12);
        }
    }

    #[test]
    fn smoothness_rule_enforced() {
        let spec = FieldSpec {
            b0: 1.0,
            b_terms: vec![ltbx_fock::RadialBump::origin(0.1, 1.0, 4)],
            v_terms: vec![],
        };
        let grid = QuadratureGrid::for_basis(&spec, 4);
        assert!(matches!(
            landau_form_matrices(2, &spec, 4, &grid),
            Err(SpectralError::SmoothnessTooLow { needed: 10, .. })
        ));
    }
}
