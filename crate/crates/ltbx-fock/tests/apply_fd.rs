//! Numeric cross-check of the symbolic differential-operator application:
//! `apply(X₁, b²)` evaluated pointwise must match finite differences of the
//! evaluated `b²`.

use ltbx_algebra::poly::{Field, FuncPoly, ScalarSymbol};
use ltbx_algebra::x_op;
use ltbx_fock::{eval_funcpoly, FieldSpec, RadialBump, ScalarBindings};
use num_complex::Complex64;

#[test]
fn apply_x1_to_b_squared_matches_finite_differences() {
    let b0 = 1.4;
    let spec = FieldSpec {
        b0,
        b_terms: vec![
            RadialBump::origin(0.5, 1.2, 9),
            RadialBump {
                center: [0.3, -0.4],
                c: -0.2,
                radius: 0.8,
                k: 9,
            },
        ],
        v_terms: vec![],
    };
    let mut bind = ScalarBindings::new();
    bind.insert(ScalarSymbol::B0, b0);

    let b_sq = FuncPoly::field(Field::B).pow(2);
    let applied = x_op(1).unwrap().apply(&b_sq);
    // X₁[b, U] = (2B° + 2b)·U + ΔU with U = b²; build ΔU by 5-point FD on
    // the evaluated U and compare
    let h = 1e-4;
    let eval_u = |z: Complex64| eval_funcpoly(&b_sq, &spec, z, &bind).unwrap().re;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..12 {
        let z = Complex64::new(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9));
        let symbolic = eval_funcpoly(&applied, &spec, z, &bind).unwrap().re;
        let lap = (eval_u(z + Complex64::new(h, 0.0))
            + eval_u(z - Complex64::new(h, 0.0))
            + eval_u(z + Complex64::new(0.0, h))
            + eval_u(z - Complex64::new(0.0, h))
            - 4.0 * eval_u(z))
            / (h * h);
        let b_val = spec.b_at(z);
        let numeric = (2.0 * b0 + 2.0 * b_val) * eval_u(z) + lap;
        let scale = numeric.abs().max(1e-3);
        assert!(
            ((symbolic - numeric) / scale).abs() < 1e-6,
            "z = {}: symbolic {} vs numeric {}",
            z,
            symbolic,
            numeric
        );
    }
}
