//! The exact-identity and oracle-equivalence suite behind `ltbx verify`.
//!
//! Each check is one of the first eight acceptance gates of the project;
//! `verify` runs them all, prints one PASS/FAIL line per check, and exits
//! nonzero iff any exact identity fails. Check 4 passes in either of its two
//! sanctioned outcomes (exact agreement, or a documented divergence with the
//! first-principles route shipped as ground truth).

use ltbx_algebra::coeff::GaussRat;
use ltbx_algebra::poly::{Field, FieldAtom, FuncPoly, Monomial, ScalarSymbol};
use ltbx_algebra::{
    derive_effective_potential, effective_potential, field_free_combination, field_free_reference,
    substitute_window_scalars, x_op, y_op, z_poly, Sign,
};
use ltbx_fock::{radial_toeplitz_oracle, FieldSpec, QuadratureGrid, RadialBump, RadialProfile};
use ltbx_spectral::{
    counting_report, decay_diagnostic_logs, gen_eigensolve, landau_form_matrices, SpectralResult,
    SpectrumKind,
};
use std::time::Instant;

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

fn b0() -> FuncPoly {
    FuncPoly::scalar(ScalarSymbol::B0)
}

fn b() -> FuncPoly {
    FuncPoly::field(Field::B)
}

/// 1. Exact closed-form values of the lowest-order objects.
pub fn check_exact_values() -> Result<String, String> {
    let z1 = z_poly(1).map_err(|e| e.to_string())?;
    if z1 != b().scale_int(2) {
        return Err(format!("Z_1 = {} (expected 2b)", z1));
    }
    let x1 = x_op(1).map_err(|e| e.to_string())?;
    let expect00 = &b0().scale_int(2) + &b().scale_int(2);
    if x1.coeff(0, 0) != expect00
        || x1.coeff(1, 1) != FuncPoly::from_int(4)
        || x1.coeffs().count() != 2
    {
        return Err(format!("X_1 = {} (expected 2BU + DeltaU)", x1));
    }
    let z2 = z_poly(2).map_err(|e| e.to_string())?;
    let z2_expected =
        &(&b().pow(2).scale_int(8) + &(&b0() * &b()).scale_int(16)) + &b().laplacian().scale_int(2);
    if z2 != z2_expected {
        return Err(format!("Z_2 = {} (expected 8b^2 + 16B0 b + 2 Delta b)", z2));
    }
    Ok("Z_1 = 2b; X_1 = 2BU + DeltaU; Z_2 = 8b^2 + 16B0·b + 2Δb \
         [note: quoted Z_2 linear coefficient 12 fails the structure constant 2^q·q!·q = 16; \
         engine value shipped]"
        .into())
}

/// 2. Structure theorems mechanized for q ≤ 4 (constants up to q = 6).
pub fn check_structure() -> Result<String, String> {
    for q in 1..=6u16 {
        // constant term q!(2B0)^q is asserted inside z_poly; linear term:
        let z = z_poly(q).map_err(|e| e.to_string())?;
        let mut expected: i64 = 2i64.pow(q as u32) * q as i64;
        for i in 1..=q as i64 {
            expected *= i;
        }
        let mut mono = Monomial::atom(FieldAtom::new(Field::B, 0, 0));
        mono.scalars[ScalarSymbol::B0.index()] = q - 1;
        if z.coeff_of(&mono) != GaussRat::from_int(expected) {
            return Err(format!(
                "Z_{} linear term != {}·B0^{}·b",
                q,
                expected,
                q - 1
            ));
        }
    }
    for q in 1..=4u16 {
        let z = z_poly(q).map_err(|e| e.to_string())?;
        if !z.is_weight_homogeneous(2 * q as u32) {
            return Err(format!(
                "Z_{} not weight-homogeneous of weight {}",
                q,
                2 * q
            ));
        }
        let x = x_op(q).map_err(|e| e.to_string())?;
        let xu = x.apply(&FuncPoly::field(Field::U));
        if !xu.is_weight_homogeneous(2 * q as u32 + 2) {
            return Err(format!("X_{} not weight-homogeneous", q));
        }
        if x.coeff(q, q) != FuncPoly::from_int(4i64.pow(q as u32)) {
            return Err(format!("X_{} top coefficient != 4^q", q));
        }
        let y = y_op(q).map_err(|e| e.to_string())?;
        let yu = y.apply(&FuncPoly::field(Field::U));
        if !yu.is_weight_homogeneous(2 * q as u32 + 3) {
            return Err(format!("Y_{} not weight-homogeneous", q));
        }
        let expected_top =
            FuncPoly::constant(GaussRat::from_parts(0, -2)).scale_int(4i64.pow(q as u32));
        if y.coeff(q, q + 1) != expected_top {
            return Err(format!("Y_{} top coefficient != -2i·4^q", q));
        }
    }
    Ok("constants q<=6, linear terms 2^q·q!·q, weights 2q/2q+2/2q+3, tops 4^q and -2i·4^q".into())
}

/// 3. The window-scalar identity and the field-free coefficient, q ≤ 3.
pub fn check_scalar_identity() -> Result<String, String> {
    let lam = FuncPoly::scalar(ScalarSymbol::CapLambda);
    let lambda = FuncPoly::scalar(ScalarSymbol::Lambda);
    let tau = FuncPoly::scalar(ScalarSymbol::Tau);
    let mu = FuncPoly::scalar(ScalarSymbol::Mu);
    let s = FuncPoly::scalar(ScalarSymbol::S);
    let lhs = &(&(&mu.pow(2) - &tau.pow(2)) - &(&mu * &lam).scale_int(2)) + &lam.pow(2);
    let rhs = &lambda * &(&lam - &s);
    for q in 1..=3u16 {
        let l = substitute_window_scalars(&lhs, q, Sign::Minus);
        let r = substitute_window_scalars(&rhs, q, Sign::Minus);
        if l != r {
            return Err(format!(
                "(mu^2-tau^2)-2 mu Lam + Lam^2 != lambda(Lam-s) at q={}",
                q
            ));
        }
        let derived = derive_effective_potential(q).map_err(|e| e.to_string())?;
        if derived.field_free != field_free_combination(q) {
            return Err(format!("field-free part mismatch at q={}", q));
        }
        for sign in [Sign::Plus, Sign::Minus] {
            let ff = substitute_window_scalars(&derived.field_free, q, sign);
            if ff != field_free_reference(q) {
                return Err(format!(
                    "field-free coefficient != lambda·B0·C_q at q={} sign={}",
                    q,
                    sign.name()
                ));
            }
        }
    }
    Ok(
        "identity holds (minus sign, = lambda·B0); field-free coefficient = lambda·B0·C_q, q<=3"
            .into(),
    )
}

/// 4. Printed `W±` against the first-principles route, q = 1, 2.
pub fn check_effective_potential_cross() -> Result<String, String> {
    let mut divergent = false;
    let mut diff_summary = String::new();
    for q in 1..=2u16 {
        for sign in [Sign::Minus, Sign::Plus] {
            let printed = effective_potential(q, sign).map_err(|e| e.to_string())?;
            let truth = derive_effective_potential(q)
                .map_err(|e| e.to_string())?
                .ground_truth_w();
            let diff = &substitute_window_scalars(&printed, q, sign)
                - &substitute_window_scalars(&truth, q, sign);
            if !diff.is_zero() {
                divergent = true;
                // the divergence must be exactly the V-quadratic block
                let x = x_op(q).map_err(|e| e.to_string())?;
                let v = FuncPoly::field(Field::V);
                let mu = FuncPoly::scalar(ScalarSymbol::Mu);
                let expected =
                    &x.apply(&v.pow(2)).scale_int(2) - &(&mu.scale_int(4) * &x.apply(&v));
                let expected = substitute_window_scalars(&expected, q, sign);
                if diff != expected {
                    return Err(format!(
                        "unexpected divergence shape at q={} sign={}: {}",
                        q,
                        sign.name(),
                        diff
                    ));
                }
                if diff_summary.is_empty() {
                    diff_summary =
                        "printed - truth = 2·X_q[V^2] - 4·mu±·X_q[V] (V-quadratic block sign)"
                            .into();
                }
            }
        }
    }
    if divergent {
        Ok(format!(
            "documented divergence: {}; first-principles W shipped as ground truth (effpot exits 5)",
            diff_summary
        ))
    } else {
        Ok("printed W± agrees exactly with the first-principles expansion".into())
    }
}

/// 5. Toeplitz oracle equivalence at b = 0, N = 30.
pub fn check_toeplitz_equivalence() -> Result<String, String> {
    let bump = RadialBump::origin(1.0, 1.0, 8);
    let spec = FieldSpec {
        b0: 2.0,
        b_terms: vec![],
        v_terms: vec![bump.clone()],
    };
    let n = 30;
    let grid = QuadratureGrid::for_basis(&spec, n);
    let mut bindings = ltbx_fock::ScalarBindings::new();
    bindings.insert(ScalarSymbol::B0, spec.b0);
    let w = ltbx_fock::weighted_matrix(&FuncPoly::field(Field::V), &spec, n, &grid, &bindings)
        .map_err(|e| e.to_string())?;
    let logs = radial_toeplitz_oracle(&RadialProfile::Bumps(vec![bump]), spec.b0, n - 1)
        .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (i, lnl) in logs.iter().enumerate() {
        let oracle = lnl.exp();
        if oracle > 1e-12 {
            let rel = ((w.get(i, i).re - oracle) / oracle).abs();
            worst = worst.max(rel);
        }
    }
    if worst < 1e-6 {
        Ok(format!(
            "matrix vs oracle worst relative deviation {:.2e}",
            worst
        ))
    } else {
        Err(format!(
            "matrix vs oracle deviation {:.2e} exceeds 1e-6",
            worst
        ))
    }
}

/// 6. Super-exponential decay probe: `s_n = (n!·λ_n)^{1/n}` at x₀ = 1.
pub fn check_decay_probe() -> Result<String, String> {
    let profile = RadialProfile::DiskIndicator {
        radius: (2.0f64).sqrt(),
    };
    let logs = radial_toeplitz_oracle(&profile, 1.0, 120).map_err(|e| e.to_string())?;
    let res = SpectralResult::from_log_eigenvalues(logs);
    let s = decay_diagnostic_logs(res.log_abs.as_ref().unwrap());
    let s40 = s[39];
    let s100 = s[99];
    if (s40 - 1.0).abs() > 0.05 {
        return Err(format!("s_40 = {} not within 5% of 1", s40));
    }
    if (s100 - 1.0).abs() > 0.02 {
        return Err(format!("s_100 = {} not within 2% of 1", s100));
    }
    Ok(format!(
        "s_40 = {:.6} (within 5%), s_100 = {:.6} (within 2%); oracle limit B0R^2/2 = 1, \
         quoted capacity form (B0/2)·R = 0.707 shown for reference, unasserted",
        s40, s100
    ))
}

/// 7. Counting asymptotics probe at λ = 1e−60 for the unit disk (x₀ = ½).
pub fn check_counting_probe() -> Result<String, String> {
    let profile = RadialProfile::DiskIndicator { radius: 1.0 };
    let logs = radial_toeplitz_oracle(&profile, 1.0, 200).map_err(|e| e.to_string())?;
    let res = SpectralResult::from_log_eigenvalues(logs);
    let report = counting_report(&res, &[1e-60]);
    let ratio = report.ratio_oracle[0];
    let half_norm = report.ratio_paper[0];
    if !(0.8..=1.6).contains(&ratio) {
        return Err(format!(
            "n(1e-60)·ln|ln|/|ln| = {:.4} outside [0.8, 1.6] (count {})",
            ratio, report.counts[0]
        ));
    }
    Ok(format!(
        "n(1e-60) = {}, n·ln|ln λ|/|ln λ| = {:.4} in [0.8, 1.6]; ½-normalized n/Ξ = {:.4} \
         (displayed, unasserted)",
        report.counts[0], ratio, half_norm
    ))
}

/// 8. Landau levels recovered variationally at zero perturbation.
pub fn check_landau_levels() -> Result<String, String> {
    let spec = FieldSpec::background(1.0);
    let n = 20;
    let grid = QuadratureGrid::for_basis(&spec, n);
    let mut worst: f64 = 0.0;
    for q in 0..=3u16 {
        let (a, bm) = landau_form_matrices(q, &spec, n, &grid).map_err(|e| e.to_string())?;
        let (res, _) =
            gen_eigensolve(&a, &bm, SpectrumKind::Hamiltonian).map_err(|e| e.to_string())?;
        let level = 2.0 * q as f64;
        for &e in &res.eigenvalues {
            let rel = (e - level).abs() / level.abs().max(1.0);
            worst = worst.max(rel);
            if rel > 1e-10 {
                return Err(format!(
                    "q={}: ritz {} vs level {} (rel {:.2e})",
                    q, e, level, rel
                ));
            }
        }
    }
    Ok(format!(
        "levels 0,2,4,6 recovered; worst relative deviation {:.2e}",
        worst
    ))
}

/// Run all eight checks, printing one line per check.
pub fn run_verify() -> i32 {
    type Check = fn() -> Result<String, String>;
    let checks: Vec<(&'static str, Check)> = vec![
        ("1 exact-values", check_exact_values),
        ("2 structure-theorems", check_structure),
        ("3 scalar-identity", check_scalar_identity),
        (
            "4 effective-potential-cross",
            check_effective_potential_cross,
        ),
        ("5 toeplitz-equivalence", check_toeplitz_equivalence),
        ("6 decay-probe", check_decay_probe),
        ("7 counting-probe", check_counting_probe),
        ("8 landau-levels", check_landau_levels),
    ];
    let mut all_ok = true;
    let total = Instant::now();
    for (name, f) in checks {
        let t = Instant::now();
        match f() {
            Ok(detail) => {
                println!("PASS {} ({} ms): {}", name, t.elapsed().as_millis(), detail);
            }
            Err(detail) => {
                all_ok = false;
                println!("FAIL {} ({} ms): {}", name, t.elapsed().as_millis(), detail);
            }
        }
    }
    println!(
        "verify: {} in {} ms",
        if all_ok {
            "all checks passed"
        } else {
            "FAILURES present"
        },
        total.elapsed().as_millis()
    );
    if all_ok {
        crate::commands::EXIT_OK
    } else {
        crate::commands::EXIT_IDENTITY
    }
}
