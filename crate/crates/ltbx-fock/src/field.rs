//! Concrete field specifications: the perturbation pair `(b, V)` as finite
//! sums of radial polynomial bumps over a constant background `B°`, with
//! closed-form flux, scalar potential and circulation.
//!
//! The scalar potential of each bump is its logarithmic potential
//! `ψ(x) = (2π)^{-1}∫ b(y) log|x−y| dy`. For a radial bump this is fixed by
//! `ψ'(r) = r^{-1}∫₀^r b(ρ)ρ dρ` together with the normalization
//! `ψ(r) = σ·ln r` outside the support (Newton's theorem makes the exterior
//! value exactly the flux times the logarithm, with no additive constant).

use crate::bump::RadialBump;
use crate::error::FockError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Background field B° > 0.
    #[serde(rename = "B0")]
    pub b0: f64,
    /// Magnetic perturbation bumps.
    #[serde(rename = "b", default)]
    pub b_terms: Vec<RadialBump>,
    /// Electric potential bumps.
    #[serde(rename = "V", default)]
    pub v_terms: Vec<RadialBump>,
}

impl FieldSpec {
    pub fn background(b0: f64) -> Self {
        FieldSpec {
            b0,
            b_terms: vec![],
            v_terms: vec![],
        }
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // !(x > 0) also rejects NaN
    pub fn validate(&self) -> Result<(), FockError> {
        if !(self.b0 > 0.0) {
            return Err(FockError::BadSpec("B0 must be positive".into()));
        }
        for bump in self.b_terms.iter().chain(self.v_terms.iter()) {
            if !(bump.radius > 0.0) {
                return Err(FockError::BadSpec("bump radius must be positive".into()));
            }
            if bump.k == 0 {
                return Err(FockError::BadSpec("bump smoothness k must be ≥ 1".into()));
            }
        }
        Ok(())
    }

    /// All bumps at the origin: the whole problem is rotation invariant and
    /// the fast diagonal paths apply.
    pub fn is_radial(&self) -> bool {
        self.b_terms
            .iter()
            .chain(self.v_terms.iter())
            .all(|b| b.is_origin_centered())
    }

    /// Smallest smoothness exponent across the bumps of a field; `None` when
    /// the field is identically zero (no constraint).
    pub fn min_smoothness(&self, magnetic: bool) -> Option<u32> {
        let terms = if magnetic {
            &self.b_terms
        } else {
            &self.v_terms
        };
        terms.iter().map(|b| b.k).min()
    }

    /// Flux of the perturbing field divided by 2π: `Σ c_i R_i²/(2(k_i+1))`.
    pub fn flux(&self) -> f64 {
        self.b_terms.iter().map(|b| b.flux()).sum()
    }

    /// `b(z)`.
    pub fn b_at(&self, z: Complex64) -> f64 {
        self.b_terms.iter().map(|b| b.eval(z)).sum()
    }

    /// `V(z)`.
    pub fn v_at(&self, z: Complex64) -> f64 {
        self.v_terms.iter().map(|b| b.eval(z)).sum()
    }

    /// Perturbation scalar potential `ψ(z) = Σ ψ_i(z)` (logarithmic
    /// potentials of the magnetic bumps).
    pub fn psi(&self, z: Complex64) -> f64 {
        self.b_terms.iter().map(|b| bump_log_potential(b, z)).sum()
    }

    /// Total scalar potential `Ψ(z) = B°|z|²/4 + ψ(z)`.
    pub fn total_potential(&self, z: Complex64) -> f64 {
        self.b0 * z.norm_sqr() / 4.0 + self.psi(z)
    }

    /// Radial derivative `dψ/dr` for radial specs; this is the circulation
    /// `a_θ(r) = r^{-1}∫₀^r b(ρ)ρ dρ` of the perturbation's vector
    /// potential.
    pub fn dpsi_dr(&self, r: f64) -> f64 {
        assert!(self.is_radial(), "dpsi_dr requires a radial spec");
        self.b_terms.iter().map(|b| bump_dpsi_dr(b, r)).sum()
    }

    /// Full circulation `A_θ(r) = B°r/2 + dψ/dr` for radial specs.
    pub fn circulation(&self, r: f64) -> f64 {
        self.b0 * r / 2.0 + self.dpsi_dr(r)
    }

    /// Deterministic fingerprint of the spec (FNV-1a over the canonical
    /// JSON) for stamping into result metadata.
    pub fn fingerprint(&self) -> String {
        let text = serde_json::to_string(self).expect("spec serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in text.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{:016x}", h)
    }

    /// Largest `|center| + R` over all bumps; 0 with no bumps.
    pub fn support_extent(&self) -> f64 {
        self.b_terms
            .iter()
            .chain(self.v_terms.iter())
            .map(|b| (b.center[0].hypot(b.center[1])) + b.radius)
            .fold(0.0, f64::max)
    }
}

/// Named free-function form of [`FieldSpec::psi`]: the perturbation's
/// scalar potential at a point.
pub fn scalar_potential(spec: &FieldSpec, z: Complex64) -> f64 {
    spec.psi(z)
}

/// `ψ'(r)·r = ∫₀^r g(ρ²)ρ dρ = σ(1 − (1 − r²/R²)^{k+1})` inside, `σ` outside.
fn bump_dpsi_dr(bump: &RadialBump, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let sigma = bump.flux();
    let r2 = bump.radius * bump.radius;
    if r * r >= r2 {
        sigma / r
    } else {
        sigma * (1.0 - (1.0 - r * r / r2).powi(bump.k as i32 + 1)) / r
    }
}

/// Logarithmic potential of one origin-centered-profile bump, translated to
/// its center. Outside the support: exactly `σ·ln|z − center|`. Inside:
/// continuous continuation with `ψ' = ` [`bump_dpsi_dr`].
fn bump_log_potential(bump: &RadialBump, z: Complex64) -> f64 {
    let w = z - bump.center_z();
    let r = w.norm();
    let sigma = bump.flux();
    if r >= bump.radius {
        if sigma == 0.0 {
            return 0.0;
        }
        return sigma * r.ln();
    }
    // inside: ψ(r) = σ[ln R − ∫_{x}^{1} (1 − (1−u)^{k+1})/(2u) du], x = r²/R²
    // expand (1 − (1−u)^{k+1})/u = Σ_{j=1}^{k+1} C(k+1,j)(−1)^{j−1} u^{j−1}
    // and integrate: I(x) = Σ_j C(k+1,j)(−1)^{j−1} x^j / j
    let x = (r * r) / (bump.radius * bump.radius);
    sigma * (bump.radius.ln() + 0.5 * (poly_i(bump.k, x) - poly_i(bump.k, 1.0)))
}

fn poly_i(k: u32, x: f64) -> f64 {
    let kk = k as i64 + 1;
    let mut acc = 0.0f64;
    let mut binom = 1.0f64; // C(k+1, j) built incrementally
    let mut sign = 1.0f64;
    let mut xp = 1.0f64;
    for j in 1..=kk {
        binom *= (kk - j + 1) as f64 / j as f64;
        xp *= x;
        acc += sign * binom * xp / j as f64;
        sign = -sign;
    }
    acc
}
