//! Translated radial polynomial bumps with closed-form Wirtinger derivatives.
//!
//! Profile: `g(s) = c·(1 − s/R²)^k` for `s = |z − center|² < R²`, zero
//! outside. The bump is C^{k−1} across the support boundary, and every mixed
//! Wirtinger derivative of total order ≤ k−1 is continuous and closed-form:
//! each `∂` / `∂̄` step maps the family `w^i w̄^j g^{(n)}(s)` into itself
//! (`w = z − center`), so a derivative is a small integer-coefficient table
//! over `(i, j, n)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RadialBump {
    /// Center in the plane.
    pub center: [f64; 2],
    /// Amplitude `c`.
    pub c: f64,
    /// Support radius `R`.
    #[serde(rename = "R")]
    pub radius: f64,
    /// Smoothness exponent `k`; the bump is C^{k−1}.
    pub k: u32,
}

impl RadialBump {
    pub fn origin(c: f64, radius: f64, k: u32) -> Self {
        RadialBump {
            center: [0.0, 0.0],
            c,
            radius,
            k,
        }
    }

    pub fn center_z(&self) -> Complex64 {
        Complex64::new(self.center[0], self.center[1])
    }

    pub fn is_origin_centered(&self) -> bool {
        self.center[0] == 0.0 && self.center[1] == 0.0
    }

    /// Flux of this bump divided by 2π: `c R² / (2(k+1))`.
    pub fn flux(&self) -> f64 {
        self.c * self.radius * self.radius / (2.0 * (self.k as f64 + 1.0))
    }

    /// `g^{(n)}(s)`: n-th derivative of the profile in the `s = |w|²`
    /// variable. Zero for `n > k` or outside the support.
    pub fn profile_deriv(&self, n: u32, s: f64) -> f64 {
        let r2 = self.radius * self.radius;
        if s >= r2 || n > self.k {
            return 0.0;
        }
        // c · k!/(k−n)! · (−1/R²)^n · (1 − s/R²)^{k−n}
        let mut coef = self.c;
        for i in 0..n {
            coef *= -((self.k - i) as f64) / r2;
        }
        coef * (1.0 - s / r2).powi((self.k - n) as i32)
    }

    /// Value of the bump at `z`.
    pub fn eval(&self, z: Complex64) -> f64 {
        let w = z - self.center_z();
        self.profile_deriv(0, w.norm_sqr())
    }

    /// Value of `∂^d ∂̄^dbar` of the bump at `z` using a derivative table.
    pub fn eval_deriv(&self, table: &DerivTable, z: Complex64) -> Complex64 {
        let w = z - self.center_z();
        let s = w.norm_sqr();
        if s >= self.radius * self.radius {
            return Complex64::new(0.0, 0.0);
        }
        let wbar = w.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for &((i, j, n), coef) in &table.terms {
            let gval = self.profile_deriv(n, s);
            if gval == 0.0 {
                continue;
            }
            acc += w.powu(i) * wbar.powu(j) * (coef * gval);
        }
        acc
    }
}

/// Integer-coefficient expansion of `∂^d ∂̄^dbar g(|w|²)` over monomials
/// `w^i w̄^j g^{(n)}(s)`.
#[derive(Clone, Debug)]
pub struct DerivTable {
    pub d: u16,
    pub dbar: u16,
    terms: Vec<((u32, u32, u32), f64)>,
}

impl DerivTable {
    pub fn new(d: u16, dbar: u16) -> Self {
        use std::collections::BTreeMap;
        // start from g itself, apply ∂ d times then ∂̄ dbar times:
        //   ∂ : (i,j,n) ↦ i·(i−1,j,n) + (i,j+1,n+1)
        //   ∂̄ : (i,j,n) ↦ j·(i,j−1,n) + (i+1,j,n+1)
        let mut terms: BTreeMap<(u32, u32, u32), f64> = BTreeMap::new();
        terms.insert((0, 0, 0), 1.0);
        let step = |terms: &BTreeMap<(u32, u32, u32), f64>, holo: bool| {
            let mut out: BTreeMap<(u32, u32, u32), f64> = BTreeMap::new();
            for (&(i, j, n), &c) in terms {
                if holo {
                    if i > 0 {
                        *out.entry((i - 1, j, n)).or_insert(0.0) += c * i as f64;
                    }
                    *out.entry((i, j + 1, n + 1)).or_insert(0.0) += c;
                } else {
                    if j > 0 {
                        *out.entry((i, j - 1, n)).or_insert(0.0) += c * j as f64;
                    }
                    *out.entry((i + 1, j, n + 1)).or_insert(0.0) += c;
                }
            }
            out
        };
        for _ in 0..d {
            terms = step(&terms, true);
        }
        for _ in 0..dbar {
            terms = step(&terms, false);
        }
        DerivTable {
            d,
            dbar,
            terms: terms.into_iter().collect(),
        }
    }
}
