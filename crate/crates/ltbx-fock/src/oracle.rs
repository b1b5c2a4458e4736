//! Closed-form log-domain Toeplitz oracle for the unperturbed (b = 0)
//! radial case.
//!
//! With `b = 0` the scaled basis diagonalizes every radial Toeplitz form, and
//! the eigenvalue of basis mode `n` is the Gamma-weight average
//!
//! ```text
//!   λ_n = ∫₀^∞ W(r) r^{2n+1} e^{−B°r²/2} dr / ∫₀^∞ r^{2n+1} e^{−B°r²/2} dr
//!       = (1/n!) ∫₀^{∞} W̃(t) t^n e^{−t} dt ,   t = B°r²/2.
//! ```
//!
//! Everything is evaluated in the log domain so that `n` up to a few hundred
//! keeps ~1e−12 relative accuracy even when `λ_n` underflows `f64`.

use crate::bump::RadialBump;
use crate::error::FockError;
use crate::quad::gauss_legendre;
use crate::special::{ln_factorial, ln_gamma_p};

/// Radial weight profile for the oracle.
#[derive(Clone, Debug)]
pub enum RadialProfile {
    /// Indicator of the disk of the given radius (`+∞` for the constant 1).
    DiskIndicator { radius: f64 },
    /// Sum of origin-centered bump profiles; must be nonnegative.
    Bumps(Vec<RadialBump>),
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialProfile::DiskIndicator { radius } => {
                if r < *radius {
                    1.0
                } else {
                    0.0
                }
            }
            RadialProfile::Bumps(bumps) => bumps.iter().map(|b| b.profile_deriv(0, r * r)).sum(),
        }
    }

    pub fn support_radius(&self) -> f64 {
        match self {
            RadialProfile::DiskIndicator { radius } => *radius,
            RadialProfile::Bumps(bumps) => bumps.iter().map(|b| b.radius).fold(0.0, f64::max),
        }
    }
}

/// `ln λ_n` for `n = 0..n_max` (basis-mode index).
///
/// Disk indicators use the exact regularized incomplete gamma
/// `λ_n = P(n+1, B°R²/2)`; bump profiles are polynomials in `t` on their
/// support, so Gauss–Legendre of matching degree integrates them exactly up
/// to rounding, with the `t^n e^{−t}` magnitude handled by a log-shifted
/// accumulation.
#[allow(clippy::needless_range_loop)]
pub fn radial_toeplitz_oracle(
    profile: &RadialProfile,
    b0: f64,
    n_max: usize,
) -> Result<Vec<f64>, FockError> {
    match profile {
        RadialProfile::DiskIndicator { radius } => {
            if !radius.is_finite() {
                return Ok(vec![0.0; n_max + 1]); // λ_n = 1 exactly
            }
            let x0 = b0 * radius * radius / 2.0;
            Ok((0..=n_max)
                .map(|n| ln_gamma_p(n as f64 + 1.0, x0))
                .collect())
        }
        RadialProfile::Bumps(bumps) => {
            let max_k = bumps.iter().map(|b| b.k).max().unwrap_or(0) as usize;
            let x_max = b0 * profile.support_radius().powi(2) / 2.0;
            // integrand degree in t is ≤ n + k; nodes for exactness plus slack
            let nodes = (n_max + max_k) / 2 + 24;
            let (gx, gw) = gauss_legendre(nodes);
            let t: Vec<f64> = gx.iter().map(|x| 0.5 * x_max * (x + 1.0)).collect();
            let w: Vec<f64> = gw.iter().map(|w| 0.5 * x_max * w).collect();
            let wt: Vec<f64> = t
                .iter()
                .map(|&ti| profile.eval((2.0 * ti / b0).sqrt()))
                .collect();
            let mut out = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                // ln Σ w_i W_i t_i^n e^{−t_i} via max-shift; signed to allow
                // mildly negative lobes as long as the total is positive
                let mut shift = f64::NEG_INFINITY;
                for (i, &wi) in wt.iter().enumerate() {
                    if wi != 0.0 {
                        let mag = n as f64 * t[i].ln() - t[i] + (w[i] * wi.abs()).ln();
                        shift = shift.max(mag);
                    }
                }
                if shift == f64::NEG_INFINITY {
                    return Err(FockError::NegativeProfile);
                }
                let mut acc = 0.0f64;
                for (i, &wi) in wt.iter().enumerate() {
                    if wi != 0.0 {
                        let mag = n as f64 * t[i].ln() - t[i] + (w[i] * wi.abs()).ln();
                        acc += wi.signum() * (mag - shift).exp();
                    }
                }
                if acc <= 0.0 {
                    return Err(FockError::NegativeProfile);
                }
                out.push(shift + acc.ln() - ln_factorial(n));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_n0_is_one_minus_inv_e() {
        // n = 0, B°R²/2 = 1: λ₀ = 1 − e^{−1}
        let p = RadialProfile::DiskIndicator {
            radius: (2.0f64).sqrt(),
        };
        let lns = radial_toeplitz_oracle(&p, 1.0, 0).unwrap();
        let expected = (1.0 - (-1.0f64).exp()).ln();
        assert!((lns[0] - expected).abs() < 1e-14);
    }

    #[test]
    fn constant_weight_gives_ones() {
        let p = RadialProfile::DiskIndicator {
            radius: f64::INFINITY,
        };
        let lns = radial_toeplitz_oracle(&p, 1.0, 200).unwrap();
        assert!(lns.iter().all(|&l| l == 0.0));
        // and a huge but finite disk also saturates to 1 in f64
        let p = RadialProfile::DiskIndicator { radius: 40.0 };
        let lns = radial_toeplitz_oracle(&p, 1.0, 50).unwrap();
        assert!(lns.iter().all(|&l| l.abs() < 1e-12));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn bump_profile_matches_direct_quadrature_for_small_n() {
        let bump = RadialBump::origin(0.7, 1.2, 6);
        let p = RadialProfile::Bumps(vec![bump.clone()]);
        let b0 = 1.3;
        let lns = radial_toeplitz_oracle(&p, b0, 6).unwrap();
        // direct linear-domain comparison using plain Simpson on r
        for n in 0..=6usize {
            let steps = 20_000;
            let rmax = 1.2;
            let h = rmax / steps as f64;
            let mut num = 0.0f64;
            for i in 0..=steps {
                let r = i as f64 * h;
                let simpson = if i == 0 || i == steps {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                num += simpson
                    * bump.profile_deriv(0, r * r)
                    * r.powi(2 * n as i32 + 1)
                    * (-b0 * r * r / 2.0).exp();
            }
            num *= h / 3.0;
            let den = 0.5 * (2.0 / b0).powi(n as i32 + 1) * (1..=n).product::<usize>() as f64;
            let expected = (num / den).ln();
            assert!(
                (lns[n] - expected).abs() < 1e-8,
                "n={}: {} vs {}",
                n,
                lns[n],
                expected
            );
        }
    }

    #[test]
    fn deep_tail_indicator_values() {
        // λ_n = P(n+1, x); n = 200, x = 1: ln λ ≈ −1 − ln(201!) + ln(1+ε)
        let p = RadialProfile::DiskIndicator {
            radius: (2.0f64).sqrt(),
        };
        let lns = radial_toeplitz_oracle(&p, 1.0, 200).unwrap();
        let expected =
            -1.0 - ln_factorial(201) + (1.0f64 + 1.0 / 202.0 + 1.0 / (202.0 * 203.0)).ln();
        assert!(
            (lns[200] - expected).abs() < 1e-9 * expected.abs(),
            "{} vs {}",
            lns[200],
            expected
        );
    }
}
