//! Quadrature grids for zero-mode inner products: Gauss–Legendre in the
//! radius, uniform (trapezoidal) in the angle. The integrands are entire in
//! `r` and trigonometric polynomials plus smooth perturbations in `θ`, so
//! both directions converge spectrally.

use crate::error::FockError;
use crate::field::FieldSpec;
use crate::special::ln_gamma_q;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let mut p0 = 1.0f64;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Radial × angular product grid on the disk of radius `r_max`.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub r_nodes: Vec<f64>,
    pub r_weights: Vec<f64>,
    pub n_theta: usize,
    pub r_max: f64,
}

pub const EPS_TAIL: f64 = 1e-16;

impl QuadratureGrid {
    /// Grid sized for basis functions `z^n e^{−Ψ}`, `n < basis_size`, over
    /// the given spec.
    ///
    /// Truncation radius: `R_max = extent + sqrt(2(ln(1/ε) + (N+1)·ln N_safe)/B°)`
    /// with `ε = 1e−16` and `N_safe = max(N+1, 8)`; the exterior mass of the
    /// highest basis function is then `Q(N, B°R_max²/2) ≪ ε`, which
    /// [`Self::check_tail`] verifies exactly. Radial node count grows with
    /// `B°R_max²` (the integrand's modulus scale) plus the polynomial degree.
    pub fn for_basis(spec: &FieldSpec, basis_size: usize) -> Self {
        Self::for_basis_scaled(spec, basis_size, 1.0)
    }

    /// Same as [`Self::for_basis`] with all node counts multiplied by
    /// `refine` (used by the convergence tests).
    ///
    /// The radial rule is piecewise Gauss–Legendre with panel breaks at the
    /// radii where bump supports begin or end: the integrands are only
    /// C^{k−1} across those circles, and a break restores spectral
    /// convergence on each panel.
    pub fn for_basis_scaled(spec: &FieldSpec, basis_size: usize, refine: f64) -> Self {
        let n = basis_size.max(1);
        let n_safe = ((n + 1).max(8)) as f64;
        let extent = spec.support_extent();
        let r_max = extent
            + (2.0 * ((1.0 / EPS_TAIL).ln() + (n as f64 + 1.0) * n_safe.ln()) / spec.b0).sqrt();
        let mut breaks: Vec<f64> = vec![0.0, r_max];
        for bump in spec.b_terms.iter().chain(spec.v_terms.iter()) {
            let c = bump.center[0].hypot(bump.center[1]);
            for r in [c - bump.radius, c + bump.radius] {
                if r > 1e-12 && r < r_max - 1e-12 {
                    breaks.push(r);
                }
            }
        }
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
        let mut r_nodes = Vec::new();
        let mut r_weights = Vec::new();
        for pair in breaks.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let x_span = spec.b0 * (hi * hi - lo * lo) / 2.0;
            let n_panel = (((0.6 * x_span + n as f64 + 28.0) * refine).ceil() as usize).max(16);
            let (gx, gw) = gauss_legendre(n_panel);
            for (&x, &w) in gx.iter().zip(&gw) {
                r_nodes.push(0.5 * (hi - lo) * (x + 1.0) + lo);
                r_weights.push(0.5 * (hi - lo) * w);
            }
        }
        let n_theta = (((4 * n + 16) as f64 * refine).ceil() as usize).max(8);
        QuadratureGrid {
            r_nodes,
            r_weights,
            n_theta,
            r_max,
        }
    }

    /// Verify that the basis tail beyond `r_max` is below tolerance:
    /// the normalized exterior mass of `|φ_{N−1}|²` at `b = 0` is
    /// `Q(N, B°·r_max²/2)`.
    pub fn check_tail(&self, spec: &FieldSpec, basis_size: usize) -> Result<(), FockError> {
        let x = spec.b0 * self.r_max * self.r_max / 2.0;
        let ln_q = ln_gamma_q(basis_size as f64, x);
        let actual = ln_q.exp();
        if actual > EPS_TAIL {
            return Err(FockError::TailTolerance {
                n: basis_size,
                actual,
                required: EPS_TAIL,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        // exact for polynomials of degree 2n−1
        let (x, w) = gauss_legendre(8);
        let integral: f64 = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * (xi.powi(14) + 3.0 * xi.powi(7) + 1.0))
            .sum();
        let exact = 2.0 / 15.0 + 2.0;
        assert!((integral - exact).abs() < 1e-13);
    }

    #[test]
    fn gaussian_integral() {
        // ∫₀^∞ e^{−r²/2} r dr = 1, truncated at r_max from the grid builder
        let spec = FieldSpec::background(1.0);
        let grid = QuadratureGrid::for_basis(&spec, 10);
        let got: f64 = grid
            .r_nodes
            .iter()
            .zip(&grid.r_weights)
            .map(|(&r, &w)| w * (-r * r / 2.0).exp() * r)
            .sum();
        assert!((got - 1.0).abs() < 1e-13, "{}", got);
        grid.check_tail(&spec, 10).unwrap();
    }

    #[test]
    fn tail_violation_detected() {
        let spec = FieldSpec::background(1.0);
        let mut grid = QuadratureGrid::for_basis(&spec, 5);
        grid.r_max = 3.0; // far too small for n = 40
        assert!(matches!(
            grid.check_tail(&spec, 40),
            Err(FockError::TailTolerance { .. })
        ));
    }
}
