#![allow(clippy::needless_range_loop)]

//! Dense complex matrices and the Gram / weighted (Toeplitz-type) matrix
//! assembly over the scaled zero-mode basis `φ_n = z^n e^{−Ψ}/√g_n`.
//!
//! The reference norms `g_n = π·n!·(2/B°)^{n+1}` are the unperturbed Fock
//! norms `‖z^n e^{−Ψ°}‖²`; scaling by them even in the perturbed case keeps
//! every matrix entry O(1) and is a similarity transform, so spectra are
//! unaffected. All per-point magnitudes are assembled in the log domain
//! (`exp((m+n)ln r − 2Ψ − ½ln g_m − ½ln g_n)`) to avoid overflow of `r^{m+n}`
//! before the division.

use crate::error::FockError;
use crate::eval::{FieldEvaluator, ScalarBindings};
use crate::field::FieldSpec;
use crate::quad::QuadratureGrid;
use crate::special::ln_factorial;
use ltbx_algebra::poly::FuncPoly;
use num_complex::Complex64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] += v;
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.add_to(i, j, a * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn trace_re(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// `ln g_n` for the reference Fock norms.
pub fn ln_basis_norm(n: usize, b0: f64) -> f64 {
    std::f64::consts::PI.ln() + ln_factorial(n) + (n as f64 + 1.0) * (2.0 / b0).ln()
}

/// Gram matrix `G_{mn} = (φ_m, φ_n)` over the grid. For radial specs the
/// angular integral vanishes off the diagonal, so only the 1D radial
/// integrals are computed and the matrix is exactly diagonal.
pub fn gram_matrix(
    spec: &FieldSpec,
    basis_size: usize,
    grid: &QuadratureGrid,
) -> Result<CMatrix, FockError> {
    weighted_matrix_impl(None, spec, basis_size, grid)
}

/// Weighted matrix `M_{mn} = ∫ W φ̄_m φ_n dx` with `W` the evaluation of a
/// real symbolic polynomial. The radial fast path applies when both the spec
/// and the polynomial are rotation invariant.
pub fn weighted_matrix(
    p: &FuncPoly,
    spec: &FieldSpec,
    basis_size: usize,
    grid: &QuadratureGrid,
    bindings: &ScalarBindings,
) -> Result<CMatrix, FockError> {
    if !p.is_real() {
        return Err(FockError::NonRealWeight);
    }
    let evaluator = FieldEvaluator::new(p, spec, bindings)?;
    weighted_matrix_impl(Some(&evaluator), spec, basis_size, grid)
}

fn weighted_matrix_impl(
    weight: Option<&FieldEvaluator<'_>>,
    spec: &FieldSpec,
    basis_size: usize,
    grid: &QuadratureGrid,
) -> Result<CMatrix, FockError> {
    grid.check_tail(spec, basis_size)?;
    let radial = spec.is_radial() && weight.is_none_or(|e| e.poly().is_phase_balanced());
    if radial {
        radial_assembly(weight, spec, basis_size, grid)
    } else {
        planar_assembly(weight, spec, basis_size, grid)
    }
}

fn radial_assembly(
    weight: Option<&FieldEvaluator<'_>>,
    spec: &FieldSpec,
    basis_size: usize,
    grid: &QuadratureGrid,
) -> Result<CMatrix, FockError> {
    let mut m = CMatrix::zeros(basis_size);
    let ln_norms: Vec<f64> = (0..basis_size).map(|n| ln_basis_norm(n, spec.b0)).collect();
    let two_pi = 2.0 * std::f64::consts::PI;
    for (&r, &wr) in grid.r_nodes.iter().zip(&grid.r_weights) {
        let z = Complex64::new(r, 0.0);
        let psi2 = 2.0 * spec.total_potential(z);
        let wval = match weight {
            Some(e) => e.eval(z).re,
            None => 1.0,
        };
        if wval == 0.0 {
            continue;
        }
        let lnr = r.ln();
        for n in 0..basis_size {
            let expo = (2 * n) as f64 * lnr - psi2 - ln_norms[n];
            m.add_to(
                n,
                n,
                Complex64::new(two_pi * wr * r * wval * expo.exp(), 0.0),
            );
        }
    }
    Ok(m)
}

fn planar_assembly(
    weight: Option<&FieldEvaluator<'_>>,
    spec: &FieldSpec,
    basis_size: usize,
    grid: &QuadratureGrid,
) -> Result<CMatrix, FockError> {
    let n = basis_size;
    let ln_norms: Vec<f64> = (0..n).map(|k| ln_basis_norm(k, spec.b0)).collect();
    let dtheta = 2.0 * std::f64::consts::PI / grid.n_theta as f64;
    let mut m = CMatrix::zeros(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for (&r, &wr) in grid.r_nodes.iter().zip(&grid.r_weights) {
        let lnr = r.ln();
        for it in 0..grid.n_theta {
            let theta = it as f64 * dtheta;
            let z = Complex64::from_polar(r, theta);
            let wval = match weight {
                Some(e) => e.eval(z).re,
                None => 1.0,
            };
            if wval == 0.0 && spec.psi(z) == 0.0 {
                // weight identically zero contributes nothing; potential
                // still matters for the Gram case (weight = 1), handled
                // by wval == 1.0 there
                if weight.is_some() {
                    continue;
                }
            }
            let psi2 = 2.0 * spec.total_potential(z);
            for (k, vk) in v.iter_mut().enumerate() {
                let expo = k as f64 * lnr - 0.5 * psi2 - 0.5 * ln_norms[k];
                *vk = Complex64::from_polar(expo.exp(), k as f64 * theta);
            }
            let base = wr * r * dtheta * wval;
            // upper triangle, mirrored after the loop
            for i in 0..n {
                let vi = v[i].conj() * base;
                for j in i..n {
                    m.add_to(i, j, vi * v[j]);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            let upper = m.get(j, i).conj();
            m.set(i, j, upper);
        }
    }
    Ok(m)
}
