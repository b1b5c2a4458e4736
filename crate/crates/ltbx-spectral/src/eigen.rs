#![allow(clippy::needless_range_loop)]

//! Dense Hermitian eigensolvers: cyclic Jacobi with complex rotations, a
//! Cholesky reduction for the generalized pencil `(A, G)`, and spectral
//! deflation of near-singular Gram matrices.
//!
//! The Jacobi rotation for a Hermitian pair `(a_pp, a_pq, a_qq)` with
//! `a_pq = |a_pq| e^{iφ}` is the classic real rotation conjugated by the
//! phase: `J_pp = c, J_pq = s·e^{iφ}, J_qp = −s·e^{−iφ}, J_qq = c`, with
//! `t` from `t² + 2θt − 1 = 0`, `θ = (a_qq − a_pp)/(2|a_pq|)`. Sweeps are
//! row-cyclic and deterministic, so results are bit-identical run to run.

use crate::error::SpectralError;
use ltbx_fock::CMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Eigenvalue ordering conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Descending by absolute value (Toeplitz results).
    Toeplitz,
    /// Ascending (Hamiltonian results).
    Hamiltonian,
}

/// Eigenvalue list with trust floor and provenance metadata.
#[derive(Clone, Debug)]
pub struct SpectralResult {
    /// Sorted per [`SpectrumKind`].
    pub eigenvalues: Vec<f64>,
    /// Natural logs of |eigenvalue| when the source is a log-domain oracle;
    /// authoritative below the floating-point floor.
    pub log_abs: Option<Vec<f64>>,
    pub kind: SpectrumKind,
    /// Matrix-path results: 1e−12 × largest |eigenvalue|; values below it
    /// are reported but must not be trusted. Log-domain oracles: 0.
    pub trust_floor: f64,
    pub basis_size: usize,
    /// Number of basis directions dropped by Gram deflation.
    pub deflated: usize,
    pub metadata: BTreeMap<String, String>,
}

impl SpectralResult {
    pub fn from_matrix_eigenvalues(
        mut eigs: Vec<f64>,
        kind: SpectrumKind,
        basis_size: usize,
        deflated: usize,
    ) -> Self {
        match kind {
            SpectrumKind::Toeplitz => eigs.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap()),
            SpectrumKind::Hamiltonian => eigs.sort_by(|a, b| a.partial_cmp(b).unwrap()),
        }
        let max_abs = eigs.iter().map(|x| x.abs()).fold(0.0, f64::max);
        SpectralResult {
            eigenvalues: eigs,
            log_abs: None,
            kind,
            trust_floor: 1e-12 * max_abs,
            basis_size,
            deflated,
            metadata: BTreeMap::new(),
        }
    }

    /// Log-domain oracle list (`ln λ_n`, positive spectrum), trust floor 0.
    pub fn from_log_eigenvalues(log_lambdas: Vec<f64>) -> Self {
        let mut idx: Vec<usize> = (0..log_lambdas.len()).collect();
        idx.sort_by(|&a, &b| log_lambdas[b].partial_cmp(&log_lambdas[a]).unwrap());
        let sorted_logs: Vec<f64> = idx.iter().map(|&i| log_lambdas[i]).collect();
        let eigenvalues = sorted_logs.iter().map(|l| l.exp()).collect();
        SpectralResult {
            eigenvalues,
            log_abs: Some(sorted_logs),
            kind: SpectrumKind::Toeplitz,
            trust_floor: 0.0,
            basis_size: log_lambdas.len(),
            deflated: 0,
            metadata: BTreeMap::new(),
        }
    }

    /// Eigenvalues at or above the trust floor (by absolute value).
    pub fn trusted(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .copied()
            .filter(|x| x.abs() >= self.trust_floor)
            .collect()
    }
}

/// Cholesky factorization `A = L L^H` for Hermitian positive definite input.
/// Returns the pivot index at the first pivot below `pivot_floor` instead of
/// factoring garbage.
pub fn cholesky(a: &CMatrix, pivot_floor: f64) -> Result<CMatrix, usize> {
    let n = a.n;
    let mut l = CMatrix::zeros(n);
    for j in 0..n {
        let mut diag = a.get(j, j).re;
        for k in 0..j {
            diag -= l.get(j, k).norm_sqr();
        }
        if diag <= pivot_floor {
            return Err(j);
        }
        let ljj = diag.sqrt();
        l.set(j, j, Complex64::new(ljj, 0.0));
        for i in (j + 1)..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l.get(i, k) * l.get(j, k).conj();
            }
            l.set(i, j, v / ljj);
        }
    }
    Ok(l)
}

/// Solve `L x = b` (lower triangular).
fn forward_solve(l: &CMatrix, b: &mut [Complex64]) {
    let n = l.n;
    for i in 0..n {
        let mut v = b[i];
        for k in 0..i {
            v -= l.get(i, k) * b[k];
        }
        b[i] = v / l.get(i, i);
    }
}

/// Solve `L^H x = b` (upper triangular adjoint).
fn adjoint_solve(l: &CMatrix, b: &mut [Complex64]) {
    let n = l.n;
    for i in (0..n).rev() {
        let mut v = b[i];
        for k in (i + 1)..n {
            v -= l.get(k, i).conj() * b[k];
        }
        b[i] = v / l.get(i, i);
    }
}

/// Cyclic Jacobi for a Hermitian matrix; returns (eigenvalues, vectors as
/// columns of V).
pub fn jacobi_hermitian(a: &CMatrix) -> Result<(Vec<f64>, CMatrix), SpectralError> {
    const MAX_SWEEPS: usize = 60;
    let n = a.n;
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    if n == 1 {
        return Ok((vec![m.get(0, 0).re], v));
    }
    let scale: f64 = (0..n)
        .map(|i| m.get(i, i).re.abs())
        .fold(m.max_abs(), f64::max)
        .max(1e-300);
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            let eigs = (0..n).map(|i| m.get(i, i).re).collect();
            return Ok((eigs, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // column update: col_p ← c·col_p − s·e^{−iφ}·col_q,
                //                col_q ← s·e^{iφ}·col_p + c·col_q
                for k in 0..n {
                    let akp = m.get(k, p);
                    let akq = m.get(k, q);
                    m.set(k, p, akp * c - akq * s * phase.conj());
                    m.set(k, q, akp * s * phase + akq * c);
                }
                // row update with conjugated coefficients
                for k in 0..n {
                    let apk = m.get(p, k);
                    let aqk = m.get(q, k);
                    m.set(p, k, apk * c - aqk * s * phase);
                    m.set(q, k, apk * s * phase.conj() + aqk * c);
                }
                // exact diagonal/off-diagonal values to curb drift
                m.set(p, p, Complex64::new(app - t * mag, 0.0));
                m.set(q, q, Complex64::new(aqq + t * mag, 0.0));
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c - vkq * s * phase.conj());
                    v.set(k, q, vkp * s * phase + vkq * c);
                }
            }
        }
    }
    Err(SpectralError::NoConvergence(MAX_SWEEPS))
}

/// Generalized Hermitian eigensolve for the pencil `(A, G)`.
///
/// `G = LL^H` (Cholesky), then the standard problem for `L⁻¹AL⁻ᴴ`. Pivots
/// below `1e−10·trace(G)/N` trigger basis deflation through the spectral
/// decomposition of `G` instead of failure; the deflation count lands in the
/// result. `G` indefinite beyond the threshold is an error.
pub fn gen_eigensolve(
    a: &CMatrix,
    g: &CMatrix,
    kind: SpectrumKind,
) -> Result<(SpectralResult, Vec<Vec<Complex64>>), SpectralError> {
    assert_eq!(a.n, g.n);
    let n = a.n;
    let thr = 1e-10 * g.trace_re() / n as f64;
    match cholesky(g, thr) {
        Ok(l) => {
            // B = L⁻¹ A L⁻ᴴ column by column
            let mut b = CMatrix::zeros(n);
            for j in 0..n {
                let mut col: Vec<Complex64> = (0..n).map(|i| a.get(i, j)).collect();
                forward_solve(&l, &mut col);
                for i in 0..n {
                    b.set(i, j, col[i]);
                }
            }
            // apply L⁻¹ from the right: B ← (L⁻¹ Bᴴ)ᴴ
            let mut bh = b.adjoint();
            for j in 0..n {
                let mut col: Vec<Complex64> = (0..n).map(|i| bh.get(i, j)).collect();
                forward_solve(&l, &mut col);
                for i in 0..n {
                    bh.set(i, j, col[i]);
                }
            }
            let b = bh.adjoint();
            let (eigs, u) = jacobi_hermitian(&b)?;
            // eigenvectors x = L⁻ᴴ u
            let mut vectors = Vec::with_capacity(n);
            for j in 0..n {
                let mut col: Vec<Complex64> = (0..n).map(|i| u.get(i, j)).collect();
                adjoint_solve(&l, &mut col);
                vectors.push(col);
            }
            let order = sort_permutation(&eigs, kind);
            let eigs_sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
            let vecs_sorted: Vec<Vec<Complex64>> =
                order.iter().map(|&i| vectors[i].clone()).collect();
            let mut res = SpectralResult::from_matrix_eigenvalues(eigs_sorted.clone(), kind, n, 0);
            res.eigenvalues = eigs_sorted; // keep the pairing with vectors
            Ok((res, vecs_sorted))
        }
        Err(_) => {
            // deflation route
            let (gammas, u) = jacobi_hermitian(g)?;
            if let Some(&worst) = gammas
                .iter()
                .filter(|&&x| x < -thr)
                .min_by(|a, b| a.partial_cmp(b).unwrap())
            {
                return Err(SpectralError::IndefiniteGram(worst));
            }
            let kept: Vec<usize> = (0..n).filter(|&i| gammas[i] >= thr).collect();
            let k = kept.len();
            let deflated = n - k;
            // Ã = D^{-1/2} Ũᴴ A Ũ D^{-1/2}
            let mut at = CMatrix::zeros(k);
            for (jj, &j) in kept.iter().enumerate() {
                // w = A · (u_j / sqrt(γ_j))
                let uj: Vec<Complex64> = (0..n).map(|i| u.get(i, j) / gammas[j].sqrt()).collect();
                let w = a.mul_vec(&uj);
                for (ii, &i) in kept.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for r in 0..n {
                        acc += (u.get(r, i) / gammas[i].sqrt()).conj() * w[r];
                    }
                    at.set(ii, jj, acc);
                }
            }
            let (eigs, y) = jacobi_hermitian(&at)?;
            let mut vectors = Vec::with_capacity(k);
            for j in 0..k {
                let mut x = vec![Complex64::new(0.0, 0.0); n];
                for (ii, &i) in kept.iter().enumerate() {
                    let coef = y.get(ii, j) / gammas[i].sqrt();
                    for r in 0..n {
                        x[r] += u.get(r, i) * coef;
                    }
                }
                vectors.push(x);
            }
            let order = sort_permutation(&eigs, kind);
            let eigs_sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
            let vecs_sorted: Vec<Vec<Complex64>> =
                order.iter().map(|&i| vectors[i].clone()).collect();
            let mut res =
                SpectralResult::from_matrix_eigenvalues(eigs_sorted.clone(), kind, n, deflated);
            res.eigenvalues = eigs_sorted;
            Ok((res, vecs_sorted))
        }
    }
}

fn sort_permutation(eigs: &[f64], kind: SpectrumKind) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..eigs.len()).collect();
    match kind {
        SpectrumKind::Toeplitz => {
            idx.sort_by(|&a, &b| eigs[b].abs().partial_cmp(&eigs[a].abs()).unwrap())
        }
        SpectrumKind::Hamiltonian => idx.sort_by(|&a, &b| eigs[a].partial_cmp(&eigs[b]).unwrap()),
    }
    idx
}
