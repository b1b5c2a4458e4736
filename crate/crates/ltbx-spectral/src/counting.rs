//! Eigenvalue counting functions, the super-exponential normalization
//! `Ξ(λ) = ½|ln λ|/ln|ln λ|`, and the decay diagnostic `s_n = (n!·λ_n)^{1/n}`.

use crate::eigen::SpectralResult;
use crate::error::SpectralError;
use ltbx_fock::special::ln_factorial;

/// `Ξ(λ) = ½ |ln λ| / ln|ln λ|`, defined for `λ ∈ (0, e^{−e})` so that
/// `ln|ln λ| > 1`.
pub fn xi(lambda: f64) -> Result<f64, SpectralError> {
    let e = std::f64::consts::E;
    if !(lambda > 0.0 && lambda < (-e).exp()) {
        return Err(SpectralError::XiDomain(lambda));
    }
    let abs_ln = -lambda.ln();
    Ok(0.5 * abs_ln / abs_ln.ln())
}

/// `s_n = (n!·λ_n)^{1/n}` computed in the log domain from `ln λ` values.
///
/// Indexing is 1-based along the sorted eigenvalue sequence: `s_1` pairs the
/// largest eigenvalue with `1!`, `s_n` the n-th largest with `n!` — the
/// convention under which the disk-oracle sequence converges to `B°R²/2`.
pub fn decay_diagnostic_logs(log_lambdas: &[f64]) -> Vec<f64> {
    log_lambdas
        .iter()
        .enumerate()
        .map(|(i, &ln_lam)| {
            let n = i + 1;
            ((ln_factorial(n) + ln_lam) / n as f64).exp()
        })
        .collect()
}

/// Decay diagnostic for a spectral result: log-domain results use their exact
/// logs; matrix-path results use only eigenvalues above the trust floor.
/// Requires a positive spectrum.
pub fn decay_diagnostic(res: &SpectralResult) -> Vec<f64> {
    match &res.log_abs {
        Some(logs) => decay_diagnostic_logs(logs),
        None => {
            let logs: Vec<f64> = res
                .eigenvalues
                .iter()
                .take_while(|&&x| x > 0.0 && x >= res.trust_floor)
                .map(|x| x.ln())
                .collect();
            decay_diagnostic_logs(&logs)
        }
    }
}

/// Counting-function table against a λ grid.
#[derive(Clone, Debug)]
pub struct CountingReport {
    /// Strictly positive, decreasing.
    pub lambdas: Vec<f64>,
    pub counts: Vec<usize>,
    /// `Ξ(λ)`; NaN where λ is outside Ξ's domain.
    pub xi: Vec<f64>,
    /// `n(λ)/Ξ(λ)` (the ½-normalized ratio).
    pub ratio_paper: Vec<f64>,
    /// `n(λ)·ln|ln λ|/|ln λ|` (the oracle-limit normalization).
    pub ratio_oracle: Vec<f64>,
}

impl CountingReport {
    fn from_counter(lambdas: &[f64], count_above: impl Fn(f64) -> usize) -> Self {
        let mut sorted = lambdas.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let counts: Vec<usize> = sorted.iter().map(|&l| count_above(l)).collect();
        let xi_col: Vec<f64> = sorted.iter().map(|&l| xi(l).unwrap_or(f64::NAN)).collect();
        let ratio_paper: Vec<f64> = counts
            .iter()
            .zip(&xi_col)
            .map(|(&n, &x)| n as f64 / x)
            .collect();
        let ratio_oracle: Vec<f64> = counts
            .iter()
            .zip(&sorted)
            .map(|(&n, &l)| {
                let abs_ln = -l.ln();
                if abs_ln > 1.0 {
                    n as f64 * abs_ln.ln() / abs_ln
                } else {
                    f64::NAN
                }
            })
            .collect();
        CountingReport {
            lambdas: sorted,
            counts,
            xi: xi_col,
            ratio_paper,
            ratio_oracle,
        }
    }

    /// Monotonicity guard: `n(λ)` must be nonincreasing as λ increases.
    pub fn is_monotone(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `n(λ) = #{n : λ_n > λ}` with strict inequality (Glazman convention),
/// evaluated in the log domain when the result carries exact logs.
pub fn counting_report(res: &SpectralResult, lambdas: &[f64]) -> CountingReport {
    assert!(
        lambdas.iter().all(|&l| l > 0.0),
        "counting grid must be strictly positive"
    );
    match &res.log_abs {
        Some(logs) => CountingReport::from_counter(lambdas, |l| {
            let lnl = l.ln();
            logs.iter().filter(|&&x| x > lnl).count()
        }),
        None => CountingReport::from_counter(lambdas, |l| {
            res.eigenvalues.iter().filter(|&&x| x > l).count()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ltbx_fock::{radial_toeplitz_oracle, RadialProfile};

    #[test]
    fn xi_closed_forms() {
        let e = std::f64::consts::E;
        // λ = e^{−e²} → Ξ = e²/4;  λ = e^{−e³} → Ξ = e³/6
        let v = xi((-e * e).exp()).unwrap();
        assert!((v - e * e / 4.0).abs() < 1e-12);
        let v = xi((-e * e * e).exp()).unwrap();
        assert!((v - e * e * e / 6.0).abs() < 1e-12);
        assert!(xi(0.5).is_err());
        assert!(xi(-1.0).is_err());
    }

    #[test]
    fn xi_monotone_decreasing_in_lambda() {
        // larger λ ⇒ smaller Ξ on the whole domain
        let mut prev = f64::INFINITY;
        for k in (1..60).rev() {
            let lam = (10.0f64).powi(-k - 2);
            let v = xi(lam).unwrap();
            assert!(v < prev, "not monotone at {}", lam);
            prev = v;
        }
    }

    #[test]
    fn decay_exact_geometric_over_factorial() {
        // λ_n = x^n/n! (1-based) gives s_n = x exactly
        let x: f64 = 0.7;
        let logs: Vec<f64> = (1..=50)
            .map(|n| (n as f64) * x.ln() - ln_factorial(n))
            .collect();
        let s = decay_diagnostic_logs(&logs);
        for &v in &s {
            assert!((v - x).abs() < 1e-12);
        }
    }

    #[test]
    fn counting_disk_oracle_at_1e12() {
        // x₀ = 1: n(1e−12) = 14
        let profile = RadialProfile::DiskIndicator {
            radius: (2.0f64).sqrt(),
        };
        let logs = radial_toeplitz_oracle(&profile, 1.0, 40).unwrap();
        let res = SpectralResult::from_log_eigenvalues(logs);
        let report = counting_report(&res, &[1e-12]);
        assert_eq!(report.counts[0], 14);
        // λ above λ₀ counts zero
        let report = counting_report(&res, &[0.9]);
        assert_eq!(report.counts[0], 0);
        assert!(report.is_monotone());
    }

    #[test]
    fn trust_floor_truncates_matrix_path() {
        let res = SpectralResult::from_matrix_eigenvalues(
            vec![1.0, 1e-3, 1e-14],
            crate::eigen::SpectrumKind::Toeplitz,
            3,
            0,
        );
        let s = decay_diagnostic(&res);
        assert_eq!(s.len(), 2); // 1e−14 is below the trust floor
    }
}
