use thiserror::Error;

#[derive(Error, Debug)]
pub enum SpectralError {
    #[error("Gram matrix is indefinite beyond the pivot threshold (eigenvalue {0:e})")]
    IndefiniteGram(f64),

    #[error("Jacobi eigensolver failed to converge in {0} sweeps")]
    NoConvergence(usize),

    #[error("xi(lambda) domain violation: lambda must lie in (0, e^-e), got {0:e}")]
    XiDomain(f64),

    #[error(
        "window ({lo}, {hi}) touches a Landau level guard band (guard {guard:e}); \
         shrink the window"
    )]
    WindowGuard { lo: f64, hi: f64, guard: f64 },

    #[error("window must lie inside (Lambda_q - B0, Lambda_q + B0)")]
    WindowOutsideGap,

    #[error("bump smoothness k = {got} too small for level q = {q}; need k >= {needed}")]
    SmoothnessTooLow { q: u16, needed: u32, got: u32 },

    #[error("spec must be radial (all bumps centered at the origin) for the oracle path")]
    NotRadial,

    #[error(transparent)]
    Fock(#[from] ltbx_fock::FockError),

    #[error(transparent)]
    Algebra(#[from] ltbx_algebra::AlgebraError),
}
