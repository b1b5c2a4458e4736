//! Generalized eigensolvers, counting diagnostics reproducing the
//! Toeplitz-decay phenomenology, and the Landau-level splitting experiment
//! with an independent radial ODE oracle.
//!
//! Splitting eigenvalues are computed variationally on the approximate
//! Landau subspaces `Q̄^q·H₀` (the reduction that turns every form into a
//! zero-mode Toeplitz form), while the radial oracle solves the honest 1D
//! spectral problem per angular sector; the two pipelines check each other.
//! Matrix paths run in double precision behind an explicit trust floor;
//! sub-floor claims are delegated to the closed-form log-domain oracle.

pub mod counting;
pub mod eigen;
pub mod error;
pub mod landau;
pub mod pauli1d;
pub mod splitting;

pub use counting::{counting_report, decay_diagnostic, decay_diagnostic_logs, xi, CountingReport};
pub use eigen::{cholesky, gen_eigensolve, jacobi_hermitian, SpectralResult, SpectrumKind};
pub use error::SpectralError;
pub use landau::{c_q_value, landau_form_matrices};
pub use pauli1d::{radial_pauli_oracle, Pauli1dOptions};
pub use splitting::{
    effective_potential_range, oracle_level_spectrum, ritz_level_spectrum, splitting_counts,
    EffectivePotentialRange, LevelSpectrum, SplittingReport, SplittingRow,
};
