use thiserror::Error;

#[derive(Error, Debug)]
pub enum FockError {
    #[error("invalid field specification: {0}")]
    BadSpec(String),

    #[error("scalar symbol {0} occurs in the polynomial but is not bound")]
    UnboundScalar(String),

    #[error("the formal field U cannot be evaluated numerically")]
    FormalFieldInEval,

    #[error(
        "derivative order {needed} of field {field} exceeds bump smoothness (k−1 = {available}); \
         increase k in the field specification"
    )]
    SmoothnessExceeded {
        field: String,
        needed: u32,
        available: u32,
    },

    #[error(
        "quadrature tail tolerance violated for basis size {n}: exterior mass {actual:e} \
         exceeds {required:e}; enlarge the grid"
    )]
    TailTolerance {
        n: usize,
        actual: f64,
        required: f64,
    },

    #[error("weight polynomial is not real (Im ≠ 0 symbolically)")]
    NonRealWeight,

    #[error("profile must be nonnegative for the log-domain oracle (found negative total weight)")]
    NegativeProfile,
}
