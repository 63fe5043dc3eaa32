//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building curves, bases, periods,
/// lattices or verdicts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not squarefree: two roots coincide within tolerance")]
    NonSquarefree,
    #[error("root finding did not converge within the iteration cap")]
    DidNotConverge,
    #[error("polynomial degree {0} is too small for this operation")]
    DegreeTooSmall(usize),
    #[error("curve is not symmetric under x -> -x (odd coefficients are not negligible)")]
    NotEvenSymmetric,
    #[error("Hurwitz identity g = 2*g_sigma + n - 1 failed (g={g}, g_sigma={g_sigma}, n={n})")]
    HurwitzMismatch { g: usize, g_sigma: usize, n: usize },
    #[error("differential form is identically zero")]
    ZeroForm,
    #[error("could not resolve the preimages of a quotient point")]
    PreimageResolutionFailed,
    #[error("canonical split failed: support of the quotient divisor could not be resolved")]
    SplitFailed,
    #[error("path construction failed: {0}")]
    PathingFailed(String),
    #[error("lift of a quotient cycle lost the sheet near a branch point")]
    LiftFailed,
    #[error("cycle basis is degenerate: intersection matrix is not the standard symplectic form")]
    BasisDegenerate,
    #[error("intersection computation stayed degenerate after the perturbation budget")]
    DegeneratePosition,
    #[error("analytic continuation of the square root lost the sheet")]
    SheetLost,
    #[error("quadrature did not converge under node doubling")]
    QuadratureNotConverged,
    #[error("normalization block is numerically singular (condition {0:.3e})")]
    NormalizationSingular(f64),
    #[error("lattice generators do not span the ambient real vector space")]
    RankDeficient,
    #[error("lattice generator matrix is ill conditioned")]
    IllConditioned,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice lemma violated in clause {0}")]
    LemmaViolation(&'static str),
    #[error("the two marked points are not fixed points of the involution")]
    NotFixedPoints,
    #[error("the requested x-value is a branch point of the curve")]
    OnBranchPoint,
    #[error("operation requires genus >= 1")]
    GenusZero,
    #[error("input error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Classifies errors the command line maps to exit code 2 (bad input)
    /// versus exit code 3 (verification / numerical failure).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::NonSquarefree
                | Error::DegreeTooSmall(_)
                | Error::NotEvenSymmetric
                | Error::Io(_)
        )
    }
}
