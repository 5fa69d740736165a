//! Library-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Vector length does not match lattice rank, or two classes live in
    /// lattices of different rank.
    #[error("dimension mismatch: {what}")]
    Dimension { what: String },

    /// The Gram matrix restricted to the (C, D) sublattice is singular.
    #[error("degenerate (C, D) sublattice: determinant is zero")]
    DegenerateSublattice,

    /// A class used as a spherical reflection vector has self-pairing != -2.
    #[error("class is not spherical: <v, v> = {pairing}")]
    NotSpherical { pairing: String },

    /// Phase requested for a charge-kernel class without a kernel rule.
    #[error("central charge is zero and no kernel phase rule was supplied")]
    KernelPhaseUndefined,

    /// Slope requested for a charge-kernel class.
    #[error("central charge is zero; slope undefined")]
    KernelSlopeUndefined,

    /// Charge lies outside H u R_{<=0}: the class is not heart-compatible as
    /// presented (caller must shift).
    #[error("charge {re}+{im}i lies outside the allowed region")]
    OutsideRegion { re: String, im: String },

    /// Coordinate-change pole (e.g. D_omega_bar = -1).
    #[error("singular parameter value: {what}")]
    Singular { what: String },

    /// omega does not have C-coefficient 1 in the (C, D) decomposition.
    #[error("class not normalized: C-coefficient is {coeff}, expected 1")]
    NotNormalized { coeff: String },

    /// Coordinate falls outside its declared range (e.g. D_omega <= -1).
    #[error("coordinate out of range: {what}")]
    CoordinateOutOfRange { what: String },

    /// A numeric precondition failed (nonpositive V, a <= 0, ch0 <= 0, ...).
    #[error("out of domain: {what}")]
    OutOfDomain { what: String },

    /// D-class construction requires nu^2 = 2.
    #[error("D-class unavailable: nu^2 = {nu_sq}, need 2")]
    DClassUnavailable { nu_sq: String },

    /// Rank-2 example with q <= 2 admits no ample class.
    #[error("not a K3 configuration: q = {q} <= 2 admits no ample class")]
    NotAK3Configuration { q: i64 },

    /// A running hypothesis of the screen is violated (e.g. alpha . C != 0).
    #[error("hypothesis violated: {what}")]
    HypothesisViolated { what: String },

    /// Surface-file or CLI-argument parse failure.
    #[error("parse error: {what}")]
    Parse { what: String },
}

impl Error {
    /// Stable machine-readable code for the structured CLI error record.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "DimensionError",
            Error::DegenerateSublattice => "DegenerateSublattice",
            Error::NotSpherical { .. } => "NotSpherical",
            Error::KernelPhaseUndefined => "KernelPhaseUndefined",
            Error::KernelSlopeUndefined => "KernelSlopeUndefined",
            Error::OutsideRegion { .. } => "OutsideRegion",
            Error::Singular { .. } => "Singular",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::CoordinateOutOfRange { .. } => "CoordinateOutOfRange",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::DClassUnavailable { .. } => "DClassUnavailable",
            Error::NotAK3Configuration { .. } => "NotAK3Configuration",
            Error::HypothesisViolated { .. } => "HypothesisViolated",
            Error::Parse { .. } => "ParseError",
        }
    }
}
