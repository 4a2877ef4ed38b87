//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when constructing or transforming the
/// geometric objects in this crate.
///
/// Errors carry the measured quantity that violated the precondition so a
/// caller can report how far the input was from being usable.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input scalar was NaN or infinite.
    #[error("non-finite input: {what}")]
    NonFinite { what: &'static str },

    /// `exp` of a jay argument whose cosh/sinh exceed the `f64` range.
    #[error("jay exponential overflows f64 range for argument {phi}")]
    ExpOverflow { phi: f64 },

    /// A vector pair expected to span a plane is (numerically) parallel.
    #[error("degenerate pair: |a x b| = {cross_norm:.3e} below the parallel threshold")]
    DegeneratePair { cross_norm: f64 },

    /// Principal-axis reduction is undefined: `2 a.b / (a^2 + b^2)` is within
    /// the degeneracy tolerance of +/-1, so atanh blows up. Use
    /// `JayVector::is_isotropic` to detect these inputs up front.
    #[error("isotropic jay-vector: |2 a.b|/(a^2+b^2) = {ratio:.17} is too close to 1")]
    Isotropic { ratio: f64 },

    /// A principal axis expected to be nonzero vanished.
    #[error("degenerate principal axis: |p|^2 = {p_norm_sq:.3e}")]
    ZeroAxis { p_norm_sq: f64 },

    /// Triad determinant too small relative to the edge norms.
    #[error("singular triad: scalar triple product {delta:.3e} below conditioning threshold")]
    SingularTriad { delta: f64 },

    /// A matrix required to be symmetric positive definite was not.
    #[error("matrix is not positive definite: eigenvalues [{:.3e}, {:.3e}, {:.3e}]", eigenvalues[0], eigenvalues[1], eigenvalues[2])]
    NotPositiveDefinite { eigenvalues: [f64; 3] },

    /// A hyperboloid-pair matrix must have signature (-,-,+).
    #[error("wrong signature: eigenvalues [{:.3e}, {:.3e}, {:.3e}] do not split as two negative, one positive", eigenvalues[0], eigenvalues[1], eigenvalues[2])]
    WrongSignature { eigenvalues: [f64; 3] },

    /// A matrix expected to be a rotation failed `R^T R = I`, `det R = +1`.
    #[error("not a rotation: orthogonality/determinant residual {residual:.3e}")]
    NotRotation { residual: f64 },

    /// A matrix expected to preserve the metric `E = diag(-1,-1,1)` failed
    /// `Q^T E Q = E` or `det Q = +1`.
    #[error("not pseudo-orthogonal: metric/determinant residual {residual:.3e}")]
    NotPseudoOrthogonal { residual: f64 },

    /// An operator matrix was too far from symmetric to symmetrize silently.
    #[error("operator matrix is not symmetric: relative asymmetry {asymmetry:.3e}")]
    NotSymmetric { asymmetry: f64 },

    /// An operation received an operator or section of the wrong class.
    #[error("wrong class: expected {expected}, found {found}")]
    WrongClass {
        expected: &'static str,
        found: String,
    },

    /// Section frame vectors must be orthonormal.
    #[error("frame is not orthonormal: residual {residual:.3e}")]
    FrameNotOrthonormal { residual: f64 },

    /// A central section of a one-sheet hyperboloid (or an ellipsoid) can be
    /// an ellipse, a hyperbola, or a parallel line pair; a negative definite
    /// section form means the source quadric was not in that normalized
    /// orientation. This is reported rather than classified.
    #[error("inconsistent section: form diag part ({a:.3e}, {g:.3e}) is negative definite; normalize the source operator to its one-sheet orientation first")]
    InconsistentSection { a: f64, g: f64 },

    /// A wave-solution invariant failed at construction time.
    #[error("solution invariant violated: {condition} has residual {residual:.3e}")]
    SolutionInvariant {
        condition: &'static str,
        residual: f64,
    },

    /// A scalar parameter was outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
