//! Default numerical tolerances.
//!
//! Every threshold the crate applies lives here so the trade-offs stay in
//! one place. Tolerances are *relative* to a stated scale unless a constant
//! says otherwise; the doc comment on each constant names that scale.

/// Floor on `|a x b| / (|a| |b|)` below which a vector pair is treated as
/// parallel and rejected by CSD constructors.
pub const PARALLEL: f64 = 1e-12;

/// A jay-vector is rejected as isotropic by principal-axis reduction when
/// `|2 a.b| / (a^2 + b^2) > 1 - ISOTROPY`. Cauchy-Schwarz bounds the ratio
/// by 1, with equality exactly when `a = +/-b`; inside this margin atanh
/// loses all precision.
pub const ISOTROPY: f64 = 1e-9;

/// Floor on `|a.(b x c)| / (|a| |b| |c|)` for triad constructors.
pub const TRIAD_CONDITIONING: f64 = 1e-12;

/// Relative eigenvalue floor for positive-definiteness checks, measured
/// against the largest absolute eigenvalue.
pub const DEFINITENESS: f64 = 1e-12;

/// Max-norm residual of `R^T R - I` (and `|det R - 1|`) accepted for
/// rotation inputs.
pub const ROTATION: f64 = 1e-10;

/// Max-norm residual of `Q^T E Q - E` (and `|det Q - 1|`) accepted for
/// pseudo-rotations, relative to `max(1, |Q|_max^2)`: the entries of a boost
/// grow like cosh, so the products in `Q^T E Q` carry roundoff of that
/// square scale.
pub const PSEUDO_ORTHOGONALITY: f64 = 1e-10;

/// Relative asymmetry `|M - M^T|_max / |M|_max` beyond which an operator
/// matrix is rejected instead of silently symmetrized.
pub const SYMMETRY: f64 = 1e-10;

/// Orthonormality residual accepted for section frames.
pub const FRAME: f64 = 1e-10;

/// A section form counts as degenerate (parallel lines) when
/// `|det R| <= SECTION_DEGENERACY * max(|a|,|h|,|g|)^2`.
pub const SECTION_DEGENERACY: f64 = 1e-9;

/// Relative tolerance for classifying a point onto a quadric by the value of
/// its quadratic form (`+1`, `-1`, or `0`).
pub const MEMBERSHIP: f64 = 1e-9;

/// Residual accepted on the normalization conditions when a wave solution is
/// constructed. CSD extraction meets these at roundoff level; anything close
/// to this bound indicates the inputs were not a conjugate pair.
pub const SOLUTION_BUILD: f64 = 1e-8;

/// Contract bound on the normalized analytic residual of a valid solution.
pub const RESIDUAL_ANALYTIC: f64 = 1e-10;

/// Contract bound on the normalized finite-difference residual of a valid
/// solution at unit scale. Dominated by the O(h^2) truncation of the central
/// stencil plus roundoff amplified by 1/h^2.
pub const RESIDUAL_FD: f64 = 1e-5;

/// Step for the second-order central finite-difference Hessian.
pub const FD_STEP: f64 = 1e-4;

#[cfg(test)]
mod tests {
    // The point of these tests is exactly to assert on constants: they pin
    // the ordering relationships between the tolerances.
    #![allow(clippy::assertions_on_constants)]

    use super::*;

    #[test]
    fn residual_bounds_are_ordered() {
        // The FD bound must sit well above the analytic bound: the stencil
        // cannot beat its own truncation error.
        assert!(RESIDUAL_ANALYTIC < RESIDUAL_FD);
        assert!(FD_STEP * FD_STEP < RESIDUAL_FD);
    }

    #[test]
    fn construction_gate_is_looser_than_roundoff_and_tighter_than_contract() {
        assert!(SOLUTION_BUILD > 1e-13);
        assert!(SOLUTION_BUILD < 1e-3);
    }
}
