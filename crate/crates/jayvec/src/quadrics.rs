//! Central quadrics from CSD triads: ellipsoids, conjugate hyperboloid
//! pairs, pseudo-rotations, and the complex rotations they induce.
//!
//! A triad `(a, b, c)` with nonzero scalar triple product spans an ellipsoid
//! the way a CSD pair spans an ellipse: `r = a cos(phi) sin(theta) + b
//! sin(phi) sin(theta) + c cos(theta)` sweeps the surface, and the triads of
//! one ellipsoid are exactly `U^{-1} R` for rotations `R`, where `U` is the
//! positive definite square root of the ellipsoid matrix. For a hyperboloid
//! pair the rotations are replaced by the pseudo-rotations preserving
//! `E = diag(-1, -1, 1)`, and complexifying a pseudo-orthogonal triad turns
//! it into a genuine (complex) rotation.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::conics::Branch;
use crate::error::{Error, Result};
use crate::{tol, Mat3, Vec3};

/// The metric `E = diag(-1, -1, 1)` preserved by pseudo-rotations.
pub fn pseudo_metric() -> Mat3 {
    Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, 1.0))
}

/// Coordinate axis left fixed by a pseudo-rotation generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A conjugate semi-diameter triad: three vectors with positive scalar
/// triple product `delta = a.(b x c)`.
///
/// Construction rejects triads whose triple product is below the
/// conditioning floor, and repairs a negative orientation by swapping `a`
/// and `b` (which exchanges two points of the same quadric sheet).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad {
    a: Vec3,
    b: Vec3,
    c: Vec3,
    delta: f64,
}

impl Triad {
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Result<Self> {
        for v in [&a, &b, &c] {
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::NonFinite {
                    what: "triad component",
                });
            }
        }
        let delta = a.dot(&b.cross(&c));
        let scale = a.norm() * b.norm() * c.norm();
        if delta.abs() <= tol::TRIAD_CONDITIONING * scale || delta == 0.0 {
            return Err(Error::SingularTriad { delta });
        }
        if delta < 0.0 {
            Ok(Triad {
                a: b,
                b: a,
                c,
                delta: -delta,
            })
        } else {
            Ok(Triad { a, b, c, delta })
        }
    }

    /// Columns of `m` as a triad. Caller guarantees `det m > 0` and
    /// conditioning; used for triads produced by our own factorizations.
    fn from_matrix_trusted(m: &Mat3) -> Self {
        let (a, b, c) = (
            m.column(0).into_owned(),
            m.column(1).into_owned(),
            m.column(2).into_owned(),
        );
        let delta = a.dot(&b.cross(&c));
        debug_assert!(delta > 0.0);
        Triad { a, b, c, delta }
    }

    pub fn a(&self) -> Vec3 {
        self.a
    }

    pub fn b(&self) -> Vec3 {
        self.b
    }

    pub fn c(&self) -> Vec3 {
        self.c
    }

    /// Scalar triple product `a.(b x c)`; positive by construction.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The triad as a column matrix `(a | b | c)`.
    pub fn as_matrix(&self) -> Mat3 {
        Mat3::from_columns(&[self.a, self.b, self.c])
    }

    /// Point of the ellipsoid swept by this triad:
    /// `a cos(phi) sin(theta) + b sin(phi) sin(theta) + c cos(theta)`.
    pub fn ellipsoid_point(&self, phi: f64, theta: f64) -> Vec3 {
        let (sp, cp) = phi.sin_cos();
        let (st, ct) = theta.sin_cos();
        self.a * (cp * st) + self.b * (sp * st) + self.c * ct
    }

    /// Point of the two-sheet hyperboloid (`r.Hr = +1`) swept by a
    /// hyperboloid CSD triad; `branch` picks the sheet.
    pub fn two_sheet_point(&self, branch: Branch, phi: f64, theta: f64) -> Vec3 {
        let (sp, cp) = phi.sin_cos();
        let sign = if branch == Branch::Plus { 1.0 } else { -1.0 };
        self.a * (cp * theta.sinh()) + self.b * (sp * theta.sinh()) + self.c * (sign * theta.cosh())
    }

    /// Point of the one-sheet hyperboloid (`r.Hr = -1`) swept by a
    /// hyperboloid CSD triad.
    pub fn one_sheet_point(&self, phi: f64, theta: f64) -> Vec3 {
        let (sp, cp) = phi.sin_cos();
        self.a * (cp * theta.cosh()) + self.b * (sp * theta.cosh()) + self.c * theta.sinh()
    }
}

/// Reciprocal triad `a* = (b x c)/delta`, `b* = (c x a)/delta`,
/// `c* = (a x b)/delta`: the unique triad with
/// `(a*|b*|c*)^T (a|b|c) = I`.
pub fn reciprocal_triad(t: &Triad) -> Triad {
    let m = Mat3::from_columns(&[
        t.b.cross(&t.c) / t.delta,
        t.c.cross(&t.a) / t.delta,
        t.a.cross(&t.b) / t.delta,
    ]);
    Triad::from_matrix_trusted(&m)
}

/// Largest absolute entry of `R^T R - I` together with `|det R - 1|`.
pub fn rotation_residual(r: &Mat3) -> f64 {
    let ortho = (r.transpose() * r - Mat3::identity()).amax();
    ortho.max((r.determinant() - 1.0).abs())
}

/// Deviation of `q` from the pseudo-rotation group: max-norm of
/// `Q^T E Q - E` scaled by `max(1, |Q|_max^2)` (the entries of a boost grow
/// like cosh, and the products carry roundoff of that square scale), plus
/// the determinant's deviation from `+1` at cube scale.
pub fn pseudo_metric_residual(q: &Mat3) -> f64 {
    let e = pseudo_metric();
    let amax = q.amax();
    let metric_res = (q.transpose() * e * q - e).amax() / amax.powi(2).max(1.0);
    let det_res = (q.determinant() - 1.0).abs() / amax.powi(3).max(1.0);
    metric_res.max(det_res)
}

/// Unique symmetric positive definite square root.
///
/// Fails unless `m` is symmetric and its smallest eigenvalue clears the
/// relative definiteness floor; the error reports all three eigenvalues.
pub fn pd_sqrt(m: &Mat3) -> Result<Mat3> {
    let asym = (m - m.transpose()).amax();
    if asym > tol::SYMMETRY * m.amax().max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric {
            asymmetry: asym / m.amax(),
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let lmax = eig.eigenvalues.amax();
    // Negated so a NaN eigenvalue scale fails the gate too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if eig.eigenvalues.min() <= tol::DEFINITENESS * lmax || !(lmax > 0.0) {
        return Err(Error::NotPositiveDefinite {
            eigenvalues: sorted_eigenvalues(&eig.eigenvalues),
        });
    }
    let sqrt_diag = Mat3::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let u = eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
    // Symmetrize away the roundoff of the three-factor product.
    Ok((u + u.transpose()) * 0.5)
}

fn sorted_eigenvalues(v: &Vec3) -> [f64; 3] {
    let mut out = [v.x, v.y, v.z];
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// An ellipsoid `r . A r = 1` with `A` symmetric positive definite.
///
/// Caches the PD square root `U` of `A`: the CSD triads of the ellipsoid are
/// exactly the column triads of `U^{-1} R` over rotations `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    matrix: Mat3,
    sqrt: Mat3,
    sqrt_inv: Mat3,
}

impl Ellipsoid {
    pub fn new(matrix: Mat3) -> Result<Self> {
        let sqrt = pd_sqrt(&matrix)?;
        let sqrt_inv = sqrt.try_inverse().expect("PD square root is invertible");
        Ok(Ellipsoid {
            matrix: (matrix + matrix.transpose()) * 0.5,
            sqrt,
            sqrt_inv,
        })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    /// The positive definite square root `U` with `U U = A`.
    pub fn sqrt(&self) -> &Mat3 {
        &self.sqrt
    }

    /// CSD triad `U^{-1} R` for a rotation `R` (validated against
    /// [`tol::ROTATION`]). With `R = I` on a diagonal `A` this is the
    /// semi-axis triad.
    pub fn csd_triad(&self, r: &Mat3) -> Result<Triad> {
        let residual = rotation_residual(r);
        if residual > tol::ROTATION {
            return Err(Error::NotRotation { residual });
        }
        Ok(Triad::from_matrix_trusted(&(self.sqrt_inv * r)))
    }

    /// Classify a point against the surface `r . A r = 1`.
    pub fn membership(&self, r: &Vec3) -> Membership {
        quadric_membership(&self.matrix, r, tol::MEMBERSHIP)
    }
}

/// Ellipsoid generated by a CSD triad: `A = N* N*^T` where `N*` is the
/// reciprocal triad matrix. Its determinant is `1/delta^2` and the
/// generating triad satisfies the conjugacy conditions `a.Ab = b.Ac = c.Aa =
/// 0`, `a.Aa = b.Ab = c.Ac = 1`.
pub fn ellipsoid_from_triad(t: &Triad) -> Result<Ellipsoid> {
    let n_star = reciprocal_triad(t).as_matrix();
    Ellipsoid::new(n_star * n_star.transpose())
}

/// Eigen-factorization of a hyperboloid pair `H = V (U E U) V^T`.
///
/// `u` is diagonal in the eigen-frame (`diag(1/a, 1/b, 1/c)` for semi-axes
/// `a, b, c`), `metric` is `E = diag(-1, -1, 1)`, and `frame` is the
/// rotation whose columns are the eigenvectors: the two negative-eigenvalue
/// axes first (descending magnitude), the positive axis last.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperboloidFactors {
    pub u: Mat3,
    pub metric: Mat3,
    pub frame: Mat3,
    semi_axes: [f64; 3],
}

impl HyperboloidFactors {
    /// Semi-axes `(a, b, c)`: `a, b` of the one-sheet waist, `c` of the
    /// two-sheet vertex.
    pub fn semi_axes(&self) -> [f64; 3] {
        self.semi_axes
    }

    /// `V (U E U) V^T`; reproduces the hyperboloid matrix.
    pub fn reconstruct(&self) -> Mat3 {
        self.frame * (self.u * self.metric * self.u) * self.frame.transpose()
    }
}

/// A conjugate pair of hyperboloids sharing the matrix `H` of signature
/// (-, -, +): the two-sheet surface `r.Hr = +1`, the one-sheet surface
/// `r.Hr = -1`, and the asymptotic cone `r.Hr = 0` between them.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperboloidPair {
    matrix: Mat3,
    factors: HyperboloidFactors,
}

impl HyperboloidPair {
    /// Validates symmetry and the (-, -, +) signature; the error for a wrong
    /// signature reports the eigenvalues so the caller can see which sign
    /// pattern was actually present.
    pub fn new(matrix: Mat3) -> Result<Self> {
        let asym = (matrix - matrix.transpose()).amax();
        if asym > tol::SYMMETRY * matrix.amax().max(f64::MIN_POSITIVE) {
            return Err(Error::NotSymmetric {
                asymmetry: asym / matrix.amax(),
            });
        }
        let sym = (matrix + matrix.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let floor = tol::DEFINITENESS * eig.eigenvalues.amax();
        let mut split: (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
        for i in 0..3 {
            if eig.eigenvalues[i] > floor {
                split.1.push(i);
            } else if eig.eigenvalues[i] < -floor {
                split.0.push(i);
            }
        }
        let (neg, pos) = split;
        if neg.len() != 2 || pos.len() != 1 {
            return Err(Error::WrongSignature {
                eigenvalues: sorted_eigenvalues(&eig.eigenvalues),
            });
        }

        // Order: negative eigenvalues by descending magnitude, positive last.
        let mut order = neg;
        if eig.eigenvalues[order[0]].abs() < eig.eigenvalues[order[1]].abs() {
            order.swap(0, 1);
        }
        order.push(pos[0]);

        let mut frame = Mat3::zeros();
        let mut lambda = [0.0; 3];
        for (slot, &idx) in order.iter().enumerate() {
            let mut col = eig.eigenvectors.column(idx).into_owned();
            // Deterministic sign: largest-magnitude component positive.
            let dominant = (0..3)
                .max_by(|&i, &j| col[i].abs().total_cmp(&col[j].abs()))
                .unwrap();
            if col[dominant] < 0.0 {
                col = -col;
            }
            frame.set_column(slot, &col);
            lambda[slot] = eig.eigenvalues[idx];
        }
        if frame.determinant() < 0.0 {
            let flipped = -frame.column(1).into_owned();
            frame.set_column(1, &flipped);
        }

        let semi_axes = [
            1.0 / (-lambda[0]).sqrt(),
            1.0 / (-lambda[1]).sqrt(),
            1.0 / lambda[2].sqrt(),
        ];
        let u = Mat3::from_diagonal(&Vec3::new(
            1.0 / semi_axes[0],
            1.0 / semi_axes[1],
            1.0 / semi_axes[2],
        ));
        Ok(HyperboloidPair {
            matrix: sym,
            factors: HyperboloidFactors {
                u,
                metric: pseudo_metric(),
                frame,
                semi_axes,
            },
        })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    /// The factorization `H = V (U E U) V^T`.
    pub fn factors(&self) -> &HyperboloidFactors {
        &self.factors
    }

    /// CSD triad `V U^{-1} Q` for a pseudo-rotation `Q`: `a, b` land on the
    /// one-sheet surface (`a.Ha = b.Hb = -1`), `c` on the two-sheet surface
    /// (`c.Hc = +1`), all mutually conjugate (`a.Hb = b.Hc = c.Ha = 0`).
    pub fn csd_triad(&self, q: &PseudoRotation) -> Triad {
        let u_inv = Mat3::from_diagonal(&Vec3::new(
            self.factors.semi_axes[0],
            self.factors.semi_axes[1],
            self.factors.semi_axes[2],
        ));
        Triad::from_matrix_trusted(&(self.factors.frame * u_inv * q.matrix()))
    }

    /// Classify a point against the pair: `+1` two-sheet, `-1` one-sheet,
    /// `0` cone.
    pub fn membership(&self, r: &Vec3) -> Membership {
        quadric_membership(&self.matrix, r, tol::MEMBERSHIP)
    }
}

/// Where a point sits relative to a quadric's `+1 / -1 / 0` level set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    /// `r.Mr = +1`: the ellipsoid, or the two-sheet hyperboloid.
    OnPrimary,
    /// `r.Mr = -1`: the one-sheet hyperboloid.
    OnConjugate,
    /// `r.Mr = 0`: the asymptotic cone.
    OnCone,
    /// None of the levels; carries the measured form value.
    Off { form_value: f64 },
}

/// Classify `r` by the value of its quadratic form within a relative
/// tolerance.
pub fn quadric_membership(form: &Mat3, r: &Vec3, tol: f64) -> Membership {
    let value = r.dot(&(form * r));
    let scale = (form.amax() * r.norm_squared()).max(1.0);
    if (value - 1.0).abs() <= tol * scale {
        Membership::OnPrimary
    } else if (value + 1.0).abs() <= tol * scale {
        Membership::OnConjugate
    } else if value.abs() <= tol * scale {
        Membership::OnCone
    } else {
        Membership::Off { form_value: value }
    }
}

/// A matrix of the pseudo-rotation group: `Q^T E Q = E`, `det Q = +1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoRotation {
    q: Mat3,
}

impl PseudoRotation {
    pub fn identity() -> Self {
        PseudoRotation {
            q: Mat3::identity(),
        }
    }

    /// Validates against [`tol::PSEUDO_ORTHOGONALITY`].
    pub fn new(q: Mat3) -> Result<Self> {
        let residual = pseudo_metric_residual(&q);
        if residual > tol::PSEUDO_ORTHOGONALITY || !residual.is_finite() {
            return Err(Error::NotPseudoOrthogonal { residual });
        }
        Ok(PseudoRotation { q })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.q
    }

    /// Columns `(l, m, n)`: `l.El = m.Em = -1`, `n.En = +1`, mixed products
    /// zero.
    pub fn columns(&self) -> (Vec3, Vec3, Vec3) {
        (
            self.q.column(0).into_owned(),
            self.q.column(1).into_owned(),
            self.q.column(2).into_owned(),
        )
    }

    /// Group inverse `E Q^T E` - exact, no matrix inversion (from
    /// `Q^T E Q = E` and `E E = I`).
    pub fn inverse(&self) -> PseudoRotation {
        let e = pseudo_metric();
        PseudoRotation {
            q: e * self.q.transpose() * e,
        }
    }
}

impl std::ops::Mul for PseudoRotation {
    type Output = PseudoRotation;
    /// Group composition; closure holds up to roundoff, so no revalidation.
    fn mul(self, rhs: PseudoRotation) -> PseudoRotation {
        PseudoRotation { q: self.q * rhs.q }
    }
}

/// One-parameter generator of the pseudo-rotation group fixing `axis`:
/// a boost of the two complementary coordinates for `X` and `Y`, a genuine
/// rotation for `Z` (both metric directions there are negative).
pub fn pseudo_rotation_generator(axis: Axis, theta: f64) -> Result<PseudoRotation> {
    if !theta.is_finite() {
        return Err(Error::NonFinite {
            what: "generator parameter",
        });
    }
    let q = match axis {
        Axis::X => {
            let (ch, sh) = (theta.cosh(), theta.sinh());
            if !ch.is_finite() {
                return Err(Error::ExpOverflow { phi: theta });
            }
            Mat3::new(1.0, 0.0, 0.0, 0.0, ch, sh, 0.0, sh, ch)
        }
        Axis::Y => {
            let (ch, sh) = (theta.cosh(), theta.sinh());
            if !ch.is_finite() {
                return Err(Error::ExpOverflow { phi: theta });
            }
            Mat3::new(ch, 0.0, sh, 0.0, 1.0, 0.0, sh, 0.0, ch)
        }
        Axis::Z => {
            let (s, c) = theta.sin_cos();
            Mat3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
        }
    };
    Ok(PseudoRotation { q })
}

/// Pseudo-orthogonal triad lifted to a complex rotation.
///
/// For `(l, m, n)` satisfying the pseudo-orthogonality conditions, the
/// complex columns `L = (l1, l2, i l3)`, `M = (m1, m2, i m3)`,
/// `N = (-i n1, -i n2, n3)` form a matrix with `R^T R = I` (plain
/// transpose, not conjugate) and `det R = +1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTriad {
    pub l: Vector3<Complex64>,
    pub m: Vector3<Complex64>,
    pub n: Vector3<Complex64>,
}

impl ComplexTriad {
    pub fn as_matrix(&self) -> Matrix3<Complex64> {
        Matrix3::from_columns(&[self.l, self.m, self.n])
    }

    /// Max-norm of `R^T R - I` (complex-bilinear, no conjugation).
    pub fn orthogonality_residual(&self) -> f64 {
        let r = self.as_matrix();
        let gram = r.transpose() * r - Matrix3::identity();
        gram.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }

    pub fn determinant(&self) -> Complex64 {
        self.as_matrix().determinant()
    }
}

/// Complexify a pseudo-orthogonal triad (columns of a pseudo-rotation,
/// validated within [`tol::PSEUDO_ORTHOGONALITY`]) into a complex rotation.
pub fn complexify_triad(l: Vec3, m: Vec3, n: Vec3) -> Result<ComplexTriad> {
    let q = Mat3::from_columns(&[l, m, n]);
    let residual = pseudo_metric_residual(&q);
    if residual > tol::PSEUDO_ORTHOGONALITY || !residual.is_finite() {
        return Err(Error::NotPseudoOrthogonal { residual });
    }
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    Ok(ComplexTriad {
        l: Vector3::new(re(l.x), re(l.y), im(l.z)),
        m: Vector3::new(re(m.x), re(m.y), im(m.z)),
        n: Vector3::new(im(-n.x), im(-n.y), re(n.z)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Rotation3;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z)
    }

    fn skewed_triad() -> Triad {
        Triad::new(v(1.5, 0.2, -0.3), v(0.4, 1.1, 0.5), v(-0.2, 0.3, 2.0)).unwrap()
    }

    fn diagonal_hyperboloid() -> HyperboloidPair {
        HyperboloidPair::new(Mat3::from_diagonal(&v(-0.25, -1.0 / 9.0, 1.0))).unwrap()
    }

    #[test]
    fn triad_construction_gates_and_repairs_orientation() {
        assert!(matches!(
            Triad::new(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(1.0, 1.0, 0.0)),
            Err(Error::SingularTriad { .. })
        ));
        // Negative orientation swaps a and b.
        let t = Triad::new(v(0.0, 1.0, 0.0), v(1.0, 0.0, 0.0), v(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(t.a(), v(1.0, 0.0, 0.0));
        assert_eq!(t.b(), v(0.0, 1.0, 0.0));
        assert_eq!(t.delta(), 1.0);
    }

    #[test]
    fn reciprocal_triad_of_orthonormal_basis_is_itself() {
        let t = Triad::new(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0)).unwrap();
        let r = reciprocal_triad(&t);
        assert_eq!(r.as_matrix(), Mat3::identity());
    }

    #[test]
    fn reciprocal_triad_inverts_the_column_matrix() {
        let t = skewed_triad();
        let r = reciprocal_triad(&t);
        let gram = r.as_matrix().transpose() * t.as_matrix();
        assert_abs_diff_eq!(gram, Mat3::identity(), epsilon = 1e-12);
        // Oracle: matrix inverse transposed gives the same triad.
        let inv_t = t.as_matrix().try_inverse().unwrap().transpose();
        assert_abs_diff_eq!(r.as_matrix(), inv_t, epsilon = 1e-12);
        // Involution.
        let back = reciprocal_triad(&r);
        assert_abs_diff_eq!(back.as_matrix(), t.as_matrix(), epsilon = 1e-12);
    }

    #[test]
    fn ellipsoid_from_diagonal_triad_is_diagonal() {
        let t = Triad::new(v(2.0, 0.0, 0.0), v(0.0, 3.0, 0.0), v(0.0, 0.0, 1.0)).unwrap();
        let e = ellipsoid_from_triad(&t).unwrap();
        assert_abs_diff_eq!(
            *e.matrix(),
            Mat3::from_diagonal(&v(0.25, 1.0 / 9.0, 1.0)),
            epsilon = 1e-14
        );
        assert_relative_eq!(e.matrix().determinant(), 1.0 / 36.0, max_relative = 1e-12);
    }

    #[test]
    fn generating_triad_satisfies_the_conjugacy_conditions() {
        let t = skewed_triad();
        let e = ellipsoid_from_triad(&t).unwrap();
        let a_mat = e.matrix();
        let dd = t.delta() * t.delta();
        assert_relative_eq!(a_mat.determinant(), 1.0 / dd, max_relative = 1e-9);
        for u in [t.a(), t.b(), t.c()] {
            assert_relative_eq!(u.dot(&(a_mat * u)), 1.0, max_relative = 1e-11);
        }
        for (u, w) in [(t.a(), t.b()), (t.b(), t.c()), (t.c(), t.a())] {
            assert_abs_diff_eq!(u.dot(&(a_mat * w)), 0.0, epsilon = 1e-11);
        }
        // The swept surface sits on the implicit surface.
        for i in 0..10 {
            for k in 1..10 {
                let r = t.ellipsoid_point(0.628 * i as f64, 0.314 * k as f64);
                assert_relative_eq!(r.dot(&(a_mat * r)), 1.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn pd_sqrt_squares_back_and_rejects_bad_input() {
        let rot = Rotation3::from_euler_angles(0.3, 0.7, -0.2);
        let a = rot.matrix() * Mat3::from_diagonal(&v(0.5, 2.0, 5.0)) * rot.matrix().transpose();
        let u = pd_sqrt(&a).unwrap();
        assert_abs_diff_eq!(u, u.transpose(), epsilon = 1e-14);
        assert_relative_eq!(u * u, a, max_relative = 1e-12);
        assert!(SymmetricEigen::new(u).eigenvalues.min() > 0.0);

        match pd_sqrt(&Mat3::from_diagonal(&v(1.0, -2.0, 3.0))) {
            Err(Error::NotPositiveDefinite { eigenvalues }) => {
                assert_relative_eq!(eigenvalues[0], -2.0, max_relative = 1e-12);
            }
            other => panic!("expected definiteness error, got {other:?}"),
        }
        let mut skew = Mat3::identity();
        skew[(0, 1)] = 0.5;
        assert!(matches!(pd_sqrt(&skew), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn ellipsoid_csd_triads_come_from_rotations() {
        let diag = Ellipsoid::new(Mat3::from_diagonal(&v(0.25, 1.0 / 9.0, 1.0))).unwrap();
        let t = diag.csd_triad(&Mat3::identity()).unwrap();
        assert_abs_diff_eq!(t.a(), v(2.0, 0.0, 0.0), epsilon = 1e-12);
        assert_abs_diff_eq!(t.b(), v(0.0, 3.0, 0.0), epsilon = 1e-12);
        assert_abs_diff_eq!(t.c(), v(0.0, 0.0, 1.0), epsilon = 1e-12);

        let rot = Rotation3::from_euler_angles(1.1, -0.4, 0.9);
        let a = rot.matrix() * Mat3::from_diagonal(&v(0.7, 1.8, 3.1)) * rot.matrix().transpose();
        let e = Ellipsoid::new(a).unwrap();
        let r = *Rotation3::from_euler_angles(-0.3, 0.5, 1.7).matrix();
        let t = e.csd_triad(&r).unwrap();
        for u in [t.a(), t.b(), t.c()] {
            assert_relative_eq!(u.dot(&(e.matrix() * u)), 1.0, max_relative = 1e-11);
        }
        for (u, w) in [(t.a(), t.b()), (t.b(), t.c()), (t.c(), t.a())] {
            assert_abs_diff_eq!(u.dot(&(e.matrix() * w)), 0.0, epsilon = 1e-11);
        }
        // Round trip: the triad regenerates its ellipsoid.
        let back = ellipsoid_from_triad(&t).unwrap();
        assert_relative_eq!(*back.matrix(), *e.matrix(), max_relative = 1e-9);

        // With R = the eigen-frame, the triad is the semi-axis triad.
        let t_eigen = e.csd_triad(rot.matrix()).unwrap();
        let semi = t_eigen.as_matrix();
        let expected = rot.matrix()
            * Mat3::from_diagonal(&v(
                1.0 / 0.7_f64.sqrt(),
                1.0 / 1.8_f64.sqrt(),
                1.0 / 3.1_f64.sqrt(),
            ));
        assert_relative_eq!(semi, expected, max_relative = 1e-10);

        assert!(matches!(
            e.csd_triad(&(Mat3::identity() * 2.0)),
            Err(Error::NotRotation { .. })
        ));
    }

    #[test]
    fn hyperboloid_factorization_recovers_diagonal_semi_axes() {
        let h = diagonal_hyperboloid();
        let f = h.factors();
        assert_eq!(f.semi_axes(), [2.0, 3.0, 1.0]);
        assert_abs_diff_eq!(
            f.u,
            Mat3::from_diagonal(&v(0.5, 1.0 / 3.0, 1.0)),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(f.frame, Mat3::identity(), epsilon = 1e-14);
        assert_abs_diff_eq!(f.reconstruct(), *h.matrix(), epsilon = 1e-14);
        assert_relative_eq!(f.frame.determinant(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn hyperboloid_factorization_handles_rotated_frames() {
        let rot = Rotation3::from_euler_angles(0.6, -1.0, 0.3);
        let d = Mat3::from_diagonal(&v(-0.25, -1.0 / 9.0, 1.0));
        let h_mat = rot.matrix() * d * rot.matrix().transpose();
        let h = HyperboloidPair::new(h_mat).unwrap();
        let f = h.factors();
        assert_relative_eq!(f.reconstruct(), *h.matrix(), max_relative = 1e-11);
        assert_relative_eq!(f.frame.determinant(), 1.0, max_relative = 1e-10);
        assert_abs_diff_eq!(
            f.frame.transpose() * f.frame,
            Mat3::identity(),
            epsilon = 1e-12
        );
        let axes = f.semi_axes();
        assert_relative_eq!(axes[0], 2.0, max_relative = 1e-10);
        assert_relative_eq!(axes[1], 3.0, max_relative = 1e-10);
        assert_relative_eq!(axes[2], 1.0, max_relative = 1e-10);
    }

    #[test]
    fn hyperboloid_rejects_wrong_signature_and_asymmetry() {
        assert!(matches!(
            HyperboloidPair::new(Mat3::from_diagonal(&v(1.0, 1.0, -1.0))),
            Err(Error::WrongSignature { .. })
        ));
        assert!(matches!(
            HyperboloidPair::new(Mat3::from_diagonal(&v(-1.0, -1.0, 0.0))),
            Err(Error::WrongSignature { .. })
        ));
        assert!(matches!(
            HyperboloidPair::new(Mat3::from_diagonal(&v(0.25, 1.0 / 9.0, 1.0))),
            Err(Error::WrongSignature { .. })
        ));
        let mut skew = Mat3::from_diagonal(&v(-1.0, -1.0, 1.0));
        skew[(0, 2)] = 0.3;
        assert!(matches!(
            HyperboloidPair::new(skew),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn generators_preserve_the_metric_and_compose() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let q = pseudo_rotation_generator(axis, 0.8).unwrap();
            assert!(pseudo_metric_residual(q.matrix()) <= 1e-14);
            assert_relative_eq!(q.matrix().determinant(), 1.0, max_relative = 1e-13);
            // One-parameter subgroup.
            let composed = pseudo_rotation_generator(axis, 0.8).unwrap()
                * pseudo_rotation_generator(axis, -0.3).unwrap();
            let direct = pseudo_rotation_generator(axis, 0.5).unwrap();
            assert_relative_eq!(
                *composed.matrix(),
                *direct.matrix(),
                max_relative = 1e-13,
                epsilon = 1e-15
            );
        }
        // Mixed word stays in the group, and so does its inverse.
        let w = pseudo_rotation_generator(Axis::X, 1.3).unwrap()
            * pseudo_rotation_generator(Axis::Z, -0.7).unwrap()
            * pseudo_rotation_generator(Axis::Y, 0.9).unwrap();
        assert!(pseudo_metric_residual(w.matrix()) <= tol::PSEUDO_ORTHOGONALITY);
        assert!(PseudoRotation::new(*w.matrix()).is_ok());
        let inv = w.inverse();
        assert!(pseudo_metric_residual(inv.matrix()) <= tol::PSEUDO_ORTHOGONALITY);
        assert_abs_diff_eq!((w * inv).matrix(), &Mat3::identity(), epsilon = 1e-13);
        assert!(matches!(
            PseudoRotation::new(Mat3::from_diagonal(&v(2.0, 1.0, 1.0))),
            Err(Error::NotPseudoOrthogonal { .. })
        ));
        assert!(matches!(
            pseudo_rotation_generator(Axis::X, f64::NAN),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            pseudo_rotation_generator(Axis::Y, 1e4),
            Err(Error::ExpOverflow { .. })
        ));
    }

    #[test]
    fn pseudo_orthogonal_columns_resolve_the_metric() {
        // -l l^T - m m^T + n n^T = E for any pseudo-rotation.
        let q = pseudo_rotation_generator(Axis::X, 0.9).unwrap()
            * pseudo_rotation_generator(Axis::Y, -1.4).unwrap()
            * pseudo_rotation_generator(Axis::Z, 2.2).unwrap();
        let (l, m, n) = q.columns();
        let resolved = -l * l.transpose() - m * m.transpose() + n * n.transpose();
        assert_abs_diff_eq!(resolved, pseudo_metric(), epsilon = 1e-12);
    }

    #[test]
    fn hyperboloid_csd_triads_satisfy_the_pseudo_conditions() {
        let h = diagonal_hyperboloid();
        let t = h.csd_triad(&PseudoRotation::identity());
        assert_abs_diff_eq!(t.a(), v(2.0, 0.0, 0.0), epsilon = 1e-12);
        assert_abs_diff_eq!(t.b(), v(0.0, 3.0, 0.0), epsilon = 1e-12);
        assert_abs_diff_eq!(t.c(), v(0.0, 0.0, 1.0), epsilon = 1e-12);

        let rot = Rotation3::from_euler_angles(-0.4, 0.8, 1.2);
        let h_mat = rot.matrix()
            * Mat3::from_diagonal(&v(-1.0 / 2.89, -0.49, 1.0 / 1.21))
            * rot.matrix().transpose();
        let h = HyperboloidPair::new(h_mat).unwrap();
        let q = pseudo_rotation_generator(Axis::X, 0.7).unwrap()
            * pseudo_rotation_generator(Axis::Z, 1.9).unwrap()
            * pseudo_rotation_generator(Axis::Y, -0.5).unwrap();
        let t = h.csd_triad(&q);
        let hm = h.matrix();
        assert_relative_eq!(t.a().dot(&(hm * t.a())), -1.0, max_relative = 1e-10);
        assert_relative_eq!(t.b().dot(&(hm * t.b())), -1.0, max_relative = 1e-10);
        assert_relative_eq!(t.c().dot(&(hm * t.c())), 1.0, max_relative = 1e-10);
        for (x, y) in [(t.a(), t.b()), (t.b(), t.c()), (t.c(), t.a())] {
            assert_abs_diff_eq!(x.dot(&(hm * y)), 0.0, epsilon = 1e-10 * x.norm() * y.norm());
        }
        assert!(matches!(h.membership(&t.a()), Membership::OnConjugate));
        assert!(matches!(h.membership(&t.c()), Membership::OnPrimary));

        // Parametric sweeps stay on their sheets.
        for i in 0..8 {
            for k in 0..8 {
                let (phi, theta) = (0.785 * i as f64, -1.5 + 0.4 * k as f64);
                let two = t.two_sheet_point(Branch::Minus, phi, theta);
                assert_relative_eq!(two.dot(&(hm * two)), 1.0, max_relative = 1e-9);
                let one = t.one_sheet_point(phi, theta);
                assert_relative_eq!(one.dot(&(hm * one)), -1.0, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn membership_recognizes_all_three_levels() {
        let h = diagonal_hyperboloid();
        assert!(matches!(
            h.membership(&v(0.0, 0.0, 1.0)),
            Membership::OnPrimary
        ));
        assert!(matches!(
            h.membership(&v(2.0, 0.0, 0.0)),
            Membership::OnConjugate
        ));
        // On the cone: -x^2/4 + z^2 = 0 at x = 2z.
        assert!(matches!(
            h.membership(&v(2.0, 0.0, 1.0)),
            Membership::OnCone
        ));
        match h.membership(&v(1.0, 1.0, 1.0)) {
            Membership::Off { form_value } => {
                assert_relative_eq!(form_value, -0.25 - 1.0 / 9.0 + 1.0, max_relative = 1e-12)
            }
            other => panic!("expected Off, got {other:?}"),
        }
        let e = Ellipsoid::new(Mat3::identity()).unwrap();
        assert!(matches!(
            e.membership(&v(1.0, 0.0, 0.0)),
            Membership::OnPrimary
        ));
        assert!(matches!(
            e.membership(&v(0.5, 0.0, 0.0)),
            Membership::Off { .. }
        ));
    }

    #[test]
    fn complexified_boost_is_a_complex_rotation() {
        // The identity triad is already a real rotation: complexification
        // leaves it untouched.
        let id = complexify_triad(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(id.as_matrix(), Matrix3::identity());

        let theta = 0.85;
        let q = pseudo_rotation_generator(Axis::X, theta).unwrap();
        let (l, m, n) = q.columns();
        let c = complexify_triad(l, m, n).unwrap();
        // m = (0, cosh, sinh) lifts to M = (0, cosh, i sinh) with M.M = 1.
        assert_eq!(c.m.x, Complex64::new(0.0, 0.0));
        assert_eq!(c.m.y, Complex64::new(theta.cosh(), 0.0));
        assert_eq!(c.m.z, Complex64::new(0.0, theta.sinh()));
        let m_dot_m = c.m.x * c.m.x + c.m.y * c.m.y + c.m.z * c.m.z;
        assert_relative_eq!(m_dot_m.re, 1.0, max_relative = 1e-13);
        assert_abs_diff_eq!(m_dot_m.im, 0.0, epsilon = 1e-13);

        assert!(c.orthogonality_residual() <= 1e-12);
        let det = c.determinant();
        assert_relative_eq!(det.re, 1.0, max_relative = 1e-12);
        assert_abs_diff_eq!(det.im, 0.0, epsilon = 1e-12);

        assert!(matches!(
            complexify_triad(v(1.0, 0.0, 0.0), v(0.0, 2.0, 0.0), v(0.0, 0.0, 1.0)),
            Err(Error::NotPseudoOrthogonal { .. })
        ));
    }
}
