//! Central conics from CSD pairs: parametric points, reciprocal pairs,
//! implicit forms, asymptotes, eccentricity.
//!
//! Conics live in 3-space on the plane spanned by their CSD pair; all 2D
//! coefficient work happens in an explicit orthonormal frame of that plane.
//! A single pair `(a, b)` generates three curves: the ellipse
//! `a cos t + b sin t`, the hyperbola `+/-a cosh t + b sinh t` through `a`,
//! and the conjugate hyperbola `a sinh t +/- b cosh t` through `b`. The two
//! hyperbolas share the asymptote directions `a + b` and `a - b`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::dirvec::JayVector;
use crate::error::{Error, Result};
use crate::{tol, Vec3};

/// Which central conic a CSD pair generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicKind {
    Ellipse,
    /// `+/-a cosh t + b sinh t`: the branch pair through `+/-a`.
    Hyperbola,
    /// `a sinh t +/- b cosh t`: the conjugate branch pair through `+/-b`.
    ConjugateHyperbola,
}

/// Branch selector for the hyperbolas (the sign of the cosh term). Ignored
/// for ellipses, which are a single closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// A conjugate semi-diameter pair: two non-parallel vectors spanning the
/// conic's plane. Construction rejects pairs whose span degenerates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsdPair {
    a: Vec3,
    b: Vec3,
}

impl CsdPair {
    pub fn new(a: Vec3, b: Vec3) -> Result<Self> {
        if !(a.iter().all(|x| x.is_finite()) && b.iter().all(|x| x.is_finite())) {
            return Err(Error::NonFinite {
                what: "CSD pair component",
            });
        }
        let cross_norm = a.cross(&b).norm();
        if cross_norm <= tol::PARALLEL * a.norm() * b.norm() || cross_norm == 0.0 {
            return Err(Error::DegeneratePair { cross_norm });
        }
        Ok(CsdPair { a, b })
    }

    pub fn a(&self) -> Vec3 {
        self.a
    }

    pub fn b(&self) -> Vec3 {
        self.b
    }

    /// The pair packed as `a + j b`.
    pub fn as_jay_vector(&self) -> JayVector {
        JayVector::new(self.a, self.b)
    }

    /// Orthonormal frame `(e1, e2)` of the conic plane, with `e1` along `a`.
    pub fn plane_frame(&self) -> (Vec3, Vec3) {
        let e1 = self.a.normalize();
        let rejected = self.b - self.b.dot(&e1) * e1;
        (e1, rejected.normalize())
    }

    /// In-plane coordinates of `v` relative to [`CsdPair::plane_frame`].
    /// Only meaningful for `v` in the conic plane.
    pub fn plane_coords(&self, v: &Vec3) -> (f64, f64) {
        let (e1, e2) = self.plane_frame();
        (v.dot(&e1), v.dot(&e2))
    }
}

/// Reciprocal pair `(a*, b*)`: the unique in-plane vectors with
/// `a*.a = b*.b = 1` and `a*.b = b*.a = 0`.
///
/// Cannot fail: a valid [`CsdPair`] has nonzero in-plane determinant.
pub fn reciprocal_pair(pair: &CsdPair) -> (Vec3, Vec3) {
    let (e1, e2) = pair.plane_frame();
    let (a1, a2) = pair.plane_coords(&pair.a);
    let (b1, b2) = pair.plane_coords(&pair.b);
    let delta = a1 * b2 - a2 * b1;
    let a_star = (b2 * e1 - b1 * e2) / delta;
    let b_star = (-a2 * e1 + a1 * e2) / delta;
    (a_star, b_star)
}

/// Point on the conic at parameter `theta`.
///
/// Ellipse: `a cos + b sin`; hyperbola: `sign(branch) a cosh + b sinh`;
/// conjugate hyperbola: `a sinh + sign(branch) b cosh`.
pub fn conic_point(pair: &CsdPair, kind: ConicKind, branch: Branch, theta: f64) -> Vec3 {
    let (a, b) = (pair.a, pair.b);
    match kind {
        ConicKind::Ellipse => a * theta.cos() + b * theta.sin(),
        ConicKind::Hyperbola => a * (branch.sign() * theta.cosh()) + b * theta.sinh(),
        ConicKind::ConjugateHyperbola => a * theta.sinh() + b * (branch.sign() * theta.cosh()),
    }
}

/// Quadratic implicit form `cxx x^2 + 2 cxy xy + cyy y^2 = rhs` in the
/// orthonormal plane frame `(e1, e2)`, normalized so `rhs` is `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicImplicit2D {
    pub cxx: f64,
    pub cxy: f64,
    pub cyy: f64,
    pub rhs: f64,
    pub e1: Vec3,
    pub e2: Vec3,
}

impl ConicImplicit2D {
    /// Form value at in-plane coordinates `(x, y)`.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.cxx * x * x + 2.0 * self.cxy * x * y + self.cyy * y * y
    }

    /// Form value at a 3-space point (projected onto the frame; only
    /// meaningful for points in the conic plane).
    pub fn evaluate_point(&self, r: &Vec3) -> f64 {
        self.evaluate(r.dot(&self.e1), r.dot(&self.e2))
    }

    /// `form(r) - rhs`; zero on the conic.
    pub fn residual(&self, r: &Vec3) -> f64 {
        self.evaluate_point(r) - self.rhs
    }

    /// Determinant of the coefficient matrix `[[cxx, cxy], [cxy, cyy]]`.
    /// Positive for ellipses, negative for the hyperbolas.
    pub fn coefficient_determinant(&self) -> f64 {
        self.cxx * self.cyy - self.cxy * self.cxy
    }
}

/// Implicit form of the conic generated by `pair`.
///
/// In frame coordinates with `a = (a1, a2)`, `b = (b1, b2)` and
/// `delta = a1 b2 - a2 b1`, the ellipse satisfies
///
/// `x^2 (a2^2 + b2^2) - 2xy (a1 a2 + b1 b2) + y^2 (a1^2 + b1^2) = delta^2`
///
/// and both hyperbolas satisfy
///
/// `x^2 (b2^2 - a2^2) + 2xy (a1 a2 - b1 b2) + y^2 (b1^2 - a1^2) = +/-delta^2`
///
/// (`+` for the primary, `-` for the conjugate). Coefficients here are
/// divided through by `delta^2`, so the raw coefficient determinant
/// `+/-delta^2` becomes `+/-1/delta^2`; only its sign is invariant.
pub fn implicit_form(pair: &CsdPair, kind: ConicKind) -> ConicImplicit2D {
    let (e1, e2) = pair.plane_frame();
    let (a1, a2) = pair.plane_coords(&pair.a);
    let (b1, b2) = pair.plane_coords(&pair.b);
    let delta = a1 * b2 - a2 * b1;
    let d2 = delta * delta;
    let (cxx, cxy, cyy, rhs) = match kind {
        ConicKind::Ellipse => (
            a2 * a2 + b2 * b2,
            -(a1 * a2 + b1 * b2),
            a1 * a1 + b1 * b1,
            1.0,
        ),
        ConicKind::Hyperbola | ConicKind::ConjugateHyperbola => (
            b2 * b2 - a2 * a2,
            a1 * a2 - b1 * b2,
            b1 * b1 - a1 * a1,
            if kind == ConicKind::Hyperbola {
                1.0
            } else {
                -1.0
            },
        ),
    };
    ConicImplicit2D {
        cxx: cxx / d2,
        cxy: cxy / d2,
        cyy: cyy / d2,
        rhs,
        e1,
        e2,
    }
}

/// Asymptote directions `(a + b, a - b)` shared by the hyperbola and its
/// conjugate. Unnormalized; both lie on the zero set of the hyperbolic
/// implicit form.
pub fn asymptote_directions(pair: &CsdPair) -> (Vec3, Vec3) {
    (pair.a + pair.b, pair.a - pair.b)
}

/// Eccentricity of the conic generated by `pair`.
///
/// For the ellipse this is `sqrt(1 - lmin/lmax)` from the implicit form's
/// eigenvalues (0 for a circle). For the hyperbolas the pair is first
/// reduced to principal semi-axes `(p, q)`; the primary hyperbola (transverse
/// axis `p`) has `e = sqrt(1 + q^2/p^2)`, the conjugate `sqrt(1 + p^2/q^2)`.
/// Fails on isotropic (null) pairs and on a vanishing transverse axis.
pub fn eccentricity(pair: &CsdPair, kind: ConicKind) -> Result<f64> {
    match kind {
        ConicKind::Ellipse => {
            let form = implicit_form(pair, ConicKind::Ellipse);
            let half_trace = 0.5 * (form.cxx + form.cyy);
            let disc = (0.25 * (form.cxx - form.cyy).powi(2) + form.cxy * form.cxy).sqrt();
            let (lmax, lmin) = (half_trace + disc, half_trace - disc);
            if lmin <= 0.0 || !lmin.is_finite() {
                return Err(Error::NotPositiveDefinite {
                    eigenvalues: [lmin, lmax, f64::NAN],
                });
            }
            Ok((1.0 - lmin / lmax).max(0.0).sqrt())
        }
        ConicKind::Hyperbola | ConicKind::ConjugateHyperbola => {
            let axes = pair.as_jay_vector().principal_axes()?;
            let (p2, q2) = (axes.p.norm_squared(), axes.q.norm_squared());
            let transverse = if kind == ConicKind::Hyperbola { p2 } else { q2 };
            let conjugate = if kind == ConicKind::Hyperbola { q2 } else { p2 };
            let scale = pair.a.norm_squared() + pair.b.norm_squared();
            if transverse <= tol::PARALLEL * scale {
                return Err(Error::ZeroAxis {
                    p_norm_sq: transverse,
                });
            }
            Ok((1.0 + conjugate / transverse).sqrt())
        }
    }
}

/// Sample points for plotting. Ellipses get `n` points over a full turn;
/// each hyperbola gets `n` points split between its two branches with the
/// parameter swept over `[-2, 2]`.
pub fn sample_points(pair: &CsdPair, kind: ConicKind, n: usize) -> Vec<Vec3> {
    let mut points = Vec::with_capacity(n);
    match kind {
        ConicKind::Ellipse => {
            for k in 0..n {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n.max(1) as f64;
                points.push(conic_point(pair, kind, Branch::Plus, theta));
            }
        }
        ConicKind::Hyperbola | ConicKind::ConjugateHyperbola => {
            let per_branch = (n / 2).max(1);
            for branch in [Branch::Plus, Branch::Minus] {
                for k in 0..per_branch {
                    let theta = -2.0 + 4.0 * k as f64 / (per_branch - 1).max(1) as f64;
                    points.push(conic_point(pair, kind, branch, theta));
                }
            }
        }
    }
    points
}

/// Write points as CSV: a header line `x,y,z`, then one row per sample.
pub fn write_csv_points<W: Write>(points: &[Vec3], out: &mut W) -> io::Result<()> {
    writeln!(out, "x,y,z")?;
    for p in points {
        writeln!(out, "{},{},{}", p.x, p.y, p.z)?;
    }
    Ok(())
}
