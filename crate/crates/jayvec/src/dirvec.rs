//! Bivectors, jay-vectors, and conjugate semi-diameter (CSD) generation.
//!
//! A pair of non-parallel vectors `(a, b)` spans a central conic: the
//! ellipse `a cos t + b sin t` or the hyperbola pair `+/-a cosh t + b sinh
//! t`. Packing the pair into `a + ib` (ellipse) or `a + jb` (hyperbolas)
//! turns "replace the pair by another conjugate pair of the same conic" into
//! multiplication by a unit scalar: `e^{i phi}` sweeps the ellipse's CSD
//! pairs, `e^{j phi}` sweeps the hyperbolas'.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jay::JayScalar;
use crate::{tol, Vec3};

/// Complex direction pair `re + i im` with `i^2 = -1`; the CSD encoding of
/// an ellipse. Equality is componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bivector {
    #[serde(with = "crate::serde_util::vec3")]
    pub re: Vec3,
    #[serde(with = "crate::serde_util::vec3")]
    pub im: Vec3,
}

impl Bivector {
    pub fn new(re: Vec3, im: Vec3) -> Self {
        Bivector { re, im }
    }

    /// Complex conjugate `re - i im`.
    pub fn conj(&self) -> Self {
        Bivector::new(self.re, -self.im)
    }

    /// Complex-bilinear (not sesquilinear) dot product.
    pub fn dot(&self, other: &Bivector) -> Complex64 {
        Complex64::new(
            self.re.dot(&other.re) - self.im.dot(&other.im),
            self.re.dot(&other.im) + self.im.dot(&other.re),
        )
    }

    /// Complex-bilinear cross product.
    pub fn cross(&self, other: &Bivector) -> Bivector {
        Bivector::new(
            self.re.cross(&other.re) - self.im.cross(&other.im),
            self.re.cross(&other.im) + self.im.cross(&other.re),
        )
    }

    /// `sqrt(|re|^2 + |im|^2)`; the scale used for relative comparisons.
    pub fn norm(&self) -> f64 {
        (self.re.norm_squared() + self.im.norm_squared()).sqrt()
    }
}

impl Mul<Bivector> for Complex64 {
    type Output = Bivector;
    fn mul(self, v: Bivector) -> Bivector {
        Bivector::new(
            self.re * v.re - self.im * v.im,
            self.re * v.im + self.im * v.re,
        )
    }
}

impl Add for Bivector {
    type Output = Bivector;
    fn add(self, rhs: Bivector) -> Bivector {
        Bivector::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Bivector {
    type Output = Bivector;
    fn sub(self, rhs: Bivector) -> Bivector {
        Bivector::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector::new(-self.re, -self.im)
    }
}

/// Jay direction pair `re + j jay` with `j^2 = +1`; the CSD encoding of a
/// conjugate hyperbola pair. Equality is componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JayVector {
    #[serde(with = "crate::serde_util::vec3")]
    pub re: Vec3,
    #[serde(with = "crate::serde_util::vec3")]
    pub jay: Vec3,
}

impl JayVector {
    pub fn new(re: Vec3, jay: Vec3) -> Self {
        JayVector { re, jay }
    }

    /// Jay conjugate `re - j jay`.
    pub fn conj(&self) -> Self {
        JayVector::new(self.re, -self.jay)
    }

    /// Jay-bilinear dot product:
    /// `(a + jb).(c + jd) = (a.c + b.d) + j (a.d + b.c)`.
    pub fn dot(&self, other: &JayVector) -> JayScalar {
        JayScalar::new(
            self.re.dot(&other.re) + self.jay.dot(&other.jay),
            self.re.dot(&other.jay) + self.jay.dot(&other.re),
        )
    }

    /// Jay-bilinear cross product.
    pub fn cross(&self, other: &JayVector) -> JayVector {
        JayVector::new(
            self.re.cross(&other.re) + self.jay.cross(&other.jay),
            self.re.cross(&other.jay) + self.jay.cross(&other.re),
        )
    }

    /// `sqrt(|re|^2 + |jay|^2)`; the scale used for relative comparisons.
    pub fn norm(&self) -> f64 {
        (self.re.norm_squared() + self.jay.norm_squared()).sqrt()
    }

    /// True when `A . conj(A)` vanishes to within `tol` in both components.
    ///
    /// Equivalently the principal semi-axes satisfy `p^2 = q^2` (with `p.q =
    /// 0`): the encoded hyperbolas are rectangular. `tol` is absolute, so
    /// scale it by `norm()^2` for large inputs.
    pub fn is_isotropic(&self, tol: f64) -> bool {
        let d = self.dot(&self.conj());
        d.re.abs() < tol && d.jay.abs() < tol
    }

    /// Reduce to principal axes: the unique `phi`, `p`, `q` with
    /// `A = e^{j phi} (p + j q)` and `p.q = 0`.
    ///
    /// `tanh(2 phi) = 2 a.b / (a^2 + b^2)`; Cauchy-Schwarz keeps the ratio
    /// in `[-1, 1]` with equality exactly at `a = +/-b`, where the reduction
    /// degenerates and [`Error::Isotropic`] is returned (threshold
    /// [`tol::ISOTROPY`]).
    pub fn principal_axes(&self) -> Result<PrincipalForm> {
        let (a, b) = (self.re, self.jay);
        let denom = a.norm_squared() + b.norm_squared();
        if denom < f64::MIN_POSITIVE {
            return Err(Error::Isotropic { ratio: 1.0 });
        }
        let ratio = 2.0 * a.dot(&b) / denom;
        if ratio.abs() > 1.0 - tol::ISOTROPY {
            return Err(Error::Isotropic { ratio: ratio.abs() });
        }
        let phi = 0.5 * ratio.atanh();
        let (ch, sh) = (phi.cosh(), phi.sinh());
        Ok(PrincipalForm {
            phi,
            p: a * ch - b * sh,
            q: b * ch - a * sh,
        })
    }

    /// A jay-vector `B` with `A.B = 0`, built on the principal axes of `A`:
    ///
    /// `B = beta (q - j (q^2/p^2) p) + gamma (p x q)`
    ///
    /// for arbitrary jay scalars `beta`, `gamma`. With `gamma = 0` the
    /// companion is coplanar with `A`. Fails on isotropic `A` and on `p = 0`
    /// (where the `q^2/p^2` scaling is undefined).
    pub fn orthogonal_companion(&self, beta: JayScalar, gamma: JayScalar) -> Result<JayVector> {
        let axes = self.principal_axes()?;
        let (p, q) = (axes.p, axes.q);
        let p2 = p.norm_squared();
        if p2 <= tol::PARALLEL * (self.norm() * self.norm()) {
            return Err(Error::ZeroAxis { p_norm_sq: p2 });
        }
        let in_plane = JayVector::new(q, -(q.norm_squared() / p2) * p);
        let normal = JayVector::new(p.cross(&q), Vec3::zeros());
        Ok(beta * in_plane + gamma * normal)
    }
}

impl Mul<JayVector> for JayScalar {
    type Output = JayVector;
    /// `(s + jt)(a + jb) = (s a + t b) + j (t a + s b)`.
    fn mul(self, v: JayVector) -> JayVector {
        JayVector::new(
            self.re * v.re + self.jay * v.jay,
            self.re * v.jay + self.jay * v.re,
        )
    }
}

impl Add for JayVector {
    type Output = JayVector;
    fn add(self, rhs: JayVector) -> JayVector {
        JayVector::new(self.re + rhs.re, self.jay + rhs.jay)
    }
}

impl Sub for JayVector {
    type Output = JayVector;
    fn sub(self, rhs: JayVector) -> JayVector {
        JayVector::new(self.re - rhs.re, self.jay - rhs.jay)
    }
}

impl Neg for JayVector {
    type Output = JayVector;
    fn neg(self) -> JayVector {
        JayVector::new(-self.re, -self.jay)
    }
}

/// Result of [`JayVector::principal_axes`]: `A = e^{j phi} (p + j q)` with
/// `p.q = 0`. `p` spans the transverse axis of the primary hyperbola, `q`
/// the transverse axis of its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalForm {
    pub phi: f64,
    pub p: Vec3,
    pub q: Vec3,
}

impl PrincipalForm {
    /// `e^{j phi} (p + j q)`; inverse of the reduction.
    pub fn reconstruct(&self) -> JayVector {
        let (ch, sh) = (self.phi.cosh(), self.phi.sinh());
        JayVector::new(self.p * ch + self.q * sh, self.p * sh + self.q * ch)
    }
}

fn require_sweepable(a: &Vec3, b: &Vec3, phi: f64) -> Result<()> {
    if !phi.is_finite() {
        return Err(Error::NonFinite {
            what: "sweep angle",
        });
    }
    let cross_norm = a.cross(b).norm();
    if cross_norm <= tol::PARALLEL * a.norm() * b.norm() || cross_norm == 0.0 {
        return Err(Error::DegeneratePair { cross_norm });
    }
    Ok(())
}

/// Replace an ellipse CSD pair by the pair swept through angle `phi`:
///
/// `c = a cos phi - b sin phi`, `d = a sin phi + b cos phi`.
///
/// Preserves `a^2 + b^2` and `a x b`. Rejects (numerically) parallel pairs,
/// including zero vectors.
pub fn rotate_csd(a: Vec3, b: Vec3, phi: f64) -> Result<(Vec3, Vec3)> {
    require_sweepable(&a, &b, phi)?;
    let (s, c) = phi.sin_cos();
    Ok((a * c - b * s, a * s + b * c))
}

/// Replace a hyperbola CSD pair by the pair swept through boost `phi`:
///
/// `c = a cosh phi + b sinh phi`, `d = a sinh phi + b cosh phi`.
///
/// Preserves `a^2 - b^2` and `a x b`. Rejects (numerically) parallel pairs
/// and boosts large enough to overflow cosh.
pub fn boost_csd(a: Vec3, b: Vec3, phi: f64) -> Result<(Vec3, Vec3)> {
    require_sweepable(&a, &b, phi)?;
    let (ch, sh) = (phi.cosh(), phi.sinh());
    if !ch.is_finite() {
        return Err(Error::ExpOverflow { phi });
    }
    Ok((a * ch + b * sh, a * sh + b * ch))
}
