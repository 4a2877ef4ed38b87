//! Exponential plane-wave solutions of `M : grad grad phi = 0` for a
//! constant symmetric coefficient matrix `M`.
//!
//! Substituting `phi = exp(T S.x)` with a bivector slowness `S = a + ib`
//! reduces the PDE to the bilinear condition `S.MS = 0`, i.e. `a.Ma = b.Mb`
//! and `a.Mb = 0`; a jay slowness `S = a + jb` asks for `a.Ma = -b.Mb`
//! instead. Both conditions say that `a` and `b` are conjugate
//! semi-diameters of a central section of the quadric `r.Mr = 1` - an
//! ellipse when the section form is positive definite, a conjugate
//! hyperbola pair when it is indefinite, a parallel line pair when it is
//! singular. This module walks that correspondence end to end: classify the
//! operator, cut it with a plane, read off CSD pairs, assemble real-valued
//! solutions, and measure how well they satisfy the PDE.

use nalgebra::{SymmetricEigen, Vector2};
use serde::{Deserialize, Serialize};

use crate::dirvec::{boost_csd, rotate_csd};
use crate::error::{Error, Result};
use crate::{tol, Mat3, Vec3};

/// Classification of a symmetric second-order operator by eigenvalue signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorClass {
    /// Definite (either sign): no real characteristic directions.
    Elliptic,
    /// Indefinite and nonsingular: a cone of characteristic directions.
    Hyperbolic,
    /// Singular: at least one eigenvalue at zero (relative to the largest).
    Degenerate,
}

impl OperatorClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            OperatorClass::Elliptic => "elliptic",
            OperatorClass::Hyperbolic => "hyperbolic",
            OperatorClass::Degenerate => "degenerate",
        }
    }
}

/// A second-order constant-coefficient operator `M : grad grad`, stored
/// symmetrized with its eigenvalue classification.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeOperator {
    matrix: Mat3,
    class: OperatorClass,
    eigenvalues: [f64; 3],
}

impl PdeOperator {
    /// Symmetrizes the matrix; rejects inputs whose asymmetry exceeds
    /// [`tol::SYMMETRY`] relative to the largest entry.
    pub fn new(matrix: Mat3) -> Result<Self> {
        if !matrix.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                what: "operator matrix",
            });
        }
        let amax = matrix.amax();
        let asym = (matrix - matrix.transpose()).amax();
        if asym > tol::SYMMETRY * amax.max(f64::MIN_POSITIVE) {
            return Err(Error::NotSymmetric {
                asymmetry: asym / amax,
            });
        }
        let sym = (matrix + matrix.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym).eigenvalues;
        let floor = tol::DEFINITENESS * eig.amax();
        let pos = eig.iter().filter(|&&l| l > floor).count();
        let neg = eig.iter().filter(|&&l| l < -floor).count();
        let class = if pos + neg < 3 {
            OperatorClass::Degenerate
        } else if pos == 3 || neg == 3 {
            OperatorClass::Elliptic
        } else {
            OperatorClass::Hyperbolic
        };
        let mut eigenvalues = [eig.x, eig.y, eig.z];
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(PdeOperator {
            matrix: sym,
            class,
            eigenvalues,
        })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn class(&self) -> OperatorClass {
        self.class
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        self.eigenvalues
    }

    /// Scale a hyperbolic operator by `+1` or `-1` so its signature becomes
    /// `(+, +, -)`, making `r.Mr = 1` the one-sheet hyperboloid whose
    /// sections carry the CSD construction. Returns the normalized matrix
    /// and the sign applied; errors on non-hyperbolic operators.
    pub fn normalize_one_sheet(&self) -> Result<(Mat3, f64)> {
        if self.class != OperatorClass::Hyperbolic {
            return Err(Error::WrongClass {
                expected: "hyperbolic operator",
                found: format!("{} operator", self.class.as_str()),
            });
        }
        let pos = self.eigenvalues.iter().filter(|&&l| l > 0.0).count();
        if pos == 2 {
            Ok((self.matrix, 1.0))
        } else {
            Ok((-self.matrix, -1.0))
        }
    }
}

/// An orthonormal pair spanning the cutting plane of a central section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionFrame {
    m: Vec3,
    n: Vec3,
}

impl SectionFrame {
    /// Requires `|m| = |n| = 1` and `m.n = 0` within [`tol::FRAME`].
    pub fn new(m: Vec3, n: Vec3) -> Result<Self> {
        if !(m.iter().all(|x| x.is_finite()) && n.iter().all(|x| x.is_finite())) {
            return Err(Error::NonFinite {
                what: "section frame",
            });
        }
        let residual = (m.norm() - 1.0)
            .abs()
            .max((n.norm() - 1.0).abs())
            .max(m.dot(&n).abs());
        if residual > tol::FRAME {
            return Err(Error::FrameNotOrthonormal { residual });
        }
        Ok(SectionFrame { m, n })
    }

    /// Orthonormalize a spanning pair (Gram-Schmidt, first vector kept as
    /// direction).
    pub fn from_span(u: Vec3, v: Vec3) -> Result<Self> {
        let cross = u.cross(&v).norm();
        // Negated so a NaN cross (non-finite input) fails the gate too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(cross > crate::tol::PARALLEL * u.norm() * v.norm()) {
            return Err(Error::DegeneratePair { cross_norm: cross });
        }
        let m = u / u.norm();
        let w = v - m * m.dot(&v);
        Ok(SectionFrame { m, n: w / w.norm() })
    }

    pub fn m(&self) -> Vec3 {
        self.m
    }

    pub fn n(&self) -> Vec3 {
        self.n
    }

    /// Map in-plane coordinates `(p, q)` to the ambient space.
    pub fn lift(&self, p: f64, q: f64) -> Vec3 {
        self.m * p + self.n * q
    }
}

/// In-plane quadratic form of a central section:
/// `a p^2 + 2 h p q + g q^2` for `r = p m + q n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionForm {
    pub a: f64,
    pub h: f64,
    pub g: f64,
}

/// Conic type of a central section's unit level set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionClass {
    Ellipse,
    Hyperbola,
    ParallelLines,
}

impl SectionClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SectionClass::Ellipse => "ellipse",
            SectionClass::Hyperbola => "hyperbola",
            SectionClass::ParallelLines => "parallel_lines",
        }
    }
}

/// Restrict `m_mat` to the plane of `frame`:
/// `(a, h, g) = (m.Mm, m.Mn, n.Mn)`.
pub fn section_form(m_mat: &Mat3, frame: &SectionFrame) -> SectionForm {
    SectionForm {
        a: frame.m.dot(&(m_mat * frame.m)),
        h: frame.m.dot(&(m_mat * frame.n)),
        g: frame.n.dot(&(m_mat * frame.n)),
    }
}

impl SectionForm {
    /// `a g - h^2`; positive for ellipses, negative for hyperbolas.
    pub fn det(&self) -> f64 {
        self.a * self.g - self.h * self.h
    }

    fn scale(&self) -> f64 {
        self.a.abs().max(self.h.abs()).max(self.g.abs())
    }

    /// Classify the unit level set of the section form with the default
    /// degeneracy tolerance [`tol::SECTION_DEGENERACY`].
    pub fn classify(&self) -> Result<SectionClass> {
        self.classify_with(tol::SECTION_DEGENERACY)
    }

    /// Classify with an explicit degeneracy tolerance. The determinant is
    /// compared against `tol` at the squared coefficient scale. A negative
    /// definite form has an empty unit level set (the plane misses the
    /// quadric `r.Mr = 1`) and is reported as
    /// [`Error::InconsistentSection`] rather than classified.
    pub fn classify_with(&self, tol: f64) -> Result<SectionClass> {
        let scale = self.scale();
        let floor = tol * scale * scale;
        let det = self.det();
        if det > floor {
            if self.a + self.g > 0.0 {
                Ok(SectionClass::Ellipse)
            } else {
                Err(Error::InconsistentSection {
                    a: self.a,
                    g: self.g,
                })
            }
        } else if det < -floor {
            Ok(SectionClass::Hyperbola)
        } else {
            Ok(SectionClass::ParallelLines)
        }
    }

    /// Eigenpairs of the symmetric 2x2 form. For an (exactly) axis-aligned
    /// form the eigenpairs `(a, e1), (g, e2)` are returned in that order;
    /// otherwise sorted by descending eigenvalue. The second vector is the
    /// exact quarter-turn of the first, so the pair is orthonormal to
    /// working precision.
    fn eigen(&self) -> [(f64, Vector2<f64>); 2] {
        if self.h.abs() <= 1e-14 * self.scale().max(f64::MIN_POSITIVE) {
            return [
                (self.a, Vector2::new(1.0, 0.0)),
                (self.g, Vector2::new(0.0, 1.0)),
            ];
        }
        let mean = 0.5 * (self.a + self.g);
        let disc = (0.25 * (self.a - self.g).powi(2) + self.h * self.h).sqrt();
        let hi = mean + disc;
        let v_hi = Vector2::new(self.h, hi - self.a).normalize();
        let v_lo = Vector2::new(-v_hi.y, v_hi.x);
        [(hi, v_hi), (mean - disc, v_lo)]
    }
}

/// CSD pair of an elliptic central section, swept to phase `psi`.
///
/// The returned vectors satisfy `a.Ma = b.Mb = 1` and `a.Mb = 0`: exactly
/// the bivector slowness condition for [`SolutionKind::EllipticBivector`]
/// waves. `psi = 0` gives the principal semi-axes of the section ellipse;
/// other phases reach every CSD pair of the same ellipse. Negative definite
/// operators must be sign-normalized first (the PDE is invariant under
/// `M -> -M`, but the section ellipse `r.Mr = 1` is not).
pub fn csd_pair_elliptic(m_mat: &Mat3, frame: &SectionFrame, psi: f64) -> Result<(Vec3, Vec3)> {
    let form = section_form(m_mat, frame);
    match form.classify()? {
        SectionClass::Ellipse => {}
        other => {
            return Err(Error::WrongClass {
                expected: "elliptic section",
                found: format!("{} section", other.as_str()),
            })
        }
    }
    let [(l1, v1), (l2, v2)] = form.eigen();
    let a0 = frame.lift(v1.x, v1.y) / l1.sqrt();
    let b0 = frame.lift(v2.x, v2.y) / l2.sqrt();
    rotate_csd(a0, b0, psi)
}

/// CSD pair of a hyperbolic central section, swept to pseudo-phase `psi`.
///
/// The returned vectors satisfy `a.Ma = +1`, `b.Mb = -1`, `a.Mb = 0`: the
/// jay slowness condition for [`SolutionKind::HyperbolicJay`] waves; `a`
/// lies on the section hyperbola, `b` on its conjugate. `psi = 0` gives the
/// semi-axes of the conjugate hyperbola pair; other phases boost along the
/// section's CSD family.
pub fn csd_pair_hyperbolic(m_mat: &Mat3, frame: &SectionFrame, psi: f64) -> Result<(Vec3, Vec3)> {
    let form = section_form(m_mat, frame);
    match form.classify()? {
        SectionClass::Hyperbola => {}
        other => {
            return Err(Error::WrongClass {
                expected: "hyperbolic section",
                found: format!("{} section", other.as_str()),
            })
        }
    }
    // The axis-aligned eigen branch preserves coefficient order, which may
    // put the negative eigenvalue first; the transverse axis needs l > 0.
    let [first, second] = form.eigen();
    let ((l_pos, v_pos), (l_neg, v_neg)) = if first.0 > 0.0 {
        (first, second)
    } else {
        (second, first)
    };
    debug_assert!(l_pos > 0.0 && l_neg < 0.0);
    let a0 = frame.lift(v_pos.x, v_pos.y) / l_pos.sqrt();
    let b0 = frame.lift(v_neg.x, v_neg.y) / (-l_neg).sqrt();
    boost_csd(a0, b0, psi)
}

/// Null direction of a degenerate (parallel-line) section:
/// `d = sqrt(g) m - sqrt(a) n` for `h >= 0`, `d = sqrt(g) m + sqrt(a) n`
/// for `h < 0` (the perfect-square factorization `a p^2 + 2h pq + g q^2 =
/// (sqrt(a) p +/- sqrt(g) q)^2` absorbs the sign of `h`), satisfying
/// `d.Md = 0` to first order in the section's degeneracy. This is the
/// slowness of the one exponential solution a parallel-line section admits.
///
/// A sign-definite negative section is negated first (same null direction);
/// diagonal entries below the degeneracy floor are clamped to zero. For a
/// parallel-line section, mixed signs of `a` and `g` force the smaller one
/// under that floor, so the clamp always reconciles them.
pub fn degenerate_direction(form: &SectionForm, frame: &SectionFrame) -> Result<Vec3> {
    match form.classify()? {
        SectionClass::ParallelLines => {}
        other => {
            return Err(Error::WrongClass {
                expected: "degenerate section",
                found: format!("{} section", other.as_str()),
            })
        }
    }
    let scale = form.scale();
    if scale == 0.0 {
        // Whole plane is characteristic; any direction works.
        return Ok(frame.m());
    }
    let floor = tol::SECTION_DEGENERACY * scale;
    let clamp = |x: f64| if x.abs() <= floor { 0.0 } else { x };
    let (mut a, mut h, mut g) = (clamp(form.a), form.h, clamp(form.g));
    if a <= 0.0 && g <= 0.0 {
        a = -a;
        h = -h;
        g = -g;
    }
    debug_assert!(a >= 0.0 && g >= 0.0);
    let d = if h >= 0.0 {
        frame.lift(g.sqrt(), -a.sqrt())
    } else {
        frame.lift(g.sqrt(), a.sqrt())
    };
    Ok(d)
}

/// Envelope family of a plane-wave solution, named for the slowness
/// algebra that produces it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    /// Bivector slowness `a + ib`:
    /// `phi = (A+ cos(T b.x) - A- sin(T b.x)) exp(T a.x)`;
    /// needs `a.Ma = b.Mb`, `a.Mb = 0`.
    EllipticBivector,
    /// Jay slowness `a + jb`:
    /// `phi = (A+ cosh(T b.x) + A- sinh(T b.x)) exp(T a.x)`;
    /// needs `a.Ma = +1`, `b.Mb = -1`, `a.Mb = 0`.
    HyperbolicJay,
    /// Characteristic-line slowness:
    /// `phi = A+ exp(T a.x)`; needs `a.Ma = 0`.
    DegenerateLine,
}

/// A validated real-valued plane-wave solution.
///
/// Construct through [`build_solution`]; the fields are public so
/// deserialized solutions can be re-verified by recomputing residuals
/// against the operator they claim to solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSolution {
    pub kind: SolutionKind,
    #[serde(with = "crate::serde_util::vec3")]
    pub a: Vec3,
    #[serde(with = "crate::serde_util::vec3")]
    pub b: Vec3,
    /// Wave number scaling both exponents.
    #[serde(rename = "T")]
    pub t: f64,
    pub amp_plus: f64,
    pub amp_minus: f64,
}

/// Assemble a wave solution after checking the slowness conditions of
/// `kind` against `m_mat` within [`tol::SOLUTION_BUILD`]. The error names
/// the violated condition.
pub fn build_solution(
    m_mat: &Mat3,
    kind: SolutionKind,
    a: Vec3,
    b: Vec3,
    t: f64,
    amp_plus: f64,
    amp_minus: f64,
) -> Result<WaveSolution> {
    let finite = a.iter().all(|x| x.is_finite())
        && b.iter().all(|x| x.is_finite())
        && t.is_finite()
        && amp_plus.is_finite()
        && amp_minus.is_finite();
    if !finite {
        return Err(Error::NonFinite {
            what: "wave solution parameter",
        });
    }
    if t == 0.0 {
        return Err(Error::InvalidInput("wave number T must be nonzero".into()));
    }
    let s = m_mat.amax();
    let ama = a.dot(&(m_mat * a));
    let bmb = b.dot(&(m_mat * b));
    let amb = a.dot(&(m_mat * b));
    let check = |condition: &'static str, residual: f64, scale: f64| -> Result<()> {
        if residual > tol::SOLUTION_BUILD * scale.max(f64::MIN_POSITIVE) {
            Err(Error::SolutionInvariant {
                condition,
                residual,
            })
        } else {
            Ok(())
        }
    };
    match kind {
        SolutionKind::EllipticBivector => {
            let scale = s * a.norm_squared().max(b.norm_squared());
            check("a.Ma = b.Mb", (ama - bmb).abs(), scale)?;
            check("a.Mb = 0", amb.abs(), s * a.norm() * b.norm())?;
        }
        SolutionKind::HyperbolicJay => {
            check(
                "a.Ma = +1",
                (ama - 1.0).abs(),
                (s * a.norm_squared()).max(1.0),
            )?;
            check(
                "b.Mb = -1",
                (bmb + 1.0).abs(),
                (s * b.norm_squared()).max(1.0),
            )?;
            check("a.Mb = 0", amb.abs(), s * a.norm() * b.norm())?;
        }
        SolutionKind::DegenerateLine => {
            check("a.Ma = 0", ama.abs(), s * a.norm_squared())?;
            check("b = 0", b.norm(), a.norm().max(1.0))?;
        }
    }
    Ok(WaveSolution {
        kind,
        a,
        b,
        t,
        amp_plus,
        amp_minus,
    })
}

impl WaveSolution {
    /// Envelope value and its first two derivatives in the oscillating
    /// phase `v = T b.x`.
    fn envelope(&self, v: f64) -> (f64, f64, f64) {
        match self.kind {
            SolutionKind::EllipticBivector => {
                let (sv, cv) = v.sin_cos();
                let f = self.amp_plus * cv - self.amp_minus * sv;
                let fp = -self.amp_plus * sv - self.amp_minus * cv;
                (f, fp, -f)
            }
            SolutionKind::HyperbolicJay => {
                let (sh, ch) = (v.sinh(), v.cosh());
                let f = self.amp_plus * ch + self.amp_minus * sh;
                let fp = self.amp_plus * sh + self.amp_minus * ch;
                (f, fp, f)
            }
            SolutionKind::DegenerateLine => (self.amp_plus, 0.0, 0.0),
        }
    }

    /// `phi(x)`.
    pub fn value(&self, x: &Vec3) -> f64 {
        let u = self.t * self.a.dot(x);
        let (f, _, _) = self.envelope(self.t * self.b.dot(x));
        f * u.exp()
    }

    /// `grad phi(x)`.
    pub fn gradient(&self, x: &Vec3) -> Vec3 {
        let u = self.t * self.a.dot(x);
        let (f, fp, _) = self.envelope(self.t * self.b.dot(x));
        (self.a * f + self.b * fp) * (self.t * u.exp())
    }

    /// Hessian of `phi` at `x`.
    pub fn hessian(&self, x: &Vec3) -> Mat3 {
        let u = self.t * self.a.dot(x);
        let (f, fp, fpp) = self.envelope(self.t * self.b.dot(x));
        let aa = self.a * self.a.transpose();
        let ab = self.a * self.b.transpose();
        let bb = self.b * self.b.transpose();
        (aa * f + (ab + ab.transpose()) * fp + bb * fpp) * (self.t * self.t * u.exp())
    }

    /// Largest normalized PDE residual `|M : hess phi|` over `points`,
    /// using the exact Hessian. Normalization divides by
    /// `T^2 |M|_2 max|phi|` so the figure is scale-free in `T`, `M`, and
    /// the amplitudes.
    pub fn residual_analytic(&self, m_mat: &Mat3, points: &[Vec3]) -> f64 {
        self.residual_with(m_mat, points, |x| self.hessian(x))
    }

    /// Same residual with the Hessian replaced by central finite
    /// differences of step [`tol::FD_STEP`] on `value` - an independent
    /// check that the closed-form derivatives describe the function
    /// actually evaluated.
    pub fn residual_fd(&self, m_mat: &Mat3, points: &[Vec3]) -> f64 {
        let h = tol::FD_STEP;
        self.residual_with(m_mat, points, |x| self.fd_hessian(x, h))
    }

    fn residual_with(&self, m_mat: &Mat3, points: &[Vec3], hess: impl Fn(&Vec3) -> Mat3) -> f64 {
        let mut worst = 0.0_f64;
        let mut max_phi = 0.0_f64;
        for x in points {
            worst = worst.max(m_mat.dot(&hess(x)).abs());
            max_phi = max_phi.max(self.value(x).abs());
        }
        let denom = self.t * self.t * spectral_norm(m_mat) * max_phi;
        worst / denom.max(f64::MIN_POSITIVE)
    }

    fn fd_hessian(&self, x: &Vec3, h: f64) -> Mat3 {
        let mut out = Mat3::zeros();
        let e = |i: usize| {
            let mut v = Vec3::zeros();
            v[i] = h;
            v
        };
        let phi0 = self.value(x);
        for i in 0..3 {
            out[(i, i)] =
                (self.value(&(x + e(i))) - 2.0 * phi0 + self.value(&(x - e(i)))) / (h * h);
            for j in (i + 1)..3 {
                let mixed = (self.value(&(x + e(i) + e(j)))
                    - self.value(&(x + e(i) - e(j)))
                    - self.value(&(x - e(i) + e(j)))
                    + self.value(&(x - e(i) - e(j))))
                    / (4.0 * h * h);
                out[(i, j)] = mixed;
                out[(j, i)] = mixed;
            }
        }
        out
    }
}

/// Largest absolute eigenvalue of the symmetrized matrix.
fn spectral_norm(m: &Mat3) -> f64 {
    SymmetricEigen::new((m + m.transpose()) * 0.5)
        .eigenvalues
        .amax()
}

/// A straight line `point + t * direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    #[serde(with = "crate::serde_util::vec3")]
    pub point: Vec3,
    #[serde(with = "crate::serde_util::vec3")]
    pub direction: Vec3,
}

impl Line {
    pub fn at(&self, t: f64) -> Vec3 {
        self.point + self.direction * t
    }
}

/// The two generator lines through the `alpha`-points of the one-sheet
/// hyperboloid `-x^2/a^2 - y^2/b^2 + z^2/c^2 = -1`:
///
/// `x = +/-a cos(alpha) - a t sin(alpha)`,
/// `y = +/-b sin(alpha) + b t cos(alpha)`, `z = c t`.
///
/// Every point of either line lies on the surface exactly (the cross terms
/// cancel in `t`), demonstrating that constant-phase sets of degenerate
/// waves are swept out by straight lines. The two lines are parallel: both
/// directions are `(-a sin(alpha), b cos(alpha), c)`.
pub fn ruled_lines(a: f64, b: f64, c: f64, alpha: f64) -> Result<(Line, Line)> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!(
            "ruled lines need positive semi-axes and a finite angle, got a={a}, b={b}, c={c}, alpha={alpha}"
        )));
    }
    let (sa, ca) = alpha.sin_cos();
    let point = Vec3::new(a * ca, b * sa, 0.0);
    let direction = Vec3::new(-a * sa, b * ca, c);
    Ok((
        Line { point, direction },
        Line {
            point: -point,
            direction,
        },
    ))
}
