//! Split-complex ("jay") scalars: `x + j y` with `j^2 = +1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Split-complex scalar `re + j jay`, where the jay unit squares to `+1`.
///
/// Unlike the complex numbers this ring has zero divisors, `(1 + j)(1 - j) =
/// 0`, so the squared modulus [`JayScalar::modulus_squared`] (`re^2 - jay^2`)
/// can be negative or zero and there is no general division.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JayScalar {
    pub re: f64,
    pub jay: f64,
}

impl JayScalar {
    pub const ZERO: JayScalar = JayScalar::new(0.0, 0.0);
    pub const ONE: JayScalar = JayScalar::new(1.0, 0.0);
    /// The jay unit itself.
    pub const J: JayScalar = JayScalar::new(0.0, 1.0);

    #[inline]
    pub const fn new(re: f64, jay: f64) -> Self {
        JayScalar { re, jay }
    }

    /// Jay conjugate `re - j jay`. An involution and a ring homomorphism.
    #[inline]
    pub const fn conj(self) -> Self {
        JayScalar::new(self.re, -self.jay)
    }

    /// `x * conj(x) = re^2 - jay^2`. Negative inside the "light cone"
    /// `|jay| > |re|` and zero exactly on the zero divisors.
    #[inline]
    pub fn modulus_squared(self) -> f64 {
        self.re * self.re - self.jay * self.jay
    }

    /// Exponential of a pure jay argument: `exp(j phi) = cosh phi + j sinh
    /// phi`.
    ///
    /// Errors when `phi` is not finite or `cosh phi` overflows `f64`
    /// (|phi| beyond roughly 710).
    pub fn exp(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinite {
                what: "exp argument",
            });
        }
        let value = JayScalar::new(phi.cosh(), phi.sinh());
        if !value.re.is_finite() {
            return Err(Error::ExpOverflow { phi });
        }
        Ok(value)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.jay.is_finite()
    }

    /// Componentwise scaling by a real factor.
    #[inline]
    pub fn scale(self, s: f64) -> Self {
        JayScalar::new(self.re * s, self.jay * s)
    }
}

impl Add for JayScalar {
    type Output = JayScalar;
    #[inline]
    fn add(self, rhs: JayScalar) -> JayScalar {
        JayScalar::new(self.re + rhs.re, self.jay + rhs.jay)
    }
}

impl AddAssign for JayScalar {
    #[inline]
    fn add_assign(&mut self, rhs: JayScalar) {
        *self = *self + rhs;
    }
}

impl Sub for JayScalar {
    type Output = JayScalar;
    #[inline]
    fn sub(self, rhs: JayScalar) -> JayScalar {
        JayScalar::new(self.re - rhs.re, self.jay - rhs.jay)
    }
}

impl SubAssign for JayScalar {
    #[inline]
    fn sub_assign(&mut self, rhs: JayScalar) {
        *self = *self - rhs;
    }
}

impl Neg for JayScalar {
    type Output = JayScalar;
    #[inline]
    fn neg(self) -> JayScalar {
        JayScalar::new(-self.re, -self.jay)
    }
}

impl Mul for JayScalar {
    type Output = JayScalar;
    /// `(x + j y)(u + j v) = (x u + y v) + j (x v + y u)`.
    #[inline]
    fn mul(self, rhs: JayScalar) -> JayScalar {
        JayScalar::new(
            self.re * rhs.re + self.jay * rhs.jay,
            self.re * rhs.jay + self.jay * rhs.re,
        )
    }
}

impl Mul<f64> for JayScalar {
    type Output = JayScalar;
    #[inline]
    fn mul(self, rhs: f64) -> JayScalar {
        self.scale(rhs)
    }
}

impl Mul<JayScalar> for f64 {
    type Output = JayScalar;
    #[inline]
    fn mul(self, rhs: JayScalar) -> JayScalar {
        rhs.scale(self)
    }
}

impl fmt::Display for JayScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.jay.is_sign_negative() {
            write!(f, "{} - j{}", self.re, -self.jay)
        } else {
            write!(f, "{} + j{}", self.re, self.jay)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: partial sums of `sum (j phi)^n / n!` evaluated
    /// with jay multiplication only.
    fn exp_series(phi: f64, terms: usize) -> JayScalar {
        let x = JayScalar::new(0.0, phi);
        let mut sum = JayScalar::ONE;
        let mut term = JayScalar::ONE;
        for n in 1..=terms {
            term = term * x;
            term = term.scale(1.0 / n as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn exp_matches_series_oracle() {
        for &phi in &[0.0, 0.3, -1.0, 2.0_f64.ln(), 1.7, -2.5] {
            let series = exp_series(phi, 40);
            let closed = JayScalar::exp(phi).unwrap();
            assert_relative_eq!(closed.re, series.re, max_relative = 1e-13);
            assert_relative_eq!(
                closed.jay,
                series.jay,
                max_relative = 1e-13,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn exp_of_ln_two_is_frozen_value() {
        // cosh(ln 2) = (2 + 1/2)/2, sinh(ln 2) = (2 - 1/2)/2.
        let e = JayScalar::exp(2.0_f64.ln()).unwrap();
        assert_relative_eq!(e.re, 1.25, max_relative = 1e-15);
        assert_relative_eq!(e.jay, 0.75, max_relative = 1e-15);
    }

    #[test]
    fn exp_rejects_overflow_and_non_finite() {
        assert!(matches!(
            JayScalar::exp(800.0),
            Err(Error::ExpOverflow { .. })
        ));
        assert!(matches!(
            JayScalar::exp(-800.0),
            Err(Error::ExpOverflow { .. })
        ));
        assert!(matches!(
            JayScalar::exp(f64::NAN),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            JayScalar::exp(f64::INFINITY),
            Err(Error::NonFinite { .. })
        ));
        // Stays finite right up to the cosh limit.
        assert!(JayScalar::exp(709.0).is_ok());
    }

    #[test]
    fn zero_divisors_annihilate() {
        let plus = JayScalar::ONE + JayScalar::J;
        let minus = JayScalar::ONE - JayScalar::J;
        assert_eq!(plus * minus, JayScalar::ZERO);
        assert_eq!(plus.modulus_squared(), 0.0);
    }

    #[test]
    fn exp_satisfies_addition_law() {
        let (alpha, beta) = (0.83, -1.41);
        let lhs = JayScalar::exp(alpha).unwrap() * JayScalar::exp(beta).unwrap();
        let rhs = JayScalar::exp(alpha + beta).unwrap();
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-14);
        assert_relative_eq!(lhs.jay, rhs.jay, max_relative = 1e-14);
    }

    #[test]
    fn conjugation_is_an_involutive_homomorphism() {
        let x = JayScalar::new(3.0, 2.0);
        let y = JayScalar::new(-0.7, 1.9);
        assert_eq!(x.conj().conj(), x);
        assert_eq!((x * y).conj(), x.conj() * y.conj());
        assert_eq!((x + y).conj(), x.conj() + y.conj());
        assert_eq!(x.conj(), JayScalar::new(3.0, -2.0));
        assert_eq!(x.modulus_squared(), 5.0);
        // x * conj(x) is the squared modulus with no jay part.
        let m = x * x.conj();
        assert_eq!(m, JayScalar::new(5.0, 0.0));
    }

    #[test]
    fn multiplication_distributes_and_commutes() {
        let x = JayScalar::new(1.5, -0.25);
        let y = JayScalar::new(-2.0, 0.75);
        let z = JayScalar::new(0.3, 4.0);
        let lhs = x * (y + z);
        let rhs = x * y + x * z;
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-14);
        assert_relative_eq!(lhs.jay, rhs.jay, max_relative = 1e-14);
        assert_eq!(x * y, y * x);
    }

    #[test]
    fn json_encoding_uses_re_and_jay_fields() {
        let x = JayScalar::new(3.0, 2.0);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"re":3.0,"jay":2.0}"#);
        let back: JayScalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display_spells_the_jay_sign() {
        assert_eq!(JayScalar::new(1.25, 0.75).to_string(), "1.25 + j0.75");
        assert_eq!(JayScalar::new(3.0, -2.0).to_string(), "3 - j2");
    }
}
