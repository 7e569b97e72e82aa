//! Exact arithmetic in the field Q(i, √2).
//!
//! A [`Scalar`] is stored as `re + im·i` with `re`, `im` in the real
//! subfield Q(√2), each of which is a pair of arbitrary-precision
//! rationals. All operations are exact; the only lossy conversion is
//! [`Scalar::to_complex`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `rat + surd·√2` of the real quadratic field Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct RealSurd {
    rat: BigRational,
    surd: BigRational,
}

impl RealSurd {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    /// Norm to Q: `rat² − 2·surd²`. Nonzero for every nonzero element
    /// because √2 is irrational.
    fn field_norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(BigInt::from(2)) * &self.surd * &self.surd
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field_norm();
        Some(Self {
            rat: &self.rat / &n,
            surd: -(&self.surd / &n),
        })
    }

    fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN)
            + self.surd.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

impl Add for &RealSurd {
    type Output = RealSurd;
    fn add(self, rhs: &RealSurd) -> RealSurd {
        RealSurd {
            rat: &self.rat + &rhs.rat,
            surd: &self.surd + &rhs.surd,
        }
    }
}

impl Sub for &RealSurd {
    type Output = RealSurd;
    fn sub(self, rhs: &RealSurd) -> RealSurd {
        RealSurd {
            rat: &self.rat - &rhs.rat,
            surd: &self.surd - &rhs.surd,
        }
    }
}

impl Mul for &RealSurd {
    type Output = RealSurd;
    fn mul(self, rhs: &RealSurd) -> RealSurd {
        if self.is_zero() || rhs.is_zero() {
            return RealSurd::zero();
        }
        let two = BigRational::from_integer(BigInt::from(2));
        RealSurd {
            rat: &self.rat * &rhs.rat + two * &self.surd * &rhs.surd,
            surd: &self.rat * &rhs.surd + &self.surd * &rhs.rat,
        }
    }
}

impl Neg for &RealSurd {
    type Output = RealSurd;
    fn neg(self) -> RealSurd {
        RealSurd {
            rat: -&self.rat,
            surd: -&self.surd,
        }
    }
}

/// An exact element `(a + b√2) + (c + d√2)·i` of Q(i, √2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: RealSurd,
    im: RealSurd,
}

impl Scalar {
    pub fn from_components(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self {
            re: RealSurd { rat: a, surd: b },
            im: RealSurd { rat: c, surd: d },
        }
    }

    /// The four rational coordinates `[a, b, c, d]`.
    pub fn components(&self) -> [&BigRational; 4] {
        [&self.re.rat, &self.re.surd, &self.im.rat, &self.im.surd]
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_components(r, Zero::zero(), Zero::zero(), Zero::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self::from_components(Zero::zero(), Zero::zero(), One::one(), Zero::zero())
    }

    pub fn sqrt2() -> Self {
        Self::from_components(Zero::zero(), One::one(), Zero::zero(), Zero::zero())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::from_components(
            Zero::zero(),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            Zero::zero(),
            Zero::zero(),
        )
    }

    /// The primitive eighth root of unity `(1 + i)/√2`.
    pub fn eighth_root_of_unity() -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        Self::from_components(Zero::zero(), half.clone(), Zero::zero(), half)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.surd.is_zero() && self.re.rat.is_one()
    }

    /// Returns the rational value if this scalar lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.im.is_zero() && self.re.surd.is_zero() {
            Some(&self.re.rat)
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`, which lies in the real subfield.
    fn modulus_squared(&self) -> RealSurd {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn is_unit_modulus(&self) -> bool {
        let m = self.modulus_squared();
        m.surd.is_zero() && m.rat.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        // 1/z = conj(z) / |z|², and |z|² is a nonzero element of Q(√2).
        let m = self.modulus_squared().inv().ok_or(Error::DivisionByZero)?;
        let c = self.conj();
        Ok(Self {
            re: &c.re * &m,
            im: &c.im * &m,
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division of Scalar by zero")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn write_rational_magnitude(f: &mut fmt::Formatter<'_>, r: &BigRational, unit: &str) -> fmt::Result {
    let mag = r.abs();
    if unit.is_empty() {
        write!(f, "{}", mag)
    } else if mag.is_one() {
        write!(f, "{}", unit)
    } else {
        write!(f, "{} {}", mag, unit)
    }
}

/// Formats as a signed sum such as `1/2 + 3/4 sqrt2 - i - 2 sqrt2 i`,
/// which the expression parser reads back exactly.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.re.rat, ""),
            (&self.re.surd, "sqrt2"),
            (&self.im.rat, "i"),
            (&self.im.surd, "sqrt2 i"),
        ];
        let mut first = true;
        for (value, unit) in parts {
            if value.is_zero() {
                continue;
            }
            if first {
                if value.is_negative() {
                    write!(f, "-")?;
                }
            } else if value.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_rational_magnitude(f, value, unit)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        Scalar::from_components(r(a), r(b), r(c), r(d))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(&Scalar::inv_sqrt2() * &Scalar::sqrt2(), Scalar::one());
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn eighth_root_has_order_eight() {
        let w = Scalar::eighth_root_of_unity();
        assert!(w.is_unit_modulus());
        assert_eq!(w.pow(2).unwrap(), Scalar::i());
        assert_eq!(w.pow(8).unwrap(), Scalar::one());
        assert_eq!(w.pow(-1).unwrap(), w.conj());
    }

    #[test]
    fn inverse_of_general_element() {
        let z = s(1, 2, -3, 1);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn unit_modulus_detection() {
        assert!(Scalar::from_int(-1).is_unit_modulus());
        assert!(Scalar::i().is_unit_modulus());
        assert!(Scalar::from_components(
            BigRational::new(3.into(), 5.into()),
            Zero::zero(),
            BigRational::new(4.into(), 5.into()),
            Zero::zero()
        )
        .is_unit_modulus());
        assert!(!Scalar::from_int(2).is_unit_modulus());
        assert!(!Scalar::inv_sqrt2().is_unit_modulus());
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s(1, 0, 0, 0).to_string(), "1");
        assert_eq!(s(0, -1, 0, 0).to_string(), "-sqrt2");
        assert_eq!(s(2, 0, -1, 3).to_string(), "2 - i + 3 sqrt2 i");
        assert_eq!(Scalar::inv_sqrt2().to_string(), "1/2 sqrt2");
    }

    #[test]
    fn complex_conversion() {
        let z = Scalar::eighth_root_of_unity().to_complex();
        assert!((z.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((z.im - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
