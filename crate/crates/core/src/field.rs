//! Exact arithmetic over the Gaussian rationals `Q(i)`, plus a one-step
//! quadratic extension `Q(i)(sqrt(d))` used to write down factorization
//! witnesses.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QsgError, Result};

/// Operations needed by the generic linear algebra in [`crate::linalg`].
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; callers guarantee `self != 0`.
    fn inv_ref(&self) -> Self;
}

/// An element `re + im*i` of `Q(i)`.
///
/// Both parts are kept reduced with positive denominators (this is what
/// `BigRational` maintains).
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a non-negative rational, when it is rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`. Panics when `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::real(ratio(n, d))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar {
            re: ratio(re, 1),
            im: ratio(im, 1),
        }
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QsgError::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Scalar::real(self.re.recip()));
        }
        let n = self.norm();
        Ok(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Returns `r` with `r^2 = self` when such `r` exists in `Q(i)`.
    ///
    /// Uses the norm: if `self = (x + yi)^2` then `x^2 = (re + |self|)/2`
    /// with `|self| = sqrt(re^2 + im^2)` rational.
    pub fn is_square(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let s = rational_sqrt(&self.norm())?;
        let two = ratio(2, 1);
        let x2 = (&self.re + &s) / &two;
        let x = rational_sqrt(&x2)?;
        let y = if x.is_zero() {
            rational_sqrt(&((&s - &self.re) / &two))?
        } else {
            &self.im / (&two * &x)
        };
        let r = Scalar::new(x, y);
        debug_assert_eq!(&(&r * &r), self);
        Some(r)
    }

    /// Least common multiple of the four denominators; multiplying by it
    /// gives a Gaussian integer.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::lcm(self.re.denom().clone(), self.im.denom().clone())
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` (sign on the numerator only).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || QsgError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d_str = d.trim();
            if d_str.starts_with('-') || d_str.starts_with('+') {
                return Err(bad());
            }
            let d = BigInt::from_str(d_str).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(QsgError::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::real(BigRational::one())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}*i", format_rational(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(
                        f,
                        "({} - {}*i)",
                        format_rational(&self.re),
                        format_rational(&-&self.im)
                    )
                } else {
                    write!(
                        f,
                        "({} + {}*i)",
                        format_rational(&self.re),
                        format_rational(&self.im)
                    )
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::real(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re + &o.re);
        }
        Scalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re - &o.re);
        }
        Scalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() {
            if o.im.is_zero() {
                return Scalar::real(&self.re * &o.re);
            }
            return Scalar::new(&self.re * &o.re, &self.re * &o.im);
        }
        if o.im.is_zero() {
            return Scalar::new(&self.re * &o.re, &self.im * &o.re);
        }
        Scalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for fallible
/// division.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Field for Scalar {
    fn fzero() -> Self {
        Scalar::zero()
    }
    fn fone() -> Self {
        Scalar::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
}

/// Arithmetic operator selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// `a + b*sqrt(disc)` with `a, b, disc` in `Q(i)`.
///
/// When `b != 0` the discriminant is guaranteed not to be a square in
/// `Q(i)`; values that would need a square discriminant are collapsed to
/// `b = 0` by [`ExtScalar::new`].
#[derive(Clone)]
pub struct ExtScalar {
    a: Scalar,
    b: Scalar,
    disc: Scalar,
}

impl ExtScalar {
    pub fn new(a: Scalar, b: Scalar, disc: Scalar) -> Self {
        if b.is_zero() {
            return ExtScalar {
                a,
                b,
                disc,
            };
        }
        match disc.is_square() {
            Some(r) => ExtScalar {
                a: &a + &(&b * &r),
                b: Scalar::zero(),
                disc,
            },
            None => ExtScalar { a, b, disc },
        }
    }

    pub fn from_scalar(a: Scalar, disc: &Scalar) -> Self {
        ExtScalar {
            a,
            b: Scalar::zero(),
            disc: disc.clone(),
        }
    }

    /// `sqrt(disc)` itself.
    pub fn sqrt_of(disc: &Scalar) -> Self {
        ExtScalar::new(Scalar::zero(), Scalar::one(), disc.clone())
    }

    pub fn rational_part(&self) -> &Scalar {
        &self.a
    }

    pub fn radical_part(&self) -> &Scalar {
        &self.b
    }

    pub fn disc(&self) -> &Scalar {
        &self.disc
    }

    /// The value as a plain scalar, if the radical part vanishes.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn merged_disc(&self, o: &ExtScalar) -> Scalar {
        if !self.b.is_zero() {
            debug_assert!(o.b.is_zero() || o.disc == self.disc, "mixed extensions");
            self.disc.clone()
        } else {
            o.disc.clone()
        }
    }

    pub fn conj(&self) -> Self {
        ExtScalar {
            a: self.a.clone(),
            b: -&self.b,
            disc: self.disc.clone(),
        }
    }
}

impl PartialEq for ExtScalar {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.disc == o.disc)
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.disc)
        }
    }
}

impl Field for ExtScalar {
    // the discriminant of a rational value is irrelevant, so constants
    // carry a zero placeholder
    fn fzero() -> Self {
        ExtScalar::from_scalar(Scalar::zero(), &Scalar::zero())
    }
    fn fone() -> Self {
        ExtScalar::from_scalar(Scalar::one(), &Scalar::zero())
    }
    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        ExtScalar {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            disc: self.merged_disc(o),
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        ExtScalar {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            disc: self.merged_disc(o),
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let disc = self.merged_disc(o);
        let bb = &self.b * &o.b;
        ExtScalar {
            a: &(&self.a * &o.a) + &(&bb * &disc),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
            disc,
        }
    }
    fn neg_ref(&self) -> Self {
        ExtScalar {
            a: -&self.a,
            b: -&self.b,
            disc: self.disc.clone(),
        }
    }
    fn inv_ref(&self) -> Self {
        // (a + b s)^-1 = (a - b s) / (a^2 - b^2 d)
        let n = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.disc);
        let ni = n.inv().expect("inverse of zero");
        ExtScalar {
            a: &self.a * &ni,
            b: -&(&self.b * &ni),
            disc: self.disc.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn conjugate_product_is_norm() {
        let a = Scalar::new(ratio(1, 2), ratio(1, 1));
        let b = a.conj();
        assert_eq!(scalar_arith(&a, &b, ArithOp::Mul).unwrap(), q(5, 4));
    }

    #[test]
    fn additive_identity_and_reduction() {
        let a = Scalar::new(ratio(-7, 3), ratio(2, 9));
        assert_eq!(scalar_arith(&a, &Scalar::zero(), ArithOp::Add).unwrap(), a);
        let h = scalar_arith(&q(3, 6), &Scalar::zero(), ArithOp::Add).unwrap();
        assert_eq!(h.re().numer(), &BigInt::from(1));
        assert_eq!(h.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = scalar_arith(&q(1, 1), &Scalar::zero(), ArithOp::Div);
        assert!(matches!(r, Err(QsgError::DivisionByZero)));
    }

    #[test]
    fn squares() {
        assert_eq!(q(4, 1).is_square(), Some(q(2, 1)));
        assert_eq!(q(-1, 1).is_square(), Some(Scalar::i()));
        assert_eq!(q(2, 1).is_square(), None);
        // 2i = (1+i)^2
        assert_eq!(
            Scalar::gaussian(0, 2).is_square(),
            Some(Scalar::gaussian(1, 1))
        );
        assert_eq!(q(9, 4).is_square(), Some(q(3, 2)));
        assert_eq!(Scalar::gaussian(3, 4).is_square(), Some(Scalar::gaussian(2, 1)));
        assert_eq!(Scalar::gaussian(1, 1).is_square(), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), ratio(5, 1));
        assert!(parse_rational("3/-4").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn extension_collapses_square_discriminant() {
        let e = ExtScalar::new(q(1, 1), q(1, 1), q(4, 1));
        assert_eq!(e.as_scalar(), Some(&q(3, 1)));
        let s = ExtScalar::sqrt_of(&q(2, 1));
        assert!(s.as_scalar().is_none());
        let sq = s.mul_ref(&s);
        assert_eq!(sq.as_scalar(), Some(&q(2, 1)));
        let inv = s.inv_ref();
        assert_eq!(inv.mul_ref(&s), ExtScalar::fone());
    }
}
