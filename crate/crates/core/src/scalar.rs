//! Exact arithmetic in the quadratic field Q(sqrt 2).
//!
//! Every coefficient handled by the engine lives here: specialised parameter
//! values (n, delta, q, ...) are rationals, and the oscillator and
//! super-metaplectic families additionally need exact powers of 1/sqrt 2.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Always `"p/q"`, including integers (`"3/1"`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer value of `r`, if it is one and fits in an `i64`.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// `q^k` for an integer exponent. Fails on `0^k` with `k < 0`.
pub fn rational_pow(q: &Rational, k: i64) -> Result<Rational> {
    if k < 0 {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(num_traits::pow(q.recip(), k.unsigned_abs() as usize));
    }
    Ok(num_traits::pow(q.clone(), k as usize))
}

/// Exact square root of a non-negative rational, when it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Element `rat + irr * sqrt(2)` of Q(sqrt 2).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    pub rat: Rational,
    pub irr: Rational,
}

impl Scalar {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        Scalar { rat, irr }
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { rat: r, irr: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn sqrt2() -> Self {
        Scalar { rat: Rational::zero(), irr: Rational::one() }
    }

    /// 1/sqrt(2) = sqrt(2)/2.
    pub fn inv_sqrt2() -> Self {
        Scalar { rat: Rational::zero(), irr: rat(1, 2) }
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Algebraic conjugate `rat - irr * sqrt(2)`.
    pub fn conjugate(&self) -> Self {
        Scalar { rat: self.rat.clone(), irr: -self.irr.clone() }
    }

    /// Field norm `rat^2 - 2 irr^2`; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - int(2) * &self.irr * &self.irr
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar { rat: &self.rat / &n, irr: -(&self.irr / &n) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Floating point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN) + self.irr.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { rat: &self.rat + &o.rat, irr: &self.irr + &o.irr }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { rat: &self.rat - &o.rat, irr: &self.irr - &o.irr }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
        if self.irr.is_zero() && o.irr.is_zero() {
            return Scalar::from_rational(&self.rat * &o.rat);
        }
        Scalar { rat: &self.rat * &o.rat + int(2) * &self.irr * &o.irr, irr: &self.rat * &o.irr + &self.irr * &o.rat }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: -self.rat.clone(), irr: -self.irr.clone() }
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

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for the fallible form.
impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        self.checked_div(&o).expect("division by zero")
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.rat += &o.rat;
        self.irr += &o.irr;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.rat -= &o.rat;
        self.irr -= &o.irr;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt2", self.irr),
            (false, false) => {
                if self.irr.is_negative() {
                    write!(f, "({} - {}*sqrt2)", self.rat, -self.irr.clone())
                } else {
                    write!(f, "({} + {}*sqrt2)", self.rat, self.irr)
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    r: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    s2: Option<String>,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { r: format_rational(&self.rat), s2: (!self.irr.is_zero()).then(|| format_rational(&self.irr)) }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let rat = parse_rational(&repr.r).map_err(D::Error::custom)?;
        let irr = match repr.s2 {
            Some(s) => parse_rational(&s).map_err(D::Error::custom)?,
            None => Rational::zero(),
        };
        Ok(Scalar { rat, irr })
    }
}
