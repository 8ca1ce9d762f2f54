//! Coefficient fields: exact rationals, exact complex rationals and
//! double-precision complex numbers.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational; always normalized (lowest terms, positive denominator).
pub type Rational = BigRational;

/// Complex number with exact rational parts, used to evaluate exact data at
/// floating points without rounding.
pub type ExactComplex = Complex<Rational>;

/// The exact value of a double-precision complex number.
pub fn exact_complex(z: Complex64) -> ExactComplex {
    let part = |v: f64| Rational::from_float(v).unwrap_or_else(Rational::zero);
    Complex::new(part(z.re), part(z.im))
}

/// Complex coefficients below this magnitude are treated as zero when
/// canonicalizing polynomials.
pub const COMPLEX_ZERO_TOL: f64 = 1e-12;

/// A field usable as polynomial coefficient.
///
/// Implemented for [`Rational`] and [`ExactComplex`] (exact) and
/// [`Complex64`] (floating). Kinds never mix inside one polynomial because
/// every container is generic over a single `Coeff` type.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + super::matrix::RingElem
    + 'static
{
    /// True if the value should be dropped from a canonical term map.
    fn is_negligible(&self) -> bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Magnitude as a float (used for scaling and residuals).
    fn magnitude(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Text form of a coefficient: `p/q` for rationals, `(a+bi)` for complex.
    fn fmt_coeff(&self) -> String;

    /// Parses one coefficient atom as written by [`Coeff::fmt_coeff`]; plain
    /// integers are accepted by both kinds.
    fn parse_coeff(text: &str) -> Option<Self>;

    /// Splits off a printable sign: `(true, |x|)` for negative rationals.
    fn split_sign(&self) -> (bool, Self);

    /// True for exact scalar kinds.
    const EXACT: bool;
}

impl Coeff for Rational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn fmt_coeff(&self) -> String {
        self.to_string()
    }

    fn parse_coeff(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn split_sign(&self) -> (bool, Self) {
        (self.is_negative(), self.abs())
    }

    const EXACT: bool = true;
}

impl Coeff for Complex64 {
    fn is_negligible(&self) -> bool {
        self.norm() < COMPLEX_ZERO_TOL
    }

    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn fmt_coeff(&self) -> String {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("({}{}{}i)", self.re, sign, self.im.abs())
    }

    fn parse_coeff(text: &str) -> Option<Self> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let body = inner.strip_suffix('i')?;
            // split at the sign that separates re and im (not an exponent sign)
            let bytes = body.as_bytes();
            let split = (1..bytes.len()).rev().find(|&k| {
                (bytes[k] == b'+' || bytes[k] == b'-')
                    && !matches!(bytes[k - 1], b'e' | b'E')
            })?;
            let re: f64 = body[..split].parse().ok()?;
            let im: f64 = body[split..].trim_start_matches('+').parse().ok()?;
            Some(Complex64::new(re, im))
        } else {
            t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
        }
    }

    fn split_sign(&self) -> (bool, Self) {
        (false, *self)
    }

    const EXACT: bool = false;
}

impl Coeff for ExactComplex {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_i64(v))
    }

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn fmt_coeff(&self) -> String {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("({}{}{}i)", self.re, sign, self.im.abs())
    }

    fn parse_coeff(text: &str) -> Option<Self> {
        let t = text.trim();
        let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) else {
            return parse_rational(t).map(|q| Self::from_rational(&q));
        };
        let body = inner.strip_suffix('i')?;
        let split = body.rfind(['+', '-']).filter(|&k| k > 0)?;
        let re = parse_rational(&body[..split])?;
        let im = parse_rational(body[split..].trim_start_matches('+'))?;
        Some(Complex::new(re, im))
    }

    fn split_sign(&self) -> (bool, Self) {
        (false, self.clone())
    }

    const EXACT: bool = true;
}

/// Parses `p`, `p/q`, or a finite decimal such as `-1.25` or `3e-2` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Some(Rational::from_integer(n));
    }
    parse_decimal(t)
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = Rational::from_integer(all);
    if scale >= 0 {
        q *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -q } else { q })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
