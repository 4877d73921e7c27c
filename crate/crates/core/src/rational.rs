//! Exact rationals and their `"p/q"` text form.
//!
//! Values are arbitrary precision but stored as a reduced `i64` pair whenever
//! they fit, falling back to `BigRational` otherwise. Almost every coordinate
//! that occurs in practice is small, and the fast path avoids a heap
//! allocation per operation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

// Invariant: `Small` whenever the reduced value fits, with `d > 0` and
// `n != i64::MIN`, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { n: i64, d: i64 },
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { n: 0, d: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { n: 1, d: 1 })
    }

    /// Reduces `n/d` computed in `i128`.
    fn from_i128(n: i128, d: i128) -> Self {
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN && d != i64::MIN => Rational::from_i64(n, d),
            _ => Rational::from_wide(n, d),
        }
    }

    fn from_i64(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        if d == 1 {
            return Rational(Repr::Small { n, d });
        }
        let g = n.unsigned_abs().gcd(&(d as u64)) as i64;
        Rational(Repr::Small { n: n / g, d: d / g })
    }

    fn from_wide(n: i128, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = n.gcd(&d);
        Rational::from_big(BigRational::new_raw((n / g).into(), (d / g).into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small { n, d }),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { n, d } => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { n, .. } => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { d, .. } => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { d, .. } => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { n: 0, .. })
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { n, .. } => *n > 0,
            Repr::Big(r) => r.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { n, .. } => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn pow(&self, e: i32) -> Rational {
        Rational::from_big(num_traits::Pow::pow(self.to_big(), e))
    }

    fn binary(
        &self,
        other: &Rational,
        small: impl FnOnce(i128, i128, i128, i128) -> Rational,
        big: impl FnOnce(BigRational, BigRational) -> BigRational,
    ) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small { n: a, d: b }, Repr::Small { n: c, d: e }) => {
                small(*a as i128, *b as i128, *c as i128, *e as i128)
            }
            _ => Rational::from_big(big(self.to_big(), other.to_big())),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_i128(n as i128, 1)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { n: a, d: b }, Repr::Small { n: c, d: e }) => {
                (*a as i128 * *e as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { n, d } => Rational(Repr::Small { n: -n, d: *d }),
            Repr::Big(r) => Rational::from_big(-r),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        -&self
    }
}

/// `a/b ± c/d`. With one denominator equal to 1 the result is already in
/// lowest terms.
fn add_sub(x: &Rational, y: &Rational, sign: i128) -> Rational {
    x.binary(
        y,
        |a, b, c, d| {
            let c = sign * c;
            if d == 1 || b == 1 {
                match (i64::try_from(a * d + c * b), i64::try_from(b * d)) {
                    (Ok(n), Ok(d)) if n != i64::MIN => return Rational(Repr::Small { n, d }),
                    _ => {}
                }
            }
            match b == d {
                true => Rational::from_i128(a + c, b),
                false => Rational::from_i128(a * d + c * b, b * d),
            }
        },
        |p, q| if sign > 0 { p + q } else { p - q },
    )
}

fn add(x: &Rational, y: &Rational) -> Rational {
    add_sub(x, y, 1)
}

fn sub(x: &Rational, y: &Rational) -> Rational {
    add_sub(x, y, -1)
}

fn mul(x: &Rational, y: &Rational) -> Rational {
    x.binary(y, |a, b, c, d| Rational::from_i128(a * c, b * d), |p, q| p * q)
}

fn div(x: &Rational, y: &Rational) -> Rational {
    assert!(!y.is_zero(), "division by zero");
    x.binary(y, |a, b, c, d| Rational::from_i128(a * d, b * c), |p, q| p / q)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $f(self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $f(self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $f(&self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $f(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { n, d: 1 } => write!(f, "{n}"),
            Repr::Small { n, d } => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_i128(n as i128, d as i128)
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"` or `"p"`; `p` may carry a sign, `q` must be positive.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::input(format!("invalid rational '{text}'"));
    let digits = |s: &str, signed: bool| {
        let body = if signed {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (text, None),
    };
    if !digits(p, true) {
        return Err(bad());
    }
    let numer: BigInt = p.parse().map_err(|_| bad())?;
    let denom: BigInt = match q {
        Some(q) if digits(q, false) => q.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::input(format!("zero denominator in '{text}'")));
    }
    Ok(Rational::from_big(BigRational::new(numer, denom)))
}
