use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclo::{CycloElement, CycloField};
use super::rational::{bit_size, Rational};
use crate::error::{Error, Result};

/// The ambient field of a family or polynomial: `Q` or some `Q(ξ_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Cyclotomic(Arc<CycloField>),
}

impl Field {
    pub fn cyclotomic(k: u32) -> Result<Self> {
        Ok(Field::Cyclotomic(CycloField::new(k)?))
    }

    /// Conductor of the field, `None` for `Q`.
    pub fn conductor(&self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Cyclotomic(f) => Some(f.conductor()),
        }
    }

    /// Whether `x` lies in this field. Rationals lie in every field.
    pub fn contains(&self, x: &Scalar) -> bool {
        match x.conductor() {
            None => true,
            Some(k) => self.conductor() == Some(k),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(c) => write!(f, "Q(ξ{})", c.conductor()),
        }
    }
}

/// An exact field element: a rational, or a non-rational element of a
/// cyclotomic field.
///
/// A rational embeds into every cyclotomic field, so mixed arithmetic with
/// a rational operand always succeeds. Combining two non-rational elements
/// of different cyclotomic fields is a [`Error::FieldMismatch`]; the
/// operator impls panic in that case, the `checked_*` methods return it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Cyclo(CycloElement),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Cyclo(_) => None,
        }
    }

    /// Conductor of the smallest cyclotomic field this element was built in,
    /// `None` for rationals.
    pub fn conductor(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Cyclo(c) => Some(c.field().conductor()),
        }
    }

    /// Total bit size of the coefficients; a cheap measure of complexity.
    pub fn bit_size(&self) -> u64 {
        match self {
            Scalar::Rational(q) => bit_size(q),
            Scalar::Cyclo(c) => c.coeffs().iter().map(bit_size).sum(),
        }
    }

    fn mismatch(a: &CycloElement, b: &CycloElement) -> Result<()> {
        if a.field().conductor() == b.field().conductor() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: a.field().conductor(),
                right: b.field().conductor(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Rational(q), Scalar::Cyclo(c)) | (Scalar::Cyclo(c), Scalar::Rational(q)) => {
                c.add_rational(q)
            }
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => {
                Self::mismatch(a, b)?;
                a.add(b)
            }
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(q), Scalar::Cyclo(c)) | (Scalar::Cyclo(c), Scalar::Rational(q)) => {
                c.scale(q)
            }
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => {
                Self::mismatch(a, b)?;
                a.mul(b)
            }
        })
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Cyclo(c) => Ok(c.inverse()),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
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

    /// Complex value as `(re, im)` in double precision, using `ξ_k = e^{2πi/k}`.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        match self {
            Scalar::Rational(q) => (q.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Cyclo(c) => {
                let k = c.field().conductor() as f64;
                c.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (j, q)| {
                    let v = q.to_f64().unwrap_or(f64::NAN);
                    let theta = 2.0 * std::f64::consts::PI * j as f64 / k;
                    (re + v * theta.cos(), im + v * theta.sin())
                })
            }
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Cyclo(c) => write!(f, "{c}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Cyclo(c) => c.neg(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);
