use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::{binomial, falling_factorial, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// There are never trailing zeros, so the zero polynomial has an empty
/// coefficient list and [`Poly::degree`] returns `None` for it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^n`.
    pub fn monomial(c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); n];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_factor(a: &Scalar) -> Self {
        Self::new(vec![-a, Scalar::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(Scalar::Rational).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inverse().expect("leading coefficient is nonzero")),
        }
    }

    /// i-th formal derivative.
    pub fn derivative(&self, i: u32) -> Self {
        let i = i as usize;
        if i >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = self.coeffs[i..]
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let ff = falling_factorial((j + i) as i64, i as u32);
                c * &Scalar::Rational(Rational::from_integer(ff))
            })
            .collect();
        Self::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `f(x + c)`.
    pub fn translate(&self, c: &Scalar) -> Self {
        let shift = Self::new(vec![c.clone(), Scalar::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &shift) + &Self::constant(a.clone()))
    }

    /// Euclidean division; fails with [`Error::DivisionByZero`] for a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inverse()?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = &rem[top] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = &rem[shift + j] - &(&c * d);
            }
            quot[shift] = c;
        }
        rem.truncate(db);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Whether `divisor` divides `self` exactly.
    pub fn divides_by(&self, divisor: &Poly) -> bool {
        matches!(self.div_rem(divisor), Ok((_, r)) if r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = std::mem::replace(&mut b, r);
        }
        a.make_monic()
    }

    /// Whether the polynomial has no repeated root, i.e. `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative(1)).degree() == Some(0)
    }
}

/// Dense expansion of `(x - a)^e` via the binomial theorem.
pub fn expand_shifted_power(a: &Scalar, e: u32) -> Poly {
    let minus_a = -a;
    let mut power = Scalar::one();
    let mut coeffs = vec![Scalar::zero(); e as usize + 1];
    // coefficient of x^j is C(e, j) (-a)^(e-j); fill from j = e downwards
    for j in (0..=e).rev() {
        let b = Scalar::Rational(Rational::from_integer(binomial(e as u64, j as u64)));
        coeffs[j as usize] = &b * &power;
        power = &power * &minus_a;
    }
    Poly::new(coeffs)
}

/// Falling factorial as a scalar.
pub(crate) fn falling_scalar(x: u32, i: u32) -> Scalar {
    Scalar::Rational(Rational::from_integer(falling_factorial(x as i64, i)))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = match c {
                Scalar::Rational(_) => format!("{c}"),
                Scalar::Cyclo(_) => format!("({c})"),
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{coef}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
