//! Cyclotomic number fields `Q(ξ_k)`.
//!
//! Elements are stored as residue classes modulo the k-th cyclotomic
//! polynomial `Φ_k`, so two elements are equal exactly when their
//! coefficient vectors are equal.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The k-th cyclotomic polynomial, computed as
/// `(x^k - 1) / ∏_{d | k, d < k} Φ_d` with exact division.
pub fn cyclotomic_polynomial(k: u32) -> Poly {
    assert!(k >= 1, "cyclotomic polynomial needs k >= 1");
    let mut numerator = Poly::monomial(Scalar::one(), k as usize) - Poly::one();
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        numerator = numerator
            .exact_divide(&cyclotomic_polynomial(d))
            .expect("cyclotomic polynomials divide x^k - 1");
    }
    numerator
}

/// The field `Q(ξ_k)` for a primitive k-th root of unity `ξ_k`.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    /// Monic `Φ_k`, low-to-high, length `degree + 1`.
    modulus: Vec<Rational>,
}

impl CycloField {
    pub fn new(k: u32) -> Result<Arc<Self>> {
        if k == 0 {
            return Err(Error::Domain("cyclotomic conductor must be >= 1".into()));
        }
        let modulus = cyclotomic_polynomial(k)
            .coeffs()
            .iter()
            .map(|c| c.as_rational().expect("Φ_k has rational coefficients").clone())
            .collect();
        Ok(Arc::new(Self { conductor: k, modulus }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `[Q(ξ_k) : Q] = φ(k)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> Poly {
        Poly::new(self.modulus.iter().cloned().map(Scalar::Rational).collect())
    }

    /// The canonical generator `ξ_k`.
    pub fn generator(self: &Arc<Self>) -> Scalar {
        let mut coeffs = vec![Rational::zero(); self.degree().max(2)];
        coeffs[1] = Rational::one();
        self.element(coeffs)
    }

    /// `ξ_k^j` for any integer `j`.
    pub fn root_power(self: &Arc<Self>, j: i64) -> Scalar {
        let k = self.conductor as i64;
        let e = j.rem_euclid(k) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        self.element(coeffs)
    }

    /// Builds `∑ coeffs[j] ξ^j`, reducing modulo `Φ_k`. Any length is accepted.
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> Scalar {
        let reduced = self.reduce(coeffs);
        CycloElement::canonical(self.clone(), reduced)
    }

    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        while coeffs.len() > n {
            let top = coeffs.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - n;
            for (j, m) in self.modulus[..n].iter().enumerate() {
                if !m.is_zero() {
                    coeffs[shift + j] -= &top * m;
                }
            }
        }
        coeffs.resize(n, Rational::zero());
        coeffs
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CycloField {}

/// A non-rational element of `Q(ξ_k)`.
///
/// Elements that happen to be rational are always demoted to
/// [`Scalar::Rational`], which keeps equality and hashing structural.
#[derive(Clone, Debug)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub(crate) fn canonical(field: Arc<CycloField>, coeffs: Vec<Rational>) -> Scalar {
        debug_assert_eq!(coeffs.len(), field.degree());
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            Scalar::Rational(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            Scalar::Cyclo(CycloElement { field, coeffs })
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Coefficients in the power basis `1, ξ, …, ξ^{φ(k)-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub(crate) fn add(&self, other: &Self) -> Scalar {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self::canonical(self.field.clone(), coeffs)
    }

    pub(crate) fn add_rational(&self, q: &Rational) -> Scalar {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += q;
        Self::canonical(self.field.clone(), coeffs)
    }

    pub(crate) fn neg(&self) -> Scalar {
        Scalar::Cyclo(CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        })
    }

    pub(crate) fn scale(&self, q: &Rational) -> Scalar {
        let coeffs = self.coeffs.iter().map(|c| c * q).collect();
        Self::canonical(self.field.clone(), coeffs)
    }

    pub(crate) fn mul(&self, other: &Self) -> Scalar {
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        self.field.element(prod)
    }

    /// Inverse via the extended Euclidean algorithm against `Φ_k`.
    pub(crate) fn inverse(&self) -> Scalar {
        let (g, u) = ext_gcd_left(&self.coeffs, &self.field.modulus);
        // Φ_k is irreducible and the element is nonzero, so g is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        self.field.element(u.into_iter().map(|c| c * &inv_g).collect())
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl Hash for CycloElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "ξ{}", self.field.conductor)?,
                _ if c.is_one() => write!(f, "ξ{}^{j}", self.field.conductor)?,
                1 => write!(f, "({c})ξ{}", self.field.conductor)?,
                _ => write!(f, "({c})ξ{}^{j}", self.field.conductor)?,
            }
        }
        Ok(())
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().expect("nonempty") * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns `(g, u)` with `u·a ≡ g (mod m)` and `g = gcd(a, m)`.
fn ext_gcd_left(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut u0: Vec<Rational> = Vec::new();
    let mut u1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let u = sub(&u0, &mul(&q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}
