//! Families of shifted powers `(x - a)^e`: span dimension, independence,
//! Wronskians, dependence relations and independent-subfamily witnesses.

mod sequence;
mod witness;

use std::fmt;

use crate::algebra::{expand_shifted_power, Field, Poly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub use sequence::PolyaSequence;
pub use witness::{
    atkinson_sharma_condition, big_exponent_conditions, odd_sequences, radical_threshold,
    real_halfplus_witness, real_top_exponent_witness, sequences, sqrt_witness, BigExponentReport,
    OddSequenceRecord,
};

/// The polynomial `(x - shift)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedPower {
    pub shift: Scalar,
    pub exponent: u32,
}

impl ShiftedPower {
    pub fn new(shift: impl Into<Scalar>, exponent: u32) -> Self {
        Self { shift: shift.into(), exponent }
    }

    pub fn expand(&self) -> Poly {
        expand_shifted_power(&self.shift, self.exponent)
    }
}

impl fmt::Display for ShiftedPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.is_zero() {
            write!(f, "x^{}", self.exponent)
        } else {
            write!(f, "(x - {})^{}", self.shift, self.exponent)
        }
    }
}

/// An ordered, nonempty list of pairwise-distinct shifted powers over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    field: Field,
    terms: Vec<ShiftedPower>,
}

impl Family {
    pub fn new(field: Field, terms: Vec<ShiftedPower>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for t in &terms {
            if !field.contains(&t.shift) {
                return Err(Error::FieldMismatch {
                    left: field.conductor().unwrap_or(1),
                    right: t.shift.conductor().unwrap_or(1),
                });
            }
        }
        for (i, t) in terms.iter().enumerate() {
            if terms[..i].contains(t) {
                return Err(Error::DuplicateTerm { shift: t.shift.to_string(), exponent: t.exponent });
            }
        }
        Ok(Self { field, terms })
    }

    /// Builds a family, inferring the smallest field that holds every shift.
    pub fn from_terms(terms: Vec<ShiftedPower>) -> Result<Self> {
        let field = infer_field(terms.iter().map(|t| &t.shift))?;
        Self::new(field, terms)
    }

    /// Family over `Q` from integer `(shift, exponent)` pairs.
    pub fn from_int_pairs(pairs: &[(i64, u32)]) -> Result<Self> {
        Self::new(
            Field::Rational,
            pairs.iter().map(|&(a, e)| ShiftedPower::new(Scalar::from_int(a), e)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[ShiftedPower] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.exponent).collect()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.iter().map(|t| t.exponent).max().unwrap_or(0)
    }

    pub fn min_exponent(&self) -> u32 {
        self.terms.iter().map(|t| t.exponent).min().unwrap_or(0)
    }

    pub fn polya_sequence(&self) -> PolyaSequence {
        PolyaSequence::new(self.exponents())
    }

    pub fn satisfies_polya(&self) -> bool {
        self.polya_sequence().satisfies_polya()
    }

    /// Whether every shift is rational (the stand-in for "real" shifts).
    pub fn has_rational_shifts(&self) -> bool {
        self.terms.iter().all(|t| t.shift.as_rational().is_some())
    }

    pub(crate) fn require_rational(&self) -> Result<()> {
        match self.terms.iter().find(|t| t.shift.as_rational().is_none()) {
            Some(t) => Err(Error::NonRationalShift(t.shift.to_string())),
            None => Ok(()),
        }
    }

    pub fn shifts_as_rationals(&self) -> Option<Vec<Rational>> {
        self.terms.iter().map(|t| t.shift.as_rational().cloned()).collect()
    }

    /// The subfamily at the given indices, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<Family> {
        Family::new(self.field.clone(), indices.iter().map(|&i| self.terms[i].clone()).collect())
    }

    /// Replaces every shift `a` by `a + c`.
    pub fn translate(&self, c: &Scalar) -> Result<Family> {
        let terms = self
            .terms
            .iter()
            .map(|t| ShiftedPower { shift: &t.shift + c, exponent: t.exponent })
            .collect();
        let hint = match &self.field {
            Field::Rational => None,
            Field::Cyclotomic(f) => Some(f.generator()),
        };
        Family::new(infer_field(hint.iter().chain([c]))?, terms)
    }

    pub fn expansions(&self) -> Vec<Poly> {
        self.terms.iter().map(ShiftedPower::expand).collect()
    }

    /// `s × (d + 1)` matrix whose row `r` holds the coefficients of term `r`.
    pub fn coefficient_matrix(&self) -> Matrix {
        let width = self.max_exponent() as usize + 1;
        let polys = self.expansions();
        Matrix::from_fn(self.len(), width, |i, j| polys[i].coeff(j))
    }

    /// Dimension of the span of the family.
    pub fn dimension(&self) -> usize {
        self.coefficient_matrix().rank()
    }

    pub fn is_independent(&self) -> bool {
        self.dimension() == self.len()
    }

    /// Basis of the linear relations `∑ α_i (x - a_i)^{e_i} = 0`, i.e. of the
    /// left kernel of the coefficient matrix. Empty exactly when independent.
    pub fn dependence_coefficients(&self) -> Vec<Vec<Scalar>> {
        self.coefficient_matrix().transpose().nullspace()
    }

    /// Determinant of `(f_j^{(i)})_{0 <= i, j < s}`, computed by fraction-free
    /// elimination over the polynomial ring.
    pub fn wronskian(&self) -> Poly {
        let s = self.len();
        let base = self.expansions();
        let mut w: Vec<Vec<Poly>> =
            (0..s).map(|i| base.iter().map(|f| f.derivative(i as u32)).collect()).collect();
        let mut prev = Poly::one();
        let mut negate = false;
        for k in 0..s {
            let Some(p) = (k..s).find(|&i| !w[i][k].is_zero()) else {
                return Poly::zero();
            };
            if p != k {
                w.swap(p, k);
                negate = !negate;
            }
            if k + 1 == s {
                break;
            }
            for i in k + 1..s {
                for j in k + 1..s {
                    let num = &(&w[k][k] * &w[i][j]) - &(&w[i][k] * &w[k][j]);
                    w[i][j] = num.exact_divide(&prev).expect("Bareiss division is exact");
                }
                w[i][k] = Poly::zero();
            }
            prev = w[k][k].clone();
        }
        let det = w[s - 1][s - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Greedy left-to-right scan keeping each term that raises the rank.
    pub fn max_independent_subfamily(&self) -> Family {
        let polys = self.expansions();
        let width = self.max_exponent() as usize + 1;
        let mut kept: Vec<usize> = Vec::new();
        for i in 0..self.len() {
            let mut candidate = kept.clone();
            candidate.push(i);
            let m = Matrix::from_fn(candidate.len(), width, |r, j| polys[candidate[r]].coeff(j));
            if m.rank() == candidate.len() {
                kept = candidate;
            }
        }
        self.subfamily(&kept).expect("subfamily of a valid family")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// Smallest field containing all the given scalars.
pub fn infer_field<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Result<Field> {
    let mut field = Field::Rational;
    for x in xs {
        if let Scalar::Cyclo(c) = x {
            match &field {
                Field::Rational => field = Field::Cyclotomic(c.field().clone()),
                Field::Cyclotomic(f) if f.conductor() == c.field().conductor() => {}
                Field::Cyclotomic(f) => {
                    return Err(Error::FieldMismatch { left: f.conductor(), right: c.field().conductor() })
                }
            }
        }
    }
    Ok(field)
}

/// Checks `∑ (d + 1 - e_i) <= d + 1` for towers `{(x-a_i)^{e_i}, …, (x-a_i)^d}`.
pub fn jordan_condition(d: u32, towers: &[(Scalar, u32)]) -> bool {
    towers.iter().map(|(_, e)| (d + 1).saturating_sub(*e) as u64).sum::<u64>() <= d as u64 + 1
}

/// The union of towers `{(x-a_i)^{e_i}, (x-a_i)^{e_i+1}, …, (x-a_i)^d}`.
pub fn jordan_family(d: u32, towers: &[(Scalar, u32)]) -> Result<Family> {
    for (i, (a, e)) in towers.iter().enumerate() {
        if towers[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DuplicateNode(a.to_string()));
        }
        if *e < 1 || *e > d {
            return Err(Error::Precondition(format!("tower exponent {e} outside 1..={d}")));
        }
    }
    let terms = towers
        .iter()
        .flat_map(|(a, e)| (*e..=d).map(move |k| ShiftedPower::new(a.clone(), k)))
        .collect();
    Family::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CycloField;

    fn fam(p: &[(i64, u32)]) -> Family {
        Family::from_int_pairs(p).unwrap()
    }

    #[test]
    fn construction_rejects_duplicates_and_empty() {
        assert!(matches!(Family::from_int_pairs(&[(1, 2), (1, 2)]), Err(Error::DuplicateTerm { .. })));
        assert_eq!(Family::from_int_pairs(&[]), Err(Error::EmptyFamily));
        let i = CycloField::new(4).unwrap().generator();
        let bad = Family::new(Field::Rational, vec![ShiftedPower::new(i, 2)]);
        assert!(matches!(bad, Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn classic_dependence() {
        let f = fam(&[(-1, 2), (1, 2), (0, 1)]);
        assert_eq!(f.dimension(), 2);
        assert!(!f.is_independent());
        assert!(f.wronskian().is_zero());
        let k = f.dependence_coefficients();
        assert_eq!(k, vec![vec![Scalar::from_int(1), Scalar::from_int(-1), Scalar::from_int(-4)]]);
        assert_eq!(f.max_independent_subfamily(), fam(&[(-1, 2), (1, 2)]));
    }

    #[test]
    fn equal_exponent_basis() {
        let f = fam(&[(0, 3), (1, 3), (2, 3), (-5, 3)]);
        assert_eq!(f.dimension(), 4);
        assert_eq!(f.max_independent_subfamily(), f);
        assert_eq!(fam(&[(7, 0)]).dimension(), 1);
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(fam(&[(0, 1), (0, 2)]).wronskian(), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(fam(&[(0, 0)]).wronskian(), Poly::one());
        assert!(!fam(&[(0, 3), (1, 3), (2, 3)]).wronskian().is_zero());
    }

    #[test]
    fn jordan_examples() {
        let z = Scalar::zero;
        let one = Scalar::one;
        let f = jordan_family(3, &[(z(), 2), (one(), 2)]).unwrap();
        assert_eq!(f, fam(&[(0, 2), (0, 3), (1, 2), (1, 3)]));
        assert!(jordan_condition(3, &[(z(), 2), (one(), 2)]));
        assert_eq!(f.dimension(), 4);
        assert!(!jordan_condition(2, &[(z(), 1), (one(), 1), (Scalar::from_int(2), 1)]));
        let tower = jordan_family(5, &[(z(), 1)]).unwrap();
        assert_eq!(tower.len(), 5);
        assert!(jordan_condition(5, &[(z(), 1)]));
        assert!(matches!(jordan_family(3, &[(z(), 2), (z(), 3)]), Err(Error::DuplicateNode(_))));
        assert!(matches!(jordan_family(3, &[(z(), 0)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn cyclotomic_family_dimension() {
        let f = CycloField::new(3).unwrap();
        let w = f.generator();
        let terms = (0..3).map(|j| ShiftedPower::new(w.pow(j), 2)).collect();
        let fam = Family::new(Field::Cyclotomic(f), terms).unwrap();
        assert_eq!(fam.dimension(), 3);
    }
}
