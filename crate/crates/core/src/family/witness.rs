//! Node sequences and explicit independent subfamilies.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Family;
use crate::algebra::{Rational, Scalar};
use crate::error::{Error, Result};

/// A maximal run `min..=max` of exponents present at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddSequenceRecord {
    pub node: Scalar,
    pub min: u32,
    pub max: u32,
    pub parity: u32,
}

impl OddSequenceRecord {
    pub fn len(&self) -> u32 {
        self.max - self.min + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_odd(&self) -> bool {
        self.parity == 1
    }
}

/// Every maximal node sequence, stably sorted by `min` (nodes in order of
/// first appearance, runs ascending within a node).
pub fn sequences(f: &Family) -> Vec<OddSequenceRecord> {
    let mut nodes: Vec<(&Scalar, Vec<u32>)> = Vec::new();
    for t in f.terms() {
        match nodes.iter_mut().find(|(a, _)| *a == &t.shift) {
            Some((_, es)) => es.push(t.exponent),
            None => nodes.push((&t.shift, vec![t.exponent])),
        }
    }
    let mut out = Vec::new();
    for (node, mut es) in nodes {
        es.sort_unstable();
        let mut start = es[0];
        for w in 0..es.len() {
            let last = w + 1 == es.len() || es[w + 1] != es[w] + 1;
            if last {
                let (min, max) = (start, es[w]);
                out.push(OddSequenceRecord { node: node.clone(), min, max, parity: (max - min + 1) % 2 });
                if w + 1 < es.len() {
                    start = es[w + 1];
                }
            }
        }
    }
    out.sort_by_key(|r| r.min);
    out
}

/// The maximal node sequences of odd length, stably sorted by `min`.
pub fn odd_sequences(f: &Family) -> Vec<OddSequenceRecord> {
    sequences(f).into_iter().filter(OddSequenceRecord::is_odd).collect()
}

/// Pólya condition plus: every odd sequence contains the top exponent `d`.
/// Over the reals this forces independence.
pub fn atkinson_sharma_condition(f: &Family) -> bool {
    let d = f.max_exponent();
    f.satisfies_polya() && odd_sequences(f).iter().all(|o| o.max == d)
}

fn require_polya(f: &Family) -> Result<()> {
    if f.satisfies_polya() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("exponents {} violate the Pólya condition", f.polya_sequence())))
    }
}

fn verified(f: &Family, mut keep: Vec<usize>) -> Result<Family> {
    keep.sort_unstable();
    let g = f.subfamily(&keep)?;
    if g.is_independent() {
        Ok(g)
    } else {
        Err(Error::VerificationFailed(format!("witness {g} is dependent")))
    }
}

/// Independent subfamily of size at least `⌊s/2⌋ + 1` for rational shifts.
pub fn real_halfplus_witness(f: &Family) -> Result<Family> {
    f.require_rational()?;
    require_polya(f)?;
    verified(f, halfplus_indices(f, (0..f.len()).collect()))
}

fn halfplus_indices(f: &Family, idx: Vec<usize>) -> Vec<usize> {
    let sub = f.subfamily(&idx).expect("nonempty index set");
    let d = sub.max_exponent();
    let top: Vec<usize> = (0..idx.len()).filter(|&i| sub.terms()[i].exponent == d).collect();
    if top.len() == 1 {
        if idx.len() == 1 {
            return idx;
        }
        let rest: Vec<usize> = idx.iter().enumerate().filter(|&(i, _)| i != top[0]).map(|(_, &j)| j).collect();
        let mut kept = halfplus_indices(f, rest);
        kept.push(idx[top[0]]);
        return kept;
    }
    let short: Vec<OddSequenceRecord> = odd_sequences(&sub).into_iter().filter(|o| o.max < d).collect();
    let drop = short.len().div_ceil(2);
    let removed: Vec<usize> = short[..drop]
        .iter()
        .map(|o| {
            (0..idx.len())
                .find(|&i| sub.terms()[i].shift == o.node && sub.terms()[i].exponent == o.min)
                .expect("sequence minimum is a member")
        })
        .collect();
    (0..idx.len()).filter(|i| !removed.contains(i)).map(|i| idx[i]).collect()
}

/// Independent subfamily of size at least `⌈√s⌉` over any field.
pub fn sqrt_witness(f: &Family) -> Result<Family> {
    require_polya(f)?;
    let mut classes: Vec<(u32, Vec<usize>)> = Vec::new();
    for (i, t) in f.terms().iter().enumerate() {
        match classes.iter_mut().find(|(e, _)| *e == t.exponent) {
            Some((_, c)) => c.push(i),
            None => classes.push((t.exponent, vec![i])),
        }
    }
    let need = ceil_sqrt(f.len());
    let largest = classes.iter().max_by_key(|(_, c)| c.len()).expect("nonempty family");
    let keep = if largest.1.len() >= need {
        largest.1.clone()
    } else {
        classes.iter().map(|(_, c)| c[0]).collect()
    };
    verified(f, keep)
}

pub(crate) fn ceil_sqrt(s: usize) -> usize {
    let mut r = 0;
    while r * r < s {
        r += 1;
    }
    r
}

/// The `⌊(s+4)/3⌋` terms of largest exponent, for rational shifts.
pub fn real_top_exponent_witness(f: &Family) -> Result<Family> {
    f.require_rational()?;
    require_polya(f)?;
    let t = (f.len() + 4) / 3;
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(f.terms()[i].exponent));
    order.truncate(t);
    verified(f, order)
}

/// Which big-exponent sufficient conditions a family meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigExponentReport {
    pub s: usize,
    pub min_exponent: u32,
    /// All `e_i >= max(1, 2s - 4)` and all shifts rational.
    pub real_rule: bool,
    /// All `e_i >= s(s-1)/2`.
    pub complex_rule: bool,
    /// `min(e_i) / s`.
    pub alpha: Rational,
    /// Largest integer `T <= (1 + α - √(α² + 1)) s`.
    pub threshold: u64,
    /// Best dimension lower bound implied by the rules above.
    pub lower_bound: usize,
}

pub fn big_exponent_conditions(f: &Family) -> BigExponentReport {
    let s = f.len();
    let m = f.min_exponent();
    let real_rule = f.has_rational_shifts() && m as usize >= (2 * s).saturating_sub(4).max(1);
    let complex_rule = m as usize >= s * (s - 1) / 2;
    let alpha = Rational::new(BigInt::from(m), BigInt::from(s));
    let threshold = radical_threshold(s as u64, &alpha);
    let lower_bound = if real_rule || complex_rule { s } else { threshold as usize + 1 };
    BigExponentReport { s, min_exponent: m, real_rule, complex_rule, alpha, threshold, lower_bound }
}

/// Largest integer `T >= 0` with `T <= (1 + α - √(α² + 1)) p`, for `α >= 0`,
/// decided with exact rational arithmetic.
pub fn radical_threshold(p: u64, alpha: &Rational) -> u64 {
    assert!(!alpha.is_negative(), "alpha must be nonnegative");
    let p = Rational::from(BigInt::from(p));
    let one = Rational::from(BigInt::from(1));
    let lhs = &p * &p * (alpha * alpha + &one);
    let base = (&one + alpha) * &p;
    let fits = |t: u64| {
        let r = &base - Rational::from(BigInt::from(t));
        !r.is_negative() && lhs <= &r * &r
    };
    let mut t = 0;
    while fits(t + 1) {
        t += 1;
    }
    debug_assert!(fits(0) || alpha.is_zero());
    t
}
