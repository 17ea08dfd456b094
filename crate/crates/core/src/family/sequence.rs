//! Exponent sequences and the counting conditions on them.

use std::fmt;

/// A multiset of exponents, stored non-increasing.
///
/// With `d` the largest exponent, `counts()[i-1]` is `n_i = |{j : e_j < i}|`
/// and `mults()[i-1]` is `m_i = |{j : e_j = i-1}|`, both for `i = 1..=d+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyaSequence {
    exps: Vec<u32>,
}

impl PolyaSequence {
    pub fn new(mut exps: Vec<u32>) -> Self {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        Self { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.exps.first().copied()
    }

    /// `n_1, …, n_{d+1}`; the last entry is always `s`.
    pub fn counts(&self) -> Vec<usize> {
        self.mults()
            .iter()
            .scan(0, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .collect()
    }

    /// `m_1, …, m_{d+1}`.
    pub fn mults(&self) -> Vec<usize> {
        let Some(d) = self.max_exponent() else { return Vec::new() };
        let mut m = vec![0; d as usize + 1];
        for &e in &self.exps {
            m[e as usize] += 1;
        }
        m
    }

    /// `n_i <= i` for every `i >= 1`.
    pub fn satisfies_polya(&self) -> bool {
        self.counts().iter().enumerate().all(|(i, &n)| n <= i + 1)
    }

    /// `n_1 <= 1` and `n_j + n_{j+1} <= j + 1` for `j = 1..=d`, the
    /// sufficient condition for real independence.
    pub fn gmk_condition(&self) -> bool {
        let Some(d) = self.max_exponent() else { return true };
        let n = self.counts();
        if n[0] > 1 {
            return false;
        }
        (1..=d as usize).all(|j| n[j - 1] + n[j] <= j + 1)
    }
}

impl From<Vec<u32>> for PolyaSequence {
    fn from(exps: Vec<u32>) -> Self {
        Self::new(exps)
    }
}

impl fmt::Display for PolyaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
