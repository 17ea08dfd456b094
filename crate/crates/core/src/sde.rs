//! Shifted differential equations `∑_{i<=k} P_i f^{(i)} = 0` with
//! `deg P_i <= i + l` for `i < t` and `deg P_i <= l` otherwise.
//!
//! The search reduces to a nullspace computation: every member
//! `(x - a)^e` of a family contributes the identity
//! `∑_i P_i e^(i) (x - a)^{g - i} = 0`, `g = min(e, k)`, after the common
//! factor `(x - a)^{e - g}` is cancelled.

use std::fmt;

use crate::algebra::poly::falling_scalar;
use crate::algebra::{expand_shifted_power, Poly, Scalar};
use crate::error::{Error, Result};
use crate::family::{Family, ShiftedPower};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SdeParams {
    pub t: u32,
    pub k: u32,
    pub l: u32,
}

impl SdeParams {
    pub fn new(t: u32, k: u32, l: u32) -> Self {
        Self { t, k, l }
    }

    /// `t` capped at `k + 1`; larger values add no unknowns.
    pub fn effective_t(&self) -> u32 {
        self.t.min(self.k + 1)
    }

    /// Degree bound on `P_i`.
    pub fn degree_bound(&self, i: u32) -> u32 {
        if i < self.effective_t() {
            i + self.l
        } else {
            self.l
        }
    }

    /// `(k + 1)(l + 1) + t(t - 1)/2` with `t` capped.
    pub fn unknowns(&self) -> u64 {
        let t = self.effective_t() as u64;
        (self.k as u64 + 1) * (self.l as u64 + 1) + t * t.saturating_sub(1) / 2
    }
}

impl fmt::Display for SdeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={}, k={}, l={})", self.t, self.k, self.l)
    }
}

/// Counting condition `s(l + k + 1) < (k + 1)(l + 1) + t(t - 1)/2` under
/// which every family of `s` shifted powers satisfies some nonzero equation.
pub fn feasible(s: usize, p: SdeParams) -> bool {
    (s as u64) * (p.l as u64 + p.k as u64 + 1) < p.unknowns()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sde {
    pub params: SdeParams,
    /// `P_0, …, P_k`; the last entry is nonzero.
    pub coefficients: Vec<Poly>,
}

impl Sde {
    pub fn new(params: SdeParams, coefficients: Vec<Poly>) -> Result<Self> {
        let sde = Self { params, coefficients };
        if sde.coefficients.len() != params.k as usize + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for order {}",
                sde.coefficients.len(),
                params.k
            )));
        }
        if sde.coefficients.last().is_none_or(Poly::is_zero) {
            return Err(Error::Precondition("leading coefficient P_k is zero".into()));
        }
        if !sde.degree_bounds_hold() {
            return Err(Error::Precondition(format!("coefficient degrees exceed the bounds of {params}")));
        }
        Ok(sde)
    }

    pub fn order(&self) -> u32 {
        self.params.k
    }

    pub fn leading(&self) -> &Poly {
        self.coefficients.last().expect("nonempty")
    }

    pub fn degree_bounds_hold(&self) -> bool {
        self.coefficients
            .iter()
            .enumerate()
            .all(|(i, p)| p.degree().is_none_or(|d| d <= self.params.degree_bound(i as u32) as usize))
    }

    /// `∑ P_i f^{(i)}`.
    pub fn apply(&self, f: &Poly) -> Poly {
        self.coefficients
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, p)| &acc + &(p * &f.derivative(i as u32)))
    }
}

impl fmt::Display for Sde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coefficients.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})·f^({i})")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

pub fn verify_sde(e: &Sde, f: &Poly) -> bool {
    e.apply(f).is_zero()
}

fn column_layout(p: SdeParams) -> Vec<(u32, u32)> {
    (0..=p.k).flat_map(|i| (0..=p.degree_bound(i)).map(move |j| (i, j))).collect()
}

/// Linear system in the unknowns `λ_{i,j}` (coefficient of `x^j` in `P_i`),
/// columns ordered by `(i, j)`, rows grouped by family member and then by
/// ascending monomial degree.
pub fn build_system(f: &Family, p: SdeParams) -> Matrix {
    let cols = column_layout(p);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for t in f.terms() {
        let g = t.exponent.min(p.k);
        let pieces: Vec<(Scalar, Poly)> =
            (0..=g).map(|i| (falling_scalar(t.exponent, i), expand_shifted_power(&t.shift, g - i))).collect();
        for m in 0..=(g + p.l) as usize {
            rows.push(
                cols.iter()
                    .map(|&(i, j)| {
                        let j = j as usize;
                        if i > g || j > m {
                            return Scalar::zero();
                        }
                        let (c, q) = &pieces[i as usize];
                        c * &q.coeff(m - j)
                    })
                    .collect(),
            );
        }
    }
    Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(0, cols.len()))
}

fn assemble(p: SdeParams, v: &[Scalar]) -> Option<Sde> {
    let mut coeffs: Vec<Vec<Scalar>> = (0..=p.k).map(|_| Vec::new()).collect();
    for (&(i, _), x) in column_layout(p).iter().zip(v) {
        coeffs[i as usize].push(x.clone());
    }
    let mut polys: Vec<Poly> = coeffs.into_iter().map(Poly::new).collect();
    while polys.last().is_some_and(Poly::is_zero) {
        polys.pop();
    }
    let k = polys.len().checked_sub(1)? as u32;
    Some(Sde { params: SdeParams { k, ..p }, coefficients: polys })
}

/// The equation from the first kernel basis vector, trimmed to its
/// effective order, or `None` when only the zero equation exists.
pub fn find_sde(f: &Family, p: SdeParams) -> Option<Sde> {
    let kernel = build_system(f, p).nullspace();
    kernel.first().and_then(|v| assemble(p, v))
}

/// Parameters `t = s`, `k = l = ⌈(1 + √2/2) s⌉`.
pub fn small_params(s: usize) -> SdeParams {
    let s = s as u64;
    let mut c = 0u64;
    while 2 * c * c < s * s {
        c += 1;
    }
    let k = (s + c) as u32;
    SdeParams::new(s as u32, k, k)
}

pub fn find_small_sde(f: &Family) -> Sde {
    let p = small_params(f.len());
    debug_assert!(feasible(f.len(), p));
    find_sde(f, p).expect("counting condition guarantees a nonzero equation")
}

/// First `(k, l)` in lexicographic order on `(k + l, k)`, with `k >= 1` and
/// `k + l <= max_sum`, that is feasible and yields an equation.
pub fn search(f: &Family, t: u32, max_sum: u32) -> Option<Sde> {
    for sum in 1..=max_sum {
        for k in 1..=sum {
            let p = SdeParams::new(t, k, sum - k);
            if feasible(f.len(), p) {
                if let Some(e) = find_sde(f, p) {
                    return Some(e);
                }
            }
        }
    }
    None
}

fn require_satisfied(e: &Sde, t: &ShiftedPower) -> Result<()> {
    if verify_sde(e, &t.expand()) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{t} does not satisfy the equation")))
    }
}

/// `∏ (x - a_i)` divides `P_k` when every `e_i >= k`.
pub fn check_root_divisibility(e: &Sde, f: &Family) -> Result<bool> {
    for t in f.terms() {
        if t.exponent < e.order() {
            return Err(Error::Precondition(format!("{t} has exponent below the order {}", e.order())));
        }
        require_satisfied(e, t)?;
    }
    let prod = f.terms().iter().fold(Poly::one(), |acc, t| &acc * &Poly::linear_factor(&t.shift));
    Ok(e.leading().divides_by(&prod))
}

/// For `(x - a)^{e_1}, …, (x - a)^{e_n}` with `e_1 > … > e_n >= k - n + 1`
/// and `n <= k`, checks `(x - a)^{n - m} | P_{k - m}` for `m < n`.
pub fn check_multiplicity_ladder(e: &Sde, node: &Scalar, exps: &[u32]) -> Result<bool> {
    let n = exps.len() as u32;
    let k = e.order();
    if exps.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Precondition("exponents must be strictly decreasing".into()));
    }
    if n == 0 || n > k {
        return Err(Error::Precondition(format!("need 1 <= n <= k, got n = {n}, k = {k}")));
    }
    if exps[exps.len() - 1] + n < k + 1 {
        return Err(Error::Precondition(format!("smallest exponent below k - n + 1 = {}", k + 1 - n)));
    }
    for &x in exps {
        require_satisfied(e, &ShiftedPower::new(node.clone(), x))?;
    }
    Ok((0..n).all(|m| {
        e.coefficients[(k - m) as usize].divides_by(&expand_shifted_power(node, n - m))
    }))
}

/// For each term, the largest `j <= e_i` with `P_j != 0`, after checking that
/// `x - a_i` divides `P_j`; also checks `∏ (x - a_i) | ∏_{P_j != 0} P_j`.
pub fn coefficient_root_cover(e: &Sde, f: &Family) -> Result<Vec<usize>> {
    if e.coefficients[0].is_zero() {
        return Err(Error::Precondition("P_0 is zero".into()));
    }
    let support: Vec<usize> = (0..e.coefficients.len()).filter(|&i| !e.coefficients[i].is_zero()).collect();
    let mut cover = Vec::with_capacity(f.len());
    for t in f.terms() {
        require_satisfied(e, t)?;
        let j = *support.iter().rev().find(|&&j| j <= t.exponent as usize).expect("0 is in the support");
        if !e.coefficients[j].divides_by(&Poly::linear_factor(&t.shift)) {
            return Err(Error::VerificationFailed(format!("x - {} does not divide P_{j}", t.shift)));
        }
        cover.push(j);
    }
    let lhs = f.terms().iter().fold(Poly::one(), |acc, t| &acc * &Poly::linear_factor(&t.shift));
    let rhs = support.iter().fold(Poly::one(), |acc, &j| &acc * &e.coefficients[j]);
    if !rhs.divides_by(&lhs) {
        return Err(Error::VerificationFailed("node product does not divide the coefficient product".into()));
    }
    Ok(cover)
}
