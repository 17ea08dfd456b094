//! Explicit families with exact certificates, and a reproducible search
//! for small counterexamples to the two open independence questions.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{binomial, CycloField, Field, Poly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::family::{infer_field, Family, ShiftedPower};

/// `∑ coefficients_i · term_i = target`, checked exactly on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceCertificate {
    family: Family,
    coefficients: Vec<Scalar>,
    target: Poly,
}

impl DependenceCertificate {
    pub fn new(family: Family, coefficients: Vec<Scalar>, target: Poly) -> Result<Self> {
        let c = Self { family, coefficients, target };
        c.verify()?;
        Ok(c)
    }

    /// A relation with zero right-hand side from a kernel vector.
    pub fn from_relation(family: Family, coefficients: Vec<Scalar>) -> Result<Self> {
        Self::new(family, coefficients, Poly::zero())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn target(&self) -> &Poly {
        &self.target
    }

    pub fn lhs(&self) -> Poly {
        self.family
            .terms()
            .iter()
            .zip(&self.coefficients)
            .fold(Poly::zero(), |acc, (t, c)| &acc + &t.expand().scale(c))
    }

    pub fn verify(&self) -> Result<()> {
        if self.coefficients.len() != self.family.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} terms",
                self.coefficients.len(),
                self.family.len()
            )));
        }
        if self.lhs() != self.target {
            return Err(Error::VerificationFailed("weighted sum differs from the target".into()));
        }
        Ok(())
    }
}

impl fmt::Display for DependenceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, c)) in self.family.terms().iter().zip(&self.coefficients).enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{t}")?;
        }
        write!(f, " = {}", self.target)
    }
}

fn require_k(k: u32, mu: &Rational) -> Result<Field> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if k > 1 && mu == &Rational::from_integer(0.into()) {
        return Err(Error::Domain("mu = 0 collapses the shifts".into()));
    }
    Field::cyclotomic(k)
}

fn unity_shifted_terms(field: &Field, k: u32, d: u32, mu: &Rational) -> (Vec<ShiftedPower>, Vec<Scalar>) {
    let xi = match field {
        Field::Cyclotomic(f) => f.generator(),
        Field::Rational => Scalar::one(),
    };
    let mu = Scalar::Rational(mu.clone());
    (1..=k)
        .map(|j| {
            let w = xi.pow(j);
            (ShiftedPower::new(-(&w * &mu), d), w)
        })
        .unzip()
}

fn unity_exponents(k: u32, d: u32) -> impl Iterator<Item = u32> {
    (0..=d).filter(move |i| (i + 1) % k == 0)
}

/// `∑_{j=1}^k ξ^j (x + ξ^j μ)^d = ∑_{i ≡ -1 (k)} k C(d,i) μ^i x^{d-i}` in `Q(ξ_k)`.
pub fn unity_identity(k: u32, d: u32, mu: &Rational) -> Result<DependenceCertificate> {
    let field = require_k(k, mu)?;
    let (terms, coeffs) = unity_shifted_terms(&field, k, d, mu);
    let mut rhs = vec![Scalar::zero(); d as usize + 1];
    for i in unity_exponents(k, d) {
        let c = Rational::from(binomial(d as u64, i as u64) * k) * mu.pow(i as i32);
        rhs[(d - i) as usize] = Scalar::Rational(c);
    }
    let family = Family::new(infer_field(terms.iter().map(|t| &t.shift))?, terms)?;
    DependenceCertificate::new(family, coeffs, Poly::new(rhs))
}

/// The `k` shifted `d`-th powers of the identity together with the
/// monomials on its right-hand side, and the relation among them.
pub fn unity_dependence_family(k: u32, d: u32, mu: &Rational) -> Result<DependenceCertificate> {
    let id = unity_identity(k, d, mu)?;
    let mut terms = id.family().terms().to_vec();
    let mut coeffs = id.coefficients().to_vec();
    for i in unity_exponents(k, d) {
        terms.push(ShiftedPower::new(0, d - i));
        coeffs.push(-id.target().coeff((d - i) as usize));
    }
    DependenceCertificate::from_relation(Family::new(id.family().field().clone(), terms)?, coeffs)
}

/// Odd powers of `x` below `d` and `(x ± 1)^i` for even `i` in
/// `[(d+2)/2, d]`, with its dimension `(3d + 2)/4`.
pub fn lowdim_family(d: u32) -> Result<(Family, usize)> {
    if d % 4 != 2 {
        return Err(Error::Domain(format!("need d ≡ 2 (mod 4), got {d}")));
    }
    let mut pairs: Vec<(i64, u32)> = (1..d).step_by(2).map(|i| (0, i)).collect();
    for i in ((d + 2) / 2..=d).filter(|i| i % 2 == 0) {
        pairs.push((-1, i));
        pairs.push((1, i));
    }
    Ok((Family::from_int_pairs(&pairs)?, (3 * d as usize + 2) / 4))
}

/// `(x + 1)^i - (x - 1)^i = ∑_{j < i, j odd} 2 C(i, j) x^j`.
pub fn pairing_identity_check(d: u32, i: u32) -> Result<bool> {
    if !i.is_multiple_of(2) || 2 * i < d + 2 || i > d {
        return Err(Error::Precondition(format!("need even i in [(d+2)/2, d], got i = {i}, d = {d}")));
    }
    let lhs = &ShiftedPower::new(-1, i).expand() - &ShiftedPower::new(1, i).expand();
    let rhs = Poly::new(
        (0..i)
            .map(|j| if j % 2 == 1 { Scalar::Rational((binomial(i as u64, j as u64) * 2u32).into()) } else { Scalar::zero() })
            .collect(),
    );
    Ok(lhs == rhs)
}

/// `(x+1)^4 - x^4 = 2(x + 1/2 + √3/6)^3 + 2(x + 1/2 - √3/6)^3` in `Q(ξ_12)`,
/// where `√3 = ξ + ξ^11`: four powers with exponents at least `2s - 5`.
pub fn h3_witness() -> DependenceCertificate {
    let f = CycloField::new(12).expect("valid conductor");
    let sqrt3 = &f.root_power(1) + &f.root_power(11);
    let half = Scalar::Rational(Rational::new(1.into(), 2.into()));
    let sixth = Scalar::Rational(Rational::new(1.into(), 6.into()));
    let t1 = &half + &(&sqrt3 * &sixth);
    let t2 = &half - &(&sqrt3 * &sixth);
    let terms = vec![
        ShiftedPower::new(-1, 4),
        ShiftedPower::new(0, 4),
        ShiftedPower::new(-t1, 3),
        ShiftedPower::new(-t2, 3),
    ];
    let coeffs = [1, -1, -2, -2].map(Scalar::from_int).to_vec();
    let family = Family::new(Field::Cyclotomic(f), terms).expect("distinct terms");
    DependenceCertificate::from_relation(family, coeffs).expect("exact identity")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeKind {
    /// Families with every `e_i >= a·s + b`.
    BigExp { s: usize, a: i64, b: i64 },
    /// Independent families with `e_i <= d`, augmented by `(x+1)^{d+1}, x^{d+1}`.
    Gmk { s: usize, d: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    pub kind: ProbeKind,
    pub conductor: u32,
    pub seed: u64,
    /// Random draws when the grid is too large to enumerate.
    pub samples: usize,
}

/// Grids with at most this many candidate families are enumerated fully.
pub const EXHAUSTIVE_LIMIT: usize = 20_000;
/// Width of the exponent window searched above the floor.
pub const EXPONENT_WINDOW: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub config: ProbeConfig,
    pub search_space: String,
    pub exhaustive: bool,
    pub candidates: usize,
    /// Candidates meeting the hypothesis (for `Gmk`: independent bases).
    pub eligible: usize,
    pub counterexample: Option<DependenceCertificate>,
    /// A known exact relation in the probed regime, outside the grid.
    pub known_witness: Option<DependenceCertificate>,
}

impl ProbeReport {
    pub fn verdict(&self) -> &'static str {
        if self.counterexample.is_some() {
            "counterexample found"
        } else {
            "no counterexample found in the searched space (experimental evidence, not a proof)"
        }
    }
}

/// A dependent family and its coefficients.
type Relation = (Family, Vec<Scalar>);

/// `0` and `c·ξ^j` for `c ∈ {1, 2}`, `0 <= j < conductor`, deduplicated.
fn shift_grid(conductor: u32) -> Result<Vec<Scalar>> {
    let field = CycloField::new(conductor)?;
    let mut grid = vec![Scalar::zero()];
    for c in 1..=2 {
        for j in 0..conductor {
            let v = &field.root_power(j as i64) * &Scalar::from_int(c);
            if !grid.contains(&v) {
                grid.push(v);
            }
        }
    }
    Ok(grid)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else { break };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

fn n_choose(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

pub fn conjecture_probe(cfg: &ProbeConfig) -> Result<ProbeReport> {
    if !(1..=8).contains(&cfg.conductor) {
        return Err(Error::Domain(format!("conductor must be in 1..=8, got {}", cfg.conductor)));
    }
    let (s, lo, hi) = match cfg.kind {
        ProbeKind::BigExp { s, a, b } => {
            let floor = (a * s as i64 + b).max(0) as u32;
            (s, floor, floor + EXPONENT_WINDOW - 1)
        }
        ProbeKind::Gmk { s, d } => (s, d.saturating_sub(EXPONENT_WINDOW - 1), d),
    };
    if s == 0 || s > 5 {
        return Err(Error::Domain(format!("probe needs 1 <= s <= 5, got {s}")));
    }
    let grid = shift_grid(cfg.conductor)?;
    let pairs: Vec<(usize, u32)> = (0..grid.len()).flat_map(|a| (lo..=hi).map(move |e| (a, e))).collect();
    let total = n_choose(pairs.len(), s);
    let exhaustive = total <= EXHAUSTIVE_LIMIT as u128;
    let picks: Vec<Vec<usize>> = if exhaustive {
        combinations(pairs.len(), s)
    } else {
        (0..cfg.samples)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(i as u64);
                let mut v = sample(&mut rng, pairs.len(), s).into_vec();
                v.sort_unstable();
                v
            })
            .collect()
    };
    let build = |pick: &Vec<usize>, extra: &[ShiftedPower]| -> Family {
        let mut terms: Vec<ShiftedPower> =
            pick.iter().map(|&p| ShiftedPower::new(grid[pairs[p].0].clone(), pairs[p].1)).collect();
        terms.extend_from_slice(extra);
        Family::from_terms(terms).expect("grid pairs are distinct")
    };
    let (eligible, counterexample) = match cfg.kind {
        ProbeKind::BigExp { .. } => {
            let hit = picks.par_iter().map(|p| build(p, &[])).find_map_first(|f| {
                f.dependence_coefficients().into_iter().next().map(|v| (f, v))
            });
            (picks.len(), hit)
        }
        ProbeKind::Gmk { d, .. } => {
            let extra = [ShiftedPower::new(-1, d + 1), ShiftedPower::new(0, d + 1)];
            let results: Vec<(bool, Option<Relation>)> = picks
                .par_iter()
                .map(|p| {
                    let base = build(p, &[]);
                    if !base.is_independent() {
                        return (false, None);
                    }
                    let aug = build(p, &extra);
                    let rel = aug.dependence_coefficients().into_iter().next();
                    (true, rel.map(|v| (aug, v)))
                })
                .collect();
            let eligible = results.iter().filter(|r| r.0).count();
            (eligible, results.into_iter().find_map(|r| r.1))
        }
    };
    let counterexample = counterexample.map(|(f, v)| DependenceCertificate::from_relation(f, v)).transpose()?;
    let known_witness = match cfg.kind {
        ProbeKind::BigExp { s: 4, a, b } if a * 4 + b <= 3 => Some(h3_witness()),
        _ => None,
    };
    let search_space = format!(
        "s = {s}; shifts {{0, ξ^j, 2ξ^j : j < {k}}} in Q(ξ_{k}) ({n} values); exponents {lo}..={hi}; {mode}",
        k = cfg.conductor,
        n = grid.len(),
        mode = if exhaustive {
            format!("all {total} families")
        } else {
            format!("{} seeded samples of {total} families", cfg.samples)
        },
    );
    Ok(ProbeReport { config: cfg.clone(), search_space, exhaustive, candidates: picks.len(), eligible, counterexample, known_witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn identity_small_cases() {
        let c = unity_identity(2, 3, &ratio(1, 1)).unwrap();
        assert_eq!(c.target(), &Poly::from_ints(&[2, 0, 6]));
        let c = unity_identity(1, 4, &ratio(1, 2)).unwrap();
        assert_eq!(c.target(), &ShiftedPower::new(Scalar::Rational(ratio(-1, 2)), 4).expand());
        unity_identity(3, 6, &ratio(1, 1)).unwrap();
        assert!(unity_identity(0, 3, &ratio(1, 1)).is_err());
    }

    #[test]
    fn dependence_families() {
        let c = unity_dependence_family(2, 4, &ratio(1, 1)).unwrap();
        assert_eq!(c.family().len(), 4);
        assert_eq!(c.family().exponents(), vec![4, 4, 3, 1]);
        assert!(!c.family().is_independent());
        let c = unity_dependence_family(3, 9, &ratio(1, 1)).unwrap();
        assert_eq!(c.family().len(), 6);
        assert!(!c.family().is_independent());
        assert!(c.family().polya_sequence().gmk_condition());
        let mono = c.family().subfamily(&[3, 4, 5]).unwrap();
        assert!(mono.is_independent());
    }

    #[test]
    fn lowdim_dimensions() {
        for (d, n, dim) in [(2, 3, 2), (6, 7, 5), (10, 11, 8)] {
            let (f, e) = lowdim_family(d).unwrap();
            assert_eq!((f.len(), e, f.dimension()), (n, dim, dim));
            assert!(f.satisfies_polya());
        }
        assert!(lowdim_family(4).is_err());
    }

    #[test]
    fn pairing() {
        assert!(pairing_identity_check(2, 2).unwrap());
        assert!(pairing_identity_check(6, 4).unwrap());
        assert!(pairing_identity_check(10, 6).unwrap());
        let six = &ShiftedPower::new(-1, 6).expand() - &ShiftedPower::new(1, 6).expand();
        assert_eq!(six, Poly::from_ints(&[0, 12, 0, 40, 0, 12]));
        assert!(pairing_identity_check(6, 3).is_err());
    }

    #[test]
    fn h3() {
        let w = h3_witness();
        assert_eq!(w.family().exponents(), vec![4, 4, 3, 3]);
        assert!(!w.family().is_independent());
    }

    #[test]
    fn probe_small_grids() {
        let cfg = ProbeConfig { kind: ProbeKind::BigExp { s: 3, a: 2, b: -4 }, conductor: 2, seed: 1, samples: 100 };
        let r = conjecture_probe(&cfg).unwrap();
        assert!(r.exhaustive && r.counterexample.is_none());
        let cfg = ProbeConfig { kind: ProbeKind::BigExp { s: 4, a: 2, b: -5 }, conductor: 1, seed: 1, samples: 100 };
        let r = conjecture_probe(&cfg).unwrap();
        assert!(r.known_witness.is_some());
        let cfg = ProbeConfig { kind: ProbeKind::Gmk { s: 2, d: 4 }, conductor: 4, seed: 3, samples: 200 };
        let a = conjecture_probe(&cfg).unwrap();
        assert!(a.eligible > 0);
        assert_eq!(a, conjecture_probe(&cfg).unwrap());
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(n_choose(51, 5), 2_349_060);
    }
}
