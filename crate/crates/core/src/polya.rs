//! Counting and enumerating Pólya sequences, the projection and clamping
//! lemmas, and seeded Monte Carlo experiments on random shifts.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{binomial, Field, Scalar};
use crate::error::{Error, Result};
use crate::family::{Family, PolyaSequence, ShiftedPower};

/// Default cap on the number of sequences a sweep may enumerate.
pub const ENUMERATION_LIMIT: usize = 10_000;

fn half_square(s: usize) -> usize {
    s * s / 2
}

/// `|P_{s,d}| = C(s + d, s)(d + 1 - s)/(d + 1)`: Pólya sequences of length
/// `s` with every exponent below `d`.
pub fn count_polya(s: usize, d: usize) -> Result<BigInt> {
    if s == 0 || s > d {
        return Err(Error::Domain(format!("need 1 <= s <= d, got s = {s}, d = {d}")));
    }
    let num = binomial((s + d) as u64, s as u64) * BigInt::from(d + 1 - s);
    let (q, r) = num.div_rem(&BigInt::from(d + 1));
    debug_assert!(r == BigInt::from(0));
    Ok(q)
}

/// Multiplicities `m_1..m_d` with `m_i = |{j : e_j = i - 1}|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultTuple {
    pub m: Vec<u32>,
}

impl MultTuple {
    pub fn s(&self) -> usize {
        self.m.iter().map(|&x| x as usize).sum()
    }

    pub fn to_sequence(&self) -> PolyaSequence {
        let exps = self.m.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i as u32, c as usize));
        PolyaSequence::new(exps.collect())
    }

    /// Prefix sums stay on or below the diagonal.
    pub fn is_ballot(&self) -> bool {
        let mut acc = 0usize;
        self.m.iter().enumerate().all(|(j, &x)| {
            acc += x as usize;
            acc <= j + 1
        })
    }
}

/// All of `P_{s,d}` as multiplicity tuples, in decreasing lexicographic order.
pub fn enumerate_polya(s: usize, d: usize) -> Result<PolyaIter> {
    count_polya(s, d)?;
    Ok(PolyaIter { s, next: Some(greedy_fill(vec![0; d], 0, 0, s)) })
}

pub struct PolyaIter {
    s: usize,
    next: Option<Vec<u32>>,
}

/// Fills positions `from..` with the largest values the ballot condition
/// allows, given the running total `acc` of earlier positions.
fn greedy_fill(mut m: Vec<u32>, from: usize, mut acc: usize, s: usize) -> Vec<u32> {
    for (j, slot) in m.iter_mut().enumerate().skip(from) {
        let v = (j + 1 - acc).min(s - acc);
        *slot = v as u32;
        acc += v;
    }
    m
}

impl Iterator for PolyaIter {
    type Item = MultTuple;

    fn next(&mut self) -> Option<MultTuple> {
        let cur = self.next.take()?;
        let d = cur.len();
        if let Some(j) = (0..d.saturating_sub(1)).rev().find(|&j| cur[j] > 0) {
            let mut m = cur.clone();
            m[j] -= 1;
            let acc = m[..=j].iter().map(|&x| x as usize).sum();
            self.next = Some(greedy_fill(m, j + 1, acc, self.s));
        }
        Some(MultTuple { m: cur })
    }
}

/// Drops the smallest exponent and decrements the rest.
pub fn project_sequence(e: &PolyaSequence) -> Result<PolyaSequence> {
    if e.len() < 2 {
        return Err(Error::Precondition("projection needs at least two exponents".into()));
    }
    if !e.satisfies_polya() {
        return Err(Error::Precondition(format!("{e} violates the Pólya condition")));
    }
    Ok(PolyaSequence::new(e.exps()[..e.len() - 1].iter().map(|x| x - 1).collect()))
}

/// Largest exponent allowed in `P'_s`: `⌊s²/2⌋ - 2`.
pub fn clamp_ceiling(s: usize) -> usize {
    half_square(s).saturating_sub(2)
}

fn clamp_floor(s: usize) -> usize {
    half_square(s) - s
}

fn require_clampable(e: &PolyaSequence) -> Result<usize> {
    let s = e.len();
    if s < 3 {
        return Err(Error::Precondition(format!("clamping needs s >= 3, got {s}")));
    }
    if !e.satisfies_polya() {
        return Err(Error::Precondition(format!("{e} violates the Pólya condition")));
    }
    Ok(s)
}

fn check_clamped(f: PolyaSequence, s: usize) -> Result<PolyaSequence> {
    if f.satisfies_polya() && f.max_exponent().is_some_and(|m| m as usize <= clamp_ceiling(s)) {
        Ok(f)
    } else {
        Err(Error::VerificationFailed(format!("clamped sequence {f} is outside P'_{s}")))
    }
}

/// Maps exponents above `⌊s²/2⌋ - 2` to `⌊s²/2⌋ - 2, ⌊s²/2⌋ - 3, …`, cycling
/// within `[⌊s²/2⌋ - s, ⌊s²/2⌋ - 2]`.
pub fn clamp_sequence(e: &PolyaSequence) -> Result<PolyaSequence> {
    let s = require_clampable(e)?;
    let (lo, hi) = (clamp_floor(s), clamp_ceiling(s));
    let slots = hi - lo + 1;
    let mut k = 0;
    let f = e
        .exps()
        .iter()
        .map(|&x| {
            if x as usize > hi {
                let v = hi - k % slots;
                k += 1;
                v as u32
            } else {
                x
            }
        })
        .collect();
    check_clamped(PolyaSequence::new(f), s)
}

/// Shift-aware clamp: each large exponent takes the highest free value in
/// `[⌊s²/2⌋ - s, ⌊s²/2⌋ - 2]` that keeps `(shift, exponent)` pairs distinct.
pub fn clamp_family(f: &Family) -> Result<Family> {
    let s = require_clampable(&f.polya_sequence())?;
    if f.terms().iter().all(|t| t.shift == f.terms()[0].shift) {
        return Err(Error::Precondition("clamping needs at least two distinct shifts".into()));
    }
    let (lo, hi) = (clamp_floor(s) as u32, clamp_ceiling(s) as u32);
    let mut terms: Vec<ShiftedPower> = f.terms().to_vec();
    let large: Vec<usize> = (0..s).filter(|&i| terms[i].exponent > hi).collect();
    for &i in &large {
        terms[i].exponent = u32::MAX;
    }
    for &i in &large {
        let a = terms[i].shift.clone();
        let v = (lo..=hi)
            .rev()
            .find(|&v| !terms.iter().any(|t| t.shift == a && t.exponent == v))
            .ok_or_else(|| Error::Precondition(format!("no free clamp value at node {a}")))?;
        terms[i].exponent = v;
    }
    let g = Family::new(f.field().clone(), terms)?;
    check_clamped(g.polya_sequence(), s)?;
    Ok(g)
}

/// For every basis relation `∑ α_i (x - a_i)^{e_i} = 0` with support `T`,
/// checks `max_{i∈T} e_i < |T|²/2 - 1`.
pub fn dependent_max_exponent_bound(f: &Family) -> Result<bool> {
    let relations = f.dependence_coefficients();
    if relations.is_empty() {
        return Err(Error::Precondition(format!("{f} is independent")));
    }
    Ok(relations.iter().all(|v| {
        let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        let t = support.len() as u64;
        let max = support.iter().map(|&i| f.terms()[i].exponent as u64).max().unwrap_or(0);
        2 * max + 2 < t * t
    }))
}

/// `f(s) = C(s + ⌊s²/2⌋ - 1, s)(s - 1)(s - 2)`.
pub fn f_bound(s: usize) -> Result<BigInt> {
    if s < 2 {
        return Err(Error::Domain(format!("f(s) needs s >= 2, got {s}")));
    }
    Ok(binomial((s + half_square(s) - 1) as u64, s as u64) * BigInt::from((s - 1) * (s - 2)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub set_size: u64,
    pub trials: u64,
    pub seed: u64,
    pub field: Field,
}

impl ExperimentConfig {
    pub fn new(set_size: u64, trials: u64, seed: u64) -> Self {
        Self { set_size, trials, seed, field: Field::Rational }
    }

    fn validate(&self) -> Result<()> {
        if self.set_size == 0 || self.trials == 0 {
            return Err(Error::Domain("set size and trial count must be positive".into()));
        }
        Ok(())
    }
}

/// Shifts for one trial, from a stream keyed by `(seed, trial)`.
pub fn sample_shifts(cfg: &ExperimentConfig, trial: u64, s: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    (0..s).map(|_| rng.gen_range(0..cfg.set_size)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloReport {
    pub s: usize,
    pub set_size: u64,
    pub trials: u64,
    pub seed: u64,
    pub frequency: f64,
    /// `1 - s(s-1)/|S|`.
    pub bound: f64,
    pub sigma: f64,
    pub pass: bool,
    /// Dependent samples that broke the maximal-exponent bound (always 0).
    pub bound_violations: u64,
}

fn tolerance(bound: f64, trials: u64) -> f64 {
    let b = bound.clamp(0.0, 1.0);
    (b * (1.0 - b) / trials as f64).sqrt()
}

enum Outcome {
    Independent,
    Dependent { violates: bool },
}

fn family_outcome(field: &Field, shifts: &[u64], exps: &[u32]) -> Outcome {
    let terms = shifts.iter().zip(exps).map(|(&a, &e)| ShiftedPower::new(Scalar::from_int(a as i64), e)).collect();
    match Family::new(field.clone(), terms) {
        Err(_) => Outcome::Dependent { violates: false },
        Ok(f) if f.is_independent() => Outcome::Independent,
        Ok(f) => Outcome::Dependent { violates: !dependent_max_exponent_bound(&f).unwrap_or(true) },
    }
}

/// Frequency with which uniformly random shifts from `{0, …, |S| - 1}` make
/// the family with exponents `e` independent. Coinciding `(shift, exponent)`
/// pairs count as dependent.
pub fn monte_carlo_independence(e: &PolyaSequence, cfg: &ExperimentConfig) -> Result<MonteCarloReport> {
    cfg.validate()?;
    let s = e.len();
    let (hits, violations) = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| match family_outcome(&cfg.field, &sample_shifts(cfg, trial, s), e.exps()) {
            Outcome::Independent => (1u64, 0u64),
            Outcome::Dependent { violates } => (0, violates as u64),
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let frequency = hits as f64 / cfg.trials as f64;
    let bound = 1.0 - (s * s.saturating_sub(1)) as f64 / cfg.set_size as f64;
    let sigma = tolerance(bound, cfg.trials);
    Ok(MonteCarloReport {
        s,
        set_size: cfg.set_size,
        trials: cfg.trials,
        seed: cfg.seed,
        frequency,
        bound,
        sigma,
        pass: frequency >= bound - 3.0 * sigma,
        bound_violations: violations,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub s: usize,
    pub set_size: u64,
    pub trials: u64,
    pub seed: u64,
    /// `|P'_s|`.
    pub sequences: usize,
    /// Fraction of samples independent for every sequence in `P'_s`.
    pub frequency: f64,
    /// `1 - f(s)/|S|`.
    pub bound: f64,
    pub vacuous: bool,
    pub pass: bool,
}

/// `P'_s`: Pólya sequences of length `s` with maximum at most `⌊s²/2⌋ - 2`.
pub fn bounded_sequences(s: usize, limit: usize) -> Result<Vec<PolyaSequence>> {
    let d = half_square(s).saturating_sub(1);
    if s > d {
        return Ok(Vec::new());
    }
    let count = count_polya(s, d)?;
    if count > BigInt::from(limit) {
        return Err(Error::EnumerationTooLarge { count: count.to_string(), limit });
    }
    Ok(enumerate_polya(s, d)?.map(|m| m.to_sequence()).collect())
}

/// Joint independence over all of `P'_s` for random shifts.
pub fn genericity_sweep(s: usize, cfg: &ExperimentConfig, limit: usize) -> Result<SweepReport> {
    cfg.validate()?;
    let seqs = bounded_sequences(s, limit)?;
    let hits: u64 = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let shifts = sample_shifts(cfg, trial, s);
            seqs.iter().all(|e| matches!(family_outcome(&cfg.field, &shifts, e.exps()), Outcome::Independent)) as u64
        })
        .sum();
    let frequency = hits as f64 / cfg.trials as f64;
    let fs = f_bound(s)?;
    let vacuous = fs >= BigInt::from(cfg.set_size);
    let bound = if vacuous { 0.0 } else { 1.0 - fs.to_string().parse::<f64>().unwrap_or(f64::INFINITY) / cfg.set_size as f64 };
    let sigma = tolerance(bound, cfg.trials);
    Ok(SweepReport {
        s,
        set_size: cfg.set_size,
        trials: cfg.trials,
        seed: cfg.seed,
        sequences: seqs.len(),
        frequency,
        bound,
        vacuous,
        pass: vacuous || frequency >= bound - 3.0 * sigma,
    })
}
