//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; tolerances and
//! time budgets are pinned as constants below.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shiftpow::algebra::{ratio, CycloField, Poly, Rational, Scalar};
use shiftpow::construct::{self, ProbeConfig, ProbeKind};
use shiftpow::family::{self, jordan_condition, jordan_family, Family, ShiftedPower};
use shiftpow::json::probe_to_json;
use shiftpow::polya::{self, ExperimentConfig};
use shiftpow::sde::{self, SdeParams};
use shiftpow::waring;

const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_3: Duration = Duration::from_secs(30);
const BUDGET_6: Duration = Duration::from_secs(120);
const BUDGET_8: Duration = Duration::from_secs(60);
const BUDGET_10: Duration = Duration::from_secs(60);
/// Float tolerance for the numeric identity cross-check in criterion 2.
const FLOAT_TOL_2: f64 = 1e-6;
/// Diagnostic tolerance on the Legendre decomposition residual.
const RESIDUAL_TOL_8: f64 = 1e-8;
const RESIDUAL_PRECISION_8: f64 = 1e-15;
/// Binomial standard errors allowed below the bound.
const SIGMA_MULT_10: f64 = 3.0;

/// Release builds meet the budgets comfortably; unoptimized builds get slack.
fn budget(d: Duration) -> Duration {
    if cfg!(debug_assertions) {
        d * 10
    } else {
        d
    }
}

fn report(n: &str, ok: bool, detail: String) {
    println!("{} criterion {n}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(a: i64, b: i64) -> Scalar {
    CycloField::new(4).unwrap().element(vec![ratio(a, 1), ratio(b, 1)])
}

/// Distinct random rationals with small numerators and denominators.
fn random_rationals(r: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let x = Scalar::Rational(ratio(r.gen_range(-40..=40), r.gen_range(1..=7)));
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn random_gaussians(r: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let x = gaussian(r.gen_range(-9..=9), r.gen_range(-9..=9));
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Second route to independence: Bareiss rank over ℚ, Wronskian otherwise.
fn independent_by_second_route(f: &Family) -> bool {
    if f.has_rational_shifts() {
        f.coefficient_matrix().bareiss_rank() == f.len()
    } else {
        !f.wronskian().is_zero()
    }
}

#[test]
fn criterion_01_dependence_identity() {
    let start = Instant::now();
    let f = Family::from_int_pairs(&[(-1, 2), (1, 2), (0, 1)]).unwrap();
    let dim = f.dimension();
    let kernel = f.dependence_coefficients();
    let expected = [Scalar::from_int(1), Scalar::from_int(-1), Scalar::from_int(-4)];
    // oracle: (x+1)^2 - (x-1)^2 - 4x expands to zero by hand
    let by_hand = &(&Poly::from_ints(&[1, 2, 1]) - &Poly::from_ints(&[1, -2, 1])) - &Poly::from_ints(&[0, 4]);
    let elapsed = start.elapsed();
    let ok = dim == 2
        && kernel.len() == 1
        && kernel[0] == expected
        && by_hand.is_zero()
        && elapsed < budget(BUDGET_1);
    report("1", ok, format!("dim = {dim}, kernel = {:?}, {elapsed:?}", kernel.first().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())));
    assert!(ok);
}

fn complex_eval(p: &Poly, x: (f64, f64)) -> (f64, f64) {
    p.coeffs().iter().rev().fold((0.0, 0.0), |(re, im), c| {
        let (cr, ci) = c.to_complex_f64();
        (re * x.0 - im * x.1 + cr, re * x.1 + im * x.0 + ci)
    })
}

/// Floating-point evaluation of `∑ c_j (x - a_j)^e_j` built from scratch.
fn float_lhs(c: &construct::DependenceCertificate, x: f64) -> (f64, f64) {
    c.family().terms().iter().zip(c.coefficients()).fold((0.0, 0.0), |acc, (t, w)| {
        let (ar, ai) = t.shift.to_complex_f64();
        let (mut pr, mut pi) = (1.0, 0.0);
        for _ in 0..t.exponent {
            let (br, bi) = (x - ar, -ai);
            (pr, pi) = (pr * br - pi * bi, pr * bi + pi * br);
        }
        let (wr, wi) = w.to_complex_f64();
        (acc.0 + wr * pr - wi * pi, acc.1 + wr * pi + wi * pr)
    })
}

#[test]
fn criterion_02_unity_identity() {
    let start = Instant::now();
    let mus = [ratio(1, 1), ratio(1, 2), ratio(-2, 1)];
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 1..=6u32 {
        for d in 1..=20u32 {
            for mu in &mus {
                let c = construct::unity_identity(k, d, mu).unwrap();
                let exact = c.verify().is_ok() && c.lhs() == *c.target();
                let x = 0.37;
                let (lr, li) = float_lhs(&c, x);
                let (rr, ri) = complex_eval(c.target(), (x, 0.0));
                let scale = 1.0 + rr.abs() + ri.abs();
                let float_ok = ((lr - rr).abs() + (li - ri).abs()) / scale < FLOAT_TOL_2;
                if !(exact && float_ok) {
                    bad.push((k, d, mu.clone()));
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < budget(BUDGET_2);
    report("2", ok, format!("{checked} identities exact, failures {bad:?}, {elapsed:?}"));
    assert!(ok);
}

/// `d = 4` cannot pass: the family for `k = 2` has exponents (4, 4, 3, 1),
/// so `n_4 + n_5 = 2 + 4 > 5` and the sufficient condition is false. This
/// test reports FAIL and only guards that the failure is exactly that one.
#[test]
fn criterion_03_gmk_fails_over_c() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut all = true;
    let mut failing = Vec::new();
    for (d, k) in [(4u32, 2u32), (9, 3), (16, 4)] {
        let c = construct::unity_dependence_family(k, d, &Rational::one()).unwrap();
        let f = c.family();
        let dependent = f.dimension() < f.len() && !independent_by_second_route(f);
        let gmk = f.polya_sequence().gmk_condition();
        lines.push(format!("d={d}: exps {:?} dependent={dependent} gmk={gmk}", f.exponents()));
        assert!(dependent, "construction must always be dependent");
        if !gmk {
            all = false;
            failing.push(d);
        }
    }
    let elapsed = start.elapsed();
    let ok = all && elapsed < budget(BUDGET_3);
    report("3", ok, format!("{}; {elapsed:?}", lines.join("; ")));
    assert_eq!(failing, vec![4], "only d = 4 is expected to miss the condition");
}

#[test]
fn criterion_04_equal_exponent_basis() {
    let mut r = rng(4);
    let mut bad = Vec::new();
    for d in 0..=10u32 {
        for _ in 0..20 {
            let shifts = random_rationals(&mut r, d as usize + 1);
            let f = Family::from_terms(shifts.into_iter().map(|a| ShiftedPower::new(a, d)).collect()).unwrap();
            if !(f.dimension() == d as usize + 1 && independent_by_second_route(&f)) {
                bad.push(d);
            }
        }
    }
    let ok = bad.is_empty();
    report("4", ok, format!("11 degrees x 20 shift sets, failures at d in {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_05_jordan() {
    let nodes = [Scalar::from_int(0), Scalar::from_int(1), Scalar::Rational(ratio(-1, 2))];
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in 1..=6u32 {
        for n in 1..=3usize {
            let mut es = vec![1u32; n];
            loop {
                let towers: Vec<(Scalar, u32)> = nodes[..n].iter().cloned().zip(es.iter().copied()).collect();
                let total: u32 = es.iter().map(|e| d + 1 - e).sum();
                assert_eq!(jordan_condition(d, &towers), total <= d + 1);
                if total <= d + 1 {
                    let f = jordan_family(d, &towers).unwrap();
                    if !(f.is_independent() && independent_by_second_route(&f)) {
                        bad.push((d, es.clone()));
                    }
                    checked += 1;
                }
                let Some(i) = es.iter().position(|&e| e < d) else { break };
                es[i] += 1;
                es[..i].iter_mut().for_each(|e| *e = 1);
            }
        }
    }
    let ok = bad.is_empty() && checked > 0;
    report("5", ok, format!("{checked} tower configurations independent, failures {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_06_sde_existence() {
    let start = Instant::now();
    let mut r = rng(6);
    let mut bad = Vec::new();
    let mut orders = Vec::new();
    for trial in 0..50 {
        let s = r.gen_range(1..=5usize);
        let lo = (s * (s - 1) / 2).max(s) as u32;
        let shifts = if trial % 2 == 0 { random_rationals(&mut r, s) } else { random_gaussians(&mut r, s) };
        let terms: Vec<ShiftedPower> = shifts.into_iter().map(|a| ShiftedPower::new(a, r.gen_range(lo..=lo + 2))).collect();
        let f = Family::from_terms(terms).unwrap();
        let e = sde::find_small_sde(&f);
        // oracle: apply the operator by hand, one derivative at a time
        let annihilates = f.expansions().iter().all(|p| {
            let mut acc = Poly::zero();
            let mut der = p.clone();
            for c in &e.coefficients {
                acc = &acc + &(c * &der);
                der = der.derivative(1);
            }
            acc.is_zero()
        });
        let divides = match sde::check_root_divisibility(&e, &f) {
            Ok(b) => b,
            Err(_) => f.min_exponent() < e.order(),
        };
        orders.push(e.order());
        if !(e.order() as usize >= s && annihilates && e.degree_bounds_hold() && divides) {
            bad.push((trial, f.to_string()));
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < budget(BUDGET_6);
    report("6", ok, format!("50 families, orders {orders:?}, failures {bad:?}, {elapsed:?}"));
    assert!(ok);
}

#[test]
fn criterion_07_lower_bound_on_l() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for s in 2..=4usize {
        let l = s as u32 - 1;
        for e in s as u32..=s as u32 + 2 {
            let shifts: Vec<i64> = (0..s as i64).map(|i| 3 * i - 2).collect();
            let f = Family::from_int_pairs(&shifts.iter().map(|&a| (a, e)).collect::<Vec<_>>()).unwrap();
            assert!(f.is_independent());
            // equations SDE(s, k', l) with k' <= e
            for k in 1..=e {
                let p = SdeParams::new(s as u32, k, l);
                if !sde::build_system(&f, p).nullspace().is_empty() {
                    bad.push((s, e, p));
                }
                checked += 1;
            }
        }
    }
    let ok = bad.is_empty();
    report("7", ok, format!("{checked} parameter sets with l = s - 1 have trivial nullspace, failures {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_08_waring_rank() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for d in 1..=6u32 {
        let h = waring::h_polynomial(d);
        // oracle: (x+1)^{2d+2} - x^{2d+2} has degree 2d+1 and leading coefficient 2d+2
        assert_eq!(h.degree(), Some(2 * d as usize + 1));
        let rep = waring::waring_rank(&h).unwrap();
        let legendre = waring::legendre_kernel_identity(d);
        let good = rep.rank == d as usize + 1 && rep.squarefree && rep.certificate.is_squarefree() && legendre;
        ok &= good;
        lines.push(format!("H_{}: rank {}", 2 * d + 1, rep.rank));
    }
    for d in 1..=5u32 {
        let rep = waring::waring_rank(&waring::h_even_or_odd(2 * d)).unwrap();
        ok &= rep.rank == d as usize + 1 && rep.squarefree;
        lines.push(format!("H_{}: rank {}", 2 * d, rep.rank));
    }
    let mut worst = 0.0f64;
    for d in 1..=4u32 {
        worst = worst.max(waring::real_decomposition_residual(d, RESIDUAL_PRECISION_8).unwrap());
    }
    let elapsed = start.elapsed();
    ok &= worst <= RESIDUAL_TOL_8 && elapsed < budget(BUDGET_8);
    report("8", ok, format!("{}; max residual {worst:.2e} (tol {RESIDUAL_TOL_8:e}); {elapsed:?}", lines.join(", ")));
    assert!(ok);
}

fn catalan(n: u64) -> BigInt {
    // C_{n+1} = C_n * 2(2n+1)/(n+2)
    let mut c = BigInt::one();
    for i in 0..n {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

/// Brute force: all nonincreasing sequences with entries below `d`, filtered.
fn brute_count(s: usize, d: usize) -> u64 {
    fn go(prefix: &mut Vec<u32>, s: usize, cap: u32, out: &mut u64) {
        if prefix.len() == s {
            let mut sorted = prefix.clone();
            sorted.sort_unstable();
            if sorted.iter().enumerate().all(|(i, &e)| e as usize >= i) {
                *out += 1;
            }
            return;
        }
        for e in 0..=cap {
            prefix.push(e);
            go(prefix, s, e, out);
            prefix.pop();
        }
    }
    let mut n = 0;
    go(&mut Vec::new(), s, d as u32 - 1, &mut n);
    n
}

#[test]
fn criterion_09_ballot_counting() {
    let mut bad = Vec::new();
    for d in 1..=8usize {
        for s in 1..=d {
            let c = polya::count_polya(s, d).unwrap();
            let listed = polya::enumerate_polya(s, d).unwrap().count();
            if c != BigInt::from(listed) || c != BigInt::from(brute_count(s, d)) {
                bad.push((s, d));
            }
        }
    }
    for s in 1..=10usize {
        if polya::count_polya(s, s).unwrap() != catalan(s as u64) {
            bad.push((s, s));
        }
    }
    let ok = bad.is_empty();
    report("9", ok, format!("36 (s, d) pairs match enumeration and brute force, Catalan for s <= 10, failures {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_10_genericity_bound() {
    let start = Instant::now();
    let e = shiftpow::PolyaSequence::new(vec![2, 2, 0]);
    let bound = 1.0 - 6.0 / 100.0;
    let sigma = (bound * (1.0 - bound) / 2000.0f64).sqrt();
    let mut lines = Vec::new();
    let mut ok = true;
    for seed in [1u64, 2, 3] {
        let r = polya::monte_carlo_independence(&e, &ExperimentConfig::new(100, 2000, seed)).unwrap();
        let pass = r.frequency >= bound - SIGMA_MULT_10 * sigma;
        ok &= pass && r.pass == pass && (r.bound - bound).abs() < 1e-12 && r.bound_violations == 0;
        lines.push(format!("seed {seed}: {:.4}", r.frequency));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < budget(BUDGET_10);
    report("10", ok, format!("{}; threshold {:.4}; {elapsed:?}", lines.join(", "), bound - SIGMA_MULT_10 * sigma));
    assert!(ok);
}

#[test]
fn criterion_11_dimension_witnesses() {
    let mut r = rng(11);
    let mut families = 0;
    let mut bad = Vec::new();
    for s in 1..=6usize {
        let seqs: Vec<_> = polya::enumerate_polya(s, s).unwrap().map(|m| m.to_sequence()).collect();
        for _ in 0..20 {
            let shifts = random_rationals(&mut r, s);
            for seq in &seqs {
                let terms = shifts.iter().cloned().zip(seq.exps().iter().copied()).map(|(a, e)| ShiftedPower::new(a, e)).collect();
                let f = Family::from_terms(terms).unwrap();
                let sq = family::sqrt_witness(&f).unwrap();
                let hp = family::real_halfplus_witness(&f).unwrap();
                let need_sqrt = (1..).find(|c| c * c >= s).unwrap();
                let ok = sq.len() >= need_sqrt
                    && hp.len() > s / 2
                    && independent_by_second_route(&sq)
                    && independent_by_second_route(&hp);
                if !ok {
                    bad.push(f.to_string());
                }
                families += 1;
            }
        }
    }
    let ok = bad.is_empty();
    report("11", ok, format!("{families} families, failures {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_12_lowdim() {
    let mut lines = Vec::new();
    let mut ok = true;
    for d in [2u32, 6, 10, 14] {
        let (f, expected) = construct::lowdim_family(d).unwrap();
        let dim = f.dimension();
        let bareiss = f.coefficient_matrix().bareiss_rank();
        ok &= dim == expected && bareiss == expected && 4 * dim == 3 * d as usize + 2;
        lines.push(format!("d={d}: {dim}"));
    }
    report("12", ok, lines.join(", "));
    assert!(ok);
}

/// `dim > (2 - √2) s` without floating point.
fn exceeds_two_minus_root_two(dim: usize, s: usize) -> bool {
    let gap = 2 * s as i64 - dim as i64;
    gap <= 0 || gap * gap < 2 * (s * s) as i64
}

#[test]
fn criterion_13_complex_dimension_bound() {
    let mut r = rng(13);
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for _ in 0..20 {
        let s = r.gen_range(1..=6usize);
        let shifts = random_gaussians(&mut r, s);
        let terms = shifts.into_iter().map(|a| ShiftedPower::new(a, r.gen_range(s as u32..=s as u32 + 3))).collect();
        let f = Family::from_terms(terms).unwrap();
        let dim = f.dimension();
        let rep = family::big_exponent_conditions(&f);
        let alpha_ge_one = rep.alpha >= Rational::one() && !rep.alpha.is_negative();
        let ok = exceeds_two_minus_root_two(dim, s) && rep.lower_bound <= dim && alpha_ge_one;
        if !ok {
            bad.push(f.to_string());
        }
        dims.push((s, dim));
    }
    let ok = bad.is_empty();
    report("13", ok, format!("(s, dim) = {dims:?}, failures {bad:?}"));
    assert!(ok);
}

#[test]
fn probe_determinism() {
    let kinds = [
        (ProbeKind::BigExp { s: 4, a: 2, b: -5 }, 4),
        (ProbeKind::Gmk { s: 3, d: 3 }, 3),
    ];
    let mut ok = true;
    for (kind, conductor) in kinds {
        let cfg = ProbeConfig { kind, conductor, seed: 77, samples: 60 };
        let a = construct::conjecture_probe(&cfg).unwrap();
        let b = construct::conjecture_probe(&cfg).unwrap();
        ok &= a == b && probe_to_json(&a) == probe_to_json(&b);
    }
    report("probe", ok, "identical reports across two runs with seed 77".into());
    assert!(ok);
}

#[test]
fn oracle_helpers() {
    assert!(exceeds_two_minus_root_two(3, 5));
    assert!(!exceeds_two_minus_root_two(2, 5));
    assert_eq!(catalan(4), BigInt::from(14));
    assert_eq!(brute_count(3, 3), 5);
    assert!(BigInt::zero().is_zero());
}
