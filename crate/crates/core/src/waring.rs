//! Waring rank of univariate polynomials (binary forms after
//! homogenization) through catalecticant kernels, and the `H_d` family
//! whose rank is governed by shifted Legendre polynomials.
//!
//! Sign convention: a kernel vector `c` of `hankel(r)` is read as
//! `C(t) = ∑ c_j t^j`, and a root `ρ` of `C` stands for the power
//! `(x + ρ)^D`. A missing top coefficient `c_r` is a root at infinity,
//! i.e. a constant term `y^D` in the homogenized decomposition.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{binomial, Poly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

const COMBINATION_ATTEMPTS: usize = 64;
const COMBINATION_SEED: u64 = 0x5eed;

/// `(x + 1)^{2d+2} - x^{2d+2}`, of degree `2d + 1`.
pub fn h_polynomial(d: u32) -> Poly {
    h_even_or_odd(2 * d + 1)
}

/// `H_n = (x + 1)^{n+1} - x^{n+1}`, of degree `n`.
pub fn h_even_or_odd(n: u32) -> Poly {
    let mut c: Vec<Scalar> = (0..=n + 1).map(|i| Scalar::Rational(binomial(n as u64 + 1, i as u64).into())).collect();
    c[n as usize + 1] = Scalar::zero();
    Poly::new(c)
}

/// Scaled coefficients `Z_i = coeff(x^{D-i} y^i) / C(D, i)` of a binary form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalecticantProfile {
    pub degree: usize,
    pub z: Vec<Rational>,
}

impl CatalecticantProfile {
    /// `(D - r + 1) × (r + 1)` matrix with entries `Z_{i+j}`.
    pub fn hankel(&self, r: usize) -> Matrix {
        assert!(r <= self.degree, "hankel order {r} exceeds degree {}", self.degree);
        Matrix::from_fn(self.degree - r + 1, r + 1, |i, j| Scalar::Rational(self.z[i + j].clone()))
    }
}

fn rational_coeffs(f: &Poly) -> Result<Vec<Rational>> {
    f.coeffs()
        .iter()
        .map(|c| c.as_rational().cloned().ok_or_else(|| Error::Domain(format!("coefficient {c} is not rational"))))
        .collect()
}

pub fn extract_z(f: &Poly) -> Result<CatalecticantProfile> {
    let Some(d) = f.degree() else {
        return Err(Error::Domain("zero polynomial has no catalecticant".into()));
    };
    let c = rational_coeffs(f)?;
    let z = (0..=d).map(|i| &c[d - i] / Rational::from(binomial(d as u64, i as u64))).collect();
    Ok(CatalecticantProfile { degree: d, z })
}

/// `hankel(d)` for a form of degree `2d + 1`: square plus one extra row.
pub fn hilbert_like_matrix(p: &CatalecticantProfile, d: usize) -> Result<Matrix> {
    if p.degree != 2 * d + 1 {
        return Err(Error::Precondition(format!("degree {} is not 2·{d} + 1", p.degree)));
    }
    Ok(p.hankel(d))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaringReport {
    pub rank: usize,
    /// Kernel polynomial `C(t)`, low-to-high; its roots are the shifts.
    pub certificate: Poly,
    pub squarefree: bool,
    /// All finite roots of the certificate are real (Sturm count).
    pub real_roots: bool,
    /// The decomposition needs a pure power of the second variable.
    pub root_at_infinity: bool,
    pub residual: Option<f64>,
}

fn binary_squarefree(c: &Poly, r: usize) -> bool {
    match c.degree() {
        Some(d) if d == r => c.is_squarefree(),
        Some(d) if d + 1 == r => d == 0 || c.is_squarefree(),
        _ => false,
    }
}

fn vec_poly(v: &[Scalar]) -> Poly {
    Poly::new(v.to_vec())
}

/// Smallest `r` whose catalecticant kernel holds a squarefree binary form.
/// Candidates with no root at infinity are preferred.
pub fn waring_rank(f: &Poly) -> Result<WaringReport> {
    let profile = extract_z(f)?;
    let big_d = profile.degree;
    if big_d == 0 {
        return Err(Error::Domain("Waring rank needs degree at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(COMBINATION_SEED);
    for r in 1..=big_d {
        let kernel = profile.hankel(r).nullspace();
        if kernel.is_empty() {
            continue;
        }
        let mut candidates: Vec<Poly> = kernel.iter().map(|v| vec_poly(v)).collect();
        if kernel.len() > 1 {
            for _ in 0..COMBINATION_ATTEMPTS {
                let mut acc = Poly::zero();
                for b in &candidates[..kernel.len()] {
                    acc = &acc + &b.scale(&Scalar::from_int(rng.gen_range(-3..=3)));
                }
                candidates.push(acc);
            }
        }
        let good: Vec<&Poly> = candidates.iter().filter(|c| binary_squarefree(c, r)).collect();
        let pick = good.iter().find(|c| c.degree() == Some(r)).or(good.first());
        if let Some(c) = pick {
            let certificate = c.make_monic();
            let root_at_infinity = certificate.degree() != Some(r);
            let real_roots = sturm_count(&certificate, None)? == certificate.degree().unwrap_or(0);
            return Ok(WaringReport {
                rank: r,
                certificate,
                squarefree: true,
                real_roots,
                root_at_infinity,
                residual: None,
            });
        }
    }
    unreachable!("hankel(D) always has a squarefree kernel element")
}

/// Monic degree-`n` polynomial orthogonal to lower degrees on `[0, 1]`:
/// `(-1)^n ∑_k C(n,k) C(n+k,k) (-x)^k`, normalized.
pub fn shifted_legendre(n: u32) -> Poly {
    let c: Vec<Rational> = (0..=n)
        .map(|k| {
            let b = binomial(n as u64, k as u64) * binomial((n + k) as u64, k as u64);
            let sign = if (n + k).is_multiple_of(2) { 1 } else { -1 };
            Rational::from(b * BigInt::from(sign))
        })
        .collect();
    Poly::from_rationals(c).make_monic()
}

/// The kernel of `hankel(d + 1)` for `H_{2d+1}` is the line through the
/// coefficients of `shifted_legendre(d + 1)`, which is squarefree.
pub fn legendre_kernel_identity(d: u32) -> bool {
    let profile = extract_z(&h_polynomial(d)).expect("nonzero");
    let kernel = profile.hankel(d as usize + 1).nullspace();
    let legendre = shifted_legendre(d + 1);
    kernel.len() == 1 && vec_poly(&kernel[0]).make_monic() == legendre && legendre.is_squarefree()
}

fn rsign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn to_rat(s: &Scalar) -> Rational {
    s.as_rational().cloned().expect("rational polynomial")
}

fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative(1)];
    while !chain[chain.len() - 1].is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor");
        chain.push(-r);
    }
    chain.pop();
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn changes_at(chain: &[Poly], x: &Rational) -> usize {
    let x = Scalar::Rational(x.clone());
    sign_changes(chain.iter().map(|p| rsign(&to_rat(&p.eval(&x)))))
}

fn changes_at_infinity(chain: &[Poly], positive: bool) -> usize {
    sign_changes(chain.iter().map(|p| {
        let lead = rsign(&to_rat(p.leading().expect("nonzero")));
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -lead
        } else {
            lead
        }
    }))
}

/// Number of distinct real roots of a rational polynomial, in `(a, b]` when
/// an interval is given.
pub fn sturm_count(f: &Poly, interval: Option<(&Rational, &Rational)>) -> Result<usize> {
    rational_coeffs(f)?;
    if f.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(f);
    Ok(match interval {
        None => changes_at_infinity(&chain, false) - changes_at_infinity(&chain, true),
        Some((a, b)) => changes_at(&chain, a) - changes_at(&chain, b),
    })
}

/// Isolates the real roots of a squarefree rational polynomial in `(lo, hi]`
/// to intervals narrower than `width`, returned as midpoints.
pub fn isolate_real_roots(f: &Poly, lo: &Rational, hi: &Rational, width: &Rational) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    let two = Rational::from(BigInt::from(2));
    while let Some((a, b)) = stack.pop() {
        let n = sturm_count(f, Some((&a, &b)))?;
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a < *width {
            let mid = (&a + &b) / &two;
            out.push(rat_to_f64(&mid));
            continue;
        }
        let mid = (&a + &b) / &two;
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn rat_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Max-norm residual of `H_{2d+1} = ∑ α_i (x + t_i)^{2d+1}`, with `t_i` the
/// roots of `shifted_legendre(d + 1)` located to within `precision` and the
/// `α_i` fitted by least squares in floating point.
pub fn real_decomposition_residual(d: u32, precision: f64) -> Result<f64> {
    let n = d as usize + 1;
    let legendre = shifted_legendre(d + 1);
    let width = Rational::from_float(precision.max(1e-300)).unwrap_or_else(|| Rational::new(1.into(), (1u64 << 52).into()));
    let roots = isolate_real_roots(&legendre, &Rational::zero(), &Rational::one(), &width)?;
    if roots.len() != n {
        return Err(Error::RootIsolation { found: roots.len(), expected: n });
    }
    let big_d = 2 * d + 1;
    let h = h_polynomial(d);
    let rows = big_d as usize + 1;
    let a = DMatrix::from_fn(rows, n, |m, j| {
        let b = rat_to_f64(&Rational::from(binomial(big_d as u64, m as u64)));
        b * roots[j].powi((big_d as usize - m) as i32)
    });
    let rhs = DVector::from_fn(rows, |m, _| rat_to_f64(&to_rat(&h.coeff(m))));
    let alpha = a
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::VerificationFailed(e.to_string()))?;
    Ok((a * alpha - rhs).amax())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, expand_shifted_power};

    #[test]
    fn h_examples() {
        assert_eq!(h_polynomial(0), Poly::from_ints(&[1, 2]));
        assert_eq!(h_polynomial(1), Poly::from_ints(&[1, 4, 6, 4]));
        for d in 0..8 {
            assert_eq!(h_polynomial(d).leading(), Some(&Scalar::from_int(2 * d as i64 + 2)));
        }
    }

    #[test]
    fn z_profiles() {
        for d in 0..=10u32 {
            let z = extract_z(&h_polynomial(d)).unwrap().z;
            let expected: Vec<Rational> = (0..=2 * d as i64 + 1).map(|i| ratio(2 * d as i64 + 2, i + 1)).collect();
            assert_eq!(z, expected);
        }
        let z = extract_z(&Poly::from_ints(&[0, 0, 0, 1])).unwrap().z;
        assert_eq!(z, vec![ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)]);
        let z = extract_z(&expand_shifted_power(&Scalar::from_int(-1), 5)).unwrap().z;
        assert!(z.iter().all(|q| q.is_one()));
    }

    #[test]
    fn hilbert_shape() {
        let m = hilbert_like_matrix(&extract_z(&h_polynomial(1)).unwrap(), 1).unwrap();
        let expected: Vec<Vec<Scalar>> = [[(4, 1), (2, 1)], [(2, 1), (4, 3)], [(4, 3), (1, 1)]]
            .iter()
            .map(|r| r.iter().map(|&(n, d)| Scalar::Rational(ratio(n, d))).collect())
            .collect();
        assert_eq!(m, Matrix::from_rows(expected).unwrap());
        for d in 0..=8 {
            let m = hilbert_like_matrix(&extract_z(&h_polynomial(d)).unwrap(), d as usize).unwrap();
            assert_eq!((m.rows(), m.cols(), m.rank()), (d as usize + 2, d as usize + 1, d as usize + 1));
        }
        assert!(hilbert_like_matrix(&extract_z(&h_polynomial(1)).unwrap(), 2).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(waring_rank(&Poly::from_ints(&[0, 0, 0, 0, 1])).unwrap().rank, 1);
        assert_eq!(waring_rank(&Poly::from_ints(&[1, 2])).unwrap().rank, 1);
        for d in 1..=6 {
            let r = waring_rank(&h_polynomial(d)).unwrap();
            assert_eq!(r.rank, d as usize + 1);
            assert!(r.squarefree && r.real_roots && !r.root_at_infinity);
            assert_eq!(r.certificate, shifted_legendre(d + 1));
        }
        for d in 1..=5 {
            assert_eq!(waring_rank(&h_even_or_odd(2 * d)).unwrap().rank, d as usize + 1);
        }
        assert!(waring_rank(&Poly::from_ints(&[3])).is_err());
    }

    #[test]
    fn rank_with_root_at_infinity() {
        // x^3 + 1: the constant is a pure power of the second variable.
        let r = waring_rank(&Poly::from_ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.root_at_infinity);
        assert_eq!(r.certificate, Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn translation_invariance() {
        let f = Poly::from_ints(&[2, -1, 0, 5, 1]);
        let base = waring_rank(&f).unwrap().rank;
        for c in [-3, -1, 1, 2, 7] {
            assert_eq!(waring_rank(&f.translate(&Scalar::from_int(c))).unwrap().rank, base);
            let p = expand_shifted_power(&Scalar::Rational(ratio(c, 3)), 5);
            assert_eq!(waring_rank(&p).unwrap().rank, 1);
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(shifted_legendre(0), Poly::one());
        assert_eq!(shifted_legendre(1), Poly::from_rationals([ratio(-1, 2), ratio(1, 1)]));
        assert_eq!(shifted_legendre(2), Poly::from_rationals([ratio(1, 6), ratio(-1, 1), ratio(1, 1)]));
        for n in 0..=8 {
            let p = shifted_legendre(n);
            assert_eq!(sturm_count(&p, Some((&ratio(0, 1), &ratio(1, 1)))).unwrap(), n as usize);
        }
        for d in 0..=6 {
            assert!(legendre_kernel_identity(d), "d={d}");
        }
    }

    #[test]
    fn sturm_basics() {
        assert_eq!(sturm_count(&Poly::from_ints(&[1, 0, 1]), None).unwrap(), 0);
        assert_eq!(sturm_count(&Poly::from_ints(&[-1, 0, 1]), None).unwrap(), 2);
        assert_eq!(sturm_count(&Poly::from_ints(&[0, -1, 0, 1]), Some((&ratio(0, 1), &ratio(2, 1)))).unwrap(), 1);
    }

    #[test]
    fn residuals() {
        for d in 0..=4 {
            let r = real_decomposition_residual(d, 1e-15).unwrap();
            assert!(r <= 1e-8, "d={d} residual {r}");
        }
    }
}
