//! Exact rational roots of polynomials over ℚ(i).
//!
//! Real roots are isolated with a Sturm sequence over ℚ. If `r = p/q` is a
//! rational root of an integer polynomial with leading coefficient `L`, then
//! `q | L`, so `L·r` is an integer. Once an isolating interval is narrower than
//! `1/L` it holds at most one such candidate, which is checked exactly. No
//! integer factoring is needed.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Poly, RationalPoint};

/// Rational roots with multiplicities, plus the square-free part of what is
/// left after dividing them out (monic; `1` when nothing remains).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub roots: Vec<(RationalPoint, u32)>,
    pub remainder: Poly,
}

impl RootReport {
    pub fn points(&self) -> impl Iterator<Item = &RationalPoint> {
        self.roots.iter().map(|(x, _)| x)
    }
}

pub fn rational_roots(p: &Poly) -> Result<RootReport, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    // Real roots of p are the common real roots of its real and imaginary parts.
    let carrier = if p.is_real() { p.clone() } else { Poly::gcd(&p.real_part(), &p.imag_part()) };
    let candidates = if carrier.is_constant() { Vec::new() } else { real_rational_roots(&to_qpoly(&carrier.square_free_part())) };

    let mut roots = Vec::new();
    let mut rest = p.clone();
    for r in candidates {
        let (mult, quotient) = rest.split_root(&r).expect("nonzero");
        if mult > 0 {
            roots.push((RationalPoint::new(r), mult));
            rest = quotient;
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RootReport { roots, remainder: rest.square_free_part() })
}

type QPoly = Vec<BigRational>;
/// Integer polynomial, lowest degree first; only its signs are used.
type ZPoly = Vec<BigInt>;

fn to_qpoly(p: &Poly) -> QPoly {
    p.coeffs().iter().map(|c| c.re().clone()).collect()
}

fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Primitive integer polynomial that is a positive multiple of `p`.
fn primitive(p: &[BigRational]) -> ZPoly {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: ZPoly = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Sign of `p(a/b)`, computed as the sign of `b^d p(a/b)` with `b > 0`.
fn sign_at(p: &[BigInt], x: &BigRational) -> Sign {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut scale = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * a + c * &scale;
        scale *= b;
    }
    acc.sign()
}

fn derivative(p: &[BigRational]) -> QPoly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect())
}

fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while r.len() > db {
        let top = r.last().unwrap().clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        let factor = &top / lc;
        let shift = r.len() - 1 - db;
        for (j, bc) in b.iter().enumerate() {
            let v = &r[shift + j] - &factor * bc;
            r[shift + j] = v;
        }
        r.pop();
    }
    trim(r)
}

/// Sturm sequence with every member rescaled to a primitive integer polynomial.
fn sturm_chain(p: &[BigRational]) -> Vec<ZPoly> {
    let mut chain = vec![primitive(p), primitive(&derivative(p))];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        if chain[n - 1].len() == 1 {
            break;
        }
        let r: QPoly = rem(&to_q(&chain[n - 2]), &to_q(&chain[n - 1])).into_iter().map(|c| -c).collect();
        chain.push(primitive(&r));
    }
    chain
}

fn sign_changes(chain: &[ZPoly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut last = None;
    for p in chain {
        let s = sign_at(p, x);
        if s == Sign::NoSign {
            continue;
        }
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    changes
}

/// Distinct rational roots of a square-free polynomial with rational coefficients, ascending.
fn real_rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let poly = primitive(&p);
    let lead = BigRational::from_integer(poly.last().unwrap().abs());
    // Cauchy bound: every root satisfies |r| < 1 + max |a_i / a_n|.
    let bound = BigRational::one()
        + poly.iter().map(|c| BigRational::from_integer(c.abs()) / &lead).max().unwrap();
    let chain = sturm_chain(&p);
    let mut found = Vec::new();
    // the count V(lo) - V(hi) is the number of roots in (lo, hi]
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 {
            // small denominators show up long before the 1/L width test
            let s = simplest_between(&lo, &hi);
            if s > lo && sign_at(&poly, &s) == Sign::NoSign {
                found.push(s);
                continue;
            }
            if (&hi - &lo) * &lead < BigRational::one() {
                let candidate = (&hi * &lead).floor() / &lead;
                if candidate > lo && sign_at(&poly, &candidate) == Sign::NoSign {
                    found.push(candidate);
                }
                continue;
            }
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    found.sort();
    found
}

/// The rational with the smallest denominator in `[lo, hi]`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let up = lo.ceil();
    if &up <= hi {
        return up;
    }
    let n = lo.floor();
    let tail = simplest_between(&(hi - &n).recip(), &(lo - &n).recip());
    n + tail.recip()
}

/// Number of distinct real roots in the closed interval `[lo, hi]`.
pub fn count_real_roots(p: &Poly, lo: &RationalPoint, hi: &RationalPoint) -> Result<usize, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let carrier = if p.is_real() { p.clone() } else { Poly::gcd(&p.real_part(), &p.imag_part()) };
    if carrier.is_constant() || lo > hi {
        return Ok(0);
    }
    let q = to_qpoly(&carrier.square_free_part());
    let chain = sturm_chain(&q);
    let at_lo = usize::from(sign_at(&chain[0], lo.value()) == Sign::NoSign);
    // Sturm counts roots in the half-open (lo, hi]
    Ok(sign_changes(&chain, lo.value()) - sign_changes(&chain, hi.value()) + at_lo)
}

/// Convenience for callers that only need the root values.
pub fn real_roots_in(p: &Poly, lo: &RationalPoint, hi: &RationalPoint) -> Result<Vec<RationalPoint>, ArithError> {
    Ok(rational_roots(p)?.roots.into_iter().map(|(x, _)| x).filter(|x| x >= lo && x <= hi).collect())
}
