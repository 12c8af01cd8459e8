//! Rational roots of rational polynomials.
//!
//! Candidates are located by Sturm-sequence bisection rather than by
//! enumerating divisors of the constant and leading coefficients: enumerating
//! divisors needs integer factorization, which blows up on the large
//! denominators produced by random test matrices. A root `a/b` of a primitive
//! integer polynomial has `b | lc`, so two distinct rational roots are at
//! least `1/lc^2` apart; once an isolating interval is narrower than that, the
//! simplest rational inside it is the only possible rational root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinAlgError, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct rational roots in increasing order, with multiplicity.
    pub roots: Vec<(Rational, usize)>,
    /// True iff the linear factors account for the whole polynomial.
    pub fully_split: bool,
}

pub fn rational_roots(p: &Poly) -> Result<RationalRoots, LinAlgError> {
    if p.is_zero() {
        return Err(LinAlgError::ZeroPolynomial);
    }
    let mut distinct = Vec::new();
    let mut work = p.squarefree_part()?;
    'restart: while work.degree().unwrap_or(0) > 0 {
        let sturm = sturm_sequence(&work);
        let q = primitive_leading(&work);
        let width = Rational::new(BigInt::one(), q.clone() * q * 2u32);
        let bound = cauchy_bound(&work);
        let lo = -bound.clone();
        for end in [&lo, &bound] {
            if work.eval(end).is_zero() {
                distinct.push(end.clone());
                work = work.div_rem(&Poly::linear_factor(end)).0;
                continue 'restart;
            }
        }
        let mut stack = vec![(lo, bound)];
        while let Some((a, b)) = stack.pop() {
            let count = variations(&sturm, &a) - variations(&sturm, &b);
            if count == 0 {
                continue;
            }
            if count == 1 && &b - &a < width {
                let s = simplest_in(&a, &b);
                if work.eval(&s).is_zero() {
                    distinct.push(s);
                }
                continue;
            }
            let mid = (&a + &b) / Rational::from_integer(2.into());
            if work.eval(&mid).is_zero() {
                distinct.push(mid.clone());
                work = work.div_rem(&Poly::linear_factor(&mid)).0;
                continue 'restart;
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        break;
    }
    distinct.sort();
    let mut roots = Vec::with_capacity(distinct.len());
    let mut rest = p.clone();
    for r in distinct {
        let lin = Poly::linear_factor(&r);
        let mut mult = 0;
        loop {
            let (qt, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = qt;
            mult += 1;
        }
        roots.push((r, mult));
    }
    let fully_split = rest.degree() == Some(0);
    Ok(RationalRoots { roots, fully_split })
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq[seq.len() - 1].is_zero() {
        let n = seq.len();
        let r = -&seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(seq: &[Poly], x: &Rational) -> i64 {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for s in seq {
        let v = s.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// |leading coefficient| of the primitive integer multiple of `p`.
fn primitive_leading(p: &Poly) -> BigInt {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().expect("nonzero polynomial") / g).abs()
}

/// Strict bound: every real root lies in `(-B, B)`.
fn cauchy_bound(p: &Poly) -> Rational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let n = p.coeffs().len() - 1;
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one() + Rational::one()
}

/// The rational with least denominator (then least |numerator|) in `[a, b]`.
fn simplest_in(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a <= b);
    if !a.is_positive() && !b.is_negative() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_in(&-b, &-a);
    }
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let ce = &fl + Rational::one();
    if &ce <= b {
        return ce;
    }
    let inner = simplest_in(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}
