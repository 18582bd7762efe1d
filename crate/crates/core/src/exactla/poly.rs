//! Univariate rational polynomials: minimal polynomials of matrices and
//! exact isolation of rational roots.
//!
//! Polynomials are coefficient vectors, lowest degree first.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::echelon::solve_combination;
use super::matrix::Mat;
use super::scalar::Rational;
use crate::Error;

pub type Poly = Vec<Rational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &Poly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn derivative(p: &Poly) -> Poly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &Rational::from_int(i as i64))
        .collect()
}

/// Remainder of `a` modulo `b`; `b` must be nonzero.
pub fn rem(a: &Poly, b: &Poly) -> Poly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].recip().expect("nonzero");
    let mut r = a.clone();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] * &lead;
        for i in 0..=db {
            r[dr - db + i] = &r[dr - db + i] - &(&q * &b[i]);
        }
        trim(&mut r);
    }
    r
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while degree(&b).is_some() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Minimal polynomial of a square matrix, monic.
pub fn minimal_polynomial(a: &Mat) -> Poly {
    let n = a.rows();
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    let mut cur = Mat::identity(n);
    loop {
        let v = cur.to_coords();
        if let Some(c) = solve_combination(&powers, &v) {
            // a^k = Σ c_i a^i, so x^k − Σ c_i x^i annihilates a.
            let mut p: Poly = c.iter().map(|x| -x).collect();
            p.push(Rational::one());
            return p;
        }
        powers.push(v);
        cur = cur.mul(a);
    }
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let k = seq.len();
        if degree(&seq[k - 1]).is_none_or(|d| d == 0) {
            break;
        }
        let r = rem(&seq[k - 2], &seq[k - 1]);
        if degree(&r).is_none() {
            break;
        }
        seq.push(r.iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for p in seq {
        let s = eval(p, x).signum();
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// The distinct roots of `p`, ascending, provided they are all rational and
/// `p` splits into distinct linear factors. Otherwise fails with
/// [`Error::IrrationalSpectrum`].
pub fn rational_roots_split(p: &Poly) -> Result<Vec<Rational>, Error> {
    let mut p = p.clone();
    trim(&mut p);
    let Some(k) = degree(&p) else {
        return Err(Error::Domain(
            "zero polynomial has no finite root set".into(),
        ));
    };
    if k == 0 {
        return Ok(Vec::new());
    }
    if degree(&gcd(&p, &derivative(&p))).is_some_and(|d| d > 0) {
        return Err(Error::IrrationalSpectrum);
    }
    // Clear denominators to get a primitive integer polynomial g, then
    // substitute x = y / g_k so the roots of the monic h(y) are g_k·x. A
    // rational root of g becomes an integer root of h.
    let mut den = BigInt::one();
    for c in &p {
        den = den.lcm(&c.denom());
    }
    let g: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let lead = g[k].clone();
    // The coefficient of y^i in lead^(k-1)·g(y/lead) is g_i·lead^(k-1-i).
    let mut h = vec![BigInt::zero(); k + 1];
    let mut lp = BigInt::one();
    for i in (0..k).rev() {
        h[i] = &g[i] * &lp;
        lp *= &lead;
    }
    h[k] = BigInt::one();
    let hq: Poly = h.iter().cloned().map(Rational::from).collect();

    // Cauchy bound: every root satisfies |y| < 1 + max |h_i|.
    let bound = h[..k].iter().map(|c| c.abs()).max().unwrap_or_default() + 1u32;
    let seq = sturm_sequence(&hq);
    let lo = Rational::from(-bound.clone());
    let hi = Rational::from(bound);
    let total = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
    let mut roots = Vec::with_capacity(total);
    isolate(&seq, &hq, lo, hi, total, &mut roots)?;
    if roots.len() != k {
        return Err(Error::IrrationalSpectrum);
    }
    let scale = Rational::from(lead).recip()?;
    let mut out: Vec<Rational> = roots.iter().map(|y| y * &scale).collect();
    out.sort();
    Ok(out)
}

// Integer roots of h in (lo, hi], knowing `count` distinct roots lie there.
fn isolate(
    seq: &[Poly],
    h: &Poly,
    lo: Rational,
    hi: Rational,
    count: usize,
    out: &mut Vec<Rational>,
) -> Result<(), Error> {
    if count == 0 {
        return Ok(());
    }
    let width = &hi - &lo;
    if width.is_one() {
        if count == 1 && eval(h, &hi).is_zero() {
            out.push(hi);
            return Ok(());
        }
        return Err(Error::IrrationalSpectrum);
    }
    let mid = Rational::from((&(&lo + &hi) * &Rational::new(1, 2)).floor());
    let left = sign_changes(seq, &lo) - sign_changes(seq, &mid);
    isolate(seq, h, lo, mid.clone(), left, out)?;
    isolate(seq, h, mid, hi, count - left, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[i64]) -> Poly {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn minimal_polynomial_of_diagonal() {
        let a = Mat::diag(&[Rational::one(), Rational::one(), Rational::from_int(2)]);
        // (x-1)(x-2) = x² − 3x + 2
        assert_eq!(minimal_polynomial(&a), p(&[2, -3, 1]));
        assert_eq!(minimal_polynomial(&Mat::identity(4)), p(&[-1, 1]));
    }

    #[test]
    fn roots_of_split_polynomials() {
        assert_eq!(rational_roots_split(&p(&[2, -3, 1])).unwrap(), p(&[1, 2]));
        // 6x² − 5x + 1 = (2x−1)(3x−1)
        let r = rational_roots_split(&p(&[1, -5, 6])).unwrap();
        assert_eq!(r, vec![Rational::new(1, 3), Rational::new(1, 2)]);
        assert_eq!(rational_roots_split(&p(&[0, 1])).unwrap(), p(&[0]));
        let wide = rational_roots_split(&p(&[-1000, 1])).unwrap();
        assert_eq!(wide, p(&[1000]));
    }

    #[test]
    fn irrational_and_repeated_roots_rejected() {
        assert_eq!(
            rational_roots_split(&p(&[-1, -1, 1])),
            Err(Error::IrrationalSpectrum)
        );
        assert_eq!(
            rational_roots_split(&p(&[1, -2, 1])),
            Err(Error::IrrationalSpectrum)
        );
        assert_eq!(
            rational_roots_split(&p(&[1, 0, 1])),
            Err(Error::IrrationalSpectrum)
        );
        // (x−1)(x²−2): one rational root is not enough
        assert_eq!(
            rational_roots_split(&p(&[2, -2, -1, 1])),
            Err(Error::IrrationalSpectrum)
        );
    }
}
