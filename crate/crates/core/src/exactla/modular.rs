//! Linear algebra over prime fields `𝔽_p`, for dimension counts on inputs
//! whose exact echelon forms have very large entries.
//!
//! Reducing rational data modulo `p` can only lose rank: the rank of the
//! reductions of a family of rational vectors is at most its rank over `ℚ`,
//! with equality unless `p` divides every maximal nonvanishing minor.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::echelon::Echelon;
use super::matrix::Mat;
use super::scalar::Rational;

/// Large primes below `2⁶³`, used in order.
pub const PRIMES: [u64; 3] = [
    4_611_686_018_427_387_847,
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_817,
];

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    pow_mod(a, p - 2, p)
}

/// Arithmetic modulo a fixed odd prime `p < 2⁶²`, with Barrett reduction in
/// place of 128-bit division.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    pub p: u64,
    mu: u64,
    bits: u32,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < 1 << 62, "modulus out of range");
        let bits = 64 - p.leading_zeros();
        let mu = ((1u128 << (2 * bits)) / p as u128) as u64;
        Zp { p, mu, bits }
    }

    /// `x mod p` for `x < p²`.
    #[inline]
    pub fn reduce_wide(self, x: u128) -> u64 {
        let q =
            (((x >> (self.bits - 1)) as u64 as u128 * self.mu as u128) >> (self.bits + 1)) as u64;
        let mut r = (x as u64).wrapping_sub(q.wrapping_mul(self.p));
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce_wide(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.p)
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        sub_mod(a, b, self.p)
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

/// `x mod p`, or `None` when `p` divides the denominator.
pub fn reduce(x: &Rational, p: u64) -> Option<u64> {
    let (n, d) = x.residue_parts(p)?;
    Some(if d == 1 {
        n
    } else {
        mul_mod(n, inv_mod(d, p), p)
    })
}

/// A square matrix over `𝔽_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMat {
    pub n: usize,
    pub f: Zp,
    pub data: Vec<u64>,
}

impl ModMat {
    pub fn zeros(n: usize, p: u64) -> Self {
        ModMat {
            n,
            f: Zp::new(p),
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_mat(m: &Mat, p: u64) -> Option<Self> {
        assert!(m.is_square());
        let data = m
            .entries()
            .iter()
            .map(|x| reduce(x, p))
            .collect::<Option<Vec<_>>>()?;
        Some(ModMat {
            n: m.rows(),
            f: Zp::new(p),
            data,
        })
    }

    fn with_data(&self, data: Vec<u64>) -> ModMat {
        ModMat {
            n: self.n,
            f: self.f,
            data,
        }
    }

    pub fn mul(&self, other: &ModMat) -> ModMat {
        let (n, f) = (self.n, self.f);
        // Reduced products are below 2⁶³, so a u128 row accumulator cannot
        // overflow for any realistic n.
        let mut out = vec![0u128; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let acc = &mut out[i * n..(i + 1) * n];
                for (o, &b) in acc.iter_mut().zip(row) {
                    *o += f.mul(a, b) as u128;
                }
            }
        }
        self.with_data(out.into_iter().map(|x| (x % f.p as u128) as u64).collect())
    }

    pub fn transpose(&self) -> ModMat {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        self.with_data(data)
    }

    pub fn add(&self, other: &ModMat) -> ModMat {
        let f = self.f;
        self.with_data(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    /// `self·x − x·self`.
    pub fn commutator(&self, x: &ModMat) -> ModMat {
        let a = self.mul(x);
        let b = x.mul(self);
        let f = self.f;
        self.with_data(
            a.data
                .iter()
                .zip(&b.data)
                .map(|(&u, &v)| f.sub(u, v))
                .collect(),
        )
    }

    pub fn axpy(&mut self, c: u64, x: &ModMat) {
        let f = self.f;
        for (s, &v) in self.data.iter_mut().zip(&x.data) {
            *s = f.add(*s, f.mul(c, v));
        }
    }
}

/// Reduced row echelon form over `𝔽_p`, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    len: usize,
    f: Zp,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModEchelon {
    pub fn new(len: usize, p: u64) -> Self {
        ModEchelon {
            len,
            f: Zp::new(p),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    fn reduce(&self, v: &mut [u64]) {
        let zp = self.f;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(c) {
                if r != 0 {
                    *x = zp.sub(*x, zp.mul(f, r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let zp = self.f;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = zp.inv(w[c]);
        for x in w.iter_mut().skip(c) {
            *x = zp.mul(*x, inv);
        }
        for row in &mut self.rows {
            let f = row[c];
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&w).skip(c) {
                    *x = zp.sub(*x, zp.mul(f, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, w);
        self.pivots.insert(at, c);
        true
    }
}

/// Basis of the kernel of `c ↦ Σ cᵢ imagesᵢ` over `𝔽_p`.
pub fn kernel_mod(images: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = images.len();
    let Some(len) = images.first().map(Vec::len) else {
        return Vec::new();
    };
    // Row-reduce [images | I] and read off the rows whose image part vanished.
    let mut ech = ModEchelon::new(len + k, p);
    let mut kernel = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        v.extend((0..k).map(|j| (i == j) as u64));
        let mut w = v.clone();
        ech.reduce(&mut w);
        if w[..len].iter().all(|&x| x == 0) {
            kernel.push(w[len..].to_vec());
        } else {
            ech.insert(&v);
        }
    }
    kernel
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2⁶²`, in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 62) - 1;
    core::iter::from_fn(move || {
        while !is_prime_u64(next) {
            next -= 2;
        }
        let p = next;
        next -= 2;
        Some(p)
    })
}

pub(crate) fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.magnitude().iter_u64_digits().rev().fold(0u64, |r, d| {
        (((r as u128) << 64 | d as u128) % p as u128) as u64
    });
    if x.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// The fraction `a/b` with `a ≡ u b (mod m)` and `|a|, b ≤ √(m/2)`, if any.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Rational::from_bigints(r1, t1).ok()
}

// Echelon form of integer rows modulo p, with the rank and pivots.
fn rref_mod(rows: &[Vec<BigInt>], len: usize, p: u64) -> ModEchelon {
    let mut e = ModEchelon::new(len, p);
    for r in rows {
        let v: Vec<u64> = r.iter().map(|x| bigint_mod(x, p)).collect();
        e.insert(&v);
        if e.is_full() {
            break;
        }
    }
    e
}

/// Reduced row echelon form over `ℚ` of integer vectors, by Chinese
/// remaindering echelon forms modulo many primes. The reconstructed rows are
/// checked exactly against the input before they are returned.
pub fn rref_multimodular(rows: &[Vec<BigInt>], len: usize) -> Vec<Vec<Rational>> {
    let mut primes = primes();
    // Residues of the non-pivot entries, combined so far, with their modulus.
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt)> = None;
    let mut since_try = 0usize;
    let mut batch = 1usize;
    loop {
        let p = primes.next().expect("infinitely many primes");
        let e = rref_mod(rows, len, p);
        let better = match &best {
            None => true,
            Some((piv, _, _)) => {
                e.pivots.len() > piv.len() || (e.pivots.len() == piv.len() && e.pivots < *piv)
            }
        };
        let pb = BigInt::from(p);
        if better {
            let vals = e
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            best = Some((e.pivots.clone(), vals, pb));
            since_try = 0;
            batch = 1;
        } else if e.pivots == best.as_ref().expect("set above").0 {
            let (_, vals, m) = best.as_mut().expect("set above");
            // Garner step: x ≡ old (mod m), x ≡ new (mod p).
            let zp = e.f;
            let m_inv = zp.inv(bigint_mod(m, p));
            for (acc, r) in vals.iter_mut().zip(&e.rows) {
                for (a, &x) in acc.iter_mut().zip(r) {
                    let t = zp.mul(zp.sub(x, bigint_mod(a, p)), m_inv);
                    if t != 0 {
                        *a += &*m * t;
                    }
                }
            }
            *m *= &pb;
            since_try += 1;
        } else {
            // Unlucky prime.
            continue;
        }
        if since_try < batch {
            continue;
        }
        since_try = 0;
        batch *= 2;
        let (pivots, vals, m) = best.as_ref().expect("set above");
        if let Some(out) = reconstruct(pivots, vals, m) {
            if spans_rows(&out, rows, len) {
                return out;
            }
        }
    }
}

fn reconstruct(pivots: &[usize], vals: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<Rational>>> {
    let bound = (m >> 1u32).sqrt();
    // Entries of an echelon form share most of their denominator, so try the
    // running one before a full reconstruction.
    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(vals.len());
    for (r, &c) in vals.iter().zip(pivots) {
        let mut row = vec![Rational::zero(); r.len()];
        row[c] = Rational::one();
        for (j, x) in r.iter().enumerate().skip(c + 1) {
            if x.is_zero() {
                continue;
            }
            let mut a = (x * &den).mod_floor(m);
            if a > (m >> 1u32) {
                a -= m;
            }
            row[j] = if a.abs() <= bound {
                Rational::from_bigints(a, den.clone()).expect("nonzero denominator")
            } else {
                let q = rational_reconstruct(x, m)?;
                den = den.lcm(&q.denom());
                if den > bound {
                    return None;
                }
                q
            };
        }
        out.push(row);
    }
    Some(out)
}

// The count of `out` is a rank modulo p, at most the true rank, so
// containing every input certifies equal spans.
fn spans_rows(out: &[Vec<Rational>], rows: &[Vec<BigInt>], len: usize) -> bool {
    let mut e = Echelon::new(len);
    e.extend_reduced_unchecked(out);
    let t = e.member_test();
    rows.iter().all(|v| t.contains_int(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{kernel, Echelon};
    use proptest::prelude::*;

    #[test]
    fn reduction_respects_arithmetic() {
        let p = PRIMES[0];
        let a = Rational::new(-7, 3);
        let b = Rational::new(5, 11);
        let ra = reduce(&a, p).unwrap();
        let rb = reduce(&b, p).unwrap();
        assert_eq!(reduce(&(&a * &b), p).unwrap(), mul_mod(ra, rb, p));
        assert_eq!(reduce(&(&a + &b), p).unwrap(), add_mod(ra, rb, p));
        assert_eq!(reduce(&Rational::new(1, 7), 7), None);
        let big: Rational = "123456789012345678901234567890/7".parse().unwrap();
        let rbig = reduce(&big, p).unwrap();
        assert_eq!(
            mul_mod(rbig, 7, p),
            reduce(&"123456789012345678901234567890".parse().unwrap(), p).unwrap()
        );
    }

    #[test]
    fn generated_primes_and_reconstruction() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < 1 << 62));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(PRIMES.iter().all(|&p| is_prime_u64(p)));
        assert!(!is_prime_u64(561) && !is_prime_u64(1 << 61) && is_prime_u64((1 << 61) - 1));
        let m = BigInt::from(ps[0]) * BigInt::from(ps[1]);
        let x = Rational::new(-123_456_789, 987_654_321);
        let u = BigInt::from(reduce(&x, ps[0]).unwrap())
            * BigInt::from(ps[1])
            * BigInt::from(inv_mod(ps[1] % ps[0], ps[0]))
            + BigInt::from(reduce(&x, ps[1]).unwrap())
                * BigInt::from(ps[0])
                * BigInt::from(inv_mod(ps[0] % ps[1], ps[1]));
        assert_eq!(rational_reconstruct(&(u % &m), &m), Some(x));
    }

    proptest! {
        #[test]
        fn barrett_matches_division(a in any::<u64>(), b in any::<u64>(), k in 0usize..3) {
            let p = PRIMES[k];
            let f = Zp::new(p);
            let (a, b) = (a % p, b % p);
            prop_assert_eq!(f.mul(a, b), ((a as u128 * b as u128) % p as u128) as u64);
            prop_assert_eq!(f.mul(p - 1, p - 1), 1);
        }

        #[test]
        fn rank_matches_exact(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 1..7)) {
            let p = PRIMES[1];
            let exact = Echelon::from_vectors(6, rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()));
            let mut m = ModEchelon::new(6, p);
            for r in &rows {
                let v: Vec<u64> = r.iter().map(|&x| reduce(&Rational::from_int(x), p).unwrap()).collect();
                m.insert(&v);
            }
            prop_assert_eq!(m.rank(), exact.rank());
            let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
            let mv: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| reduce(&Rational::from_int(x), p).unwrap()).collect()).collect();
            prop_assert_eq!(kernel_mod(&mv, p).len(), kernel(&q, 6).len());
        }
    }
}
