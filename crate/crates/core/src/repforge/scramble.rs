//! Seeded rational orthogonal conjugations.
//!
//! A scrambling matrix is a product of Cayley transforms of sparse skew
//! matrices, each supported on a random perfect matching of the coordinates.
//! Each factor is a set of independent plane rotations with small rational
//! entries; `⌈log₂ n⌉ + 1` rounds of random matchings mix every coordinate
//! with every other while keeping entry heights modest.

use alloc::vec::Vec;

use crate::exactla::{cayley_orthogonal, Mat, Rational, Subspace};
use crate::rng::{self, Rng};
use crate::Error;

// Each slope t gives a rotation with cosine (1−t²)/(1+t²) and sine 2t/(1+t²).
// Round i uses slope i. The hypotenuses 5, 13, 17, 29, 37, 41 are distinct
// primes, so two paths through the rounds never carry products of equal size
// and opposite sign, which a single repeated angle does (c·s against s·c).
const SLOPES: [(i64, i64); 6] = [(1, 2), (2, 3), (1, 4), (2, 5), (1, 6), (4, 5)];

fn shuffled(n: usize, r: &mut Rng) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng::int_in(r, 0, i as i64) as usize;
        idx.swap(i, j);
    }
    idx
}

/// A skew matrix supported on a random perfect (or near-perfect) matching,
/// with entries `±slope`.
pub fn matching_skew(n: usize, slope: (i64, i64), r: &mut Rng) -> Mat {
    let idx = shuffled(n, r);
    let mut s = Mat::zeros(n, n);
    let (num, den) = slope;
    for pair in idx.chunks_exact(2) {
        let sign = if rng::int_in(r, 0, 1) == 0 { 1 } else { -1 };
        let v = Rational::new(sign * num, den);
        s.set(pair[0], pair[1], v.clone());
        s.set(pair[1], pair[0], -&v);
    }
    s
}

/// A dense random skew matrix with small integer entries.
pub fn dense_skew(n: usize, seed: u64) -> Mat {
    let mut r = rng::seeded(seed);
    let mut s = Mat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = Rational::from_int(rng::int_in(&mut r, -3, 3));
            s.set(i, j, v.clone());
            s.set(j, i, -&v);
        }
    }
    s
}

fn rounds(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (usize::BITS - (n - 1).leading_zeros()) as usize + 1
}

/// The orthogonal matrix used by [`scramble`] for this seed.
pub fn scramble_matrix(n: usize, seed: u64) -> Mat {
    let mut r = rng::seeded(seed);
    let mut q = Mat::identity(n);
    for i in 0..rounds(n) {
        let s = matching_skew(n, SLOPES[i % SLOPES.len()], &mut r);
        q = q.mul(&cayley_orthogonal(&s).expect("skew by construction"));
    }
    q
}

/// `{Rᵀ a R : a ∈ pi}` for a seeded rational orthogonal `R`; returns `R` too.
pub fn scramble(pi: &Subspace<Rational>, seed: u64) -> Result<(Subspace<Rational>, Mat), Error> {
    let (n, c) = pi.ambient();
    if n != c {
        return Err(Error::Structure(
            "scrambling needs a square ambient space".into(),
        ));
    }
    let r = scramble_matrix(n, seed);
    Ok((pi.conjugate_by(&r)?, r))
}
