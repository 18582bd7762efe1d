//! Incremental reduced row-echelon form over the rationals.
//!
//! Rows are kept sparse and sorted by pivot column. Because the form is
//! fully reduced, it is canonical: two echelons span the same space exactly
//! when their rows are identical.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modular::{bigint_mod, rref_multimodular, Zp};
use super::scalar::Rational;

// A nonzero rational vector scaled to a primitive integer vector.
pub(crate) fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        den = den.lcm(&x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_one() || g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SparseRow {
    // Sorted column indices; idx[0] is the pivot and val[0] is 1.
    idx: Vec<usize>,
    val: Vec<Rational>,
}

impl SparseRow {
    fn pivot(&self) -> usize {
        self.idx[0]
    }

    fn get(&self, col: usize) -> Option<&Rational> {
        self.idx.binary_search(&col).ok().map(|k| &self.val[k])
    }

    fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (&j, x) in self.idx.iter().zip(&self.val) {
            v[j] = x.clone();
        }
        v
    }

    /// `self -= c * other`, dropping cancelled entries.
    fn sub_scaled(&mut self, c: &Rational, other: &SparseRow) {
        let mut idx = Vec::with_capacity(self.idx.len() + other.idx.len());
        let mut val = Vec::with_capacity(idx.capacity());
        let (mut a, mut b) = (0, 0);
        while a < self.idx.len() || b < other.idx.len() {
            let ja = self.idx.get(a).copied().unwrap_or(usize::MAX);
            let jb = other.idx.get(b).copied().unwrap_or(usize::MAX);
            if ja < jb {
                idx.push(ja);
                val.push(core::mem::take(&mut self.val[a]));
                a += 1;
            } else if jb < ja {
                idx.push(jb);
                val.push(-&(c * &other.val[b]));
                b += 1;
            } else {
                let x = &self.val[a] - &(c * &other.val[b]);
                if !x.is_zero() {
                    idx.push(ja);
                    val.push(x);
                }
                a += 1;
                b += 1;
            }
        }
        self.idx = idx;
        self.val = val;
    }
}

/// The rows of an [`Echelon`] cleared to integers, for testing many vectors
/// for membership without rational arithmetic in the inner loop.
#[derive(Clone, Debug)]
pub struct MemberTest {
    ncols: usize,
    pivots: Vec<usize>,
    // Row i scaled by `common`: sparse integer entries.
    rows: Vec<(Vec<usize>, Vec<BigInt>)>,
    common: BigInt,
}

impl MemberTest {
    fn from_rows<'a>(
        ncols: usize,
        rows: impl Iterator<Item = (&'a [usize], &'a [Rational])>,
    ) -> Self {
        let rows: Vec<(&[usize], &[Rational])> = rows.collect();
        let mut common = BigInt::one();
        for (_, val) in &rows {
            for x in val.iter().filter(|x| !x.is_integer()) {
                common = common.lcm(&x.denom());
            }
        }
        let pivots = rows.iter().map(|(idx, _)| idx[0]).collect();
        let rows = rows
            .iter()
            .map(|(idx, val)| {
                (
                    idx.to_vec(),
                    val.iter()
                        .map(|x| x.numer() * (&common / x.denom()))
                        .collect(),
                )
            })
            .collect();
        MemberTest {
            ncols,
            pivots,
            rows,
            common,
        }
    }

    /// Membership of an integer vector.
    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        let mut acc = vec![BigInt::zero(); self.ncols];
        for ((idx, val), &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            for (&j, x) in idx.iter().zip(val) {
                acc[j] += &v[c] * x;
            }
        }
        acc.iter().zip(v).all(|(a, x)| *a == x * &self.common)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length");
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        self.contains_int(&primitive_integer(v))
    }

    /// Bit length of a bound on the entries of `common·v − Σ v[pivot]·row`
    /// for integer vectors `v` whose entries have at most `v_bits` bits.
    /// The vector is a member exactly when this residual vanishes.
    pub fn residual_bits(&self, v_bits: u64) -> u64 {
        let widest = self
            .rows
            .iter()
            .flat_map(|(_, val)| val.iter().map(BigInt::bits))
            .max()
            .unwrap_or(0);
        let terms = self.rows.len() as u64 + 1;
        v_bits + widest.max(self.common.bits()) + (u64::BITS - terms.leading_zeros()) as u64
    }

    /// The same test reduced modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> ModMemberTest {
        ModMemberTest {
            f: Zp::new(p),
            pivots: self.pivots.clone(),
            rows: self
                .rows
                .iter()
                .map(|(idx, val)| (idx.clone(), val.iter().map(|x| bigint_mod(x, p)).collect()))
                .collect(),
            common: bigint_mod(&self.common, p),
        }
    }
}

/// A [`MemberTest`] modulo a prime. A nonvanishing residual proves that an
/// integer vector is not a member; vanishing modulo enough primes, as
/// counted by [`MemberTest::residual_bits`], proves that it is.
#[derive(Clone, Debug)]
pub struct ModMemberTest {
    f: Zp,
    pivots: Vec<usize>,
    rows: Vec<(Vec<usize>, Vec<u64>)>,
    common: u64,
}

impl ModMemberTest {
    pub fn residual_vanishes(&self, v: &[u64]) -> bool {
        let f = self.f;
        let mut acc = vec![0u64; v.len()];
        for ((idx, val), &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x == 0 {
                continue;
            }
            for (&j, &r) in idx.iter().zip(val) {
                acc[j] = f.add(acc[j], f.mul(x, r));
            }
        }
        acc.iter().zip(v).all(|(&a, &x)| a == f.mul(x, self.common))
    }
}

/// A canonical reduced row-echelon basis of a subspace of `ℚ^ncols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Echelon form of the span of `vs`. Large batches go through
    /// [`rref_multimodular`], which avoids the coefficient growth of
    /// eliminating over `ℚ` directly.
    pub fn from_vectors<I: IntoIterator<Item = Vec<Rational>>>(ncols: usize, vs: I) -> Self {
        let vs: Vec<Vec<Rational>> = vs
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if vs.len() < 4 {
            let mut e = Echelon::new(ncols);
            for v in vs {
                e.insert(v);
            }
            return e;
        }
        let ints: Vec<Vec<BigInt>> = vs
            .iter()
            .map(|v| {
                assert_eq!(v.len(), ncols, "vector length");
                primitive_integer(v)
            })
            .collect();
        let mut e = Echelon::new(ncols);
        e.extend_reduced_unchecked(&rref_multimodular(&ints, ncols));
        e
    }

    /// The whole space `ℚ^n`.
    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| SparseRow {
                idx: vec![i],
                val: vec![Rational::one()],
            })
            .collect();
        Echelon { ncols: n, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(SparseRow::pivot).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.rows[i].to_dense(self.ncols)
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    /// Sparse view of row `i` as `(column, value)` pairs.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.rows[i].idx.iter().copied().zip(&self.rows[i].val)
    }

    /// Subtract from `v` its projection along the pivot columns, leaving the
    /// residual that is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &mut [Rational]) {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        for r in &self.rows {
            let p = r.pivot();
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (&j, x) in r.idx.iter().zip(&r.val) {
                v[j] = &v[j] - &(&c * x);
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is outside
    /// the span. In reduced form these are simply the pivot entries of `v`.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|r| v[r.pivot()].clone()).collect())
    }

    // Append rows already in reduced form with increasing pivots.
    pub(crate) fn extend_reduced_unchecked(&mut self, rows: &[Vec<Rational>]) {
        for row in rows {
            let (idx, val) = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .unzip();
            self.rows.push(SparseRow { idx, val });
        }
    }

    pub fn member_test(&self) -> MemberTest {
        MemberTest::from_rows(
            self.ncols,
            self.rows.iter().map(|r| (&r.idx[..], &r.val[..])),
        )
    }

    /// Insert a vector; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let Some(q) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let s = v[q].recip().expect("nonzero pivot");
        let mut idx = Vec::new();
        let mut val = Vec::new();
        for (j, x) in v.into_iter().enumerate().skip(q) {
            if !x.is_zero() {
                idx.push(j);
                val.push(&x * &s);
            }
        }
        let new = SparseRow { idx, val };
        for r in &mut self.rows {
            if let Some(c) = r.get(q).cloned() {
                r.sub_scaled(&c, &new);
            }
        }
        let pos = self.rows.partition_point(|r| r.pivot() < q);
        self.rows.insert(pos, new);
        true
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column,
    /// in increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&f| !is_pivot[f]) {
            let mut x = vec![Rational::zero(); self.ncols];
            x[f] = Rational::one();
            for r in &self.rows {
                if let Some(c) = r.get(f) {
                    x[r.pivot()] = -c;
                }
            }
            out.push(x);
        }
        out
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Echelon) -> Echelon {
        assert_eq!(self.ncols, other.ncols, "ambient mismatch");
        // x in self ∩ other iff x = Σ a_i s_i and x reduces to zero against
        // other; the map a ↦ residual(Σ a_i s_i) is linear, so solve for its
        // kernel.
        let residuals: Vec<Vec<Rational>> = (0..self.rank())
            .map(|i| {
                let mut v = self.row(i);
                other.reduce(&mut v);
                v
            })
            .collect();
        let ker = kernel(&residuals, self.ncols);
        let mut out = Echelon::new(self.ncols);
        for a in ker {
            let mut v = vec![Rational::zero(); self.ncols];
            for (i, c) in a.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, x) in self.row_entries(i) {
                    v[j] = &v[j] + &(c * x);
                }
            }
            out.insert(v);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        (0..self.rank()).all(|i| other.contains(&self.row(i)))
    }
}

/// Canonical reduced echelon basis of the span of `vectors`.
pub fn rref(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let Some(n) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    assert!(
        vectors.iter().all(|v| v.len() == n),
        "vectors of unequal length"
    );
    Echelon::from_vectors(n, vectors.iter().cloned()).rows()
}

/// All `x ∈ ℚ^k` with `Σ x_i images[i] = 0`, where each image has length
/// `len`. Returns a basis of that kernel.
pub fn kernel(images: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    let k = images.len();
    let mut eqs = Echelon::new(k);
    for j in 0..len {
        if eqs.rank() == k {
            break;
        }
        let row: Vec<Rational> = images.iter().map(|v| v[j].clone()).collect();
        if row.iter().any(|x| !x.is_zero()) {
            eqs.insert(row);
        }
    }
    eqs.nullspace()
}

/// Some `x` with `Σ x_i images[i] = target`, if one exists.
pub fn solve_combination(images: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = images.len();
    let len = target.len();
    // Kernel of [images | -target]; a kernel vector with last entry 1 solves it.
    let mut eqs = Echelon::new(k + 1);
    for j in 0..len {
        let mut row: Vec<Rational> = images.iter().map(|v| v[j].clone()).collect();
        row.push(-&target[j]);
        if row.iter().any(|x| !x.is_zero()) {
            eqs.insert(row);
        }
    }
    // The last column is free iff the system is consistent; set it to 1 and
    // every other free variable to 0.
    if eqs.pivots().contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for r in &eqs.rows {
        if let Some(c) = r.get(k) {
            x[r.pivot()] = -c;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&[v(&[2, 4]), v(&[1, 2])]), vec![v(&[1, 2])]);
        assert_eq!(
            rref(&[v(&[0, 1]), v(&[1, 0])]),
            vec![v(&[1, 0]), v(&[0, 1])]
        );
        assert_eq!(
            rref(&[v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, -1])]),
            vec![v(&[1, 0, -1]), v(&[0, 1, 1])]
        );
        assert!(rref(&[]).is_empty());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let e = Echelon::from_vectors(2, [v(&[1, 1])]);
        assert_eq!(e.nullspace(), vec![v(&[-1, 1])]);
    }

    #[test]
    fn solve_and_kernel() {
        let imgs = [v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 2])];
        assert_eq!(kernel(&imgs, 3), vec![v(&[-1, -1, 1])]);
        let x = solve_combination(&imgs[..2], &v(&[2, 3, 5])).unwrap();
        assert_eq!(x, v(&[2, 3]));
        assert!(solve_combination(&imgs[..2], &v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Echelon::from_vectors(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Echelon::from_vectors(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Echelon::from_vectors(3, [v(&[0, 5, 0])]));
    }

    fn vecs() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, 5), 0..7)
            .prop_map(|vs| vs.iter().map(|x| v(x)).collect())
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_order_free(vs in vecs(), seed in any::<u64>()) {
            let r = rref(&vs);
            prop_assert_eq!(rref(&r), r.clone());
            let mut shuffled = vs.clone();
            let len = shuffled.len();
            if len > 1 {
                shuffled.rotate_left((seed as usize) % len);
                shuffled.swap(0, (seed as usize / 7) % len);
            }
            // Mixing in combinations of the inputs does not change the span.
            if len >= 2 {
                let mix: Vec<Rational> = vs[0].iter().zip(&vs[1]).map(|(a, b)| a + &(b + b)).collect();
                shuffled.push(mix);
            }
            prop_assert_eq!(rref(&shuffled), r.clone());
            for row in &r {
                let p = row.iter().position(|x| !x.is_zero()).unwrap();
                prop_assert!(row[p].is_one());
                for other in r.iter().filter(|o| *o != row) {
                    prop_assert!(other[p].is_zero());
                }
            }
        }

        #[test]
        fn batch_matches_incremental(
            raw in proptest::collection::vec(proptest::collection::vec((-6i64..7, 1i64..5), 6), 0..9)
        ) {
            let vs: Vec<Vec<Rational>> = raw
                .iter()
                .map(|r| r.iter().map(|&(a, b)| Rational::new(a, b)).collect())
                .collect();
            let mut inc = Echelon::new(6);
            for x in &vs {
                inc.insert(x.clone());
            }
            prop_assert_eq!(Echelon::from_vectors(6, vs.clone()), inc.clone());
            // Large entries take the multimodular path.
            let big = Rational::from_bigints(BigInt::from(3u8).pow(90), BigInt::from(7u8).pow(40)).unwrap();
            let scaled = vs.iter().enumerate().map(|(i, x)| {
                let f = &big + &Rational::from_int(i as i64);
                x.iter().map(|y| y * &f).collect::<Vec<_>>()
            });
            prop_assert_eq!(Echelon::from_vectors(6, scaled), inc);
        }

        #[test]
        fn coords_reconstruct(vs in vecs(), c in proptest::collection::vec(-3i64..4, 7)) {
            let e = Echelon::from_vectors(5, vs.iter().cloned());
            let mut target = v(&[0; 5]);
            for (i, x) in vs.iter().enumerate() {
                let ci = Rational::from_int(c[i]);
                for j in 0..5 {
                    target[j] = &target[j] + &(&ci * &x[j]);
                }
            }
            let co = e.coords(&target).expect("combination must be a member");
            let mut back = v(&[0; 5]);
            for (i, ci) in co.iter().enumerate() {
                let row = e.row(i);
                for j in 0..5 {
                    back[j] = &back[j] + &(ci * &row[j]);
                }
            }
            prop_assert_eq!(back, target);
        }
    }
}
