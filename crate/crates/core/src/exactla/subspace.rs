//! Rational subspaces of a matrix space, kept in canonical echelon form.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::echelon::{Echelon, MemberTest};
use super::matrix::{CMat, Mat, Matrix};
use super::scalar::{GaussRational, Rational, Ring, Scalar};
use crate::Error;

/// A subspace of `rows × cols` matrices over `T`, viewed as a vector space
/// over the rationals. A complex ambient space therefore has rational
/// dimension `2·rows·cols`.
///
/// Equality is canonical: two subspaces are equal exactly when they span the
/// same set of matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    rows: usize,
    cols: usize,
    ech: Echelon,
    _ring: core::marker::PhantomData<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Subspace {
            rows,
            cols,
            ech: Echelon::new(rows * cols * T::REAL_DIM),
            _ring: core::marker::PhantomData,
        }
    }

    /// The whole ambient space.
    pub fn full(rows: usize, cols: usize) -> Self {
        Subspace {
            rows,
            cols,
            ech: Echelon::full(rows * cols * T::REAL_DIM),
            _ring: core::marker::PhantomData,
        }
    }

    /// Span of the given matrices; all must have shape `rows × cols`.
    pub fn span<'a, I>(rows: usize, cols: usize, mats: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = &'a Matrix<T>>,
    {
        let mut coords = Vec::new();
        for m in mats {
            if m.shape() != (rows, cols) {
                return Err(Error::AmbientMismatch {
                    expected: (rows, cols),
                    got: m.shape(),
                });
            }
            coords.push(m.to_coords());
        }
        let len = rows * cols * T::REAL_DIM;
        Ok(Self::from_echelon(
            rows,
            cols,
            Echelon::from_vectors(len, coords),
        ))
    }

    /// Span of a non-empty list of same-shape matrices.
    pub fn span_of(mats: &[Matrix<T>]) -> Result<Self, Error> {
        let first = mats
            .first()
            .ok_or_else(|| Error::Structure("empty spanning set".into()))?;
        Self::span(first.rows(), first.cols(), mats)
    }

    pub fn from_echelon(rows: usize, cols: usize, ech: Echelon) -> Self {
        assert_eq!(
            ech.ncols(),
            rows * cols * T::REAL_DIM,
            "echelon width mismatch"
        );
        Subspace {
            rows,
            cols,
            ech,
            _ring: core::marker::PhantomData,
        }
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn ring(&self) -> Ring {
        T::RING
    }

    /// Dimension over the rationals.
    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    fn check(&self, m: &Matrix<T>) -> Result<(), Error> {
        if m.shape() != (self.rows, self.cols) {
            return Err(Error::AmbientMismatch {
                expected: (self.rows, self.cols),
                got: m.shape(),
            });
        }
        Ok(())
    }

    /// Add a matrix to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, m: &Matrix<T>) -> Result<bool, Error> {
        self.check(m)?;
        Ok(self.ech.insert(m.to_coords()))
    }

    pub fn contains(&self, m: &Matrix<T>) -> Result<bool, Error> {
        self.check(m)?;
        Ok(self.ech.contains(&m.to_coords()))
    }

    /// A membership tester for many queries against the same subspace.
    pub fn member_test(&self) -> MemberTest {
        self.ech.member_test()
    }

    /// Coefficients of `m` with respect to [`Subspace::basis`].
    pub fn coords(&self, m: &Matrix<T>) -> Result<Option<Vec<Rational>>, Error> {
        self.check(m)?;
        Ok(self.ech.coords(&m.to_coords()))
    }

    /// The canonical basis: matrices whose vectorizations are the echelon rows.
    pub fn basis(&self) -> Vec<Matrix<T>> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    pub fn basis_element(&self, i: usize) -> Matrix<T> {
        Matrix::from_coords(self.rows, self.cols, &self.ech.row(i))
    }

    /// `Σ c_i b_i` over the canonical basis.
    pub fn combination(&self, coeffs: &[Rational]) -> Matrix<T> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let mut v = vec![Rational::zero(); self.ech.ncols()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.ech.row_entries(i) {
                v[j] = &v[j] + &(c * x);
            }
        }
        Matrix::from_coords(self.rows, self.cols, &v)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient() == other.ambient() && self.ech.is_subspace_of(&other.ech)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, Error> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                expected: self.ambient(),
                got: other.ambient(),
            });
        }
        Ok(Self::from_echelon(
            self.rows,
            self.cols,
            self.ech.intersect(&other.ech),
        ))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                expected: self.ambient(),
                got: other.ambient(),
            });
        }
        let mut s = self.clone();
        for i in 0..other.dim() {
            s.ech.insert(other.ech.row(i));
        }
        Ok(s)
    }

    /// Image under a linear map given on basis elements.
    pub fn map_linear(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(&Matrix<T>) -> Matrix<T>,
    ) -> Result<Self, Error> {
        let images: Vec<Matrix<T>> = self.basis().iter().map(f).collect();
        Self::span(rows, cols, &images)
    }

    pub fn transpose(&self) -> Self {
        self.map_linear(self.cols, self.rows, Matrix::transpose)
            .expect("shapes agree")
    }

    pub fn is_transpose_closed(&self) -> bool {
        self.rows == self.cols
            && self
                .basis()
                .iter()
                .all(|b| self.ech.contains(&b.transpose().to_coords()))
    }

    /// `{K + Kᵀ : K ∈ V}`, which equals `V ∩ Sym` when `V` is transpose-closed.
    pub fn sym_part(&self) -> Result<Self, Error> {
        if !self.is_transpose_closed() {
            return Err(Error::Structure(
                "subspace is not closed under transpose".into(),
            ));
        }
        Ok(self.sym_part_unchecked())
    }

    pub(crate) fn sym_part_unchecked(&self) -> Self {
        self.map_linear(self.rows, self.cols, |k| k.add(&k.transpose()))
            .expect("shapes agree")
    }

    /// `{Rᵀ a R : a ∈ self}`.
    pub fn conjugate_by(&self, r: &Matrix<T>) -> Result<Self, Error> {
        if !r.is_square() || r.rows() != self.rows || self.rows != self.cols {
            return Err(Error::AmbientMismatch {
                expected: self.ambient(),
                got: r.shape(),
            });
        }
        let rt = r.conj_transpose();
        self.map_linear(self.rows, self.cols, |a| rt.mul(a).mul(r))
    }

    pub fn all_symmetric(&self) -> bool {
        self.basis().iter().all(Matrix::is_symmetric)
    }

    /// Lexicographic comparison of canonical bases, used for stable ordering.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.ambient()
            .cmp(&other.ambient())
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| {
                for i in 0..self.dim() {
                    let o = self.ech.row(i).cmp(&other.ech.row(i));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl Subspace<Rational> {
    /// `Sym(ℚⁿ)` with basis `E_ii` and `E_ij + E_ji`.
    pub fn sym(n: usize) -> Self {
        let mut s = Self::zero(n, n);
        for i in 0..n {
            for j in i..n {
                let mut m = Mat::unit(n, n, i, j);
                m.set(j, i, Rational::one());
                s.insert(&m).expect("shape");
            }
        }
        s
    }

    /// `span{Iₙ}`.
    pub fn scalars(n: usize) -> Self {
        Self::span(n, n, [&Mat::identity(n)]).expect("shape")
    }

    /// `{I_k ⊗ a : a ∈ self}`.
    pub fn with_multiplicity(&self, k: usize) -> Self {
        let id = Mat::identity(k);
        self.map_linear(self.rows * k, self.cols * k, |a| id.kron(a))
            .expect("shape")
    }
}

impl Subspace<GaussRational> {
    /// Closure under multiplication by `i`, making the space complex-linear.
    pub fn complexify(&self) -> Self {
        let i = GaussRational::i();
        let mut out = self.clone();
        for b in self.basis() {
            out.insert(&b.scale(&i)).expect("shape");
        }
        out
    }

    pub fn is_complex_linear(&self) -> bool {
        let i = GaussRational::i();
        self.basis()
            .iter()
            .all(|b| self.ech.contains(&b.scale(&i).to_coords()))
    }

    pub fn conj_transpose(&self) -> Self {
        self.map_linear(self.cols, self.rows, CMat::conj_transpose)
            .expect("shape")
    }
}

impl<T: Scalar> core::fmt::Debug for Subspace<T> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Subspace({}x{} {}, dim {})",
            self.rows,
            self.cols,
            T::RING.name(),
            self.dim()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(r: usize, c: usize, v: &[i64]) -> Mat {
        Mat::from_ints(r, c, v)
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::scalars(2);
        assert!(s.contains(&m(2, 2, &[3, 0, 0, 3])).unwrap());
        let d = Subspace::span_of(&[m(2, 2, &[1, 0, 0, 0])]).unwrap();
        assert!(!d.contains(&m(2, 2, &[0, 0, 0, 1])).unwrap());
        let t = Subspace::span_of(&[m(2, 2, &[0, 1, 1, 0]), Mat::identity(2)]).unwrap();
        assert!(t.contains(&m(2, 2, &[2, 1, 1, 2])).unwrap());
        assert!(matches!(
            t.contains(&Mat::identity(3)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn sym_part_examples() {
        assert_eq!(
            Subspace::<Rational>::full(2, 2).sym_part().unwrap(),
            Subspace::sym(2)
        );
        assert_eq!(
            Subspace::scalars(2).sym_part().unwrap(),
            Subspace::scalars(2)
        );
        let v = Subspace::span_of(&[m(2, 2, &[0, 1, 0, 0]), m(2, 2, &[0, 0, 1, 0])]).unwrap();
        let s = v.sym_part().unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&m(2, 2, &[0, 1, 1, 0])).unwrap());
        let bad = Subspace::span_of(&[m(2, 2, &[0, 1, 0, 0])]).unwrap();
        assert!(bad.sym_part().is_err());
    }

    #[test]
    fn complexify_doubles_real_spans() {
        let s = Subspace::span_of(&[Mat::identity(2).to_complex()]).unwrap();
        assert_eq!(s.dim(), 1);
        let c = s.complexify();
        assert_eq!(c.dim(), 2);
        assert!(c.is_complex_linear());
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        proptest::collection::vec(-2i64..3, 4).prop_map(|v| Mat::from_ints(2, 2, &v))
    }

    proptest! {
        #[test]
        fn contains_agrees_with_brute_force(gens in proptest::collection::vec(small_mat(), 1..4), probe in small_mat()) {
            let s = Subspace::span_of(&gens).unwrap();
            let images: Vec<Vec<Rational>> = gens.iter().map(|g| g.to_coords()).collect();
            let direct = super::super::echelon::solve_combination(&images, &probe.to_coords()).is_some();
            prop_assert_eq!(s.contains(&probe).unwrap(), direct);
            for g in &gens {
                prop_assert!(s.contains(g).unwrap());
            }
        }

        #[test]
        fn sym_part_is_symmetric_and_inside(gens in proptest::collection::vec(small_mat(), 1..3)) {
            let mut all = gens.clone();
            all.extend(gens.iter().map(Mat::transpose));
            let v = Subspace::span_of(&all).unwrap();
            let s = v.sym_part().unwrap();
            prop_assert!(s.is_subspace_of(&v));
            prop_assert!(s.all_symmetric());
            prop_assert_eq!(s, v.intersect(&Subspace::sym(2)).unwrap());
        }
    }
}
