//! Dense row-major matrices over an exact [`Scalar`] ring.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::scalar::{GaussRational, Rational, Ring, Scalar};
use crate::Error;

/// A dense `rows × cols` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Real rational matrix.
pub type Mat = Matrix<Rational>;
/// Gaussian rational matrix.
pub type CMat = Matrix<GaussRational>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Build from row-major data; fails if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: (rows, cols),
                got: (data.len(), 1),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    expected: (r, c),
                    got: (r, row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// The matrix unit `E_ij` of the given shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i * cols + j] = T::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ring(&self) -> Ring {
        T::RING
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), Error> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                got: other.shape(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other)?;
        Ok(self.zip(other, |a, b| a.add(b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other)?;
        Ok(self.zip(other, |a, b| a.sub(b)))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Panicking addition for internal use where shapes are known to agree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = a.add(b);
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &T, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in axpy");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_mul_assign(c, b);
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        self.map(|x| x.mul(c))
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, other.cols),
                got: (other.rows, other.cols),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Matrix product; panics if the inner dimensions differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        self.mul_unchecked(other)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let (n, m, p) = (self.rows, self.cols, other.cols);
        if let Some(data) = T::matmul(&self.data, &other.data, n, m, p) {
            return Matrix {
                rows: n,
                cols: p,
                data,
            };
        }
        let mut out = Self::zeros(n, p);
        // Skip zero entries of the left factor and zero rows of the right one;
        // most matrices in this crate are sparse.
        let nonzero_rows: Vec<bool> = (0..m)
            .map(|k| other.row(k).iter().any(|x| !x.is_zero()))
            .collect();
        for i in 0..n {
            for k in 0..m {
                let a = &self.data[i * m + k];
                if a.is_zero() || !nonzero_rows[k] {
                    continue;
                }
                let orow = &other.data[k * p..(k + 1) * p];
                let out_row = &mut out.data[i * p..(i + 1) * p];
                for (o, b) in out_row.iter_mut().zip(orow) {
                    o.add_mul_assign(a, b);
                }
            }
        }
        out
    }

    /// Product of a list of matrices, left to right.
    pub fn product(factors: &[&Self]) -> Self {
        let mut it = factors.iter();
        let first = (*it.next().expect("empty product")).clone();
        it.fold(first, |acc, f| acc.mul(f))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).neg()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Assemble a block matrix. All blocks in a block row share a row count
    /// and all blocks in a block column share a column count.
    pub fn block(blocks: &[Vec<Self>]) -> Result<Self, Error> {
        let br = blocks.len();
        if br == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let bc = blocks[0].len();
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != bc {
                return Err(Error::ShapeMismatch {
                    expected: (br, bc),
                    got: (br, row.len()),
                });
            }
            for (bj, b) in row.iter().enumerate() {
                if b.shape() != (heights[bi], widths[bj]) {
                    return Err(Error::ShapeMismatch {
                        expected: (heights[bi], widths[bj]),
                        got: b.shape(),
                    });
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// 2×2 block matrix `[[a, b], [c, d]]`; panics on incompatible shapes.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        Self::block(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
            .expect("incompatible block shapes")
    }

    pub fn block_diag(parts: &[Self]) -> Self {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    /// Rational coordinates of the row-major vectorization; complex entries
    /// contribute `(re, im)` pairs.
    pub fn to_coords(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.data.len() * T::REAL_DIM);
        for x in &self.data {
            x.push_coords(&mut out);
        }
        out
    }

    pub fn from_coords(rows: usize, cols: usize, coords: &[Rational]) -> Self {
        assert_eq!(
            coords.len(),
            rows * cols * T::REAL_DIM,
            "coordinate length mismatch"
        );
        let data = coords.chunks(T::REAL_DIM).map(T::from_coords).collect();
        Matrix { rows, cols, data }
    }

    /// `(self * other + other * self) / 2`.
    pub fn jordan(&self, other: &Self) -> Self {
        let half = Rational::new(1, 2);
        self.mul(other).add(&other.mul(self)).scale_rational(&half)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

impl Mat {
    pub fn from_ints(rows: usize, cols: usize, ints: &[i64]) -> Self {
        Matrix::from_vec(
            rows,
            cols,
            ints.iter().map(|&x| Rational::from_int(x)).collect(),
        )
        .expect("length mismatch")
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Mat, Error> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, self.rows),
                got: self.shape(),
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| a[r][col].height_bits())
                .ok_or(Error::DivisionByZero)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let s = a[col][col].recip()?;
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !x.is_zero() {
                    *x = &*x * &s;
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let (pa, pi) = (a[col].clone(), inv[col].clone());
                for (x, y) in a[r].iter_mut().zip(&pa) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
                for (x, y) in inv[r].iter_mut().zip(&pi) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut e = super::echelon::Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Embed as a complex matrix with zero imaginary part.
    pub fn to_complex(&self) -> CMat {
        self.map(|x| GaussRational::real(x.clone()))
    }
}

impl CMat {
    pub fn re(&self) -> Mat {
        self.map(|z| z.re.clone())
    }

    pub fn im(&self) -> Mat {
        self.map(|z| z.im.clone())
    }

    pub fn from_parts(re: &Mat, im: &Mat) -> CMat {
        assert_eq!(re.shape(), im.shape(), "shape mismatch");
        let data = re
            .entries()
            .iter()
            .zip(im.entries())
            .map(|(a, b)| GaussRational::new(a.clone(), b.clone()))
            .collect();
        Matrix {
            rows: re.rows(),
            cols: re.cols(),
            data,
        }
    }
}

/// `(I − s)(I + s)⁻¹` for a skew-symmetric rational `s`; the result is an
/// exactly orthogonal rational matrix.
pub fn cayley_orthogonal(s: &Mat) -> Result<Mat, Error> {
    if !s.is_skew() {
        return Err(Error::Precondition(
            "cayley transform needs a skew-symmetric matrix".into(),
        ));
    }
    let n = s.rows();
    let id = Mat::identity(n);
    // I + s is invertible for every real skew s.
    let inv = id.add(s).inverse()?;
    Ok(id.sub(s).mul(&inv))
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
