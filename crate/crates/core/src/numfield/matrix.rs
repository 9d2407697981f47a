use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Zero};

use num_bigint::BigInt;

use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

/// Arithmetic context for matrix entries. Number-field elements do not
/// carry their field, so operations go through a context value.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
}

/// The rational field as a `Ring` context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Q;

impl Ring for Q {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if let Some(bad) = rows.iter().find(|x| x.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j).clone())
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Ring-generic matrix arithmetic.
pub mod generic {
    use super::*;

    pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
        Matrix::from_fn(rows, cols, |_, _| r.zero())
    }

    pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
        Matrix::from_fn(n, n, |i, j| if i == j { r.one() } else { r.zero() })
    }

    pub fn mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        if a.cols != b.rows {
            return Err(Error::DimensionMismatch { expected: a.cols, found: b.rows });
        }
        let mut out = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = r.zero();
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    if r.is_zero(x) {
                        continue;
                    }
                    acc = r.add(&acc, &r.mul(x, b.get(k, j)));
                }
                out.push(acc);
            }
        }
        Ok(Matrix { rows: a.rows, cols: b.cols, data: out })
    }

    fn zip<R: Ring>(
        a: &Matrix<R::Elem>,
        b: &Matrix<R::Elem>,
        f: impl Fn(&R::Elem, &R::Elem) -> R::Elem,
    ) -> Result<Matrix<R::Elem>> {
        if a.rows != b.rows || a.cols != b.cols {
            return Err(Error::DimensionMismatch { expected: a.rows * a.cols, found: b.rows * b.cols });
        }
        Ok(Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
        })
    }

    pub fn add<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        zip::<R>(a, b, |x, y| r.add(x, y))
    }

    pub fn sub<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        zip::<R>(a, b, |x, y| r.sub(x, y))
    }

    pub fn is_zero<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> bool {
        a.data.iter().all(|x| r.is_zero(x))
    }

    pub fn apply<R: Ring>(r: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
        (0..a.rows)
            .map(|i| {
                (0..a.cols).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(a.get(i, k), &v[k])))
            })
            .collect()
    }

    /// Reduced row echelon form over a field; returns pivot columns.
    pub fn rref<R: Ring>(r: &R, m: &mut Matrix<R::Elem>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !r.is_zero(m.get(i, c))) else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = r.inv(m.get(row, c)).expect("nonzero pivot in a field");
            for j in 0..m.cols {
                let v = r.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || r.is_zero(m.get(i, c)) {
                    continue;
                }
                let fac = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = r.sub(m.get(i, j), &r.mul(&fac, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rank<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> usize {
        let mut m = m.clone();
        rref(r, &mut m).len()
    }

    /// Basis of the right null space over a field.
    pub fn kernel<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
        let mut a = m.clone();
        let pivots = rref(r, &mut a);
        let mut out = Vec::new();
        for free in (0..a.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![r.zero(); a.cols];
            v[free] = r.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = r.neg(a.get(i, free));
            }
            out.push(v);
        }
        out
    }

    pub fn det<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Result<R::Elem> {
        let n = m.require_square()?;
        let mut a = m.clone();
        let mut det = r.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !r.is_zero(a.get(i, c))) else {
                return Ok(r.zero());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = r.neg(&det);
            }
            let piv = a.get(c, c).clone();
            det = r.mul(&det, &piv);
            let inv = r.inv(&piv).expect("nonzero pivot in a field");
            for i in c + 1..n {
                if r.is_zero(a.get(i, c)) {
                    continue;
                }
                let fac = r.mul(a.get(i, c), &inv);
                for j in c..n {
                    let v = r.sub(a.get(i, j), &r.mul(&fac, a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
        let n = m.require_square()?;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                m.get(i, j).clone()
            } else if j - n == i {
                r.one()
            } else {
                r.zero()
            }
        });
        let piv = rref(r, &mut aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        Ok(aug.submatrix(0..n, n..2 * n))
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag<R: Ring>(r: &R, blocks: &[Matrix<R::Elem>]) -> Matrix<R::Elem> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = zeros(r, n, m);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }
}

impl Matrix<Rational> {
    pub fn identity(n: usize) -> Self {
        generic::identity(&Q, n)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        generic::zeros(&Q, rows, cols)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
    }

    /// Panics on a shape mismatch; use `generic::mul` for a fallible product.
    /// Rows of `self` and columns of `other` are cleared of denominators so
    /// the inner products run over the integers.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let rden: Vec<BigInt> = (0..n).map(|i| lcm_of_denominators(&self.data[i * m..(i + 1) * m])).collect();
        let cden: Vec<BigInt> = (0..p).map(|j| lcm_of_denominators((0..m).map(|k| other.get(k, j)))).collect();
        let a: Vec<BigInt> = (0..n * m).map(|x| (&self.data[x] * &rden[x / m]).to_integer()).collect();
        let b: Vec<BigInt> = (0..m * p).map(|x| (&other.data[x] * &cden[x % p]).to_integer()).collect();
        let mut out = Vec::with_capacity(n * p);
        for i in 0..n {
            for j in 0..p {
                let mut acc = BigInt::zero();
                for k in 0..m {
                    let x = &a[i * m + k];
                    if !x.is_zero() {
                        acc += x * &b[k * p + j];
                    }
                }
                out.push(if acc.is_zero() { Rational::zero() } else { Rational::new(acc, &rden[i] * &cden[j]) });
            }
        }
        Matrix { rows: n, cols: p, data: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        generic::add(&Q, self, other).expect("matrix shapes")
    }

    pub fn sub(&self, other: &Self) -> Self {
        generic::sub(&Q, self, other).expect("matrix shapes")
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x * c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn det(&self) -> Result<Rational> {
        generic::det(&Q, self)
    }

    pub fn inverse(&self) -> Result<Self> {
        generic::inverse(&Q, self)
    }

    pub fn rank(&self) -> usize {
        generic::rank(&Q, self)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix shapes");
        let vd = lcm_of_denominators(v);
        let w: Vec<BigInt> = v.iter().map(|x| (x * &vd).to_integer()).collect();
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let rd = lcm_of_denominators(row);
                let mut acc = BigInt::zero();
                for (x, y) in row.iter().zip(&w) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += (x * &rd).to_integer() * y;
                    }
                }
                Rational::new(acc, &rd * &vd)
            })
            .collect()
    }

    /// `[a, b] = ab - ba`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Entries as a single vector (row-major), for linear systems in matrix
    /// unknowns.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn unflatten(n: usize, m: usize, v: &[Rational]) -> Self {
        Matrix::from_vec(n, m, v.to_vec()).expect("length n*m")
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        generic::block_diag(&Q, blocks)
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &super::poly::Poly) -> Self {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }
}
