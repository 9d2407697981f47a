//! Exact linear systems over the rationals by fraction-free (Bareiss)
//! elimination.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::poly::Poly;
use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    /// Every solution is `particular + sum c_i kernel[i]`.
    Solved { particular: Vec<Rational>, kernel: Vec<Vec<Rational>> },
}

impl LinearSolution {
    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Inconsistent => None,
            LinearSolution::Solved { particular, .. } => Some(particular),
        }
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            if lead.is_zero() {
                if !prev.is_one() || !piv.is_one() {
                    for j in c + 1..ncols {
                        if !row[j].is_zero() {
                            row[j] = &piv * &row[j] / &prev;
                        }
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

fn integer_rows(a: &QMatrix, extra: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    (0..a.rows())
        .map(|i| {
            let mut row = a.row(i);
            if let Some(b) = extra {
                row.push(b[i].clone());
            }
            let l = lcm_of_denominators(row.iter());
            row.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

fn back_substitute(e: &Echelon, n: usize, rhs: Option<usize>, free_val: Option<usize>) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); n];
    if let Some(f) = free_val {
        x[f] = Rational::one();
    }
    for (k, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[k];
        let mut acc = match rhs {
            Some(col) => Rational::from_integer(row[col].clone()),
            None => Rational::zero(),
        };
        for j in pc + 1..n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rational::from_integer(row[pc].clone());
    }
    x
}

/// Solves `a x = b` for a column vector `b` (an `a.rows() x 1` matrix).
pub fn solve_linear(a: &QMatrix, b: &QMatrix) -> Result<LinearSolution> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.rows() });
    }
    if b.cols() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: b.cols() });
    }
    solve_vec(a, &b.col(0))
}

pub fn solve_vec(a: &QMatrix, b: &[Rational]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let e = bareiss(integer_rows(a, Some(b)), n + 1);
    if e.pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let particular = back_substitute(&e, n, Some(n), None);
    let kernel = (0..n)
        .filter(|c| !e.pivots.contains(c))
        .map(|f| back_substitute(&e, n, None, Some(f)))
        .collect();
    Ok(LinearSolution::Solved { particular, kernel })
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace(a: &QMatrix) -> Vec<Vec<Rational>> {
    let n = a.cols();
    let e = bareiss(integer_rows(a, None), n);
    (0..n)
        .filter(|c| !e.pivots.contains(c))
        .map(|f| back_substitute(&e, n, None, Some(f)))
        .collect()
}

/// One solution of `a x = b`, if any.
pub fn solve_particular(a: &QMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    Ok(solve_vec(a, b)?.particular().map(|p| p.to_vec()))
}

/// Indices of a maximal linearly independent subset of the columns, greedy
/// from the left.
pub fn independent_columns(a: &QMatrix) -> Vec<usize> {
    bareiss(integer_rows(a, None), a.cols()).pivots
}

/// Monic generator of the annihilator of a square matrix.
pub fn minimal_polynomial(m: &QMatrix) -> Result<Poly> {
    let n = m.require_square()?;
    let mut powers: Vec<Vec<Rational>> = vec![QMatrix::identity(n).flatten()];
    let mut cur = QMatrix::identity(n);
    for k in 1..=n {
        cur = cur.mul(m);
        let target = cur.flatten();
        let basis = QMatrix::from_columns(n * n, &powers);
        if let Some(c) = solve_particular(&basis, &target)? {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            debug_assert_eq!(coeffs.len(), k + 1);
            return Ok(Poly::new(coeffs));
        }
        powers.push(target);
    }
    Err(Error::Internal("Cayley-Hamilton violated".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rational::{int, rat};

    #[test]
    fn worked_examples() {
        let id = QMatrix::identity(2);
        let e1 = QMatrix::from_ints(&[&[1], &[0]]);
        assert_eq!(
            solve_linear(&id, &e1).unwrap(),
            LinearSolution::Solved { particular: vec![int(1), int(0)], kernel: vec![] }
        );
        let z = QMatrix::zeros(2, 2);
        match solve_linear(&z, &QMatrix::zeros(2, 1)).unwrap() {
            LinearSolution::Solved { particular, kernel } => {
                assert_eq!(particular, vec![int(0), int(0)]);
                assert_eq!(kernel.len(), 2);
            }
            _ => panic!(),
        }
        let a = QMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        let b = QMatrix::from_ints(&[&[1], &[2]]);
        assert_eq!(
            solve_linear(&a, &b).unwrap(),
            LinearSolution::Solved { particular: vec![int(1), int(0)], kernel: vec![vec![int(-1), int(1)]] }
        );
        let b = QMatrix::from_ints(&[&[1], &[3]]);
        assert_eq!(solve_linear(&a, &b).unwrap(), LinearSolution::Inconsistent);
        assert!(solve_linear(&a, &QMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn fractions() {
        let a = QMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(-1, 5)]]).unwrap();
        let b = vec![rat(7, 6), rat(3, 10)];
        let x = solve_particular(&a, &b).unwrap().unwrap();
        assert_eq!(a.apply(&x), b);
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(minimal_polynomial(&QMatrix::identity(2)).unwrap(), Poly::from_ints(&[-1, 1]));
        let d = QMatrix::diag(&[int(1), int(2)]);
        assert_eq!(minimal_polynomial(&d).unwrap(), Poly::from_ints(&[2, -3, 1]));
        let j = QMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let p = minimal_polynomial(&j).unwrap();
        assert_eq!(p, Poly::from_ints(&[1, 0, 1]));
        // oracle: m^2 + I = 0 and no degree-one annihilator
        assert!(j.mul(&j).add(&QMatrix::identity(2)).is_zero());
        assert!(minimal_polynomial(&QMatrix::zeros(2, 3)).is_err());
    }
}

/// Incrementally built subspace of `Q^n` in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (p, r) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            for (x, y) in w.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = Rational::one() / &w[p];
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}
