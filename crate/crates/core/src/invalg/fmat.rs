//! Matrices over a simple involutive algebra.

use alloc::vec::Vec;

use super::algebra::{FactorElem, SimpleInvolutiveAlgebra};
use crate::error::{Error, Result};
use crate::numfield::{generic, Matrix, NFElem, Ring};

pub type FMatrix = Matrix<FactorElem>;

pub fn identity(f: &SimpleInvolutiveAlgebra, n: usize) -> FMatrix {
    generic::identity(f, n)
}

pub fn zeros(f: &SimpleInvolutiveAlgebra, rows: usize, cols: usize) -> FMatrix {
    generic::zeros(f, rows, cols)
}

pub fn mul(f: &SimpleInvolutiveAlgebra, a: &FMatrix, b: &FMatrix) -> FMatrix {
    generic::mul(f, a, b).expect("matrix shapes")
}

pub fn add(f: &SimpleInvolutiveAlgebra, a: &FMatrix, b: &FMatrix) -> FMatrix {
    generic::add(f, a, b).expect("matrix shapes")
}

pub fn neg(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> FMatrix {
    a.map(|x| f.neg(x))
}

/// Entrywise involution.
pub fn tau(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> FMatrix {
    a.map(|x| f.tau(x))
}

/// `tau` applied when the sign is negative.
pub fn twist(f: &SimpleInvolutiveAlgebra, a: &FMatrix, minus: bool) -> FMatrix {
    if minus {
        tau(f, a)
    } else {
        a.clone()
    }
}

pub fn scale(f: &SimpleInvolutiveAlgebra, c: &FactorElem, a: &FMatrix) -> FMatrix {
    a.map(|x| f.mul(c, x))
}

pub fn apply(f: &SimpleInvolutiveAlgebra, a: &FMatrix, v: &[FactorElem]) -> Vec<FactorElem> {
    generic::apply(f, a, v)
}

/// One matrix per coordinate field (two for the split variant).
pub fn components(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> Vec<Matrix<NFElem>> {
    let k = if f.is_split() { 2 } else { 1 };
    (0..k).map(|c| a.map(|x| f.components(x)[c].clone())).collect()
}

pub fn from_components(f: &SimpleInvolutiveAlgebra, parts: &[Matrix<NFElem>]) -> FMatrix {
    if f.is_split() {
        Matrix::from_fn(parts[0].rows(), parts[0].cols(), |i, j| {
            FactorElem::Pair(parts[0].get(i, j).clone(), parts[1].get(i, j).clone())
        })
    } else {
        parts[0].map(|x| FactorElem::Field(x.clone()))
    }
}

pub fn det(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> Result<FactorElem> {
    let field = f.field();
    let ds = components(f, a).iter().map(|m| generic::det(field, m)).collect::<Result<Vec<_>>>()?;
    Ok(if f.is_split() {
        FactorElem::Pair(ds[0].clone(), ds[1].clone())
    } else {
        FactorElem::Field(ds[0].clone())
    })
}

pub fn inverse(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> Result<FMatrix> {
    let field = f.field();
    let parts = components(f, a).iter().map(|m| generic::inverse(field, m)).collect::<Result<Vec<_>>>()?;
    Ok(from_components(f, &parts))
}

pub fn is_invertible(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> bool {
    a.is_square() && det(f, a).map(|d| f.is_unit(&d)).unwrap_or(false)
}

pub fn is_zero(f: &SimpleInvolutiveAlgebra, a: &FMatrix) -> bool {
    generic::is_zero(f, a)
}

pub fn check_shape(f: &SimpleInvolutiveAlgebra, a: &FMatrix, n: usize) -> Result<()> {
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.rows().max(a.cols()) });
    }
    for x in a.entries() {
        f.check(x)?;
    }
    Ok(())
}

/// Basis of `{x : rows * x = 0}`, computed per coordinate field and paired
/// index by index (the kernel of a map of free modules over the split
/// variant is assumed free).
pub fn kernel(f: &SimpleInvolutiveAlgebra, rows: &FMatrix) -> Vec<Vec<FactorElem>> {
    let field = f.field();
    let ks: Vec<Vec<Vec<NFElem>>> = components(f, rows).iter().map(|m| generic::kernel(field, m)).collect();
    if f.is_split() {
        ks[0]
            .iter()
            .zip(&ks[1])
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| FactorElem::Pair(x.clone(), y.clone())).collect())
            .collect()
    } else {
        ks[0].iter().map(|a| a.iter().map(|x| FactorElem::Field(x.clone())).collect()).collect()
    }
}
