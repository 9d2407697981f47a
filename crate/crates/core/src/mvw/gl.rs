//! `GL(n)` as the unitary group of a Hermitian module over `Q x Q` with the
//! swap involution, and the transpose-conjugacy it encodes.

use crate::error::{Error, Result};
use crate::grp::{matrix_kernel, BreveElement, LieElement};
use crate::hermod::HermitianModule;
use crate::invalg::fmat::{self, FMatrix};
use crate::invalg::{Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{Matrix, NumberField, QMatrix, Rational};

fn lift(m: &QMatrix) -> Matrix<crate::numfield::NFElem> {
    let q = NumberField::rationals();
    m.map(|x| q.rational(x.clone()))
}

fn lower(m: &Matrix<crate::numfield::NFElem>) -> QMatrix {
    m.map(|x| x.as_rational().expect("rational entry"))
}

/// The module `(Q x Q)^n` with Gram `(w, w^T)`; its unitary group is
/// `GL(n, Q)` through the first coordinate.
pub fn gl_module(w: &QMatrix) -> Result<HermitianModule> {
    let f = SimpleInvolutiveAlgebra::split_rationals();
    let g = fmat::from_components(&f, &[lift(w), lift(&w.transpose())]);
    HermitianModule::simple(f, Sign::Plus, g)
}

fn first_gram(e: &HermitianModule) -> Result<QMatrix> {
    let (f, g) = e.single()?;
    if !f.is_split() || e.epsilon() != Sign::Plus {
        return Err(Error::Precondition("expected the split-pair encoding of GL".into()));
    }
    Ok(lower(&fmat::components(f, g)[0]))
}

fn pair(e: &HermitianModule, a: &QMatrix, b: &QMatrix) -> FMatrix {
    fmat::from_components(e.factor(0), &[lift(a), lift(b)])
}

/// The unitary element whose first coordinate is `x`.
pub fn gl_unitary(e: &HermitianModule, x: &QMatrix) -> Result<BreveElement> {
    let w = first_gram(e)?;
    let wi = w.inverse()?;
    let second = wi.mul(&x.inverse()?.transpose()).mul(&w);
    Ok(BreveElement::new(alloc::vec![pair(e, x, &second)], Sign::Plus))
}

/// The Lie algebra element whose first coordinate is `x`.
pub fn gl_lie_element(e: &HermitianModule, x: &QMatrix) -> Result<LieElement> {
    let w = first_gram(e)?;
    let second = w.inverse()?.mul(&x.transpose()).mul(&w).neg();
    Ok(LieElement { blocks: alloc::vec![pair(e, x, &second)] })
}

/// First coordinate of a block of the split-pair encoding.
pub fn gl_coordinate(e: &HermitianModule, m: &FMatrix) -> Result<QMatrix> {
    first_gram(e)?;
    Ok(lower(&fmat::components(e.factor(0), m)[0]))
}

/// `c = w g_1^{-1}` from a witness `(g, -1)`; it satisfies `c x c^{-1} =
/// x^T` for the first coordinate `x` of the conjugated element.
pub fn gl_transpose_witness(e: &HermitianModule, g: &BreveElement) -> Result<QMatrix> {
    let w = first_gram(e)?;
    let g1 = lower(&fmat::components(e.factor(0), &g.blocks[0])[0]);
    Ok(w.mul(&g1.inverse()?))
}

/// An invertible solution of `c x = x^T c`, found in the solution space by
/// sampling along a moment curve.
pub fn sylvester_oracle(x: &QMatrix) -> Option<QMatrix> {
    let n = x.rows();
    let xt = x.transpose();
    let basis = matrix_kernel(n, |c| c.mul(x).sub(&xt.mul(c)).flatten());
    let tries = n * basis.len() + 1;
    for t in 1..=tries as i64 {
        let mut c = QMatrix::zeros(n, n);
        let mut pw = Rational::from_integer(1.into());
        for b in &basis {
            c = c.add(&b.scale(&pw));
            pw *= Rational::from_integer(t.into());
        }
        if c.det().map(|d| d != Rational::from_integer(0.into())).unwrap_or(false) {
            return Some(c);
        }
    }
    None
}

/// `c x c^{-1} = x^T`.
pub fn conjugates_to_transpose(c: &QMatrix, x: &QMatrix) -> bool {
    c.mul(x) == x.transpose().mul(c) && c.det().map(|d| d != Rational::from_integer(0.into())).unwrap_or(false)
}
