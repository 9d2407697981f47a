use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::algebra::{FactorElem, InvolutiveAlgebra, SimpleInvolutiveAlgebra};
use crate::error::{Error, Result};
use crate::numfield::{factor_rationals, minimal_polynomial, solve_particular, NumberField, Poly, QMatrix, Rational};

/// A commutative semisimple Q-algebra of matrices split into fields.
#[derive(Clone, Debug)]
pub struct SemisimpleSplitting {
    /// Q-basis of the algebra, starting with the identity.
    pub basis: Vec<QMatrix>,
    /// Generator `z` of the algebra.
    pub primitive: QMatrix,
    pub factors: Vec<FieldFactor>,
}

/// One factor `A e_i = Q[t]/(p_i)`; `generator = z e_i`.
#[derive(Clone, Debug)]
pub struct FieldFactor {
    pub field: NumberField,
    pub idempotent: QMatrix,
    pub generator: QMatrix,
}

impl FieldFactor {
    /// `p(z e_i)` inside `A e_i` (constant term times `e_i`).
    pub fn realize(&self, p: &Poly) -> QMatrix {
        let n = self.idempotent.rows();
        let mut acc = QMatrix::zeros(n, n);
        let mut pw = self.idempotent.clone();
        for c in p.coeffs() {
            acc = acc.add(&pw.scale(c));
            pw = pw.mul(&self.generator);
        }
        acc
    }
}

fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if basis.is_empty() {
        return Ok(if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None });
    }
    let a = QMatrix::from_columns(v.len(), basis);
    solve_particular(&a, v)
}

/// Q-basis of the unital algebra generated by commuting matrices.
pub fn algebra_span(n: usize, generators: &[QMatrix]) -> Result<Vec<QMatrix>> {
    for g in generators {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
        }
    }
    for (i, g) in generators.iter().enumerate() {
        for h in &generators[i + 1..] {
            if !g.commutes_with(h) {
                return Err(Error::NotCommutative);
            }
        }
    }
    let mut basis = vec![QMatrix::identity(n)];
    let mut flat = vec![basis[0].flatten()];
    let mut i = 0;
    while i < basis.len() {
        for g in generators {
            let c = basis[i].mul(g);
            let f = c.flatten();
            if in_span(&flat, &f)?.is_none() {
                flat.push(f);
                basis.push(c);
            }
        }
        i += 1;
    }
    Ok(basis)
}

/// Coordinates of `m` in the basis, if it lies in the span.
pub fn span_coords(basis: &[QMatrix], m: &QMatrix) -> Result<Option<Vec<Rational>>> {
    let flat: Vec<Vec<Rational>> = basis.iter().map(|b| b.flatten()).collect();
    in_span(&flat, &m.flatten())
}

/// Splits the algebra generated by commuting semisimple matrices into
/// fields via a primitive element and CRT idempotents.
pub fn split_semisimple_algebra(n: usize, generators: &[QMatrix]) -> Result<SemisimpleSplitting> {
    let basis = algebra_span(n, generators)?;
    let dim = basis.len();
    for g in generators {
        let mp = minimal_polynomial(g)?;
        if !mp.is_squarefree() {
            return Err(Error::NotSemisimple);
        }
    }
    let mut primitive = None;
    for j in 0..64i64 {
        let mut z = QMatrix::zeros(n, n);
        let mut c = Rational::one();
        for g in generators {
            z = z.add(&g.scale(&c));
            c *= Rational::from_integer((j + 2).into());
        }
        let mp = minimal_polynomial(&z)?;
        if mp.degree() == Some(dim) {
            primitive = Some((z, mp));
            break;
        }
    }
    let (z, mp) = match primitive {
        Some(p) => p,
        None if generators.is_empty() => (QMatrix::zeros(n, n), Poly::from_ints(&[0, 1])),
        None => return Err(Error::Internal("no primitive element found".into())),
    };
    if !mp.is_squarefree() {
        return Err(Error::NotSemisimple);
    }
    let facs = factor_rationals(&mp)?;
    let mut factors = Vec::new();
    for (p, _) in &facs {
        let cof = mp.exact_div(p)?;
        let inv = cof.rem(p)?.inv_mod(p).ok_or(Error::Internal("CRT inverse".into()))?;
        let e_poly = cof.mul(&inv).rem(&mp)?;
        let e = z.eval_poly(&e_poly);
        let field = NumberField::new_certified(p.clone());
        let generator = z.mul(&e);
        factors.push(FieldFactor { field, idempotent: e, generator });
    }
    Ok(SemisimpleSplitting { basis, primitive: z, factors })
}

/// A factor of an involutive splitting, with the matrices realizing it.
#[derive(Clone, Debug)]
pub struct OperatorFactor {
    pub algebra: SimpleInvolutiveAlgebra,
    pub parts: FactorParts,
}

#[derive(Clone, Debug)]
pub enum FactorParts {
    Field(FieldFactor),
    Split(FieldFactor, FieldFactor),
}

impl OperatorFactor {
    pub fn idempotent(&self) -> QMatrix {
        match &self.parts {
            FactorParts::Field(f) => f.idempotent.clone(),
            FactorParts::Split(a, b) => a.idempotent.add(&b.idempotent),
        }
    }

    /// The matrix by which an element of this factor acts.
    pub fn realize(&self, a: &FactorElem) -> QMatrix {
        match (&self.parts, a) {
            (FactorParts::Field(f), FactorElem::Field(x)) => f.realize(x.poly()),
            (FactorParts::Split(f1, f2), FactorElem::Pair(x, y)) => f1.realize(x.poly()).add(&f2.realize(y.poly())),
            _ => panic!("factor element shape mismatch"),
        }
    }
}

/// A commutative semisimple algebra with an involution, as a product of
/// simple involutive algebras realized by matrices.
#[derive(Clone, Debug)]
pub struct InvolutiveSplitting {
    pub basis: Vec<QMatrix>,
    pub factors: Vec<OperatorFactor>,
}

impl InvolutiveSplitting {
    pub fn algebra(&self) -> InvolutiveAlgebra {
        InvolutiveAlgebra::new(self.factors.iter().map(|f| f.algebra.clone()).collect()).expect("nonempty")
    }
}

/// Attaches a Q-linear involution (given on matrices) to a splitting and
/// classifies the orbits on the primitive idempotents.
pub fn attach_involution(split: &SemisimpleSplitting, tau: &dyn Fn(&QMatrix) -> QMatrix) -> Result<InvolutiveSplitting> {
    let basis = &split.basis;
    let images: Vec<QMatrix> = basis.iter().map(tau).collect();
    for (b, t) in basis.iter().zip(&images) {
        if span_coords(basis, t)?.is_none() {
            return Err(Error::Invalid("involution does not stabilize the algebra".into()));
        }
        if tau(t) != *b {
            return Err(Error::NotInvolution);
        }
    }
    for (i, b) in basis.iter().enumerate() {
        for (j, c) in basis.iter().enumerate().skip(i) {
            if tau(&b.mul(c)) != images[i].mul(&images[j]) {
                return Err(Error::Invalid("involution is not multiplicative".into()));
            }
        }
    }
    let k = split.factors.len();
    let mut partner = vec![usize::MAX; k];
    for i in 0..k {
        let te = tau(&split.factors[i].idempotent);
        let j = (0..k)
            .find(|&j| split.factors[j].idempotent == te)
            .ok_or(Error::Invalid("involution does not permute the idempotents".into()))?;
        partner[i] = j;
    }
    let mut factors = Vec::new();
    for i in 0..k {
        let j = partner[i];
        let fi = &split.factors[i];
        if j == i {
            let w = tau(&fi.generator);
            let deg = fi.field.degree();
            let mut pows = Vec::with_capacity(deg);
            let mut pw = fi.idempotent.clone();
            for _ in 0..deg {
                pows.push(pw.clone());
                pw = pw.mul(&fi.generator);
            }
            let r = span_coords(&pows, &w)?.ok_or(Error::Internal("involution image outside factor".into()))?;
            let r = fi.field.elem(&Poly::new(r));
            let algebra = if r == fi.field.generator() {
                SimpleInvolutiveAlgebra::FieldTrivial { field: fi.field.clone() }
            } else {
                SimpleInvolutiveAlgebra::quadratic(fi.field.clone(), r)?
            };
            factors.push(OperatorFactor { algebra, parts: FactorParts::Field(fi.clone()) });
        } else if i < j {
            let fj = &split.factors[j];
            let second = FieldFactor {
                field: fi.field.clone(),
                idempotent: fj.idempotent.clone(),
                generator: tau(&fi.generator),
            };
            factors.push(OperatorFactor {
                algebra: SimpleInvolutiveAlgebra::SplitPair { field: fi.field.clone() },
                parts: FactorParts::Split(fi.clone(), second),
            });
        }
    }
    Ok(InvolutiveSplitting { basis: basis.clone(), factors })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;

    #[test]
    fn split_diag() {
        let s = QMatrix::diag(&[rat(2, 1), rat(1, 2)]);
        let sp = split_semisimple_algebra(2, core::slice::from_ref(&s)).unwrap();
        assert_eq!(sp.factors.len(), 2);
        // symplectic adjoint on diagonal matrices swaps entries
        let tau = |m: &QMatrix| {
            let j = QMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
            j.inverse().unwrap().mul(&m.transpose()).mul(&j)
        };
        let inv = attach_involution(&sp, &tau).unwrap();
        assert_eq!(inv.factors.len(), 1);
        assert!(inv.factors[0].algebra.is_split());
    }

    #[test]
    fn split_gaussian() {
        let j = QMatrix::from_ints(&[&[0, -1], &[1, 0]]);
        let sp = split_semisimple_algebra(2, core::slice::from_ref(&j)).unwrap();
        assert_eq!(sp.factors.len(), 1);
        let tau = |m: &QMatrix| m.transpose();
        let inv = attach_involution(&sp, &tau).unwrap();
        assert!(inv.factors[0].algebra.is_quadratic());
        let tr = |m: &QMatrix| m.clone();
        let inv = attach_involution(&sp, &tr).unwrap();
        assert!(inv.factors[0].algebra.is_trivial());
    }

    #[test]
    fn nonsemisimple_rejected() {
        let n = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(split_semisimple_algebra(2, &[n]).unwrap_err(), Error::NotSemisimple);
    }
}
