//! The isometry group `U(E)`, its MVW extension and its Lie algebra.

mod jordan;
mod lie;

pub use jordan::{exp_nilpotent, exp_q, jordan_chevalley, jordan_chevalley_q, log_q, log_unipotent, semisimple_part_q, JordanPair};
pub use lie::{
    cayley, isotropic_flag, lie_basis_q, matrix_kernel, random_lie, random_mixed, random_mixed_lie, random_nilpotent,
    random_unipotent, random_unitary, small_rational,
};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hermod::HermitianModule;
use crate::invalg::fmat::{self, FMatrix};
use crate::invalg::Sign;

/// `(g, delta)`: `g` is linear for `delta = +1` and `tau`-conjugate linear
/// for `delta = -1`, acting by `v -> M tau(v)` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreveElement {
    pub blocks: Vec<FMatrix>,
    pub delta: Sign,
}

/// An element of the Lie algebra `u(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub blocks: Vec<FMatrix>,
}

impl BreveElement {
    pub fn new(blocks: Vec<FMatrix>, delta: Sign) -> Self {
        BreveElement { blocks, delta }
    }

    pub fn identity(e: &HermitianModule) -> Self {
        BreveElement { blocks: identity_blocks(e), delta: Sign::Plus }
    }
}

pub fn identity_blocks(e: &HermitianModule) -> Vec<FMatrix> {
    (0..e.num_factors()).map(|k| fmat::identity(e.factor(k), e.gram(k).rows())).collect()
}

fn gram_identity(e: &HermitianModule, blocks: &[FMatrix], delta: Sign) -> bool {
    (0..e.num_factors()).all(|k| {
        let f = e.factor(k);
        let m = &blocks[k];
        let g = e.gram(k);
        let lhs = fmat::mul(f, &fmat::mul(f, &m.transpose(), g), &fmat::tau(f, m));
        match delta {
            Sign::Plus => lhs == *g,
            Sign::Minus => lhs == g.transpose(),
        }
    })
}

fn invertible(e: &HermitianModule, blocks: &[FMatrix]) -> bool {
    (0..e.num_factors()).all(|k| fmat::is_invertible(e.factor(k), &blocks[k]))
}

/// Linear, invertible and form preserving.
pub fn is_unitary(e: &HermitianModule, g: &[FMatrix]) -> Result<bool> {
    e.check_map(g)?;
    Ok(invertible(e, g) && gram_identity(e, g, Sign::Plus))
}

/// Membership of `(g, delta)` in the MVW extension.
pub fn is_breve(e: &HermitianModule, g: &[FMatrix], delta: Sign) -> Result<bool> {
    e.check_map(g)?;
    Ok(invertible(e, g) && gram_identity(e, g, delta))
}

/// `X^T G + G tau(X) = 0` on every block.
pub fn is_lie(e: &HermitianModule, x: &[FMatrix]) -> Result<bool> {
    e.check_map(x)?;
    Ok((0..e.num_factors()).all(|k| {
        let f = e.factor(k);
        let g = e.gram(k);
        let a = fmat::mul(f, &x[k].transpose(), g);
        let b = fmat::mul(f, g, &fmat::tau(f, &x[k]));
        fmat::is_zero(f, &fmat::add(f, &a, &b))
    }))
}

/// Composition without membership checks.
pub fn compose_raw(e: &HermitianModule, a: &BreveElement, b: &BreveElement) -> BreveElement {
    let blocks = (0..e.num_factors())
        .map(|k| {
            let f = e.factor(k);
            fmat::mul(f, &a.blocks[k], &fmat::twist(f, &b.blocks[k], a.delta == Sign::Minus))
        })
        .collect();
    BreveElement { blocks, delta: a.delta.times(b.delta) }
}

/// Group law of the MVW extension.
pub fn compose_breve(e: &HermitianModule, a: &BreveElement, b: &BreveElement) -> Result<BreveElement> {
    for x in [a, b] {
        if !is_breve(e, &x.blocks, x.delta)? {
            return Err(Error::NotInGroup("factor of the product is not in the extension".into()));
        }
    }
    Ok(compose_raw(e, a, b))
}

/// Inverse: `M^{-1}` for linear maps, `tau(M^{-1})` for conjugate-linear.
pub fn inverse_raw(e: &HermitianModule, a: &BreveElement) -> Result<BreveElement> {
    let blocks = (0..e.num_factors())
        .map(|k| {
            let f = e.factor(k);
            let inv = fmat::inverse(f, &a.blocks[k])?;
            Ok(fmat::twist(f, &inv, a.delta == Sign::Minus))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BreveElement { blocks, delta: a.delta })
}

/// `g x g^{-1}` for a linear `x`.
pub fn conjugate_raw(e: &HermitianModule, g: &BreveElement, x: &[FMatrix]) -> Result<Vec<FMatrix>> {
    let gi = inverse_raw(e, g)?;
    let xe = BreveElement { blocks: x.to_vec(), delta: Sign::Plus };
    Ok(compose_raw(e, &compose_raw(e, g, &xe), &gi).blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermod::HermitianModule;
    use crate::invalg::{FactorElem, SimpleInvolutiveAlgebra};
    use crate::numfield::{int, Matrix, NumberField, Ring};
    use alloc::vec;

    fn qmat(rows: &[&[i64]]) -> FMatrix {
        let f = NumberField::rationals();
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| FactorElem::Field(f.rational(int(rows[i][j]))))
    }

    fn sp2() -> HermitianModule {
        HermitianModule::simple(SimpleInvolutiveAlgebra::rationals(), Sign::Minus, qmat(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    #[test]
    fn membership_examples() {
        let e = sp2();
        assert!(is_unitary(&e, &[qmat(&[&[1, 0], &[0, 1]])]).unwrap());
        assert!(!is_unitary(&e, &[qmat(&[&[1, 0], &[0, -1]])]).unwrap());
        assert!(is_unitary(&e, &[qmat(&[&[0, 1], &[-1, 0]])]).unwrap());
        assert!(is_breve(&e, &[qmat(&[&[1, 0], &[0, -1]])], Sign::Minus).unwrap());
        assert!(!is_breve(&e, &[qmat(&[&[1, 0], &[0, 1]])], Sign::Minus).unwrap());
        assert!(is_unitary(&e, &[qmat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])]).is_err());
        let o = HermitianModule::simple(SimpleInvolutiveAlgebra::rationals(), Sign::Plus, qmat(&[&[1, 0], &[0, 1]])).unwrap();
        let h = qmat(&[&[0, 1], &[1, 0]]);
        assert!(is_breve(&o, &[h], Sign::Minus).unwrap());
    }

    #[test]
    fn composition_examples() {
        let e = sp2();
        let r = BreveElement::new(vec![qmat(&[&[1, 0], &[0, -1]])], Sign::Minus);
        let sq = compose_breve(&e, &r, &r).unwrap();
        assert_eq!(sq, BreveElement::identity(&e));
        let id = BreveElement::identity(&e);
        assert_eq!(compose_breve(&e, &id, &r).unwrap(), r);

        let k = NumberField::gaussian();
        let g = SimpleInvolutiveAlgebra::gaussian();
        let one = Matrix::from_fn(1, 1, |_, _| FactorElem::Field(k.one()));
        let u = HermitianModule::simple(g, Sign::Plus, one.clone()).unwrap();
        let i = BreveElement::new(vec![Matrix::from_fn(1, 1, |_, _| FactorElem::Field(k.generator()))], Sign::Minus);
        let sq = compose_breve(&u, &i, &i).unwrap();
        assert_eq!(sq, BreveElement::new(vec![one], Sign::Plus));
    }
}
