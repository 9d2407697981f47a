use super::{is_lie, is_unitary, BreveElement, LieElement};
use crate::error::{Error, Result};
use crate::hermod::HermitianModule;
use crate::invalg::Sign;
use crate::numfield::{minimal_polynomial, QMatrix, Rational};

/// `x = s u` with `s` semisimple, `u` unipotent, both polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub s: BreveElement,
    pub u: BreveElement,
}

/// Semisimple part by Newton iteration on the squarefree part of the
/// minimal polynomial.
pub fn semisimple_part_q(x: &QMatrix) -> Result<QMatrix> {
    let p = minimal_polynomial(x)?.squarefree_part()?;
    let dp = p.derivative();
    let mut s = x.clone();
    loop {
        let ps = s.eval_poly(&p);
        if ps.is_zero() {
            return Ok(s);
        }
        let d = s.eval_poly(&dp).inverse().map_err(|_| Error::Internal("Newton step singular".into()))?;
        s = s.sub(&ps.mul(&d));
    }
}

/// `(s, s^{-1} x)` on Q-matrices.
pub fn jordan_chevalley_q(x: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    let s = semisimple_part_q(x)?;
    let u = s.inverse()?.mul(x);
    Ok((s, u))
}

pub fn jordan_chevalley(e: &HermitianModule, x: &BreveElement) -> Result<JordanPair> {
    if x.delta != Sign::Plus || !is_unitary(e, &x.blocks)? {
        return Err(Error::NotInGroup("x is not in U(E)".into()));
    }
    let (s, u) = jordan_chevalley_q(&e.map_to_q(&x.blocks, Sign::Plus))?;
    Ok(JordanPair {
        s: BreveElement { blocks: e.map_from_q(&s), delta: Sign::Plus },
        u: BreveElement { blocks: e.map_from_q(&u), delta: Sign::Plus },
    })
}

fn factorial_series(n: &QMatrix, log: bool) -> Result<QMatrix> {
    let d = n.rows();
    if !n.pow(d as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let mut acc = if log { QMatrix::zeros(d, d) } else { QMatrix::identity(d) };
    let mut pw = QMatrix::identity(d);
    let mut fact = Rational::from_integer(1.into());
    for k in 1..=d {
        pw = pw.mul(n);
        if pw.is_zero() {
            break;
        }
        let c = if log {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            Rational::new(sign.into(), (k as i64).into())
        } else {
            fact *= Rational::from_integer((k as i64).into());
            Rational::from_integer(1.into()) / &fact
        };
        acc = acc.add(&pw.scale(&c));
    }
    Ok(acc)
}

pub fn exp_q(n: &QMatrix) -> Result<QMatrix> {
    factorial_series(n, false)
}

pub fn log_q(u: &QMatrix) -> Result<QMatrix> {
    let d = u.rows();
    factorial_series(&u.sub(&QMatrix::identity(d)), true)
}

pub fn log_unipotent(e: &HermitianModule, u: &BreveElement) -> Result<LieElement> {
    if u.delta != Sign::Plus || !is_unitary(e, &u.blocks)? {
        return Err(Error::NotInGroup("u is not in U(E)".into()));
    }
    let q = log_q(&e.map_to_q(&u.blocks, Sign::Plus))?;
    Ok(LieElement { blocks: e.map_from_q(&q) })
}

pub fn exp_nilpotent(e: &HermitianModule, n: &LieElement) -> Result<BreveElement> {
    if !is_lie(e, &n.blocks)? {
        return Err(Error::NotInGroup("n is not in u(E)".into()));
    }
    let q = exp_q(&e.map_to_q(&n.blocks, Sign::Plus))?;
    Ok(BreveElement { blocks: e.map_from_q(&q), delta: Sign::Plus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{cayley, is_unitary, random_mixed, random_nilpotent, random_unipotent, random_unitary};
    use crate::invalg::{FactorElem, SimpleInvolutiveAlgebra};
    use crate::invalg::fmat::FMatrix;
    use crate::numfield::{int, rat, Matrix, NumberField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qmat(rows: &[&[Rational]]) -> FMatrix {
        let f = NumberField::rationals();
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| FactorElem::Field(f.rational(rows[i][j].clone())))
    }

    fn sp(n: usize) -> HermitianModule {
        let j = QMatrix::from_fn(2 * n, 2 * n, |i, k| {
            if k == i + n {
                int(1)
            } else if i == k + n {
                int(-1)
            } else {
                int(0)
            }
        });
        let rows: Vec<Vec<Rational>> = (0..2 * n).map(|i| j.row(i)).collect();
        let refs: Vec<&[Rational]> = rows.iter().map(|r| r.as_slice()).collect();
        HermitianModule::simple(SimpleInvolutiveAlgebra::rationals(), Sign::Minus, qmat(&refs)).unwrap()
    }

    use alloc::vec::Vec;

    #[test]
    fn cayley_example() {
        let e = sp(1);
        let a = LieElement { blocks: alloc::vec![qmat(&[&[int(0), int(1)], &[int(-1), int(0)]])] };
        assert_eq!(cayley(&e, &a).unwrap().blocks, a.blocks);
    }

    #[test]
    fn jordan_examples() {
        let e = sp(1);
        let x = BreveElement { blocks: alloc::vec![qmat(&[&[int(1), int(1)], &[int(0), int(1)]])], delta: Sign::Plus };
        let jp = jordan_chevalley(&e, &x).unwrap();
        assert_eq!(jp.s, BreveElement::identity(&e));
        assert_eq!(jp.u, x);
        let d = BreveElement { blocks: alloc::vec![qmat(&[&[int(2), int(0)], &[int(0), rat(1, 2)]])], delta: Sign::Plus };
        let jp = jordan_chevalley(&e, &d).unwrap();
        assert_eq!(jp.s, d);
        let n = LieElement { blocks: alloc::vec![qmat(&[&[int(0), int(1)], &[int(0), int(0)]])] };
        assert_eq!(exp_nilpotent(&e, &n).unwrap(), x);
        assert_eq!(log_unipotent(&e, &x).unwrap(), n);
    }

    #[test]
    fn random_generators_land_in_group() {
        let e = sp(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let g = random_unitary(&e, &mut rng).unwrap();
            assert!(is_unitary(&e, &g.blocks).unwrap());
            let u = random_unipotent(&e, &mut rng).unwrap();
            assert!(is_unitary(&e, &u.blocks).unwrap());
            let q = e.map_to_q(&u.blocks, Sign::Plus).sub(&QMatrix::identity(4));
            assert!(q.pow(4).is_zero());
            let m = random_mixed(&e, &mut rng).unwrap();
            let jp = jordan_chevalley(&e, &m).unwrap();
            let s = e.map_to_q(&jp.s.blocks, Sign::Plus);
            let u = e.map_to_q(&jp.u.blocks, Sign::Plus);
            assert_eq!(s.mul(&u), u.mul(&s));
            assert!(is_unitary(&e, &jp.s.blocks).unwrap());
            let nil = random_nilpotent(&e, &mut rng).unwrap();
            assert!(is_lie(&e, &nil.blocks).unwrap());
        }
    }
}
