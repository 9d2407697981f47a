//! Epsilon-Hermitian (sl2, A)-modules: Jacobson-Morozov triples, weight
//! spaces, decomposition into simple summands and the conjugate-linear
//! involution witness.

pub mod engine;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grp::{is_lie, BreveElement, LieElement};
use crate::hermod::{canonical_class, module_basis, HermitianModule, ModuleVector, Piece};
use crate::invalg::fmat::FMatrix;
use crate::invalg::{AElem, DiscriminantClass, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{factor_rationals, minimal_polynomial, nullspace, QMatrix, Rational, Ring};
use engine::{analyze_triple, jm_q, Sl2Analysis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub h: LieElement,
    pub e: LieElement,
    pub f: LieElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sl2Case {
    SplitAnyRank,
    QuadraticEvenRank,
    QuadraticOdd(DiscriminantClass),
    /// Flag present exactly when half the rank is odd.
    SymplecticEven { irreducible: Option<bool> },
    OrthogonalRank4d,
    OrthogonalOdd(DiscriminantClass),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2SummandLabel {
    pub rank: usize,
    pub case: Sl2Case,
}

impl Sl2SummandLabel {
    /// Legality of the label for its rank.
    pub fn is_legal(&self) -> bool {
        let r = self.rank;
        match &self.case {
            Sl2Case::SplitAnyRank => r >= 1,
            Sl2Case::QuadraticEvenRank => r.is_multiple_of(2) && r > 0,
            Sl2Case::QuadraticOdd(_) | Sl2Case::OrthogonalOdd(_) => r % 2 == 1,
            Sl2Case::SymplecticEven { irreducible } => r.is_multiple_of(2) && r > 0 && irreducible.is_some() == ((r / 2) % 2 == 1),
            Sl2Case::OrthogonalRank4d => r.is_multiple_of(4) && r > 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Summand {
    pub factor: usize,
    pub basis: Vec<ModuleVector>,
    pub label: Sl2SummandLabel,
}

fn factor_module(e: &HermitianModule, k: usize) -> HermitianModule {
    HermitianModule::simple(e.factor(k).clone(), e.epsilon(), e.gram(k).clone()).expect("factor of a valid module")
}

fn block(blocks: &[FMatrix], k: usize) -> Vec<FMatrix> {
    vec![blocks[k].clone()]
}

/// Bracket relations and Lie algebra membership.
pub fn check_triple(e: &HermitianModule, t: &Sl2Triple) -> Result<bool> {
    for x in [&t.h, &t.e, &t.f] {
        if !is_lie(e, &x.blocks)? {
            return Ok(false);
        }
    }
    let q = |x: &LieElement| e.map_to_q(&x.blocks, Sign::Plus);
    let (h, en, f) = (q(&t.h), q(&t.e), q(&t.f));
    let two = Rational::from_integer(2.into());
    Ok(h.bracket(&en) == en.scale(&two) && h.bracket(&f) == f.scale(&two).neg() && en.bracket(&f) == h)
}

pub fn jacobson_morozov(e: &HermitianModule, x: &LieElement) -> Result<Sl2Triple> {
    if !is_lie(e, &x.blocks)? {
        return Err(Error::NotInGroup("e is not in u(E)".into()));
    }
    let model = e.rational_model();
    let q = e.map_to_q(&x.blocks, Sign::Plus);
    if q.is_zero() {
        return Err(Error::ZeroNilpotent);
    }
    if !q.pow(model.dim as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let (h, f) = jm_q(&model, &q)?;
    Ok(Sl2Triple {
        h: LieElement { blocks: e.map_from_q(&h) },
        e: x.clone(),
        f: LieElement { blocks: e.map_from_q(&f) },
    })
}

/// Integer eigenvalues of a semisimple `h`, each with an `A`-basis of its
/// eigenspace.
pub fn weight_spaces(e: &HermitianModule, h: &LieElement) -> Result<BTreeMap<i64, Vec<ModuleVector>>> {
    let model = e.rational_model();
    let q = e.map_to_q(&h.blocks, Sign::Plus);
    let mp = minimal_polynomial(&q)?;
    let mut roots = Vec::new();
    for (p, mult) in factor_rationals(&mp)? {
        if mult != 1 || p.degree() != Some(1) {
            return Err(Error::NonIntegralSpectrum);
        }
        let r = -p.coeff(0);
        if !r.is_integer() {
            return Err(Error::NonIntegralSpectrum);
        }
        roots.push(r);
    }
    let n = model.dim;
    let mut out = BTreeMap::new();
    for r in roots {
        let space = nullspace(&q.sub(&QMatrix::identity(n).scale(&r)));
        let mut vecs = Vec::new();
        for k in 0..e.num_factors() {
            let idem = e.scalar_matrix(k, &e.factor(k).one());
            let parts: Vec<Vec<Rational>> = space.iter().map(|v| idem.apply(v)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
            for b in module_basis(e.factor(k), &model.scalars[k], &parts)? {
                vecs.push(e.vector_from_q(&b));
            }
        }
        out.insert(r.to_integer().to_i64().ok_or(Error::NonIntegralSpectrum)?, vecs);
    }
    Ok(out)
}

fn factor_analysis(e: &HermitianModule, t: &Sl2Triple, k: usize) -> Result<(HermitianModule, Sl2Analysis)> {
    let ek = factor_module(e, k);
    let model = ek.rational_model();
    let q = |x: &LieElement| ek.map_to_q(&block(&x.blocks, k), Sign::Plus);
    let an = analyze_triple(&ek, model, (q(&t.h), q(&t.e), q(&t.f)), None)?;
    Ok((ek, an))
}

fn label_for(alg: &SimpleInvolutiveAlgebra, eps: Sign, d: usize, piece: &Piece) -> Result<Sl2SummandLabel> {
    let class = |norm: &crate::invalg::FactorElem| -> Result<DiscriminantClass> {
        let m = alg.scale_sign(Sign::parity((d - 1) / 2), norm);
        let a = InvolutiveAlgebra::simple(alg.clone());
        DiscriminantClass::new(&a, AElem { components: vec![canonical_class(alg, &m)] }, eps)
    };
    let label = match (alg, piece) {
        (SimpleInvolutiveAlgebra::SplitPair { .. }, Piece::Line { .. }) => Sl2SummandLabel { rank: d, case: Sl2Case::SplitAnyRank },
        (SimpleInvolutiveAlgebra::FieldQuadratic { .. }, Piece::Line { norm, .. }) => {
            if d.is_multiple_of(2) {
                Sl2SummandLabel { rank: d, case: Sl2Case::QuadraticEvenRank }
            } else {
                Sl2SummandLabel { rank: d, case: Sl2Case::QuadraticOdd(class(norm)?) }
            }
        }
        (SimpleInvolutiveAlgebra::FieldTrivial { .. }, Piece::Line { norm, .. }) => match eps {
            Sign::Minus => Sl2SummandLabel {
                rank: d,
                case: Sl2Case::SymplecticEven { irreducible: if (d / 2) % 2 == 1 { Some(true) } else { None } },
            },
            Sign::Plus => Sl2SummandLabel { rank: d, case: Sl2Case::OrthogonalOdd(class(norm)?) },
        },
        (SimpleInvolutiveAlgebra::FieldTrivial { .. }, Piece::Plane { .. }) => match eps {
            Sign::Minus => Sl2SummandLabel { rank: 2 * d, case: Sl2Case::SymplecticEven { irreducible: Some(false) } },
            Sign::Plus => Sl2SummandLabel { rank: 2 * d, case: Sl2Case::OrthogonalRank4d },
        },
        _ => return Err(Error::Internal("unexpected piece shape".into())),
    };
    if !label.is_legal() {
        return Err(Error::Internal("illegal sl2 label".into()));
    }
    Ok(label)
}

/// Orthogonal decomposition into simple (sl2, A)-summands with labels.
pub fn isotypic_decompose(e: &HermitianModule, t: &Sl2Triple) -> Result<Vec<Sl2Summand>> {
    if !check_triple(e, t)? {
        return Err(Error::Precondition("not an sl2-triple in u(E)".into()));
    }
    let mut out = Vec::new();
    for k in 0..e.num_factors() {
        let (ek, an) = factor_analysis(e, t, k)?;
        for r in an.piece_refs() {
            let blockd = &an.blocks[r.block];
            let label = label_for(&an.factor, e.epsilon(), blockd.d, &blockd.pieces[r.piece])?;
            let basis = an
                .summand_vectors(&r)
                .iter()
                .map(|v| {
                    let mut mv = e.zero_vector();
                    mv.parts[k] = ek.vector_from_q(v).parts.remove(0);
                    mv
                })
                .collect();
            out.push(Sl2Summand { factor: k, basis, label });
        }
    }
    Ok(out)
}

/// Conjugate-linear form reversal commuting with `h` and negating `e`, `f`
/// on any module carrying the triple.
pub fn sl2_witness(e: &HermitianModule, t: &Sl2Triple) -> Result<BreveElement> {
    if !check_triple(e, t)? {
        return Err(Error::Precondition("not an sl2-triple in u(E)".into()));
    }
    let mut blocks = Vec::new();
    for k in 0..e.num_factors() {
        let (ek, an) = factor_analysis(e, t, k)?;
        let g = an.witness_q(&[])?;
        blocks.push(ek.map_from_q(&g).remove(0));
    }
    Ok(BreveElement { blocks, delta: Sign::Minus })
}

/// The witness on a simple summand, fixing its designated highest-weight
/// vector.
pub fn simple_involution_witness(e: &HermitianModule, t: &Sl2Triple) -> Result<BreveElement> {
    let (_, _) = e.single()?;
    let (_, an) = factor_analysis(e, t, 0)?;
    if an.piece_refs().len() != 1 {
        return Err(Error::Precondition("summand is not simple".into()));
    }
    sl2_witness(e, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::is_breve;
    use crate::hermod::test_util::qmat;

    fn lie(rows: &[&[i64]]) -> LieElement {
        LieElement { blocks: vec![qmat(rows)] }
    }

    fn sp2() -> HermitianModule {
        HermitianModule::simple(SimpleInvolutiveAlgebra::rationals(), Sign::Minus, qmat(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    #[test]
    fn jm_sp2() {
        let e = sp2();
        let t = jacobson_morozov(&e, &lie(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(t.h, lie(&[&[1, 0], &[0, -1]]));
        assert_eq!(t.f, lie(&[&[0, 0], &[1, 0]]));
        assert!(check_triple(&e, &t).unwrap());
    }

    #[test]
    fn jm_errors() {
        let e = sp2();
        assert_eq!(jacobson_morozov(&e, &lie(&[&[0, 0], &[0, 0]])), Err(Error::ZeroNilpotent));
        assert!(matches!(jacobson_morozov(&e, &lie(&[&[1, 0], &[0, 1]])), Err(Error::NotInGroup(_))));
        assert_eq!(jacobson_morozov(&e, &lie(&[&[1, 0], &[0, -1]])), Err(Error::NotNilpotent));
    }

    #[test]
    fn weights_o21() {
        let e = HermitianModule::simple(SimpleInvolutiveAlgebra::rationals(), Sign::Plus, qmat(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]))
            .unwrap();
        let t = jacobson_morozov(&e, &lie(&[&[0, 1, 0], &[0, 0, -1], &[0, 0, 0]])).unwrap();
        let w = weight_spaces(&e, &t.h).unwrap();
        assert_eq!(w.keys().copied().collect::<Vec<_>>(), vec![-2, 0, 2]);
        assert!(w.values().all(|v| v.len() == 1));
        let s = isotypic_decompose(&e, &t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].label.rank, 3);
        assert!(matches!(s[0].label.case, Sl2Case::OrthogonalOdd(_)));
    }

    #[test]
    fn regular_sp2_irreducible() {
        let e = sp2();
        let t = jacobson_morozov(&e, &lie(&[&[0, 1], &[0, 0]])).unwrap();
        let s = isotypic_decompose(&e, &t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].label, Sl2SummandLabel { rank: 2, case: Sl2Case::SymplecticEven { irreducible: Some(true) } });
        assert_eq!(s[0].basis.len(), 2);
    }

    #[test]
    fn zero_triple_classes() {
        let e = HermitianModule::simple(SimpleInvolutiveAlgebra::rationals(), Sign::Plus, qmat(&[&[1, 0], &[0, -1]])).unwrap();
        let z = lie(&[&[0, 0], &[0, 0]]);
        let t = Sl2Triple { h: z.clone(), e: z.clone(), f: z };
        let s = isotypic_decompose(&e, &t).unwrap();
        let mut reps: Vec<Rational> = s
            .iter()
            .map(|x| match &x.label.case {
                Sl2Case::OrthogonalOdd(c) => match &c.representative.components[0] {
                    crate::invalg::FactorElem::Field(v) => v.as_rational().unwrap(),
                    _ => unreachable!(),
                },
                other => panic!("{other:?}"),
            })
            .collect();
        reps.sort();
        assert_eq!(reps, vec![Rational::from_integer((-1).into()), Rational::from_integer(1.into())]);
    }

    #[test]
    fn witness_sp2() {
        let e = sp2();
        let t = jacobson_morozov(&e, &lie(&[&[0, 1], &[0, 0]])).unwrap();
        let g = simple_involution_witness(&e, &t).unwrap();
        assert!(is_breve(&e, &g.blocks, g.delta).unwrap());
        assert_eq!(g.blocks, vec![qmat(&[&[1, 0], &[0, -1]])]);
    }

    #[test]
    fn witness_gaussian_rank3() {
        let e = HermitianModule::simple(SimpleInvolutiveAlgebra::gaussian(), Sign::Plus, {
            let f = SimpleInvolutiveAlgebra::gaussian();
            let mut g = crate::invalg::fmat::zeros(&f, 3, 3);
            for i in 0..3 {
                g.set(i, 2 - i, f.one());
            }
            g
        })
        .unwrap();
        let x = lie(&[&[0, 1, 0], &[0, 0, -1], &[0, 0, 0]]);
        let t = jacobson_morozov(&e, &x).unwrap();
        let g = sl2_witness(&e, &t).unwrap();
        assert!(is_breve(&e, &g.blocks, g.delta).unwrap());
        let s = isotypic_decompose(&e, &t).unwrap();
        assert!(matches!(s[0].label.case, Sl2Case::QuadraticOdd(_)));
    }
}
