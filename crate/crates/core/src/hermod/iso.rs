use alloc::vec;
use alloc::vec::Vec;

use super::decompose::{columns, decompose_factor, extract_basis, signature, Piece};
use super::module::{gram_of, pairing, HermitianModule};
use crate::error::{Error, Result};
use crate::invalg::fmat::{self, FMatrix};
use crate::invalg::{same_class, AElem, ClassComparison, FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// Blocks `M` with `M^T G_F tau(M) = G_E`; column `j` is the image of
    /// the `j`-th basis vector of `E`.
    Iso(Vec<FMatrix>),
    NotIsomorphic,
    Undecided,
}

/// Checks `M^T G_F tau(M) = G_E` block by block.
pub fn is_isometry(e: &HermitianModule, f: &HermitianModule, m: &[FMatrix]) -> bool {
    if m.len() != e.num_factors() || f.num_factors() != e.num_factors() {
        return false;
    }
    (0..e.num_factors()).all(|k| {
        let a = e.factor(k);
        let mk = &m[k];
        mk.rows() == f.gram(k).rows()
            && mk.cols() == e.gram(k).rows()
            && fmat::mul(a, &fmat::mul(a, &mk.transpose(), f.gram(k)), &fmat::tau(a, mk)) == *e.gram(k)
    })
}

fn one_factor(x: FactorElem) -> AElem {
    AElem { components: vec![x] }
}

fn class_of(f: &SimpleInvolutiveAlgebra, eps: Sign, a: &FactorElem, b: &FactorElem, budget: usize) -> Result<ClassComparison> {
    let alg = InvolutiveAlgebra::simple(f.clone());
    same_class(&alg, eps, &one_factor(a.clone()), &one_factor(b.clone()), None, budget)
}

enum Step {
    Found(Vec<FactorElem>, Vec<Vec<FactorElem>>),
    Undecided,
}

/// Small elements of the factor, used as search coefficients.
fn coefficient_pool(f: &SimpleInvolutiveAlgebra) -> Vec<FactorElem> {
    let mut pool = Vec::new();
    for n in [0i64, 1, -1, 2, -2, 3, -3] {
        pool.push(f.from_int(n));
    }
    if let Some(t) = f.anti_invariant() {
        for n in [1i64, -1, 2, -2] {
            for m in [0i64, 1, -1] {
                pool.push(f.add(&f.mul(&f.from_int(n), &t), &f.from_int(m)));
            }
        }
    }
    pool
}

/// Finds `y` in the span of the orthogonal lines `ws` with `<y, y> = a`
/// and returns it together with the lines of its complement.
fn represent(
    f: &SimpleInvolutiveAlgebra,
    g: &FMatrix,
    eps: Sign,
    ws: &[(Vec<FactorElem>, FactorElem)],
    a: &FactorElem,
    budget: usize,
) -> Result<Step> {
    for (idx, (w, b)) in ws.iter().enumerate() {
        if let ClassComparison::Same(c) = class_of(f, eps, b, a, budget)? {
            let c = &c.components[0];
            let y: Vec<FactorElem> = w.iter().map(|x| f.mul(c, x)).collect();
            let rest = ws.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, l)| l.0.clone()).collect();
            return Ok(Step::Found(y, rest));
        }
    }
    let pool = coefficient_pool(f);
    let r = ws.len();
    let mut idx = vec![0usize; r];
    let mut tried = 0usize;
    loop {
        let mut k = 0;
        loop {
            if k == r {
                return Ok(Step::Undecided);
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        tried += 1;
        if tried > budget {
            return Ok(Step::Undecided);
        }
        let n = ws[0].0.len();
        let mut y = vec![f.zero(); n];
        for (i, (w, _)) in ws.iter().enumerate() {
            let c = &pool[idx[i]];
            if f.is_zero(c) {
                continue;
            }
            for (yy, x) in y.iter_mut().zip(w) {
                *yy = f.add(yy, &f.mul(c, x));
            }
        }
        let norm = pairing(f, g, &y, &y);
        if !f.is_unit(&norm) {
            continue;
        }
        if let ClassComparison::Same(c) = class_of(f, eps, &norm, a, budget)? {
            let c = &c.components[0];
            let y: Vec<FactorElem> = y.iter().map(|x| f.mul(c, x)).collect();
            let inv = f.inv(a).ok_or(Error::NotInvertible)?;
            let proj: Vec<Vec<FactorElem>> = ws
                .iter()
                .map(|(w, _)| {
                    let s = f.mul(&pairing(f, g, w, &y), &inv);
                    w.iter().zip(&y).map(|(x, z)| f.sub(x, &f.mul(&s, z))).collect()
                })
                .collect();
            return Ok(Step::Found(y, extract_basis(f, &proj)?));
        }
    }
}

/// Lines of an orthogonal decomposition of the span of `vs`.
fn lines_of(f: &SimpleInvolutiveAlgebra, g: &FMatrix, eps: Sign, vs: &[Vec<FactorElem>]) -> Result<Vec<(Vec<FactorElem>, FactorElem)>> {
    if vs.is_empty() {
        return Ok(vec![]);
    }
    let sub = gram_of(f, g, vs);
    let mut out = Vec::new();
    for piece in decompose_factor(f, &sub, eps, None)? {
        match piece {
            Piece::Line { v, norm } => {
                let n = vs[0].len();
                let mut y = vec![f.zero(); n];
                for (c, w) in v.iter().zip(vs) {
                    for (yy, x) in y.iter_mut().zip(w) {
                        *yy = f.add(yy, &f.mul(c, x));
                    }
                }
                out.push((y, norm));
            }
            Piece::Plane { .. } => return Err(Error::Internal("unexpected hyperbolic plane".into())),
        }
    }
    Ok(out)
}

fn factor_iso(
    f: &SimpleInvolutiveAlgebra,
    eps: Sign,
    ge: &FMatrix,
    gf: &FMatrix,
    budget: usize,
) -> Result<Option<Option<FMatrix>>> {
    let n = ge.rows();
    if gf.rows() != n {
        return Ok(Some(None));
    }
    if n == 0 {
        return Ok(Some(Some(fmat::zeros(f, 0, 0))));
    }
    let pe = decompose_factor(f, ge, eps, None)?;
    let pf = decompose_factor(f, gf, eps, None)?;
    let mut src: Vec<Vec<FactorElem>> = Vec::new();
    let mut dst: Vec<Vec<FactorElem>> = Vec::new();
    if f.is_trivial() && eps == Sign::Minus {
        for (a, b) in pe.iter().zip(&pf) {
            if let (Piece::Plane { p, q }, Piece::Plane { p: p2, q: q2 }) = (a, b) {
                src.extend([p.clone(), q.clone()]);
                dst.extend([p2.clone(), q2.clone()]);
            }
        }
    } else if f.is_split() {
        let norm1 = |pieces: &[Piece]| -> Vec<Vec<FactorElem>> {
            pieces
                .iter()
                .map(|p| match p {
                    Piece::Line { v, norm: FactorElem::Pair(x, _) } => {
                        let fl = f.field();
                        let b = FactorElem::Pair(fl.inv(x).expect("unit"), fl.one());
                        v.iter().map(|y| f.mul(&b, y)).collect()
                    }
                    _ => panic!("split factor pieces are lines"),
                })
                .collect()
        };
        src = norm1(&pe);
        dst = norm1(&pf);
    } else {
        let le: Vec<(Vec<FactorElem>, FactorElem)> = pe
            .into_iter()
            .map(|p| match p {
                Piece::Line { v, norm } => (v, norm),
                Piece::Plane { .. } => panic!("field pieces are lines"),
            })
            .collect();
        let mut lf: Vec<(Vec<FactorElem>, FactorElem)> = pf
            .into_iter()
            .map(|p| match p {
                Piece::Line { v, norm } => (v, norm),
                Piece::Plane { .. } => panic!("field pieces are lines"),
            })
            .collect();
        // determinant classes must agree
        let prod = |ls: &[(Vec<FactorElem>, FactorElem)]| ls.iter().fold(f.one(), |acc, (_, a)| f.mul(&acc, a));
        let deps = Sign::parity(if eps == Sign::Minus { n } else { 0 });
        if class_of(f, deps, &prod(&le), &prod(&lf), budget)? == ClassComparison::Different {
            return Ok(Some(None));
        }
        for (v, a) in &le {
            match represent(f, gf, eps, &lf, a, budget)? {
                Step::Found(y, rest) => {
                    src.push(v.clone());
                    dst.push(y);
                    lf = lines_of(f, gf, eps, &rest)?;
                }
                Step::Undecided => return Ok(None),
            }
        }
    }
    if src.len() != n || dst.len() != n {
        return Ok(Some(None));
    }
    let s = columns(f, n, &src);
    let t = columns(f, n, &dst);
    let m = fmat::mul(f, &t, &fmat::inverse(f, &s)?);
    Ok(Some(Some(m)))
}

/// Searches for an isometry `E -> F`.
pub fn find_iso(e: &HermitianModule, f: &HermitianModule, budget: usize) -> Result<IsoResult> {
    if e.algebra() != f.algebra() || e.epsilon() != f.epsilon() {
        return Err(Error::Invalid("modules over different algebras or signs".into()));
    }
    if e.rank_per_factor() != f.rank_per_factor() {
        return Ok(IsoResult::NotIsomorphic);
    }
    if e.single().is_ok() && signature(e)? != signature(f)? {
        return Ok(IsoResult::NotIsomorphic);
    }
    if e.grams() == f.grams() {
        let id = (0..e.num_factors()).map(|k| fmat::identity(e.factor(k), e.gram(k).rows())).collect();
        return Ok(IsoResult::Iso(id));
    }
    let mut blocks = Vec::new();
    let mut undecided = false;
    for k in 0..e.num_factors() {
        match factor_iso(e.factor(k), e.epsilon(), e.gram(k), f.gram(k), budget)? {
            Some(Some(m)) => blocks.push(m),
            Some(None) => return Ok(IsoResult::NotIsomorphic),
            None => undecided = true,
        }
    }
    if undecided {
        return Ok(IsoResult::Undecided);
    }
    if !is_isometry(e, f, &blocks) {
        return Err(Error::Internal("assembled isomorphism failed verification".into()));
    }
    Ok(IsoResult::Iso(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermod::module::tests::qmat;
    use crate::hermod::tau_twist;
    use crate::invalg::DEFAULT_SEARCH_BUDGET;
    use crate::numfield::{Matrix, NumberField, Poly};

    #[test]
    fn iso_examples() {
        let q = SimpleInvolutiveAlgebra::rationals();
        let e = HermitianModule::simple(q.clone(), Sign::Plus, qmat(&[&[1, 0], &[0, -1]])).unwrap();
        let h = HermitianModule::simple(q.clone(), Sign::Plus, qmat(&[&[0, 1], &[1, 0]])).unwrap();
        match find_iso(&e, &e, 100).unwrap() {
            IsoResult::Iso(m) => assert_eq!(m[0], qmat(&[&[1, 0], &[0, 1]])),
            r => panic!("{:?}", r),
        }
        match find_iso(&e, &h, DEFAULT_SEARCH_BUDGET).unwrap() {
            IsoResult::Iso(m) => assert!(is_isometry(&e, &h, &m)),
            r => panic!("{:?}", r),
        }
        let p = HermitianModule::simple(q, Sign::Plus, qmat(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(find_iso(&p, &e, 100).unwrap(), IsoResult::NotIsomorphic);
    }

    #[test]
    fn twist_iso_gaussian() {
        let k = NumberField::gaussian();
        let z = |a: i64, b: i64| FactorElem::Field(k.elem(&Poly::from_ints(&[a, b])));
        let gram = Matrix::from_rows(vec![vec![z(2, 0), z(1, 3)], vec![z(1, -3), z(-1, 0)]]).unwrap();
        let e = HermitianModule::simple(SimpleInvolutiveAlgebra::gaussian(), Sign::Plus, gram).unwrap();
        let t = tau_twist(&e);
        match find_iso(&e, &t, DEFAULT_SEARCH_BUDGET).unwrap() {
            IsoResult::Iso(m) => assert!(is_isometry(&e, &t, &m)),
            r => panic!("{:?}", r),
        }
    }
}
