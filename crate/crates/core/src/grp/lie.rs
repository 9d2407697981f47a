use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;
use rand::Rng;

use super::jordan::exp_q;
use super::{BreveElement, LieElement};
use crate::error::{Error, Result};
use crate::hermod::{decompose_factor, extract_basis, gram_of, HermitianModule, ModuleVector, Piece, RationalModel};
use crate::invalg::fmat;
use crate::invalg::{same_class, AElem, ClassComparison, FactorElem, InvolutiveAlgebra, Sign};
use crate::numfield::{nullspace, Matrix, QMatrix, Rational, Ring};

/// Numerator in `[-9, 9]`, denominator in `[1, 4]`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    Rational::new(n.into(), d.into())
}

/// Basis of the kernel of a linear map on `n x n` matrices.
pub fn matrix_kernel(n: usize, map: impl Fn(&QMatrix) -> Vec<Rational>) -> Vec<QMatrix> {
    let mut cols = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let mut m = QMatrix::zeros(n, n);
            m.set(r, s, Rational::from_integer(1.into()));
            cols.push(map(&m));
        }
    }
    let rows = cols[0].len();
    let a = QMatrix::from_columns(rows, &cols);
    nullspace(&a).iter().map(|v| QMatrix::unflatten(n, n, v)).collect()
}

fn lie_conditions(model: &RationalModel, x: &QMatrix) -> Vec<Rational> {
    let mut out = x.transpose().mul(&model.form).add(&model.form.mul(x)).flatten();
    for s in model.scalars.iter().flatten() {
        out.extend(x.bracket(s).flatten());
    }
    out
}

/// Q-basis of `u(E)` as Q-matrices on the trace-form model.
pub fn lie_basis_q(model: &RationalModel) -> Vec<QMatrix> {
    matrix_kernel(model.dim, |x| lie_conditions(model, x))
}

fn random_combination<R: Rng + ?Sized>(n: usize, basis: &[QMatrix], rng: &mut R) -> QMatrix {
    let mut acc = QMatrix::zeros(n, n);
    for b in basis {
        let c = small_rational(rng);
        if !c.is_zero() {
            acc = acc.add(&b.scale(&c));
        }
    }
    acc
}

pub fn random_lie<R: Rng + ?Sized>(e: &HermitianModule, rng: &mut R) -> Result<LieElement> {
    let model = e.rational_model();
    let basis = lie_basis_q(&model);
    Ok(LieElement { blocks: e.map_from_q(&random_combination(model.dim, &basis, rng)) })
}

fn cayley_q(a: &QMatrix) -> Result<QMatrix> {
    let n = a.rows();
    let id = QMatrix::identity(n);
    Ok(id.sub(a).inverse()?.mul(&id.add(a)))
}

/// `(1 - a)^{-1} (1 + a)`.
pub fn cayley(e: &HermitianModule, a: &LieElement) -> Result<BreveElement> {
    let q = e.map_to_q(&a.blocks, Sign::Plus);
    let x = cayley_q(&q).map_err(|_| Error::NotInvertible)?;
    Ok(BreveElement { blocks: e.map_from_q(&x), delta: Sign::Plus })
}

const CAYLEY_ATTEMPTS: usize = 16;

fn random_unitary_q<R: Rng + ?Sized>(model: &RationalModel, basis: &[QMatrix], rng: &mut R) -> Result<QMatrix> {
    for _ in 0..CAYLEY_ATTEMPTS {
        let a = random_combination(model.dim, basis, rng);
        if let Ok(x) = cayley_q(&a) {
            return Ok(x);
        }
    }
    Err(Error::Internal("Cayley transform singular after all resamples".into()))
}

/// Cayley transform of a random Lie algebra element.
pub fn random_unitary<R: Rng + ?Sized>(e: &HermitianModule, rng: &mut R) -> Result<BreveElement> {
    let model = e.rational_model();
    let basis = lie_basis_q(&model);
    Ok(BreveElement { blocks: e.map_from_q(&random_unitary_q(&model, &basis, rng)?), delta: Sign::Plus })
}

/// A sequence of linearly independent, mutually orthogonal isotropic
/// vectors, found factor by factor.
pub fn isotropic_flag(e: &HermitianModule) -> Result<Vec<ModuleVector>> {
    let mut out = Vec::new();
    for k in 0..e.num_factors() {
        let f = e.factor(k);
        let g = e.gram(k);
        let n = g.rows();
        let mut chosen: Vec<Vec<FactorElem>> = Vec::new();
        loop {
            let perp: Vec<Vec<FactorElem>> = if chosen.is_empty() {
                (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
            } else {
                let rows: Vec<Vec<FactorElem>> = chosen
                    .iter()
                    .map(|v| {
                        let tv: Vec<FactorElem> = v.iter().map(|x| f.tau(x)).collect();
                        fmat::apply(f, g, &tv)
                    })
                    .collect();
                fmat::kernel(f, &Matrix::from_rows(rows).expect("rows"))
            };
            let mut all = chosen.clone();
            all.extend(perp);
            let basis = extract_basis(f, &all)?;
            let w: Vec<Vec<FactorElem>> = basis[chosen.len()..].to_vec();
            if w.is_empty() {
                break;
            }
            let sub = gram_of(f, g, &w);
            let comb = |c: &[FactorElem]| -> Vec<FactorElem> {
                let mut y = vec![f.zero(); n];
                for (ci, wi) in c.iter().zip(&w) {
                    for (yy, x) in y.iter_mut().zip(wi) {
                        *yy = f.add(yy, &f.mul(ci, x));
                    }
                }
                y
            };
            let pieces = decompose_factor(f, &sub, e.epsilon(), None)?;
            let mut next = None;
            for p in &pieces {
                if let Piece::Plane { p, .. } = p {
                    next = Some(comb(p));
                    break;
                }
            }
            if next.is_none() {
                let lines: Vec<(Vec<FactorElem>, FactorElem)> = pieces
                    .iter()
                    .filter_map(|p| match p {
                        Piece::Line { v, norm } => Some((comb(v), norm.clone())),
                        _ => None,
                    })
                    .collect();
                let alg = InvolutiveAlgebra::simple(f.clone());
                'outer: for i in 0..lines.len() {
                    for j in i + 1..lines.len() {
                        let target = AElem { components: vec![f.neg(&lines[i].1)] };
                        let src = AElem { components: vec![lines[j].1.clone()] };
                        if let ClassComparison::Same(b) = same_class(&alg, e.epsilon(), &src, &target, None, 2000)? {
                            let b = &b.components[0];
                            next = Some(lines[i].0.iter().zip(&lines[j].0).map(|(x, y)| f.add(x, &f.mul(b, y))).collect());
                            break 'outer;
                        }
                    }
                }
            }
            match next {
                Some(v) => chosen.push(v),
                None => break,
            }
        }
        for v in chosen {
            let mut mv = e.zero_vector();
            mv.parts[k] = v;
            out.push(mv);
        }
    }
    Ok(out)
}

fn span_basis(vs: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut s = crate::numfield::Span::new();
    vs.iter().filter(|v| s.insert(v)).cloned().collect()
}

fn perp(model: &RationalModel, sub: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if sub.is_empty() {
        return (0..model.dim).map(|i| (0..model.dim).map(|j| Rational::from_integer(((i == j) as i64).into())).collect()).collect();
    }
    let rows: Vec<Vec<Rational>> = sub.iter().map(|v| model.form.apply(v)).collect();
    let a = QMatrix::from_rows(rows).expect("rows");
    nullspace(&a)
}

fn nilradical_basis<R: Rng + ?Sized>(e: &HermitianModule, model: &RationalModel, rng: &mut R) -> Result<Vec<QMatrix>> {
    let flag = isotropic_flag(e)?;
    let n = model.dim;
    if flag.is_empty() {
        return Ok(vec![]);
    }
    let m = flag.len();
    let mut chosen: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
    if chosen.is_empty() {
        chosen.push(rng.gen_range(0..m));
    }
    let scalars = model.all_scalars();
    let mut members: Vec<Vec<Vec<Rational>>> = Vec::new();
    for &i in &chosen {
        let mut vs = Vec::new();
        for v in &flag[..=i] {
            let q = e.vector_to_q(v);
            for s in &scalars {
                vs.push(s.apply(&q));
            }
        }
        members.push(span_basis(&vs));
    }
    let mut chain = members.clone();
    for sub in members.iter().rev() {
        chain.push(perp(model, sub));
    }
    chain.push(perp(model, &[]));
    chain.dedup_by(|a, b| a.len() == b.len());
    let mut constraints: Vec<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> = Vec::new();
    let mut prev: Vec<Vec<Rational>> = Vec::new();
    for cur in chain {
        let ann = if prev.is_empty() {
            perp_plain(n, &[])
        } else {
            perp_plain(n, &prev)
        };
        constraints.push((ann, cur.clone()));
        prev = cur;
    }
    Ok(matrix_kernel(n, |x| {
        let mut out = lie_conditions(model, x);
        for (ann, cur) in &constraints {
            for c in cur {
                let xc = x.apply(c);
                for y in ann {
                    out.push(crate::hermod::dot(y, &xc));
                }
            }
        }
        out
    }))
}

fn perp_plain(n: usize, sub: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if sub.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| Rational::from_integer(((i == j) as i64).into())).collect()).collect();
    }
    nullspace(&QMatrix::from_rows(sub.to_vec()).expect("rows"))
}

fn random_nilpotent_q<R: Rng + ?Sized>(e: &HermitianModule, model: &RationalModel, lie: &[QMatrix], rng: &mut R) -> Result<QMatrix> {
    let basis = nilradical_basis(e, model, rng)?;
    let n = model.dim;
    let mut nil = QMatrix::zeros(n, n);
    for _ in 0..8 {
        nil = random_combination(n, &basis, rng);
        if !nil.is_zero() || basis.is_empty() {
            break;
        }
    }
    if !nil.pow(n as u32).is_zero() {
        return Err(Error::Internal("flag construction produced a non-nilpotent".into()));
    }
    let g = sparse_unitary_q(model, lie, rng)?;
    Ok(g.mul(&nil).mul(&g.inverse()?))
}

/// Cayley transform of a combination of a few random basis elements;
/// keeps conjugated elements small.
fn sparse_unitary_q<R: Rng + ?Sized>(model: &RationalModel, basis: &[QMatrix], rng: &mut R) -> Result<QMatrix> {
    if basis.is_empty() {
        return Ok(QMatrix::identity(model.dim));
    }
    for _ in 0..CAYLEY_ATTEMPTS {
        let mut a = QMatrix::zeros(model.dim, model.dim);
        for _ in 0..SPARSE_TERMS {
            let b = &basis[rng.gen_range(0..basis.len())];
            a = a.add(&b.scale(&small_rational(rng)));
        }
        if let Ok(x) = cayley_q(&a) {
            return Ok(x);
        }
    }
    Err(Error::Internal("Cayley transform singular after all resamples".into()))
}

const SPARSE_TERMS: usize = 3;

/// A nilpotent element of `u(E)` from the nilradical of a random isotropic
/// flag's stabilizer, conjugated by a random unitary.
pub fn random_nilpotent<R: Rng + ?Sized>(e: &HermitianModule, rng: &mut R) -> Result<LieElement> {
    let model = e.rational_model();
    let lie = lie_basis_q(&model);
    Ok(LieElement { blocks: e.map_from_q(&random_nilpotent_q(e, &model, &lie, rng)?) })
}

pub fn random_unipotent<R: Rng + ?Sized>(e: &HermitianModule, rng: &mut R) -> Result<BreveElement> {
    let model = e.rational_model();
    let lie = lie_basis_q(&model);
    let n = random_nilpotent_q(e, &model, &lie, rng)?;
    Ok(BreveElement { blocks: e.map_from_q(&exp_q(&n)?), delta: Sign::Plus })
}

fn centralizer_element<R: Rng + ?Sized>(model: &RationalModel, nil: &QMatrix, rng: &mut R) -> QMatrix {
    let basis = matrix_kernel(model.dim, |x| {
        let mut out = lie_conditions(model, x);
        out.extend(x.bracket(nil).flatten());
        out
    });
    random_combination(model.dim, &basis, rng)
}

/// `c exp(N)` with `c` a Cayley transform commuting with the nilpotent `N`.
pub fn random_mixed<R: Rng + ?Sized>(e: &HermitianModule, rng: &mut R) -> Result<BreveElement> {
    let model = e.rational_model();
    let lie = lie_basis_q(&model);
    let nil = random_nilpotent_q(e, &model, &lie, rng)?;
    for _ in 0..CAYLEY_ATTEMPTS {
        let a = centralizer_element(&model, &nil, rng);
        if let Ok(c) = cayley_q(&a) {
            let x = c.mul(&exp_q(&nil)?);
            return Ok(BreveElement { blocks: e.map_from_q(&x), delta: Sign::Plus });
        }
    }
    Err(Error::Internal("Cayley transform singular after all resamples".into()))
}

/// `a + N` with `a` in the centralizer of the nilpotent `N`.
pub fn random_mixed_lie<R: Rng + ?Sized>(e: &HermitianModule, rng: &mut R) -> Result<LieElement> {
    let model = e.rational_model();
    let lie = lie_basis_q(&model);
    let nil = random_nilpotent_q(e, &model, &lie, rng)?;
    let a = centralizer_element(&model, &nil, rng);
    Ok(LieElement { blocks: e.map_from_q(&a.add(&nil)) })
}
