use alloc::vec;
use alloc::vec::Vec;

use super::module::{pairing, HermitianModule, ModuleVector};
use crate::error::{Error, Result};
use crate::invalg::fmat::{self, FMatrix};
use crate::invalg::{AElem, DiscriminantClass, FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{generic, rational_sqrt, square_class, Matrix, NFElem, Rational, Ring};

/// An orthogonal building block found by the greedy decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// A vector with invertible self-pairing.
    Line { v: Vec<FactorElem>, norm: FactorElem },
    /// Isotropic `p, q` with `<p, q> = 1`.
    Plane { p: Vec<FactorElem>, q: Vec<FactorElem> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleSummandLabel {
    SplitRank1,
    SymplecticRank2,
    Diagonal(DiscriminantClass),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSummand {
    pub factor: usize,
    pub basis: Vec<ModuleVector>,
    pub label: SimpleSummandLabel,
}

fn add_vec(f: &SimpleInvolutiveAlgebra, a: &[FactorElem], b: &[FactorElem]) -> Vec<FactorElem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

fn scale_vec(f: &SimpleInvolutiveAlgebra, c: &FactorElem, a: &[FactorElem]) -> Vec<FactorElem> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

fn sub_scaled(f: &SimpleInvolutiveAlgebra, a: &[FactorElem], c: &FactorElem, b: &[FactorElem]) -> Vec<FactorElem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, &f.mul(c, y))).collect()
}

/// A basis of the `A`-module spanned by `vs`, assuming it is free. Each
/// coordinate field is handled separately and the chosen vectors are paired
/// up index by index.
pub fn extract_basis(f: &SimpleInvolutiveAlgebra, vs: &[Vec<FactorElem>]) -> Result<Vec<Vec<FactorElem>>> {
    if vs.is_empty() {
        return Ok(vec![]);
    }
    let n = vs[0].len();
    let field = f.field();
    let ncomp = if f.is_split() { 2 } else { 1 };
    let mut chosen: Vec<Vec<Vec<NFElem>>> = Vec::new();
    for c in 0..ncomp {
        let mut picked: Vec<Vec<NFElem>> = Vec::new();
        for v in vs {
            let col: Vec<NFElem> = v.iter().map(|x| f.components(x)[c].clone()).collect();
            let mut cols = picked.clone();
            cols.push(col.clone());
            let m = Matrix::from_columns(n, &cols);
            if generic::rank(field, &m) == cols.len() {
                picked.push(col);
            }
        }
        chosen.push(picked);
    }
    if ncomp == 2 {
        if chosen[0].len() != chosen[1].len() {
            return Err(Error::Internal("submodule is not free".into()));
        }
        Ok(chosen[0]
            .iter()
            .zip(&chosen[1])
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| FactorElem::Pair(x.clone(), y.clone())).collect())
            .collect())
    } else {
        Ok(chosen[0].iter().map(|a| a.iter().map(|x| FactorElem::Field(x.clone())).collect()).collect())
    }
}

fn candidates(f: &SimpleInvolutiveAlgebra, w: &[Vec<FactorElem>]) -> Vec<Vec<FactorElem>> {
    let mut out: Vec<Vec<FactorElem>> = w.to_vec();
    let theta = f.anti_invariant();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            out.push(add_vec(f, &w[i], &w[j]));
            if let Some(t) = &theta {
                out.push(add_vec(f, &w[i], &scale_vec(f, t, &w[j])));
            }
        }
    }
    out
}

struct Ctx<'a> {
    f: &'a SimpleInvolutiveAlgebra,
    g: &'a FMatrix,
    eps: Sign,
}

impl<'a> Ctx<'a> {
    fn pair(&self, u: &[FactorElem], v: &[FactorElem]) -> FactorElem {
        pairing(self.f, self.g, u, v)
    }

    fn line_complement(&self, w: &[Vec<FactorElem>], v: &[FactorElem], norm: &FactorElem) -> Result<Vec<Vec<FactorElem>>> {
        let inv = self.f.inv(norm).ok_or(Error::NotInvertible)?;
        let proj: Vec<Vec<FactorElem>> =
            w.iter().map(|x| sub_scaled(self.f, x, &self.f.mul(&self.pair(x, v), &inv), v)).collect();
        extract_basis(self.f, &proj)
    }

    fn plane_complement(&self, w: &[Vec<FactorElem>], p: &[FactorElem], q: &[FactorElem]) -> Result<Vec<Vec<FactorElem>>> {
        let proj: Vec<Vec<FactorElem>> = w
            .iter()
            .map(|x| {
                let a = self.pair(x, q);
                let b = self.f.scale_sign(self.eps, &self.pair(x, p));
                sub_scaled(self.f, &sub_scaled(self.f, x, &a, p), &b, q)
            })
            .collect();
        extract_basis(self.f, &proj)
    }

    /// Hyperbolic partner of an isotropic `p`, normalized and isotropic.
    fn partner(&self, w: &[Vec<FactorElem>], p: &[FactorElem]) -> Option<Vec<FactorElem>> {
        let f = self.f;
        for q in candidates(f, w) {
            let s = self.pair(p, &q);
            if let Some(si) = f.inv(&s) {
                let q = scale_vec(f, &f.tau(&si), &q);
                let half = f.from_rational(&Rational::new(1.into(), 2.into()));
                let qq = self.pair(&q, &q);
                return Some(sub_scaled(f, &q, &f.mul(&qq, &half), p));
            }
        }
        None
    }
}

/// Greedy orthogonal decomposition of a single-factor Gram matrix into
/// lines and hyperbolic planes. With `fixed`, the first piece contains
/// that vector as `v` or `p`.
pub fn decompose_factor(
    f: &SimpleInvolutiveAlgebra,
    g: &FMatrix,
    eps: Sign,
    fixed: Option<&[FactorElem]>,
) -> Result<Vec<Piece>> {
    let ctx = Ctx { f, g, eps };
    let n = g.rows();
    let mut w: Vec<Vec<FactorElem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    let mut pieces = Vec::new();
    if let Some(p) = fixed {
        if p.iter().any(|x| !f.is_zero(x)) {
            let norm = ctx.pair(p, p);
            if f.is_unit(&norm) {
                w = ctx.line_complement(&w, p, &norm)?;
                pieces.push(Piece::Line { v: p.to_vec(), norm });
            } else if f.is_zero(&norm) {
                let q = ctx
                    .partner(&w, p)
                    .ok_or_else(|| Error::NoWitness("fixed vector has no hyperbolic partner".into()))?;
                w = ctx.plane_complement(&w, p, &q)?;
                pieces.push(Piece::Plane { p: p.to_vec(), q });
            } else {
                return Err(Error::NoWitness("fixed vector has a non-invertible nonzero self-pairing".into()));
            }
        }
    }
    while !w.is_empty() {
        let cands = candidates(f, &w);
        if let Some((v, norm)) = cands.iter().find_map(|v| {
            let a = ctx.pair(v, v);
            if f.is_unit(&a) {
                Some((v.clone(), a))
            } else {
                None
            }
        }) {
            w = ctx.line_complement(&w, &v, &norm)?;
            pieces.push(Piece::Line { v, norm });
            continue;
        }
        let mut found = None;
        for p in &cands {
            if p.iter().all(|x| f.is_zero(x)) || !f.is_zero(&ctx.pair(p, p)) {
                continue;
            }
            if let Some(q) = ctx.partner(&w, p) {
                found = Some((p.clone(), q));
                break;
            }
        }
        let (p, q) = found.ok_or(Error::Degenerate)?;
        w = ctx.plane_complement(&w, &p, &q)?;
        pieces.push(Piece::Plane { p, q });
    }
    Ok(pieces)
}

/// Canonical representative over Q: the squarefree integer of the square
/// class, with the vector rescaled to match.
pub(crate) fn normalize_line(f: &SimpleInvolutiveAlgebra, v: Vec<FactorElem>, norm: FactorElem) -> (Vec<FactorElem>, FactorElem) {
    if let (SimpleInvolutiveAlgebra::FieldTrivial { field }, FactorElem::Field(x)) = (f, &norm) {
        if field.is_rationals() {
            let a = x.as_rational().expect("rational entry");
            let r = Rational::from_integer(square_class(&a));
            let c = rational_sqrt(&(&r / &a)).expect("square quotient");
            let c = FactorElem::Field(field.rational(c));
            return (scale_vec(f, &c, &v), FactorElem::Field(field.rational(r)));
        }
    }
    (v, norm)
}

/// Canonical representative of the class of `a` (normalized over Q only).
pub fn canonical_class(f: &SimpleInvolutiveAlgebra, a: &FactorElem) -> FactorElem {
    normalize_line(f, vec![], a.clone()).1
}

fn embed(e: &HermitianModule, k: usize, v: &[FactorElem]) -> ModuleVector {
    let mut out = e.zero_vector();
    out.parts[k] = v.to_vec();
    out
}

/// Orthogonal decomposition into simple submodules with their labels.
pub fn orthogonal_decompose(e: &HermitianModule) -> Result<Vec<SimpleSummand>> {
    super::validate_module(e).map_err(|_| Error::Degenerate)?;
    let mut out = Vec::new();
    for k in 0..e.num_factors() {
        let f = e.factor(k);
        for piece in decompose_factor(f, e.gram(k), e.epsilon(), None)? {
            match piece {
                Piece::Line { v, norm } => {
                    let (v, norm) = normalize_line(f, v, norm);
                    let label = if f.is_split() {
                        SimpleSummandLabel::SplitRank1
                    } else {
                        let alg = InvolutiveAlgebra::simple(f.clone());
                        SimpleSummandLabel::Diagonal(DiscriminantClass::new(
                            &alg,
                            AElem { components: vec![norm] },
                            e.epsilon(),
                        )?)
                    };
                    out.push(SimpleSummand { factor: k, basis: vec![embed(e, k, &v)], label });
                }
                Piece::Plane { p, q } => {
                    if !(f.is_trivial() && e.epsilon() == Sign::Minus) {
                        return Err(Error::Internal("hyperbolic plane outside the symplectic case".into()));
                    }
                    out.push(SimpleSummand {
                        factor: k,
                        basis: vec![embed(e, k, &p), embed(e, k, &q)],
                        label: SimpleSummandLabel::SymplecticRank2,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Gram matrix (per factor) of the basis formed by concatenating the
/// summand bases.
pub fn reassembled_gram(e: &HermitianModule, summands: &[SimpleSummand]) -> Vec<FMatrix> {
    (0..e.num_factors())
        .map(|k| {
            let vs: Vec<Vec<FactorElem>> =
                summands.iter().filter(|s| s.factor == k).flat_map(|s| s.basis.iter().map(|b| b.parts[k].clone())).collect();
            super::gram_of(e.factor(k), e.gram(k), &vs)
        })
        .collect()
}

/// Number of positive entries in a diagonalization (A = Q, eps = 1).
pub fn signature(e: &HermitianModule) -> Result<Option<usize>> {
    let (f, g) = e.single()?;
    if !(f.is_trivial() && f.field().is_rationals() && e.epsilon() == Sign::Plus) {
        return Ok(None);
    }
    let mut pos = 0;
    for piece in decompose_factor(f, g, Sign::Plus, None)? {
        if let Piece::Line { norm: FactorElem::Field(x), .. } = piece {
            if x.as_rational().is_some_and(|q| q > Rational::from_integer(0.into())) {
                pos += 1;
            }
        }
    }
    Ok(Some(pos))
}

/// Matrix with the given vectors as columns.
pub fn columns(f: &SimpleInvolutiveAlgebra, n: usize, vs: &[Vec<FactorElem>]) -> FMatrix {
    if vs.is_empty() {
        return fmat::zeros(f, n, 0);
    }
    Matrix::from_columns(n, vs)
}
