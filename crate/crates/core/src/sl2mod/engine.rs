//! Q-level sl2 machinery on the trace-form model of a single-factor module.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grp::lie_basis_q;
use crate::hermod::{decompose_factor, induced_module, HermitianModule, InducedModule, Piece, RationalModel};
use crate::invalg::{FactorElem, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{nullspace, solve_vec, LinearSolution, QMatrix, Rational, Ring, Span};

/// Completes a nonzero nilpotent `e` of the Lie algebra to `(h, f)`.
pub fn jm_q(model: &RationalModel, e: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    let lie = lie_basis_q(model);
    let n = model.dim;
    let two_e: Vec<Rational> = e.scale(&Rational::from_integer(2.into())).flatten();
    let cols: Vec<Vec<Rational>> = lie.iter().map(|y| e.bracket(y).bracket(e).flatten()).collect();
    let a = QMatrix::from_columns(n * n, &cols);
    let y = match solve_vec(&a, &two_e)? {
        LinearSolution::Solved { particular, .. } => particular,
        LinearSolution::Inconsistent => return Err(Error::Internal("JM solvability violated".into())),
    };
    let ymat = combine(n, &lie, &y);
    let h = e.bracket(&ymat);
    let two = Rational::from_integer(2.into());
    let cols: Vec<Vec<Rational>> = lie
        .iter()
        .map(|f| {
            let mut c = e.bracket(f).flatten();
            c.extend(h.bracket(f).add(&f.scale(&two)).flatten());
            c
        })
        .collect();
    let mut rhs = h.flatten();
    rhs.extend(vec![Rational::zero(); n * n]);
    let a = QMatrix::from_columns(2 * n * n, &cols);
    let fc = match solve_vec(&a, &rhs)? {
        LinearSolution::Solved { particular, .. } => particular,
        LinearSolution::Inconsistent => return Err(Error::Internal("JM solvability violated".into())),
    };
    Ok((h, combine(n, &lie, &fc)))
}

fn combine(n: usize, basis: &[QMatrix], c: &[Rational]) -> QMatrix {
    let mut acc = QMatrix::zeros(n, n);
    for (b, x) in basis.iter().zip(c) {
        if !x.is_zero() {
            acc = acc.add(&b.scale(x));
        }
    }
    acc
}

/// Highest-weight space `P_d` with its form `<v, f^{d-1} w>` and an
/// orthogonal decomposition of it.
#[derive(Clone, Debug)]
pub struct HighestWeight {
    pub d: usize,
    pub eps: Sign,
    pub induced: InducedModule,
    pub pieces: Vec<Piece>,
}

/// The sl2 structure of a single-factor module for a given nilpotent.
#[derive(Clone, Debug)]
pub struct Sl2Analysis {
    pub factor: SimpleInvolutiveAlgebra,
    pub model: RationalModel,
    pub h: QMatrix,
    pub e: QMatrix,
    pub f: QMatrix,
    pub blocks: Vec<HighestWeight>,
}

/// Rebases the highest-weight vectors `p` of weight `d - 1` so that their
/// lowest-weight images are small representatives of
/// `ker e^d / (ker e^{d-1} + e ker e^{d+1})`. The form `<v, f^{d-1} w>` then
/// equals `(-1)^{d-1} / ((d-1)!)^2` times `<u, e^{d-1} u'>` on those
/// representatives and keeps small entries.
fn rebase_highest(e: &QMatrix, f: &QMatrix, d: usize, p: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = e.rows();
    let m = p.len();
    let mut span = Span::new();
    let mut cols = Vec::new();
    let below = nullspace(&e.pow((d - 1) as u32));
    let above = nullspace(&e.pow((d + 1) as u32)).into_iter().map(|v| e.apply(&v));
    for v in below.into_iter().chain(above) {
        if span.insert(&v) {
            cols.push(v);
        }
    }
    let sub = cols.len();
    for v in nullspace(&e.pow(d as u32)) {
        if cols.len() == sub + m {
            break;
        }
        if span.insert(&v) {
            cols.push(v);
        }
    }
    if cols.len() != sub + m {
        return Err(Error::Internal("lowest-weight quotient has the wrong dimension".into()));
    }
    let a = QMatrix::from_columns(n, &cols);
    let fd = f.pow((d - 1) as u32);
    let mut coords = Vec::new();
    for v in p {
        match solve_vec(&a, &fd.apply(v))? {
            LinearSolution::Solved { particular, .. } => coords.push(particular[sub..].to_vec()),
            LinearSolution::Inconsistent => return Err(Error::Internal("lowest-weight image outside ker e^d".into())),
        }
    }
    let minv = QMatrix::from_columns(m, &coords).inverse()?;
    Ok((0..m)
        .map(|i| {
            let mut out = vec![Rational::zero(); n];
            for (j, v) in p.iter().enumerate() {
                let c = minv.get(j, i);
                if !c.is_zero() {
                    for (x, y) in out.iter_mut().zip(v) {
                        *x += c * y;
                    }
                }
            }
            out
        })
        .collect())
}

/// Highest-weight data for a triple (given on the Q-model). With `fixed`,
/// a vector of `ker e` that every piece decomposition must contain.
pub fn analyze_triple(
    module: &HermitianModule,
    model: RationalModel,
    (h, e, f): (QMatrix, QMatrix, QMatrix),
    fixed: Option<&[Rational]>,
) -> Result<Sl2Analysis> {
    let (alg, _) = module.single()?;
    let alg = alg.clone();
    let n = model.dim;
    let ker_e = nullspace(&e);
    let mut blocks = Vec::new();
    let mut bases: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut total = 0;
    for d in 1..=n {
        if total == ker_e.len() {
            break;
        }
        let shift = h.sub(&QMatrix::identity(n).scale(&Rational::from_integer(((d - 1) as i64).into())));
        let mut rows = e.clone();
        rows = QMatrix::from_rows((0..2 * n).map(|i| if i < n { rows.row(i) } else { shift.row(i - n) }).collect())?;
        let p = nullspace(&rows);
        if p.is_empty() {
            continue;
        }
        let p = rebase_highest(&e, &f, d, &p)?;
        total += p.len();
        let phi = model.form.mul(&f.pow((d - 1) as u32));
        let eps = module.epsilon().times(Sign::parity(d - 1));
        let induced = induced_module(&alg, &model.scalars[0], &p, &phi, eps)?;
        bases.push(p);
        blocks.push(HighestWeight { d, eps, induced, pieces: Vec::new() });
    }
    if total != ker_e.len() {
        return Err(Error::Internal("highest-weight spaces do not fill ker e".into()));
    }
    let fixed_parts: Vec<Option<Vec<FactorElem>>> = match fixed {
        None => vec![None; blocks.len()],
        Some(v) => {
            let cols: Vec<Vec<Rational>> = bases.iter().flatten().cloned().collect();
            let a = QMatrix::from_columns(n, &cols);
            let sol = match solve_vec(&a, v)? {
                LinearSolution::Solved { particular, .. } => particular,
                LinearSolution::Inconsistent => {
                    return Err(Error::Precondition("fixed vector is not killed by the nilpotent part".into()))
                }
            };
            let mut out = Vec::new();
            let mut off = 0;
            for (b, basis) in blocks.iter().zip(&bases) {
                let mut part = vec![Rational::zero(); n];
                for (k, col) in basis.iter().enumerate() {
                    let c = &sol[off + k];
                    if !c.is_zero() {
                        for (x, y) in part.iter_mut().zip(col) {
                            *x += c * y;
                        }
                    }
                }
                off += basis.len();
                out.push(if part.iter().all(|x| x.is_zero()) { None } else { Some(b.induced.coords_of(&part)?) });
            }
            out
        }
    };
    for (b, fx) in blocks.iter_mut().zip(fixed_parts) {
        b.pieces = decompose_factor(&alg, b.induced.module.gram(0), b.eps, fx.as_deref())?;
    }
    Ok(Sl2Analysis { factor: alg, model, h, e, f, blocks })
}

/// Runs JM (or the zero triple) and analyzes.
pub fn analyze(module: &HermitianModule, e: &QMatrix, fixed: Option<&[Rational]>) -> Result<Sl2Analysis> {
    let model = module.rational_model();
    let n = model.dim;
    let triple = if e.is_zero() {
        (QMatrix::zeros(n, n), e.clone(), QMatrix::zeros(n, n))
    } else {
        let (h, f) = jm_q(&model, e)?;
        (h, e.clone(), f)
    };
    analyze_triple(module, model, triple, fixed)
}

/// One sl2-stable orthogonal summand: the piece with its cyclic span.
#[derive(Clone, Debug)]
pub struct PieceRef {
    pub block: usize,
    pub piece: usize,
    /// Dimension over Q of the generated summand.
    pub dim_q: usize,
}

impl Sl2Analysis {
    pub fn piece_refs(&self) -> Vec<PieceRef> {
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            for (pi, p) in b.pieces.iter().enumerate() {
                let lines = match p {
                    Piece::Line { .. } => 1,
                    Piece::Plane { .. } => 2,
                };
                out.push(PieceRef { block: bi, piece: pi, dim_q: lines * b.d * self.factor.dim_q() });
            }
        }
        out
    }

    /// Generators of a piece with the scalar `lambda` by which the witness
    /// acts on them.
    fn generators(&self, block: &HighestWeight, piece: &Piece) -> Vec<(Vec<FactorElem>, Sign)> {
        match piece {
            Piece::Line { v, .. } => vec![(v.clone(), Sign::Plus)],
            Piece::Plane { p, q } => vec![(p.clone(), Sign::Plus), (q.clone(), block.eps)],
        }
    }

    /// Q-vectors `f^j w` over the cyclic summand of a piece, and their
    /// images under the witness.
    fn piece_columns(&self, block: &HighestWeight, piece: &Piece, flip: bool) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let alg = &self.factor;
        let mut src = Vec::new();
        let mut img = Vec::new();
        for (gen, lambda) in self.generators(block, piece) {
            for w in alg.q_basis() {
                let a: Vec<FactorElem> = gen.iter().map(|c| alg.mul(&w, c)).collect();
                let tw = alg.scale_sign(lambda, &alg.tau(&w));
                let b: Vec<FactorElem> = gen.iter().map(|c| alg.mul(&tw, c)).collect();
                let mut s = block.induced.embed(&a);
                let mut t = block.induced.embed(&b);
                if flip {
                    t = t.iter().map(|x| -x).collect();
                }
                for j in 0..block.d {
                    src.push(s.clone());
                    if j % 2 == 1 {
                        img.push(t.iter().map(|x| -x).collect());
                    } else {
                        img.push(t.clone());
                    }
                    s = self.f.apply(&s);
                    t = self.f.apply(&t);
                }
            }
        }
        (src, img)
    }

    /// The conjugate-linear, form-reversing map fixing every designated
    /// generator, negating `e` and `f`; pieces listed in `flips` are
    /// additionally multiplied by `-1`.
    pub fn witness_q(&self, flips: &[bool]) -> Result<QMatrix> {
        let n = self.model.dim;
        let mut src = Vec::with_capacity(n);
        let mut img = Vec::with_capacity(n);
        let mut idx = 0;
        for b in &self.blocks {
            for p in &b.pieces {
                let (s, t) = self.piece_columns(b, p, flips.get(idx).copied().unwrap_or(false));
                src.extend(s);
                img.extend(t);
                idx += 1;
            }
        }
        if src.len() != n {
            return Err(Error::Internal("sl2 summands do not span the module".into()));
        }
        let s = QMatrix::from_columns(n, &src);
        let t = QMatrix::from_columns(n, &img);
        Ok(t.mul(&s.inverse()?))
    }

    /// Q-vectors spanning the cyclic summand generated by a piece, listed
    /// as `f^j g` for each `A`-generator `g` of the piece.
    pub fn summand_vectors(&self, r: &PieceRef) -> Vec<Vec<Rational>> {
        let b = &self.blocks[r.block];
        let p = &b.pieces[r.piece];
        let mut out = Vec::new();
        for (gen, _) in self.generators(b, p) {
            let mut s = b.induced.embed(&gen);
            for _ in 0..b.d {
                out.push(s.clone());
                s = self.f.apply(&s);
            }
        }
        out
    }
}
