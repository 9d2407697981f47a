//! Witnesses `(g, -1)` in the MVW extension conjugating a group element
//! to its inverse, or a Lie algebra element to its negative, with the
//! special orthogonal and Jacobi variants, and an independent verifier.

mod descent;
mod gl;
mod verify;

pub use descent::{descent, descent_audit, descent_q, DescentData};
pub use gl::{conjugates_to_transpose, gl_coordinate, gl_lie_element, gl_module, gl_transpose_witness, gl_unitary, sylvester_oracle};
pub use verify::{verify_breve_conjugation, Check, Variant, VerifyReport};

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grp::{is_lie, is_unitary, jordan_chevalley_q, log_q, semisimple_part_q, BreveElement, LieElement};
use crate::hermod::{HermitianModule, ModuleVector, RationalModel};
use crate::invalg::{fmat, FactorElem, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{QMatrix, Rational, Ring, Span};
use crate::sl2mod::engine::{analyze, Sl2Analysis};

/// Default bound on the number of sign patterns tried by the determinant
/// repair.
pub const DEFAULT_MAX_SEARCH: usize = 4096;

/// A rank-one free totally isotropic submodule `L = A l` and a generator
/// `lplus` of its `A^+`-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiData {
    pub l: ModuleVector,
    pub lplus: ModuleVector,
}

impl JacobiData {
    /// Total isotropy of `L` and `A lplus = L`.
    pub fn validate(&self, e: &HermitianModule) -> Result<()> {
        e.check_vector(&self.l)?;
        e.check_vector(&self.lplus)?;
        let p = e.pairing(&self.l, &self.l);
        if p.components.iter().zip(e.algebra().factors()).any(|(c, f)| !f.is_zero(c)) {
            return Err(Error::Precondition("L is not totally isotropic".into()));
        }
        let model = e.rational_model();
        let span_of = |v: &ModuleVector| {
            let q = e.vector_to_q(v);
            let mut s = Span::new();
            for m in model.all_scalars() {
                s.insert(&m.apply(&q));
            }
            s
        };
        let sl = span_of(&self.l);
        let sp = span_of(&self.lplus);
        let free = sl.dim() == e.algebra().dim_q();
        if !free || sl.dim() != sp.dim() || !sl.contains(&e.vector_to_q(&self.lplus)) {
            return Err(Error::Precondition("L+ does not generate a free rank-one L".into()));
        }
        Ok(())
    }
}

/// Applies `(g, delta)` to a vector.
pub fn apply_breve(e: &HermitianModule, g: &BreveElement, v: &ModuleVector) -> ModuleVector {
    let parts = (0..e.num_factors())
        .map(|k| {
            let f = e.factor(k);
            let w: Vec<FactorElem> = if g.delta == Sign::Minus { v.parts[k].iter().map(|x| f.tau(x)).collect() } else { v.parts[k].clone() };
            fmat::apply(f, &g.blocks[k], &w)
        })
        .collect();
    ModuleVector { parts }
}

/// Per-factor sl2 analyses of the nilpotent part inside `E_s`.
struct Pipeline {
    descent: DescentData,
    analyses: Vec<(HermitianModule, Sl2Analysis)>,
}

fn slice(m: &QMatrix, off: usize, len: usize) -> QMatrix {
    m.submatrix(off..off + len, off..off + len)
}

fn pipeline(e: &HermitianModule, model: &RationalModel, s: &QMatrix, nil: &QMatrix, fixed: Option<&[Rational]>) -> Result<Pipeline> {
    let d = descent_q(e, model, s)?;
    let c = &d.basis_change;
    let ci = c.inverse()?;
    let nil_s = ci.mul(nil).mul(c);
    let fixed_s = fixed.map(|v| ci.apply(v));
    let es = &d.module_s;
    let mut analyses = Vec::new();
    let mut off = 0;
    for k in 0..es.num_factors() {
        let ek = HermitianModule::simple(es.factor(k).clone(), es.epsilon(), es.gram(k).clone())?;
        let len = ek.dim_q();
        let nk = slice(&nil_s, off, len);
        let fk: Option<Vec<Rational>> = fixed_s.as_ref().map(|v| v[off..off + len].to_vec()).filter(|v| v.iter().any(|x| !x.is_zero()));
        let an = analyze(&ek, &nk, fk.as_deref())?;
        analyses.push((ek, an));
        off += len;
    }
    Ok(Pipeline { descent: d, analyses })
}

impl Pipeline {
    /// Number of sl2 pieces across all factors.
    fn piece_count(&self) -> usize {
        self.analyses.iter().map(|(_, a)| a.piece_refs().len()).sum()
    }

    /// Q-dimensions of the pieces, in flip order.
    fn piece_dims(&self) -> Vec<usize> {
        self.analyses.iter().flat_map(|(_, a)| a.piece_refs().into_iter().map(|r| r.dim_q)).collect()
    }

    /// The witness on the Q-space of `E` for a global flip pattern.
    fn witness(&self, flips: &[bool]) -> Result<QMatrix> {
        let mut blocks = Vec::new();
        let mut idx = 0;
        for (_, an) in &self.analyses {
            let cnt = an.piece_refs().len();
            let f: Vec<bool> = (idx..idx + cnt).map(|i| flips.get(i).copied().unwrap_or(false)).collect();
            blocks.push(an.witness_q(&f)?);
            idx += cnt;
        }
        let g = QMatrix::block_diag(&blocks);
        let c = &self.descent.basis_change;
        Ok(c.mul(&g).mul(&c.inverse()?))
    }
}

fn to_breve(e: &HermitianModule, g: &QMatrix) -> BreveElement {
    BreveElement { blocks: e.map_from_q(g), delta: Sign::Minus }
}

fn ensure(e: &HermitianModule, x: &[crate::invalg::fmat::FMatrix], g: BreveElement, variant: &Variant) -> Result<BreveElement> {
    let report = verify_breve_conjugation(e, x, &g, variant);
    if report.all_pass() {
        Ok(g)
    } else {
        Err(Error::Internal(alloc::format!("constructed witness failed verification: {}", report.failures())))
    }
}

fn group_pipeline(e: &HermitianModule, x: &BreveElement, fixed: Option<&[Rational]>) -> Result<(RationalModel, Pipeline)> {
    if x.delta != Sign::Plus || !is_unitary(e, &x.blocks)? {
        return Err(Error::NotInGroup("x is not in U(E)".into()));
    }
    let model = e.rational_model();
    let (s, u) = jordan_chevalley_q(&e.map_to_q(&x.blocks, Sign::Plus))?;
    let nil = log_q(&u)?;
    let p = pipeline(e, &model, &s, &nil, fixed)?;
    Ok((model, p))
}

/// A witness `(g, -1)` with `g x g^{-1} = x^{-1}`.
pub fn mvw_element(e: &HermitianModule, x: &BreveElement) -> Result<BreveElement> {
    let (_, p) = group_pipeline(e, x, None)?;
    ensure(e, &x.blocks, to_breve(e, &p.witness(&[])?), &Variant::Group)
}

/// A witness `(g, -1)` with `g x g^{-1} = -x`.
pub fn mvw_lie(e: &HermitianModule, x: &LieElement) -> Result<BreveElement> {
    if !is_lie(e, &x.blocks)? {
        return Err(Error::NotInGroup("x is not in u(E)".into()));
    }
    let model = e.rational_model();
    let xq = e.map_to_q(&x.blocks, Sign::Plus);
    let s = semisimple_part_q(&xq)?;
    let nil = xq.sub(&s);
    let p = pipeline(e, &model, &s, &nil, None)?;
    ensure(e, &x.blocks, to_breve(e, &p.witness(&[])?), &Variant::Lie)
}

/// The sign `(-1)^{floor((rank + 1) / 2)}` required of `det g`.
pub fn so_required_sign(e: &HermitianModule) -> Sign {
    Sign::parity(e.rank().div_ceil(2))
}

fn orthogonal_field(e: &HermitianModule) -> Result<&SimpleInvolutiveAlgebra> {
    let (f, _) = e.single()?;
    if !f.is_trivial() || e.epsilon() != Sign::Plus {
        return Err(Error::Precondition("special orthogonal variant needs a symmetric form over a field with trivial involution".into()));
    }
    Ok(f)
}

fn det_sign(f: &SimpleInvolutiveAlgebra, m: &crate::invalg::fmat::FMatrix) -> Result<Option<Sign>> {
    let d = fmat::det(f, m)?;
    Ok(if d == f.one() {
        Some(Sign::Plus)
    } else if d == f.from_int(-1) {
        Some(Sign::Minus)
    } else {
        None
    })
}

/// Witness in the extension of `SO(E)`: `det g = (-1)^{floor((dim+1)/2)}`.
pub fn mvw_so(e: &HermitianModule, x: &BreveElement, max_search: usize) -> Result<BreveElement> {
    let f = orthogonal_field(e)?.clone();
    if x.delta != Sign::Plus || !is_unitary(e, &x.blocks)? || det_sign(&f, &x.blocks[0])? != Some(Sign::Plus) {
        return Err(Error::NotInGroup("x is not in SO(E)".into()));
    }
    let (_, p) = group_pipeline(e, x, None)?;
    let want = so_required_sign(e);
    let deg = f.dim_q();
    let dims = p.piece_dims();
    let odd: Vec<usize> = (0..dims.len()).filter(|&i| (dims[i] / deg) % 2 == 1).collect();
    let mut tried = 0;
    let mut patterns: Vec<Vec<bool>> = vec![vec![false; p.piece_count()]];
    for &i in &odd {
        let mut fl = vec![false; p.piece_count()];
        fl[i] = true;
        patterns.push(fl);
    }
    for fl in patterns {
        if tried >= max_search.max(1) {
            break;
        }
        tried += 1;
        let g = to_breve(e, &p.witness(&fl)?);
        if det_sign(&f, &g.blocks[0])? == Some(want) {
            return ensure(e, &x.blocks, g, &Variant::So);
        }
    }
    Err(Error::NoWitness(alloc::format!("no sign pattern gives determinant {} ({} tried)", want, tried)))
}

/// Witness fixing the generator of `L^+`, for `x` fixing `L` pointwise.
pub fn mvw_jacobi(e: &HermitianModule, jd: &JacobiData, x: &BreveElement) -> Result<BreveElement> {
    jd.validate(e)?;
    if x.delta != Sign::Plus || !is_unitary(e, &x.blocks)? {
        return Err(Error::NotInGroup("x is not in U(E)".into()));
    }
    if apply_breve(e, x, &jd.l) != jd.l {
        return Err(Error::Precondition("x does not fix L pointwise".into()));
    }
    let v0 = e.vector_to_q(&jd.lplus);
    let (_, p) = group_pipeline(e, x, Some(&v0))?;
    let g = to_breve(e, &p.witness(&[])?);
    ensure(e, &x.blocks, g, &Variant::Jacobi(jd.clone()))
}

/// The deterministic form-reversing witness for `x = 1`.
pub fn canonical_witness(e: &HermitianModule) -> Result<BreveElement> {
    let model = e.rational_model();
    let n = model.dim;
    let z = QMatrix::zeros(n, n);
    let p = pipeline(e, &model, &QMatrix::identity(n), &z, None)?;
    Ok(to_breve(e, &p.witness(&[])?))
}
