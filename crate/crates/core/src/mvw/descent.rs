//! Harish-Chandra descent along a semisimple normal operator.

use alloc::vec::Vec;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grp::{is_unitary, BreveElement};
use crate::hermod::{dot, induced_module, HermitianModule, RationalModel};
use crate::invalg::{algebra_span, attach_involution, split_semisimple_algebra, AElem, InvolutiveAlgebra, Sign};
use crate::numfield::{minimal_polynomial, QMatrix, Rational, Ring};

/// The algebra `A_s` generated by `A` and `s`, and the module `E_s`.
#[derive(Clone, Debug)]
pub struct DescentData {
    pub algebra_s: InvolutiveAlgebra,
    pub module_s: HermitianModule,
    /// Columns are the Q-basis of `E_s` (in its own model order) written in
    /// the Q-coordinates of `E`.
    pub basis_change: QMatrix,
    /// Primitive idempotents of `A_s` acting on the Q-space of `E`.
    pub factor_projection: Vec<QMatrix>,
    /// Realization on `E` of the Q-basis of each factor of `A_s`.
    pub scalars: Vec<Vec<QMatrix>>,
    /// `A_s`-basis of `E_s`, per factor, as Q-vectors of `E`.
    pub bases: Vec<Vec<Vec<Rational>>>,
    /// `dim_Q A_s` measured as the span of the generated matrices.
    pub span_dim: usize,
    /// The element `s` as a scalar of `A_s`.
    pub s_scalar: AElem,
}

/// Descent for a Q-level operator `s` with squarefree minimal polynomial,
/// normal for the trace form.
pub fn descent_q(e: &HermitianModule, model: &RationalModel, s: &QMatrix) -> Result<DescentData> {
    if !minimal_polynomial(s)?.is_squarefree() {
        return Err(Error::NotSemisimple);
    }
    let n = model.dim;
    let st = model.adjoint(s);
    if !st.commutes_with(s) {
        return Err(Error::Precondition("s is not normal".into()));
    }
    let mut gens = model.all_scalars();
    gens.push(s.clone());
    gens.push(st);
    let span_dim = algebra_span(n, &gens)?.len();
    let split = split_semisimple_algebra(n, &gens)?;
    let inv = attach_involution(&split, &|m: &QMatrix| model.adjoint(m))?;
    let algebra_s = inv.algebra();
    let mut grams = Vec::new();
    let mut cols = Vec::new();
    let mut scalars = Vec::new();
    let mut bases = Vec::new();
    let mut projections = Vec::new();
    let mut s_parts = Vec::new();
    for f in &inv.factors {
        let idem = f.idempotent();
        let sc: Vec<QMatrix> = f.algebra.q_basis().iter().map(|w| f.realize(w)).collect();
        let image: Vec<Vec<Rational>> = idem.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        let ind = induced_module(&f.algebra, &sc, &image, &model.form, e.epsilon())?;
        cols.extend(ind.q_basis());
        grams.push(ind.module.gram(0).clone());
        let sk = s.mul(&idem);
        let coords = crate::invalg::span_coords(&sc, &sk)?.ok_or(Error::Internal("s is not scalar on a factor".into()))?;
        s_parts.push(f.algebra.from_coords(&coords));
        bases.push(ind.basis);
        scalars.push(sc);
        projections.push(idem);
    }
    if cols.len() != n {
        return Err(Error::Internal("descent bases do not span".into()));
    }
    let module_s = HermitianModule::new(algebra_s.clone(), e.epsilon(), grams)?;
    Ok(DescentData {
        algebra_s,
        module_s,
        basis_change: QMatrix::from_columns(n, &cols),
        factor_projection: projections,
        scalars,
        bases,
        span_dim,
        s_scalar: AElem { components: s_parts },
    })
}

/// Descent along a semisimple `s` in `U(E)`.
pub fn descent(e: &HermitianModule, s: &BreveElement) -> Result<DescentData> {
    if s.delta != Sign::Plus || !is_unitary(e, &s.blocks)? {
        return Err(Error::NotInGroup("s is not in U(E)".into()));
    }
    let model = e.rational_model();
    descent_q(e, &model, &e.map_to_q(&s.blocks, Sign::Plus))
}

/// Exact audit of the trace identity `tr(a <u, v>_s) = B(a u, v)` over a
/// Q-basis of `A_s` and basis pairs of `E_s`, orthogonality of distinct
/// factors, the dimension count and the transported trace form.
pub fn descent_audit(e: &HermitianModule, d: &DescentData) -> bool {
    let model = e.rational_model();
    let b = &model.form;
    let alg = &d.algebra_s;
    if alg.dim_q() != d.span_dim || d.module_s.dim_q() != model.dim {
        return false;
    }
    for (k, basis) in d.bases.iter().enumerate() {
        let f = &alg.factors()[k];
        let g = d.module_s.gram(k);
        for (c, w) in f.q_basis().iter().enumerate() {
            for (i, bi) in basis.iter().enumerate() {
                let abi = d.scalars[k][c].apply(bi);
                for (j, bj) in basis.iter().enumerate() {
                    if dot(&abi, &b.apply(bj)) != f.trace(&f.mul(w, g.get(i, j))) {
                        return false;
                    }
                }
            }
        }
        for (l, other) in d.bases.iter().enumerate() {
            if l == k {
                continue;
            }
            let sc = &d.scalars[k];
            for bi in basis {
                for s in sc {
                    let v = b.apply(&s.apply(bi));
                    if other.iter().any(|bj| !dot(bj, &v).is_zero()) {
                        return false;
                    }
                }
            }
        }
    }
    let c = &d.basis_change;
    c.transpose().mul(b).mul(c) == d.module_s.rational_model().form
}
