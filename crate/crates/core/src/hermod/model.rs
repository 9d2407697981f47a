//! The underlying Q-space of a module with the trace form
//! `B(u, v) = tr <u, v>`, and modules induced on subspaces.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use super::module::{HermitianModule, ModuleVector};
use crate::error::{Error, Result};
use crate::invalg::fmat::FMatrix;
use crate::invalg::{FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{solve_particular, Matrix, QMatrix, Rational, Ring, Span};

/// Q-coordinates: factor `k`, basis index `j`, algebra coordinate `c` sit
/// at `offset[k] + j * dim_q(A_k) + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalModel {
    pub dim: usize,
    pub epsilon: Sign,
    /// Gram matrix of the trace form, `epsilon`-symmetric.
    pub form: QMatrix,
    pub offsets: Vec<usize>,
    /// Realization of the Q-basis of each factor.
    pub scalars: Vec<Vec<QMatrix>>,
}

impl RationalModel {
    /// All scalar matrices, factor by factor.
    pub fn all_scalars(&self) -> Vec<QMatrix> {
        self.scalars.iter().flatten().cloned().collect()
    }

    /// `B^{-1} m^T B`, the adjoint for the trace form.
    pub fn adjoint(&self, m: &QMatrix) -> QMatrix {
        let bi = self.form.inverse().expect("non-degenerate trace form");
        bi.mul(&m.transpose()).mul(&self.form)
    }

    pub fn commutes_with_scalars(&self, m: &QMatrix) -> bool {
        self.scalars.iter().flatten().all(|s| s.commutes_with(m))
    }
}

impl HermitianModule {
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_factors());
        let mut acc = 0;
        for k in 0..self.num_factors() {
            out.push(acc);
            acc += self.factor(k).dim_q() * self.gram(k).rows();
        }
        out
    }

    /// Action of `a` (in factor `k`) on the Q-space.
    pub fn scalar_matrix(&self, k: usize, a: &FactorElem) -> QMatrix {
        let n = self.dim_q();
        let f = self.factor(k);
        let m = f.mul_matrix(a);
        let d = f.dim_q();
        let off = self.offsets()[k];
        let mut out = QMatrix::zeros(n, n);
        for j in 0..self.gram(k).rows() {
            for r in 0..d {
                for c in 0..d {
                    out.set(off + j * d + r, off + j * d + c, m.get(r, c).clone());
                }
            }
        }
        out
    }

    pub fn rational_model(&self) -> RationalModel {
        let n = self.dim_q();
        let offsets = self.offsets();
        let mut form = QMatrix::zeros(n, n);
        let mut scalars = Vec::new();
        for k in 0..self.num_factors() {
            let f = self.factor(k);
            let g = self.gram(k);
            let basis = f.q_basis();
            let taus: Vec<FactorElem> = basis.iter().map(|w| f.tau(w)).collect();
            let d = f.dim_q();
            for i in 0..g.rows() {
                for j in 0..g.rows() {
                    let gij = g.get(i, j);
                    if f.is_zero(gij) {
                        continue;
                    }
                    for (c, w) in basis.iter().enumerate() {
                        let wg = f.mul(w, gij);
                        for (c2, tw) in taus.iter().enumerate() {
                            form.set(offsets[k] + i * d + c, offsets[k] + j * d + c2, f.trace(&f.mul(&wg, tw)));
                        }
                    }
                }
            }
            scalars.push(basis.iter().map(|w| self.scalar_matrix(k, w)).collect());
        }
        RationalModel { dim: n, epsilon: self.epsilon(), form, offsets, scalars }
    }

    pub fn vector_to_q(&self, v: &ModuleVector) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.dim_q());
        for (k, part) in v.parts.iter().enumerate() {
            for x in part {
                out.extend(self.factor(k).coords(x));
            }
        }
        out
    }

    pub fn vector_from_q(&self, v: &[Rational]) -> ModuleVector {
        let offsets = self.offsets();
        ModuleVector {
            parts: (0..self.num_factors())
                .map(|k| {
                    let f = self.factor(k);
                    let d = f.dim_q();
                    (0..self.gram(k).rows())
                        .map(|j| f.from_coords(&v[offsets[k] + j * d..offsets[k] + (j + 1) * d]))
                        .collect()
                })
                .collect(),
        }
    }

    /// Q-matrix of the map with block matrices `blocks`, linear for
    /// `Plus` and `tau`-conjugate linear for `Minus`.
    pub fn map_to_q(&self, blocks: &[FMatrix], delta: Sign) -> QMatrix {
        let n = self.dim_q();
        let offsets = self.offsets();
        let mut out = QMatrix::zeros(n, n);
        for (k, m) in blocks.iter().enumerate() {
            let f = self.factor(k);
            let d = f.dim_q();
            for (c, w) in f.q_basis().iter().enumerate() {
                let w = if delta == Sign::Minus { f.tau(w) } else { w.clone() };
                for j in 0..m.cols() {
                    for i in 0..m.rows() {
                        let coords = f.coords(&f.mul(&w, m.get(i, j)));
                        for (r, x) in coords.into_iter().enumerate() {
                            if !x.is_zero() {
                                out.set(offsets[k] + i * d + r, offsets[k] + j * d + c, x);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Block matrices from a Q-matrix, reading the images of the basis.
    pub fn map_from_q(&self, m: &QMatrix) -> Vec<FMatrix> {
        let offsets = self.offsets();
        (0..self.num_factors())
            .map(|k| {
                let f = self.factor(k);
                let d = f.dim_q();
                let r = self.gram(k).rows();
                let one = f.coords(&f.one());
                Matrix::from_fn(r, r, |i, j| {
                    let src: Vec<usize> = (0..d).filter(|&c| !one[c].is_zero()).map(|c| offsets[k] + j * d + c).collect();
                    let coords: Vec<Rational> = (0..d)
                        .map(|c| {
                            src.iter().fold(Rational::zero(), |acc, &s| acc + m.get(offsets[k] + i * d + c, s))
                        })
                        .collect();
                    f.from_coords(&coords)
                })
            })
            .collect()
    }
}

/// Action of `a` given the realization of the Q-basis of `f`.
pub fn realize_scalar(f: &SimpleInvolutiveAlgebra, scalars: &[QMatrix], a: &FactorElem) -> QMatrix {
    let n = scalars[0].rows();
    let mut out = QMatrix::zeros(n, n);
    for (c, s) in f.coords(a).iter().zip(scalars) {
        if !c.is_zero() {
            out = out.add(&s.scale(c));
        }
    }
    out
}

/// A single-factor module carried by an `A`-stable subspace of an ambient
/// Q-space.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: HermitianModule,
    /// Ambient Q-vectors of the module basis.
    pub basis: Vec<Vec<Rational>>,
    pub scalars: Vec<QMatrix>,
}

impl InducedModule {
    pub fn factor(&self) -> &SimpleInvolutiveAlgebra {
        self.module.factor(0)
    }

    /// Ambient vector of `sum c_j b_j`.
    pub fn embed(&self, c: &[FactorElem]) -> Vec<Rational> {
        let n = self.scalars[0].rows();
        let mut out = vec![Rational::zero(); n];
        for (cj, b) in c.iter().zip(&self.basis) {
            if self.factor().is_zero(cj) {
                continue;
            }
            let v = realize_scalar(self.factor(), &self.scalars, cj).apply(b);
            for (o, x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
        out
    }

    /// Q-basis `omega_c b_j` in the order `j`-major.
    pub fn q_basis(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for b in &self.basis {
            for s in &self.scalars {
                out.push(s.apply(b));
            }
        }
        out
    }

    /// Module coordinates of an ambient vector lying in the subspace.
    pub fn coords_of(&self, v: &[Rational]) -> Result<Vec<FactorElem>> {
        let qb = self.q_basis();
        if qb.is_empty() {
            return if v.iter().all(|x| x.is_zero()) { Ok(vec![]) } else { Err(Error::Internal("vector outside subspace".into())) };
        }
        let a = QMatrix::from_columns(v.len(), &qb);
        let sol = solve_particular(&a, v)?.ok_or(Error::Internal("vector outside subspace".into()))?;
        let d = self.scalars.len();
        Ok((0..self.basis.len()).map(|j| self.factor().from_coords(&sol[j * d..(j + 1) * d])).collect())
    }
}

/// An `A`-basis (as ambient Q-vectors) of the `A`-stable subspace spanned
/// by `subspace`.
pub fn module_basis(f: &SimpleInvolutiveAlgebra, scalars: &[QMatrix], subspace: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let d = f.dim_q();
    let dim = {
        let mut s = Span::new();
        subspace.iter().filter(|v| s.insert(v)).count()
    };
    let basis: Vec<Vec<Rational>> = if f.is_split() {
        let m = f.field().degree();
        let fl = f.field();
        let e1 = realize_scalar(f, scalars, &FactorElem::Pair(fl.one(), fl.zero()));
        let e2 = realize_scalar(f, scalars, &FactorElem::Pair(fl.zero(), fl.one()));
        let mut halves = Vec::new();
        for (e, range) in [(e1, 0..m), (e2, m..2 * m)] {
            let mut span = Span::new();
            let mut picked = Vec::new();
            for w in subspace {
                let c = e.apply(w);
                if span.contains(&c) {
                    continue;
                }
                picked.push(c.clone());
                for s in &scalars[range.clone()] {
                    span.insert(&s.apply(&c));
                }
            }
            halves.push(picked);
        }
        if halves[0].len() != halves[1].len() || halves[0].len() * d != dim {
            return Err(Error::Internal("subspace is not free over the split factor".into()));
        }
        halves[0].iter().zip(&halves[1]).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect()
    } else {
        let mut span = Span::new();
        let mut picked = Vec::new();
        for w in subspace {
            if span.contains(w) {
                continue;
            }
            picked.push(w.clone());
            for s in scalars {
                span.insert(&s.apply(w));
            }
        }
        if picked.len() * d != dim {
            return Err(Error::Internal("subspace is not stable under the algebra".into()));
        }
        picked
    };
    Ok(basis)
}

/// Chooses an `A`-basis of the `A`-stable subspace spanned by `subspace`
/// and computes the Gram matrix of the `A`-valued form `h` determined by
/// `phi(a u, v) = tr(a h(u, v))`.
pub fn induced_module(
    f: &SimpleInvolutiveAlgebra,
    scalars: &[QMatrix],
    subspace: &[Vec<Rational>],
    phi: &QMatrix,
    eps: Sign,
) -> Result<InducedModule> {
    let d = f.dim_q();
    let basis = module_basis(f, scalars, subspace)?;
    let qb = f.q_basis();
    let trace_form = QMatrix::from_fn(d, d, |m, k| f.trace(&f.mul(&qb[m], &qb[k])));
    let tinv = trace_form.inverse()?;
    let r = basis.len();
    let phib: Vec<Vec<Rational>> = basis.iter().map(|b| phi.apply(b)).collect();
    let sb: Vec<Vec<Vec<Rational>>> = basis.iter().map(|b| scalars.iter().map(|s| s.apply(b)).collect()).collect();
    let gram = Matrix::from_fn(r, r, |j, l| {
        let rhs: Vec<Rational> = (0..d).map(|m| dot(&sb[j][m], &phib[l])).collect();
        f.from_coords(&tinv.apply(&rhs))
    });
    let module = HermitianModule::new(InvolutiveAlgebra::simple(f.clone()), eps, vec![gram])
        .map_err(|e| Error::Internal(alloc::format!("induced form invalid: {}", e)))?;
    Ok(InducedModule { module, basis, scalars: scalars.to_vec() })
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}
