use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::invalg::fmat::{self, FMatrix};
use crate::invalg::{AElem, FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{Matrix, Ring};

/// A free epsilon-Hermitian module over an involutive algebra, stored as one
/// Gram block per algebra factor. The global basis lists the basis of the
/// first factor's component, then the second's, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianModule {
    algebra: InvolutiveAlgebra,
    epsilon: Sign,
    grams: Vec<FMatrix>,
    twisted: bool,
}

/// A vector of a module: coordinates per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    pub parts: Vec<Vec<FactorElem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Shape,
    Symmetry,
    Degenerate,
}

/// Located failure of a module axiom; indices are 1-based within the
/// factor's block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub factor: usize,
    pub entry: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axiom {
            Axiom::Shape => "shape",
            Axiom::Symmetry => "symmetry",
            Axiom::Degenerate => "degenerate",
        };
        write!(f, "{}", name)?;
        if let Some((i, j)) = self.entry {
            write!(f, " at ({},{})", i, j)?;
        }
        write!(f, " in factor {}", self.factor + 1)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Error {
        Error::Invalid(format!("{}", v))
    }
}

/// Checks the Hermitian symmetry and non-degeneracy of every block.
pub fn validate_module(e: &HermitianModule) -> core::result::Result<(), Violation> {
    check_blocks(&e.algebra, e.epsilon, &e.grams)
}

fn check_blocks(alg: &InvolutiveAlgebra, eps: Sign, grams: &[FMatrix]) -> core::result::Result<(), Violation> {
    if grams.len() != alg.factors().len() {
        return Err(Violation {
            axiom: Axiom::Shape,
            factor: 0,
            entry: None,
            detail: format!("{} Gram blocks for {} factors", grams.len(), alg.factors().len()),
        });
    }
    for (k, (f, g)) in alg.factors().iter().zip(grams).enumerate() {
        if !g.is_square() {
            return Err(Violation { axiom: Axiom::Shape, factor: k, entry: None, detail: "Gram block not square".into() });
        }
        for (idx, x) in g.entries().iter().enumerate() {
            if !f.accepts(x) {
                let (i, j) = (idx / g.cols(), idx % g.cols());
                return Err(Violation {
                    axiom: Axiom::Shape,
                    factor: k,
                    entry: Some((i + 1, j + 1)),
                    detail: "entry does not belong to the algebra factor".into(),
                });
            }
        }
        let n = g.rows();
        for i in 0..n {
            for j in i..n {
                let want = f.scale_sign(eps, &f.tau(g.get(i, j)));
                if *g.get(j, i) != want {
                    return Err(Violation { axiom: Axiom::Symmetry, factor: k, entry: Some((j + 1, i + 1)), detail: String::new() });
                }
            }
        }
        if n > 0 && !fmat::is_invertible(f, g) {
            return Err(Violation { axiom: Axiom::Degenerate, factor: k, entry: None, detail: String::new() });
        }
    }
    Ok(())
}

impl HermitianModule {
    pub fn new(algebra: InvolutiveAlgebra, epsilon: Sign, grams: Vec<FMatrix>) -> Result<Self> {
        check_blocks(&algebra, epsilon, &grams)?;
        Ok(HermitianModule { algebra, epsilon, grams, twisted: false })
    }

    /// Module over a single-factor algebra.
    pub fn simple(factor: SimpleInvolutiveAlgebra, epsilon: Sign, gram: FMatrix) -> Result<Self> {
        Self::new(InvolutiveAlgebra::simple(factor), epsilon, vec![gram])
    }

    /// Unvalidated construction; pair with `validate_module` for located
    /// diagnostics.
    pub fn from_parts(algebra: InvolutiveAlgebra, epsilon: Sign, grams: Vec<FMatrix>) -> Self {
        HermitianModule { algebra, epsilon, grams, twisted: false }
    }

    pub fn algebra(&self) -> &InvolutiveAlgebra {
        &self.algebra
    }

    pub fn factor(&self, k: usize) -> &SimpleInvolutiveAlgebra {
        &self.algebra.factors()[k]
    }

    pub fn num_factors(&self) -> usize {
        self.grams.len()
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn grams(&self) -> &[FMatrix] {
        &self.grams
    }

    pub fn gram(&self, k: usize) -> &FMatrix {
        &self.grams[k]
    }

    /// True for a module of the form `E_tau`: its scalar action on the
    /// underlying space of the original module goes through `tau`.
    pub fn is_twisted(&self) -> bool {
        self.twisted
    }

    pub fn rank_per_factor(&self) -> Vec<usize> {
        self.grams.iter().map(|g| g.rows()).collect()
    }

    pub fn rank(&self) -> usize {
        self.grams.iter().map(|g| g.rows()).sum()
    }

    /// Dimension over Q.
    pub fn dim_q(&self) -> usize {
        self.algebra.factors().iter().zip(&self.grams).map(|(f, g)| f.dim_q() * g.rows()).sum()
    }

    /// The single factor's block, or an error for multi-factor modules.
    pub fn single(&self) -> Result<(&SimpleInvolutiveAlgebra, &FMatrix)> {
        if self.grams.len() != 1 {
            return Err(Error::Precondition("operation requires a simple involutive algebra".into()));
        }
        Ok((&self.algebra.factors()[0], &self.grams[0]))
    }

    pub fn zero_vector(&self) -> ModuleVector {
        ModuleVector {
            parts: self.algebra.factors().iter().zip(&self.grams).map(|(f, g)| vec![f.zero(); g.rows()]).collect(),
        }
    }

    /// The `i`-th global basis vector.
    pub fn basis_vector(&self, i: usize) -> ModuleVector {
        let mut v = self.zero_vector();
        let mut i = i;
        for (k, part) in v.parts.iter_mut().enumerate() {
            if i < part.len() {
                part[i] = self.factor(k).one();
                break;
            }
            i -= part.len();
        }
        v
    }

    pub fn check_vector(&self, v: &ModuleVector) -> Result<()> {
        if v.parts.len() != self.grams.len() {
            return Err(Error::DimensionMismatch { expected: self.grams.len(), found: v.parts.len() });
        }
        for (k, p) in v.parts.iter().enumerate() {
            if p.len() != self.grams[k].rows() {
                return Err(Error::DimensionMismatch { expected: self.grams[k].rows(), found: p.len() });
            }
            for x in p {
                self.factor(k).check(x)?;
            }
        }
        Ok(())
    }

    /// `<u, v>` in factor `k`: `u^T G tau(v)`.
    pub fn pair_in(&self, k: usize, u: &[FactorElem], v: &[FactorElem]) -> FactorElem {
        pairing(self.factor(k), &self.grams[k], u, v)
    }

    /// `<u, v>` as an algebra element.
    pub fn pairing(&self, u: &ModuleVector, v: &ModuleVector) -> AElem {
        AElem { components: (0..self.grams.len()).map(|k| self.pair_in(k, &u.parts[k], &v.parts[k])).collect() }
    }

    /// Checks that blocks act on this module (square, right size, legal
    /// entries).
    pub fn check_map(&self, blocks: &[FMatrix]) -> Result<()> {
        if blocks.len() != self.grams.len() {
            return Err(Error::DimensionMismatch { expected: self.grams.len(), found: blocks.len() });
        }
        for (k, b) in blocks.iter().enumerate() {
            fmat::check_shape(self.factor(k), b, self.grams[k].rows())?;
        }
        Ok(())
    }
}

/// `u^T G tau(v)` for a single factor.
pub fn pairing(f: &SimpleInvolutiveAlgebra, g: &FMatrix, u: &[FactorElem], v: &[FactorElem]) -> FactorElem {
    let mut acc = f.zero();
    for (i, ui) in u.iter().enumerate() {
        if f.is_zero(ui) {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            let gij = g.get(i, j);
            if f.is_zero(gij) || f.is_zero(vj) {
                continue;
            }
            acc = f.add(&acc, &f.mul(ui, &f.mul(gij, &f.tau(vj))));
        }
    }
    acc
}

/// Gram matrix of a list of vectors in a single factor.
pub fn gram_of(f: &SimpleInvolutiveAlgebra, g: &FMatrix, vs: &[Vec<FactorElem>]) -> FMatrix {
    Matrix::from_fn(vs.len(), vs.len(), |i, j| pairing(f, g, &vs[i], &vs[j]))
}

/// The rank-one module `A(a)` with form `a u v^tau`.
pub fn build_aa(factor: &SimpleInvolutiveAlgebra, epsilon: Sign, a: &FactorElem) -> Result<HermitianModule> {
    factor.check(a)?;
    if !factor.is_unit(a) {
        return Err(Error::Invalid("A(a) needs an invertible a".into()));
    }
    if !factor.is_eps_hermitian(a, epsilon) {
        return Err(Error::Invalid("A(a) needs a^tau = eps * a".into()));
    }
    HermitianModule::simple(factor.clone(), epsilon, Matrix::from_fn(1, 1, |_, _| a.clone()))
}

/// `E_tau`: basis `(e_i)_tau` with Gram entries `<e_j, e_i>`.
pub fn tau_twist(e: &HermitianModule) -> HermitianModule {
    HermitianModule {
        algebra: e.algebra.clone(),
        epsilon: e.epsilon,
        grams: e.grams.iter().map(|g| g.transpose()).collect(),
        twisted: !e.twisted,
    }
}
