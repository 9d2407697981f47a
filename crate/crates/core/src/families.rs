//! Standard modules whose unitary groups are the classical groups.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hermod::HermitianModule;
use crate::invalg::fmat::{self, FMatrix};
use crate::grp::small_rational;
use crate::invalg::{FactorElem, Sign, SimpleInvolutiveAlgebra};
use crate::numfield::{Matrix, QMatrix, Rational};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Sp(rank)` over `Q`, rank even.
    Sp,
    /// `O(rank)` over `Q` for `diag(1, ..., 1, -1)`.
    O,
    /// `GL(rank)` through `Q x Q` with the swap.
    Gl,
    /// `U(rank)` over `Q(i)` for the identity Hermitian form.
    U,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::O => "o",
            Family::Gl => "gl",
            Family::U => "u",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "sp" => Some(Family::Sp),
            "o" => Some(Family::O),
            "gl" => Some(Family::Gl),
            "u" => Some(Family::U),
            _ => None,
        }
    }
}

/// A rational matrix as a matrix over a factor.
pub fn lift_q(f: &SimpleInvolutiveAlgebra, m: &QMatrix) -> FMatrix {
    m.map(|x| f.rational(x))
}

fn diag(entries: &[i64]) -> QMatrix {
    let n = entries.len();
    QMatrix::from_fn(n, n, |i, j| if i == j { Rational::from_integer(entries[i].into()) } else { Rational::from_integer(0.into()) })
}

/// The standard symplectic Gram `[[0, I], [-I, 0]]` of size `2d`.
pub fn symplectic_gram(d: usize) -> QMatrix {
    QMatrix::from_fn(2 * d, 2 * d, |i, j| {
        if j == i + d {
            Rational::from_integer(1.into())
        } else if i == j + d {
            Rational::from_integer((-1).into())
        } else {
            Rational::from_integer(0.into())
        }
    })
}

/// Module over `Q` with a rational Gram matrix.
pub fn rational_module(eps: Sign, gram: &QMatrix) -> Result<HermitianModule> {
    let f = SimpleInvolutiveAlgebra::rationals();
    let g = lift_q(&f, gram);
    HermitianModule::simple(f, eps, g)
}

/// The standard module of a family in the given rank.
pub fn standard_module(family: Family, rank: usize) -> Result<HermitianModule> {
    if rank == 0 {
        return Err(Error::Invalid("rank must be positive".into()));
    }
    match family {
        Family::Sp => {
            if rank % 2 == 1 {
                return Err(Error::Invalid("symplectic rank must be even".into()));
            }
            rational_module(Sign::Minus, &symplectic_gram(rank / 2))
        }
        Family::O => {
            let mut d: Vec<i64> = alloc::vec![1; rank];
            if rank > 1 {
                d[rank - 1] = -1;
            }
            rational_module(Sign::Plus, &diag(&d))
        }
        Family::Gl => crate::mvw::gl_module(&QMatrix::identity(rank)),
        Family::U => {
            let f = SimpleInvolutiveAlgebra::gaussian();
            let g = fmat::identity(&f, rank);
            HermitianModule::simple(f, Sign::Plus, g)
        }
    }
}

/// A random element of a factor with small rational coordinates.
pub fn random_elem<R: Rng + ?Sized>(f: &SimpleInvolutiveAlgebra, rng: &mut R) -> FactorElem {
    let c: Vec<Rational> = (0..f.dim_q()).map(|_| small_rational(rng)).collect();
    f.from_coords(&c)
}

/// A random non-degenerate module `A^rank` with Gram `M + eps tau(M)^T`.
pub fn random_module<R: Rng + ?Sized>(f: &SimpleInvolutiveAlgebra, eps: Sign, rank: usize, rng: &mut R) -> Result<HermitianModule> {
    for _ in 0..64 {
        let m: FMatrix = Matrix::from_fn(rank, rank, |_, _| random_elem(f, rng));
        let g = fmat::add(f, &m, &fmat::twist(f, &m.transpose(), true).map(|x| f.scale_sign(eps, x)));
        if fmat::is_invertible(f, &g) {
            return HermitianModule::simple(f.clone(), eps, g);
        }
    }
    Err(Error::Internal("no non-degenerate random Gram found".into()))
}
