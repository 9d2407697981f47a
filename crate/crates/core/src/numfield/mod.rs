//! Exact arithmetic foundation: rationals, polynomials, factorization over
//! the rationals, number fields and dense linear algebra.

pub mod factor;
pub mod field;
pub mod linsolve;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use factor::{factor_rationals, is_irreducible, squarefree_decomposition};
pub use field::{NFElem, NumberField};
pub use linsolve::{Span, independent_columns, minimal_polynomial, nullspace, solve_linear, solve_particular, solve_vec, LinearSolution};
pub use matrix::{generic, Matrix, QMatrix, Ring, Q};
pub use poly::Poly;
pub use rational::{
    factor_integer, format_rational, int, integer_sqrt_exact, lcm_of_denominators, parse_rational, rat, rational_sqrt, square_class,
    squarefree_integer, Rational,
};

/// Squarefree part of `p`: `p / gcd(p, p')`, monic.
pub fn poly_squarefree_part(p: &Poly) -> crate::error::Result<Poly> {
    p.squarefree_part()
}
