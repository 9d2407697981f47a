use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::algebra::{AElem, FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use crate::error::{Error, Result};
use crate::numfield::{factor_integer, integer_sqrt_exact, rational_sqrt, square_class, NumberField, Poly, Rational, Ring};

/// Default bound on the number of candidates tried by the witness search.
pub const DEFAULT_SEARCH_BUDGET: usize = 10_000;

/// Outcome of comparing two classes in `(A^x)^{tau=eps} / N(A^x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassComparison {
    /// Same class, with `b` such that `a' = a * b * b^tau`.
    Same(AElem),
    Different,
    Undecided,
}

impl ClassComparison {
    pub fn is_same(&self) -> bool {
        matches!(self, ClassComparison::Same(_))
    }
}

/// Checks `a' = a * b * b^tau` exactly.
pub fn verify_class_witness(alg: &InvolutiveAlgebra, a: &AElem, a2: &AElem, b: &AElem) -> Result<bool> {
    alg.check(a)?;
    alg.check(a2)?;
    alg.check(b)?;
    let lhs = alg.mul(a, &alg.mul(b, &alg.tau(b)));
    Ok(lhs == *a2 && alg.inv(b).is_some())
}

/// Decides whether `a` and `a2` define the same class. A supplied witness
/// is checked first; if it does not certify equality the question is
/// decided without it.
pub fn same_class(
    alg: &InvolutiveAlgebra,
    eps: Sign,
    a: &AElem,
    a2: &AElem,
    witness: Option<&AElem>,
    budget: usize,
) -> Result<ClassComparison> {
    for x in [a, a2] {
        alg.check(x)?;
        for (f, c) in alg.factors().iter().zip(&x.components) {
            if !f.is_unit(c) || !f.is_eps_hermitian(c, eps) {
                return Err(Error::Invalid("class representative is not in (A^x)^{tau=eps}".into()));
            }
        }
    }
    if let Some(b) = witness {
        if verify_class_witness(alg, a, a2, b)? {
            return Ok(ClassComparison::Same(b.clone()));
        }
    }
    let mut comps = Vec::new();
    let mut undecided = false;
    for (f, (x, y)) in alg.factors().iter().zip(a.components.iter().zip(&a2.components)) {
        let c = f.mul(y, &f.inv(x).ok_or(Error::NotInvertible)?);
        match factor_norm_witness(f, &c, budget) {
            ClassComparison::Same(b) => comps.push(b.components.into_iter().next().unwrap()),
            ClassComparison::Different => return Ok(ClassComparison::Different),
            ClassComparison::Undecided => {
                undecided = true;
                comps.push(f.one());
            }
        }
    }
    if undecided {
        Ok(ClassComparison::Undecided)
    } else {
        Ok(ClassComparison::Same(AElem { components: comps }))
    }
}

fn wrap(b: FactorElem) -> ClassComparison {
    ClassComparison::Same(AElem { components: vec![b] })
}

/// Is `c` (tau-fixed, invertible) of the form `b b^tau` in this factor?
fn factor_norm_witness(f: &SimpleInvolutiveAlgebra, c: &FactorElem, budget: usize) -> ClassComparison {
    if *c == f.one() {
        return wrap(f.one());
    }
    match (f, c) {
        (SimpleInvolutiveAlgebra::SplitPair { field }, FactorElem::Pair(x, _)) => {
            wrap(FactorElem::Pair(x.clone(), field.one()))
        }
        (SimpleInvolutiveAlgebra::FieldTrivial { field }, FactorElem::Field(x)) => {
            if let Some(q) = x.as_rational() {
                if field.is_rationals() || field.degree() % 2 == 1 {
                    // odd degree: a rational is a square in F iff it is in Q
                    return match rational_sqrt(&q) {
                        Some(r) => wrap(FactorElem::Field(field.rational(r))),
                        None => ClassComparison::Different,
                    };
                }
                if let Some(r) = rational_sqrt(&q) {
                    return wrap(FactorElem::Field(field.rational(r)));
                }
            }
            // squares have square norms
            if rational_sqrt(&field.norm(x)).is_none() {
                return ClassComparison::Different;
            }
            ClassComparison::Undecided
        }
        (SimpleInvolutiveAlgebra::FieldQuadratic { field, .. }, FactorElem::Field(x)) => {
            if field.degree() != 2 {
                return ClassComparison::Undecided;
            }
            let q = match x.as_rational() {
                Some(q) => q,
                None => return ClassComparison::Undecided,
            };
            quadratic_norm(field, &q, budget)
        }
        _ => ClassComparison::Undecided,
    }
}

/// `F = Q[t]/(t^2 + p t + r)`; decides whether `q` is a norm from `F`.
fn quadratic_norm(field: &NumberField, q: &Rational, budget: usize) -> ClassComparison {
    let m = field.modulus();
    let p = m.coeff(1);
    let r = m.coeff(0);
    let disc = &p * &p - Rational::from_integer(4.into()) * &r;
    let d = square_class(&disc);
    // sqrt(d) = (2t + p) / k with disc = d k^2
    let k = rational_sqrt(&(disc.clone() / Rational::from_integer(d.clone()))).expect("square quotient");
    let (cn, cd) = (q.numer().clone(), q.denom().clone());
    // q = cn/cd; cn*cd = q * cd^2, same class
    let target = &cn * &cd;
    if !hilbert_trivial(&target, &d) {
        return ClassComparison::Different;
    }
    match search_norm(&target, &d, budget) {
        Some((xn, yn, z)) => {
            // (xn/z)^2 - d (yn/z)^2 = cn*cd, divide by cd^2
            let scale = Rational::new(BigInt::one(), &z * &cd);
            let xr = Rational::from_integer(xn) * &scale;
            let yr = Rational::from_integer(yn) * &scale;
            // x + y sqrt(d) = x + y (2t + p)/k
            let two = Rational::from_integer(2.into());
            let c0 = &xr + &yr * &p / &k;
            let c1 = &yr * two / &k;
            let b = field.elem(&Poly::new(vec![c0, c1]));
            wrap(FactorElem::Field(b))
        }
        None => ClassComparison::Undecided,
    }
}


/// `(a, b)_v = 1` at every place.
pub fn hilbert_trivial(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    if a.is_negative() && b.is_negative() {
        return false;
    }
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for n in [a, b] {
        for (p, _) in factor_integer(&n.abs()) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.iter().all(|p| hilbert_symbol(a, b, p) == 1)
}

fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut k = 0;
    let mut m = n.clone();
    while (&m % p).is_zero() {
        m /= p;
        k += 1;
    }
    (k, m)
}

fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    let e = (p - BigInt::one()) / 2;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else if r.is_zero() {
        0
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigInt) -> i32 {
    let (al, u) = split_valuation(a, p);
    let (be, v) = split_valuation(b, p);
    if *p == BigInt::from(2) {
        let eps = |x: &BigInt| -> u32 { if (x.mod_floor(&BigInt::from(4))) == BigInt::from(3) { 1 } else { 0 } };
        let omega = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&BigInt::from(8));
            if r == BigInt::from(3) || r == BigInt::from(5) {
                1
            } else {
                0
            }
        };
        let e = eps(&u) * eps(&v) + al * omega(&v) + be * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let half: BigInt = (p - BigInt::one()) / 2;
        let mut s = if (al as u64 * be as u64) % 2 == 1 && half.is_odd() { -1 } else { 1 };
        if be % 2 == 1 {
            s *= legendre(&u, p);
        }
        if al % 2 == 1 {
            s *= legendre(&v, p);
        }
        s
    }
}

/// Integer solutions of `X^2 - d Y^2 = t Z^2` with `Z > 0`, enumerated by
/// `Y + Z` up to the budget.
fn search_norm(t: &BigInt, d: &BigInt, budget: usize) -> Option<(BigInt, BigInt, BigInt)> {
    let mut count = 0usize;
    let mut h: u64 = 1;
    loop {
        for z in 1..=h {
            let y = h - z;
            count += 1;
            if count > budget {
                return None;
            }
            let zb = BigInt::from(z);
            let yb = BigInt::from(y);
            let rhs = t * &zb * &zb + d * &yb * &yb;
            if rhs.is_negative() {
                continue;
            }
            if let Some(x) = integer_sqrt_exact(&rhs) {
                return Some((x, yb, zb));
            }
        }
        h += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::int;

    fn alg_q() -> InvolutiveAlgebra {
        InvolutiveAlgebra::simple(SimpleInvolutiveAlgebra::rationals())
    }

    fn qe(n: i64) -> AElem {
        AElem { components: vec![FactorElem::Field(NumberField::rationals().rational(int(n)))] }
    }

    fn ge(a: i64, b: i64) -> AElem {
        AElem { components: vec![FactorElem::Field(NumberField::gaussian().elem(&Poly::from_ints(&[a, b])))] }
    }

    #[test]
    fn rational_square_classes() {
        let a = alg_q();
        assert!(same_class(&a, Sign::Plus, &qe(2), &qe(8), None, 100).unwrap().is_same());
        assert_eq!(same_class(&a, Sign::Plus, &qe(2), &qe(3), None, 100).unwrap(), ClassComparison::Different);
        assert_eq!(
            same_class(&a, Sign::Plus, &qe(1), &qe(2), Some(&qe(1)), 100).unwrap(),
            ClassComparison::Different
        );
    }

    #[test]
    fn gaussian_norms() {
        let g = InvolutiveAlgebra::simple(SimpleInvolutiveAlgebra::gaussian());
        // 5 = (2+i)(2-i)
        let r = same_class(&g, Sign::Plus, &ge(1, 0), &ge(5, 0), None, 1000).unwrap();
        let b = match r {
            ClassComparison::Same(b) => b,
            other => panic!("{:?}", other),
        };
        assert!(verify_class_witness(&g, &ge(1, 0), &ge(5, 0), &b).unwrap());
        assert_eq!(same_class(&g, Sign::Plus, &ge(1, 0), &ge(-1, 0), None, 1000).unwrap(), ClassComparison::Different);
        assert_eq!(same_class(&g, Sign::Plus, &ge(1, 0), &ge(3, 0), None, 1000).unwrap(), ClassComparison::Different);
        assert!(same_class(&g, Sign::Minus, &ge(0, 1), &ge(0, 2), None, 1000).unwrap().is_same());
    }

    #[test]
    fn split_always_same() {
        let s = InvolutiveAlgebra::simple(SimpleInvolutiveAlgebra::split_rationals());
        let f = NumberField::rationals();
        let a = AElem { components: vec![FactorElem::Pair(f.rational(int(3)), f.rational(int(3)))] };
        let b = AElem { components: vec![FactorElem::Pair(f.rational(int(-7)), f.rational(int(-7)))] };
        assert!(same_class(&s, Sign::Plus, &a, &b, None, 10).unwrap().is_same());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&BigInt::from(-1), &BigInt::from(-1), &BigInt::from(2)), -1);
        assert_eq!(hilbert_symbol(&BigInt::from(2), &BigInt::from(5), &BigInt::from(5)), -1);
        assert!(hilbert_trivial(&BigInt::from(5), &BigInt::from(-1)));
        assert!(!hilbert_trivial(&BigInt::from(3), &BigInt::from(-1)));
    }
}
