use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::factor::is_irreducible;
use super::matrix::{QMatrix, Ring};
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Absolute number field `Q[t]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Poly,
}

/// Element of a number field: a polynomial of degree below the field
/// degree. The field itself is passed as context to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NFElem(Poly);

impl NFElem {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    /// Coefficients, lowest first, padded to `degree`.
    pub fn coeffs(&self, degree: usize) -> Vec<Rational> {
        (0..degree).map(|k| self.0.coeff(k)).collect()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.0.coeff(0)),
            _ => None,
        }
    }
}

impl NumberField {
    /// Checks that the modulus is monic and irreducible over Q.
    pub fn new(modulus: Poly) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 || !modulus.is_monic() {
            return Err(Error::Invalid("field modulus must be monic of positive degree".into()));
        }
        if !is_irreducible(&modulus) {
            return Err(Error::Invalid("field modulus is reducible".into()));
        }
        Ok(NumberField { modulus })
    }

    /// Skips the irreducibility check, for moduli already certified by
    /// factorization.
    pub(crate) fn new_certified(modulus: Poly) -> Self {
        debug_assert!(modulus.is_monic());
        NumberField { modulus }
    }

    /// `Q` itself, presented as `Q[t]/(t)`.
    pub fn rationals() -> Self {
        NumberField { modulus: Poly::from_ints(&[0, 1]) }
    }

    /// `Q(i) = Q[t]/(t^2 + 1)`.
    pub fn gaussian() -> Self {
        NumberField { modulus: Poly::from_ints(&[1, 0, 1]) }
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn elem(&self, p: &Poly) -> NFElem {
        NFElem(p.rem(&self.modulus).expect("nonzero modulus"))
    }

    pub fn from_coeffs(&self, c: Vec<Rational>) -> Result<NFElem> {
        if c.len() > self.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), found: c.len() });
        }
        Ok(NFElem(Poly::new(c)))
    }

    pub fn rational(&self, q: Rational) -> NFElem {
        self.elem(&Poly::constant(q))
    }

    /// Class of `t`.
    pub fn generator(&self) -> NFElem {
        self.elem(&Poly::monomial(Rational::one(), 1))
    }

    /// Evaluates a rational polynomial at an element.
    pub fn eval(&self, p: &Poly, a: &NFElem) -> NFElem {
        let mut acc = Poly::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&a.0).add(&Poly::constant(c.clone())).rem(&self.modulus).expect("nonzero");
        }
        NFElem(acc)
    }

    /// Matrix of multiplication by `a` on the basis `1, t, ..., t^(d-1)`.
    pub fn mul_matrix(&self, a: &NFElem) -> QMatrix {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        let t = self.generator();
        for _ in 0..d {
            cols.push(cur.coeffs(d));
            cur = self.mul(&cur, &t);
        }
        QMatrix::from_columns(d, &cols)
    }

    pub fn trace(&self, a: &NFElem) -> Rational {
        self.mul_matrix(a).trace()
    }

    pub fn norm(&self, a: &NFElem) -> Rational {
        self.mul_matrix(a).det().expect("square")
    }

    /// Companion matrix of the modulus: multiplication by `t`.
    pub fn companion(&self) -> QMatrix {
        self.mul_matrix(&self.generator())
    }
}

impl Ring for NumberField {
    type Elem = NFElem;
    fn zero(&self) -> NFElem {
        NFElem(Poly::zero())
    }
    fn one(&self) -> NFElem {
        NFElem(Poly::one())
    }
    fn add(&self, a: &NFElem, b: &NFElem) -> NFElem {
        NFElem(a.0.add(&b.0))
    }
    fn sub(&self, a: &NFElem, b: &NFElem) -> NFElem {
        NFElem(a.0.sub(&b.0))
    }
    fn mul(&self, a: &NFElem, b: &NFElem) -> NFElem {
        if self.is_rationals() {
            return NFElem(Poly::constant(a.0.coeff(0) * b.0.coeff(0)));
        }
        self.elem(&a.0.mul(&b.0))
    }
    fn neg(&self, a: &NFElem) -> NFElem {
        NFElem(a.0.neg())
    }
    fn is_zero(&self, a: &NFElem) -> bool {
        a.0.is_zero()
    }
    fn inv(&self, a: &NFElem) -> Option<NFElem> {
        if a.0.is_zero() {
            return None;
        }
        if self.is_rationals() {
            return Some(NFElem(Poly::constant(a.0.coeff(0).recip())));
        }
        a.0.inv_mod(&self.modulus).map(NFElem)
    }
    fn from_rational(&self, q: &Rational) -> NFElem {
        self.rational(q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rational::int;

    #[test]
    fn gaussian_arithmetic() {
        let k = NumberField::gaussian();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.rational(int(-1)));
        let a = k.add(&k.one(), &i);
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        let z = k.from_coeffs(alloc::vec![int(3), int(4)]).unwrap();
        assert_eq!(k.trace(&z), int(6));
        assert_eq!(k.norm(&z), int(25));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(NumberField::new(Poly::from_ints(&[-1, 0, 1])).is_err());
        assert!(NumberField::new(Poly::from_ints(&[-2, 0, 1])).is_ok());
    }
}
