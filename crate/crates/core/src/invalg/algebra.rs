use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numfield::{NFElem, NumberField, Poly, QMatrix, Rational, Ring};

/// The sign epsilon of a form, or the delta of an MVW-extension element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `(-1)^k`.
    pub fn parity(k: usize) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn rational(self) -> Rational {
        Rational::from_integer(self.value().into())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A commutative involutive algebra `(A, tau)` with `A^+` a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimpleInvolutiveAlgebra {
    /// `A = A^+ = F`, `tau = id`.
    FieldTrivial { field: NumberField },
    /// `A = F` a quadratic extension of `A^+`; `tau(t) = sigma`.
    FieldQuadratic { field: NumberField, sigma: NFElem },
    /// `A = F x F` with the coordinate exchange.
    SplitPair { field: NumberField },
}

/// Element of a simple involutive algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorElem {
    Field(NFElem),
    Pair(NFElem, NFElem),
}

impl SimpleInvolutiveAlgebra {
    pub fn rationals() -> Self {
        SimpleInvolutiveAlgebra::FieldTrivial { field: NumberField::rationals() }
    }

    /// `Q(i)` with complex conjugation.
    pub fn gaussian() -> Self {
        SimpleInvolutiveAlgebra::FieldQuadratic {
            field: NumberField::gaussian(),
            sigma: NumberField::gaussian().elem(&Poly::from_ints(&[0, -1])),
        }
    }

    pub fn split_rationals() -> Self {
        SimpleInvolutiveAlgebra::SplitPair { field: NumberField::rationals() }
    }

    /// Validates the quadratic variant: sigma must be an automorphism of
    /// order exactly two.
    pub fn quadratic(field: NumberField, sigma: NFElem) -> Result<Self> {
        // sigma must be a root of the modulus
        let at = field.eval(field.modulus(), &sigma);
        if !field.is_zero(&at) {
            return Err(Error::Invalid("sigma is not a root of the field modulus".into()));
        }
        if sigma == field.generator() {
            return Err(Error::Invalid("sigma is the identity".into()));
        }
        let twice = field.eval(sigma.poly(), &sigma);
        if twice != field.generator() {
            return Err(Error::Invalid("sigma does not square to the identity".into()));
        }
        Ok(SimpleInvolutiveAlgebra::FieldQuadratic { field, sigma })
    }

    pub fn field(&self) -> &NumberField {
        match self {
            SimpleInvolutiveAlgebra::FieldTrivial { field }
            | SimpleInvolutiveAlgebra::FieldQuadratic { field, .. }
            | SimpleInvolutiveAlgebra::SplitPair { field } => field,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, SimpleInvolutiveAlgebra::SplitPair { .. })
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, SimpleInvolutiveAlgebra::FieldTrivial { .. })
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, SimpleInvolutiveAlgebra::FieldQuadratic { .. })
    }

    /// Dimension over Q.
    pub fn dim_q(&self) -> usize {
        let d = self.field().degree();
        if self.is_split() {
            2 * d
        } else {
            d
        }
    }

    pub fn tau(&self, a: &FactorElem) -> FactorElem {
        match (self, a) {
            (SimpleInvolutiveAlgebra::FieldTrivial { .. }, x) => x.clone(),
            (SimpleInvolutiveAlgebra::FieldQuadratic { field, sigma }, FactorElem::Field(x)) => {
                FactorElem::Field(field.eval(x.poly(), sigma))
            }
            (SimpleInvolutiveAlgebra::SplitPair { .. }, FactorElem::Pair(x, y)) => {
                FactorElem::Pair(y.clone(), x.clone())
            }
            _ => a.clone(),
        }
    }

    pub fn accepts(&self, a: &FactorElem) -> bool {
        let d = self.field().degree();
        let ok = |x: &NFElem| x.poly().degree().is_none_or(|k| k < d);
        match (self, a) {
            (SimpleInvolutiveAlgebra::SplitPair { .. }, FactorElem::Pair(x, y)) => ok(x) && ok(y),
            (SimpleInvolutiveAlgebra::SplitPair { .. }, _) => false,
            (_, FactorElem::Field(x)) => ok(x),
            _ => false,
        }
    }

    pub fn check(&self, a: &FactorElem) -> Result<()> {
        if self.accepts(a) {
            Ok(())
        } else {
            Err(Error::Invalid("element shape does not match the algebra factor".into()))
        }
    }

    pub fn rational(&self, q: &Rational) -> FactorElem {
        let f = self.field();
        match self {
            SimpleInvolutiveAlgebra::SplitPair { .. } => FactorElem::Pair(f.rational(q.clone()), f.rational(q.clone())),
            _ => FactorElem::Field(f.rational(q.clone())),
        }
    }

    pub fn from_int(&self, n: i64) -> FactorElem {
        self.rational(&Rational::from_integer(n.into()))
    }

    /// A nonzero element with `tau(theta) = -theta` (none for the trivial
    /// variant).
    pub fn anti_invariant(&self) -> Option<FactorElem> {
        match self {
            SimpleInvolutiveAlgebra::FieldTrivial { .. } => None,
            SimpleInvolutiveAlgebra::FieldQuadratic { field, sigma } => {
                Some(FactorElem::Field(field.sub(&field.generator(), sigma)))
            }
            SimpleInvolutiveAlgebra::SplitPair { field } => Some(FactorElem::Pair(field.one(), field.neg(&field.one()))),
        }
    }

    /// Coordinates over Q: field coefficients, or the two coordinate
    /// fields' coefficients concatenated.
    pub fn coords(&self, a: &FactorElem) -> Vec<Rational> {
        let d = self.field().degree();
        match a {
            FactorElem::Field(x) => x.coeffs(d),
            FactorElem::Pair(x, y) => {
                let mut v = x.coeffs(d);
                v.extend(y.coeffs(d));
                v
            }
        }
    }

    pub fn from_coords(&self, c: &[Rational]) -> FactorElem {
        let f = self.field();
        let d = f.degree();
        match self {
            SimpleInvolutiveAlgebra::SplitPair { .. } => FactorElem::Pair(
                f.elem(&Poly::new(c[..d].to_vec())),
                f.elem(&Poly::new(c[d..2 * d].to_vec())),
            ),
            _ => FactorElem::Field(f.elem(&Poly::new(c[..d].to_vec()))),
        }
    }

    /// The Q-basis matching `coords`.
    pub fn q_basis(&self) -> Vec<FactorElem> {
        let n = self.dim_q();
        (0..n)
            .map(|k| {
                let mut c = vec![Rational::zero(); n];
                c[k] = Rational::one();
                self.from_coords(&c)
            })
            .collect()
    }

    /// Multiplication by `a` on the Q-basis.
    pub fn mul_matrix(&self, a: &FactorElem) -> QMatrix {
        let cols: Vec<Vec<Rational>> = self.q_basis().iter().map(|b| self.coords(&self.mul(a, b))).collect();
        QMatrix::from_columns(self.dim_q(), &cols)
    }

    /// The Q-linear map `tau` on the Q-basis.
    pub fn tau_matrix(&self) -> QMatrix {
        let cols: Vec<Vec<Rational>> = self.q_basis().iter().map(|b| self.coords(&self.tau(b))).collect();
        QMatrix::from_columns(self.dim_q(), &cols)
    }

    /// `tr_{A/Q}`; for the split variant the sum of both coordinate traces.
    pub fn trace(&self, a: &FactorElem) -> Rational {
        let f = self.field();
        match a {
            FactorElem::Field(x) => f.trace(x),
            FactorElem::Pair(x, y) => f.trace(x) + f.trace(y),
        }
    }

    pub fn is_unit(&self, a: &FactorElem) -> bool {
        self.inv(a).is_some()
    }

    /// True when `a^tau = eps * a`.
    pub fn is_eps_hermitian(&self, a: &FactorElem, eps: Sign) -> bool {
        let t = self.tau(a);
        match eps {
            Sign::Plus => t == *a,
            Sign::Minus => t == self.neg(a),
        }
    }

    pub fn scale_sign(&self, s: Sign, a: &FactorElem) -> FactorElem {
        match s {
            Sign::Plus => a.clone(),
            Sign::Minus => self.neg(a),
        }
    }

    /// Field-level components: one for the field variants, two for the
    /// split variant.
    pub fn components(&self, a: &FactorElem) -> Vec<NFElem> {
        match a {
            FactorElem::Field(x) => vec![x.clone()],
            FactorElem::Pair(x, y) => vec![x.clone(), y.clone()],
        }
    }
}

impl Ring for SimpleInvolutiveAlgebra {
    type Elem = FactorElem;
    fn zero(&self) -> FactorElem {
        self.from_int(0)
    }
    fn one(&self) -> FactorElem {
        self.from_int(1)
    }
    fn add(&self, a: &FactorElem, b: &FactorElem) -> FactorElem {
        let f = self.field();
        match (a, b) {
            (FactorElem::Field(x), FactorElem::Field(y)) => FactorElem::Field(f.add(x, y)),
            (FactorElem::Pair(x1, y1), FactorElem::Pair(x2, y2)) => FactorElem::Pair(f.add(x1, x2), f.add(y1, y2)),
            _ => panic!("mixed factor element shapes"),
        }
    }
    fn sub(&self, a: &FactorElem, b: &FactorElem) -> FactorElem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &FactorElem, b: &FactorElem) -> FactorElem {
        let f = self.field();
        match (a, b) {
            (FactorElem::Field(x), FactorElem::Field(y)) => FactorElem::Field(f.mul(x, y)),
            (FactorElem::Pair(x1, y1), FactorElem::Pair(x2, y2)) => FactorElem::Pair(f.mul(x1, x2), f.mul(y1, y2)),
            _ => panic!("mixed factor element shapes"),
        }
    }
    fn neg(&self, a: &FactorElem) -> FactorElem {
        let f = self.field();
        match a {
            FactorElem::Field(x) => FactorElem::Field(f.neg(x)),
            FactorElem::Pair(x, y) => FactorElem::Pair(f.neg(x), f.neg(y)),
        }
    }
    fn is_zero(&self, a: &FactorElem) -> bool {
        self.components(a).iter().all(|x| x.poly().is_zero())
    }
    fn inv(&self, a: &FactorElem) -> Option<FactorElem> {
        let f = self.field();
        match a {
            FactorElem::Field(x) => f.inv(x).map(FactorElem::Field),
            FactorElem::Pair(x, y) => Some(FactorElem::Pair(f.inv(x)?, f.inv(y)?)),
        }
    }
    fn from_rational(&self, q: &Rational) -> FactorElem {
        self.rational(q)
    }
}

/// A finite product of simple involutive algebras, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutiveAlgebra {
    factors: Vec<SimpleInvolutiveAlgebra>,
}

/// Element of an involutive algebra, one component per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AElem {
    pub components: Vec<FactorElem>,
}

impl InvolutiveAlgebra {
    pub fn new(factors: Vec<SimpleInvolutiveAlgebra>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("an involutive algebra needs at least one factor".into()));
        }
        Ok(InvolutiveAlgebra { factors })
    }

    pub fn simple(f: SimpleInvolutiveAlgebra) -> Self {
        InvolutiveAlgebra { factors: vec![f] }
    }

    pub fn factors(&self) -> &[SimpleInvolutiveAlgebra] {
        &self.factors
    }

    pub fn dim_q(&self) -> usize {
        self.factors.iter().map(|f| f.dim_q()).sum()
    }

    pub fn check(&self, a: &AElem) -> Result<()> {
        if a.components.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: a.components.len() });
        }
        for (f, c) in self.factors.iter().zip(&a.components) {
            f.check(c)?;
        }
        Ok(())
    }

    pub fn one(&self) -> AElem {
        AElem { components: self.factors.iter().map(|f| f.one()).collect() }
    }

    pub fn mul(&self, a: &AElem, b: &AElem) -> AElem {
        AElem {
            components: self.factors.iter().zip(a.components.iter().zip(&b.components)).map(|(f, (x, y))| f.mul(x, y)).collect(),
        }
    }

    pub fn inv(&self, a: &AElem) -> Option<AElem> {
        Some(AElem {
            components: self.factors.iter().zip(&a.components).map(|(f, x)| f.inv(x)).collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn tau(&self, a: &AElem) -> AElem {
        AElem { components: self.factors.iter().zip(&a.components).map(|(f, x)| f.tau(x)).collect() }
    }
}

/// `a^tau`.
pub fn apply_involution(alg: &InvolutiveAlgebra, a: &AElem) -> Result<AElem> {
    alg.check(a)?;
    Ok(alg.tau(a))
}

/// Sum over factors of the trace down to Q.
pub fn trace_down(alg: &InvolutiveAlgebra, a: &AElem) -> Result<Rational> {
    alg.check(a)?;
    Ok(alg.factors.iter().zip(&a.components).map(|(f, x)| f.trace(x)).sum())
}

/// An element of `(A^x)^{tau = eps}`, standing for its class modulo norms
/// `b b^tau`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscriminantClass {
    pub representative: AElem,
    pub epsilon: Sign,
}

impl DiscriminantClass {
    pub fn new(alg: &InvolutiveAlgebra, representative: AElem, epsilon: Sign) -> Result<Self> {
        alg.check(&representative)?;
        for (f, x) in alg.factors.iter().zip(&representative.components) {
            if !f.is_unit(x) {
                return Err(Error::Invalid("class representative is not invertible".into()));
            }
            if !f.is_eps_hermitian(x, epsilon) {
                return Err(Error::Invalid("class representative violates a^tau = eps*a".into()));
            }
        }
        Ok(DiscriminantClass { representative, epsilon })
    }
}
