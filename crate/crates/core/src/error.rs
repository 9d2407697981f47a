use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs a nonzero polynomial received zero.
    ZeroInput,
    /// Matrix or vector shapes do not fit together.
    DimensionMismatch { expected: usize, found: usize },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Generators of an algebra do not commute.
    NotCommutative,
    /// A minimal polynomial is not squarefree.
    NotSemisimple,
    /// A map that should be an involution is not one, or does not
    /// stabilize the algebra it acts on.
    NotInvolution,
    /// The form is degenerate.
    Degenerate,
    /// A value that must be invertible is not.
    NotInvertible,
    /// An element, module or matrix does not satisfy a required axiom.
    Invalid(String),
    /// Element is not in the required group or Lie algebra.
    NotInGroup(String),
    /// Nilpotent (or unipotent) input expected.
    NotNilpotent,
    /// Jacobson-Morozov was asked to complete the zero nilpotent.
    ZeroNilpotent,
    /// Eigenvalues of a neutral element are not all integers.
    NonIntegralSpectrum,
    /// A caller-side precondition failed.
    Precondition(String),
    /// A bounded search ran out of candidates without finding a witness.
    NoWitness(String),
    /// Something that the theory guarantees did not happen.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput => write!(f, "zero input"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::NotCommutative => write!(f, "not commutative"),
            Error::NotSemisimple => write!(f, "not semisimple"),
            Error::NotInvolution => write!(f, "not an involution of the algebra"),
            Error::Degenerate => write!(f, "degenerate form"),
            Error::NotInvertible => write!(f, "not invertible"),
            Error::Invalid(m) => write!(f, "invalid: {m}"),
            Error::NotInGroup(m) => write!(f, "membership failure: {m}"),
            Error::NotNilpotent => write!(f, "not nilpotent"),
            Error::ZeroNilpotent => write!(f, "zero nilpotent"),
            Error::NonIntegralSpectrum => write!(f, "non-integral spectrum"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::NoWitness(m) => write!(f, "no witness found in search space: {m}"),
            Error::Internal(m) => write!(f, "internal: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
