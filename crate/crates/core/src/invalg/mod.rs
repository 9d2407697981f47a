//! Commutative involutive algebras over Q.

mod algebra;
mod classes;
pub mod fmat;
mod split;

pub use algebra::{apply_involution, trace_down, AElem, DiscriminantClass, FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
pub use classes::{hilbert_symbol, hilbert_trivial, same_class, verify_class_witness, ClassComparison, DEFAULT_SEARCH_BUDGET};
pub use split::{algebra_span, attach_involution, span_coords, split_semisimple_algebra, FactorParts, FieldFactor, InvolutiveSplitting, OperatorFactor, SemisimpleSplitting};
