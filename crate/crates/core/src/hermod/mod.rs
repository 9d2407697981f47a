//! Epsilon-Hermitian modules over involutive algebras.

mod decompose;
mod iso;
mod model;
mod module;

pub use decompose::{canonical_class, columns, decompose_factor, extract_basis, orthogonal_decompose, reassembled_gram, signature, Piece, SimpleSummand, SimpleSummandLabel};
pub use iso::{find_iso, is_isometry, IsoResult};
pub use model::{dot, induced_module, module_basis, realize_scalar, InducedModule, RationalModel};
pub use module::{build_aa, gram_of, pairing, tau_twist, validate_module, Axiom, HermitianModule, ModuleVector, Violation};

#[cfg(test)]
pub(crate) use module::tests as test_util;
