//! Exact computations with epsilon-Hermitian modules over commutative
//! involutive algebras, their isometry groups and MVW-extensions.
//!
//! Everything is exact arithmetic over the rationals and absolute number
//! fields. The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod error;
pub mod families;
pub mod hermod;
pub mod grp;
pub mod invalg;
pub mod mvw;
pub mod sl2mod;
pub mod numfield;

pub use error::{Error, Result};
