//! Exact computation with finite commutative rings and finite-rank
//! Z-algebras.

pub mod classify;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod spectrum;
#[doc(hidden)]
pub mod testing;
pub mod ultra;
pub mod verdict;

pub use error::{Error, Result};
pub use ideal::Ideal;
pub use ring::{Element, Ring, RingSpec};
pub use verdict::{Decision, Verdict, Witness, WitnessKind};
