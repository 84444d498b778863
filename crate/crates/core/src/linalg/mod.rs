pub mod int;
pub mod lattice;
pub mod rat;
pub mod upoly;

pub use int::{IntMatrix, IntVec};
pub use lattice::Lattice;
