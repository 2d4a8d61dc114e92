//! Graded Milnor algebra invariants, freeness tests and curve families for
//! reduced complex projective plane curves.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod families;
pub mod freeness;
pub mod groebner;
pub mod linalg;
pub mod milnor;
pub mod parser;
pub mod tripoly;
pub mod verify;
