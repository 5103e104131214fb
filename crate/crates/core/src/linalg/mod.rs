//! Exact linear algebra over GF(2) and over the integers.

pub mod gf2;
pub mod int;

pub use gf2::{Gf2Matrix, Gf2Vec};
pub use int::{IntMatrix, SmithForm};
