//! Exact dense linear algebra over a prime field `Z/p`.
//!
//! Everything here is classical cubic-time Gaussian elimination with plain
//! row-major dense storage. All operations are deterministic: identical
//! inputs yield bit-identical outputs.

mod field;
mod matrix;

pub use field::{is_prime, PrimeField};
pub use matrix::{Echelon, Matrix};
