//! Exact matrix arithmetic over `Z` and `Z/n`.

mod matrix;
mod ring;
mod smith;

pub use matrix::Matrix;
pub use ring::Ring;
pub use smith::{cokernel_divisors, kernel_basis, smith, smith_divisors, solve, solve_with, SmithForm};
