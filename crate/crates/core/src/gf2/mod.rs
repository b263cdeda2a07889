//! Bit-packed exact linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed into 64-bit words with little-endian
//! coordinate order: coordinate `i` is bit `i % 64` of word `i / 64`.

mod matrix;
mod solve;
mod symplectic;
mod vector;

pub use matrix::Gf2Matrix;
pub use solve::{null_space, solve_linear, LinearSolver};
pub use symplectic::{
    enumerate_invertible, gl_order, hyperbolic_sum, radical, standard_symplectic, symplectic_basis, SymplecticBasis,
    MAX_GL_ENUMERATION,
};
pub use vector::Gf2Vector;

pub(crate) use matrix::rank_of_rows;
pub(crate) use vector::parity;
