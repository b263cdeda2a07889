//! Exact classification machinery for pointed fusion and modular categories
//! of Frobenius-Schur exponent 2.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: packed GF(2) vectors and matrices, canonical linear solving,
//!   radicals, symplectic bases and small `GL(n, 2)` enumeration.
//! - [`quadratic`]: quadratic forms `Z_2^n -> {±1}` in additive form, Arf
//!   invariants, Gauss sums and explicit equivalence witnesses.
//! - [`cocycle`]: ±1-valued normalized 2- and 3-cochains, Eilenberg-MacLane
//!   pairs, coboundary witnesses and the Frobenius-Schur exponent pipeline.
//! - [`modular`]: pointed modular data `C(Z_2^{2m}, q)` with S/T matrices,
//!   Gauss sums, Deligne products and prime decompositions.

pub mod cocycle;
pub mod error;
pub mod gf2;
pub mod modular;
pub mod quadratic;

pub use error::{Error, Result};
