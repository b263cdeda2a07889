//! Coboundary witnesses by GF(2) linear solving.
//!
//! Unknowns are the entries `h(x, y)` with `x, y != 0`, numbered
//! `(x - 1) + (2^n - 1)(y - 1)`; normalization is built in by omitting the
//! entries with a zero argument.
//!
//! For a cocycle right-hand side `v`, the equations `dh(x, y, z) = v(x, y, z)`
//! with `z` ranging over the unit vectors already force the rest: if
//! `e = v - dh` is a normalized cocycle vanishing whenever `z = e_k`, the
//! cocycle identity at `(x, y, z, e_k)` gives `e(x, y, z + e_k) = e(x, y, z)`,
//! hence `e = 0`. Only those `n 2^{2n}` rows enter the system; the returned
//! witness is still checked against every triple.

use std::sync::OnceLock;

use super::{
    delta2, diagonal_vector, ensure_cocycle, exponent_from_diagonal, Cochain2, Cochain3, EmPair, MAX_COCHAIN_DIM,
};
use crate::error::{ensure_dim, Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, LinearSolver};

const CACHE_SLOTS: usize = MAX_COCHAIN_DIM + 1;

static DELTA_SYSTEMS: [OnceLock<LinearSolver>; CACHE_SLOTS] = [const { OnceLock::new() }; CACHE_SLOTS];
static EM_SYSTEMS: [OnceLock<LinearSolver>; CACHE_SLOTS] = [const { OnceLock::new() }; CACHE_SLOTS];

#[inline]
fn unknown(n: usize, x: u64, y: u64) -> Option<usize> {
    let side = (1u64 << n) - 1;
    (x != 0 && y != 0).then(|| ((x - 1) + side * (y - 1)) as usize)
}

fn delta_row_count(n: usize) -> usize {
    let side = (1usize << n) - 1;
    side * side * n
}

/// Rows `dh(x, y, e_k)` for `x, y != 0`, in order `k`, then `y`, then `x`.
fn fill_delta_rows(n: usize, m: &mut Gf2Matrix) {
    let size = 1u64 << n;
    let mut row = 0;
    for k in 0..n {
        let z = 1u64 << k;
        for y in 1..size {
            for x in 1..size {
                for (a, b) in [(y, z), (x ^ y, z), (x, y ^ z), (x, y)] {
                    if let Some(u) = unknown(n, a, b) {
                        let cur = m.get(row, u);
                        m.set(row, u, !cur);
                    }
                }
                row += 1;
            }
        }
    }
}

fn delta_rhs(w: &Cochain3, b: &mut Gf2Vector) {
    let n = w.dim();
    let size = 1u64 << n;
    let mut row = 0;
    for k in 0..n {
        let z = 1u64 << k;
        for y in 1..size {
            for x in 1..size {
                if w.get(x, y, z) == 1 {
                    b.set(row, true);
                }
                row += 1;
            }
        }
    }
}

fn unknown_count(n: usize) -> usize {
    let side = (1usize << n) - 1;
    side * side
}

fn delta_system(n: usize) -> &'static LinearSolver {
    DELTA_SYSTEMS[n].get_or_init(|| {
        let mut m = Gf2Matrix::zeros(delta_row_count(n), unknown_count(n));
        fill_delta_rows(n, &mut m);
        LinearSolver::new(m)
    })
}

/// Delta rows followed by `mu(x, y) + mu(y, x)` for `x, y != 0`.
fn em_system(n: usize) -> &'static LinearSolver {
    EM_SYSTEMS[n].get_or_init(|| {
        let side = (1u64 << n) - 1;
        let d = delta_row_count(n);
        let mut m = Gf2Matrix::zeros(d + unknown_count(n), unknown_count(n));
        fill_delta_rows(n, &mut m);
        let mut row = d;
        for y in 1..=side {
            for x in 1..=side {
                if x != y {
                    m.set(row, unknown(n, x, y).unwrap(), true);
                    m.set(row, unknown(n, y, x).unwrap(), true);
                }
                row += 1;
            }
        }
        LinearSolver::new(m)
    })
}

fn cochain_from_solution(n: usize, x: &Gf2Vector) -> Result<Cochain2> {
    Cochain2::from_fn(n, |a, b| x.get(unknown(n, a, b).expect("nonzero arguments")))
}

/// Some `h` with `dh = w` (verified on all triples), or `None` if no
/// ±1-valued trivialization exists.
pub fn trivialize(w: &Cochain3) -> Result<Option<Cochain2>> {
    ensure_cocycle(w)?;
    let n = w.dim();
    if n == 0 {
        return Ok(Some(Cochain2::trivial(0)?));
    }
    let solver = delta_system(n);
    let mut b = Gf2Vector::zeros(solver.system().rows());
    delta_rhs(w, &mut b);
    let Some(x) = solver.solve(&b)? else {
        return Ok(None);
    };
    let h = cochain_from_solution(n, &x)?;
    if delta2(&h) != *w {
        return Err(Error::Internal("trivialization failed verification".into()));
    }
    Ok(Some(h))
}

/// The canonical `mu` with `w' = w * d(mu)` and
/// `c'(x, y) = c(x, y) mu(x, y) / mu(y, x)`, if one exists.
pub fn coboundary_witness(pair: &EmPair, other: &EmPair) -> Result<Option<Cochain2>> {
    ensure_dim(pair.dim(), other.dim())?;
    pair.ensure_valid()?;
    other.ensure_valid()?;
    let n = pair.dim();
    let omega_diff = pair.omega().product(other.omega())?;
    let c_diff = pair.braiding().product(other.braiding())?;
    let check = |mu: &Cochain2| delta2(mu) == omega_diff && mu.antisymmetrization() == c_diff;
    if n == 0 {
        let mu = Cochain2::trivial(0)?;
        return Ok(check(&mu).then_some(mu));
    }

    let solver = em_system(n);
    let mut b = Gf2Vector::zeros(solver.system().rows());
    delta_rhs(&omega_diff, &mut b);
    let side = (1u64 << n) - 1;
    let mut row = delta_row_count(n);
    for y in 1..=side {
        for x in 1..=side {
            if c_diff.get(x, y) == 1 {
                b.set(row, true);
            }
            row += 1;
        }
    }
    let Some(x) = solver.solve(&b)? else {
        return Ok(None);
    };
    let mu = cochain_from_solution(n, &x)?;
    if !check(&mu) {
        return Err(Error::Internal("coboundary witness failed verification".into()));
    }
    Ok(Some(mu))
}

/// A checked trivialization `dh = w`: the associator is cohomologically
/// trivial and `Vec^w` is monoidally equivalent to `Rep(Z_2^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub h: Cochain2,
}

impl Certificate {
    pub fn verify(&self, w: &Cochain3) -> bool {
        self.h.dim() == w.dim() && delta2(&self.h) == *w
    }
}

/// A trivializing certificate when the Frobenius-Schur exponent is 2, `None`
/// when it is 4.
///
/// Fails with [`Error::SignedWitnessUnavailable`] when every restriction is
/// trivial but `w` is not the coboundary of a ±1-valued cochain (such classes
/// die only over `C^x`).
pub fn certify_fsexp2(w: &Cochain3) -> Result<Option<Certificate>> {
    ensure_cocycle(w)?;
    if w.dim() == 0 {
        return Err(Error::Precondition("certification needs a nontrivial group (n >= 1)".into()));
    }
    if exponent_from_diagonal(&diagonal_vector(w)) != 2 {
        return Ok(None);
    }
    let h = trivialize(w)?.ok_or(Error::SignedWitnessUnavailable)?;
    let cert = Certificate { h };
    if !cert.verify(w) {
        return Err(Error::Internal("certificate failed verification".into()));
    }
    Ok(Some(cert))
}
