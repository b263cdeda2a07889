//! ±1-valued normalized cochains on `Z_2^n`, stored as GF(2) logarithms.
//!
//! A 2-cochain is a table of `2^{2n}` bits indexed by `x + 2^n y`; a
//! 3-cochain has `2^{3n}` bits indexed by `x + 2^n y + 2^{2n} z`. Bit 1 means
//! the value `-1`. All identities below are the multiplicative ones written
//! additively, with the group law of `Z_2^n` being XOR:
//!
//! - coboundary: `dh(x,y,z) = h(y,z) + h(x+y,z) + h(x,y+z) + h(x,y)`;
//! - 3-cocycle: `w(y,z,t) + w(x+y,z,t) + w(x,y+z,t) + w(x,y,z+t) + w(x,y,z) = 0`;
//! - hexagons for a braiding `c`:
//!   `c(x+y,z) + c(x,z) + c(y,z) + w(x,y,z) + w(z,x,y) + w(x,z,y) = 0` and
//!   `c(x,y+z) + c(x,y) + c(x,z) + w(y,x,z) + w(x,y,z) + w(y,z,x) = 0`.

mod family;
mod solve;

pub use family::{family_cocycle, FamilyParams};
pub use solve::{certify_fsexp2, coboundary_witness, trivialize, Certificate};

use crate::error::{ensure_dim, Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::quadratic::QuadraticForm;

/// Largest `n` for which cochain tables are built, scanned and solved.
pub const MAX_COCHAIN_DIM: usize = 6;

fn check_cochain_dim(n: usize) -> Result<()> {
    if n > MAX_COCHAIN_DIM {
        return Err(Error::CapExceeded { what: "cochain group dimension", limit: MAX_COCHAIN_DIM, requested: n });
    }
    Ok(())
}

#[inline]
fn bit(words: &[u64], idx: usize) -> u8 {
    ((words[idx >> 6] >> (idx & 63)) & 1) as u8
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cochain2 {
    n: usize,
    table: Gf2Vector,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cochain3 {
    n: usize,
    table: Gf2Vector,
}

impl Cochain2 {
    pub fn trivial(n: usize) -> Result<Self> {
        check_cochain_dim(n)?;
        Ok(Self { n, table: Gf2Vector::zeros(1 << (2 * n)) })
    }

    /// Tabulates `f(x, y)` (a GF(2) log) at nonzero arguments; entries with
    /// a zero argument are normalized to 0.
    pub fn from_fn(n: usize, f: impl Fn(u64, u64) -> bool) -> Result<Self> {
        let mut h = Self::trivial(n)?;
        let size = 1u64 << n;
        for y in 1..size {
            for x in 1..size {
                if f(x, y) {
                    h.table.set(h.index(x, y), true);
                }
            }
        }
        Ok(h)
    }

    /// Wraps a log table, rejecting wrong sizes and unnormalized entries.
    pub fn from_table(n: usize, table: Gf2Vector) -> Result<Self> {
        check_cochain_dim(n)?;
        ensure_dim(1 << (2 * n), table.len())?;
        let h = Self { n, table };
        let size = 1u64 << n;
        if (0..size).any(|t| h.get(0, t) == 1 || h.get(t, 0) == 1) {
            return Err(Error::InvalidInput(
                "2-cochain is not normalized (non-trivial value with a zero argument)".into(),
            ));
        }
        Ok(h)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn index(&self, x: u64, y: u64) -> usize {
        (x | y << self.n) as usize
    }

    /// GF(2) log of the value at `(x, y)`.
    #[inline]
    pub fn get(&self, x: u64, y: u64) -> u8 {
        bit(self.table.words(), self.index(x, y))
    }

    #[inline]
    pub fn sign(&self, x: u64, y: u64) -> i8 {
        1 - 2 * self.get(x, y) as i8
    }

    pub fn table(&self) -> &Gf2Vector {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.is_zero()
    }

    /// Pointwise product of the ±1 values.
    pub fn product(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.n, other.n)?;
        Ok(Self { n: self.n, table: &self.table + &other.table })
    }

    /// `(x, y) -> h(x, y) / h(y, x)`, the braiding part of a coboundary.
    pub fn antisymmetrization(&self) -> Self {
        Self::from_fn(self.n, |x, y| self.get(x, y) ^ self.get(y, x) == 1).expect("same dimension")
    }

    /// `(x, y) -> h(f x, f y)`.
    pub fn pullback(&self, f: &Gf2Matrix) -> Result<Self> {
        ensure_dim(self.n, f.rows())?;
        ensure_dim(self.n, f.cols())?;
        Self::from_fn(self.n, |x, y| self.get(f.apply_u64(x), f.apply_u64(y)) == 1)
    }
}

impl Cochain3 {
    pub fn trivial(n: usize) -> Result<Self> {
        check_cochain_dim(n)?;
        Ok(Self { n, table: Gf2Vector::zeros(1 << (3 * n)) })
    }

    pub fn from_fn(n: usize, f: impl Fn(u64, u64, u64) -> bool) -> Result<Self> {
        let mut w = Self::trivial(n)?;
        let size = 1u64 << n;
        for z in 1..size {
            for y in 1..size {
                for x in 1..size {
                    if f(x, y, z) {
                        w.table.set(w.index(x, y, z), true);
                    }
                }
            }
        }
        Ok(w)
    }

    pub fn from_table(n: usize, table: Gf2Vector) -> Result<Self> {
        check_cochain_dim(n)?;
        ensure_dim(1 << (3 * n), table.len())?;
        let w = Self { n, table };
        let size = 1u64 << n;
        for a in 0..size {
            for b in 0..size {
                if w.get(0, a, b) == 1 || w.get(a, 0, b) == 1 || w.get(a, b, 0) == 1 {
                    return Err(Error::InvalidInput(
                        "3-cochain is not normalized (non-trivial value with a zero argument)".into(),
                    ));
                }
            }
        }
        Ok(w)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn index(&self, x: u64, y: u64, z: u64) -> usize {
        (x | y << self.n | z << (2 * self.n)) as usize
    }

    #[inline]
    pub fn get(&self, x: u64, y: u64, z: u64) -> u8 {
        bit(self.table.words(), self.index(x, y, z))
    }

    #[inline]
    pub fn sign(&self, x: u64, y: u64, z: u64) -> i8 {
        1 - 2 * self.get(x, y, z) as i8
    }

    pub fn table(&self) -> &Gf2Vector {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.is_zero()
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.n, other.n)?;
        Ok(Self { n: self.n, table: &self.table + &other.table })
    }

    pub fn pullback(&self, f: &Gf2Matrix) -> Result<Self> {
        ensure_dim(self.n, f.rows())?;
        ensure_dim(self.n, f.cols())?;
        Self::from_fn(self.n, |x, y, z| self.get(f.apply_u64(x), f.apply_u64(y), f.apply_u64(z)) == 1)
    }

    /// Flips one entry; used to build corrupted tables in tests and fixtures.
    pub fn with_flipped(&self, x: u64, y: u64, z: u64) -> Self {
        let mut out = self.clone();
        out.table.flip(self.index(x, y, z));
        out
    }
}

/// `dh(x,y,z) = h(y,z) h(x+y,z)^{-1} h(x,y+z) h(x,y)^{-1}`; signs vanish in
/// the log domain.
pub fn delta2(h: &Cochain2) -> Cochain3 {
    Cochain3::from_fn(h.n, |x, y, z| h.get(y, z) ^ h.get(x ^ y, z) ^ h.get(x, y ^ z) ^ h.get(x, y) == 1)
        .expect("dimension already checked")
}

/// Exhaustive check of the 3-cocycle identity over all quadruples.
pub fn is_cocycle3(w: &Cochain3) -> bool {
    let size = 1u64 << w.n;
    // With a zero argument the identity holds for any normalized cochain.
    for t in 1..size {
        for z in 1..size {
            for y in 1..size {
                let a = w.get(y, z, t);
                for x in 1..size {
                    let s = a ^ w.get(x ^ y, z, t) ^ w.get(x, y ^ z, t) ^ w.get(x, y, z ^ t) ^ w.get(x, y, z);
                    if s != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Both hexagon identities on all triples.
pub fn check_hexagons(w: &Cochain3, c: &Cochain2) -> Result<bool> {
    ensure_dim(w.n, c.n)?;
    let size = 1u64 << w.n;
    for z in 0..size {
        for y in 0..size {
            for x in 0..size {
                let first =
                    c.get(x ^ y, z) ^ c.get(x, z) ^ c.get(y, z) ^ w.get(x, y, z) ^ w.get(z, x, y) ^ w.get(x, z, y);
                let second =
                    c.get(x, y ^ z) ^ c.get(x, y) ^ c.get(x, z) ^ w.get(y, x, z) ^ w.get(x, y, z) ^ w.get(y, z, x);
                if first | second != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An associator/braiding pair together with its validity as an
/// Eilenberg-MacLane 3-cocycle (3-cocycle identity plus both hexagons).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmPair {
    omega: Cochain3,
    c: Cochain2,
    valid: bool,
}

impl EmPair {
    /// Pairs two cochains and records whether they form an EM 3-cocycle.
    pub fn new(omega: Cochain3, c: Cochain2) -> Result<Self> {
        let valid = check_hexagons(&omega, &c)? && is_cocycle3(&omega);
        Ok(Self { omega, c, valid })
    }

    /// For pairs that are valid by construction.
    pub(crate) fn from_valid_parts(omega: Cochain3, c: Cochain2) -> Self {
        debug_assert!(omega.n > 3 || (is_cocycle3(&omega) && check_hexagons(&omega, &c).unwrap()));
        Self { omega, c, valid: true }
    }

    pub fn omega(&self) -> &Cochain3 {
        &self.omega
    }

    pub fn braiding(&self) -> &Cochain2 {
        &self.c
    }

    pub fn dim(&self) -> usize {
        self.c.n
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.valid {
            Ok(())
        } else {
            Err(Error::Precondition("pair is not an Eilenberg-MacLane 3-cocycle".into()))
        }
    }

    /// `(f^* w, f^* c)`; valid whenever `self` is.
    pub fn pullback(&self, f: &Gf2Matrix) -> Result<Self> {
        if !f.is_invertible() {
            return Err(Error::Precondition("basis change is singular".into()));
        }
        Ok(Self { omega: self.omega.pullback(f)?, c: self.c.pullback(f)?, valid: self.valid })
    }
}

/// The trace `q(x) = c(x, x)` of a valid pair, as a quadratic form.
pub fn trace(pair: &EmPair) -> Result<QuadraticForm> {
    pair.ensure_valid()?;
    let c = pair.braiding();
    let values: Vec<i8> = (0..1u64 << c.n).map(|x| c.sign(x, x)).collect();
    QuadraticForm::from_table(&values)?
        .ok_or_else(|| Error::Internal("trace of a valid Eilenberg-MacLane pair is not quadratic".into()))
}

/// `(1, c_beta)` with `beta(x, y) = sum_i a_i x_i y_i + sum_{i<j} b_ij x_i y_j`,
/// a bilinear form with `beta(x, x) = Q(x)`; its trace is `q`.
pub fn cocycle_from_form(q: &QuadraticForm) -> Result<EmPair> {
    let n = q.dim();
    check_cochain_dim(n)?;
    let mut beta = Gf2Matrix::zeros(n, n);
    for i in 0..n {
        beta.set(i, i, (q.linear_bits() >> i) & 1 == 1);
    }
    for (i, j) in q.quad_pairs() {
        beta.set(i, j, true);
    }
    let c = Cochain2::from_fn(n, |x, y| beta.bilinear_u64(x, y) == 1)?;
    Ok(EmPair::from_valid_parts(Cochain3::trivial(n)?, c))
}

/// Values `w(g, g, g)` for `g = 1 .. 2^n - 1`, one per subgroup `<g>`.
///
/// On `Z_2 = <g>` the group `H^3` has order two; a normalized coboundary has
/// `dh(g,g,g) = h(g,g) + h(0,g) + h(g,0) + h(g,g) = 0`, while the generator
/// `(-1)^{abc}` has diagonal `-1`. So the diagonal value is exactly the
/// triviality of the restriction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictionVector {
    n: usize,
    entries: Vec<i8>,
}

impl RestrictionVector {
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `lambda_<g>` for `g != 0`.
    pub fn at(&self, g: u64) -> i8 {
        self.entries[g as usize - 1]
    }

    pub fn all_trivial(&self) -> bool {
        self.entries.iter().all(|&e| e == 1)
    }
}

fn ensure_cocycle(w: &Cochain3) -> Result<()> {
    if is_cocycle3(w) {
        Ok(())
    } else {
        Err(Error::Precondition("3-cochain is not a cocycle".into()))
    }
}

pub fn restriction_vector(w: &Cochain3) -> Result<RestrictionVector> {
    ensure_cocycle(w)?;
    Ok(diagonal_vector(w))
}

fn diagonal_vector(w: &Cochain3) -> RestrictionVector {
    RestrictionVector { n: w.n, entries: (1..1u64 << w.n).map(|g| w.sign(g, g, g)).collect() }
}

/// `lcm_g ord(g) * ord(w restricted to <g>)`: 1 for the trivial group,
/// otherwise 2 or 4.
pub fn fs_exponent(w: &Cochain3) -> Result<u32> {
    ensure_cocycle(w)?;
    Ok(exponent_from_diagonal(&diagonal_vector(w)))
}

fn exponent_from_diagonal(lambda: &RestrictionVector) -> u32 {
    lambda.entries.iter().map(|&l| 2 * if l == 1 { 1 } else { 2 }).fold(1, lcm)
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
