//! The explicit ±1-valued family of normalized 3-cocycles on `Z_2^n`:
//!
//! ```text
//! w(x,y,z) = prod_r (-1)^{a_r i_r [(j_r + k_r)/2]}
//!            prod_{r<s} (-1)^{a_rs k_r [(i_s + j_s)/2]}
//!            prod_{r<s<t} (-1)^{a_rst k_r j_s i_t}
//! ```
//!
//! with `x = (i_r)`, `y = (j_r)`, `z = (k_r)` and `[.]` the integer floor.

use super::{check_cochain_dim, Cochain3};
use crate::error::{ensure_dim, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    n: usize,
    a_r: Vec<bool>,
    /// Lexicographic in `(r, s)`, `r < s`.
    a_rs: Vec<bool>,
    /// Lexicographic in `(r, s, t)`, `r < s < t`.
    a_rst: Vec<bool>,
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl FamilyParams {
    pub fn new(n: usize, a_r: Vec<bool>, a_rs: Vec<bool>, a_rst: Vec<bool>) -> Result<Self> {
        check_cochain_dim(n)?;
        ensure_dim(n, a_r.len())?;
        ensure_dim(choose(n, 2), a_rs.len())?;
        ensure_dim(choose(n, 3), a_rst.len())?;
        Ok(Self { n, a_r, a_rs, a_rst })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![false; n], vec![false; choose(n, 2)], vec![false; choose(n, 3)])
    }

    /// `n + C(n,2) + C(n,3)`.
    pub fn param_count(n: usize) -> usize {
        n + choose(n, 2) + choose(n, 3)
    }

    /// Unpacks `bits` in the order `a_r`, then `a_rs`, then `a_rst`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        let total = Self::param_count(n);
        if total < 64 && bits >> total != 0 {
            return Err(Error::InvalidInput(format!(
                "parameter bits {bits:#b} exceed the {total} parameters for n = {n}"
            )));
        }
        let mut it = (0..total).map(|i| (bits >> i) & 1 == 1);
        let a_r = it.by_ref().take(n).collect();
        let a_rs = it.by_ref().take(choose(n, 2)).collect();
        let a_rst = it.collect();
        Self::new(n, a_r, a_rs, a_rst)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn a_r(&self) -> &[bool] {
        &self.a_r
    }

    pub fn a_rs(&self) -> &[bool] {
        &self.a_rs
    }

    pub fn a_rst(&self) -> &[bool] {
        &self.a_rst
    }

    pub fn is_zero(&self) -> bool {
        !(self.a_r.iter().chain(&self.a_rs).chain(&self.a_rst).any(|&b| b))
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |r| (r + 1..n).map(move |s| (r, s)))
    }

    fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |r| (r + 1..n).flat_map(move |s| (s + 1..n).map(move |t| (r, s, t))))
    }

    /// GF(2) log of `w(x, y, z)`, straight from the product formula.
    pub fn log_value(&self, x: u64, y: u64, z: u64) -> u8 {
        let i = |r: usize| ((x >> r) & 1) as u32;
        let j = |r: usize| ((y >> r) & 1) as u32;
        let k = |r: usize| ((z >> r) & 1) as u32;
        let mut e = 0u32;
        for r in 0..self.n {
            e += u32::from(self.a_r[r]) * i(r) * ((j(r) + k(r)) / 2);
        }
        for ((r, s), &a) in self.pairs().zip(&self.a_rs) {
            e += u32::from(a) * k(r) * ((i(s) + j(s)) / 2);
        }
        for ((r, s, t), &a) in self.triples().zip(&self.a_rst) {
            e += u32::from(a) * k(r) * j(s) * i(t);
        }
        (e % 2) as u8
    }
}

pub fn family_cocycle(p: &FamilyParams) -> Result<Cochain3> {
    Cochain3::from_fn(p.n, |x, y, z| p.log_value(x, y, z) == 1)
}
