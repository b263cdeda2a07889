//! Quadratic forms `q : Z_2^n -> {±1}` in additive form.
//!
//! A form is stored as `Q(x) = sum_i a_i x_i + sum_{i<j} b_ij x_i x_j` over
//! GF(2) and evaluates multiplicatively as `q(x) = (-1)^Q(x)`. The
//! representation is unique, so `Q(0) = 0` and `q(x)^2 = 1` hold by
//! construction and two forms are equal as functions iff their coefficients
//! agree.
//!
//! Because `x^2 = x` over GF(2), the classical form `x^2 + xy + y^2` is
//! stored as `x + xy + y` (see [`QuadraticForm::q2`]).

mod classify;

pub use crate::gf2::SymplecticBasis;
pub use classify::{
    canonical_decomposition, canonical_form, enumerate_classes, equivalence_witness, Block, CanonicalDecomposition,
    ClassCensus, FormClass, MAX_CENSUS_DIM, MAX_ORBIT_DIM,
};

use crate::error::{ensure_dim, Error, Result};
use crate::gf2::{parity, radical, rank_of_rows, symplectic_basis, Gf2Matrix, Gf2Vector};

/// Largest ambient dimension of a stored form; elements are `u64` encoded.
pub const MAX_FORM_DIM: usize = 64;
/// Largest dimension for operations that enumerate all `2^n` points.
pub const MAX_EXHAUSTIVE_DIM: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticForm {
    n: usize,
    linear: u64,
    /// `quad[i]` holds `b_ij` at bit `j`, only for `j > i`.
    quad: Vec<u64>,
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_FORM_DIM {
        return Err(Error::CapExceeded { what: "quadratic form dimension", limit: MAX_FORM_DIM, requested: n });
    }
    Ok(())
}

fn check_exhaustive(n: usize) -> Result<()> {
    if n > MAX_EXHAUSTIVE_DIM {
        return Err(Error::CapExceeded {
            what: "exhaustive evaluation dimension",
            limit: MAX_EXHAUSTIVE_DIM,
            requested: n,
        });
    }
    Ok(())
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl QuadraticForm {
    /// The zero form `Q = 0` on `Z_2^n`.
    pub fn trivial(n: usize) -> Self {
        assert!(n <= MAX_FORM_DIM, "form dimension {n} exceeds {MAX_FORM_DIM}");
        Self { n, linear: 0, quad: vec![0; n] }
    }

    /// Builds `Q` from linear coefficients (bit `i` is `a_i`) and the list of
    /// 0-based pairs `(i, j)`, `i < j`, whose `b_ij` equals 1.
    pub fn new(n: usize, linear: u64, pairs: &[(usize, usize)]) -> Result<Self> {
        check_dim(n)?;
        if linear & !low_mask(n) != 0 {
            return Err(Error::InvalidInput(format!("linear coefficients {linear:#b} exceed dimension {n}")));
        }
        let mut quad = vec![0u64; n];
        for &(i, j) in pairs {
            if !(i < j && j < n) {
                return Err(Error::InvalidInput(format!("quadratic coefficient ({i},{j}) must satisfy i < j < {n}")));
            }
            quad[i] ^= 1u64 << j;
        }
        Ok(Self { n, linear, quad })
    }

    /// `Q1(x, y) = xy`.
    pub fn q1() -> Self {
        Self::new(2, 0, &[(0, 1)]).expect("valid coefficients")
    }

    /// `Q2(x, y) = x^2 + xy + y^2`, stored as `x + xy + y`.
    pub fn q2() -> Self {
        Self::new(2, 0b11, &[(0, 1)]).expect("valid coefficients")
    }

    /// `Q(x) = sum_j x_{2j} x_{2j+1} + sum_i a_i x_i`: the forms whose polar
    /// form is the hyperbolic sum.
    pub fn with_hyperbolic_polar(m: usize, linear: u64) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..m).map(|j| (2 * j, 2 * j + 1)).collect();
        Self::new(2 * m, linear, &pairs)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn linear_bits(&self) -> u64 {
        self.linear
    }

    /// Strictly-upper rows of the quadratic coefficients (bit `j` of row `i`).
    pub fn quad_rows(&self) -> &[u64] {
        &self.quad
    }

    /// 0-based pairs `(i, j)` with `b_ij = 1`, in lexicographic order.
    pub fn quad_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &row) in self.quad.iter().enumerate() {
            let mut r = row;
            while r != 0 {
                out.push((i, r.trailing_zeros() as usize));
                r &= r - 1;
            }
        }
        out
    }

    /// Additive value `Q(x)` at an integer-encoded element.
    #[inline]
    pub fn value(&self, x: u64) -> u8 {
        debug_assert!(x & !low_mask(self.n) == 0);
        let mut acc = self.linear & x;
        let mut rest = x;
        let mut q = 0u64;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            q ^= self.quad[i] & x;
        }
        acc ^= q;
        parity(acc)
    }

    /// `q(x) = (-1)^Q(x)` at an integer-encoded element.
    #[inline]
    pub fn sign(&self, x: u64) -> i8 {
        1 - 2 * self.value(x) as i8
    }

    pub fn evaluate(&self, x: &Gf2Vector) -> Result<i8> {
        ensure_dim(self.n, x.len())?;
        Ok(self.sign(x.to_u64().expect("dimension is at most 64")))
    }

    /// `B(x, y) = Q(x + y) + Q(x) + Q(y)`, i.e. `U + U^T` for the
    /// coefficient matrix `U`.
    pub fn polar_form(&self) -> Gf2Matrix {
        Gf2Matrix::from_row_u64s(self.n, &self.polar_rows()).expect("rows fit the dimension")
    }

    /// Rows of the polar form as integers: bit `j` of row `i` is `B(e_i, e_j)`.
    pub fn polar_rows(&self) -> Vec<u64> {
        let mut rows: Vec<u64> = self.quad.clone();
        for (i, &r) in self.quad.iter().enumerate() {
            let mut rest = r;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                rows[j] |= 1 << i;
            }
        }
        rows
    }

    /// Polar form evaluated at integer-encoded points.
    #[inline]
    pub fn polar(&self, x: u64, y: u64) -> u8 {
        self.value(x ^ y) ^ self.value(x) ^ self.value(y)
    }

    pub fn radical(&self) -> Vec<Gf2Vector> {
        radical(&self.polar_form()).expect("polar forms are alternating")
    }

    /// `dim rad(B) = n - rank(B)`, computed on integer rows.
    pub fn radical_dim(&self) -> usize {
        self.n - rank_of_rows(&self.polar_rows())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical_dim() == 0
    }

    pub(crate) fn ensure_nondegenerate(&self) -> Result<()> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "form on Z_2^{} has odd dimension and cannot be non-degenerate",
                self.n
            )));
        }
        let rad = self.radical_dim();
        if rad != 0 {
            return Err(Error::Precondition(format!("form is degenerate (radical of dimension {rad})")));
        }
        Ok(())
    }

    pub fn symplectic_basis(&self) -> Result<SymplecticBasis> {
        symplectic_basis(&self.polar_form())
    }

    /// `Arf(Q) = sum_j Q(e_j) Q(f_j)` over the canonical symplectic basis.
    pub fn arf(&self) -> Result<u8> {
        let basis = self.symplectic_basis()?;
        Ok(basis.pairs().fold(0, |acc, (e, f)| acc ^ (self.value(e) & self.value(f))))
    }

    /// `sum_{x in Z_2^n} q(x)`, exactly.
    pub fn gauss_sum(&self) -> Result<i64> {
        check_exhaustive(self.n)?;
        let minus: i64 = (0..1u64 << self.n).map(|x| i64::from(self.value(x))).sum();
        Ok((1i64 << self.n) - 2 * minus)
    }

    /// `(q + q')(x, x') = q(x) q'(x')`; coordinates of `other` follow ours.
    pub fn direct_sum(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        let n = self.n + other.n;
        check_dim(n)?;
        let shift = self.n;
        let linear = self.linear | other.linear.checked_shl(shift as u32).unwrap_or(0);
        let mut quad = Vec::with_capacity(n);
        quad.extend_from_slice(&self.quad);
        quad.extend(other.quad.iter().map(|&r| r << shift));
        Ok(QuadraticForm { n, linear, quad })
    }

    /// The form `x -> Q(f x)`, re-expressed in coefficients.
    pub fn pullback(&self, f: &Gf2Matrix) -> Result<QuadraticForm> {
        ensure_dim(self.n, f.rows())?;
        ensure_dim(self.n, f.cols())?;
        if !f.is_invertible() {
            return Err(Error::Precondition("basis change is singular".into()));
        }
        Ok(self.compose_linear(f))
    }

    /// `x -> Q(f x)` for any `n x n` matrix `f`.
    pub(crate) fn compose_linear(&self, f: &Gf2Matrix) -> QuadraticForm {
        let n = self.n;
        let cols: Vec<u64> = (0..n).map(|j| f.column_u64(j)).collect();
        let mut linear = 0u64;
        let mut quad = vec![0u64; n];
        for i in 0..n {
            linear |= u64::from(self.value(cols[i])) << i;
            for j in i + 1..n {
                quad[i] |= u64::from(self.polar(cols[i], cols[j])) << j;
            }
        }
        QuadraticForm { n, linear, quad }
    }

    /// Fits a form to a `±1` table by interpolation and checks every entry.
    ///
    /// Returns `Ok(None)` if the table is not a quadratic form (including a
    /// `-1` at the identity). Fails on a length that is not a power of two or
    /// entries other than `±1`.
    pub fn from_table(values: &[i8]) -> Result<Option<QuadraticForm>> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidInput(format!("table length {len} is not a power of two")));
        }
        let n = len.trailing_zeros() as usize;
        check_dim(n)?;
        if let Some(bad) = values.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::InvalidInput(format!("table entry {bad} is not ±1")));
        }
        let q = |x: u64| u8::from(values[x as usize] == -1);
        if q(0) != 0 {
            return Ok(None);
        }
        let mut linear = 0u64;
        let mut quad = vec![0u64; n];
        for (i, row) in quad.iter_mut().enumerate() {
            let ei = 1u64 << i;
            linear |= u64::from(q(ei)) << i;
            for j in i + 1..n {
                let ej = 1u64 << j;
                *row |= u64::from(q(ei | ej) ^ q(ei) ^ q(ej)) << j;
            }
        }
        let form = QuadraticForm { n, linear, quad };
        Ok((0..len as u64).all(|x| form.value(x) == q(x)).then_some(form))
    }

    /// The full `±1` table in increasing encoding order.
    pub fn table(&self) -> Result<Vec<i8>> {
        check_exhaustive(self.n)?;
        Ok((0..1u64 << self.n).map(|x| self.sign(x)).collect())
    }
}

/// Checks `Q(x) = Q'(f x)` on every point when feasible, otherwise by the
/// (equivalent) coefficient comparison.
pub fn is_pullback_witness(q: &QuadraticForm, target: &QuadraticForm, f: &Gf2Matrix) -> bool {
    if q.dim() != target.dim() || f.rows() != q.dim() || f.cols() != q.dim() || !f.is_invertible() {
        return false;
    }
    if q.dim() <= 16 {
        (0..1u64 << q.dim()).all(|x| q.value(x) == target.value(f.apply_u64(x)))
    } else {
        target.compose_linear(f) == *q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_form(rng: &mut ChaCha8Rng, n: usize) -> QuadraticForm {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    pairs.push((i, j));
                }
            }
        }
        QuadraticForm::new(n, rng.gen_range(0..1u64 << n), &pairs).unwrap()
    }

    pub(crate) fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Gf2Matrix {
        loop {
            let rows: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << n)).collect();
            let f = Gf2Matrix::from_row_u64s(n, &rows).unwrap();
            if f.is_invertible() {
                return f;
            }
        }
    }

    fn v(n: usize, x: u64) -> Gf2Vector {
        Gf2Vector::from_u64(n, x).unwrap()
    }

    #[test]
    fn canonical_values() {
        let (q1, q2) = (QuadraticForm::q1(), QuadraticForm::q2());
        assert_eq!(q1.evaluate(&v(2, 0b11)).unwrap(), -1);
        assert_eq!(q2.evaluate(&v(2, 0b01)).unwrap(), -1);
        assert_eq!(q1.sign(0), 1);
        assert_eq!(q2.sign(0), 1);
        // x^2 + xy + y^2 evaluated literally over the integers.
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lit = ((x * x + x * y + y * y) % 2) as u8;
                assert_eq!(q2.value(x | y << 1), lit);
                assert_eq!(q1.value(x | y << 1), (x * y) as u8);
            }
        }
    }

    #[test]
    fn direct_sum_evaluates_factorwise() {
        let s = QuadraticForm::q1().direct_sum(&QuadraticForm::q2()).unwrap();
        // ((1,1),(1,0)): coordinates 0..4 = 1,1,1,0
        assert_eq!(s.evaluate(&v(4, 0b0111)).unwrap(), 1);
        let t = QuadraticForm::trivial(0).direct_sum(&QuadraticForm::q2()).unwrap();
        assert_eq!(t, QuadraticForm::q2());
    }

    #[test]
    fn evaluate_checks_dimension() {
        assert!(QuadraticForm::q1().evaluate(&v(3, 0)).is_err());
    }

    #[test]
    fn polar_of_q1() {
        let b = QuadraticForm::q1().polar_form();
        // B((x,y),(a,b)) = xb + ya
        for p in 0..4u64 {
            for r in 0..4u64 {
                let (x, y, a, bb) = (p & 1, p >> 1, r & 1, r >> 1);
                assert_eq!(u64::from(b.bilinear_u64(p, r)), (x * bb + y * a) % 2);
            }
        }
        assert!(QuadraticForm::trivial(3).polar_form().is_zero());
    }

    #[test]
    fn nondegeneracy() {
        assert!(QuadraticForm::q1().is_nondegenerate());
        assert!(!QuadraticForm::new(2, 0b01, &[]).unwrap().is_nondegenerate());
        let s = QuadraticForm::q1().direct_sum(&QuadraticForm::trivial(1)).unwrap();
        let rad = s.radical();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].to_u64(), Some(0b100));
    }

    #[test]
    fn arf_values() {
        let (q1, q2) = (QuadraticForm::q1(), QuadraticForm::q2());
        assert_eq!(q1.arf().unwrap(), 0);
        assert_eq!(q2.arf().unwrap(), 1);
        assert_eq!(q2.direct_sum(&q2).unwrap().arf().unwrap(), 0);
        assert_eq!(q1.direct_sum(&q1).unwrap().arf().unwrap(), 0);
        assert!(QuadraticForm::new(2, 1, &[]).unwrap().arf().is_err());
        assert!(QuadraticForm::trivial(3).arf().is_err());
    }

    #[test]
    fn arf_invariant_under_random_basis_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let q = QuadraticForm::q1().direct_sum(&QuadraticForm::q2()).unwrap();
        for _ in 0..100 {
            let f = random_invertible(&mut rng, 4);
            assert_eq!(q.pullback(&f).unwrap().arf().unwrap(), 1);
        }
    }

    #[test]
    fn radical_dim_matches_null_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in 0..=12 {
            for _ in 0..50 {
                let q = random_form(&mut rng, n);
                assert_eq!(q.radical_dim(), q.radical().len());
            }
        }
    }

    #[test]
    fn gauss_sums() {
        assert_eq!(QuadraticForm::q1().gauss_sum().unwrap(), 2);
        assert_eq!(QuadraticForm::q2().gauss_sum().unwrap(), -2);
        assert_eq!(QuadraticForm::trivial(0).gauss_sum().unwrap(), 1);
    }

    #[test]
    fn pullback_examples() {
        let q1 = QuadraticForm::q1();
        assert_eq!(q1.pullback(&Gf2Matrix::identity(2)).unwrap(), q1);
        let swap = Gf2Matrix::from_row_u64s(2, &[0b10, 0b01]).unwrap();
        assert_eq!(q1.pullback(&swap).unwrap(), q1);
        let singular = Gf2Matrix::from_row_u64s(2, &[0b11, 0b11]).unwrap();
        assert!(matches!(q1.pullback(&singular), Err(Error::Precondition(_))));
    }

    #[test]
    fn pullback_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=6 {
            for _ in 0..20 {
                let q = random_form(&mut rng, n);
                let (f, g) = (random_invertible(&mut rng, n), random_invertible(&mut rng, n));
                let lhs = q.pullback(&g).unwrap().pullback(&f).unwrap();
                let rhs = q.pullback(&g.mul(&f).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let p = q.pullback(&f).unwrap();
                assert!((0..1u64 << n).all(|x| p.value(x) == q.value(f.apply_u64(x))));
            }
        }
    }

    #[test]
    fn table_interpolation() {
        let q1 = QuadraticForm::q1();
        assert_eq!(QuadraticForm::from_table(&q1.table().unwrap()).unwrap(), Some(q1));
        let mut cubic = vec![1i8; 8];
        cubic[0b111] = -1;
        assert_eq!(QuadraticForm::from_table(&cubic).unwrap(), None);
        assert_eq!(QuadraticForm::from_table(&[-1, 1]).unwrap(), None);
        assert!(QuadraticForm::from_table(&[1, 1, 1]).is_err());
        assert!(QuadraticForm::from_table(&[1, 0]).is_err());
    }

    #[test]
    fn quadratic_axiom_literal_reductions() {
        // Over Z_2^n the axiom q(x^a) = q(x)^(a^2) only says q(0) = 1
        // (a even) and q(x) = q(x) (a odd).
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 0..=6 {
            let q = random_form(&mut rng, n);
            assert_eq!(q.sign(0), 1);
            for x in 0..1u64 << n {
                for a in 0i64..4 {
                    let xa = if a % 2 == 0 { 0 } else { x };
                    let rhs = if (a * a) % 2 == 0 { 1 } else { q.sign(x) };
                    assert_eq!(q.sign(xa), rhs);
                }
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_coefficients() {
        assert!(QuadraticForm::new(2, 0b100, &[]).is_err());
        assert!(QuadraticForm::new(3, 0, &[(1, 1)]).is_err());
        assert!(QuadraticForm::new(3, 0, &[(2, 1)]).is_err());
        assert!(QuadraticForm::new(65, 0, &[]).is_err());
    }
}
