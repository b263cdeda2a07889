//! Pointed modular categories `C(Z_2^{2m}, q)`.
//!
//! Labels are the elements of `Z_2^{2m}` in increasing encoding. All
//! categorical dimensions are `+1`, every label is self-inverse, the
//! S-matrix has entries `S_xy = (-1)^{B(x,y)}` (unnormalized; divide by `2^m`
//! for the unitary matrix) and the twists are `T_x = q(x)`.

use std::fmt;

use crate::cocycle::{self, coboundary_witness, cocycle_from_form, delta2, Cochain2, EmPair};
use crate::error::{Error, Result};
use crate::gf2::{parity, Gf2Matrix};
use crate::quadratic::{canonical_decomposition, equivalence_witness, Block, QuadraticForm};

/// Largest label-space dimension `2m` for which S is materialized.
pub const MAX_CATEGORY_DIM: usize = 12;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointedModularCategory {
    form: QuadraticForm,
    s: Vec<i8>,
    t: Vec<i8>,
    tau_plus: i64,
    xi: i8,
    arf: u8,
}

impl PointedModularCategory {
    /// Builds the modular data of `C(Z_2^n, q)`. The zero-dimensional form
    /// gives the trivial category `Vec`.
    pub fn build(q: &QuadraticForm) -> Result<Self> {
        let n = q.dim();
        if n > MAX_CATEGORY_DIM {
            return Err(Error::CapExceeded {
                what: "modular category label dimension",
                limit: MAX_CATEGORY_DIM,
                requested: n,
            });
        }
        let radical_dim = q.radical_dim();
        if radical_dim != 0 {
            return Err(Error::NotModular { radical_dim });
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("odd label dimension {n}")));
        }
        let size = 1usize << n;
        let polar = q.polar_rows();
        let mut s = vec![0i8; size * size];
        let mut t = vec![0i8; size];
        s[..size].fill(1);
        t[0] = 1;
        for (j, &be) in polar.iter().enumerate() {
            // Rows 2^j..2^{j+1} are rows 0..2^j times the character of e_j,
            // since S(x + e_j, y) = S(x, y) S(e_j, y). Likewise
            // T(x + e_j) = T(x) T(e_j) S(e_j, x).
            let chi: Vec<i8> = (0..size as u64).map(|y| 1 - 2 * (parity(be & y) as i8)).collect();
            let (low, high) = s.split_at_mut(size << j);
            high[..size << j].copy_from_slice(low);
            for row in high[..size << j].chunks_exact_mut(size) {
                for (v, &c) in row.iter_mut().zip(&chi) {
                    *v *= c;
                }
            }
            let tj = q.sign(1 << j);
            let (low, high) = t.split_at_mut(1 << j);
            for ((h, &l), &c) in high[..1 << j].iter_mut().zip(low.iter()).zip(&chi) {
                *h = l * tj * c;
            }
        }
        let tau_plus: i64 = t.iter().map(|&v| i64::from(v)).sum();
        let half = 1i64 << (n / 2);
        if tau_plus.abs() != half {
            return Err(Error::Internal(format!("Gauss sum {tau_plus} of a non-degenerate form is not ±{half}")));
        }
        let xi = (tau_plus / half) as i8;
        let arf = if n == 0 { 0 } else { q.arf()? };
        Ok(Self { form: q.clone(), s, t, tau_plus, xi, arf })
    }

    pub fn trivial() -> Self {
        Self::build(&QuadraticForm::trivial(0)).expect("Vec is modular")
    }

    pub fn is_trivial(&self) -> bool {
        self.form.dim() == 0
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    /// Label-space dimension `n = 2m`.
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn half_dim(&self) -> usize {
        self.form.dim() / 2
    }

    /// Number of simple objects, `2^{2m}`.
    pub fn rank(&self) -> usize {
        1 << self.form.dim()
    }

    pub fn s(&self, x: usize, y: usize) -> i8 {
        self.s[x * self.rank() + y]
    }

    /// S in row-major order.
    pub fn s_entries(&self) -> &[i8] {
        &self.s
    }

    pub fn s_rows(&self) -> impl Iterator<Item = &[i8]> {
        self.s.chunks(self.rank())
    }

    pub fn t(&self) -> &[i8] {
        &self.t
    }

    /// Every categorical dimension is `+1`.
    pub fn dims(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    /// Fusion `x (x) y = x + y`; every label is its own dual.
    pub fn fuse(&self, x: u64, y: u64) -> u64 {
        x ^ y
    }

    pub fn dual(&self, x: u64) -> u64 {
        x
    }

    /// `dim(C) = sum_x dim(x)^2 = 2^{2m}`.
    pub fn global_dimension(&self) -> i64 {
        self.rank() as i64
    }

    pub fn tau_plus(&self) -> i64 {
        self.tau_plus
    }

    /// `xi = tau_plus / sqrt(dim C)`, here `±1`.
    pub fn central_charge(&self) -> i8 {
        self.xi
    }

    pub fn arf(&self) -> u8 {
        self.arf
    }

    /// The Frobenius-Schur exponent: 2 for every non-trivial category built
    /// here, 1 for `Vec`. This is the classification consequence, not an
    /// independent computation through the Drinfeld center.
    pub fn fsexp(&self) -> u32 {
        if self.is_trivial() {
            1
        } else {
            2
        }
    }
}

pub fn build_category(q: &QuadraticForm) -> Result<PointedModularCategory> {
    PointedModularCategory::build(q)
}

pub fn gauss_sum_tau(c: &PointedModularCategory) -> i64 {
    c.tau_plus()
}

pub fn central_charge(c: &PointedModularCategory) -> i8 {
    c.central_charge()
}

pub fn fsexp_check(c: &PointedModularCategory) -> u32 {
    c.fsexp()
}

/// `C(G, q) ⊠ C(G', q') = C(G + G', q + q')`. Labels of the product are
/// `x + 2^n x'`.
pub fn deligne_product(a: &PointedModularCategory, b: &PointedModularCategory) -> Result<PointedModularCategory> {
    build_category(&a.form.direct_sum(&b.form)?)
}

/// A Deligne product of prime factors `C(Z_2^2, q1)` and `C(Z_2^2, q2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Descriptor {
    pub factors: Vec<Block>,
}

impl Descriptor {
    pub fn form(&self) -> QuadraticForm {
        self.factors
            .iter()
            .try_fold(QuadraticForm::trivial(0), |acc, b| acc.direct_sum(&b.form()))
            .expect("descriptor stays within the form cap")
    }

    pub fn build(&self) -> Result<PointedModularCategory> {
        build_category(&self.form())
    }

    pub fn labels(&self) -> Vec<&'static str> {
        self.factors.iter().map(|b| b.label()).collect()
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Vec");
        }
        let parts: Vec<String> = self.factors.iter().map(|b| format!("C(Z_2^2, {b})")).collect();
        f.write_str(&parts.join(" ⊠ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDecomposition {
    pub descriptor: Descriptor,
    /// `g` with `q = pullback(descriptor.form(), g)`.
    pub witness: Gf2Matrix,
}

pub fn prime_decomposition(c: &PointedModularCategory) -> Result<PrimeDecomposition> {
    if c.is_trivial() {
        return Ok(PrimeDecomposition { descriptor: Descriptor { factors: vec![] }, witness: Gf2Matrix::identity(0) });
    }
    let d = canonical_decomposition(c.form())?;
    Ok(PrimeDecomposition { descriptor: Descriptor { factors: d.blocks }, witness: d.witness })
}

/// The unique category with positive Gauss sum `tau`: `q1^m` for `tau > 0`,
/// `q1^{m-1} q2` for `tau < 0`, where `|tau| = 2^m`. `tau = 1` is `Vec`.
pub fn classify_from_gauss_sum(tau: i64) -> Result<Descriptor> {
    let abs = tau.unsigned_abs();
    if !abs.is_power_of_two() || tau == -1 {
        return Err(Error::InvalidInput(format!(
            "no modular category of Frobenius-Schur exponent 2 has Gauss sum {tau}"
        )));
    }
    let m = abs.trailing_zeros() as usize;
    let mut factors = vec![Block::Q1; m];
    if tau < 0 {
        factors[m - 1] = Block::Q2;
    }
    Ok(Descriptor { factors })
}

/// The braidings `c1((x,y),(a,b)) = (-1)^{xb}` of `C(Z_2^2, q1)` and
/// `c2((x,y),(a,b)) = (-1)^{xa + yb + ay}` of `C(Z_2^2, q2)`.
pub fn standard_braidings() -> (Cochain2, Cochain2) {
    let split = |p: u64| (p & 1, p >> 1);
    let c1 = Cochain2::from_fn(2, |p, r| {
        let ((x, _), (_, b)) = (split(p), split(r));
        x & b == 1
    })
    .expect("n = 2");
    let c2 = Cochain2::from_fn(2, |p, r| {
        let ((x, y), (a, b)) = (split(p), split(r));
        (x & a) ^ (y & b) ^ (a & y) == 1
    })
    .expect("n = 2");
    (c1, c2)
}

/// A braided monoidal equivalence `C(q) -> C(q')` between the standard
/// representatives: a group isomorphism `f` and the monoidal structure `mu`
/// with `f^* w' = w d(mu)` and `f^* c'(x,y) = c(x,y) mu(x,y) / mu(y,x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceData {
    pub f: Gf2Matrix,
    pub mu: Cochain2,
}

impl EquivalenceData {
    pub fn verify(&self, q: &QuadraticForm, other: &QuadraticForm) -> Result<bool> {
        if q.dim() != other.dim() || !self.f.is_invertible() || self.f.rows() != q.dim() {
            return Ok(false);
        }
        let pair = cocycle_from_form(q)?;
        let pulled = cocycle_from_form(other)?.pullback(&self.f)?;
        verify_diagrams(&pair, &pulled, &self.mu)
    }
}

fn verify_diagrams(pair: &EmPair, pulled: &EmPair, mu: &Cochain2) -> Result<bool> {
    let associator = pair.omega().product(&delta2(mu))? == *pulled.omega();
    let braiding = pair.braiding().product(&mu.antisymmetrization())? == *pulled.braiding();
    Ok(associator && braiding)
}

/// Equivalence data between `C(q)` and `C(q')`, or `None` when dimension or
/// Arf invariant differ.
pub fn verify_equivalence(q: &QuadraticForm, other: &QuadraticForm) -> Result<Option<EquivalenceData>> {
    let Some(f) = equivalence_witness(q, other)? else {
        return Ok(None);
    };
    let pair = cocycle_from_form(q)?;
    let pulled = cocycle_from_form(other)?.pullback(&f)?;
    let mu = coboundary_witness(&pair, &pulled)?
        .ok_or_else(|| Error::Internal("equivalent forms gave cohomologous-free cocycles".into()))?;
    if !verify_diagrams(&pair, &pulled, &mu)? {
        return Err(Error::Internal("equivalence data failed verification".into()));
    }
    Ok(Some(EquivalenceData { f, mu }))
}

/// Re-exported for callers that only need the trace check.
pub use cocycle::trace;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{check_hexagons, Cochain3};

    fn q(blocks: &[Block]) -> QuadraticForm {
        Descriptor { factors: blocks.to_vec() }.form()
    }

    #[test]
    fn q1_s_matrix() {
        let c = build_category(&QuadraticForm::q1()).unwrap();
        let s: Vec<Vec<i8>> = c.s_rows().map(<[i8]>::to_vec).collect();
        assert_eq!(s, vec![vec![1, 1, 1, 1], vec![1, 1, -1, -1], vec![1, -1, 1, -1], vec![1, -1, -1, 1]]);
    }

    #[test]
    fn q2_twists() {
        let c = build_category(&QuadraticForm::q2()).unwrap();
        assert_eq!(c.t(), &[1, -1, -1, -1]);
    }

    #[test]
    fn degenerate_and_odd_inputs() {
        let deg = QuadraticForm::new(2, 1, &[]).unwrap();
        assert!(matches!(build_category(&deg), Err(Error::NotModular { radical_dim: 2 })));
        let odd = QuadraticForm::q1().direct_sum(&QuadraticForm::trivial(1)).unwrap();
        assert!(matches!(build_category(&odd), Err(Error::NotModular { .. })));
    }

    #[test]
    fn gauss_sums_and_charges() {
        let c1 = build_category(&QuadraticForm::q1()).unwrap();
        let c2 = build_category(&QuadraticForm::q2()).unwrap();
        assert_eq!((gauss_sum_tau(&c1), central_charge(&c1)), (2, 1));
        assert_eq!((gauss_sum_tau(&c2), central_charge(&c2)), (-2, -1));
        let c12 = deligne_product(&c1, &c2).unwrap();
        assert_eq!(gauss_sum_tau(&c12), -4);
        let c22 = deligne_product(&c2, &c2).unwrap();
        assert_eq!(gauss_sum_tau(&c22), 4);
    }

    #[test]
    fn deligne_unit_and_kronecker() {
        let c1 = build_category(&QuadraticForm::q1()).unwrap();
        let unit = PointedModularCategory::trivial();
        assert_eq!(deligne_product(&c1, &unit).unwrap(), c1);
        assert_eq!(deligne_product(&unit, &c1).unwrap(), c1);
        let p = deligne_product(&c1, &c1).unwrap();
        for x in 0..16usize {
            for y in 0..16usize {
                let expected = c1.s(x & 3, y & 3) * c1.s(x >> 2, y >> 2);
                assert_eq!(p.s(x, y), expected);
            }
            assert_eq!(p.t()[x], c1.t()[x & 3] * c1.t()[x >> 2]);
        }
    }

    #[test]
    fn decompositions() {
        let c22 = build_category(&q(&[Block::Q2, Block::Q2])).unwrap();
        assert_eq!(prime_decomposition(&c22).unwrap().descriptor.factors, vec![Block::Q1; 2]);
        let c2 = build_category(&QuadraticForm::q2()).unwrap();
        assert_eq!(prime_decomposition(&c2).unwrap().descriptor.factors, vec![Block::Q2]);
        let unit = PointedModularCategory::trivial();
        assert!(prime_decomposition(&unit).unwrap().descriptor.factors.is_empty());
    }

    #[test]
    fn gauss_sum_classification() {
        assert_eq!(classify_from_gauss_sum(2).unwrap().factors, vec![Block::Q1]);
        assert_eq!(classify_from_gauss_sum(-2).unwrap().factors, vec![Block::Q2]);
        assert_eq!(classify_from_gauss_sum(-8).unwrap().factors, vec![Block::Q1, Block::Q1, Block::Q2]);
        assert!(classify_from_gauss_sum(1).unwrap().factors.is_empty());
        for bad in [0, 3, -1, 6, -12] {
            assert!(classify_from_gauss_sum(bad).is_err(), "{bad}");
        }
        for tau in [2i64, -2, 4, -4, 8, -8, 16, -64] {
            let built = classify_from_gauss_sum(tau).unwrap().build().unwrap();
            assert_eq!(gauss_sum_tau(&built), tau);
        }
    }

    #[test]
    fn standard_braidings_are_valid() {
        let (c1, c2) = standard_braidings();
        let one = Cochain3::trivial(2).unwrap();
        assert!(check_hexagons(&one, &c1).unwrap());
        assert!(check_hexagons(&one, &c2).unwrap());
        let p1 = EmPair::new(one.clone(), c1).unwrap();
        let p2 = EmPair::new(one, c2).unwrap();
        assert_eq!(trace(&p1).unwrap(), QuadraticForm::q1());
        assert_eq!(trace(&p2).unwrap(), QuadraticForm::q2());
    }

    #[test]
    fn equivalences() {
        let q11 = q(&[Block::Q1, Block::Q1]);
        let q22 = q(&[Block::Q2, Block::Q2]);
        let data = verify_equivalence(&q11, &q22).unwrap().unwrap();
        assert!(data.verify(&q11, &q22).unwrap());
        assert!(!data.mu.is_trivial());
        assert_eq!(verify_equivalence(&QuadraticForm::q1(), &QuadraticForm::q2()).unwrap(), None);
        let selfmap = verify_equivalence(&q22, &q22).unwrap().unwrap();
        assert!(selfmap.verify(&q22, &q22).unwrap());
        assert!(!data.verify(&q11, &q11).unwrap() || data.f == Gf2Matrix::identity(4));
    }

    #[test]
    fn fsexp_values() {
        assert_eq!(fsexp_check(&build_category(&QuadraticForm::q1()).unwrap()), 2);
        assert_eq!(fsexp_check(&PointedModularCategory::trivial()), 1);
        assert_eq!(fsexp_check(&build_category(&q(&[Block::Q1, Block::Q2])).unwrap()), 2);
    }

    #[test]
    fn unit_row_and_self_duality() {
        let c = build_category(&q(&[Block::Q1, Block::Q2])).unwrap();
        assert!(c.s_rows().next().unwrap().iter().all(|&v| v == 1));
        assert_eq!(c.t()[0], 1);
        assert!((0..16u64).all(|x| c.fuse(x, c.dual(x)) == 0));
        assert!(c.dims().iter().all(|&d| d == 1));
        assert_eq!(c.global_dimension(), c.tau_plus() * c.tau_plus());
    }
}
