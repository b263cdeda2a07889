//! Alternating forms: radicals, symplectic bases, and the brute-force
//! enumeration of `GL(n, 2)` used as a test oracle.

use super::matrix::{rank_of_rows, Gf2Matrix};
use super::solve::null_space;
use super::vector::{parity, Gf2Vector};
use crate::error::{Error, Result};

/// Largest `n` for which [`enumerate_invertible`] is allowed.
pub const MAX_GL_ENUMERATION: usize = 4;

fn ensure_alternating(b: &Gf2Matrix) -> Result<()> {
    if b.is_alternating() {
        Ok(())
    } else {
        Err(Error::InvalidInput("bilinear form is not alternating (needs B = B^T and zero diagonal)".into()))
    }
}

/// Basis of the radical `{x : B x = 0}` of an alternating form. Empty iff
/// the form is non-degenerate.
pub fn radical(b: &Gf2Matrix) -> Result<Vec<Gf2Vector>> {
    ensure_alternating(b)?;
    Ok(null_space(b))
}

/// An ordered basis `(e_1..e_m, f_1..f_m)` with `B(e_j, f_k) = delta_jk` and
/// `B(e_j, e_k) = B(f_j, f_k) = 0`. Vectors are integer encoded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub e: Vec<u64>,
    pub f: Vec<u64>,
}

impl SymplecticBasis {
    pub fn half_dim(&self) -> usize {
        self.e.len()
    }

    /// Hyperbolic pairs `(e_j, f_j)` in order.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.e.iter().copied().zip(self.f.iter().copied())
    }

    /// Change of basis with columns `e_1, f_1, e_2, f_2, ...`: it carries the
    /// block-diagonal hyperbolic form onto `B`.
    pub fn interleaved_matrix(&self) -> Gf2Matrix {
        let n = 2 * self.half_dim();
        let cols: Vec<u64> = self.pairs().flat_map(|(e, f)| [e, f]).collect();
        Gf2Matrix::from_columns_u64(n, &cols).expect("basis vectors fit in n coordinates")
    }

    /// Gram matrix of `b` in the order `e_1..e_m, f_1..f_m`.
    pub fn gram(&self, b: &Gf2Matrix) -> Gf2Matrix {
        let basis: Vec<u64> = self.e.iter().chain(&self.f).copied().collect();
        let n = basis.len();
        let mut g = Gf2Matrix::zeros(n, n);
        for (i, &x) in basis.iter().enumerate() {
            for (j, &y) in basis.iter().enumerate() {
                if b.bilinear_u64(x, y) == 1 {
                    g.set(i, j, true);
                }
            }
        }
        g
    }
}

/// `[[0, I], [I, 0]]`, the Gram matrix of a symplectic basis.
pub fn standard_symplectic(m: usize) -> Gf2Matrix {
    let mut b = Gf2Matrix::zeros(2 * m, 2 * m);
    for j in 0..m {
        b.set(j, m + j, true);
        b.set(m + j, j, true);
    }
    b
}

/// Orthogonal sum of `m` hyperbolic planes `[[0,1],[1,0]]` on consecutive
/// coordinate pairs: the polar form of `q1^m` in block layout.
pub fn hyperbolic_sum(m: usize) -> Gf2Matrix {
    let mut b = Gf2Matrix::zeros(2 * m, 2 * m);
    for j in 0..m {
        b.set(2 * j, 2 * j + 1, true);
        b.set(2 * j + 1, 2 * j, true);
    }
    b
}

/// Subspace of `GF(2)^n` kept in fully reduced echelon form keyed by the
/// highest set bit, which makes "smallest element" queries exact. Stored
/// inline since `n <= 64`.
#[derive(Clone, Copy)]
struct Subspace {
    basis: [u64; 64],
    len: usize,
}

impl Subspace {
    fn full(n: usize) -> Self {
        let mut basis = [0u64; 64];
        for (i, v) in basis[..n].iter_mut().enumerate() {
            *v = 1u64 << i;
        }
        Self { basis, len: n }
    }

    fn vectors(&self) -> &[u64] {
        &self.basis[..self.len]
    }

    fn lead(v: u64) -> u32 {
        63 - v.leading_zeros()
    }

    fn normalize(&mut self) {
        let input = *self;
        self.len = 0;
        for &v in input.vectors() {
            let mut v = v;
            for &w in self.vectors() {
                if v >> Self::lead(w) & 1 == 1 {
                    v ^= w;
                }
            }
            if v == 0 {
                continue;
            }
            let lead = Self::lead(v);
            for w in &mut self.basis[..self.len] {
                if *w >> lead & 1 == 1 {
                    *w ^= v;
                }
            }
            // Keep the basis sorted by decreasing lead so that a single pass
            // reduces incoming vectors completely.
            let at = self.vectors().iter().position(|&w| Self::lead(w) < lead).unwrap_or(self.len);
            self.basis.copy_within(at..self.len, at + 1);
            self.basis[at] = v;
            self.len += 1;
        }
    }

    /// Smallest element of the coset `v + W`.
    fn reduce(&self, mut v: u64) -> u64 {
        for &w in self.vectors() {
            if v >> Self::lead(w) & 1 == 1 {
                v ^= w;
            }
        }
        v
    }

    fn smallest_nonzero(&self) -> Option<u64> {
        self.vectors().iter().copied().min()
    }

    /// Restricts to the kernel of the linear functional `phi`.
    fn intersect_kernel(&mut self, phi: impl Fn(u64) -> bool) {
        let mut pivot = None;
        let mut kept = 0;
        for k in 0..self.len {
            let w = self.basis[k];
            let w = if !phi(w) {
                w
            } else if let Some(p) = pivot {
                w ^ p
            } else {
                pivot = Some(w);
                continue;
            };
            self.basis[kept] = w;
            kept += 1;
        }
        self.len = kept;
        self.normalize();
    }
}

/// Symplectic basis of a non-degenerate alternating form.
///
/// Deterministic: `e_j` is the smallest (by integer encoding) nonzero vector
/// of the complement `W` of the pairs chosen so far, and `f_j` is the
/// smallest vector of `W` with `B(e_j, f_j) = 1`.
pub fn symplectic_basis(b: &Gf2Matrix) -> Result<SymplecticBasis> {
    ensure_alternating(b)?;
    let n = b.rows();
    if n > 64 {
        return Err(Error::CapExceeded { what: "symplectic basis dimension", limit: 64, requested: n });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("alternating form of odd dimension {n} is degenerate")));
    }
    let rows = b.row_u64s();
    let rank = rank_of_rows(&rows);
    if rank != n {
        return Err(Error::Precondition(format!("alternating form is degenerate (radical of dimension {})", n - rank)));
    }

    // B is symmetric, so B x is the sum of the rows selected by x.
    let image = |x: u64| (0..n).filter(|&i| (x >> i) & 1 == 1).fold(0u64, |acc, i| acc ^ rows[i]);
    let mut w = Subspace::full(n);
    w.normalize();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while let Some(e) = w.smallest_nonzero() {
        let be = image(e);
        let phi = |x: u64| parity(be & x) == 1;
        let mut kernel = w;
        let v = *w
            .vectors()
            .iter()
            .find(|&&x| phi(x))
            .ok_or_else(|| Error::Internal("complement lost non-degeneracy".into()))?;
        kernel.intersect_kernel(phi);
        let f = kernel.reduce(v);
        let bf = image(f);
        w.intersect_kernel(phi);
        w.intersect_kernel(|x| parity(bf & x) == 1);
        es.push(e);
        fs.push(f);
    }
    let basis = SymplecticBasis { e: es, f: fs };
    Ok(basis)
}

/// Every invertible `n x n` matrix over GF(2), `n <= 4`, in increasing order
/// of the encoding `sum_{i,j} a_ij 2^(n i + j)`.
pub fn enumerate_invertible(n: usize) -> Result<impl Iterator<Item = Gf2Matrix>> {
    if n > MAX_GL_ENUMERATION {
        return Err(Error::CapExceeded { what: "GL(n,2) enumeration", limit: MAX_GL_ENUMERATION, requested: n });
    }
    let mask = (1u64 << n) - 1;
    Ok((0..1u64 << (n * n)).filter_map(move |enc| {
        let rows: Vec<u64> = (0..n).map(|i| (enc >> (n * i)) & mask).collect();
        let m = Gf2Matrix::from_row_u64s(n, &rows).expect("rows fit");
        m.is_invertible().then_some(m)
    }))
}

/// `|GL(n, 2)| = prod_{i<n} (2^n - 2^i)`.
pub fn gl_order(n: usize) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Literal scan in increasing encoding, independent of `Subspace`.
    fn brute_symplectic_basis(b: &Gf2Matrix) -> SymplecticBasis {
        let n = b.rows();
        let (mut es, mut fs): (Vec<u64>, Vec<u64>) = (Vec::new(), Vec::new());
        let in_w = |x: u64, es: &[u64], fs: &[u64]| es.iter().chain(fs).all(|&v| b.bilinear_u64(x, v) == 0);
        while 2 * es.len() < n {
            let e = (1..1u64 << n).find(|&x| in_w(x, &es, &fs)).unwrap();
            let f = (1..1u64 << n).find(|&x| in_w(x, &es, &fs) && b.bilinear_u64(e, x) == 1).unwrap();
            es.push(e);
            fs.push(f);
        }
        SymplecticBasis { e: es, f: fs }
    }

    fn random_nondegenerate(rng: &mut ChaCha8Rng, m: usize) -> Gf2Matrix {
        let n = 2 * m;
        loop {
            let rows: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << n)).collect();
            let p = Gf2Matrix::from_row_u64s(n, &rows).unwrap();
            if p.is_invertible() {
                return standard_symplectic(m).congruence(&p).unwrap();
            }
        }
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&Gf2Matrix::zeros(2, 2)).unwrap().len(), 2);
        assert!(radical(&standard_symplectic(1)).unwrap().is_empty());
        let mut b = Gf2Matrix::zeros(3, 3);
        b.set(0, 1, true);
        b.set(1, 0, true);
        let rad = radical(&b).unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0].to_u64(), Some(0b100));
        assert!(radical(&Gf2Matrix::identity(2)).is_err());
    }

    #[test]
    fn standard_plane() {
        let basis = symplectic_basis(&standard_symplectic(1)).unwrap();
        assert_eq!(basis.e, vec![0b01]);
        assert_eq!(basis.f, vec![0b10]);
    }

    #[test]
    fn rejects_degenerate_or_odd() {
        assert!(matches!(symplectic_basis(&Gf2Matrix::zeros(2, 2)), Err(Error::Precondition(_))));
        assert!(matches!(symplectic_basis(&Gf2Matrix::zeros(3, 3)), Err(Error::Precondition(_))));
    }

    #[test]
    fn matches_brute_force_scan_and_gram_is_standard() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for m in 1..=4 {
            for _ in 0..40 {
                let b = random_nondegenerate(&mut rng, m);
                let basis = symplectic_basis(&b).unwrap();
                assert_eq!(basis, brute_symplectic_basis(&b));
                assert_eq!(basis.gram(&b), standard_symplectic(m));
                assert!(basis.interleaved_matrix().is_invertible());
            }
        }
    }

    #[test]
    fn gl_counts() {
        assert_eq!(enumerate_invertible(1).unwrap().count(), 1);
        assert_eq!(enumerate_invertible(2).unwrap().count(), 6);
        assert_eq!(enumerate_invertible(3).unwrap().count(), 168);
        assert_eq!(gl_order(3), 168);
        assert_eq!(gl_order(4), 20160);
        assert!(enumerate_invertible(5).is_err());
    }

    #[test]
    fn gl_enumeration_is_distinct_and_ordered() {
        let all: Vec<Gf2Matrix> = enumerate_invertible(3).unwrap().collect();
        let enc = |m: &Gf2Matrix| m.row_u64s().iter().enumerate().fold(0u64, |acc, (i, r)| acc | r << (3 * i));
        assert!(all.windows(2).all(|w| enc(&w[0]) < enc(&w[1])));
        assert!(all.iter().all(Gf2Matrix::is_invertible));
    }
}
