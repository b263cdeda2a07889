//! Normal forms and equivalence of non-degenerate quadratic forms.
//!
//! Every non-degenerate `Q` on `Z_2^{2m}` is reduced to `q1^m` (Arf 0) or
//! `q1^{m-1} + q2` (Arf 1) by an explicit change of basis:
//!
//! 1. a symplectic basis of the polar form splits `Q` into hyperbolic pairs
//!    `R(x, y) = a x + b y + xy` with `(a, b) = (Q(e), Q(f))`;
//! 2. pairs with `(a, b) != (1, 1)` are turned into `q1` by the local maps
//!    `(0,0): id`, `(1,0): (x, y) = (u, u + v)`, `(0,1): (x, y) = (u + v, v)`;
//!    `(1,1)` is already `q2`;
//! 3. blocks are sorted `q1` first, and consecutive `q2 + q2` are replaced
//!    by `q1 + q1` with [`Q2Q2_TO_Q1Q1`].

use std::fmt;

use super::{is_pullback_witness, QuadraticForm};
use crate::error::{Error, Result};
use crate::gf2::{enumerate_invertible, Gf2Matrix};

/// Largest `2m` for [`enumerate_classes`] in count-only mode.
pub const MAX_CENSUS_DIM: usize = 12;
/// Largest `2m` for which [`enumerate_classes`] also computes orbits.
pub const MAX_ORBIT_DIM: usize = 4;

/// Rows of `K` with `(Q2 + Q2)(K u) = (Q1 + Q1)(u)`: the first such matrix
/// of `GL(4, 2)` in enumeration order.
pub const Q2Q2_TO_Q1Q1: [u64; 4] = [0b1011, 0b0111, 0b1101, 0b0011];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Q1,
    Q2,
}

impl Block {
    pub fn form(self) -> QuadraticForm {
        match self {
            Block::Q1 => QuadraticForm::q1(),
            Block::Q2 => QuadraticForm::q2(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Block::Q1 => "q1",
            Block::Q2 => "q2",
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Equivalence class of a non-degenerate form: half-dimension and Arf
/// invariant determine it completely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormClass {
    pub m: usize,
    pub arf: u8,
}

impl FormClass {
    pub fn blocks(self) -> Vec<Block> {
        let mut blocks = vec![Block::Q1; self.m];
        if self.arf == 1 {
            if let Some(last) = blocks.last_mut() {
                *last = Block::Q2;
            }
        }
        blocks
    }
}

/// `q1^m` or `q1^{m-1} + q2` in block layout.
pub fn canonical_form(class: FormClass) -> Result<QuadraticForm> {
    if class.m == 0 && class.arf == 1 {
        return Err(Error::InvalidInput("the zero-dimensional form has Arf invariant 0".into()));
    }
    class.blocks().into_iter().try_fold(QuadraticForm::trivial(0), |acc, b| acc.direct_sum(&b.form()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    pub class: FormClass,
    pub blocks: Vec<Block>,
    /// `g` with `q = pullback(canonical, g)`, i.e. `Q(x) = Can(g x)`.
    pub witness: Gf2Matrix,
}

impl CanonicalDecomposition {
    pub fn canonical(&self) -> QuadraticForm {
        canonical_form(self.class).expect("class comes from a decomposition")
    }
}

fn local_normalization(a: u8, b: u8) -> (Block, [u64; 2]) {
    match (a, b) {
        (0, 0) => (Block::Q1, [0b01, 0b10]),
        (1, 0) => (Block::Q1, [0b01, 0b11]),
        (0, 1) => (Block::Q1, [0b11, 0b10]),
        _ => (Block::Q2, [0b01, 0b10]),
    }
}

fn block_diagonal(n: usize, blocks: &[(usize, &[u64])]) -> Gf2Matrix {
    let mut m = Gf2Matrix::identity(n);
    for &(offset, rows) in blocks {
        let k = rows.len();
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..k {
                m.set(offset + i, offset + j, (r >> j) & 1 == 1);
            }
        }
    }
    m
}

pub fn canonical_decomposition(q: &QuadraticForm) -> Result<CanonicalDecomposition> {
    q.ensure_nondegenerate()?;
    let n = q.dim();
    let m = n / 2;
    if m == 0 {
        return Err(Error::Precondition("canonical decomposition needs m >= 1".into()));
    }
    let basis = q.symplectic_basis()?;
    let p = basis.interleaved_matrix();

    let locals: Vec<(Block, [u64; 2])> =
        basis.pairs().map(|(e, f)| local_normalization(q.value(e), q.value(f))).collect();
    let local_blocks: Vec<(usize, &[u64])> =
        locals.iter().enumerate().map(|(j, (_, rows))| (2 * j, &rows[..])).collect();
    let l = block_diagonal(n, &local_blocks);

    // Sorted position k takes block order[k] of the unsorted layout.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&j| locals[j].0);
    let mut perm = Gf2Matrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        perm.set(2 * j, 2 * k, true);
        perm.set(2 * j + 1, 2 * k + 1, true);
    }

    let first_q2 = order.iter().take_while(|&&j| locals[j].0 == Block::Q1).count();
    let q2_count = m - first_q2;
    let moves: Vec<(usize, &[u64])> = (0..q2_count / 2).map(|t| (2 * (first_q2 + 2 * t), &Q2Q2_TO_Q1Q1[..])).collect();
    let k = block_diagonal(n, &moves);

    let h = p.mul(&l)?.mul(&perm)?.mul(&k)?;
    let witness = h.inverse().ok_or_else(|| Error::Internal("normalizing basis change is singular".into()))?;

    let class = FormClass { m, arf: (q2_count % 2) as u8 };
    let decomposition = CanonicalDecomposition { class, blocks: class.blocks(), witness };
    if !is_pullback_witness(q, &decomposition.canonical(), &decomposition.witness) {
        return Err(Error::Internal("canonical decomposition failed verification".into()));
    }
    Ok(decomposition)
}

/// Some `f` with `q = pullback(q', f)`, or `None` if dimension or Arf
/// invariant differ. The returned `f` has been checked on every point.
pub fn equivalence_witness(q: &QuadraticForm, other: &QuadraticForm) -> Result<Option<Gf2Matrix>> {
    q.ensure_nondegenerate()?;
    other.ensure_nondegenerate()?;
    if q.dim() != other.dim() {
        return Ok(None);
    }
    if q.dim() == 0 {
        return Ok(Some(Gf2Matrix::identity(0)));
    }
    let (d, d_other) = (canonical_decomposition(q)?, canonical_decomposition(other)?);
    if d.class != d_other.class {
        return Ok(None);
    }
    let back = d_other.witness.inverse().ok_or_else(|| Error::Internal("decomposition witness is singular".into()))?;
    let f = back.mul(&d.witness)?;
    if !is_pullback_witness(q, other, &f) {
        return Err(Error::Internal("equivalence witness failed verification".into()));
    }
    Ok(Some(f))
}

/// Census of the forms with hyperbolic polar form on `Z_2^{2m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCensus {
    pub dim: usize,
    pub arf0: u64,
    pub arf1: u64,
    /// Number of Arf values that occur; two for all `m >= 1`.
    pub classes: usize,
    /// Orbits under polar-preserving basis changes, when `dim <= 4`.
    pub orbits: Option<usize>,
}

pub fn enumerate_classes(dim: usize) -> Result<ClassCensus> {
    if dim > MAX_CENSUS_DIM {
        return Err(Error::CapExceeded { what: "class census dimension", limit: MAX_CENSUS_DIM, requested: dim });
    }
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("census dimension must be even and positive, got {dim}")));
    }
    let m = dim / 2;
    let forms: Vec<QuadraticForm> =
        (0..1u64 << dim).map(|a| QuadraticForm::with_hyperbolic_polar(m, a)).collect::<Result<_>>()?;
    let arfs: Vec<u8> = forms.iter().map(QuadraticForm::arf).collect::<Result<_>>()?;
    let arf1 = arfs.iter().filter(|&&a| a == 1).count() as u64;
    let arf0 = arfs.len() as u64 - arf1;
    let classes = usize::from(arf0 > 0) + usize::from(arf1 > 0);

    let orbits = if dim <= MAX_ORBIT_DIM { Some(count_orbits(&forms, &arfs)?) } else { None };
    Ok(ClassCensus { dim, arf0, arf1, classes, orbits })
}

/// Orbits of `GL(dim, 2)` restricted to maps preserving the hyperbolic polar
/// form, acting on the forms by pullback.
fn count_orbits(forms: &[QuadraticForm], arfs: &[u8]) -> Result<usize> {
    let dim = forms[0].dim();
    let polar = forms[0].polar_form();
    let mut parent: Vec<usize> = (0..forms.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for f in enumerate_invertible(dim)? {
        if polar.congruence(&f)? != polar {
            continue;
        }
        for (i, q) in forms.iter().enumerate() {
            let image = q.pullback(&f)?;
            let j = image.linear_bits() as usize;
            debug_assert_eq!(forms[j], image);
            if arfs[i] != arfs[j] {
                return Err(Error::Internal("basis change altered the Arf invariant".into()));
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
    }
    Ok((0..forms.len()).filter(|&i| find(&mut parent, i) == i).count())
}
