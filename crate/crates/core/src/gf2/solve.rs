//! Linear systems over GF(2).
//!
//! Every solver here returns the *canonical* solution of a consistent
//! system: after column-ordered elimination, free variables are set to zero
//! and pivot variables are read off the reduced rows. Because the set of
//! pivot columns only depends on the row space, two systems with the same
//! solution set have the same canonical solution.

use super::matrix::Gf2Matrix;
use super::vector::{parity, Gf2Vector};
use crate::error::{ensure_dim, Result};

impl Gf2Matrix {
    /// Gauss-Jordan reduction in place; returns the pivot columns.
    pub(crate) fn reduce_row_echelon(&mut self) -> Vec<usize> {
        let pivots = self.forward_eliminate();
        for (k, &c) in pivots.iter().enumerate().rev() {
            for i in 0..k {
                if self.get(i, c) {
                    self.add_row(k, i);
                }
            }
        }
        pivots
    }
}

/// Solves `a * x = b`, returning the canonical solution or `None` if the
/// system is inconsistent.
pub fn solve_linear(a: &Gf2Matrix, b: &Gf2Vector) -> Result<Option<Gf2Vector>> {
    ensure_dim(a.rows(), b.len())?;
    let mut m = a.clone();
    let mut rhs = b.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| m.get(i, c)) else {
            continue;
        };
        m.swap_rows(r, p);
        let (br, bp) = (rhs.get(r), rhs.get(p));
        rhs.set(r, bp);
        rhs.set(p, br);
        for i in r + 1..m.rows() {
            if m.get(i, c) {
                m.add_row(r, i);
                if rhs.get(r) {
                    rhs.flip(i);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..m.rows()).any(|i| rhs.get(i)) {
        return Ok(None);
    }
    // Back substitution with free variables fixed at zero.
    let mut x = Gf2Vector::zeros(m.cols());
    for (k, &c) in pivots.iter().enumerate().rev() {
        let acc = m.row(k).iter().zip(x.words()).fold(0u64, |acc, (a, v)| acc ^ (a & v));
        // Row k has a 1 at column c and x_c is still 0, so acc covers j > c only.
        if (parity(acc) == 1) != rhs.get(k) {
            x.set(c, true);
        }
    }
    debug_assert_eq!(a.mul_vec(&x).unwrap(), *b);
    Ok(Some(x))
}

/// Basis of `{x : a x = 0}`, one vector per free column in increasing order.
pub fn null_space(a: &Gf2Matrix) -> Vec<Gf2Vector> {
    let mut m = a.clone();
    let pivots = m.reduce_row_echelon();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Gf2Vector::unit(m.cols(), f);
            for (k, &c) in pivots.iter().enumerate() {
                if m.get(k, f) {
                    v.set(c, true);
                }
            }
            v
        })
        .collect()
}

/// A linear system with a fixed left-hand side, prepared once and solved
/// for many right-hand sides.
///
/// Preparation selects a maximal independent set of rows and inverts the
/// elimination on them, so [`LinearSolver::solve`] costs one matrix-vector
/// product plus a substitution check against all rows. Solutions agree
/// exactly with [`solve_linear`].
#[derive(Clone, Debug)]
pub struct LinearSolver {
    system: Gf2Matrix,
    basis_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    /// `transform * system[basis_rows]` is in reduced row echelon form.
    transform: Gf2Matrix,
}

impl LinearSolver {
    pub fn new(system: Gf2Matrix) -> Self {
        let (rows, cols) = (system.rows(), system.cols());

        let mut work = system.clone();
        let mut order: Vec<usize> = (0..rows).collect();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| work.get(i, c)) else {
                continue;
            };
            work.swap_rows(rank, p);
            order.swap(rank, p);
            for i in rank + 1..rows {
                if work.get(i, c) {
                    work.add_row(rank, i);
                }
            }
            rank += 1;
        }
        drop(work);
        let mut basis_rows: Vec<usize> = order[..rank].to_vec();
        basis_rows.sort_unstable();

        // Gauss-Jordan on [A_S | I].
        let mut aug = Gf2Matrix::zeros(rank, cols + rank);
        for (k, &r) in basis_rows.iter().enumerate() {
            aug.row_mut(k)[..system.row(r).len()].copy_from_slice(system.row(r));
            aug.set(k, cols + k, true);
        }
        let mut pivot_cols = Vec::with_capacity(rank);
        let mut r = 0;
        for c in 0..cols {
            if r == rank {
                break;
            }
            let Some(p) = (r..rank).find(|&i| aug.get(i, c)) else {
                continue;
            };
            aug.swap_rows(r, p);
            for i in 0..rank {
                if i != r && aug.get(i, c) {
                    aug.add_row(r, i);
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        debug_assert_eq!(pivot_cols.len(), rank);

        let mut transform = Gf2Matrix::zeros(rank, rank);
        for k in 0..rank {
            for j in 0..rank {
                if aug.get(k, cols + j) {
                    transform.set(k, j, true);
                }
            }
        }
        Self { system, basis_rows, pivot_cols, transform }
    }

    pub fn system(&self) -> &Gf2Matrix {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn solve(&self, b: &Gf2Vector) -> Result<Option<Gf2Vector>> {
        ensure_dim(self.system.rows(), b.len())?;
        let restricted = Gf2Vector::from_bits(self.basis_rows.iter().map(|&r| b.get(r)));
        let reduced = self.transform.mul_vec(&restricted)?;
        let mut x = Gf2Vector::zeros(self.system.cols());
        for (k, &c) in self.pivot_cols.iter().enumerate() {
            if reduced.get(k) {
                x.set(c, true);
            }
        }
        if self.system.mul_vec(&x)? == *b {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen_bool(density) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Gf2Vector {
        Gf2Vector::from_bits((0..len).map(|_| rng.gen_bool(0.5)))
    }

    #[test]
    fn identity_system() {
        let a = Gf2Matrix::identity(3);
        let b = Gf2Vector::from_bits([true, false, true]);
        assert_eq!(solve_linear(&a, &b).unwrap(), Some(b));
    }

    #[test]
    fn inconsistent_rows() {
        let a = Gf2Matrix::from_row_u64s(2, &[0b11, 0b11]).unwrap();
        let b = Gf2Vector::from_bits([true, false]);
        assert_eq!(solve_linear(&a, &b).unwrap(), None);
        assert_eq!(LinearSolver::new(a).solve(&b).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Gf2Matrix::identity(3);
        assert!(solve_linear(&a, &Gf2Vector::zeros(2)).is_err());
    }

    #[test]
    fn free_variables_are_zero() {
        // x1 + x2 = 1 with x2 free: canonical solution is (1, 0).
        let a = Gf2Matrix::from_row_u64s(2, &[0b11]).unwrap();
        let b = Gf2Vector::from_bits([true]);
        assert_eq!(solve_linear(&a, &b).unwrap().unwrap().to_u64(), Some(0b01));
    }

    #[test]
    fn random_underdetermined_from_known_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 20, 30, 0.5);
            let x0 = random_vector(&mut rng, 30);
            let b = a.mul_vec(&x0).unwrap();
            let x = solve_linear(&a, &b).unwrap().expect("consistent by construction");
            assert_eq!(a.mul_vec(&x).unwrap(), b);
        }
    }

    #[test]
    fn exhaustive_small_consistency() {
        // Every consistent system with <= 10 unknowns reproduces b; the
        // brute-force search decides consistency independently.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let cols = rng.gen_range(1..=10);
            let rows = rng.gen_range(1..=12);
            let a = random_matrix(&mut rng, rows, cols, 0.4);
            let b = random_vector(&mut rng, rows);
            let brute = (0..1u64 << cols).any(|x| {
                let v = Gf2Vector::from_u64(cols, x).unwrap();
                a.mul_vec(&v).unwrap() == b
            });
            let got = solve_linear(&a, &b).unwrap();
            assert_eq!(got.is_some(), brute);
            if let Some(x) = got {
                assert_eq!(a.mul_vec(&x).unwrap(), b);
            }
        }
    }

    #[test]
    fn prepared_solver_matches_direct_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..30 {
            let rows = 10 + trial;
            let cols = 70 + 3 * trial;
            let a = random_matrix(&mut rng, rows, cols, 0.1);
            let solver = LinearSolver::new(a.clone());
            for _ in 0..5 {
                let b = if rng.gen_bool(0.5) {
                    a.mul_vec(&random_vector(&mut rng, cols)).unwrap()
                } else {
                    random_vector(&mut rng, rows)
                };
                assert_eq!(solver.solve(&b).unwrap(), solve_linear(&a, &b).unwrap());
            }
        }
    }

    #[test]
    fn null_space_of_degenerate_form() {
        // symplectic_2 (+) zero_1
        let b = Gf2Matrix::from_row_u64s(3, &[0b010, 0b001, 0b000]).unwrap();
        let ns = null_space(&b);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].to_u64(), Some(0b100));
    }
}
