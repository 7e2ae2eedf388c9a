//! Exact dense linear algebra over the rationals: Gauss-Jordan elimination
//! for solving and inverting the small systems that arise from musical
//! isomorphisms and gauge-fixing ansatz matrices.

use crate::poly::Rational;

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    /// A solution vector; free variables (if any) are set to zero, with
    /// pivots chosen left to right so earlier unknowns are preferred.
    Solution(Vec<Rational>),
    /// The system is inconsistent.
    Inconsistent,
}

/// Solves `rows * x = rhs` by exact Gauss-Jordan elimination.
///
/// `rows` is a list of equation coefficient vectors, all of length
/// `unknowns`; `rhs` the matching right-hand sides. Under-determined systems
/// return the solution with every free variable pinned to zero.
pub fn solve(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, unknowns: usize) -> LinearSolution {
    debug_assert_eq!(rows.len(), rhs.len());
    let m = rows.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut rank = 0usize;
    for col in 0..unknowns {
        if rank == m {
            break;
        }
        let Some(pivot_row) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        rhs.swap(rank, pivot_row);
        let inv = {
            let p = &rows[rank][col];
            Rational::one() / p.clone()
        };
        for c in col..unknowns {
            let v = rows[rank][c].clone() * inv.clone();
            rows[rank][c] = v;
        }
        rhs[rank] *= inv;
        for r in 0..m {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..unknowns {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] -= delta;
            }
            let delta = factor * rhs[rank].clone();
            rhs[r] -= delta;
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // Inconsistency: a zero row with nonzero rhs.
    for r in rank..m {
        if !rhs[r].is_zero() {
            return LinearSolution::Inconsistent;
        }
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = rhs[*r].clone();
        }
    }
    LinearSolution::Solution(x)
}

/// Exact inverse of a square rational matrix, or `None` when singular.
pub fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = Rational::one() / aug[col][col].clone();
        for c in 0..2 * n {
            let v = aug[col][c].clone() * inv.clone();
            aug[col][c] = v;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in 0..2 * n {
                let delta = factor.clone() * aug[col][c].clone();
                aug[r][c] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
