//! Exact rational linear algebra: reduced row echelon form, kernels and
//! linear solving. Rows are scaled integer-free first, then eliminated with
//! exact rational pivots, so results are exact and deterministic (pivots are
//! chosen left-to-right, ties by row order).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A homogeneous or inhomogeneous linear system over Q, stored dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub rows: Vec<Vec<BigRational>>,
    pub ncols: usize,
}

impl LinearSystem {
    pub fn new(ncols: usize) -> LinearSystem {
        LinearSystem {
            rows: Vec::new(),
            ncols,
        }
    }

    /// Add one equation row (length must equal `ncols`).
    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.rows.push(row);
    }

    /// A basis of the solution space of `A x = 0`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        nullspace(&self.rows, self.ncols)
    }

    pub fn rank(&self) -> usize {
        let (reduced, _) = rref(&self.rows, self.ncols);
        reduced.len()
    }
}

/// Clear denominators and common integer content from a row.
fn normalize_row(row: &mut [BigRational]) {
    let mut denlcm = BigInt::one();
    for c in row.iter() {
        if !c.is_zero() {
            denlcm = num_integer::lcm(denlcm, c.denom().clone());
        }
    }
    let mut content = BigInt::zero();
    for c in row.iter() {
        if !c.is_zero() {
            let n = (c * BigRational::from_integer(denlcm.clone())).to_integer();
            content = num_integer::gcd(content, n);
        }
    }
    if content.is_zero() {
        return;
    }
    let factor = BigRational::new(denlcm, content);
    for c in row.iter_mut() {
        *c *= &factor;
    }
}

/// Reduced row echelon form. Returns the nonzero reduced rows and the pivot
/// column of each.
pub fn rref(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut work: Vec<Vec<BigRational>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    for r in &mut work {
        assert_eq!(r.len(), ncols, "row length mismatch");
        normalize_row(r);
    }
    let mut reduced: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        // find a pivot row with the largest-magnitude entry kept simple:
        // first nonzero in order (deterministic)
        let mut pivot = None;
        for (i, r) in work.iter().enumerate().skip(next_row) {
            if !r[col].is_zero() {
                pivot = Some(i);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        work.swap(next_row, p);
        let inv = work[next_row][col].recip();
        for c in work[next_row].iter_mut() {
            *c *= &inv;
        }
        let pivot_row = work[next_row].clone();
        for (i, r) in work.iter_mut().enumerate() {
            if i == next_row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (a, b) in r.iter_mut().zip(&pivot_row) {
                *a -= &f * b;
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == work.len() {
            break;
        }
    }
    work.truncate(next_row);
    for r in &mut work {
        normalize_pivot_scale(r);
    }
    // rows already have pivot entry 1 by construction; keep them as-is
    reduced.extend(work);
    (reduced, pivots)
}

fn normalize_pivot_scale(row: &mut [BigRational]) {
    if let Some(first) = row.iter().position(|c| !c.is_zero()) {
        let inv = row[first].recip();
        if !inv.is_one() {
            for c in row.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// A basis of `{x : A x = 0}`, one vector per free column, free columns in
/// ascending order and the free coordinate set to 1.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &p) in reduced.iter().zip(&pivots) {
            v[p] = -r[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Exact solve of `A x = b`. Returns the particular solution with all free
/// variables set to zero, or None when the system is inconsistent.
pub fn solve(rows: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(rows.len(), b.len(), "right-hand side length mismatch");
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<BigRational>> = Vec::with_capacity(rows.len());
    for (r, rhs) in rows.iter().zip(b) {
        let mut row = r.clone();
        row.push(rhs.clone());
        aug.push(row);
    }
    let (reduced, pivots) = rref(&aug, ncols + 1);
    for (r, &p) in reduced.iter().zip(&pivots) {
        if p == ncols {
            // pivot in the constant column: inconsistent
            let _ = r;
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &p) in reduced.iter().zip(&pivots) {
        x[p] = r[ncols].clone();
    }
    Some(x)
}

/// Express `target` in a spanning list `basis` (vectors of equal length).
/// Returns the coefficient vector when `target` lies in the span.
pub fn express_in_span(
    basis: &[Vec<BigRational>],
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    let dim = target.len();
    // columns are the basis vectors
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(basis.len());
        for v in basis {
            assert_eq!(v.len(), dim, "basis vector length mismatch");
            row.push(v[i].clone());
        }
        rows.push(row);
    }
    solve(&rows, target)
}

/// Rank of a list of vectors.
pub fn span_rank(vectors: &[Vec<BigRational>]) -> usize {
    let ncols = vectors.first().map(|v| v.len()).unwrap_or(0);
    let (reduced, _) = rref(vectors, ncols);
    reduced.len()
}
