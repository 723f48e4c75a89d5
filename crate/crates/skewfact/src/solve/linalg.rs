//! Exact dense linear algebra over a generic field: reduced row echelon
//! form and affine solution spaces.

use crate::field::Field;

/// Solution set of M y = rhs: one particular solution plus a nullspace basis.
#[derive(Clone, Debug)]
pub struct LinearSolution<K: Field> {
    pub particular: Vec<K::Elem>,
    pub nullspace: Vec<Vec<K::Elem>>,
}

/// Solve an inhomogeneous system by Gaussian elimination. Returns `None` when
/// inconsistent. `rows` are the matrix rows; all rows and `rhs` must have
/// consistent dimensions.
pub fn solve_linear<K: Field>(
    k: &K,
    rows: &[Vec<K::Elem>],
    rhs: &[K::Elem],
) -> Option<LinearSolution<K>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    debug_assert_eq!(rhs.len(), nrows);
    // augmented matrix
    let mut m: Vec<Vec<K::Elem>> = rows
        .iter()
        .zip(rhs.iter())
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !k.is_zero(&m[r][col]));
        let Some(prow) = pivot else { continue };
        m.swap(rank, prow);
        let inv = k.inv(&m[rank][col]).expect("pivot nonzero");
        for c in col..=ncols {
            m[rank][c] = k.mul(&m[rank][c], &inv);
        }
        for r in 0..nrows {
            if r != rank && !k.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..=ncols {
                    let sub = k.mul(&factor, &m[rank][c]);
                    m[r][c] = k.sub(&m[r][c], &sub);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    // inconsistency: zero row with nonzero rhs
    for r in rank..nrows {
        if !k.is_zero(&m[r][ncols]) {
            return None;
        }
    }
    let mut particular = vec![k.zero(); ncols];
    for (i, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = m[i][ncols].clone();
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut vec = vec![k.zero(); ncols];
        vec[fc] = k.one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            vec[pc] = k.neg(&m[i][fc]);
        }
        nullspace.push(vec);
    }
    Some(LinearSolution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn unique_solution() {
        let f5 = PrimeField::new(5).unwrap();
        // x + y = 3, x - y = 1 -> x = 2, y = 1
        let rows = vec![vec![1, 1], vec![1, 4]];
        let sol = solve_linear(&f5, &rows, &[3, 1]).unwrap();
        assert_eq!(sol.particular, vec![2, 1]);
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn inconsistent() {
        let f5 = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 1], vec![2, 2]];
        assert!(solve_linear(&f5, &rows, &[1, 3]).is_none());
    }

    #[test]
    fn underdetermined() {
        let f3 = PrimeField::new(3).unwrap();
        let rows = vec![vec![1, 1]];
        let sol = solve_linear(&f3, &rows, &[2]).unwrap();
        assert_eq!(sol.nullspace.len(), 1);
        // particular + t * nullspace solves for all t
        for t in 0..3 {
            let y0 = f3.add(&sol.particular[0], &f3.mul(&t, &sol.nullspace[0][0]));
            let y1 = f3.add(&sol.particular[1], &f3.mul(&t, &sol.nullspace[0][1]));
            assert_eq!(f3.add(&y0, &y1), 2);
        }
    }
}
