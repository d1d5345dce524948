//! Row reduction over the prime field F_p, shared by the quadratic-form rank
//! computation and the code-dimension / generator-matrix routines.
//!
//! Matrices are `Vec<Vec<u64>>` row lists with entries already reduced mod p.
//! Elimination scans columns left to right and picks the topmost usable pivot
//! row, so the result is deterministic for a given input.

use crate::field::mod_pow;

/// Reduced row-echelon form; returns only the nonzero rows.
pub(crate) fn rref(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut mat: Vec<Vec<u64>> = rows.to_vec();
    let nrows = mat.len();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(pivot_row, src);
        let inv = mod_pow(mat[pivot_row][col], p - 2, p);
        for x in mat[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..nrows {
            if r != pivot_row && mat[r][col] != 0 {
                let f = mat[r][col];
                for c in 0..ncols {
                    let sub = f * mat[pivot_row][c] % p;
                    mat[r][c] = (mat[r][c] + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    mat.truncate(pivot_row);
    mat
}

/// Rank of a matrix over F_p.
pub(crate) fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    rref(rows, p).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_singular() {
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(rank(&id, 3), 2);
        let sing = vec![vec![1, 2], vec![2, 4 % 5]];
        assert_eq!(rank(&sing, 5), 1);
        let zero = vec![vec![0, 0, 0]; 3];
        assert_eq!(rank(&zero, 3), 0);
    }

    #[test]
    fn rref_produces_unit_pivots() {
        let m = vec![vec![2, 1, 1], vec![1, 2, 1]];
        let r = rref(&m, 3);
        assert_eq!(r.len(), 2);
        // leading entries are 1 and sit strictly to the right as rows descend
        let lead = |row: &Vec<u64>| row.iter().position(|&x| x != 0).unwrap();
        assert!(lead(&r[0]) < lead(&r[1]));
        for row in &r {
            assert_eq!(row[lead(row)], 1);
        }
        // each pivot column is zero elsewhere
        for (i, row) in r.iter().enumerate() {
            let l = lead(row);
            for (j, other) in r.iter().enumerate() {
                if i != j {
                    assert_eq!(other[l], 0);
                }
            }
        }
    }

    #[test]
    fn empty_and_columnless_matrices() {
        assert_eq!(rank(&[], 3), 0);
        let no_cols: Vec<Vec<u64>> = vec![vec![], vec![]];
        assert_eq!(rank(&no_cols, 3), 0);
    }

    /// Oracle: rank over F_p by counting the span's size — the row space of
    /// a rank-r matrix has exactly p^r vectors.
    #[test]
    fn rank_matches_row_span_cardinality() {
        let p = 3u64;
        let mats = [
            vec![vec![1, 2, 0], vec![2, 1, 1], vec![0, 0, 2]],
            vec![vec![1, 1, 1], vec![2, 2, 2], vec![1, 0, 2]],
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 0, 0]],
        ];
        for m in &mats {
            let r = rank(m, p);
            let mut span = std::collections::BTreeSet::new();
            // enumerate all p^rows combinations of the rows
            let rows = m.len();
            let total = p.pow(rows as u32);
            for k in 0..total {
                let mut coeff = k;
                let mut v = vec![0u64; m[0].len()];
                for row in m {
                    let c = coeff % p;
                    coeff /= p;
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = (*vi + c * ri) % p;
                    }
                }
                span.insert(v);
            }
            assert_eq!(span.len() as u64, p.pow(r as u32));
        }
    }
}
