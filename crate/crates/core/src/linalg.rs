//! Row reduction over `F_q` on rows of `F_q` words.

use crate::field::SubField;

/// Reduces `rows` in place to reduced row-echelon form with unit pivots,
/// dropping zero rows. Returns the pivot columns.
pub fn rref(fq: &SubField, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(piv) = (next..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next, piv);
        let inv = fq.inv(rows[next][col]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[next].iter_mut() {
                *x = fq.mul(*x, inv);
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row[col] != 0 {
                let f = fq.neg(row[col]);
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = fq.add(*x, fq.mul(f, y));
                    }
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

pub fn rank(fq: &SubField, rows: &[Vec<u32>]) -> usize {
    let mut rows = rows.to_vec();
    rref(fq, &mut rows).len()
}

/// Basis of `{v : R v = 0}` for a matrix already in reduced row-echelon form
/// with the given pivots and `width` columns.
pub fn null_space(
    fq: &SubField,
    rref_rows: &[Vec<u32>],
    pivots: &[usize],
    width: usize,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; width];
        v[free] = 1;
        for (row, &pc) in rref_rows.iter().zip(pivots) {
            v[pc] = fq.neg(row[free]);
        }
        out.push(v);
    }
    out
}
