//! Dense exact linear algebra over a field: reduced row echelon form,
//! kernels and solving.

use crate::error::ArithError;
use crate::field::Field;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref<F: Field>(
    rows: &mut Vec<Vec<F::Elem>>,
    cols: usize,
    k: &F,
) -> Result<Vec<usize>, ArithError> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c])?;
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Ok(pivots)
}

/// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in that
/// column and 0 in the other free columns.
pub fn kernel<F: Field>(
    a: &[Vec<F::Elem>],
    cols: usize,
    k: &F,
) -> Result<Vec<Vec<F::Elem>>, ArithError> {
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, cols, k)?;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = k.neg(&row[f]);
            }
            v
        })
        .collect())
}

/// Rank of a matrix.
pub fn rank<F: Field>(a: &[Vec<F::Elem>], cols: usize, k: &F) -> Result<usize, ArithError> {
    let mut rows = a.to_vec();
    Ok(rref(&mut rows, cols, k)?.len())
}

/// Some solution of `A x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve<F: Field>(
    a: &[Vec<F::Elem>],
    b: &[F::Elem],
    k: &F,
) -> Result<Option<Vec<F::Elem>>, ArithError> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, cols + 1, k)?;
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![k.zero(); cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}
