//! Linear algebra helpers: exact null spaces over any [`Field`], and
//! singular values / determinants of small complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scalar::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F::Elem>], k: &F) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let t = k.mul(&factor, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : A v = 0}` for a `rows × cols` matrix.
///
/// One vector per free column `f`, with entry 1 at `f`, 0 at the other free
/// columns and support only on `f` and pivot columns left of it. With columns
/// ordered by increasing degree this is the echelon basis whose highest
/// nonzero entry is 1 and whose leading positions are pairwise distinct.
pub fn null_space<F: Field>(a: &[Vec<F::Elem>], cols: usize, k: &F) -> Vec<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = a.to_vec();
    let pivots = rref(&mut m, k);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&m[row][f]);
            }
            v
        })
        .collect()
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn determinant(m: &DMatrix<Complex64>) -> Complex64 {
    if m.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// `m` with row `i` and column `i` removed.
pub fn principal_submatrix(m: &DMatrix<Complex64>, i: usize) -> DMatrix<Complex64> {
    m.clone().remove_row(i).remove_column(i)
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
