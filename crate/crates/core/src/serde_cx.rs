//! Serde adapters for complex matrices.
//!
//! Complex numbers serialize as `[re, im]` (the `num-complex` default);
//! matrices become row-major nested arrays of those pairs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

pub type CMatrix = DMatrix<Complex64>;

pub fn rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn from_rows(rows: &[Vec<Complex64>]) -> Option<CMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return None;
    }
    Some(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

pub mod row_major {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        let r: Vec<Vec<Complex64>> = Vec::deserialize(d)?;
        from_rows(&r).ok_or_else(|| D::Error::custom("ragged matrix rows"))
    }
}
