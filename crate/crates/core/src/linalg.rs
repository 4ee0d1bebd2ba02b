//! Small dense complex matrices: just enough for operator tables, Gram
//! matrices and orthonormal completion.

use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense matrix. Entry `(row, col)` of an operator is the amplitude
/// `<row|U|col>`, so column `q` is the image of basis state `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("row {row} has {found} entries, expected {expected}")]
pub struct RaggedRows {
    pub row: usize,
    pub found: usize,
    pub expected: usize,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Permutation matrix sending basis state `j` to `targets[j]`.
    pub fn permutation(targets: &[usize]) -> Self {
        let n = targets.len();
        let mut m = Self::zeros(n, n);
        for (col, row) in targets.iter().enumerate() {
            m.set(*row, col, ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, RaggedRows> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(RaggedRows {
                    row: i,
                    found: row.len(),
                    expected: n_cols,
                });
            }
            data.extend(row);
        }
        Ok(ComplexMatrix {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Real-valued convenience constructor; panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| Complex64::new(*x, 0.0)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    /// Builds a square matrix from its columns; panics on ragged input.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let n = columns.len();
        let mut m = Self::zeros(columns.first().map_or(0, Vec::len), n);
        for (c, column) in columns.iter().enumerate() {
            assert_eq!(column.len(), m.rows, "ragged columns");
            for (r, v) in column.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// `U†U`: entry `(i, j)` is the inner product of columns `i` and `j`.
    pub fn gram(&self) -> ComplexMatrix {
        let mut g = Self::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut acc = ZERO;
                for r in 0..self.rows {
                    acc += self.get(r, i).conj() * self.get(r, j);
                }
                g.set(i, j, acc);
            }
        }
        g
    }

    /// Largest absolute entry of `self - I`; NaN if any entry is NaN.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { ONE } else { ZERO };
                let d = (self.get(i, j) - target).norm();
                if d.is_nan() {
                    return f64::NAN;
                }
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Embeds `self` in the top-left corner of an `n`×`n` identity.
    pub fn extended_with_identity(&self, n: usize) -> ComplexMatrix {
        assert!(n >= self.rows && n >= self.cols);
        let mut out = Self::identity(n);
        for i in 0..self.rows.max(self.cols) {
            out.set(i, i, ZERO);
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum()
}

/// Extends an orthonormal family with `needed` further unit vectors, taken by
/// Gram-Schmidt over the standard basis in index order.
///
/// When `existing` consists of standard basis vectors the result is exactly
/// the unused basis vectors, so permutation tables stay permutations.
pub fn orthonormal_completion(
    dim: usize,
    existing: &[Vec<Complex64>],
    needed: usize,
) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = existing.to_vec();
    let mut added = Vec::with_capacity(needed);
    for e in 0..dim {
        if added.len() == needed {
            break;
        }
        let mut v = vec![ZERO; dim];
        v[e] = ONE;
        // Two passes of modified Gram-Schmidt.
        for _ in 0..2 {
            for b in &basis {
                let overlap = inner(b, &v);
                if overlap != ZERO {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= overlap * bi;
                    }
                }
            }
        }
        let n = norm_sqr(&v).sqrt();
        if n > 1e-6 {
            for vi in &mut v {
                *vi /= n;
            }
            basis.push(v.clone());
            added.push(v);
        }
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn hadamard_gram_is_identity() {
        let h = ComplexMatrix::from_real_rows(&[
            &[FRAC_1_SQRT_2, FRAC_1_SQRT_2],
            &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
        ]);
        assert!(h.gram().max_deviation_from_identity() < 1e-15);
        assert_eq!(h.gram(), h.adjoint().mul(&h));
    }

    #[test]
    fn duplicated_rows_deviate_by_one() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 0.0]]);
        let g = m.gram();
        assert_eq!(
            g,
            ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0]])
        );
        assert_eq!(g.max_deviation_from_identity(), 1.0);
    }

    #[test]
    fn permutation_layout() {
        let p = ComplexMatrix::permutation(&[1, 2, 0]);
        assert_eq!(p.get(1, 0), ONE);
        assert_eq!(p.get(0, 2), ONE);
        assert_eq!(p.gram().max_deviation_from_identity(), 0.0);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = ComplexMatrix::from_rows(vec![vec![ONE, ZERO], vec![ONE]]).unwrap_err();
        assert_eq!(
            err,
            RaggedRows {
                row: 1,
                found: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn completion_of_basis_vectors_is_exact() {
        let e1 = vec![ZERO, ONE, ZERO];
        let added = orthonormal_completion(3, &[e1], 2);
        assert_eq!(added, vec![vec![ONE, ZERO, ZERO], vec![ZERO, ZERO, ONE]]);
    }

    #[test]
    fn completion_of_rotated_pair() {
        let s = FRAC_1_SQRT_2;
        let v = vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0), ZERO];
        let added = orthonormal_completion(3, std::slice::from_ref(&v), 2);
        let mut cols = vec![v];
        cols.extend(added);
        let m = ComplexMatrix::from_columns(&cols);
        assert!(m.gram().max_deviation_from_identity() < 1e-12);
    }

    #[test]
    fn identity_extension_preserves_unitarity() {
        let s = FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]);
        let big = h.extended_with_identity(4);
        assert_eq!(big.get(3, 3), ONE);
        assert_eq!(big.get(2, 0), ZERO);
        assert!(big.gram().max_deviation_from_identity() < 1e-15);
    }
}
