//! Small dense row-major matrices.

use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
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

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    /// Entrywise linear combination `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.max_abs_diff(&self.transpose()) == 0.0
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Principal submatrix that keeps the listed indices in order.
    pub fn principal(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Square integer matrix used by the exact determinant oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.concat(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `self - t * I`.
    pub fn shifted(&self, t: i64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] -= t;
        }
        out
    }

    /// Converts a dense matrix whose entries are exact integers.
    pub fn from_dense(m: &DenseMatrix) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let data = m
            .as_slice()
            .iter()
            .map(|&x| (x.fract() == 0.0 && x.abs() < 9.0e15).then_some(x as i64))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { n: m.rows(), data })
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let rows: Vec<Vec<f64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] as f64).collect())
            .collect();
        DenseMatrix::from_rows(&rows)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> u64 {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .map(|x| x.unsigned_abs())
                    .sum::<u64>()
            })
            .max()
            .unwrap_or(0)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_sums() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let b = a.matmul(&DenseMatrix::identity(2));
        assert_eq!(a, b);
        assert_eq!(a.transpose()[(0, 1)], 3.0);
        assert_eq!(a.trace(), 5.0);
        assert_eq!(a.norm_inf(), 7.0);
        let d = a.direct_sum(&DenseMatrix::from_diag(&[9.0]));
        assert_eq!(d.rows(), 3);
        assert_eq!(d[(2, 2)], 9.0);
        assert_eq!(d[(0, 2)], 0.0);
        assert_eq!(d.principal(&[0, 2]), DenseMatrix::from_diag(&[1.0, 9.0]));
    }

    #[test]
    fn int_matrix_roundtrip() {
        let m = IntMatrix::from_rows(&[vec![3, 4], vec![1, 0]]);
        assert_eq!(IntMatrix::from_dense(&m.to_dense()), Some(m.clone()));
        assert_eq!(m.shifted(-2)[(0, 0)], 5);
        assert_eq!(m.norm_inf(), 7);
        let half = DenseMatrix::from_diag(&[0.5]);
        assert_eq!(IntMatrix::from_dense(&half), None);
    }
}
