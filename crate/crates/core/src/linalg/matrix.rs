use std::fmt;

use crate::scalar::Scalar;

/// Dense row-major matrix over a [`Scalar`] field.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, j) in idx.iter().enumerate() {
                m[(i, jj)] = self[(i, *j)].clone();
            }
        }
        m
    }

    pub fn top_rows(&self, count: usize) -> Self {
        assert!(count <= self.rows);
        Self { rows: count, cols: self.cols, data: self.data[..count * self.cols].to_vec() }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = pick_pivot(&m, r, c) else { continue };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_negligible() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = f.clone() * m[(r, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..m.cols {
            let Some(p) = pick_pivot(&m, c, c) else { return T::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..m.rows {
                if m[(i, c)].is_negligible() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..m.cols {
                    let delta = f.clone() * m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - delta;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// First nonzero entry at or below `start` in column `c`; for inexact
/// scalars, the largest one.
fn pick_pivot<T: Scalar>(m: &Matrix<T>, start: usize, c: usize) -> Option<usize> {
    let candidates = (start..m.rows).filter(|i| !m[(*i, c)].is_negligible());
    if T::EXACT {
        candidates.into_iter().next()
    } else {
        candidates.max_by(|a, b| {
            m[(*a, c)].abs().partial_cmp(&m[(*b, c)].abs()).unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|v| q(*v)).collect()).collect())
    }

    /// Cofactor expansion along the first row; independent of elimination.
    fn laplace(a: &Matrix<Rational>) -> Rational {
        let n = a.rows();
        if n == 0 {
            return q(1);
        }
        let mut acc = q(0);
        for j in 0..n {
            let keep: Vec<usize> = (0..n).filter(|c| *c != j).collect();
            let minor = Matrix::from_rows(
                (1..n).map(|i| keep.iter().map(|c| a[(i, *c)].clone()).collect()).collect(),
            );
            let term = a[(0, j)].clone() * laplace(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let cases = [
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]),
            m(&[&[0, 1], &[1, 0]]),
            m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 5]]),
            m(&[&[1, 1, 1, 1], &[1, 2, 3, 4], &[1, 4, 9, 16], &[1, 8, 27, 64]]),
        ];
        for a in &cases {
            assert_eq!(a.determinant(), laplace(a), "{a}");
        }
        // Vandermonde on 1..4: product of differences
        assert_eq!(cases[3].determinant(), q(12));
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 1, 1], &[1, 2, 3]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(|v| *v == q(0)));
        assert_eq!(ker[0], vec![q(1), q(-2), q(1)]);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
    }

    #[test]
    fn float_instantiation() {
        let a = Matrix::from_rows(vec![vec![1.0f64, 1.0, 1.0], vec![1.0, 2.0, 3.0], vec![1.0, 4.0, 9.0]]);
        assert!((a.determinant() - 2.0).abs() < 1e-12);
        assert_eq!(a.rank(), 3);
    }
}
