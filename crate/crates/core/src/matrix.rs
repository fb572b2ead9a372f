//! Dense square matrices for the small covariance systems used here.
//!
//! The joint laws never exceed a handful of variables, so LU with partial
//! pivoting covers determinants, solves and inverses without pulling in a
//! linear-algebra dependency.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Matrix {
        let n = rows.len();
        let mut m = Matrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix rows must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    /// Largest absolute symmetry defect `|a_ij - a_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Determinant via LU with partial pivoting. Returns 0 when a pivot
    /// vanishes exactly.
    pub fn det(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        let mut lu = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_abs = lu[col * n + col].abs();
            for row in (col + 1)..n {
                let a = lu[row * n + col].abs();
                if a > pivot_abs {
                    pivot_abs = a;
                    pivot_row = row;
                }
            }
            if pivot_abs == 0.0 {
                return 0.0;
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = lu[col * n + col];
            det *= pivot;
            for row in (col + 1)..n {
                let factor = lu[row * n + col] / pivot;
                lu[row * n + col] = 0.0;
                for j in (col + 1)..n {
                    lu[row * n + j] -= factor * lu[col * n + j];
                }
            }
        }
        det
    }

    /// Determinant of the leading principal `k x k` block.
    pub fn leading_minor(&self, k: usize) -> f64 {
        let mut sub = Matrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                sub.set(i, j, self.get(i, j));
            }
        }
        sub.det()
    }

    /// Solve `A x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        assert_eq!(rhs.len(), n, "right-hand side length must match");
        let mut aug = self.data.clone();
        let mut x = rhs.to_vec();
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_abs = aug[col * n + col].abs();
            for row in (col + 1)..n {
                let a = aug[row * n + col].abs();
                if a > pivot_abs {
                    pivot_abs = a;
                    pivot_row = row;
                }
            }
            if pivot_abs == 0.0 {
                return Err(Error::SingularCovariance {
                    context: format!("zero pivot at column {col} of a {n}x{n} system"),
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    aug.swap(col * n + j, pivot_row * n + j);
                }
                x.swap(col, pivot_row);
            }
            let pivot = aug[col * n + col];
            for row in (col + 1)..n {
                let factor = aug[row * n + col] / pivot;
                if factor != 0.0 {
                    for j in (col + 1)..n {
                        aug[row * n + j] -= factor * aug[col * n + j];
                    }
                    x[row] -= factor * x[col];
                }
            }
        }
        for col in (0..n).rev() {
            let mut acc = x[col];
            for j in (col + 1)..n {
                acc -= aug[col * n + j] * x[j];
            }
            x[col] = acc / aug[col * n + col];
        }
        Ok(x)
    }

    /// Matrix inverse, column by column.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut inv = Matrix::zeros(n);
        let mut unit = vec![0.0; n];
        for col in 0..n {
            unit[col] = 1.0;
            let x = self.solve(&unit)?;
            for (row, value) in x.iter().enumerate() {
                inv.set(row, col, *value);
            }
            unit[col] = 0.0;
        }
        Ok(inv)
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n {
            let mut sum = 0.0;
            for i in 0..self.n {
                sum += self.get(i, j).abs();
            }
            worst = worst.max(sum);
        }
        worst
    }

    /// 1-norm condition number estimate; infinite when singular.
    pub fn condition_1(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm_1() * inv.norm_1(),
            Err(_) => f64::INFINITY,
        }
    }
}
