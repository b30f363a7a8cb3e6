use super::Field;
use crate::error::{MathError, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(MathError::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Builds a matrix from a fallible entry function `f(i, j)`, 0-based.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<F>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    fn square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(MathError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<F> {
        let n = self.square()?;
        let mut a: Vec<Vec<F>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let one = self.entries[0].one_like();
        let mut prev = one.clone();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(one.zero_like()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.div(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<F> {
        let n = self.square()?;
        let idx: Vec<usize> = (0..n).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> F {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.entries[0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e.mul(&self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
}
