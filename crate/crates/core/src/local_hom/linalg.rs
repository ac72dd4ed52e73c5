//! Dense matrices over `Q` with exact Gauss-Jordan elimination.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Self { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(mut self) -> Echelon {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = self.get(pivot_row, col).recip();
            for c in col..self.cols {
                let v = self.get(pivot_row, c) * &inv;
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(pivot_row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Echelon { matrix: self, pivots }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().pivots.len()
    }

    /// Product with a column vector.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One basis vector per free column: the free variable set to one, the
    /// others to zero, and the pivot variables solved from the reduced rows.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let cols = self.matrix.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); cols];
                v[free] = BigRational::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.matrix.get(r, free).clone();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn matrix(rows: &[&[i64]]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(matrix(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(matrix(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(matrix(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]).rank(), 3);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = matrix(&[&[1, 1, 0, -1], &[0, 2, 1, 1], &[1, 3, 1, 0]]);
        let echelon = m.clone().rref();
        let kernel = echelon.nullspace();
        assert_eq!(echelon.rank() + kernel.len(), m.cols());
        for v in &kernel {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_pivots_stay_exact() {
        let m = matrix(&[&[3, 1], &[1, 3]]);
        let e = m.rref();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.matrix.row(0), &[q(1), q(0)]);
    }
}
