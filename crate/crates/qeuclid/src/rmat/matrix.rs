//! Dense matrices over [`Scalar`].

use crate::qscalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        self.map(|x| x * k)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn matmul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Kronecker product; row index `(i, k)` maps to `i * o.rows + k`.
    pub fn kron(&self, o: &Mat) -> Mat {
        Mat::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            let a = &self[(r / o.rows, c / o.cols)];
            if a.is_zero() {
                Scalar::zero()
            } else {
                a * &o[(r % o.rows, c % o.cols)]
            }
        })
    }

    /// Gauss-Jordan inverse, `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a[(col, col)].inv().ok()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.axpy_row(r, col, &f);
                    inv.axpy_row(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.row_echelon(&(0..self.cols).collect::<Vec<_>>()).len()
    }

    /// Reduced row echelon basis of the row space, with pivots searched in
    /// the given column order. Returns the nonzero rows.
    pub fn row_echelon(&self, order: &[usize]) -> Vec<Vec<Scalar>> {
        let mut a = self.clone();
        let mut r = 0;
        for &col in order {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(piv, r);
            let p = a[(r, col)].inv().unwrap();
            a.scale_row(r, &p);
            for i in 0..a.rows {
                if i != r && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    a.axpy_row(i, r, &f);
                }
            }
            r += 1;
        }
        (0..r).map(|i| (0..a.cols).map(|j| a[(i, j)].clone()).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for j in 0..self.cols {
            self[(r, j)] = &self[(r, j)] * k;
        }
    }

    /// `row[dst] -= f * row[src]`.
    fn axpy_row(&mut self, dst: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            if !self[(src, j)].is_zero() {
                self[(dst, j)] = &self[(dst, j)] - &(f * &self[(src, j)]);
            }
        }
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        self + &(-o)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|x| -x)
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        self.matmul(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a_triangular_matrix() {
        let q = Scalar::q();
        let m = Mat::from_fn(3, 3, |i, j| if i >= j { q.pow((i + j) as i64 + 1) } else { Scalar::zero() });
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Mat::from_fn(2, 2, |_, _| Scalar::q());
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kron_with_identity() {
        let m = Mat::from_fn(2, 2, |i, j| Scalar::int((2 * i + j) as i64));
        let k = m.kron(&Mat::identity(2));
        assert_eq!(k[(2, 0)], Scalar::int(2));
        assert_eq!(k[(3, 1)], Scalar::int(2));
        assert_eq!(k[(3, 0)], Scalar::zero());
    }
}
