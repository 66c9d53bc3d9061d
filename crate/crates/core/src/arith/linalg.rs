//! Dense exact linear algebra over Q. Matrices are row vectors.

use num_traits::{One, Zero};

use super::scalar::Scalar;

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vector>, cols: usize) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.data[i][j].is_zero() {
                    t.data[j][i] = self.data[i][j].clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Row-reduces in place to reduced echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = Scalar::one() / &self.data[r][c];
            if !inv.is_one() {
                for v in self.data[r].iter_mut().skip(c) {
                    if !v.is_zero() {
                        *v *= &inv;
                    }
                }
            }
            let pivot_row = self.data[r].clone();
            let nz: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let f = self.data[i][c].clone();
                for &j in &nz {
                    let t = &f * &pivot_row[j];
                    self.data[i][j] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of { v : self * v = 0 }.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                let a = &m.data[r][free];
                if !a.is_zero() {
                    v[c] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some x with self * x = b, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        let mut aug = self.clone();
        for (i, row) in aug.data.iter_mut().enumerate() {
            row.push(b[i].clone());
        }
        aug.cols += 1;
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.clone();
        for (i, row) in aug.data.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
        }
        aug.cols = 2 * n;
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(
            aug.data.into_iter().map(|r| r[n..].to_vec()).collect(),
            n,
        ))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.data[i][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.data.swap(p, c);
                det = -det;
            }
            let piv = m.data[c][c].clone();
            det *= &piv;
            for i in c + 1..n {
                if m.data[i][c].is_zero() {
                    continue;
                }
                let f = &m.data[i][c] / &piv;
                for j in c..n {
                    let t = &f * &m.data[c][j];
                    m.data[i][j] -= t;
                }
            }
        }
        det
    }
}

/// Row space in reduced echelon form, for repeated membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    dim: usize,
}

impl RowSpace {
    pub fn new(vectors: &[Vector], dim: usize) -> Self {
        if vectors.is_empty() {
            return Self {
                rows: Vec::new(),
                pivots: Vec::new(),
                dim,
            };
        }
        let mut m = Matrix::from_rows(vectors.to_vec(), dim);
        let pivots = m.rref();
        m.data.truncate(pivots.len());
        Self {
            rows: m.data,
            pivots,
            dim,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// What is left of `v` after eliminating the pivot coordinates.
    pub fn residual(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if r[c].is_zero() {
                continue;
            }
            let f = r[c].clone();
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    r[j] -= &f * a;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.residual(v).iter().all(Zero::is_zero)
    }
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), dim).rank()
}

/// Coefficients expressing `v` in terms of `vectors`, if possible.
pub fn in_span(vectors: &[Vector], v: &[Scalar]) -> Option<Vector> {
    if vectors.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    Matrix::from_rows(vectors.to_vec(), v.len()).transpose().solve(v)
}

pub fn same_span(a: &[Vector], b: &[Vector], dim: usize) -> bool {
    let ra = rank_of(a, dim);
    let rb = rank_of(b, dim);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && rank_of(&all, dim) == ra
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols)
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert_eq!(a.determinant(), q(1));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
    }

    #[test]
    fn solve_consistency() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[q(2), q(0)]).unwrap(), vec![q(1), q(1)]);
        let s = m(&[&[1, 1], &[1, 1]]);
        assert!(s.solve(&[q(1), q(2)]).is_none());
    }
}
