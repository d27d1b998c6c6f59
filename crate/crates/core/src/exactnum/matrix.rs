use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::scalar::{Q, Scalar, ScalarJson};
use crate::error::{Error, Result};

/// Row-major dense matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

// row count above which products are split over rayon workers
const PAR_ROWS: usize = 64;

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Scalar::one())
    }

    pub fn scalar(n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular input")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<Scalar>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(Scalar::is_rational)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let s = if self.rows == 0 { Scalar::zero() } else { self[(0, 0)].clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &s } else { &Scalar::zero() };
                if &self[(i, j)] != want {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_multiple_of_identity().is_some_and(|s| s.is_one())
    }

    fn check_same(&self, o: &Self, what: &str) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o, "add")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o, "sub")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("dimension mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("dimension mismatch")
    }

    pub fn add_assign(&mut self, o: &Self) {
        assert!(self.rows == o.rows && self.cols == o.cols, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// `self += s·o`
    pub fn add_scaled(&mut self, s: &Scalar, o: &Self) {
        assert!(self.rows == o.rows && self.cols == o.cols, "dimension mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                a.add_mul(s, b);
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_one() {
            return self.clone();
        }
        let data = self.data.iter().map(|a| if a.is_zero() { Scalar::zero() } else { a * s }).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        // sparse rows of the right factor, so zero entries cost nothing
        let o_rows: Vec<Vec<(usize, &Scalar)>> = (0..o.rows)
            .map(|k| o.row(k).iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let row_product = |i: usize| -> Vec<Scalar> {
            let mut acc = vec![Scalar::zero(); o.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &o_rows[k] {
                    acc[j].add_mul(a, b);
                }
            }
            acc
        };
        let rows: Vec<Vec<Scalar>> = if self.rows >= PAR_ROWS {
            (0..self.rows).into_par_iter().map(row_product).collect()
        } else {
            (0..self.rows).map(row_product).collect()
        };
        Ok(DenseMatrix { rows: self.rows, cols: o.cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("dimension mismatch")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = &o[(k, l)];
                        if !b.is_zero() {
                            m[(i * o.rows + k, j * o.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
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
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let prow: Vec<(usize, Scalar)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = -&m[(i, c)];
                for (j, v) in &prow {
                    let idx = i * m.cols + j;
                    m.data[idx].add_mul(&f, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[(r, free)];
            }
            out.push(v);
        }
        out
    }

    /// Solves `A x = b` for a square invertible `A`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::Dimension("solve needs square A and matching b".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, n + 1, |i, j| if j < n { self[(i, j)].clone() } else { b[i].clone() });
        let (m, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok((0..n).map(|i| m[(i, n)].clone()).collect())
    }

    /// Solves `A X = B` column by column for full-column-rank `A` (any shape),
    /// failing if some column of `B` is outside the range.
    pub fn solve_columns(&self, b: &Self) -> Result<Self> {
        if b.rows != self.rows {
            return Err(Error::Dimension("solve_columns".into()));
        }
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + b.cols, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[(i, j - n)].clone()
            }
        });
        let (m, piv) = aug.rref();
        let lead: Vec<usize> = piv.iter().copied().filter(|&p| p < n).collect();
        if lead.len() < n || piv.len() > n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, b.cols, |i, j| m[(i, n + j)].clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square".into()));
        }
        self.solve_columns(&Self::identity(self.rows))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = -(&m[(i, c)] * &inv);
                for j in c..n {
                    let v = m[(c, j)].clone();
                    if !v.is_zero() {
                        m.data[i * n + j].add_mul(&f, &v);
                    }
                }
            }
        }
        det
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    pub fn to_json(&self) -> Vec<Vec<ScalarJson>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Scalar::to_json).collect()).collect()
    }

    pub fn from_json(rows: &[Vec<ScalarJson>]) -> Result<Self> {
        let v: Result<Vec<Vec<Scalar>>> =
            rows.iter().map(|r| r.iter().map(Scalar::from_json).collect()).collect();
        Self::from_rows(v?)
    }

    pub fn map_q(&self, f: impl Fn(&Q) -> Q) -> Option<Self> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(Scalar::from_q(f(x.as_rational()?)));
        }
        Some(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::q;

    #[test]
    fn commutator_with_self_vanishes() {
        let m = DenseMatrix::from_i64(&[vec![1, 2], vec![3, 4]]);
        assert!(m.commutator(&m).is_zero());
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(DenseMatrix::identity(2).kron(&DenseMatrix::identity(3)), DenseMatrix::identity(6));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = DenseMatrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn det_and_inverse() {
        let m = DenseMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det(), Scalar::int(4));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(inv[(0, 0)], Scalar::from_q(q(3, 4)));
    }

    #[test]
    fn solve_over_sqrt2() {
        let r = Scalar::sqrt2();
        let a = DenseMatrix::from_rows(vec![
            vec![Scalar::one(), r.clone()],
            vec![r.clone(), Scalar::int(3)],
        ])
        .unwrap();
        let b = vec![Scalar::one(), Scalar::zero()];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }
}
