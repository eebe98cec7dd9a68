use std::fmt;

use serde::{Deserialize, Serialize};

use super::echelon::RowEchelon;
use super::scalar::{Field, Q};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field = Q> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type Mat = Matrix<Q>;

/// Result of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<F: Field = Q> {
    Consistent { particular: Vec<F>, nullspace: Vec<Vec<F>> },
    Inconsistent,
}

impl<F: Field> Solution<F> {
    pub fn particular(&self) -> Option<&[F]> {
        match self {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    /// The particular solution when the system has exactly one solution.
    pub fn unique(self) -> Option<Vec<F>> {
        match self {
            Solution::Consistent { particular, nullspace } if nullspace.is_empty() => Some(particular),
            _ => None,
        }
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds from column vectors of common length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[F]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix: `vᵀ M`.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = vec![F::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                out[j].add_product(a, b);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.times(c)).collect() }
    }

    /// Kronecker product; row index `(i, k) ↦ i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a.times(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.shape(), other.shape());
        let k = self.data.iter().zip(&other.data).position(|(a, b)| a != b)?;
        Some((k / self.cols, k % self.cols))
    }

    /// First column where the two matrices differ.
    pub fn first_differing_column(&self, other: &Self) -> Option<usize> {
        assert_eq!(self.shape(), other.shape());
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }

    fn row_echelon(&self) -> RowEchelon<F> {
        let mut e = RowEchelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    /// Reduced row echelon form (zero rows dropped) and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, pivots) = self.row_echelon().into_sorted();
        let m = Matrix { rows: rows.len(), cols: self.cols, data: rows.into_iter().flatten().collect() };
        (m, pivots)
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots, self.cols)
    }

    /// Basis of `{y : yᵀ A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<F>> {
        self.transpose().nullspace()
    }

    pub fn solve(&self, rhs: &[F]) -> Solution<F> {
        assert_eq!(self.rows, rhs.len(), "right-hand side length mismatch");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut particular = vec![F::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            particular[p] = r.get(k, self.cols).clone();
        }
        let coeff = r.select_columns(&(0..self.cols).collect::<Vec<_>>());
        Solution::Consistent { particular, nullspace: nullspace_from_rref(&coeff, &pivots, self.cols) }
    }

    /// Solves `A X = B` column by column; `None` if any column is inconsistent.
    /// Free variables are set to zero.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut out = Self::zeros(self.cols, rhs.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                out.set(p, j, r.get(k, self.cols + j).clone());
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Self::identity(self.rows))?;
        // solve_matrix zero-fills free variables, so singular inputs must be rejected explicitly.
        (self.mul(&x) == Self::identity(self.rows)).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }
}

fn nullspace_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize], cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = r.get(k, free).negated();
            }
            v
        })
        .collect()
}

impl Matrix<Q> {
    /// Integer matrix literal, handy in tests.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Matrix::from_fn(rows.len(), C, |i, j| Q::int(rows[i][j]))
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix<Q> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<Q> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Q>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("ragged matrix rows"))
    }
}

/// Plain vector helpers.
pub mod vector {
    use super::Field;

    pub fn zeros<F: Field>(n: usize) -> Vec<F> {
        vec![F::zero(); n]
    }

    pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
        let mut v = zeros(n);
        v[i] = F::one();
        v
    }

    pub fn is_zero<F: Field>(v: &[F]) -> bool {
        v.iter().all(F::is_zero)
    }

    pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
    }

    pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
    }

    pub fn scale<F: Field>(c: &F, a: &[F]) -> Vec<F> {
        a.iter().map(|x| c.times(x)).collect()
    }

    /// `y += c * x`
    pub fn axpy<F: Field>(y: &mut [F], c: &F, x: &[F]) {
        if c.is_zero() {
            return;
        }
        for (a, b) in y.iter_mut().zip(x) {
            a.add_product(c, b);
        }
    }

    pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
        let mut acc = F::zero();
        for (x, y) in a.iter().zip(b) {
            acc.add_product(x, y);
        }
        acc
    }

    pub fn first_nonzero<F: Field>(v: &[F]) -> Option<usize> {
        v.iter().position(|x| !x.is_zero())
    }

    /// Scales so that the first nonzero coordinate is one.
    pub fn normalize<F: Field>(v: &[F]) -> Vec<F> {
        match first_nonzero(v) {
            Some(i) => scale(&v[i].recip().expect("nonzero"), v),
            None => v.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let s = Matrix::<Q>::identity(2).solve(&q(&[3, 5]));
        assert_eq!(s, Solution::Consistent { particular: q(&[3, 5]), nullspace: vec![] });
    }

    #[test]
    fn solve_zero_map() {
        let s = Matrix::<Q>::zeros(2, 2).solve(&q(&[0, 0]));
        let Solution::Consistent { particular, nullspace } = s else { panic!("inconsistent") };
        assert_eq!(particular, q(&[0, 0]));
        assert_eq!(nullspace.len(), 2);
        assert_eq!(Matrix::from_columns(2, &nullspace).rank(), 2);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_ints(&[[1, 1], [2, 2]]);
        assert_eq!(a.solve(&q(&[1, 3])), Solution::Inconsistent);
    }

    #[test]
    fn inverse_and_rank() {
        let a = Matrix::from_ints(&[[2, 1, 0], [1, 1, 0], [0, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(Matrix::from_ints(&[[1, 2], [2, 4]]).inverse(), None);
        assert_eq!(Matrix::from_ints(&[[1, 2], [2, 4], [0, 1]]).rank(), 2);
    }

    #[test]
    fn kron_indexing() {
        let a = Matrix::from_ints(&[[1, 2], [3, 4]]);
        let b = Matrix::from_ints(&[[0, 1], [1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(2, 1), &Q::int(3));
        assert_eq!(k.get(1, 2), &Q::int(2));
    }

    #[test]
    fn serde_roundtrip() {
        let a = Matrix::from_fn(2, 3, |i, j| Q::new(i as i64 + 1, j as i64 + 2));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), a);
    }
}
