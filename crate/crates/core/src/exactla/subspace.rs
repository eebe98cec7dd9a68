use super::echelon::RowEchelon;
use super::matrix::{vector, Matrix};
use super::scalar::{Field, Q};

/// A subspace of `F^n` stored by its reduced row echelon basis.
///
/// The basis is canonical, so derived equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: Field = Q> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| vector::unit(ambient, i)))
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F>>,
    {
        let mut e = RowEchelon::new(ambient);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: RowEchelon<F>) -> Self {
        let ambient = e.width();
        let (basis, pivots) = e.into_sorted();
        Subspace { ambient, basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::span(m.rows(), m.columns())
    }

    /// Kernel of `m`.
    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::span(m.cols(), m.nullspace())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient coordinates not carrying a pivot; their unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    /// `v` minus its component along the echelon basis, i.e. `v` reduced modulo the subspace.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].negated();
            vector::axpy(&mut r, &c, b);
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector does not live in the ambient space");
        vector::is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn element(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vector::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            vector::axpy(&mut v, c, b);
        }
        v
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// `dim x ambient` matrix reading off echelon coordinates (valid on the subspace).
    pub fn coordinate_matrix(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(), self.ambient);
        for (k, &p) in self.pivots.iter().enumerate() {
            m.set(k, p, F::one());
        }
        m
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// First basis vector of `self` that is not in `other`.
    pub fn first_outside(&self, other: &Self) -> Option<&[F]> {
        self.basis.iter().find(|b| !other.contains(b)).map(Vec::as_slice)
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let neg: Vec<Vec<F>> = other.basis.iter().map(|b| vector::scale(&F::one().negated(), b)).collect();
        let mut cols = self.basis.clone();
        cols.extend(neg);
        let m = Matrix::from_columns(self.ambient, &cols);
        let k = self.dim();
        Self::span(
            self.ambient,
            m.nullspace().into_iter().map(|c| self.element(&c[..k])),
        )
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::span(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::int(x)).collect()
    }

    #[test]
    fn membership_and_coords() {
        let s = Subspace::span(3, vec![q(&[1, 2, 0]), q(&[0, 0, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&q(&[2, 4, 5])));
        assert!(!s.contains(&q(&[1, 0, 0])));
        let c = s.coords(&q(&[2, 4, 5])).unwrap();
        assert_eq!(s.element(&c), q(&[2, 4, 5]));
        assert_eq!(s.complement_indices(), vec![1]);
    }

    #[test]
    fn equality_is_canonical() {
        let a = Subspace::span(3, vec![q(&[1, 1, 0]), q(&[0, 1, 1])]);
        let b = Subspace::span(3, vec![q(&[1, 2, 1]), q(&[1, 0, -1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, vec![q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![q(&[0, 1, 0]), q(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, vec![q(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }
}
