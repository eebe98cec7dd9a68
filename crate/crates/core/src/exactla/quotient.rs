use super::matrix::{vector, Matrix};
use super::scalar::{Field, Q};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// `X / X₀` realized on the echelon-pivot complement of `X₀`.
///
/// Quotient coordinates are the ambient coordinates that carry no pivot of
/// the killed subspace; `section` embeds them back as unit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace<F: Field = Q> {
    killed: Subspace<F>,
    complement: Vec<usize>,
    projection: Matrix<F>,
}

/// Builds the quotient of `F^ambient_dim` by `killed`.
pub fn quotient<F: Field>(ambient_dim: usize, killed: &Subspace<F>) -> Result<QuotientSpace<F>> {
    if killed.ambient_dim() != ambient_dim {
        return Err(Error::Shape(format!(
            "killed subspace lives in dimension {}, ambient dimension is {ambient_dim}",
            killed.ambient_dim()
        )));
    }
    Ok(QuotientSpace::new(killed.clone()))
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(killed: Subspace<F>) -> Self {
        let n = killed.ambient_dim();
        let complement = killed.complement_indices();
        let mut projection = Matrix::zeros(complement.len(), n);
        for (row, &c) in complement.iter().enumerate() {
            projection.set(row, c, F::one());
        }
        for (b, &p) in killed.basis().iter().zip(killed.pivots()) {
            // e_p ≡ e_p - b modulo the killed space, and e_p - b has no pivot coordinates.
            for (row, &c) in complement.iter().enumerate() {
                if !b[c].is_zero() {
                    projection.set(row, p, b[c].negated());
                }
            }
        }
        QuotientSpace { killed, complement, projection }
    }

    pub fn ambient_dim(&self) -> usize {
        self.killed.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn killed(&self) -> &Subspace<F> {
        &self.killed
    }

    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }

    /// `dim x ambient` matrix of `π`.
    pub fn projection(&self) -> &Matrix<F> {
        &self.projection
    }

    /// `ambient x dim` matrix embedding the quotient as the pivot complement.
    pub fn section(&self) -> Matrix<F> {
        let mut s = Matrix::zeros(self.ambient_dim(), self.dim());
        for (k, &c) in self.complement.iter().enumerate() {
            s.set(c, k, F::one());
        }
        s
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, u: &[F]) -> Vec<F> {
        assert_eq!(u.len(), self.dim());
        let mut v = vector::zeros(self.ambient_dim());
        for (x, &c) in u.iter().zip(&self.complement) {
            v[c] = x.clone();
        }
        v
    }

    /// The map `π_cod ∘ T ∘ section` when `T` sends the killed space of `self`
    /// into that of `cod`; otherwise the first killed basis vector that escapes.
    pub fn descend_map(&self, t: &Matrix<F>, cod: &QuotientSpace<F>) -> std::result::Result<Matrix<F>, Vec<F>> {
        assert_eq!(t.cols(), self.ambient_dim());
        assert_eq!(t.rows(), cod.ambient_dim());
        for b in self.killed.basis() {
            if !vector::is_zero(&cod.project(&t.mul_vec(b))) {
                return Err(b.clone());
            }
        }
        Ok(cod.projection.mul(&t.mul(&self.section())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::int(x)).collect()
    }

    #[test]
    fn kills_one_axis() {
        let qs = quotient(3, &Subspace::span(3, vec![q(&[1, 0, 0])])).unwrap();
        assert_eq!(qs.dim(), 2);
        assert_eq!(qs.project(&q(&[7, 1, 2])), q(&[1, 2]));
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let qs = quotient(3, &Subspace::<Q>::zero(3)).unwrap();
        assert_eq!(qs.projection(), &Matrix::identity(3));
    }

    #[test]
    fn paired_coordinates() {
        let killed = Subspace::span(4, vec![q(&[1, 1, 0, 0]), q(&[0, 0, 1, 1])]);
        let qs = quotient(4, &killed).unwrap();
        assert_eq!(qs.dim(), 2);
        let p1 = qs.project(&q(&[1, 0, 0, 0]));
        let p2 = qs.project(&q(&[0, 1, 0, 0]));
        assert_eq!(p1, vector::scale(&Q::int(-1), &p2));
        assert_eq!(qs.projection().mul(&qs.section()), Matrix::identity(2));
        for b in killed.basis() {
            assert!(vector::is_zero(&qs.project(b)));
        }
    }

    #[test]
    fn dimension_mismatch() {
        assert!(quotient(4, &Subspace::<Q>::zero(3)).is_err());
    }
}
