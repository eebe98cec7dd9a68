use serde::{Deserialize, Serialize};

use super::matrix::{vector, Mat};
use super::quotient::QuotientSpace;
use super::scalar::Q;
use super::subspace::Subspace;
use crate::error::{Error, Result, Side};

/// `⟨x, y⟩ = xᵀ G y` for a `left_dim x right_dim` gram matrix `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BilinearForm {
    gram: Mat,
}

/// A form pushed down to quotients on both sides.
#[derive(Debug, Clone)]
pub struct InducedForm {
    pub form: BilinearForm,
    pub left: QuotientSpace,
    pub right: QuotientSpace,
}

impl BilinearForm {
    pub fn new(gram: Mat) -> Self {
        BilinearForm { gram }
    }

    pub fn dot(n: usize) -> Self {
        BilinearForm { gram: Mat::identity(n) }
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn into_gram(self) -> Mat {
        self.gram
    }

    pub fn left_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn right_dim(&self) -> usize {
        self.gram.cols()
    }

    pub fn eval(&self, x: &[Q], y: &[Q]) -> Q {
        vector::dot(&self.gram.vec_mul(x), y)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_square() && self.gram.rank() == self.gram.rows()
    }

    /// `{x : ⟨x, ·⟩ = 0}`
    pub fn left_radical(&self) -> Subspace {
        Subspace::span(self.left_dim(), self.gram.left_nullspace())
    }

    /// `{y : ⟨·, y⟩ = 0}`
    pub fn right_radical(&self) -> Subspace {
        Subspace::span(self.right_dim(), self.gram.nullspace())
    }

    /// The form induced on `X / killed_left × X' / killed_right`, provided it
    /// vanishes whenever either argument is killed.
    pub fn descend(&self, killed_left: &Subspace, killed_right: &Subspace) -> Result<InducedForm> {
        if killed_left.ambient_dim() != self.left_dim() || killed_right.ambient_dim() != self.right_dim() {
            return Err(Error::Shape(format!(
                "killed subspaces of dimensions ({}, {}) for a {}x{} form",
                killed_left.ambient_dim(),
                killed_right.ambient_dim(),
                self.left_dim(),
                self.right_dim()
            )));
        }
        if let Some(b) = killed_left.basis().iter().find(|b| !vector::is_zero(&self.gram.vec_mul(b))) {
            return Err(Error::DoesNotDescend { side: Side::Left, witness: b.clone() });
        }
        if let Some(b) = killed_right.basis().iter().find(|b| !vector::is_zero(&self.gram.mul_vec(b))) {
            return Err(Error::DoesNotDescend { side: Side::Right, witness: b.clone() });
        }
        let left = QuotientSpace::new(killed_left.clone());
        let right = QuotientSpace::new(killed_right.clone());
        let gram = left.section().transpose().mul(&self.gram).mul(&right.section());
        Ok(InducedForm { form: BilinearForm::new(gram), left, right })
    }
}

/// Descends `gamma` through the given killed subspaces.
pub fn gamma_induced_pairing(gamma: &BilinearForm, killed_left: &Subspace, killed_right: &Subspace) -> Result<InducedForm> {
    gamma.descend(killed_left, killed_right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Q> {
        vector::unit(n, i)
    }

    #[test]
    fn nothing_killed() {
        let g = BilinearForm::dot(3);
        let ind = gamma_induced_pairing(&g, &Subspace::zero(3), &Subspace::zero(3)).unwrap();
        assert_eq!(ind.form, g);
    }

    #[test]
    fn descends_to_one_dimension() {
        let g = BilinearForm::new(Mat::from_ints(&[[0, 0], [0, 1]]));
        let k = Subspace::span(2, vec![e(2, 0)]);
        let ind = gamma_induced_pairing(&g, &k, &k).unwrap();
        assert_eq!(ind.form.gram(), &Mat::from_ints(&[[1]]));
        for x in 0..2 {
            for y in 0..2 {
                let (px, py) = (ind.left.project(&e(2, x)), ind.right.project(&e(2, y)));
                assert_eq!(ind.form.eval(&px, &py), g.eval(&e(2, x), &e(2, y)));
            }
        }
    }

    #[test]
    fn dot_product_does_not_descend() {
        let g = BilinearForm::dot(2);
        let err = gamma_induced_pairing(&g, &Subspace::span(2, vec![e(2, 0)]), &Subspace::zero(2)).unwrap_err();
        match err {
            Error::DoesNotDescend { side, witness } => {
                assert_eq!(side, Side::Left);
                assert_eq!(witness, e(2, 0));
            }
            other => panic!("unexpected {other}"),
        }
    }
}
