//! Exact linear algebra over the rationals: matrices, subspaces in canonical
//! echelon form, quotients on the pivot complement, bilinear forms and
//! generalized inverses with their induced quotient pairings.

pub mod bilinear;
pub mod echelon;
pub mod geninv;
pub mod matrix;
pub mod quotient;
pub mod scalar;
pub mod subspace;

pub use bilinear::{gamma_induced_pairing, BilinearForm, InducedForm};
pub use echelon::RowEchelon;
pub use geninv::{
    adjointness_witness, check_generalized_inverse, induced_quotient_pairings, GeneralizedInversePair,
    GinvVerdict, InducedPairings,
};
pub use matrix::{vector, Mat, Matrix, Solution};
pub use quotient::{quotient, QuotientSpace};
pub use scalar::{Field, ParseQError, Q};
pub use subspace::Subspace;

/// Solves `coeffs · x = rhs` exactly.
pub fn solve_linear(coeffs: &Mat, rhs: &[Q]) -> crate::error::Result<Solution> {
    if coeffs.rows() != rhs.len() {
        return Err(crate::error::Error::Shape(format!(
            "{} equations but right-hand side of length {}",
            coeffs.rows(),
            rhs.len()
        )));
    }
    Ok(coeffs.solve(rhs))
}
