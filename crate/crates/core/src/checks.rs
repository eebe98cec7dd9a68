//! Small helpers shared by the verifiers.

use crate::exactla::{Mat, Q};
use crate::finalg::tensor;
use crate::report::{Outcome, Witness};
use crate::wmha::WeakHopf;

pub(crate) fn fail(indices: Vec<usize>, detail: impl Into<String>) -> Outcome {
    Err(Witness::new(indices, detail))
}

pub(crate) fn check_all<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Outcome) -> Outcome {
    for x in items {
        f(x)?;
    }
    Ok(())
}

/// Compares two maps on `A⊗A`, reporting the first basis tensor where they differ.
pub(crate) fn same_on_square(w: &WeakHopf, what: &str, lhs: &Mat, rhs: &Mat) -> Outcome {
    match lhs.first_differing_column(rhs) {
        None => Ok(()),
        Some(c) => {
            let (p, q) = tensor::legs(c, w.dim());
            fail(vec![p, q], format!("{what} differs on {}", w.tensor_label(c)))
        }
    }
}

pub(crate) fn same_on_basis(w: &WeakHopf, what: &str, lhs: &Mat, rhs: &Mat) -> Outcome {
    match lhs.first_differing_column(rhs) {
        None => Ok(()),
        Some(c) => fail(vec![c], format!("{what} differs on {}", w.label(c))),
    }
}

pub(crate) fn support(v: &[Q]) -> Vec<usize> {
    (0..v.len()).filter(|&i| !v[i].is_zero()).collect()
}
