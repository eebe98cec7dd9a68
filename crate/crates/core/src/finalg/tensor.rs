//! Coordinates on `A ⊗ A` use the index `p * n + q` for `e_p ⊗ e_q`.

use crate::exactla::{vector, Field, Mat, Q};

/// `a ⊗ b`
pub fn pure(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() { Q::ZERO } else { x * y });
        }
    }
    out
}

pub fn basis_pure(n: usize, m: usize, i: usize, j: usize) -> Vec<Q> {
    vector::unit(n * m, i * m + j)
}

/// `X[p][q]` = coefficient of `e_p ⊗ e_q`.
pub fn as_matrix(x: &[Q], n: usize, m: usize) -> Mat {
    assert_eq!(x.len(), n * m);
    Mat::from_fn(n, m, |p, q| x[p * m + q].clone())
}

pub fn from_matrix(x: &Mat) -> Vec<Q> {
    x.entries().to_vec()
}

/// `(M₁ ⊗ M₂) x`
pub fn apply_pair(m1: &Mat, m2: &Mat, x: &[Q]) -> Vec<Q> {
    let xm = as_matrix(x, m1.cols(), m2.cols());
    from_matrix(&m1.mul(&xm).mul(&m2.transpose()))
}

/// `M₁ ⊗ M₂` as a matrix on the tensor coordinates.
pub fn kron(m1: &Mat, m2: &Mat) -> Mat {
    m1.kron(m2)
}

/// `a ⊗ b ↦ b ⊗ a`
pub fn flip(x: &[Q], n: usize, m: usize) -> Vec<Q> {
    let mut out = vector::zeros(n * m);
    for p in 0..n {
        for q in 0..m {
            out[q * n + p] = x[p * m + q].clone();
        }
    }
    out
}

pub fn flip_matrix(n: usize) -> Mat {
    let mut f = Mat::zeros(n * n, n * n);
    for p in 0..n {
        for q in 0..n {
            f.set(q * n + p, p * n + q, Q::ONE);
        }
    }
    f
}

/// `(ω ⊗ ι) x`
pub fn contract_left(omega: &[Q], x: &[Q], m: usize) -> Vec<Q> {
    let mut out: Vec<Q> = vector::zeros(m);
    for (p, w) in omega.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        for q in 0..m {
            out[q].add_product(w, &x[p * m + q]);
        }
    }
    out
}

/// `(ι ⊗ ω) x`
pub fn contract_right(x: &[Q], omega: &[Q], n: usize) -> Vec<Q> {
    let m = omega.len();
    (0..n).map(|p| vector::dot(&x[p * m..(p + 1) * m], omega)).collect()
}

/// Matrix of `a ⊗ b ↦ M(a ⊗ b)` built column by column.
pub fn tensor_map(n: usize, mut f: impl FnMut(usize, usize) -> Vec<Q>) -> Mat {
    let mut cols = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cols.push(f(i, j));
        }
    }
    Mat::from_columns(n * n, &cols)
}

/// Splits a tensor-square index into its two legs.
pub fn legs(index: usize, n: usize) -> (usize, usize) {
    (index / n, index % n)
}
