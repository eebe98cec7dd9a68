//! Best-effort recovery of the antipode from the algebra and coproduct.
//!
//! The unknown `S` enters `R₁(a⊗b) = Σ a₁ ⊗ S(a₂)b` linearly, so the
//! conditions `T₁R₁ = E·` and `R₁T₁(a⊗b) = (a⊗1)((ι⊗S)E)(1⊗b)` are linear
//! in the `n²` entries of `S`. They do not determine `S` on their own (on the
//! pair groupoid `S(u₁₂) = u₂₁ + βu₁₂` satisfies them for every `β`), so the
//! counit conditions `a₁S(a₂) = ε(E₁a)E₂`, `S(a₁)a₂ = E₁ε(aE₂)` and
//! `S(a) = ε_s(a₁)S(a₂)` are added; all of them are linear in `S`.

use super::idempotent::{solve_idempotent, SolveFailure};
use crate::error::{Error, Result};
use crate::exactla::{vector, Mat, Solution, Q};
use crate::finalg::{tensor, tensor_algebra, FiniteAlgebra};

/// `out += c · (a ⊗ b)`
fn tensor_pure_into(out: &mut [Q], c: &Q, a: &[Q], b: &[Q]) {
    vector::axpy(out, c, &tensor::pure(a, b));
}

/// Solves for `S`; fails unless the solution is unique.
pub fn solve_antipode(algebra: &FiniteAlgebra, coproduct: &Mat, counit: &[Q]) -> Result<Mat> {
    let n = algebra.dim();
    let nn = n * n;
    if coproduct.shape() != (nn, n) {
        return Err(Error::Shape(format!("coproduct must be {nn}x{n}")));
    }
    let square = tensor_algebra(algebra, algebra);
    let columns = coproduct.columns();
    let e = match solve_idempotent(&square, &columns).outcome {
        Ok(e) => e,
        Err(SolveFailure::NoSolution) => return Err(Error::NoSolution("no canonical idempotent".into())),
        Err(SolveFailure::NotUnique(k)) => {
            return Err(Error::NotUnique(format!("canonical idempotent has {k} free parameters")))
        }
    };
    let basis = |i: usize| algebra.basis_vector(i);
    let t1 = tensor::tensor_map(n, |i, j| {
        let mut out = vector::zeros(nn);
        for (pq, c) in columns[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (p, q) = tensor::legs(pq, n);
            tensor_pure_into(&mut out, c, &basis(p), &algebra.mul(&basis(q), &basis(j)));
        }
        out
    });
    let left_e = square.left_mult(&e);
    let eps = |v: &[Q]| vector::dot(counit, v);
    // ε_t(a) = ε(E₁a)E₂ and ε_s(a) = E₁ε(aE₂), independent of S
    let eps_t: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut out = vector::zeros(n);
            for (pq, c) in e.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = c * eps(&algebra.mul(&basis(pq / n), &basis(i)));
                vector::axpy(&mut out, &w, &basis(pq % n));
            }
            out
        })
        .collect();
    let eps_s: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut out = vector::zeros(n);
            for (pq, c) in e.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = c * eps(&algebra.mul(&basis(i), &basis(pq % n)));
                vector::axpy(&mut out, &w, &basis(pq / n));
            }
            out
        })
        .collect();

    // unknown (k, l): S(e_l) = e_k
    let mut blocks: Vec<Vec<Q>> = Vec::with_capacity(nn);
    for k in 0..n {
        for l in 0..n {
            let ek = basis(k);
            let r = tensor::tensor_map(n, |i, j| {
                let mut out = vector::zeros(nn);
                let tail = algebra.mul(&ek, &basis(j));
                for (pq, c) in columns[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    if pq % n == l {
                        tensor_pure_into(&mut out, c, &basis(pq / n), &tail);
                    }
                }
                out
            });
            let kern = tensor::tensor_map(n, |i, j| {
                let mut out = vector::zeros(nn);
                let tail = algebra.mul(&ek, &basis(j));
                for (pq, c) in e.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    if pq % n == l {
                        tensor_pure_into(&mut out, c, &algebra.mul(&basis(i), &basis(pq / n)), &tail);
                    }
                }
                out
            });
            let mut col = t1.mul(&r).entries().to_vec();
            col.extend(r.mul(&t1).sub(&kern).entries().iter().cloned());
            for i in 0..n {
                let mut left = vector::zeros(n);
                let mut right = vector::zeros(n);
                let mut absorb = vector::zeros(n);
                if i == l {
                    absorb = ek.clone();
                }
                for (pq, c) in columns[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let (p, q) = tensor::legs(pq, n);
                    if q == l {
                        vector::axpy(&mut left, c, &algebra.mul(&basis(p), &ek));
                        vector::axpy(&mut absorb, &-c, &algebra.mul(&eps_s[p], &ek));
                    }
                    if p == l {
                        vector::axpy(&mut right, c, &algebra.mul(&ek, &basis(q)));
                    }
                }
                col.extend(left);
                col.extend(right);
                col.extend(absorb);
            }
            blocks.push(col);
        }
    }
    let mut rhs = left_e.entries().to_vec();
    rhs.extend(std::iter::repeat_n(Q::ZERO, nn * nn));
    for i in 0..n {
        rhs.extend(eps_t[i].iter().cloned());
        rhs.extend(eps_s[i].iter().cloned());
        rhs.extend(std::iter::repeat_n(Q::ZERO, n));
    }
    let system = Mat::from_columns(rhs.len(), &blocks);
    match system.solve(&rhs) {
        Solution::Inconsistent => Err(Error::NoSolution("no antipode makes R₁ a generalized inverse of T₁".into())),
        Solution::Consistent { nullspace, .. } if !nullspace.is_empty() => {
            Err(Error::NotUnique(format!("the antipode equations leave {} free parameters", nullspace.len())))
        }
        Solution::Consistent { particular, .. } => Ok(Mat::from_fn(n, n, |k, l| particular[k * n + l].clone())),
    }
}
