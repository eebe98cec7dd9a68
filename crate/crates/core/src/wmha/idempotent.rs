//! The canonical idempotent `E` as the unique solution of a linear system.

use crate::exactla::{vector, QuotientSpace, RowEchelon, Subspace, Q};
use crate::finalg::FiniteAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveFailure {
    NoSolution,
    /// Dimension of the solution space of the homogeneous system.
    NotUnique(usize),
}

#[derive(Debug, Clone)]
pub struct IdempotentSolve {
    /// `Δ(A)(A ⊗ A)`
    pub left_range: Subspace,
    /// `(A ⊗ A)Δ(A)`
    pub right_range: Subspace,
    pub outcome: Result<Vec<Q>, SolveFailure>,
}

/// Solves for `E` with `E·v = v` on `V = Δ(A)(A⊗A)`, `w·E = w` on
/// `W = (A⊗A)Δ(A)`, and `E(A⊗A) ⊆ V`, `(A⊗A)E ⊆ W`.
///
/// In the unital case the two inclusions reduce to `E ∈ V ∩ W`.
pub fn solve_idempotent(square: &FiniteAlgebra, coproduct_columns: &[Vec<Q>]) -> IdempotentSolve {
    let nn = square.dim();
    let left_range = Subspace::span(
        nn,
        coproduct_columns
            .iter()
            .flat_map(|d| (0..nn).map(move |k| square.mul(d, &vector::unit(nn, k)))),
    );
    let right_range = Subspace::span(
        nn,
        coproduct_columns
            .iter()
            .flat_map(|d| (0..nn).map(move |k| square.mul(&vector::unit(nn, k), d))),
    );

    let mut system = RowEchelon::new(nn + 1);
    let mut consistent = true;
    let mut push = |row: Vec<Q>, system: &mut RowEchelon<Q>| {
        if let Some(p) = system.insert(row) {
            if p == nn {
                consistent = false;
            }
        }
    };

    for range in [&left_range, &right_range] {
        let proj = QuotientSpace::new(range.clone());
        for r in 0..proj.dim() {
            let mut row = proj.projection().row(r).to_vec();
            row.push(Q::ZERO);
            push(row, &mut system);
        }
    }

    for (range, on_left) in [(&left_range, true), (&right_range, false)] {
        for v in range.basis() {
            // column pq of the action: f_pq · v (or v · f_pq)
            let cols: Vec<Vec<Q>> = (0..nn)
                .map(|pq| {
                    let f = vector::unit(nn, pq);
                    if on_left {
                        square.mul(&f, v)
                    } else {
                        square.mul(v, &f)
                    }
                })
                .collect();
            for t in 0..nn {
                let mut row: Vec<Q> = cols.iter().map(|c| c[t].clone()).collect();
                if vector::is_zero(&row) && v[t].is_zero() {
                    continue;
                }
                row.push(v[t].clone());
                push(row, &mut system);
            }
        }
    }

    let outcome = if !consistent {
        Err(SolveFailure::NoSolution)
    } else if system.rank() < nn {
        Err(SolveFailure::NotUnique(nn - system.rank()))
    } else {
        let mut e = vector::zeros(nn);
        for (row, &p) in system.rows().iter().zip(system.pivots()) {
            e[p] = row[nn].clone();
        }
        Ok(e)
    };
    IdempotentSolve { left_range, right_range, outcome }
}
