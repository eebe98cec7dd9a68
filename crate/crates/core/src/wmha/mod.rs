//! Weak (multiplier) Hopf algebras given by structure constants, together
//! with everything derived from them: the canonical idempotent, canonical
//! maps and their generalized inverses, source and target algebras and the
//! distinguished functionals on them.

pub mod antipode;
pub mod idempotent;
pub mod verify;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{vector, Field, Mat, Subspace, Q};
use crate::finalg::tensor::{self, pure};
use crate::finalg::{tensor_algebra, AlgebraJson, FiniteAlgebra};

pub use idempotent::{solve_idempotent, IdempotentSolve, SolveFailure};
pub use verify::verify_wmha;

/// Coproduct term `c · e_p ⊗ e_q`.
pub type Term = (usize, usize, Q);

#[derive(Debug, Clone)]
pub struct WeakHopf {
    name: String,
    algebra: FiniteAlgebra,
    square: FiniteAlgebra,
    unit: Vec<Q>,
    coproduct: Mat,
    terms: Vec<Vec<Term>>,
    counit: Vec<Q>,
    antipode: Mat,
    antipode_inv: Mat,
    solve: IdempotentSolve,
    idempotent: Vec<Q>,
    canonical: [Mat; 4],
    inverses: [Mat; 4],
    kernel_idems: [Vec<Q>; 4],
    eps_s: Mat,
    eps_t: Mat,
    base_b: Subspace,
    base_c: Subspace,
    mu_b: Option<Vec<Q>>,
    mu_c: Option<Vec<Q>>,
}

/// Serialized form: the algebra block plus coproduct, counit and antipode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WmhaJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    /// `Δ(e_i) = Σ c e_j ⊗ e_k` as `[i, j, k, c]`.
    pub coproduct: Vec<(usize, usize, usize, Q)>,
    pub counit: Vec<Q>,
    pub antipode: Mat,
}

impl WeakHopf {
    /// Builds the structure and all derived data, solving for `E`.
    pub fn new(name: impl Into<String>, algebra: FiniteAlgebra, coproduct: Mat, counit: Vec<Q>, antipode: Mat) -> Result<Self> {
        Self::build(name.into(), algebra, coproduct, counit, antipode, None)
    }

    /// As [`WeakHopf::new`] but with a prescribed `E`; the solver still runs
    /// and its disagreement shows up in verification.
    pub fn with_idempotent(
        name: impl Into<String>,
        algebra: FiniteAlgebra,
        coproduct: Mat,
        counit: Vec<Q>,
        antipode: Mat,
        idempotent: Vec<Q>,
    ) -> Result<Self> {
        Self::build(name.into(), algebra, coproduct, counit, antipode, Some(idempotent))
    }

    fn build(
        name: String,
        algebra: FiniteAlgebra,
        coproduct: Mat,
        counit: Vec<Q>,
        antipode: Mat,
        forced: Option<Vec<Q>>,
    ) -> Result<Self> {
        let n = algebra.dim();
        if coproduct.shape() != (n * n, n) {
            return Err(Error::Shape(format!("coproduct must be {}x{n}, got {}x{}", n * n, coproduct.rows(), coproduct.cols())));
        }
        if counit.len() != n {
            return Err(Error::Shape(format!("counit has {} entries for dimension {n}", counit.len())));
        }
        if antipode.shape() != (n, n) {
            return Err(Error::Shape(format!("antipode must be {n}x{n}, got {}x{}", antipode.rows(), antipode.cols())));
        }
        let unit = algebra
            .unit()
            .ok_or_else(|| Error::Structure("the algebra has no unit; only unital algebras are supported".into()))?;
        let antipode_inv = antipode
            .inverse()
            .ok_or_else(|| Error::Structure("the antipode is not invertible".into()))?;
        let square = tensor_algebra(&algebra, &algebra);
        let columns = coproduct.columns();
        let terms: Vec<Vec<Term>> = columns
            .iter()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(pq, c)| (pq / n, pq % n, c.clone()))
                    .collect()
            })
            .collect();
        let solve = solve_idempotent(&square, &columns);
        let idempotent = match (forced, &solve.outcome) {
            (Some(e), _) => {
                if e.len() != n * n {
                    return Err(Error::Shape(format!("E must have {} coordinates", n * n)));
                }
                e
            }
            (None, Ok(e)) => e.clone(),
            (None, Err(SolveFailure::NoSolution)) => {
                return Err(Error::NoSolution("no idempotent E with E(A⊗A) = Δ(A)(A⊗A) and (A⊗A)E = (A⊗A)Δ(A)".into()))
            }
            (None, Err(SolveFailure::NotUnique(k))) => {
                return Err(Error::NotUnique(format!("the equations for E leave {k} free parameters")))
            }
        };

        let mut w = WeakHopf {
            name,
            algebra,
            square,
            unit,
            coproduct,
            terms,
            counit,
            antipode,
            antipode_inv,
            solve,
            idempotent,
            canonical: std::array::from_fn(|_| Mat::zeros(0, 0)),
            inverses: std::array::from_fn(|_| Mat::zeros(0, 0)),
            kernel_idems: Default::default(),
            eps_s: Mat::zeros(0, 0),
            eps_t: Mat::zeros(0, 0),
            base_b: Subspace::zero(n),
            base_c: Subspace::zero(n),
            mu_b: None,
            mu_c: None,
        };
        w.canonical = [w.build_t(1), w.build_t(2), w.build_t(3), w.build_t(4)];
        w.inverses = [w.build_r(1), w.build_r(2), w.build_r(3), w.build_r(4)];
        let (s, si, id) = (&w.antipode, &w.antipode_inv, Mat::identity(n));
        let e = &w.idempotent;
        w.kernel_idems = [
            tensor::apply_pair(&id, s, e),
            tensor::apply_pair(s, &id, e),
            tensor::apply_pair(&id, si, e),
            tensor::apply_pair(si, &id, e),
        ];
        w.eps_s = Mat::from_columns(n, &(0..n).map(|i| w.sweedler_product(i, true)).collect::<Vec<_>>());
        w.eps_t = Mat::from_columns(n, &(0..n).map(|i| w.sweedler_product(i, false)).collect::<Vec<_>>());
        w.base_b = Subspace::column_space(&w.eps_s);
        w.base_c = Subspace::column_space(&w.eps_t);
        w.mu_b = w.solve_mu(true);
        w.mu_c = w.solve_mu(false);
        Ok(w)
    }

    pub fn from_json(j: &WmhaJson) -> Result<Self> {
        let algebra = FiniteAlgebra::from_json(&j.algebra)?;
        let n = algebra.dim();
        let mut coproduct = Mat::zeros(n * n, n);
        for (t, (i, p, q, c)) in j.coproduct.iter().enumerate() {
            if *i >= n || *p >= n || *q >= n {
                return Err(Error::Parse {
                    location: format!("coproduct[{t}]"),
                    message: format!("index out of range for dimension {n}"),
                });
            }
            *coproduct.entry_mut(p * n + q, *i) += c;
        }
        if j.counit.len() != n {
            return Err(Error::Parse { location: "counit".into(), message: format!("expected {n} entries, got {}", j.counit.len()) });
        }
        if j.antipode.shape() != (n, n) {
            return Err(Error::Parse {
                location: "antipode".into(),
                message: format!("expected a {n}x{n} matrix, got {}x{}", j.antipode.rows(), j.antipode.cols()),
            });
        }
        Self::new(j.name.clone().unwrap_or_default(), algebra, coproduct, j.counit.clone(), j.antipode.clone())
    }

    pub fn to_json(&self) -> WmhaJson {
        let n = self.dim();
        let mut coproduct = Vec::new();
        for (i, ts) in self.terms.iter().enumerate() {
            for (p, q, c) in ts {
                coproduct.push((i, *p, *q, c.clone()));
            }
        }
        let _ = n;
        WmhaJson {
            name: (!self.name.is_empty()).then(|| self.name.clone()),
            algebra: self.algebra.to_json(),
            coproduct,
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
        }
    }

    /// Same structure with the antipode replaced (derived data recomputed).
    pub fn with_antipode(&self, antipode: Mat) -> Result<Self> {
        Self::new(self.name.clone(), self.algebra.clone(), self.coproduct.clone(), self.counit.clone(), antipode)
    }

    pub fn with_counit(&self, counit: Vec<Q>) -> Result<Self> {
        Self::new(self.name.clone(), self.algebra.clone(), self.coproduct.clone(), counit, self.antipode.clone())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn build_t(&self, k: usize) -> Mat {
        let n = self.dim();
        let a = &self.algebra;
        tensor::tensor_map(n, |i, j| {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            match k {
                // Δ(a)(1⊗b)
                1 => self.sum_terms(i, |p| a.basis_vector(p), |q| a.mul(&a.basis_vector(q), &ej)),
                // (a⊗1)Δ(b)
                2 => self.sum_terms(j, |p| a.mul(&ei, &a.basis_vector(p)), |q| a.basis_vector(q)),
                // (1⊗b)Δ(a)
                3 => self.sum_terms(i, |p| a.basis_vector(p), |q| a.mul(&ej, &a.basis_vector(q))),
                // Δ(b)(a⊗1)
                _ => self.sum_terms(j, |p| a.mul(&a.basis_vector(p), &ei), |q| a.basis_vector(q)),
            }
        })
    }

    fn build_r(&self, k: usize) -> Mat {
        let n = self.dim();
        let a = &self.algebra;
        let s = |q: usize| self.antipode.column(q);
        let si = |q: usize| self.antipode_inv.column(q);
        tensor::tensor_map(n, |i, j| {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            match k {
                // a₁ ⊗ S(a₂)b
                1 => self.sum_terms(i, |p| a.basis_vector(p), |q| a.mul(&s(q), &ej)),
                // aS(b₁) ⊗ b₂
                2 => self.sum_terms(j, |p| a.mul(&ei, &s(p)), |q| a.basis_vector(q)),
                // a₁ ⊗ bS⁻¹(a₂)
                3 => self.sum_terms(i, |p| a.basis_vector(p), |q| a.mul(&ej, &si(q))),
                // S⁻¹(b₁)a ⊗ b₂
                _ => self.sum_terms(j, |p| a.mul(&si(p), &ei), |q| a.basis_vector(q)),
            }
        })
    }

    /// `Σ c · left(p) ⊗ right(q)` over the terms of `Δ(e_i)`.
    pub fn sum_terms(&self, i: usize, left: impl Fn(usize) -> Vec<Q>, right: impl Fn(usize) -> Vec<Q>) -> Vec<Q> {
        let n = self.dim();
        let mut out = vector::zeros(n * n);
        for (p, q, c) in &self.terms[i] {
            vector::axpy(&mut out, c, &pure(&left(*p), &right(*q)));
        }
        out
    }

    /// `Σ S(a₁)a₂` when `source`, else `Σ a₁S(a₂)`, for `a = e_i`.
    fn sweedler_product(&self, i: usize, source: bool) -> Vec<Q> {
        let a = &self.algebra;
        let mut out = vector::zeros(self.dim());
        for (p, q, c) in &self.terms[i] {
            let v = if source {
                a.mul(&self.antipode.column(*p), &a.basis_vector(*q))
            } else {
                a.mul(&a.basis_vector(*p), &self.antipode.column(*q))
            };
            vector::axpy(&mut out, c, &v);
        }
        out
    }

    /// Solves `(μ_B ⊗ ι)E = 1` over `B` (or `(ι ⊗ μ_C)E = 1` over `C`).
    /// The result is an ambient covector vanishing on the pivot complement.
    fn solve_mu(&self, source: bool) -> Option<Vec<Q>> {
        let n = self.dim();
        let m = tensor::as_matrix(&self.idempotent, n, n);
        let (base, legs) = if source { (&self.base_b, m) } else { (&self.base_c, m.transpose()) };
        // columns of `legs` should lie in `base`; leg row k pairs with base vector k
        let coords = base.coordinate_matrix().mul(&legs);
        if base.basis_matrix().mul(&coords) != legs {
            return None;
        }
        // Σ_k μ_k · coords[k] = 1
        let sol = coords.transpose().solve(&self.unit).unique()?;
        let mut mu = vector::zeros(n);
        for (k, &p) in base.pivots().iter().enumerate() {
            mu[p] = sol[k].clone();
        }
        Some(mu)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    /// `A ⊗ A` with the componentwise product.
    pub fn square(&self) -> &FiniteAlgebra {
        &self.square
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    /// `n² x n`, column `i` is `Δ(e_i)`.
    pub fn coproduct(&self) -> &Mat {
        &self.coproduct
    }

    pub fn coproduct_terms(&self, i: usize) -> &[Term] {
        &self.terms[i]
    }

    pub fn delta(&self, a: &[Q]) -> Vec<Q> {
        self.coproduct.mul_vec(a)
    }

    pub fn counit(&self) -> &[Q] {
        &self.counit
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &Mat {
        &self.antipode_inv
    }

    pub fn s(&self, a: &[Q]) -> Vec<Q> {
        self.antipode.mul_vec(a)
    }

    pub fn s_inv(&self, a: &[Q]) -> Vec<Q> {
        self.antipode_inv.mul_vec(a)
    }

    pub fn idempotent(&self) -> &[Q] {
        &self.idempotent
    }

    pub fn idempotent_solve(&self) -> &IdempotentSolve {
        &self.solve
    }

    /// `T_k` for `k = 1..=4`.
    pub fn t(&self, k: usize) -> &Mat {
        &self.canonical[k - 1]
    }

    /// `R_k` for `k = 1..=4`.
    pub fn r(&self, k: usize) -> &Mat {
        &self.inverses[k - 1]
    }

    /// `F_k` for `k = 1..=4`.
    pub fn f(&self, k: usize) -> &[Q] {
        &self.kernel_idems[k - 1]
    }

    pub fn eps_s(&self) -> &Mat {
        &self.eps_s
    }

    pub fn eps_t(&self) -> &Mat {
        &self.eps_t
    }

    /// Source algebra `B = ε_s(A)`.
    pub fn base_b(&self) -> &Subspace {
        &self.base_b
    }

    /// Target algebra `C = ε_t(A)`.
    pub fn base_c(&self) -> &Subspace {
        &self.base_c
    }

    pub fn mu_b(&self) -> Option<&[Q]> {
        self.mu_b.as_deref()
    }

    pub fn mu_c(&self) -> Option<&[Q]> {
        self.mu_c.as_deref()
    }

    /// `S⁻²`, the modular automorphism of `μ_B` on `B`.
    pub fn sigma_b(&self) -> Mat {
        self.antipode_inv.mul(&self.antipode_inv)
    }

    /// `S²`, the modular automorphism of `μ_C` on `C`.
    pub fn sigma_c(&self) -> Mat {
        self.antipode.mul(&self.antipode)
    }

    /// `t_B = S_C⁻¹ : B → C` and `t_C = S_B⁻¹ : C → B` are both restrictions of `S⁻¹`.
    pub fn t_b(&self) -> &Mat {
        &self.antipode_inv
    }

    pub fn t_c(&self) -> &Mat {
        &self.antipode_inv
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.algebra.mul(a, b)
    }

    /// Product in `A ⊗ A`.
    pub fn tmul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.square.mul(x, y)
    }

    /// `a ⊗ 1`
    pub fn tensor_one(&self, a: &[Q]) -> Vec<Q> {
        pure(a, &self.unit)
    }

    /// `1 ⊗ a`
    pub fn one_tensor(&self, a: &[Q]) -> Vec<Q> {
        pure(&self.unit, a)
    }

    /// `a ⊗ b ↦ ab`
    pub fn multiply_legs(&self, x: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out: Vec<Q> = vector::zeros(n);
        for (pq, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in self.algebra.basis_product(pq / n, pq % n) {
                out[*k].add_product(c, d);
            }
        }
        out
    }

    /// Matrix of `u ↦ X u` on `A ⊗ A`.
    pub fn left_mult_tensor(&self, x: &[Q]) -> Mat {
        self.square.left_mult(x)
    }

    /// Matrix of `u ↦ u X` on `A ⊗ A`.
    pub fn right_mult_tensor(&self, x: &[Q]) -> Mat {
        self.square.right_mult(x)
    }

    pub fn label(&self, i: usize) -> &str {
        self.algebra.label(i)
    }

    pub fn tensor_label(&self, pq: usize) -> String {
        let n = self.dim();
        format!("{}⊗{}", self.label(pq / n), self.label(pq % n))
    }

    pub fn describe(&self, v: &[Q]) -> String {
        crate::finalg::describe(&self.algebra, v)
    }

    pub fn describe_tensor(&self, v: &[Q]) -> String {
        crate::finalg::describe_with(v, |pq| self.tensor_label(pq))
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        self.algebra.basis_vector(i)
    }
}
