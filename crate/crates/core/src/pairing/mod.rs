//! Dual pairs of weak multiplier Hopf algebras and the pairing they induce
//! between the associated multiplier Hopf algebroids.

mod gamma;
mod verify;

pub use gamma::{
    closed_gamma_forms, closed_gamma_rho, descend_gamma, gamma1_by_module_law, gamma_forms, quotient_kinds,
    quotient_pairings, solve_gamma_rho, GammaRho, ModuleLawSolve,
};
pub(crate) use verify::same_gamma_rho;
pub use verify::{verify_algebroid_pairing, verify_algebroid_pairing_with, verify_wmha_pairing};

use crate::error::{Error, Result};
use crate::exactla::{BilinearForm, Mat, Subspace, Q};
use crate::finalg::tensor;
use crate::groupoid::{function_algebra, groupoid_algebra, FiniteGroupoid};
use crate::wmha::WeakHopf;

/// A bilinear map `X × Y → Z` stored as a `dim Z × (dim X · dim Y)` matrix;
/// column `i·dim Y + j` holds the value on `(e_i, f_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    left: usize,
    right: usize,
    values: Mat,
}

impl BilinearMap {
    pub fn from_fn(target: usize, left: usize, right: usize, mut f: impl FnMut(usize, usize) -> Vec<Q>) -> Self {
        let mut cols = Vec::with_capacity(left * right);
        for i in 0..left {
            for j in 0..right {
                cols.push(f(i, j));
            }
        }
        BilinearMap { left, right, values: Mat::from_columns(target, &cols) }
    }

    pub fn at(&self, i: usize, j: usize) -> Vec<Q> {
        self.values.column(i * self.right + j)
    }

    /// Bilinear extension to arbitrary arguments.
    pub fn eval(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.values.mul_vec(&tensor::pure(x, y))
    }

    pub fn matrix(&self) -> &Mat {
        &self.values
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    /// The span of all values.
    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.values)
    }
}

/// The four actions of a non-degenerate pairing:
/// `⟨a, a′b′⟩ = ⟨a◁a′, b′⟩ = ⟨b′▷a, a′⟩` and `⟨ab, a′⟩ = ⟨a, b▷a′⟩ = ⟨b, a′◁a⟩`.
#[derive(Debug, Clone)]
pub struct Actions {
    /// `(a, a′) ↦ a◁a′ ∈ A`
    pub right_on_left: BilinearMap,
    /// `(b′, a) ↦ b′▷a ∈ A`
    pub left_on_left: BilinearMap,
    /// `(b, a′) ↦ b▷a′ ∈ A′`
    pub left_on_right: BilinearMap,
    /// `(a′, a) ↦ a′◁a ∈ A′`
    pub right_on_right: BilinearMap,
}

impl Actions {
    /// Whether each action's values span the algebra it acts on.
    pub fn unital(&self) -> [bool; 4] {
        [&self.right_on_left, &self.left_on_left, &self.left_on_right, &self.right_on_right]
            .map(|m| m.image().dim() == m.matrix().rows())
    }
}

/// Solves each action from its defining equation.
pub fn derive_actions(left: &WeakHopf, right: &WeakHopf, form: &BilinearForm) -> Result<Actions> {
    let (n, m) = (left.dim(), right.dim());
    let g = form.gram();
    if g.shape() != (n, m) {
        return Err(Error::Shape(format!("gram must be {n}x{m}")));
    }
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let gt_inv = g.transpose().inverse().ok_or(Error::Degenerate)?;
    let g_inv = g.inverse().ok_or(Error::Degenerate)?;
    let pair = |a: &[Q], b: &[Q]| form.eval(a, b);
    let (e, f) = (|i: usize| left.basis(i), |j: usize| right.basis(j));
    // ⟨v, f_k⟩ = r_k  ⇒  v = G⁻ᵀ r ;  ⟨e_k, v⟩ = r_k  ⇒  v = G⁻¹ r
    let on_left = |r: Vec<Q>| gt_inv.mul_vec(&r);
    let on_right = |r: Vec<Q>| g_inv.mul_vec(&r);
    Ok(Actions {
        right_on_left: BilinearMap::from_fn(n, n, m, |i, j| {
            on_left((0..m).map(|k| pair(&e(i), &right.mul(&f(j), &f(k)))).collect())
        }),
        left_on_left: BilinearMap::from_fn(n, m, n, |j, i| {
            on_left((0..m).map(|k| pair(&e(i), &right.mul(&f(k), &f(j)))).collect())
        }),
        left_on_right: BilinearMap::from_fn(m, n, m, |j, i| {
            on_right((0..n).map(|k| pair(&left.mul(&e(k), &e(j)), &f(i))).collect())
        }),
        right_on_right: BilinearMap::from_fn(m, m, n, |j, i| {
            on_right((0..n).map(|k| pair(&left.mul(&e(i), &e(k)), &f(j))).collect())
        }),
    })
}

/// `α: B → B′` and `β: C → C′`, as ambient matrices that read base coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMaps {
    pub alpha: Mat,
    pub beta: Mat,
}

/// A non-degenerate admissible pairing of `A` with `A′`.
#[derive(Debug, Clone)]
pub struct DualPair {
    left: WeakHopf,
    right: WeakHopf,
    form: BilinearForm,
    actions: Actions,
    base_override: Option<BaseMaps>,
}

impl DualPair {
    pub fn new(left: WeakHopf, right: WeakHopf, form: BilinearForm) -> Result<Self> {
        let actions = derive_actions(&left, &right, &form)?;
        Ok(DualPair { left, right, form, actions, base_override: None })
    }

    /// A pair whose base anti-isomorphisms are supplied rather than derived.
    pub fn with_base_maps(left: WeakHopf, right: WeakHopf, form: BilinearForm, maps: BaseMaps) -> Result<Self> {
        let (n, m) = (left.dim(), right.dim());
        if maps.alpha.shape() != (m, n) || maps.beta.shape() != (m, n) {
            return Err(Error::Shape(format!("α and β must be {m}x{n}")));
        }
        let mut p = DualPair::new(left, right, form)?;
        p.base_override = Some(maps);
        Ok(p)
    }

    pub fn left(&self) -> &WeakHopf {
        &self.left
    }

    pub fn right(&self) -> &WeakHopf {
        &self.right
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn gram(&self) -> &Mat {
        self.form.gram()
    }

    pub fn actions(&self) -> &Actions {
        &self.actions
    }

    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        self.form.eval(a, b)
    }

    /// `⟨a⊗b, a′⊗b′⟩ = ⟨a, a′⟩⟨b, b′⟩` on the tensor squares.
    pub fn tensor_gram(&self) -> Mat {
        tensor::kron(self.gram(), self.gram())
    }

    /// Whether `α`, `β` were supplied by hand.
    pub fn base_maps_supplied(&self) -> bool {
        self.base_override.is_some()
    }

    pub fn base_maps(&self) -> Result<BaseMaps> {
        match &self.base_override {
            Some(m) => Ok(m.clone()),
            None => base_anti_isomorphisms(self),
        }
    }
}

/// The linear map on `domain` sending each `xs[k]` to `ps[k]`, as an ambient
/// matrix that reads the domain coordinates.
fn map_from_pairs(what: &str, domain: &Subspace, target: &Subspace, xs: &[Vec<Q>], ps: &[Vec<Q>]) -> Result<Mat> {
    let m = target.ambient_dim();
    let sources = Subspace::span(domain.ambient_dim(), xs.iter().cloned());
    if &sources != domain {
        return Err(Error::SpanningFailure(format!("the elements defining {what} span {} of {} dimensions", sources.dim(), domain.dim())));
    }
    let images = Subspace::span(m, ps.iter().cloned());
    if &images != target {
        return Err(Error::SpanningFailure(format!("the images under {what} span {} of {} dimensions", images.dim(), target.dim())));
    }
    let coords: Vec<Vec<Q>> = xs.iter().map(|x| domain.coords(x).expect("inside the span")).collect();
    let x = Mat::from_columns(domain.dim(), &coords);
    let p = Mat::from_columns(m, ps);
    let solved = x
        .transpose()
        .solve_matrix(&p.transpose())
        .ok_or_else(|| Error::Inconsistent(format!("{what} is not well defined on its spanning elements")))?;
    if x.transpose().mul(&solved) != p.transpose() {
        return Err(Error::Inconsistent(format!("{what} is not well defined on its spanning elements")));
    }
    Ok(solved.transpose().mul(&domain.coordinate_matrix()))
}

/// `α(E₍₁₎⟨E₍₂₎b, b′⟩) = E′₍₁₎⟨b, E′₍₂₎b′⟩` and
/// `β(⟨E₍₁₎a, a′⟩E₍₂₎) = ⟨a, a′S′(E′₍₁₎)⟩E′₍₂₎` over all basis pairs.
pub fn base_anti_isomorphisms(p: &DualPair) -> Result<BaseMaps> {
    let (w, v) = (p.left(), p.right());
    let (n, m) = (w.dim(), v.dim());
    let (e, f) = (|i: usize| w.basis(i), |j: usize| v.basis(j));
    let (mut xs, mut ps, mut ys, mut qs) = (vec![], vec![], vec![], vec![]);
    for i in 0..n {
        for j in 0..m {
            let omega: Vec<Q> = (0..n).map(|q| p.pair(&w.mul(&e(q), &e(i)), &f(j))).collect();
            xs.push(tensor::contract_right(w.idempotent(), &omega, n));
            let omega: Vec<Q> = (0..m).map(|q| p.pair(&e(i), &v.mul(&f(q), &f(j)))).collect();
            ps.push(tensor::contract_right(v.idempotent(), &omega, m));
            let omega: Vec<Q> = (0..n).map(|q| p.pair(&w.mul(&e(q), &e(i)), &f(j))).collect();
            ys.push(tensor::contract_left(&omega, w.idempotent(), n));
            let omega: Vec<Q> = (0..m).map(|q| p.pair(&e(i), &v.mul(&f(j), &v.s(&f(q))))).collect();
            qs.push(tensor::contract_left(&omega, v.idempotent(), m));
        }
    }
    Ok(BaseMaps {
        alpha: map_from_pairs("α", w.base_b(), v.base_b(), &xs, &ps)?,
        beta: map_from_pairs("β", w.base_c(), v.base_c(), &ys, &qs)?,
    })
}

/// The pairing `⟨u_g, δ_h⟩ = [g = h]` of a groupoid algebra with the
/// functions on the same groupoid.
pub fn canonical_groupoid_pairing(g: &FiniteGroupoid) -> Result<DualPair> {
    let left = groupoid_algebra(g)?;
    let right = function_algebra(g)?;
    let n = left.dim();
    DualPair::new(left, right, BilinearForm::new(Mat::identity(n)))
}
