//! The base-valued maps `γ₁, γ₂, ρ₁, ρ₂`, the forms `Γ₁..Γ₄` on the tensor
//! squares and the pairings they induce on balanced tensor products.

use super::{BilinearMap, DualPair};
use crate::algebroid::{balanced_tensor, BalancedKind};
use crate::error::{Error, Result};
use crate::exactla::{vector, BilinearForm, Field, InducedForm, Mat, Solution, Subspace, Q};
use crate::wmha::WeakHopf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaRho {
    /// `⟨xa, a′⟩ = μ_B(xγ₁(a, a′))`
    pub gamma1: BilinearMap,
    /// `⟨ax, a′⟩ = μ_B(γ₂(a, a′)x)`
    pub gamma2: BilinearMap,
    /// `⟨ya, a′⟩ = μ_C(yρ₁(a, a′))`
    pub rho1: BilinearMap,
    /// `⟨ay, a′⟩ = μ_C(ρ₂(a, a′)y)`
    pub rho2: BilinearMap,
}

fn base_functional(w: &WeakHopf, on_b: bool) -> Result<&[Q]> {
    let mu = if on_b { w.mu_b() } else { w.mu_c() };
    mu.ok_or_else(|| Error::NoSolution(format!("no base functional on {}", if on_b { "B" } else { "C" })))
}

/// Writes each functional `z ↦ f(z, a, a′)` on the base as `μ(z·v)` (or `μ(v·z)`
/// when `right`) and returns `v`.
fn reduce(p: &DualPair, on_b: bool, right: bool, f: impl Fn(&[Q], &[Q], &[Q]) -> Q) -> Result<BilinearMap> {
    let w = p.left();
    let (n, m) = (w.dim(), p.right().dim());
    let base = if on_b { w.base_b() } else { w.base_c() };
    let mu = base_functional(w, on_b)?;
    let d = base.basis();
    let r = d.len();
    let kms = Mat::from_fn(r, r, |k, l| {
        let prod = if right { w.mul(&d[l], &d[k]) } else { w.mul(&d[k], &d[l]) };
        vector::dot(mu, &prod)
    });
    let inv = kms.inverse().ok_or_else(|| Error::NoSolution("the base functional is not faithful".into()))?;
    let basis = base.basis_matrix();
    Ok(BilinearMap::from_fn(n, n, m, |i, j| {
        let rhs: Vec<Q> = d.iter().map(|z| f(z, &w.basis(i), &p.right().basis(j))).collect();
        basis.mul_vec(&inv.mul_vec(&rhs))
    }))
}

/// `γ` and `ρ` obtained by solving their defining equations against `μ_B`, `μ_C`.
pub fn solve_gamma_rho(p: &DualPair) -> Result<GammaRho> {
    let w = p.left();
    Ok(GammaRho {
        gamma1: reduce(p, true, false, |x, a, a2| p.pair(&w.mul(x, a), a2))?,
        gamma2: reduce(p, true, true, |x, a, a2| p.pair(&w.mul(a, x), a2))?,
        rho1: reduce(p, false, false, |y, a, a2| p.pair(&w.mul(y, a), a2))?,
        rho2: reduce(p, false, true, |y, a, a2| p.pair(&w.mul(a, y), a2))?,
    })
}

/// `γ₁(a,a′) = S⁻¹(E₍₂₎)⟨E₍₁₎a,a′⟩`, `γ₂(a,a′) = S(E₍₂₎)⟨aE₍₁₎,a′⟩`,
/// `ρ₁(a,a′) = S(E₍₁₎)⟨E₍₂₎a,a′⟩`, `ρ₂(a,a′) = S⁻¹(E₍₁₎)⟨aE₍₂₎,a′⟩`.
pub fn closed_gamma_rho(p: &DualPair) -> GammaRho {
    let w = p.left();
    let (n, m) = (w.dim(), p.right().dim());
    let terms: Vec<(usize, usize, Q)> = w
        .idempotent()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(pq, c)| (pq / n, pq % n, c.clone()))
        .collect();
    let build = |f: &dyn Fn(usize, usize, &[Q], &[Q]) -> (Vec<Q>, Q)| {
        BilinearMap::from_fn(n, n, m, |i, j| {
            let mut out = vector::zeros(n);
            for (e1, e2, c) in &terms {
                let (leg, scalar) = f(*e1, *e2, &w.basis(i), &p.right().basis(j));
                vector::axpy(&mut out, &(c * &scalar), &leg);
            }
            out
        })
    };
    let e = |k: usize| w.basis(k);
    GammaRho {
        gamma1: build(&|e1, e2, a, a2| (w.s_inv(&e(e2)), p.pair(&w.mul(&e(e1), a), a2))),
        gamma2: build(&|e1, e2, a, a2| (w.s(&e(e2)), p.pair(&w.mul(a, &e(e1)), a2))),
        rho1: build(&|e1, e2, a, a2| (w.s(&e(e1)), p.pair(&w.mul(&e(e2), a), a2))),
        rho2: build(&|e1, e2, a, a2| (w.s_inv(&e(e1)), p.pair(&w.mul(a, &e(e2)), a2))),
    }
}

/// Outcome of determining `γ₁` from `γ₁(xa, a′) = xγ₁(a, a′)` alone and
/// together with `μ_B(γ₁(a, a′)) = ⟨a, a′⟩`.
#[derive(Debug, Clone)]
pub struct ModuleLawSolve {
    /// Smallest number of free parameters of the module law alone, over all `a′`.
    pub free_without_normalization: usize,
    pub solution: Result<BilinearMap, String>,
}

/// Solves for `γ₁` column by column in `a′`, with unknowns the `B`-coordinates
/// of `γ₁(e_i, a′)`.
pub fn gamma1_by_module_law(p: &DualPair) -> Result<ModuleLawSolve> {
    let w = p.left();
    let (n, m) = (w.dim(), p.right().dim());
    let mu = base_functional(w, true)?;
    let base = w.base_b();
    let d = base.basis();
    let r = d.len();
    let mut free = usize::MAX;
    let mut values: Vec<Vec<Vec<Q>>> = vec![vec![]; n];
    for j in 0..m {
        // unknown (i, l): coefficient of d_l in γ₁(e_i, f_j)
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for x in d {
            for i in 0..n {
                let xa = w.mul(x, &w.basis(i));
                for t in 0..n {
                    let mut row: Vec<Q> = vector::zeros(n * r);
                    for mi in 0..n {
                        if xa[mi].is_zero() {
                            continue;
                        }
                        for l in 0..r {
                            row[mi * r + l].add_product(&xa[mi], &d[l][t]);
                        }
                    }
                    for l in 0..r {
                        let xd = w.mul(x, &d[l]);
                        row[i * r + l] -= &xd[t];
                    }
                    rows.push(row);
                }
            }
        }
        let homogeneous = Mat::from_rows(rows.clone()).unwrap_or_else(|| Mat::zeros(0, n * r));
        free = free.min(n * r - homogeneous.rank());
        let mut rhs = vector::zeros(rows.len());
        for i in 0..n {
            let mut row = vector::zeros(n * r);
            for l in 0..r {
                row[i * r + l] = vector::dot(mu, &d[l]);
            }
            rows.push(row);
            rhs.push(p.pair(&w.basis(i), &p.right().basis(j)));
        }
        let system = Mat::from_rows(rows).expect("rectangular");
        match system.solve(&rhs) {
            Solution::Consistent { particular, nullspace } if nullspace.is_empty() => {
                for (i, slot) in values.iter_mut().enumerate() {
                    slot.push(base.element(&particular[i * r..(i + 1) * r]));
                }
            }
            Solution::Consistent { nullspace, .. } => {
                return Ok(ModuleLawSolve {
                    free_without_normalization: free,
                    solution: Err(format!("{} free parameters remain after normalization", nullspace.len())),
                })
            }
            Solution::Inconsistent => {
                return Ok(ModuleLawSolve {
                    free_without_normalization: free,
                    solution: Err("module law and normalization are inconsistent".into()),
                })
            }
        }
    }
    Ok(ModuleLawSolve {
        free_without_normalization: free,
        solution: Ok(BilinearMap::from_fn(n, n, m, |i, j| values[i][j].clone())),
    })
}

/// `Γ₁..Γ₄` assembled from `γ`, `ρ` and the base functionals; row `i·n + j`
/// and column `k·m + l` hold the value on `(e_i⊗e_j, f_k⊗f_l)`.
pub fn gamma_forms(p: &DualPair, gr: &GammaRho) -> Result<[BilinearForm; 4]> {
    let w = p.left();
    let (n, m) = (w.dim(), p.right().dim());
    let mu_b = base_functional(w, true)?;
    let mu_c = base_functional(w, false)?;
    let table = |f: &BilinearMap, apply_s: bool| -> Vec<Vec<Q>> {
        (0..n)
            .flat_map(|i| (0..m).map(move |k| (i, k)))
            .map(|(i, k)| if apply_s { w.s(&f.at(i, k)) } else { f.at(i, k) })
            .collect()
    };
    let s_gamma1 = table(&gr.gamma1, true);
    let gamma2 = table(&gr.gamma2, false);
    let gamma1 = table(&gr.gamma1, false);
    let s_rho2 = table(&gr.rho2, true);
    let rho1 = table(&gr.rho1, false);
    let rho2 = table(&gr.rho2, false);
    let form = |first: &[Vec<Q>], second: &[Vec<Q>], mu: &[Q]| {
        BilinearForm::new(Mat::from_fn(n * n, m * m, |ij, kl| {
            let (i, j) = (ij / n, ij % n);
            let (k, l) = (kl / m, kl % m);
            vector::dot(mu, &w.mul(&first[i * m + k], &second[j * m + l]))
        }))
    };
    Ok([
        form(&s_gamma1, &rho1, mu_c),
        form(&gamma2, &gamma1, mu_b),
        form(&gamma2, &s_rho2, mu_b),
        form(&rho2, &rho1, mu_c),
    ])
}

/// `Γ₁(u,u′) = ⟨Eu,u′⟩`, `Γ₂ = ⟨(a⊗1)F₁(1⊗b),·⟩`, `Γ₃(u,u′) = ⟨uE,u′⟩`,
/// `Γ₄ = ⟨(a⊗1)F₂(1⊗b),·⟩`.
pub fn closed_gamma_forms(p: &DualPair) -> [BilinearForm; 4] {
    let w = p.left();
    let g2 = p.tensor_gram();
    let through = |m: Mat| BilinearForm::new(m.transpose().mul(&g2));
    [
        through(w.left_mult_tensor(w.idempotent())),
        through(w.r(1).mul(w.t(1))),
        through(w.right_mult_tensor(w.idempotent())),
        through(w.r(2).mul(w.t(2))),
    ]
}

/// The balanced tensor products that `Γ₁..Γ₄` pair, on `A` and on `A′`.
pub fn quotient_kinds() -> [(BalancedKind, BalancedKind); 4] {
    [
        (BalancedKind::SCC, BalancedKind::CC),
        (BalancedKind::BB, BalancedKind::BSB),
        (BalancedKind::BSB, BalancedKind::BB),
        (BalancedKind::CC, BalancedKind::SCC),
    ]
}

/// Pushes `form` down to `left_kind` on `A` and `right_kind` on `A′`.
pub fn descend_gamma(p: &DualPair, form: &BilinearForm, left_kind: BalancedKind, right_kind: BalancedKind) -> Result<InducedForm> {
    let killed_left: Subspace = balanced_tensor(p.left(), left_kind).killed().clone();
    let killed_right: Subspace = balanced_tensor(p.right(), right_kind).killed().clone();
    crate::exactla::gamma_induced_pairing(form, &killed_left, &killed_right)
}

/// The four induced pairings of balanced tensor products.
pub fn quotient_pairings(p: &DualPair, forms: &[BilinearForm; 4]) -> Result<[InducedForm; 4]> {
    let kinds = quotient_kinds();
    let mut out = Vec::with_capacity(4);
    for (form, (l, r)) in forms.iter().zip(kinds) {
        out.push(descend_gamma(p, form, l, r)?);
    }
    Ok(out.try_into().expect("four forms"))
}
