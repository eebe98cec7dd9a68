//! The dual of a weak multiplier Hopf algebra with a faithful left integral,
//! its canonical pairing, biduality and the comparison of the two ways of
//! pairing the associated algebroids.

use crate::checks::fail;
use crate::error::{Error, Result, Side};
use crate::exactla::{vector, BilinearForm, Mat, Subspace, Q};
use crate::finalg::{tensor, FiniteAlgebra};
use crate::integrals::{
    faithful_combination, invariance_failure, is_faithful, is_right_invariant, partial_integrals, solve_left_integrals,
};
use crate::pairing::{
    closed_gamma_forms, closed_gamma_rho, gamma_forms, quotient_pairings, same_gamma_rho, verify_algebroid_pairing_with,
    verify_wmha_pairing, BilinearMap, DualPair, GammaRho,
};
use crate::report::{Outcome, VerificationReport, Witness};
use crate::wmha::{verify_wmha, WeakHopf};

/// `Â` with basis `φ(·e_j)` and its pairing with `A`.
#[derive(Debug, Clone)]
pub struct DualConstruction {
    source: WeakHopf,
    integral: Vec<Q>,
    dual: WeakHopf,
    pairing: DualPair,
    basis_map: Mat,
}

impl DualConstruction {
    pub fn source(&self) -> &WeakHopf {
        &self.source
    }

    pub fn integral(&self) -> &[Q] {
        &self.integral
    }

    pub fn dual(&self) -> &WeakHopf {
        &self.dual
    }

    pub fn pairing(&self) -> &DualPair {
        &self.pairing
    }

    /// Column `j` holds `φ(·e_j)` in the coordinates dual to the basis of `A`;
    /// this is also the gram of the pairing.
    pub fn basis_map(&self) -> &Mat {
        &self.basis_map
    }
}

/// `M_kl = φ(e_k e_l)`.
fn integral_gram(w: &WeakHopf, phi: &[Q]) -> Mat {
    Mat::from_fn(w.dim(), w.dim(), |k, l| vector::dot(phi, &w.mul(&w.basis(k), &w.basis(l))))
}

/// Transposes the structure of `w` onto the functionals `φ(·e_j)`.
pub fn dual_wmha(w: &WeakHopf, phi: &[Q]) -> Result<DualConstruction> {
    let n = w.dim();
    if phi.len() != n {
        return Err(Error::Shape(format!("the integral must have {n} coordinates")));
    }
    if let Some(basis) = invariance_failure(w, phi, Side::Left) {
        return Err(Error::NotInvariant { side: Side::Left, basis });
    }
    let verdict = is_faithful(w, phi);
    if !verdict.faithful {
        return Err(Error::NotFaithful(format!("(a, b) ↦ φ(ab) has rank {} of {n}", verdict.gram_rank)));
    }
    let m = integral_gram(w, phi);
    let m_inv = m.inverse().ok_or_else(|| Error::NotFaithful("the gram of φ is singular".into()))?;
    let cols = m.columns();
    let delta_t = w.coproduct().transpose();
    let labels: Vec<String> = (0..n).map(|j| format!("φ(·{})", w.label(j))).collect();
    // product dual to Δ, coproduct dual to multiplication, antipode transposed
    let algebra = FiniteAlgebra::from_products(labels, |i, j| m_inv.mul_vec(&delta_t.mul_vec(&tensor::pure(&cols[i], &cols[j]))));
    let coproduct = m_inv.kron(&m_inv).mul(&w.algebra().mult_matrix().transpose()).mul(&m);
    let antipode = m_inv.mul(&w.antipode().transpose()).mul(&m);
    let counit = m.transpose().mul_vec(w.unit());
    let dual = WeakHopf::new(format!("dual of {}", w.name()), algebra, coproduct, counit, antipode)?;
    let pairing = DualPair::new(w.clone(), dual.clone(), BilinearForm::new(m.clone()))?;
    Ok(DualConstruction { source: w.clone(), integral: phi.to_vec(), dual, pairing, basis_map: m })
}

/// A faithful left integral of `w`, if the fixed combinations find one.
pub fn faithful_left_integral(w: &WeakHopf) -> Result<Vec<Q>> {
    faithful_combination(w, &solve_left_integrals(w)).ok_or_else(|| Error::NotFaithful("no faithful left integral found".into()))
}

fn from_result(r: Result<()>) -> Outcome {
    r.map_err(|e| Witness::new(vec![], e.to_string()))
}

fn passes(report: &VerificationReport) -> Outcome {
    match report.failures().next() {
        None => Ok(()),
        Some(e) => fail(vec![], format!("{} fails", e.check_id)),
    }
}

fn cocommutative(w: &WeakHopf) -> bool {
    tensor::flip_matrix(w.dim()).mul(w.coproduct()) == *w.coproduct()
}

/// The properties a dual construction must have.
pub fn verify_dual(dc: &DualConstruction) -> VerificationReport {
    let (w, d) = (dc.source(), dc.dual());
    let mut r = VerificationReport::new(d.name());
    r.record("dual.dimension", "dim Â = dim A and the pairing is invertible", dimension(dc));
    r.record("dual.spanning", "φ(·c), φ(c·) and (φ∘S)(·c) span the same space, all of the linear dual", spanning(dc));
    let structure = verify_wmha(d);
    r.record("dual.structure", "Â is a weak multiplier Hopf algebra", passes(&structure));
    r.merge("structure", structure);
    let pairing = verify_wmha_pairing(dc.pairing());
    r.record("dual.pairing", "the evaluation pairing of A with Â satisfies every pairing identity", passes(&pairing));
    r.merge("pairing", pairing);
    r.record("dual.integral", "Â has a faithful left integral", from_result(faithful_left_integral(d).map(|_| ())));
    // ψ̂(φ(·c)) = ε(c)
    let psi_hat = w.counit().to_vec();
    r.record(
        "dual.counit_integral",
        "ψ̂(φ(·c)) = ε(c) is a right integral on Â",
        if is_right_invariant(d, &psi_hat) { Ok(()) } else { fail(vec![], "ψ̂ is not right invariant") },
    );
    let commutes = (w.algebra().is_commutative(), cocommutative(w));
    let swapped = (cocommutative(d), d.algebra().is_commutative());
    r.record(
        "dual.commutativity",
        "A is commutative (cocommutative) exactly when Â is cocommutative (commutative)",
        if commutes == swapped { Ok(()) } else { fail(vec![], format!("A: {commutes:?}, Â: {swapped:?}")) },
    );
    r
}

fn dimension(dc: &DualConstruction) -> Outcome {
    let (n, m) = (dc.source().dim(), dc.dual().dim());
    if n != m {
        return fail(vec![], format!("dim A = {n}, dim Â = {m}"));
    }
    if !dc.basis_map().is_invertible() {
        return fail(vec![], "the pairing gram is singular");
    }
    Ok(())
}

fn spanning(dc: &DualConstruction) -> Outcome {
    let w = dc.source();
    let n = w.dim();
    let m = dc.basis_map();
    let right = integral_gram(w, &w.antipode().vec_mul(dc.integral()));
    let spans = [
        ("φ(·c)", Subspace::column_space(m)),
        ("φ(c·)", Subspace::column_space(&m.transpose())),
        ("(φ∘S)(·c)", Subspace::column_space(&right)),
    ];
    for (name, s) in &spans {
        if s.dim() != n {
            return fail(vec![], format!("the functionals {name} span {} of {n} dimensions", s.dim()));
        }
    }
    Ok(())
}

/// Checks that `p` carries the structure of `from` onto that of `to`.
pub fn isomorphism_report(from: &WeakHopf, to: &WeakHopf, p: &Mat) -> VerificationReport {
    let mut r = VerificationReport::new(format!("{} ≅ {}", from.name(), to.name()));
    let n = from.dim();
    if p.shape() != (to.dim(), n) || !p.is_invertible() {
        r.record("iso.bijective", "the comparison map is bijective", fail(vec![], "the comparison map is not invertible"));
        return r;
    }
    r.record("iso.bijective", "the comparison map is bijective", Ok(()));
    let product = (0..n * n).find(|&ij| {
        let (i, j) = (ij / n, ij % n);
        p.mul_vec(&from.mul(&from.basis(i), &from.basis(j))) != to.mul(&p.column(i), &p.column(j))
    });
    r.record(
        "iso.product",
        "P(ab) = P(a)P(b)",
        match product {
            None => Ok(()),
            Some(ij) => fail(vec![ij / n, ij % n], format!("on {}", from.tensor_label(ij))),
        },
    );
    let compare = |what: &str, lhs: Mat, rhs: Mat| match lhs.first_differing_column(&rhs) {
        None => Ok(()),
        Some(j) => fail(vec![j], format!("{what} differs on {}", from.label(j))),
    };
    r.record("iso.coproduct", "(P⊗P)Δ = Δ′P", compare("the coproduct", p.kron(p).mul(from.coproduct()), to.coproduct().mul(p)));
    r.record("iso.antipode", "PS = S′P", compare("the antipode", p.mul(from.antipode()), to.antipode().mul(p)));
    let counit = Mat::from_rows(vec![from.counit().to_vec()]).expect("one row");
    let counit2 = Mat::from_rows(vec![to.counit().to_vec()]).expect("one row");
    r.record("iso.counit", "ε′P = ε", compare("the counit", counit2.mul(p), counit));
    r
}

/// Dualizes twice and compares with the original through `a ↦ ⟨a, ·⟩`.
pub fn check_biduality(dc: &DualConstruction) -> VerificationReport {
    let mut r = VerificationReport::new(format!("bidual of {}", dc.source().name()));
    let bidual = faithful_left_integral(dc.dual()).and_then(|phi_hat| dual_wmha(dc.dual(), &phi_hat));
    match bidual {
        Err(e) => {
            r.record("bidual.built", "Â has a faithful left integral and a dual", Err(Witness::new(vec![], e.to_string())));
            r
        }
        Ok(bd) => {
            r.record("bidual.built", "Â has a faithful left integral and a dual", Ok(()));
            // ⟨a, ·⟩ has coordinates Mᵀa against the basis dual to φ(·e_j)
            let m_hat_inv = bd.basis_map().inverse().expect("faithful");
            let p = m_hat_inv.mul(&dc.basis_map().transpose());
            r.merge("", isomorphism_report(dc.source(), bd.dual(), &p));
            r
        }
    }
}

/// `γ₁(a, φ(·c)) = _BΦ(ac)` and `γ₂(a, φ(c·)) = Φ_B(ca)` on the dual pair, with
/// `ρ₁, ρ₂` obtained from them through the antipodes.
pub fn integral_gamma_rho(dc: &DualConstruction) -> Result<GammaRho> {
    let (w, d) = (dc.source(), dc.dual());
    let n = w.dim();
    let phi = dc.integral();
    let psi = w.antipode().vec_mul(phi);
    let data = partial_integrals(w, phi, &psi)?;
    let m = dc.basis_map();
    // φ(·e_j) = φ(c_j·) with Mᵀc_j = M e_j
    let shift = m.transpose().inverse().ok_or(Error::Degenerate)?.mul(m);
    let gamma1 = BilinearMap::from_fn(n, n, n, |i, j| data.b_phi().mul_vec(&w.mul(&w.basis(i), &w.basis(j))));
    let gamma2 = BilinearMap::from_fn(n, n, n, |i, j| data.phi_b().mul_vec(&w.mul(&shift.column(j), &w.basis(i))));
    let through_antipodes = |g: &BilinearMap| {
        BilinearMap::from_fn(n, n, n, |i, j| w.s_inv(&g.eval(&w.s(&w.basis(i)), &d.s_inv(&d.basis(j)))))
    };
    let rho1 = through_antipodes(&gamma2);
    let rho2 = through_antipodes(&gamma1);
    Ok(GammaRho { gamma1, gamma2, rho1, rho2 })
}

/// Builds the algebroid pairing of `A` with `Â` once through `E` and once
/// through the integral, and compares every piece.
pub fn duality_commutes_check(w: &WeakHopf, phi: &[Q]) -> Result<VerificationReport> {
    let dc = dual_wmha(w, phi)?;
    let p = dc.pairing();
    let mut r = VerificationReport::new(format!("duality of {}", w.name()));

    let route1 = closed_gamma_rho(p);
    let forms1 = closed_gamma_forms(p);
    let quotients1 = quotient_pairings(p, &forms1);

    let route2 = integral_gamma_rho(&dc)?;
    let forms2 = gamma_forms(p, &route2)?;
    let quotients2 = quotient_pairings(p, &forms2);

    r.record("commute.gamma_rho", "γ₁, γ₂, ρ₁, ρ₂ agree on every basis pair", same_gamma_rho(p, "the integral route", &route1, &route2));
    for (k, (f1, f2)) in forms1.iter().zip(&forms2).enumerate() {
        let outcome = match f1.gram().first_difference(f2.gram()) {
            None => Ok(()),
            Some((i, j)) => fail(vec![i, j], format!("({}, {})", w.tensor_label(i), dc.dual().tensor_label(j))),
        };
        r.record(format!("commute.form{}", k + 1), format!("both routes give the same Γ{}", k + 1), outcome);
    }
    match (&quotients1, &quotients2) {
        (Ok(q1), Ok(q2)) => {
            for (k, (a, b)) in q1.iter().zip(q2).enumerate() {
                let outcome = if a.form.gram() == b.form.gram() {
                    Ok(())
                } else {
                    let (i, j) = a.form.gram().first_difference(b.form.gram()).unwrap_or((0, 0));
                    fail(vec![i, j], format!("quotient basis pair ({i}, {j})"))
                };
                r.record(format!("commute.quotient{}", k + 1), format!("both routes give the same ⟨·,·⟩{}", k + 1), outcome);
            }
        }
        (Err(e), _) | (_, Err(e)) => {
            r.record("commute.quotients", "both routes descend to the balanced tensor products", Err(Witness::new(vec![], e.to_string())));
        }
    }
    let one = verify_algebroid_pairing_with(p, &route1);
    r.record("commute.route1", "the pairing built through E is an algebroid pairing", passes(&one));
    r.merge("route1", one);
    let two = verify_algebroid_pairing_with(p, &route2);
    r.record("commute.route2", "the pairing built through the integral is an algebroid pairing", passes(&two));
    r.merge("route2", two);
    Ok(r)
}
