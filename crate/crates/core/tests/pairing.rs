use aqg_core::algebroid::BalancedKind;
use aqg_core::error::Error;
use aqg_core::exactla::{vector, BilinearForm};
use aqg_core::finalg::tensor::pure;
use aqg_core::fixtures::{g3, pair2, z2};
use aqg_core::groupoid::FiniteGroupoid;
use aqg_core::pairing::{
    canonical_groupoid_pairing, closed_gamma_forms, closed_gamma_rho, derive_actions, descend_gamma, gamma_forms,
    quotient_pairings, solve_gamma_rho, verify_algebroid_pairing, verify_wmha_pairing, DualPair,
};
use aqg_core::report::Status;
use aqg_core::{Mat, WeakHopf, Q};
use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};

fn idx(w: &WeakHopf, label: &str) -> usize {
    w.algebra().index_of(label).unwrap_or_else(|| panic!("no basis element {label}"))
}

fn vec_of(w: &WeakHopf, labels: &[&str]) -> Vec<Q> {
    let mut v = vector::zeros(w.dim());
    for l in labels {
        v[idx(w, l)] = Q::ONE;
    }
    v
}

#[test]
fn group_case_right_action_picks_the_matching_element() {
    let p = canonical_groupoid_pairing(&z2()).unwrap();
    let (w, v) = (p.left(), p.right());
    let act = &p.actions().right_on_left;
    // ⟨u_g◁δ_h, δ_k⟩ = ⟨u_g, δ_hδ_k⟩ = [h=k][g=h]
    for g in ["e", "g1"] {
        for h in ["e", "g1"] {
            let got = act.at(idx(w, &format!("u{g}")), idx(v, &format!("d{h}")));
            let expected = if g == h { vec_of(w, &[&format!("u{g}")]) } else { vector::zeros(2) };
            assert_eq!(got, expected, "u{g}◁d{h}");
        }
    }
    assert_eq!(p.actions().unital(), [true; 4]);
}

#[test]
fn pair_groupoid_actions_are_unital() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    assert_eq!(p.actions().unital(), [true; 4]);
}

#[test]
fn degenerate_form_is_rejected() {
    let g = pair2();
    let p = canonical_groupoid_pairing(&g).unwrap();
    let zero = BilinearForm::new(Mat::zeros(4, 4));
    assert!(matches!(derive_actions(p.left(), p.right(), &zero), Err(Error::Degenerate)));
    assert!(matches!(DualPair::new(p.left().clone(), p.right().clone(), zero), Err(Error::Degenerate)));
}

#[test]
fn canonical_pairings_pass_everything() {
    for g in [z2(), pair2(), g3()] {
        let p = canonical_groupoid_pairing(&g).unwrap();
        let r = verify_wmha_pairing(&p);
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary.skipped, 0);
        for id in ["derived.r1_r2", "derived.r2_r1", "derived.idempotent_left", "derived.idempotent_right"] {
            assert!(r.entry(id).unwrap().statement.starts_with("derived identity"));
        }
        let r = verify_algebroid_pairing(&p);
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary.skipped, 0);
    }
}

#[test]
fn identity_antipode_breaks_adjointness() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let bad = p.right().with_antipode(Mat::identity(4)).unwrap();
    let q = DualPair::new(p.left().clone(), bad, p.form().clone()).unwrap();
    let r = verify_wmha_pairing(&q);
    assert_eq!(r.status_of("pairing.antipode_adjoint"), Some(Status::Fail));
    let w = r.entry("pairing.antipode_adjoint").unwrap().witness.clone().unwrap();
    assert_eq!(w.indices.len(), 2);
}

#[test]
fn alpha_sends_a_unit_to_its_source_indicator() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let (w, v) = (p.left(), p.right());
    let maps = p.base_maps().unwrap();
    // arrow "ij" has source j
    assert_eq!(maps.alpha.mul_vec(&vec_of(w, &["u22"])), vec_of(v, &["d12", "d22"]));
    assert_eq!(maps.alpha.mul_vec(&vec_of(w, &["u11"])), vec_of(v, &["d11", "d21"]));
}

#[test]
fn alpha_beta_carry_the_idempotent() {
    let g = pair2();
    let p = canonical_groupoid_pairing(&g).unwrap();
    let (w, v) = (p.left(), p.right());
    let maps = p.base_maps().unwrap();
    let e = vector::add(&pure(&vec_of(w, &["u11"]), &vec_of(w, &["u11"])), &pure(&vec_of(w, &["u22"]), &vec_of(w, &["u22"])));
    assert_eq!(w.idempotent(), &e[..]);
    // Δ′(1) = Σ over composable (g, h) of δ_g⊗δ_h; "ij" then "jl"
    let mut composable = vector::zeros(16);
    for (i, j) in [("1", "1"), ("1", "2"), ("2", "1"), ("2", "2")] {
        for l in ["1", "2"] {
            let t = pure(&vec_of(v, &[&format!("d{i}{j}")]), &vec_of(v, &[&format!("d{j}{l}")]));
            composable = vector::add(&composable, &t);
        }
    }
    assert_eq!(maps.alpha.kron(&maps.beta).mul_vec(&e), composable);
    assert_eq!(v.idempotent(), &composable[..]);
}

#[test]
fn gamma_on_the_pair_groupoid() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let (w, v) = (p.left(), p.right());
    let solved = solve_gamma_rho(&p).unwrap();
    let (a, a2) = (idx(w, "u12"), idx(v, "d12"));
    // E₁u12 = u11u12 with E₂ = u11
    assert_eq!(solved.gamma1.at(a, a2), vec_of(w, &["u11"]));
    assert_eq!(closed_gamma_rho(&p), solved);
}

#[test]
fn gamma_in_the_group_case_is_the_pairing_times_one() {
    let p = canonical_groupoid_pairing(&z2()).unwrap();
    let w = p.left();
    let gr = solve_gamma_rho(&p).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let value = p.pair(&w.basis(i), &p.right().basis(j));
            assert_eq!(gr.gamma1.at(i, j), vector::scale(&value, w.unit()));
        }
    }
    let forms = gamma_forms(&p, &gr).unwrap();
    assert_eq!(forms[0].gram(), &p.tensor_gram());
    let q = quotient_pairings(&p, &forms).unwrap();
    for (k, induced) in q.iter().enumerate() {
        assert_eq!(induced.form.gram(), forms[k].gram());
    }
}

#[test]
fn gamma_one_kills_mixed_off_diagonal_tensors() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let (w, v) = (p.left(), p.right());
    let u = pure(&vec_of(w, &["u12"]), &vec_of(w, &["u21"]));
    let u2 = pure(&vec_of(v, &["d12"]), &vec_of(v, &["d21"]));
    let built = gamma_forms(&p, &solve_gamma_rho(&p).unwrap()).unwrap();
    let closed = closed_gamma_forms(&p);
    assert_eq!(built[0].eval(&u, &u2), Q::ZERO);
    assert_eq!(closed[0].eval(&u, &u2), Q::ZERO);
    // E(u11⊗u12) = u11⊗u11u12 pairs with δ11⊗δ12
    let u = pure(&vec_of(w, &["u11"]), &vec_of(w, &["u12"]));
    let u2 = pure(&vec_of(v, &["d11"]), &vec_of(v, &["d12"]));
    assert_eq!(built[0].eval(&u, &u2), Q::ONE);
}

#[test]
fn pair_groupoid_quotients_are_eight_dimensional() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let forms = gamma_forms(&p, &solve_gamma_rho(&p).unwrap()).unwrap();
    let q = quotient_pairings(&p, &forms).unwrap();
    for induced in &q {
        assert_eq!(induced.form.gram().shape(), (8, 8));
        assert!(induced.form.is_nondegenerate());
    }
}

#[test]
fn gamma_one_does_not_descend_to_the_wrong_kind() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let forms = closed_gamma_forms(&p);
    let err = descend_gamma(&p, &forms[0], BalancedKind::BB, BalancedKind::CC).unwrap_err();
    assert!(matches!(err, Error::DoesNotDescend { .. }), "{err}");
    assert!(descend_gamma(&p, &forms[0], BalancedKind::SCC, BalancedKind::CC).is_ok());
}

#[test]
fn scaled_form_breaks_the_canonical_map_compatibility() {
    let p = canonical_groupoid_pairing(&pair2()).unwrap();
    let mut g = p.gram().clone();
    g.set(0, 0, Q::from(2));
    let q = DualPair::new(p.left().clone(), p.right().clone(), BilinearForm::new(g)).unwrap();
    let r = verify_algebroid_pairing(&q);
    assert_eq!(r.status_of("quotient.t1_t2"), Some(Status::Fail));
    assert!(r.entry("quotient.t1_t2").unwrap().witness.is_some());
    assert_eq!(r.status_of("quotient.descends"), Some(Status::Pass));
    let wmha = verify_wmha_pairing(&q);
    assert_eq!(wmha.status_of("pairing.t1_t2"), Some(Status::Fail));
    assert!(wmha.entry("pairing.t1_t2").unwrap().witness.is_some());
}

fn random_groupoid(seed: u64) -> FiniteGroupoid {
    FiniteGroupoid::random(&mut StdRng::seed_from_u64(seed), 1, 1, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn random_groupoid_pairings_pass(seed in any::<u64>()) {
        let p = canonical_groupoid_pairing(&random_groupoid(seed)).unwrap();
        let r = verify_wmha_pairing(&p);
        prop_assert!(r.passed(), "{}", r);
        let r = verify_algebroid_pairing(&p);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn solved_gamma_matches_the_closed_form(seed in any::<u64>()) {
        let p = canonical_groupoid_pairing(&random_groupoid(seed)).unwrap();
        prop_assert_eq!(solve_gamma_rho(&p).unwrap(), closed_gamma_rho(&p));
    }
}
