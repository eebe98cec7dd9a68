use aqg_core::error::Error;
use aqg_core::exactla::{vector, Subspace};
use aqg_core::fixtures::{fix_g3, fix_g3_functions, fix_h, fix_k2, fix_p2};
use aqg_core::report::Status;
use aqg_core::integrals::{
    check_reformulations, faithful_combination, is_faithful, is_left_invariant, is_right_invariant, partial_integrals,
    solve_left_integrals, solve_right_integrals, verify_integrals, verify_measured,
};
use aqg_core::{Side, WeakHopf, Q};
use proptest::prelude::*;

fn idx(w: &WeakHopf, label: &str) -> usize {
    w.algebra().index_of(label).unwrap_or_else(|| panic!("no basis element {label}"))
}

fn indicator(w: &WeakHopf, labels: &[&str]) -> Vec<Q> {
    let mut v = vector::zeros(w.dim());
    for l in labels {
        v[idx(w, l)] = Q::ONE;
    }
    v
}

fn span(w: &WeakHopf, vs: &[Vec<Q>]) -> Subspace {
    Subspace::span(w.dim(), vs.iter().cloned())
}

#[test]
fn group_algebra_has_the_delta_at_the_identity() {
    let w = fix_h();
    let left = solve_left_integrals(&w);
    assert_eq!(left, vec![indicator(&w, &["ue"])]);
    assert_eq!(solve_right_integrals(&w), left);
    assert!(is_faithful(&w, &left[0]).faithful);
}

#[test]
fn pair_groupoid_integrals_are_supported_on_identities() {
    let w = fix_p2();
    let left = solve_left_integrals(&w);
    // φ(u_g)u_g ∈ span{u11, u22} forces φ(u12) = φ(u21) = 0 and nothing else
    let expected = span(&w, &[indicator(&w, &["u11"]), indicator(&w, &["u22"])]);
    assert_eq!(span(&w, &left), expected);
    assert_eq!(span(&w, &solve_right_integrals(&w)), expected);
    for phi in &left {
        assert_eq!(vector::first_nonzero(phi).map(|i| phi[i].clone()), Some(Q::ONE));
        assert!(check_reformulations(&w, phi, Side::Left).is_ok());
        assert!(check_reformulations(&w, phi, Side::Right).is_ok());
    }
    let unit = indicator(&w, &["u11", "u22"]);
    assert!(is_left_invariant(&w, &unit));
    let verdict = is_faithful(&w, &unit);
    assert!(verdict.faithful);
    assert!(verdict.spans.iter().all(|s| s.holds), "{:?}", verdict.spans);
    // a single summand is invariant but degenerate
    assert!(!is_faithful(&w, &left[0]).faithful);
}

#[test]
fn function_algebra_integrals_are_constant_along_sources() {
    let w = fix_k2();
    // (ι⊗φ)Δ(δ_g) = Σ_k φ(δ_k) δ_{gk⁻¹} lies in target functions iff φ only depends on the source
    let by_source = [indicator(&w, &["d11", "d21"]), indicator(&w, &["d12", "d22"])];
    let by_target = [indicator(&w, &["d11", "d12"]), indicator(&w, &["d21", "d22"])];
    assert_eq!(span(&w, &solve_left_integrals(&w)), span(&w, &by_source));
    assert_eq!(span(&w, &solve_right_integrals(&w)), span(&w, &by_target));
    let total = indicator(&w, &["d11", "d12", "d21", "d22"]);
    let verdict = is_faithful(&w, &total);
    assert!(verdict.faithful);
    assert_eq!(verdict.gram_rank, 4);
    assert!(verdict.spans.iter().all(|s| s.holds));
}

#[test]
fn counit_is_not_faithful_on_the_pair_groupoid() {
    let w = fix_p2();
    let verdict = is_faithful(&w, w.counit());
    assert!(!verdict.faithful);
    assert_eq!(verdict.gram_rank, 2);
    // ε(u_g u_h) only sees whether g, h compose, so u11 and u21 act alike
    let witness = verdict.witness.expect("radical vector");
    let d = vector::sub(&indicator(&w, &["u11"]), &indicator(&w, &["u21"]));
    let e = vector::sub(&indicator(&w, &["u12"]), &indicator(&w, &["u22"]));
    assert!(span(&w, &[d, e]).contains(&witness));
}

#[test]
fn counit_is_rejected_as_integral() {
    let w = fix_p2();
    let unit = indicator(&w, &["u11", "u22"]);
    match partial_integrals(&w, w.counit(), &unit) {
        Err(Error::NotInvariant { side: Side::Left, basis }) => assert!(basis == idx(&w, "u12") || basis == idx(&w, "u21")),
        other => panic!("expected invariance failure, got {other:?}"),
    }
    assert!(matches!(partial_integrals(&w, &unit, w.counit()), Err(Error::NotInvariant { side: Side::Right, .. })));
    assert!(matches!(partial_integrals(&w, &vector::zeros(4), &unit), Err(Error::Structure(_))));
}

#[test]
fn pair_groupoid_partial_integrals() {
    let w = fix_p2();
    let unit = indicator(&w, &["u11", "u22"]);
    let data = partial_integrals(&w, &unit, &unit).unwrap();
    let col = |m: &aqg_core::Mat, l: &str| m.column(idx(&w, l));
    assert_eq!(col(data.big_phi(), "u12"), vector::zeros(4));
    assert_eq!(col(data.big_phi(), "u11"), indicator(&w, &["u11"]));
    assert_eq!(col(data.phi_b(), "u11"), indicator(&w, &["u11"]));
    assert_eq!(col(data.big_psi(), "u22"), indicator(&w, &["u22"]));
}

#[test]
fn all_fixtures_are_measured() {
    for w in [fix_h(), fix_p2(), fix_k2(), fix_g3(), fix_g3_functions()] {
        let phi = faithful_combination(&w, &solve_left_integrals(&w)).expect("faithful left integral");
        let psi = faithful_combination(&w, &solve_right_integrals(&w)).expect("faithful right integral");
        let data = partial_integrals(&w, &phi, &psi).unwrap();
        let r = verify_integrals(&w, &data);
        assert!(r.passed(), "{r}");
        let m = verify_measured(&w, &data);
        assert!(m.passed(), "{m}");
        assert_eq!(m.summary.total, 10);
    }
}

#[test]
fn broken_antipode_breaks_the_counit_factorization() {
    let w = fix_p2();
    let unit = indicator(&w, &["u11", "u22"]);
    let data = partial_integrals(&w, &unit, &unit).unwrap();
    // same algebra and coproduct, antipode scaled on u12 and u21
    let mut s = w.antipode().clone();
    for l in ["u12", "u21"] {
        let j = idx(&w, l);
        for k in 0..4 {
            let v = s.get(k, j).clone() * Q::from(2);
            s.set(k, j, v);
        }
    }
    let bad = w.with_antipode(s).expect("a scaled antipode is still invertible");
    let r = verify_measured(&bad, &data);
    // the slice identities only apply S to base elements, where it is unchanged
    assert_eq!(r.status_of("measured.m1"), Some(Status::Pass));
    assert_eq!(r.status_of("measured.counit"), Some(Status::Fail));
}

proptest! {
    #[test]
    fn combinations_of_integrals_stay_invariant(c in proptest::collection::vec(-5i64..=5, 4)) {
        for w in [fix_p2(), fix_k2(), fix_g3()] {
            let left = solve_left_integrals(&w);
            let right = solve_right_integrals(&w);
            let mut phi = vector::zeros(w.dim());
            let mut psi = vector::zeros(w.dim());
            for (i, b) in left.iter().enumerate() {
                vector::axpy(&mut phi, &Q::from(c[i % c.len()]), b);
            }
            for (i, b) in right.iter().enumerate() {
                vector::axpy(&mut psi, &Q::from(c[(i + 1) % c.len()]), b);
            }
            prop_assert!(is_left_invariant(&w, &phi));
            prop_assert!(is_right_invariant(&w, &psi));
            prop_assert!(check_reformulations(&w, &phi, Side::Left).is_ok());
            prop_assert!(check_reformulations(&w, &psi, Side::Right).is_ok());
            prop_assert!(is_right_invariant(&w, &w.antipode().vec_mul(&phi)));
        }
    }
}
