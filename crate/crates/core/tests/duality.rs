use aqg_core::duality::{
    check_biduality, dual_wmha, duality_commutes_check, faithful_left_integral, isomorphism_report, verify_dual,
};
use aqg_core::error::Error;
use aqg_core::exactla::vector;
use aqg_core::fixtures::{fix_g3, fix_h, fix_k2, fix_p2, pair2, z2};
use aqg_core::groupoid::{function_algebra, groupoid_algebra, FiniteGroupoid};
use aqg_core::{Mat, Side, WeakHopf, Q};
use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};

fn indicator(w: &WeakHopf, labels: &[&str]) -> Vec<Q> {
    let mut v = vector::zeros(w.dim());
    for l in labels {
        v[w.algebra().index_of(l).unwrap()] = Q::ONE;
    }
    v
}

fn identities(g: &FiniteGroupoid) -> Vec<usize> {
    (0..g.len()).filter(|&k| g.is_identity(k)).collect()
}

/// Sends basis vector `j` of the dual to basis vector `to(j)`.
fn permutation(n: usize, to: impl Fn(usize) -> usize) -> Mat {
    Mat::from_fn(n, n, |i, j| if i == to(j) { Q::ONE } else { Q::ZERO })
}

#[test]
fn dual_of_the_group_algebra_is_the_function_algebra() {
    let g = z2();
    let w = fix_h();
    let phi = indicator(&w, &["ue"]);
    let dc = dual_wmha(&w, &phi).unwrap();
    // φ(u_g u_h) = [gh = e]
    let m = Mat::from_fn(2, 2, |a, b| if g.compose(a, b) == Some(0) { Q::ONE } else { Q::ZERO });
    assert_eq!(dc.basis_map(), &m);
    let target = function_algebra(&g).unwrap();
    let p = permutation(2, |h| g.inverse(h));
    let r = isomorphism_report(dc.dual(), &target, &p);
    assert!(r.passed(), "{r}");
}

#[test]
fn dual_of_the_pair_groupoid_algebra_is_its_function_algebra() {
    let g = pair2();
    let w = fix_p2();
    let phi = indicator(&w, &["u11", "u22"]);
    let dc = dual_wmha(&w, &phi).unwrap();
    // φ(u_g u_h) = [h = g⁻¹]
    let m = Mat::from_fn(4, 4, |a, b| if b == g.inverse(a) { Q::ONE } else { Q::ZERO });
    assert_eq!(dc.basis_map(), &m);
    assert_eq!(dc.dual().label(1), "φ(·u12)");
    // φ(·u_h) ↦ δ_{h⁻¹}
    let r = isomorphism_report(dc.dual(), &fix_k2(), &permutation(4, |h| g.inverse(h)));
    assert!(r.passed(), "{r}");
    // the identity bijection is not an isomorphism
    assert!(!isomorphism_report(dc.dual(), &fix_k2(), &Mat::identity(4)).passed());
}

#[test]
fn dual_of_the_function_algebra_is_the_groupoid_algebra() {
    let w = fix_k2();
    let total = indicator(&w, &["d11", "d12", "d21", "d22"]);
    let dc = dual_wmha(&w, &total).unwrap();
    // φ(δ_g δ_h) = [g = h], so φ(·δ_h) evaluates at h and corresponds to u_h
    assert_eq!(dc.basis_map(), &Mat::identity(4));
    let r = isomorphism_report(dc.dual(), &fix_p2(), &Mat::identity(4));
    assert!(r.passed(), "{r}");
}

#[test]
fn duals_pass_every_check() {
    for w in [fix_h(), fix_p2(), fix_k2(), fix_g3()] {
        let phi = faithful_left_integral(&w).unwrap();
        let dc = dual_wmha(&w, &phi).unwrap();
        let r = verify_dual(&dc);
        assert!(r.passed(), "{r}");
        assert_eq!(dc.dual().dim(), w.dim());
    }
}

#[test]
fn biduals_are_isomorphic_to_the_source() {
    for w in [fix_h(), fix_p2(), fix_g3()] {
        let dc = dual_wmha(&w, &faithful_left_integral(&w).unwrap()).unwrap();
        let r = check_biduality(&dc);
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary.total, 6);
    }
}

#[test]
fn both_routes_to_the_algebroid_pairing_agree() {
    for w in [fix_h(), fix_p2(), fix_g3()] {
        let phi = faithful_left_integral(&w).unwrap();
        let r = duality_commutes_check(&w, &phi).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary.skipped, 0);
        for k in 1..=4 {
            assert!(r.entry(&format!("commute.form{k}")).is_some());
            assert!(r.entry(&format!("commute.quotient{k}")).is_some());
        }
    }
}

#[test]
fn degenerate_or_non_invariant_functionals_are_refused() {
    let w = fix_p2();
    let half = indicator(&w, &["u11"]);
    assert!(matches!(dual_wmha(&w, &half), Err(Error::NotFaithful(_))));
    assert!(matches!(dual_wmha(&w, w.counit()), Err(Error::NotInvariant { side: Side::Left, .. })));
}

#[test]
fn commutative_sources_have_cocommutative_duals() {
    let w = fix_k2();
    let dc = dual_wmha(&w, &faithful_left_integral(&w).unwrap()).unwrap();
    let d = dc.dual();
    assert!(!d.algebra().is_commutative());
    let flipped = aqg_core::finalg::tensor::flip_matrix(4).mul(d.coproduct());
    assert_eq!(&flipped, d.coproduct());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]
    #[test]
    fn random_groupoid_duals(seed in any::<u64>()) {
        let g = FiniteGroupoid::random(&mut StdRng::seed_from_u64(seed), 1, 1, 8);
        let w = groupoid_algebra(&g).unwrap();
        // the indicator of the identities is faithful on every groupoid algebra
        let mut phi = vector::zeros(w.dim());
        for k in identities(&g) {
            phi[k] = Q::ONE;
        }
        let dc = dual_wmha(&w, &phi).unwrap();
        let r = verify_dual(&dc);
        prop_assert!(r.passed(), "{}", r);
        let iso = isomorphism_report(dc.dual(), &function_algebra(&g).unwrap(), &permutation(w.dim(), |h| g.inverse(h)));
        prop_assert!(iso.passed(), "{}", iso);
        let c = duality_commutes_check(&w, &phi).unwrap();
        prop_assert!(c.passed(), "{}", c);
    }
}
