use aqg_core::algebroid::{balanced_tensor, descend, verify_algebroid, Algebroid, BalancedKind};
use aqg_core::finalg::tensor::pure;
use aqg_core::fixtures::{fix_g3, fix_g3_functions, fix_h, fix_k2, fix_p2};
use aqg_core::{Error, Mat, WeakHopf};

fn e(w: &WeakHopf, label: &str) -> Vec<aqg_core::Q> {
    w.basis(w.algebra().index_of(label).unwrap())
}

#[test]
fn every_fixture_yields_an_algebroid() {
    for w in [fix_h(), fix_p2(), fix_k2(), fix_g3(), fix_g3_functions()] {
        let r = verify_algebroid(&w);
        assert!(r.passed(), "{r}");
        Algebroid::new(&w).unwrap();
    }
}

#[test]
fn hopf_case_has_trivial_quotients() {
    let w = fix_h();
    let alg = Algebroid::new(&w).unwrap();
    for t in alg.tensors() {
        assert_eq!(t.dim(), 4);
        assert_eq!(t.pi(), &Mat::identity(4));
    }
    assert_eq!(alg.canonical(1), w.t(1));
    let s = alg.summary(&w);
    assert_eq!(s.t_b, Mat::identity(1));
}

#[test]
fn pair_groupoid_quotients_are_eight_dimensional() {
    let w = fix_p2();
    let alg = Algebroid::new(&w).unwrap();
    for t in alg.tensors() {
        assert_eq!(t.dim(), 8, "{}", t.kind());
    }
    for k in 1..=4 {
        assert_eq!(alg.canonical(k).shape(), (8, 8));
        assert_eq!(alg.canonical(k).rank(), 8);
    }
    let bb = alg.tensor(BalancedKind::BB);
    let (u12, u22, u21) = (e(&w, "u12"), e(&w, "u22"), e(&w, "u21"));
    assert_eq!(bb.project(&pure(&w.mul(&u12, &u22), &u21)), bb.project(&pure(&u12, &w.mul(&u22, &u21))));
    assert_eq!(alg.summary(&w).t_b, Mat::identity(2));
}

#[test]
fn function_algebra_maps_are_bijective() {
    let w = fix_k2();
    let alg = Algebroid::new(&w).unwrap();
    for k in 1..=4 {
        assert!(alg.canonical(k).is_invertible());
    }
}

#[test]
fn mismatched_kinds_do_not_descend() {
    let w = fix_p2();
    // wrong domain: A^C⊗^CA instead of A_B⊗_BA
    let wrong = balanced_tensor(&w, BalancedKind::SCSC);
    let scc = balanced_tensor(&w, BalancedKind::SCC);
    match descend("𝔗1", w.t(1), &wrong, &scc) {
        Err(Error::MapDoesNotDescend { witness, .. }) => assert!(wrong.killed().contains(&witness)),
        other => panic!("expected a descent failure, got {other:?}"),
    }
}
