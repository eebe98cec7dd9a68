use aqg_core::exactla::vector;
use aqg_core::finalg::tensor::pure;
use aqg_core::fixtures::{fix_g3, fix_g3_functions, fix_h, fix_k2, fix_p2};
use aqg_core::report::Status;
use aqg_core::wmha::antipode::solve_antipode;
use aqg_core::{verify_wmha, Mat, WeakHopf, Q};

fn idx(w: &WeakHopf, label: &str) -> usize {
    w.algebra().index_of(label).unwrap_or_else(|| panic!("no basis element {label}"))
}

fn e(w: &WeakHopf, label: &str) -> Vec<Q> {
    w.basis(idx(w, label))
}

fn sum(vs: &[Vec<Q>]) -> Vec<Q> {
    vs.iter().fold(vector::zeros(vs[0].len()), |acc, v| vector::add(&acc, v))
}

#[test]
fn all_fixtures_pass_the_full_suite() {
    for w in [fix_h(), fix_p2(), fix_k2(), fix_g3(), fix_g3_functions()] {
        let r = verify_wmha(&w);
        assert!(r.passed(), "{r}");
        assert_eq!(r.summary.total, 31, "{}", w.name());
    }
}

#[test]
fn hopf_case_collapses() {
    let w = fix_h();
    let one = e(&w, "ue");
    assert_eq!(w.unit(), one.as_slice());
    assert_eq!(w.idempotent(), pure(&one, &one));
    assert_eq!(w.base_b().dim(), 1);
    assert_eq!(w.base_c().dim(), 1);
    assert_eq!(w.eps_s().column(idx(&w, "ug1")), one);
    assert_eq!(w.r(1), &w.t(1).inverse().unwrap());
    assert_eq!(w.mu_b().unwrap()[0], Q::ONE);
}

#[test]
fn pair_groupoid_algebra_values() {
    let w = fix_p2();
    let (u11, u12, u21, u22) = (e(&w, "u11"), e(&w, "u12"), e(&w, "u21"), e(&w, "u22"));
    let big_e = sum(&[pure(&u11, &u11), pure(&u22, &u22)]);
    assert_eq!(w.idempotent(), big_e);
    assert_eq!(w.f(1), big_e);
    assert_eq!(w.t(1).mul_vec(&pure(&u12, &u21)), pure(&u12, &u11));
    assert!(vector::is_zero(&w.t(1).mul_vec(&pure(&u12, &u12))));
    assert!(vector::is_zero(&w.r(1).mul(w.t(1)).mul_vec(&pure(&u12, &u12))));
    assert_eq!(w.eps_s().mul_vec(&u12), u22);
    assert_eq!(w.eps_t().mul_vec(&u12), u11);
    assert!(w.base_b().contains(&u11) && w.base_b().contains(&u22) && w.base_b().dim() == 2);
    assert_eq!(w.base_b(), w.base_c());
    let mu = w.mu_b().unwrap();
    assert_eq!((vector::dot(mu, &u11), vector::dot(mu, &u22)), (Q::ONE, Q::ONE));
    assert_eq!(w.sigma_b(), Mat::identity(4));
}

#[test]
fn function_algebra_values() {
    let w = fix_k2();
    let d = |s: &str| e(&w, s);
    // composable pairs (h, k): src(h) = tgt(k)
    let pairs = [("11", "11"), ("11", "12"), ("12", "21"), ("12", "22"), ("21", "11"), ("21", "12"), ("22", "21"), ("22", "22")];
    let expected = sum(&pairs.map(|(h, k)| pure(&d(&format!("d{h}")), &d(&format!("d{k}")))));
    assert_eq!(w.idempotent(), expected);
    assert_eq!(w.delta(&d("d12")), sum(&[pure(&d("d11"), &d("d12")), pure(&d("d12"), &d("d22"))]));
    // source functions: Σ_k δ_{k←i}
    let src1 = sum(&[d("d11"), d("d21")]);
    let src2 = sum(&[d("d12"), d("d22")]);
    assert!(w.base_b().contains(&src1) && w.base_b().contains(&src2) && w.base_b().dim() == 2);
    let mu = w.mu_b().unwrap();
    assert_eq!((vector::dot(mu, &src1), vector::dot(mu, &src2)), (Q::ONE, Q::ONE));
}

#[test]
fn identity_antipode_is_caught() {
    let w = fix_p2().with_antipode(Mat::identity(4)).unwrap();
    let r = verify_wmha(&w);
    assert!(!r.passed());
    let anti = r.entry("antipode.anti_homomorphism").unwrap();
    assert_eq!(anti.status, Status::Fail);
    let u12 = idx(&w, "u12");
    assert!(anti.witness.as_ref().unwrap().indices.contains(&u12), "{r}");
}

#[test]
fn antipode_solver_recovers_fixtures() {
    for w in [fix_h(), fix_p2(), fix_k2()] {
        let s = solve_antipode(w.algebra(), w.coproduct(), w.counit()).unwrap();
        assert_eq!(&s, w.antipode(), "{}", w.name());
    }
}

#[test]
fn json_round_trip() {
    for w in [fix_p2(), fix_k2()] {
        let j = w.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = WeakHopf::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.to_json(), j);
        assert_eq!(back.idempotent(), w.idempotent());
    }
}
