//! Checks for pairings of weak multiplier Hopf algebras and of their algebroids.

use super::gamma::{closed_gamma_forms, closed_gamma_rho, gamma1_by_module_law, gamma_forms, quotient_pairings, solve_gamma_rho};
use super::{BaseMaps, BilinearMap, DualPair, GammaRho};
use crate::algebroid::Algebroid;
use crate::checks::{check_all, fail, support};
use crate::exactla::{vector, BilinearForm, InducedForm, Mat, Subspace, Q};
use crate::finalg::tensor::{self, pure};
use crate::report::{Outcome, VerificationReport, Witness};
use crate::wmha::WeakHopf;

fn to_witness(e: crate::error::Error) -> Witness {
    Witness::new(vec![], e.to_string())
}

/// Compares two matrices whose rows index `A⊗A` and columns `A′⊗A′`.
fn same_on_pairs(p: &DualPair, what: &str, lhs: &Mat, rhs: &Mat) -> Outcome {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((r, c)) => fail(
            vec![r, c],
            format!("{what} differs on ({}, {})", p.left().tensor_label(r), p.right().tensor_label(c)),
        ),
    }
}

/// Compares two matrices indexed by quotient basis vectors.
fn same_on_quotients(what: &str, lhs: &Mat, rhs: &Mat) -> Outcome {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((r, c)) => fail(vec![r, c], format!("{what} differs on quotient basis pair ({r}, {c})")),
    }
}

fn vectors_equal(what: impl Fn() -> String, indices: Vec<usize>, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        fail(indices, what())
    }
}

/// The `n²×n²` matrix whose column `i·n + j` is `f(e_i, e_j)`.
fn on_square(w: &WeakHopf, f: impl Fn(&[Q], &[Q]) -> Vec<Q>) -> Mat {
    let n = w.dim();
    let cols: Vec<Vec<Q>> = (0..n * n).map(|ij| f(&w.basis(ij / n), &w.basis(ij % n))).collect();
    Mat::from_columns(n * n, &cols)
}

/// Runs every pairing identity and returns one entry per identity.
pub fn verify_wmha_pairing(p: &DualPair) -> VerificationReport {
    let mut r = VerificationReport::new(format!("pairing of {} with {}", p.left().name(), p.right().name()));
    record_standing(&mut r, p);
    r.record("pairing.t1_t2", "⟨T₁u, u′⟩ = ⟨u, T′₂u′⟩", adjoint(p, p.left().t(1), p.right().t(2)));
    r.record("pairing.t2_t1", "⟨T₂u, u′⟩ = ⟨u, T′₁u′⟩", adjoint(p, p.left().t(2), p.right().t(1)));
    r.record("pairing.coproduct_duality", "⟨ab, a′⟩ = ⟨a⊗b, Δ′(a′)⟩ and ⟨a, a′b′⟩ = ⟨Δ(a), a′⊗b′⟩", coproduct_duality(p));
    r.record("pairing.t3_flip", "⟨T₃(a⊗b), a′⊗b′⟩ = ⟨b⊗a, T′₃(b′⊗a′)⟩", flip_adjoint(p, 3));
    r.record("pairing.t4_flip", "⟨T₄(a⊗b), a′⊗b′⟩ = ⟨b⊗a, T′₄(b′⊗a′)⟩", flip_adjoint(p, 4));

    let (w, v) = (p.left(), p.right());
    r.record("derived.r1_r2", "derived identity: ⟨R₁u, u′⟩ = ⟨u, R′₂u′⟩", adjoint(p, w.r(1), v.r(2)));
    r.record("derived.r2_r1", "derived identity: ⟨R₂u, u′⟩ = ⟨u, R′₁u′⟩", adjoint(p, w.r(2), v.r(1)));
    r.record(
        "derived.idempotent_left",
        "derived identity: ⟨E(a⊗b), u′⟩ = ⟨a⊗b, R′₂T′₂u′⟩",
        adjoint(p, &w.left_mult_tensor(w.idempotent()), &v.r(2).mul(v.t(2))),
    );
    r.record(
        "derived.idempotent_right",
        "derived identity: ⟨(a⊗b)E, u′⟩ = ⟨a⊗b, R′₁T′₁u′⟩",
        adjoint(p, &w.right_mult_tensor(w.idempotent()), &v.r(1).mul(v.t(1))),
    );

    match p.base_maps() {
        Err(e) => {
            r.record("base.alpha_beta", "α and β are well defined by their spanning formulas", Err(to_witness(e)));
            for id in ["base.anti_isomorphisms", "base.module_formulas", "base.idempotent", "base.antipode_relations"] {
                r.skip(id, "needs α and β", "α or β could not be built");
            }
        }
        Ok(maps) => {
            r.record("base.alpha_beta", "α and β are well defined by their spanning formulas", Ok(()));
            record_base(&mut r, p, &maps);
        }
    }
    r
}

fn record_standing(r: &mut VerificationReport, p: &DualPair) {
    r.record("pairing.nondegenerate", "⟨·,·⟩ is non-degenerate", nondegenerate(p));
    r.record(
        "pairing.admissible",
        "⟨a, a′b′⟩ = ⟨a◁a′, b′⟩ = ⟨b′▷a, a′⟩, ⟨ab, a′⟩ = ⟨a, b▷a′⟩ = ⟨b, a′◁a⟩, all four actions unital",
        admissible(p),
    );
    r.record("pairing.antipode_adjoint", "⟨S(a), a′⟩ = ⟨a, S′(a′)⟩", antipode_adjoint(p));
}

fn record_base(r: &mut VerificationReport, p: &DualPair, maps: &BaseMaps) {
    r.record("base.anti_isomorphisms", "α: B → B′ and β: C → C′ are bijective anti-homomorphisms", anti_isomorphisms(p, maps));
    r.record(
        "base.module_formulas",
        "⟨ax,a′⟩ = ⟨a,a′α(x)⟩, ⟨xa,a′⟩ = ⟨a,a′S′(α(x))⟩, ⟨ya,a′⟩ = ⟨a,β(y)a′⟩, ⟨ay,a′⟩ = ⟨a,S′(β(y))a′⟩",
        module_formulas(p, maps),
    );
    r.record("base.idempotent", "(α⊗β)E = E′", idempotent_transport(p, maps));
    r.record("base.antipode_relations", "α(x) = S′(β(S(x))), β(y) = S′(α(S(y))), α(S²(x)) = S′⁻²(α(x))", antipode_relations(p, maps));
}

fn nondegenerate(p: &DualPair) -> Outcome {
    if p.form().is_nondegenerate() {
        return Ok(());
    }
    let (n, m) = p.gram().shape();
    if n != m {
        return fail(vec![], format!("the gram is {n}x{m}"));
    }
    let radical = p.form().left_radical();
    let x = radical.basis().first().cloned().unwrap_or_default();
    fail(support(&x), format!("{} pairs to zero with everything", p.left().describe(&x)))
}

fn admissible(p: &DualPair) -> Outcome {
    let (w, v) = (p.left(), p.right());
    let (n, m) = (w.dim(), v.dim());
    let a = p.actions();
    let (e, f) = (|i: usize| w.basis(i), |j: usize| v.basis(j));
    for i in 0..n {
        for j in 0..m {
            for k in 0..m {
                let value = p.pair(&e(i), &v.mul(&f(j), &f(k)));
                if p.pair(&a.right_on_left.at(i, j), &f(k)) != value || p.pair(&a.left_on_left.at(k, i), &f(j)) != value {
                    return fail(vec![i, j, k], format!("⟨a, a′b′⟩ at a = {}, a′ = {}, b′ = {}", w.label(i), v.label(j), v.label(k)));
                }
            }
        }
    }
    for i in 0..n {
        for k in 0..n {
            for j in 0..m {
                let value = p.pair(&w.mul(&e(i), &e(k)), &f(j));
                if p.pair(&e(i), &a.left_on_right.at(k, j)) != value || p.pair(&e(k), &a.right_on_right.at(j, i)) != value {
                    return fail(vec![i, k, j], format!("⟨ab, a′⟩ at a = {}, b = {}, a′ = {}", w.label(i), w.label(k), v.label(j)));
                }
            }
        }
    }
    let names = ["a◁a′", "b′▷a", "b▷a′", "a′◁a"];
    match a.unital().iter().position(|u| !u) {
        None => Ok(()),
        Some(k) => fail(vec![k], format!("the values of {} do not span the algebra", names[k])),
    }
}

fn antipode_adjoint(p: &DualPair) -> Outcome {
    let lhs = p.left().antipode().transpose().mul(p.gram());
    let rhs = p.gram().mul(p.right().antipode());
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some((i, j)) => fail(vec![i, j], format!("⟨S(a), a′⟩ ≠ ⟨a, S′(a′)⟩ at ({}, {})", p.left().label(i), p.right().label(j))),
    }
}

/// `⟨X u, u′⟩ = ⟨u, Y u′⟩` on the tensor squares.
fn adjoint(p: &DualPair, x: &Mat, y: &Mat) -> Outcome {
    let g2 = p.tensor_gram();
    same_on_pairs(p, "the pairing", &x.transpose().mul(&g2), &g2.mul(y))
}

fn flip_adjoint(p: &DualPair, k: usize) -> Outcome {
    let (n, m) = (p.left().dim(), p.right().dim());
    let g2 = p.tensor_gram();
    let lhs = p.left().t(k).transpose().mul(&g2);
    let rhs = tensor::flip_matrix(n).mul(&g2).mul(p.right().t(k)).mul(&tensor::flip_matrix(m));
    same_on_pairs(p, "the pairing", &lhs, &rhs)
}

fn coproduct_duality(p: &DualPair) -> Outcome {
    let (w, v) = (p.left(), p.right());
    let g = p.gram();
    let g2 = p.tensor_gram();
    let lhs = w.algebra().mult_matrix().transpose().mul(g);
    let rhs = g2.mul(v.coproduct());
    if let Some((ab, j)) = lhs.first_difference(&rhs) {
        return fail(vec![ab, j], format!("⟨ab, a′⟩ ≠ ⟨a⊗b, Δ′(a′)⟩ at a⊗b = {}, a′ = {}", w.tensor_label(ab), v.label(j)));
    }
    let lhs = g.mul(&v.algebra().mult_matrix());
    let rhs = w.coproduct().transpose().mul(&g2);
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some((i, ab)) => fail(vec![i, ab], format!("⟨a, a′b′⟩ ≠ ⟨Δ(a), a′⊗b′⟩ at a = {}, a′⊗b′ = {}", w.label(i), v.tensor_label(ab))),
    }
}

fn anti_isomorphisms(p: &DualPair, maps: &BaseMaps) -> Outcome {
    let (w, v) = (p.left(), p.right());
    let sides = [("α", &maps.alpha, w.base_b(), v.base_b()), ("β", &maps.beta, w.base_c(), v.base_c())];
    for (name, map, dom, cod) in sides {
        let d = dom.basis();
        let images = Subspace::span(v.dim(), d.iter().map(|x| map.mul_vec(x)));
        if &images != cod || d.len() != cod.dim() {
            return fail(vec![], format!("{name} maps onto {} of {} dimensions", images.dim(), cod.dim()));
        }
        for (k, x) in d.iter().enumerate() {
            for (l, y) in d.iter().enumerate() {
                let lhs = map.mul_vec(&w.mul(x, y));
                let rhs = v.mul(&map.mul_vec(y), &map.mul_vec(x));
                vectors_equal(|| format!("{name}(xy) ≠ {name}(y){name}(x) on base vectors {k}, {l}"), vec![k, l], &lhs, &rhs)?;
            }
        }
    }
    Ok(())
}

fn module_formulas(p: &DualPair, maps: &BaseMaps) -> Outcome {
    let (w, v) = (p.left(), p.right());
    let (n, m) = (w.dim(), v.dim());
    let pairs = || (0..n).flat_map(move |i| (0..m).map(move |j| (i, j)));
    for x in w.base_b().basis() {
        let ax = maps.alpha.mul_vec(x);
        let sax = v.s(&ax);
        check_all(pairs(), |(i, j)| {
            let (a, a2) = (w.basis(i), v.basis(j));
            if p.pair(&w.mul(&a, x), &a2) != p.pair(&a, &v.mul(&a2, &ax)) {
                return fail(vec![i, j], format!("⟨ax, a′⟩ ≠ ⟨a, a′α(x)⟩ at x = {}", w.describe(x)));
            }
            if p.pair(&w.mul(x, &a), &a2) != p.pair(&a, &v.mul(&a2, &sax)) {
                return fail(vec![i, j], format!("⟨xa, a′⟩ ≠ ⟨a, a′S′(α(x))⟩ at x = {}", w.describe(x)));
            }
            Ok(())
        })?;
    }
    for y in w.base_c().basis() {
        let by = maps.beta.mul_vec(y);
        let sby = v.s(&by);
        check_all(pairs(), |(i, j)| {
            let (a, a2) = (w.basis(i), v.basis(j));
            if p.pair(&w.mul(y, &a), &a2) != p.pair(&a, &v.mul(&by, &a2)) {
                return fail(vec![i, j], format!("⟨ya, a′⟩ ≠ ⟨a, β(y)a′⟩ at y = {}", w.describe(y)));
            }
            if p.pair(&w.mul(&a, y), &a2) != p.pair(&a, &v.mul(&sby, &a2)) {
                return fail(vec![i, j], format!("⟨ay, a′⟩ ≠ ⟨a, S′(β(y))a′⟩ at y = {}", w.describe(y)));
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn idempotent_transport(p: &DualPair, maps: &BaseMaps) -> Outcome {
    let lhs = maps.alpha.kron(&maps.beta).mul_vec(p.left().idempotent());
    let rhs = p.right().idempotent();
    vectors_equal(
        || format!("(α⊗β)E = {} but E′ = {}", p.right().describe_tensor(&lhs), p.right().describe_tensor(rhs)),
        vec![],
        &lhs,
        rhs,
    )
}

fn antipode_relations(p: &DualPair, maps: &BaseMaps) -> Outcome {
    let (w, v) = (p.left(), p.right());
    for x in w.base_b().basis() {
        let ax = maps.alpha.mul_vec(x);
        vectors_equal(|| format!("α(x) ≠ S′(β(S(x))) at x = {}", w.describe(x)), support(x), &ax, &v.s(&maps.beta.mul_vec(&w.s(x))))?;
        let lhs = maps.alpha.mul_vec(&w.s(&w.s(x)));
        vectors_equal(|| format!("α(S²(x)) ≠ S′⁻²(α(x)) at x = {}", w.describe(x)), support(x), &lhs, &v.s_inv(&v.s_inv(&ax)))?;
    }
    for y in w.base_c().basis() {
        let by = maps.beta.mul_vec(y);
        vectors_equal(|| format!("β(y) ≠ S′(α(S(y))) at y = {}", w.describe(y)), support(y), &by, &v.s(&maps.alpha.mul_vec(&w.s(y))))?;
    }
    Ok(())
}

/// Checks the standing assumptions, `γ`, `ρ`, the forms `Γᵢ`, their descent to
/// the balanced tensor products and the compatibility with the canonical maps.
pub fn verify_algebroid_pairing(p: &DualPair) -> VerificationReport {
    algebroid_report(p, None)
}

/// As [`verify_algebroid_pairing`], but runs the `γ`, `ρ` and form checks on
/// the supplied maps, which must also agree with the reduced solve.
pub fn verify_algebroid_pairing_with(p: &DualPair, gr: &GammaRho) -> VerificationReport {
    algebroid_report(p, Some(gr))
}

fn algebroid_report(p: &DualPair, supplied: Option<&GammaRho>) -> VerificationReport {
    let mut r = VerificationReport::new(format!("algebroid pairing of {} with {}", p.left().name(), p.right().name()));
    record_standing(&mut r, p);
    let maps = match p.base_maps() {
        Ok(m) => {
            r.record("base.alpha_beta", "α and β are well defined", Ok(()));
            record_base(&mut r, p, &m);
            Some(m)
        }
        Err(e) => {
            r.record("base.alpha_beta", "α and β are well defined", Err(to_witness(e)));
            None
        }
    };
    if let Some(m) = &maps {
        r.record("base.kms", "μ_B and μ_C exist on both sides with μ′_B∘α = μ_B and μ′_C∘β = μ_C", kms(p, m));
    }

    let solved = solve_gamma_rho(p);
    let reduced = match (&solved, supplied) {
        (Err(e), _) => Err(Witness::new(vec![], e.to_string())),
        (Ok(_), None) => Ok(()),
        (Ok(g), Some(s)) => same_gamma_rho(p, "the reduced solve", g, s),
    };
    r.record("gamma.reduced", "⟨xa, a′⟩ = μ_B(x·x₁) and its analogues have solutions", reduced);
    let solved = match supplied {
        Some(s) => Ok(s.clone()),
        None => solved,
    };
    let (Ok(gr), Some(maps)) = (solved, maps) else {
        for id in ["gamma.*", "forms.*", "quotient.*"] {
            r.skip(id, "needs γ, ρ, α and β", "the base data could not be built");
        }
        return r;
    };
    r.record("gamma.module_laws", "γ₁(xa,a′) = xγ₁, γ₂(ax,a′) = γ₂x, ρ₁(ya,a′) = yρ₁, ρ₂(ay,a′) = ρ₂y", module_laws(p, &gr));
    r.record("gamma.normalization", "μ_B(γᵢ(a,a′)) = ⟨a,a′⟩ = μ_C(ρᵢ(a,a′))", normalization(p, &gr));
    r.record(
        "gamma.cross_antipode",
        "ρ₁(a,a′) = S⁻¹(γ₂(S(a),S′⁻¹(a′))) and ρ₂(a,a′) = S⁻¹(γ₁(S(a),S′⁻¹(a′)))",
        cross_antipode(p, &gr),
    );
    r.record(
        "gamma.second_variable",
        "γ₁(a,a′S′(α(x))) = γ₁(a,a′)σ_B(x), γ₂(a,a′α(x)) = σ_B⁻¹(x)γ₂(a,a′), ρ₁(a,β(y)a′) = ρ₁(a,a′)σ_C(y), ρ₂(a,S′(β(y))a′) = σ_C⁻¹(y)ρ₂(a,a′)",
        second_variable(p, &gr, &maps),
    );
    let from_wmha = !p.base_maps_supplied();
    let wmha_ok = verify_wmha_pairing(p).passed();
    if from_wmha && wmha_ok {
        r.record("gamma.closed_form", "γ₁ = S⁻¹(E₂)⟨E₁a,a′⟩, γ₂ = S(E₂)⟨aE₁,a′⟩, ρ₁ = S(E₁)⟨E₂a,a′⟩, ρ₂ = S⁻¹(E₁)⟨aE₂,a′⟩", closed_form(p, &gr));
    } else {
        r.skip("gamma.closed_form", "γ and ρ agree with their E-contraction formulas", "the pair does not satisfy the weak multiplier Hopf pairing axioms");
    }
    r.record("gamma.unique", "γ₁ is determined by its module law and μ_B-normalization", uniqueness(p, &gr));

    let forms = match gamma_forms(p, &gr) {
        Ok(f) => f,
        Err(e) => {
            r.record("forms.built", "Γ₁..Γ₄ are built from γ and ρ", Err(to_witness(e)));
            return r;
        }
    };
    r.record("forms.first_variable", "Γᵢ is balanced in the first variable", first_variable(p, &forms));
    r.record("forms.second_variable", "Γᵢ is balanced in the second variable", second_variable_forms(p, &forms));
    if wmha_ok {
        r.record("forms.closed_form", "Γ₁ = ⟨E·,·⟩, Γ₂ = ⟨(a⊗1)F₁(1⊗b),·⟩, Γ₃ = ⟨·E,·⟩, Γ₄ = ⟨(a⊗1)F₂(1⊗b),·⟩", forms_closed(p, &forms));
    } else {
        r.skip("forms.closed_form", "Γᵢ agree with their closed forms", "the pair does not satisfy the weak multiplier Hopf pairing axioms");
    }

    let quotients = match quotient_pairings(p, &forms) {
        Ok(q) => {
            r.record("quotient.descends", "Γ₁..Γ₄ descend to the balanced tensor products", Ok(()));
            q
        }
        Err(e) => {
            r.record("quotient.descends", "Γ₁..Γ₄ descend to the balanced tensor products", Err(to_witness(e)));
            return r;
        }
    };
    r.record("quotient.nondegenerate", "the four induced pairings are non-degenerate", quotients_nondegenerate(&quotients));
    match (Algebroid::new(p.left()), Algebroid::new(p.right())) {
        (Ok(a), Ok(b)) => record_canonical(&mut r, &a, &b, &quotients),
        (Err(e), _) | (_, Err(e)) => r.record("quotient.canonical_maps", "both canonical maps are built", Err(to_witness(e))),
    }
    r
}

fn kms(p: &DualPair, maps: &BaseMaps) -> Outcome {
    let (w, v) = (p.left(), p.right());
    let pairs = [("μ_B", w.mu_b(), v.mu_b(), &maps.alpha, w.base_b()), ("μ_C", w.mu_c(), v.mu_c(), &maps.beta, w.base_c())];
    for (name, mu, mu2, map, base) in pairs {
        let (Some(mu), Some(mu2)) = (mu, mu2) else {
            return fail(vec![], format!("{name} is missing on one side"));
        };
        for x in base.basis() {
            if vector::dot(mu2, &map.mul_vec(x)) != vector::dot(mu, x) {
                return fail(support(x), format!("{name}′ ∘ map ≠ {name} at {}", w.describe(x)));
            }
        }
    }
    Ok(())
}

fn pairs(p: &DualPair) -> impl Iterator<Item = (usize, usize)> {
    let (n, m) = (p.left().dim(), p.right().dim());
    (0..n).flat_map(move |i| (0..m).map(move |j| (i, j)))
}

fn at_pair(p: &DualPair, what: &str, i: usize, j: usize) -> Outcome {
    fail(vec![i, j], format!("{what} at ({}, {})", p.left().label(i), p.right().label(j)))
}

fn module_laws(p: &DualPair, gr: &GammaRho) -> Outcome {
    let w = p.left();
    let laws: [(&str, &BilinearMap, &Subspace, bool); 4] = [
        ("γ₁(xa,a′) ≠ xγ₁(a,a′)", &gr.gamma1, w.base_b(), false),
        ("γ₂(ax,a′) ≠ γ₂(a,a′)x", &gr.gamma2, w.base_b(), true),
        ("ρ₁(ya,a′) ≠ yρ₁(a,a′)", &gr.rho1, w.base_c(), false),
        ("ρ₂(ay,a′) ≠ ρ₂(a,a′)y", &gr.rho2, w.base_c(), true),
    ];
    for (what, map, base, right) in laws {
        for z in base.basis() {
            check_all(pairs(p), |(i, j)| {
                let (a, a2) = (w.basis(i), p.right().basis(j));
                let (moved, outside) = if right {
                    (w.mul(&a, z), w.mul(&map.at(i, j), z))
                } else {
                    (w.mul(z, &a), w.mul(z, &map.at(i, j)))
                };
                if map.eval(&moved, &a2) != outside {
                    return at_pair(p, &format!("{what} for {}", w.describe(z)), i, j);
                }
                Ok(())
            })?;
        }
    }
    Ok(())
}

fn normalization(p: &DualPair, gr: &GammaRho) -> Outcome {
    let w = p.left();
    let (Some(mu_b), Some(mu_c)) = (w.mu_b(), w.mu_c()) else {
        return fail(vec![], "μ_B or μ_C is missing");
    };
    let maps = [("γ₁", &gr.gamma1, mu_b), ("γ₂", &gr.gamma2, mu_b), ("ρ₁", &gr.rho1, mu_c), ("ρ₂", &gr.rho2, mu_c)];
    check_all(pairs(p), |(i, j)| {
        let value = p.pair(&w.basis(i), &p.right().basis(j));
        for (name, map, mu) in &maps {
            if vector::dot(mu, &map.at(i, j)) != value {
                return at_pair(p, &format!("μ({name}(a,a′)) ≠ ⟨a,a′⟩"), i, j);
            }
        }
        Ok(())
    })
}

fn cross_antipode(p: &DualPair, gr: &GammaRho) -> Outcome {
    let (w, v) = (p.left(), p.right());
    check_all(pairs(p), |(i, j)| {
        let sa = w.s(&w.basis(i));
        let sa2 = v.s_inv(&v.basis(j));
        if gr.rho1.at(i, j) != w.s_inv(&gr.gamma2.eval(&sa, &sa2)) {
            return at_pair(p, "ρ₁(a,a′) ≠ S⁻¹(γ₂(S(a),S′⁻¹(a′)))", i, j);
        }
        if gr.rho2.at(i, j) != w.s_inv(&gr.gamma1.eval(&sa, &sa2)) {
            return at_pair(p, "ρ₂(a,a′) ≠ S⁻¹(γ₁(S(a),S′⁻¹(a′)))", i, j);
        }
        Ok(())
    })
}

fn second_variable(p: &DualPair, gr: &GammaRho, maps: &BaseMaps) -> Outcome {
    let (w, v) = (p.left(), p.right());
    let (sigma_b, sigma_c) = (w.sigma_b(), w.sigma_c());
    let sigma_b_inv = sigma_b.inverse().expect("S is invertible");
    let sigma_c_inv = sigma_c.inverse().expect("S is invertible");
    for x in w.base_b().basis() {
        let ax = maps.alpha.mul_vec(x);
        let sax = v.s(&ax);
        let (sx, sx_inv) = (sigma_b.mul_vec(x), sigma_b_inv.mul_vec(x));
        check_all(pairs(p), |(i, j)| {
            let (a, a2) = (w.basis(i), v.basis(j));
            if gr.gamma1.eval(&a, &v.mul(&a2, &sax)) != w.mul(&gr.gamma1.at(i, j), &sx) {
                return at_pair(p, &format!("γ₁(a,a′S′(α(x))) ≠ γ₁(a,a′)σ_B(x) for x = {}", w.describe(x)), i, j);
            }
            if gr.gamma2.eval(&a, &v.mul(&a2, &ax)) != w.mul(&sx_inv, &gr.gamma2.at(i, j)) {
                return at_pair(p, &format!("γ₂(a,a′α(x)) ≠ σ_B⁻¹(x)γ₂(a,a′) for x = {}", w.describe(x)), i, j);
            }
            Ok(())
        })?;
    }
    for y in w.base_c().basis() {
        let by = maps.beta.mul_vec(y);
        let sby = v.s(&by);
        let (sy, sy_inv) = (sigma_c.mul_vec(y), sigma_c_inv.mul_vec(y));
        check_all(pairs(p), |(i, j)| {
            let (a, a2) = (w.basis(i), v.basis(j));
            if gr.rho1.eval(&a, &v.mul(&by, &a2)) != w.mul(&gr.rho1.at(i, j), &sy) {
                return at_pair(p, &format!("ρ₁(a,β(y)a′) ≠ ρ₁(a,a′)σ_C(y) for y = {}", w.describe(y)), i, j);
            }
            if gr.rho2.eval(&a, &v.mul(&sby, &a2)) != w.mul(&sy_inv, &gr.rho2.at(i, j)) {
                return at_pair(p, &format!("ρ₂(a,S′(β(y))a′) ≠ σ_C⁻¹(y)ρ₂(a,a′) for y = {}", w.describe(y)), i, j);
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn closed_form(p: &DualPair, gr: &GammaRho) -> Outcome {
    same_gamma_rho(p, "its E-contraction formula", gr, &closed_gamma_rho(p))
}

/// Compares two sets of maps on every basis pair.
pub(crate) fn same_gamma_rho(p: &DualPair, other: &str, gr: &GammaRho, reference: &GammaRho) -> Outcome {
    let maps = [
        ("γ₁", &gr.gamma1, &reference.gamma1),
        ("γ₂", &gr.gamma2, &reference.gamma2),
        ("ρ₁", &gr.rho1, &reference.rho1),
        ("ρ₂", &gr.rho2, &reference.rho2),
    ];
    for (name, ours, theirs) in maps {
        if let Some(c) = ours.matrix().first_differing_column(theirs.matrix()) {
            let m = p.right().dim();
            return at_pair(p, &format!("{name} differs from {other}"), c / m, c % m);
        }
    }
    Ok(())
}

fn uniqueness(p: &DualPair, gr: &GammaRho) -> Outcome {
    let solve = gamma1_by_module_law(p).map_err(to_witness)?;
    if solve.free_without_normalization == 0 {
        return fail(vec![], "the module law alone already determines γ₁, so the normalization is not needed");
    }
    match solve.solution {
        Err(reason) => fail(vec![], reason),
        Ok(g) if g == gr.gamma1 => Ok(()),
        Ok(g) => {
            let c = g.matrix().first_differing_column(gr.gamma1.matrix()).expect("they differ");
            let m = p.right().dim();
            at_pair(p, "the module-law solution differs from γ₁", c / m, c % m)
        }
    }
}

/// Pairs of maps on `A⊗A` (or `A′⊗A′`) that each `Γᵢ` must not distinguish.
type Balancing = Vec<(Mat, Mat)>;

fn first_variable_moves(w: &WeakHopf) -> [Balancing; 4] {
    let over = |base: &Subspace, f: &dyn Fn(&[Q], &[Q], &[Q]) -> (Vec<Q>, Vec<Q>)| -> Balancing {
        base.basis()
            .iter()
            .map(|z| (on_square(w, |a, b| f(z, a, b).0), on_square(w, |a, b| f(z, a, b).1)))
            .collect()
    };
    [
        over(w.base_c(), &|y, a, b| (pure(a, &w.mul(y, b)), pure(&w.mul(&w.s_inv(y), a), b))),
        over(w.base_b(), &|x, a, b| (pure(&w.mul(a, x), b), pure(a, &w.mul(x, b)))),
        over(w.base_b(), &|x, a, b| (pure(&w.mul(a, x), b), pure(a, &w.mul(b, &w.s_inv(x))))),
        over(w.base_c(), &|y, a, b| (pure(&w.mul(a, y), b), pure(a, &w.mul(y, b)))),
    ]
}

fn second_variable_moves(v: &WeakHopf) -> [Balancing; 4] {
    let over = |base: &Subspace, f: &dyn Fn(&[Q], &[Q], &[Q]) -> (Vec<Q>, Vec<Q>)| -> Balancing {
        base.basis()
            .iter()
            .map(|z| (on_square(v, |a, b| f(z, a, b).0), on_square(v, |a, b| f(z, a, b).1)))
            .collect()
    };
    [
        over(v.base_c(), &|y, a, b| (pure(&v.mul(a, y), b), pure(a, &v.mul(y, b)))),
        over(v.base_b(), &|x, a, b| (pure(&v.mul(a, x), b), pure(a, &v.mul(b, &v.s_inv(x))))),
        over(v.base_b(), &|x, a, b| (pure(&v.mul(a, x), b), pure(a, &v.mul(x, b)))),
        over(v.base_c(), &|y, a, b| (pure(a, &v.mul(y, b)), pure(&v.mul(&v.s_inv(y), a), b))),
    ]
}

fn first_variable(p: &DualPair, forms: &[BilinearForm; 4]) -> Outcome {
    for (k, (form, moves)) in forms.iter().zip(first_variable_moves(p.left())).enumerate() {
        for (l, r) in moves {
            let g = form.gram();
            same_on_pairs(p, &format!("Γ{}", k + 1), &l.transpose().mul(g), &r.transpose().mul(g))?;
        }
    }
    Ok(())
}

fn second_variable_forms(p: &DualPair, forms: &[BilinearForm; 4]) -> Outcome {
    for (k, (form, moves)) in forms.iter().zip(second_variable_moves(p.right())).enumerate() {
        for (l, r) in moves {
            let g = form.gram();
            same_on_pairs(p, &format!("Γ{}", k + 1), &g.mul(&l), &g.mul(&r))?;
        }
    }
    Ok(())
}

fn forms_closed(p: &DualPair, forms: &[BilinearForm; 4]) -> Outcome {
    for (k, (built, closed)) in forms.iter().zip(closed_gamma_forms(p)).enumerate() {
        same_on_pairs(p, &format!("Γ{} against its closed form", k + 1), built.gram(), closed.gram())?;
    }
    Ok(())
}

fn quotients_nondegenerate(q: &[InducedForm; 4]) -> Outcome {
    for (k, induced) in q.iter().enumerate() {
        let g = induced.form.gram();
        if !induced.form.is_nondegenerate() {
            return fail(vec![k], format!("⟨·,·⟩{} has rank {} on a {}x{} gram", k + 1, g.rank(), g.rows(), g.cols()));
        }
    }
    Ok(())
}

fn record_canonical(r: &mut VerificationReport, a: &Algebroid, b: &Algebroid, q: &[InducedForm; 4]) {
    let gram = |k: usize| q[k - 1].form.gram();
    let (t1, t2) = (a.canonical(1), a.canonical(2));
    let (t1p, t2p) = (b.canonical(1), b.canonical(2));
    r.record(
        "quotient.t1_t2",
        "⟨𝔗₁u, u′⟩₁ = ⟨u, 𝔗′₂u′⟩₂",
        same_on_quotients("the pairing", &t1.transpose().mul(gram(1)), &gram(2).mul(t2p)),
    );
    r.record(
        "quotient.t2_t1",
        "⟨𝔗₂u, u′⟩₃ = ⟨u, 𝔗′₁u′⟩₄",
        same_on_quotients("the pairing", &t2.transpose().mul(gram(3)), &gram(4).mul(t1p)),
    );
    let inv = |m: &Mat| m.inverse().expect("canonical maps are bijective");
    r.record(
        "quotient.t1_inverse",
        "⟨𝔗₁⁻¹v, v′⟩₂ = ⟨v, 𝔗′₂⁻¹v′⟩₁",
        same_on_quotients("the pairing", &inv(t1).transpose().mul(gram(2)), &gram(1).mul(&inv(t2p))),
    );
    r.record(
        "quotient.t2_inverse",
        "⟨𝔗₂⁻¹v, v′⟩₄ = ⟨v, 𝔗′₁⁻¹v′⟩₃",
        same_on_quotients("the pairing", &inv(t2).transpose().mul(gram(4)), &gram(3).mul(&inv(t1p))),
    );
}
