//! The complete set of structural identities of a weak Hopf structure.

use super::{SolveFailure, WeakHopf};
use crate::exactla::{vector, Field, Mat, Subspace, Q};
use crate::finalg::tensor::{self, pure};
use crate::finalg::{self, multiplier::multiplier_algebra, tensor_algebra};
use crate::checks::{check_all, fail, same_on_basis, same_on_square, support};
use crate::report::{Outcome, VerificationReport, Witness};

/// Runs every check and returns one entry per identity.
pub fn verify_wmha(w: &WeakHopf) -> VerificationReport {
    let subject = if w.name().is_empty() { "weak multiplier Hopf algebra" } else { w.name() };
    let mut r = VerificationReport::new(subject);
    r.merge("", finalg::validate_algebra(w.algebra()));
    r.record("multiplier.identification", "a ↦ (L_a, R_a) identifies A with M(A)", multiplier_identification(w));

    r.record("coproduct.homomorphism", "Δ(ab) = Δ(a)Δ(b)", coproduct_homomorphism(w));
    r.record("coproduct.coassociative", "(Δ⊗ι)Δ = (ι⊗Δ)Δ", coassociative(w));
    r.record("coproduct.full", "the legs of Δ(A) span A", coproduct_full(w));
    r.record("counit.left", "(ε⊗ι)Δ(a) = a", counit(w, true));
    r.record("counit.right", "(ι⊗ε)Δ(a) = a", counit(w, false));
    r.record("counit.weak_multiplicative", "ε(abc) = Σ ε(ab₁)ε(b₂c)", weak_multiplicative(w));

    r.record("antipode.anti_homomorphism", "S(ab) = S(b)S(a)", anti_homomorphism(w));
    r.record("antipode.flips_coproduct", "Δ(S(a)) = (S⊗S)Δᵒᵖ(a)", flips_coproduct(w));

    r.record("idempotent.unique", "E is the unique solution of its defining equations", idempotent_unique(w));
    r.record("idempotent.ranges", "E(A⊗A) = Δ(A)(A⊗A), (A⊗A)E = (A⊗A)Δ(A), E² = E", idempotent_ranges(w));
    r.record("idempotent.unit", "Δ(1) = E", idempotent_unit(w));
    r.record("idempotent.coproduct_legs", "(Δ⊗ι)E = (ι⊗Δ)E = (E⊗1)(1⊗E) = (1⊗E)(E⊗1)", coproduct_legs(w));

    r.record("canonical.generalized_inverses", "TᵢRᵢTᵢ = Tᵢ and RᵢTᵢRᵢ = Rᵢ", generalized_inverses(w));
    r.record("canonical.ranges", "T₁R₁ = E·, T₂R₂ = ·E, T₃R₃ = ·E, T₄R₄ = E·", canonical_ranges(w));
    r.record("canonical.kernels", "R₁T₁(a⊗b) = (a⊗1)F₁(1⊗b) and analogues", canonical_kernels(w));
    r.record("canonical.kernel_idempotents", "Fᵢ is idempotent in A⊗Aᵒᵖ", kernel_idempotents(w));

    r.record("base.source_target", "ε_s, ε_t are idempotent onto unital subalgebras B, C", source_target(w));
    r.record("base.commute", "xy = yx for x ∈ B, y ∈ C", base_commute(w));
    r.record("base.separability_legs", "E ∈ B⊗C with legs exactly B and C", separability_legs(w));
    r.record("base.separability", "E(x⊗1) = E(1⊗S(x)), (1⊗y)E = (S(y)⊗1)E", separability(w));
    r.record("base.antipodal_maps", "S restricts to anti-isomorphisms B ⇄ C inverted by t_B, t_C", antipodal_maps(w));
    r.record("base.sweedler_contraction", "S(E₁)E₂ = 1 = E₁S(E₂)", sweedler_contraction(w));
    r.record("base.coproduct_of_base", "Δ(x) = E(1⊗x) = (1⊗x)E, Δ(y) = (y⊗1)E = E(y⊗1)", coproduct_of_base(w));

    r.record("mu.unique", "(μ_B⊗ι)E = 1 and (ι⊗μ_C)E = 1 have unique solutions", mu_unique(w));
    r.record("mu.antipode_transport", "μ_C∘S = μ_B on B and μ_B∘S = μ_C on C", mu_transport(w));
    r.record("mu.kms", "μ_B(x'x) = μ_B(S²(x)x') = μ_B(xσ_B(x')), μ_C(yy') = μ_C(y'S²(y)), μ∘σ = μ", mu_kms(w));
    r
}

fn multiplier_identification(w: &WeakHopf) -> Outcome {
    let m = multiplier_algebra(w.algebra()).map_err(|e| Witness::new(vec![], e.to_string()))?;
    if !m.embedding_is_injective() {
        return fail(vec![], "a ↦ (L_a, R_a) is not injective");
    }
    if !m.embedding_is_onto() {
        return fail(vec![], format!("M(A) has dimension {} but A has dimension {}", m.dim(), w.dim()));
    }
    if !m.is_essential() {
        return fail(vec![], "A is not essential in M(A)");
    }
    let unit = m.embed(w.unit());
    if &unit != m.unit() {
        return fail(support(w.unit()), "the unit of A is not the identity multiplier");
    }
    Ok(())
}

fn coproduct_homomorphism(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    check_all((0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |(i, j)| {
        let ab = w.mul(&w.basis(i), &w.basis(j));
        if w.delta(&ab) != w.tmul(&w.coproduct().column(i), &w.coproduct().column(j)) {
            return fail(vec![i, j], format!("Δ({0}{1}) != Δ({0})Δ({1})", w.label(i), w.label(j)));
        }
        Ok(())
    })
}

fn coassociative(w: &WeakHopf) -> Outcome {
    let id = Mat::identity(w.dim());
    let d = w.coproduct();
    same_on_basis(w, "(Δ⊗ι)Δ vs (ι⊗Δ)Δ", &d.kron(&id).mul(d), &id.kron(d).mul(d))
}

fn coproduct_full(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 0..n {
        let m = tensor::as_matrix(&w.coproduct().column(i), n, n);
        first.extend(m.columns());
        second.extend(m.transpose().columns());
    }
    for (legs, which) in [(first, "first"), (second, "second")] {
        let span = Subspace::span(n, legs);
        if let Some(&c) = span.complement_indices().first() {
            if span.dim() < n {
                return fail(vec![c], format!("{which} legs of Δ span only {} of {n} dimensions", span.dim()));
            }
        }
    }
    Ok(())
}

fn counit(w: &WeakHopf, left: bool) -> Outcome {
    let n = w.dim();
    check_all(0..n, |i| {
        let d = w.coproduct().column(i);
        let got = if left { tensor::contract_left(w.counit(), &d, n) } else { tensor::contract_right(&d, w.counit(), n) };
        if got != w.basis(i) {
            return fail(vec![i], format!("contraction of Δ({}) gives {}", w.label(i), w.describe(&got)));
        }
        Ok(())
    })
}

fn weak_multiplicative(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    let eps = |v: &[Q]| vector::dot(w.counit(), v);
    for i in 0..n {
        for j in 0..n {
            let ab = w.mul(&w.basis(i), &w.basis(j));
            for k in 0..n {
                let lhs = eps(&w.mul(&ab, &w.basis(k)));
                let mut rhs = Q::ZERO;
                for (p, q, c) in w.coproduct_terms(j) {
                    let l = eps(&w.mul(&w.basis(i), &w.basis(*p)));
                    if l.is_zero() {
                        continue;
                    }
                    rhs += &(c * &l * eps(&w.mul(&w.basis(*q), &w.basis(k))));
                }
                if lhs != rhs {
                    return fail(vec![i, j, k], format!(
                        "ε({0}{1}{2}) = {lhs} but Σ ε({0}{1}₁)ε({1}₂{2}) = {rhs}",
                        w.label(i),
                        w.label(j),
                        w.label(k)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn anti_homomorphism(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    check_all((0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |(i, j)| {
        let (a, b) = (w.basis(i), w.basis(j));
        if w.s(&w.mul(&a, &b)) != w.mul(&w.s(&b), &w.s(&a)) {
            return fail(vec![i, j], format!("S({0}{1}) != S({1})S({0})", w.label(i), w.label(j)));
        }
        Ok(())
    })
}

fn flips_coproduct(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    let s = w.antipode();
    let lhs = w.coproduct().mul(s);
    let rhs = s.kron(s).mul(&tensor::flip_matrix(n)).mul(w.coproduct());
    same_on_basis(w, "ΔS vs (S⊗S)Δᵒᵖ", &lhs, &rhs)
}

fn idempotent_unique(w: &WeakHopf) -> Outcome {
    match &w.idempotent_solve().outcome {
        Ok(e) if e.as_slice() == w.idempotent() => Ok(()),
        Ok(e) => {
            let diff = vector::sub(e, w.idempotent());
            fail(support(&diff), format!("the solver gives E = {}", w.describe_tensor(e)))
        }
        Err(SolveFailure::NoSolution) => fail(vec![], "the defining equations of E are inconsistent"),
        Err(SolveFailure::NotUnique(k)) => fail(vec![], format!("the defining equations of E have {k} free parameters")),
    }
}

fn idempotent_ranges(w: &WeakHopf) -> Outcome {
    let e = w.idempotent();
    let solve = w.idempotent_solve();
    let nn = e.len();
    if w.tmul(e, e) != e {
        return fail(support(e), "E² != E");
    }
    for (range, left) in [(&solve.left_range, true), (&solve.right_range, false)] {
        let act = |x: &[Q]| if left { w.tmul(e, x) } else { w.tmul(x, e) };
        let side = if left { "E·" } else { "·E" };
        for c in 0..nn {
            if !range.contains(&act(&vector::unit(nn, c))) {
                let (p, q) = tensor::legs(c, w.dim());
                return fail(vec![p, q], format!("{side} maps {} outside its range", w.tensor_label(c)));
            }
        }
        for v in range.basis() {
            if act(v) != *v {
                return fail(support(v), format!("{side} does not fix {}", w.describe_tensor(v)));
            }
        }
    }
    check_all(0..w.dim(), |i| {
        let d = w.coproduct().column(i);
        if w.tmul(e, &d) != d || w.tmul(&d, e) != d {
            return fail(vec![i], format!("EΔ({0}) = Δ({0}) = Δ({0})E fails", w.label(i)));
        }
        Ok(())
    })
}

fn idempotent_unit(w: &WeakHopf) -> Outcome {
    let d1 = w.delta(w.unit());
    if d1 != w.idempotent() {
        let diff = vector::sub(&d1, w.idempotent());
        return fail(support(&diff), format!("Δ(1) = {}", w.describe_tensor(&d1)));
    }
    Ok(())
}

/// Product in `A⊗A⊗A`.
fn triple_mul(w: &WeakHopf, x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = w.dim();
    let a = w.algebra();
    let mut out: Vec<Q> = vector::zeros(n * n * n);
    for (i, cx) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (i1, i2, i3) = (i / (n * n), (i / n) % n, i % n);
        for (j, cy) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (j1, j2, j3) = (j / (n * n), (j / n) % n, j % n);
            let c = cx * cy;
            for (k1, c1) in a.basis_product(i1, j1) {
                for (k2, c2) in a.basis_product(i2, j2) {
                    let c12 = &c * c1 * c2;
                    for (k3, c3) in a.basis_product(i3, j3) {
                        out[(k1 * n + k2) * n + k3].add_product(&c12, c3);
                    }
                }
            }
        }
    }
    out
}

fn coproduct_legs(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    let e = w.idempotent();
    let id = Mat::identity(n);
    let d = w.coproduct();
    let e1 = pure(e, w.unit());
    let e2 = pure(w.unit(), e);
    let forms = [
        ("(Δ⊗ι)E", d.kron(&id).mul_vec(e)),
        ("(ι⊗Δ)E", id.kron(d).mul_vec(e)),
        ("(E⊗1)(1⊗E)", triple_mul(w, &e1, &e2)),
        ("(1⊗E)(E⊗1)", triple_mul(w, &e2, &e1)),
    ];
    for (name, v) in &forms[1..] {
        if *v != forms[0].1 {
            let diff = vector::sub(v, &forms[0].1);
            let idx = vector::first_nonzero(&diff).unwrap_or(0);
            return fail(
                vec![idx / (n * n), (idx / n) % n, idx % n],
                format!("{} != {name}", forms[0].0),
            );
        }
    }
    Ok(())
}

fn generalized_inverses(w: &WeakHopf) -> Outcome {
    check_all(1..=4, |k| {
        let (t, r) = (w.t(k), w.r(k));
        same_on_square(w, &format!("T{k}R{k}T{k} vs T{k}"), &t.mul(r).mul(t), t)?;
        same_on_square(w, &format!("R{k}T{k}R{k} vs R{k}"), &r.mul(t).mul(r), r)
    })
}

fn canonical_ranges(w: &WeakHopf) -> Outcome {
    let le = w.left_mult_tensor(w.idempotent());
    let re = w.right_mult_tensor(w.idempotent());
    check_all([(1, &le), (2, &re), (3, &re), (4, &le)], |(k, target)| {
        same_on_square(w, &format!("T{k}R{k} vs multiplication by E"), &w.t(k).mul(w.r(k)), target)
    })
}

fn canonical_kernels(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    check_all(1..=4, |k| {
        let f = w.f(k);
        let expected = tensor::tensor_map(n, |i, j| {
            let (a, b) = (w.basis(i), w.basis(j));
            match k {
                1 | 2 => w.tmul(&w.tmul(&w.tensor_one(&a), f), &w.one_tensor(&b)),
                _ => w.tmul(&w.tmul(&w.one_tensor(&b), f), &w.tensor_one(&a)),
            }
        });
        same_on_square(w, &format!("R{k}T{k} vs its kernel formula"), &w.r(k).mul(w.t(k)), &expected)
    })
}

fn kernel_idempotents(w: &WeakHopf) -> Outcome {
    let mixed = tensor_algebra(w.algebra(), &w.algebra().opposite());
    check_all(1..=4, |k| {
        let f = w.f(k);
        if mixed.mul(f, f) != f {
            return fail(support(f), format!("F{k} = {} is not idempotent", w.describe_tensor(f)));
        }
        Ok(())
    })
}

fn subalgebra(w: &WeakHopf, s: &Subspace, name: &str) -> Outcome {
    if !s.contains(w.unit()) {
        return fail(vec![], format!("1 ∉ {name}"));
    }
    for x in s.basis() {
        for y in s.basis() {
            let xy = w.mul(x, y);
            if !s.contains(&xy) {
                return fail(support(&xy), format!("{name} is not closed under products"));
            }
        }
    }
    Ok(())
}

fn source_target(w: &WeakHopf) -> Outcome {
    for (m, name, base) in [(w.eps_s(), "ε_s", "B"), (w.eps_t(), "ε_t", "C")] {
        same_on_basis(w, &format!("{name}∘{name} vs {name}"), &m.mul(m), m)?;
        subalgebra(w, &Subspace::column_space(m), base)?;
    }
    Ok(())
}

fn base_commute(w: &WeakHopf) -> Outcome {
    for x in w.base_b().basis() {
        for y in w.base_c().basis() {
            if w.mul(x, y) != w.mul(y, x) {
                return fail(support(x), format!("{} ∈ B and {} ∈ C do not commute", w.describe(x), w.describe(y)));
            }
        }
    }
    Ok(())
}

fn separability_legs(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    let m = tensor::as_matrix(w.idempotent(), n, n);
    for (legs, base, name) in [(m.clone(), w.base_b(), "B"), (m.transpose(), w.base_c(), "C")] {
        let span = Subspace::column_space(&legs);
        if span != *base {
            let stray = span.first_outside(base).or_else(|| base.first_outside(&span)).map(support).unwrap_or_default();
            return fail(stray, format!("the legs of E span a {}-dimensional space, not {name}", span.dim()));
        }
    }
    Ok(())
}

fn separability(w: &WeakHopf) -> Outcome {
    let e = w.idempotent();
    for x in w.base_b().basis() {
        if w.tmul(e, &w.tensor_one(x)) != w.tmul(e, &w.one_tensor(&w.s(x))) {
            return fail(support(x), format!("E(x⊗1) != E(1⊗S(x)) for x = {}", w.describe(x)));
        }
    }
    for y in w.base_c().basis() {
        if w.tmul(&w.one_tensor(y), e) != w.tmul(&w.tensor_one(&w.s(y)), e) {
            return fail(support(y), format!("(1⊗y)E != (S(y)⊗1)E for y = {}", w.describe(y)));
        }
    }
    Ok(())
}

fn antipodal_maps(w: &WeakHopf) -> Outcome {
    let (b, c) = (w.base_b(), w.base_c());
    if b.image(w.antipode()) != *c {
        return fail(vec![], "S(B) != C");
    }
    if c.image(w.antipode()) != *b {
        return fail(vec![], "S(C) != B");
    }
    for (space, other, t, name) in [(b, c, w.t_b(), "t_B"), (c, b, w.t_c(), "t_C")] {
        for x in space.basis() {
            let tx = t.mul_vec(x);
            if !other.contains(&tx) || w.s(&tx) != *x {
                return fail(support(x), format!("{name} does not invert S at {}", w.describe(x)));
            }
            for y in space.basis() {
                if t.mul_vec(&w.mul(x, y)) != w.mul(&t.mul_vec(y), &tx) {
                    return fail(support(x), format!("{name} is not anti-multiplicative"));
                }
            }
        }
    }
    Ok(())
}

fn sweedler_contraction(w: &WeakHopf) -> Outcome {
    let n = w.dim();
    let e = w.idempotent();
    let id = Mat::identity(n);
    let left = w.multiply_legs(&tensor::apply_pair(w.antipode(), &id, e));
    let right = w.multiply_legs(&tensor::apply_pair(&id, w.antipode(), e));
    for (v, what) in [(left, "S(E₁)E₂"), (right, "E₁S(E₂)")] {
        if v != w.unit() {
            let diff = vector::sub(&v, w.unit());
            return fail(support(&diff), format!("{what} = {}", w.describe(&v)));
        }
    }
    Ok(())
}

fn coproduct_of_base(w: &WeakHopf) -> Outcome {
    let e = w.idempotent();
    for x in w.base_b().basis() {
        let d = w.delta(x);
        let one_x = w.one_tensor(x);
        if d != w.tmul(e, &one_x) || d != w.tmul(&one_x, e) {
            return fail(support(x), format!("Δ(x) = E(1⊗x) = (1⊗x)E fails for x = {}", w.describe(x)));
        }
    }
    for y in w.base_c().basis() {
        let d = w.delta(y);
        let y_one = w.tensor_one(y);
        if d != w.tmul(&y_one, e) || d != w.tmul(e, &y_one) {
            return fail(support(y), format!("Δ(y) = (y⊗1)E = E(y⊗1) fails for y = {}", w.describe(y)));
        }
    }
    Ok(())
}

fn mu_unique(w: &WeakHopf) -> Outcome {
    if w.mu_b().is_none() {
        return fail(vec![], "(μ_B⊗ι)E = 1 has no unique solution on B");
    }
    if w.mu_c().is_none() {
        return fail(vec![], "(ι⊗μ_C)E = 1 has no unique solution on C");
    }
    Ok(())
}

fn mus(w: &WeakHopf) -> Result<(&[Q], &[Q]), Witness> {
    match (w.mu_b(), w.mu_c()) {
        (Some(b), Some(c)) => Ok((b, c)),
        _ => Err(Witness::new(vec![], "μ_B or μ_C is unavailable")),
    }
}

fn mu_transport(w: &WeakHopf) -> Outcome {
    let (mb, mc) = mus(w)?;
    for x in w.base_b().basis() {
        if vector::dot(mc, &w.s(x)) != vector::dot(mb, x) {
            return fail(support(x), format!("μ_C(S(x)) != μ_B(x) for x = {}", w.describe(x)));
        }
    }
    for y in w.base_c().basis() {
        if vector::dot(mb, &w.s(y)) != vector::dot(mc, y) {
            return fail(support(y), format!("μ_B(S(y)) != μ_C(y) for y = {}", w.describe(y)));
        }
    }
    Ok(())
}

fn mu_kms(w: &WeakHopf) -> Outcome {
    let (mb, mc) = mus(w)?;
    let s2 = w.sigma_c();
    let sigma_b = w.sigma_b();
    let ev = |mu: &[Q], v: &[Q]| vector::dot(mu, v);
    for x in w.base_b().basis() {
        if ev(mb, &sigma_b.mul_vec(x)) != ev(mb, x) {
            return fail(support(x), format!("μ_B(σ_B(x)) != μ_B(x) for x = {}", w.describe(x)));
        }
        for xp in w.base_b().basis() {
            let lhs = ev(mb, &w.mul(xp, x));
            if lhs != ev(mb, &w.mul(&s2.mul_vec(x), xp)) {
                return fail(support(x), format!("μ_B(x'x) != μ_B(S²(x)x') for x = {}", w.describe(x)));
            }
            if lhs != ev(mb, &w.mul(x, &sigma_b.mul_vec(xp))) {
                return fail(support(xp), format!("μ_B(x'x) != μ_B(xσ_B(x')) for x' = {}", w.describe(xp)));
            }
        }
    }
    for y in w.base_c().basis() {
        if ev(mc, &s2.mul_vec(y)) != ev(mc, y) {
            return fail(support(y), format!("μ_C(σ_C(y)) != μ_C(y) for y = {}", w.describe(y)));
        }
        for yp in w.base_c().basis() {
            if ev(mc, &w.mul(y, yp)) != ev(mc, &w.mul(yp, &s2.mul_vec(y))) {
                return fail(support(y), format!("μ_C(yy') != μ_C(y'S²(y)) for y = {}", w.describe(y)));
            }
        }
    }
    Ok(())
}
