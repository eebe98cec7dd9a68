//! Finite groupoids, their groupoid algebras `ℂG` and function algebras `K(G)`.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Mat, Q};
use crate::finalg::FiniteAlgebra;
use crate::wmha::WeakHopf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    /// `compose[g * n + f] = Some(g∘f)` when `src(g) = tgt(f)`.
    compose: Vec<Option<usize>>,
    inverse: Vec<usize>,
    identities: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub compose: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverse: Vec<(String, String)>,
    /// `[object, arrow]`; when absent, identities are found or synthesized.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<(String, String)>,
}

fn not_a_groupoid(axiom: impl Into<String>, witness: impl Into<String>) -> Error {
    Error::NotAGroupoid { axiom: axiom.into(), witness: witness.into() }
}

pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid> {
    let j: GroupoidJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    FiniteGroupoid::from_json(&j)
}

impl FiniteGroupoid {
    pub fn from_json(j: &GroupoidJson) -> Result<Self> {
        let obj_index: HashMap<&str, usize> = j.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_index.len() != j.objects.len() {
            return Err(not_a_groupoid("objects are distinct", "duplicate object label"));
        }
        let obj = |name: &str, at: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse { location: at.to_string(), message: format!("unknown object {name:?}") })
        };
        let mut arrows = Vec::with_capacity(j.arrows.len());
        for (k, a) in j.arrows.iter().enumerate() {
            let at = format!("arrows[{k}]");
            arrows.push(Arrow { id: a.id.clone(), src: obj(&a.src, &at)?, tgt: obj(&a.tgt, &at)? });
        }
        let mut index: HashMap<String, usize> = HashMap::new();
        for (k, a) in arrows.iter().enumerate() {
            if index.insert(a.id.clone(), k).is_some() {
                return Err(not_a_groupoid("arrow ids are distinct", a.id.clone()));
            }
        }
        let lookup = |id: &str, at: &str, index: &HashMap<String, usize>| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Parse { location: at.to_string(), message: format!("unknown arrow {id:?}") })
        };
        let mut identities = vec![None; j.objects.len()];
        for (k, (o, a)) in j.identities.iter().enumerate() {
            let at = format!("identities[{k}]");
            identities[obj(o, &at)?] = Some(lookup(a, &at, &index)?);
        }
        for (o, slot) in identities.iter_mut().enumerate() {
            if slot.is_some() {
                continue;
            }
            // an idempotent loop is the identity
            *slot = j
                .compose
                .iter()
                .filter(|(g, f, gf)| g == f && f == gf)
                .filter_map(|(g, _, _)| index.get(g).copied())
                .find(|&g| arrows[g].src == o && arrows[g].tgt == o);
        }
        let identities: Vec<usize> = identities
            .into_iter()
            .enumerate()
            .map(|(o, slot)| match slot {
                Some(e) => Ok(e),
                None => {
                    let id = format!("1_{}", j.objects[o]);
                    if index.contains_key(&id) {
                        return Err(not_a_groupoid("arrow ids are distinct", format!("synthesized identity {id}")));
                    }
                    arrows.push(Arrow { id: id.clone(), src: o, tgt: o });
                    index.insert(id, arrows.len() - 1);
                    Ok(arrows.len() - 1)
                }
            })
            .collect::<Result<_>>()?;

        let mut triples = Vec::with_capacity(j.compose.len());
        for (k, (g, f, gf)) in j.compose.iter().enumerate() {
            let at = format!("compose[{k}]");
            triples.push((lookup(g, &at, &index)?, lookup(f, &at, &index)?, lookup(gf, &at, &index)?));
        }

        let n = arrows.len();
        let mut compose = vec![None; n * n];
        for &(g, f, gf) in &triples {
            let slot = &mut compose[g * n + f];
            if slot.is_some_and(|x| x != gf) {
                return Err(not_a_groupoid("composition is a function", format!("{}∘{}", arrows[g].id, arrows[f].id)));
            }
            *slot = Some(gf);
        }
        for (o, &e) in identities.iter().enumerate() {
            for (f, a) in arrows.iter().enumerate() {
                for (pair, expect) in [((e, f), a.tgt == o), ((f, e), a.src == o)] {
                    if !expect {
                        continue;
                    }
                    let slot = &mut compose[pair.0 * n + pair.1];
                    match slot {
                        None => *slot = Some(f),
                        Some(x) if *x == f => {}
                        Some(_) => {
                            return Err(not_a_groupoid(
                                "identity law",
                                format!("{}∘{}", arrows[pair.0].id, arrows[pair.1].id),
                            ))
                        }
                    }
                }
            }
        }

        let mut inverse = vec![None; n];
        for (k, (g, h)) in j.inverse.iter().enumerate() {
            let at = format!("inverse[{k}]");
            inverse[lookup(g, &at, &index)?] = Some(lookup(h, &at, &index)?);
        }
        let inverse = inverse
            .into_iter()
            .enumerate()
            .map(|(g, slot)| {
                slot.or_else(|| {
                    (0..n).find(|&h| {
                        compose[g * n + h] == Some(identities[arrows[g].tgt])
                            && compose[h * n + g] == Some(identities[arrows[g].src])
                    })
                })
                .ok_or_else(|| not_a_groupoid("every arrow is invertible", arrows[g].id.clone()))
            })
            .collect::<Result<Vec<_>>>()?;

        let g = FiniteGroupoid { objects: j.objects.clone(), arrows, compose, inverse, identities };
        g.validate()?;
        Ok(g)
    }

    /// Checks composability, associativity, identity and inverse laws.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        let id = |k: usize| self.arrows[k].id.as_str();
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[g].src == self.arrows[f].tgt;
                match (self.compose[g * n + f], composable) {
                    (Some(_), false) => {
                        return Err(not_a_groupoid("g∘f is defined only when src(g) = tgt(f)", format!("{}∘{}", id(g), id(f))))
                    }
                    (None, true) => {
                        return Err(not_a_groupoid("g∘f is defined when src(g) = tgt(f)", format!("{}∘{}", id(g), id(f))))
                    }
                    (Some(gf), true) => {
                        if self.arrows[gf].src != self.arrows[f].src || self.arrows[gf].tgt != self.arrows[g].tgt {
                            return Err(not_a_groupoid(
                                "src(g∘f) = src(f) and tgt(g∘f) = tgt(g)",
                                format!("{}∘{} = {}", id(g), id(f), id(gf)),
                            ));
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.compose(h, g) else { continue };
                for f in 0..n {
                    let Some(gf) = self.compose(g, f) else { continue };
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Err(not_a_groupoid("associativity", format!("{}, {}, {}", id(h), id(g), id(f))));
                    }
                }
            }
        }
        for (o, &e) in self.identities.iter().enumerate() {
            if self.arrows[e].src != o || self.arrows[e].tgt != o {
                return Err(not_a_groupoid("identities are loops at their object", id(e).to_string()));
            }
        }
        for g in 0..n {
            let h = self.inverse[g];
            let a = &self.arrows[g];
            if self.compose(h, g) != Some(self.identities[a.src]) || self.compose(g, h) != Some(self.identities[a.tgt]) {
                return Err(not_a_groupoid("inverse(g)∘g = 1 and g∘inverse(g) = 1", format!("{}, {}", id(g), id(h))));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> GroupoidJson {
        let id = |k: usize| self.arrows[k].id.clone();
        let n = self.arrows.len();
        GroupoidJson {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    id: a.id.clone(),
                    src: self.objects[a.src].clone(),
                    tgt: self.objects[a.tgt].clone(),
                })
                .collect(),
            compose: (0..n * n)
                .filter_map(|k| self.compose[k].map(|gf| (id(k / n), id(k % n), id(gf))))
                .collect(),
            inverse: (0..n).map(|g| (id(g), id(self.inverse[g]))).collect(),
            identities: self.identities.iter().enumerate().map(|(o, &e)| (self.objects[o].clone(), id(e))).collect(),
        }
    }

    /// The pair groupoid: one arrow `i←j` (id `"ij"`) for every pair of objects.
    pub fn pair(objects: &[&str]) -> Self {
        Self::pair_times_cyclic(objects, 1, "")
    }

    /// The cyclic group `ℤ/m` on one object; arrow `r` has id `"g{r}"`, `"e"` for `r = 0`.
    pub fn cyclic(m: usize) -> Self {
        let mut g = Self::pair_times_cyclic(&["*"], m, "");
        for (r, a) in g.arrows.iter_mut().enumerate() {
            a.id = if r == 0 { "e".into() } else { format!("g{r}") };
        }
        g
    }

    /// Pair groupoid on `objects` times `ℤ/m`; arrows are `(i, j, r)`.
    fn pair_times_cyclic(objects: &[&str], m: usize, tag: &str) -> Self {
        let k = objects.len();
        let idx = |i: usize, j: usize, r: usize| (i * k + j) * m + r;
        let mut arrows = Vec::with_capacity(k * k * m);
        for i in 0..k {
            for j in 0..k {
                for r in 0..m {
                    let id = if m == 1 {
                        format!("{tag}{}{}", objects[i], objects[j])
                    } else {
                        format!("{tag}{}{}^{r}", objects[i], objects[j])
                    };
                    arrows.push(Arrow { id, src: j, tgt: i });
                }
            }
        }
        let n = arrows.len();
        let mut compose = vec![None; n * n];
        let mut inverse = vec![0; n];
        for i in 0..k {
            for j in 0..k {
                for r in 0..m {
                    for l in 0..k {
                        for s in 0..m {
                            compose[idx(i, j, r) * n + idx(j, l, s)] = Some(idx(i, l, (r + s) % m));
                        }
                    }
                    inverse[idx(i, j, r)] = idx(j, i, (m - r) % m);
                }
            }
        }
        FiniteGroupoid {
            objects: objects.iter().map(|o| format!("{tag}{o}")).collect(),
            arrows,
            compose,
            inverse,
            identities: (0..k).map(|i| idx(i, i, 0)).collect(),
        }
    }

    /// Disjoint union; arrows of `self` come first.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let (n1, n2) = (self.arrows.len(), other.arrows.len());
        let n = n1 + n2;
        let o1 = self.objects.len();
        let mut objects = self.objects.clone();
        objects.extend(other.objects.iter().cloned());
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|a| Arrow { id: a.id.clone(), src: a.src + o1, tgt: a.tgt + o1 }));
        let mut compose = vec![None; n * n];
        for g in 0..n1 {
            for f in 0..n1 {
                compose[g * n + f] = self.compose[g * n1 + f];
            }
        }
        for g in 0..n2 {
            for f in 0..n2 {
                compose[(g + n1) * n + f + n1] = other.compose[g * n2 + f].map(|x| x + n1);
            }
        }
        let mut inverse = self.inverse.clone();
        inverse.extend(other.inverse.iter().map(|x| x + n1));
        let mut identities = self.identities.clone();
        identities.extend(other.identities.iter().map(|x| x + n1));
        let g = FiniteGroupoid { objects, arrows, compose, inverse, identities };
        let mut ids: Vec<&str> = g.arrows.iter().map(|a| a.id.as_str()).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(not_a_groupoid("arrow ids are distinct", "the two groupoids share an arrow id"));
        }
        let mut objs = g.objects.clone();
        objs.sort_unstable();
        if objs.windows(2).any(|w| w[0] == w[1]) {
            return Err(not_a_groupoid("objects are distinct", "the two groupoids share an object label"));
        }
        Ok(g)
    }

    /// Disjoint union of components `pair(k) × ℤ/m`, with at least
    /// `min_objects` objects and between `min_arrows` and `max_arrows` arrows.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, min_objects: usize, min_arrows: usize, max_arrows: usize) -> Self {
        loop {
            let mut parts: Vec<FiniteGroupoid> = Vec::new();
            let (mut objs, mut arrows) = (0, 0);
            while objs < min_objects || arrows < min_arrows {
                let k = rng.gen_range(1..=2);
                let m = rng.gen_range(1..=3);
                let names: Vec<String> = (0..k).map(|i| (objs + i + 1).to_string()).collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                let tag = format!("c{}_", parts.len());
                let mut part = Self::pair_times_cyclic(&refs, m, &tag);
                part.objects = names.clone();
                objs += k;
                arrows += k * k * m;
                parts.push(part);
            }
            if arrows > max_arrows {
                continue;
            }
            let mut it = parts.into_iter();
            let first = it.next().expect("at least one component");
            return it.fold(first, |acc, p| acc.disjoint_union(&p).expect("labels are unique by construction"));
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + f]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identities.contains(&g)
    }
}

fn permutation(n: usize, f: impl Fn(usize) -> usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        m.set(f(j), j, Q::ONE);
    }
    m
}

/// `ℂG`: `u_g u_h = u_{g∘h}`, `Δ(u_g) = u_g ⊗ u_g`, `ε(u_g) = 1`, `S(u_g) = u_{g⁻¹}`.
pub fn groupoid_algebra(g: &FiniteGroupoid) -> Result<WeakHopf> {
    let n = g.len();
    let labels = g.arrows.iter().map(|a| format!("u{}", a.id)).collect();
    let triples = (0..n)
        .flat_map(|a| (0..n).filter_map(move |b| g.compose(a, b).map(|c| (a, b, c, Q::ONE))))
        .collect::<Vec<_>>();
    let algebra = FiniteAlgebra::new(labels, triples)?;
    let mut coproduct = Mat::zeros(n * n, n);
    for a in 0..n {
        coproduct.set(a * n + a, a, Q::ONE);
    }
    let antipode = permutation(n, |a| g.inverse(a));
    WeakHopf::new("groupoid algebra", algebra, coproduct, vec![Q::ONE; n], antipode)
}

/// `K(G)`: pointwise product, `Δ(δ_g) = Σ_{h∘k = g} δ_h ⊗ δ_k`,
/// `ε(δ_g) = [g is an identity]`, `S(δ_g) = δ_{g⁻¹}`.
pub fn function_algebra(g: &FiniteGroupoid) -> Result<WeakHopf> {
    let n = g.len();
    let labels = g.arrows.iter().map(|a| format!("d{}", a.id)).collect();
    let algebra = FiniteAlgebra::new(labels, (0..n).map(|a| (a, a, a, Q::ONE)))?;
    let mut coproduct = Mat::zeros(n * n, n);
    for h in 0..n {
        for k in 0..n {
            if let Some(hk) = g.compose(h, k) {
                coproduct.set(h * n + k, hk, Q::ONE);
            }
        }
    }
    let counit = (0..n).map(|a| if g.is_identity(a) { Q::ONE } else { Q::ZERO }).collect();
    let antipode = permutation(n, |a| g.inverse(a));
    WeakHopf::new("function algebra", algebra, coproduct, counit, antipode)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR2: &str = r#"{
        "objects": ["1", "2"],
        "arrows": [
            {"id": "11", "src": "1", "tgt": "1"}, {"id": "12", "src": "2", "tgt": "1"},
            {"id": "21", "src": "1", "tgt": "2"}, {"id": "22", "src": "2", "tgt": "2"}
        ],
        "compose": [
            ["11","11","11"], ["11","12","12"], ["12","21","11"], ["12","22","12"],
            ["21","11","21"], ["21","12","22"], ["22","21","21"], ["22","22","22"]
        ]
    }"#;

    #[test]
    fn trivial_groupoid() {
        let g = parse_groupoid(r#"{"objects": ["o"], "arrows": [{"id": "e", "src": "o", "tgt": "o"}], "compose": [["e","e","e"]]}"#)
            .unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.is_identity(0));
        assert_eq!(g.inverse(0), 0);
    }

    #[test]
    fn pair_groupoid_parses_with_inferred_inverses() {
        let g = parse_groupoid(PAIR2).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.identity(0), 0);
        assert_eq!(g.identity(1), 3);
        assert_eq!(g.inverse(1), 2);
        assert_eq!(g, FiniteGroupoid::pair(&["1", "2"]));
    }

    #[test]
    fn identities_are_synthesized() {
        let g = parse_groupoid(
            r#"{"objects": ["a", "b"], "arrows": [{"id": "f", "src": "a", "tgt": "b"}, {"id": "f'", "src": "b", "tgt": "a"}],
                "compose": [["f","f'","1_b"], ["f'","f","1_a"]]}"#,
        );
        let g = g.unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.identity(1), 3);
        assert_eq!(g.inverse(0), 1);
        let g = parse_groupoid(
            r#"{"objects": ["o"], "arrows": [{"id": "a", "src": "o", "tgt": "o"}], "compose": [["a","a","1_o"]]}"#,
        );
        let g = g.unwrap();
        assert_eq!((g.len(), g.inverse(0)), (2, 0));
        let g = parse_groupoid(r#"{"objects": ["o", "p"], "arrows": []}"#).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.arrows()[1].id, "1_p");
        assert_eq!(g.compose(0, 0), Some(0));
        assert_eq!(g.compose(0, 1), None);
    }

    #[test]
    fn composition_with_wrong_source_is_rejected() {
        let bad = PAIR2.replace(r#"["11","11","11"],"#, r#"["11","11","11"], ["11","21","11"],"#);
        match parse_groupoid(&bad) {
            Err(Error::NotAGroupoid { axiom, witness }) => {
                assert!(axiom.contains("only when"), "{axiom}");
                assert_eq!(witness, "11∘21");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_composition_is_rejected() {
        let bad = PAIR2.replace(r#"["12","21","11"],"#, "");
        assert!(matches!(parse_groupoid(&bad), Err(Error::NotAGroupoid { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupoid::pair(&["1", "2"]).disjoint_union(&FiniteGroupoid::cyclic(2)).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(parse_groupoid(&text).unwrap(), g);
    }

    #[test]
    fn random_groupoids_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let g = FiniteGroupoid::random(&mut rng, 3, 8, 12);
            g.validate().unwrap();
            assert!(g.objects().len() >= 3 && (8..=12).contains(&g.len()));
        }
    }

    #[test]
    fn groupoid_algebra_products() {
        let a = groupoid_algebra(&FiniteGroupoid::pair(&["1", "2"])).unwrap();
        let u = |s: &str| a.basis(a.algebra().index_of(s).unwrap());
        assert_eq!(a.mul(&u("u12"), &u("u21")), u("u11"));
        assert!(a.mul(&u("u12"), &u("u12")).iter().all(Q::is_zero));
    }
}
