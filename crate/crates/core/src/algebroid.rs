//! Balanced tensor products of `A` over the base algebras and the bijective
//! canonical maps `𝔗ᵢ` they carry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{vector, Mat, QuotientSpace, Subspace, Q};
use crate::finalg::tensor::{self, pure};
use crate::report::{VerificationReport, Witness};
use crate::wmha::WeakHopf;

/// The six balanced tensor products; `x ∈ B`, `y ∈ C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BalancedKind {
    /// `A_B ⊗ _BA`: `ax⊗b = a⊗xb`
    #[serde(rename = "B_B")]
    BB,
    /// `A_C ⊗ _CA`: `ay⊗b = a⊗yb`
    #[serde(rename = "C_C")]
    CC,
    /// `A^B ⊗ ^BA`: `ya⊗b = a⊗by`
    #[serde(rename = "sBsB")]
    SBSB,
    /// `A^C ⊗ ^CA`: `xa⊗b = a⊗bx`
    #[serde(rename = "sCsC")]
    SCSC,
    /// `A_B ⊗ ^BA`: `ax⊗b = a⊗b t_B(x)`
    #[serde(rename = "B_sB")]
    BSB,
    /// `A^C ⊗ _CA`: `t_C(y)a⊗b = a⊗yb`
    #[serde(rename = "sC_C")]
    SCC,
}

impl BalancedKind {
    pub const ALL: [BalancedKind; 6] =
        [BalancedKind::BB, BalancedKind::CC, BalancedKind::SBSB, BalancedKind::SCSC, BalancedKind::BSB, BalancedKind::SCC];

    pub fn code(self) -> &'static str {
        match self {
            BalancedKind::BB => "B_B",
            BalancedKind::CC => "C_C",
            BalancedKind::SBSB => "sBsB",
            BalancedKind::SCSC => "sCsC",
            BalancedKind::BSB => "B_sB",
            BalancedKind::SCC => "sC_C",
        }
    }

    pub fn notation(self) -> &'static str {
        match self {
            BalancedKind::BB => "A_B⊗_BA",
            BalancedKind::CC => "A_C⊗_CA",
            BalancedKind::SBSB => "A^B⊗^BA",
            BalancedKind::SCSC => "A^C⊗^CA",
            BalancedKind::BSB => "A_B⊗^BA",
            BalancedKind::SCC => "A^C⊗_CA",
        }
    }

    /// Domain and codomain of `𝔗ₖ`.
    pub fn canonical_map(k: usize) -> (BalancedKind, BalancedKind) {
        match k {
            1 => (BalancedKind::BB, BalancedKind::SCC),
            2 => (BalancedKind::CC, BalancedKind::BSB),
            3 => (BalancedKind::SCSC, BalancedKind::BSB),
            4 => (BalancedKind::SBSB, BalancedKind::SCC),
            _ => panic!("canonical maps are numbered 1 to 4"),
        }
    }
}

impl fmt::Display for BalancedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

impl FromStr for BalancedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BalancedKind::ALL
            .into_iter()
            .find(|k| k.code() == s || k.notation() == s)
            .ok_or_else(|| Error::Structure(format!("unknown balanced tensor product {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct BalancedTensor {
    kind: BalancedKind,
    quotient: QuotientSpace,
}

impl BalancedTensor {
    pub fn kind(&self) -> BalancedKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn killed(&self) -> &Subspace {
        self.quotient.killed()
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    /// `π : A⊗A → A⊗A / relators`
    pub fn pi(&self) -> &Mat {
        self.quotient.projection()
    }

    pub fn project(&self, v: &[Q]) -> Vec<Q> {
        self.quotient.project(v)
    }
}

/// The defining relators of `kind` on all basis pairs.
pub fn relators(w: &WeakHopf, kind: BalancedKind) -> Vec<Vec<Q>> {
    let n = w.dim();
    let base = match kind {
        BalancedKind::BB | BalancedKind::SCSC | BalancedKind::BSB => w.base_b(),
        BalancedKind::CC | BalancedKind::SBSB | BalancedKind::SCC => w.base_c(),
    };
    let t = w.antipode_inv();
    let mut out = Vec::with_capacity(n * n * base.dim());
    for z in base.basis() {
        let tz = t.mul_vec(z);
        for i in 0..n {
            let a = w.basis(i);
            for j in 0..n {
                let b = w.basis(j);
                let (l, r) = match kind {
                    BalancedKind::BB | BalancedKind::CC => (pure(&w.mul(&a, z), &b), pure(&a, &w.mul(z, &b))),
                    BalancedKind::SBSB | BalancedKind::SCSC => (pure(&w.mul(z, &a), &b), pure(&a, &w.mul(&b, z))),
                    BalancedKind::BSB => (pure(&w.mul(&a, z), &b), pure(&a, &w.mul(&b, &tz))),
                    BalancedKind::SCC => (pure(&w.mul(&tz, &a), &b), pure(&a, &w.mul(z, &b))),
                };
                let d = vector::sub(&l, &r);
                if !vector::is_zero(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

pub fn balanced_tensor(w: &WeakHopf, kind: BalancedKind) -> BalancedTensor {
    let nn = w.dim() * w.dim();
    let killed = Subspace::span(nn, relators(w, kind));
    BalancedTensor { kind, quotient: QuotientSpace::new(killed) }
}

/// `𝔗` with `𝔗∘π_dom = π_cod∘T`, provided `T` kills the relators of `dom`.
pub fn descend(name: &str, t: &Mat, dom: &BalancedTensor, cod: &BalancedTensor) -> Result<Mat> {
    dom.quotient
        .descend_map(t, &cod.quotient)
        .map_err(|witness| Error::MapDoesNotDescend { map: format!("{name} from {} to {}", dom.kind, cod.kind), witness })
}

/// The multiplier Hopf algebroid attached to a weak Hopf structure.
#[derive(Debug, Clone)]
pub struct Algebroid {
    tensors: Vec<BalancedTensor>,
    maps: [Mat; 4],
    t_b: Mat,
    t_c: Mat,
}

impl Algebroid {
    /// Builds all six balanced tensor products and the four induced maps,
    /// failing if one of them does not descend or is not bijective.
    pub fn new(w: &WeakHopf) -> Result<Self> {
        let tensors: Vec<BalancedTensor> = BalancedKind::ALL.iter().map(|&k| balanced_tensor(w, k)).collect();
        let get = |k: BalancedKind| &tensors[BalancedKind::ALL.iter().position(|&x| x == k).expect("all kinds")];
        let mut maps: [Mat; 4] = std::array::from_fn(|_| Mat::zeros(0, 0));
        for (k, slot) in (1..=4).zip(maps.iter_mut()) {
            let (dom, cod) = BalancedKind::canonical_map(k);
            let m = descend(&format!("𝔗{k}"), w.t(k), get(dom), get(cod))?;
            if m.rows() != m.cols() || !m.is_invertible() {
                return Err(Error::NotBijective { map: format!("𝔗{k}"), rank: m.rank(), dim: m.cols() });
            }
            *slot = m;
        }
        Ok(Algebroid { tensors, maps, t_b: w.t_b().clone(), t_c: w.t_c().clone() })
    }

    pub fn tensor(&self, kind: BalancedKind) -> &BalancedTensor {
        self.tensors.iter().find(|t| t.kind == kind).expect("all kinds are built")
    }

    pub fn tensors(&self) -> &[BalancedTensor] {
        &self.tensors
    }

    /// `𝔗ₖ` in the quotient bases of its domain and codomain.
    pub fn canonical(&self, k: usize) -> &Mat {
        &self.maps[k - 1]
    }

    /// `𝔗₁(a⊗b) = Δ_C(a)(1⊗b)` on representatives.
    pub fn delta_c_right(&self, w: &WeakHopf, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.tensor(BalancedKind::SCC).project(&w.t(1).mul_vec(&pure(a, b)))
    }

    /// `𝔗₄(a⊗b) = Δ_C(b)(a⊗1)`
    pub fn delta_c_left(&self, w: &WeakHopf, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.tensor(BalancedKind::SCC).project(&w.t(4).mul_vec(&pure(a, b)))
    }

    /// `𝔗₂(a⊗b) = (a⊗1)Δ_B(b)`
    pub fn delta_b_left(&self, w: &WeakHopf, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.tensor(BalancedKind::BSB).project(&w.t(2).mul_vec(&pure(a, b)))
    }

    /// `𝔗₃(a⊗b) = (1⊗b)Δ_B(a)`
    pub fn delta_b_right(&self, w: &WeakHopf, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.tensor(BalancedKind::BSB).project(&w.t(3).mul_vec(&pure(a, b)))
    }

    /// `t_B = S_C⁻¹`, stored as the ambient matrix of `S⁻¹`.
    pub fn t_b(&self) -> &Mat {
        &self.t_b
    }

    pub fn t_c(&self) -> &Mat {
        &self.t_c
    }

    pub fn summary(&self, w: &WeakHopf) -> AlgebroidSummary {
        AlgebroidSummary {
            total_dim: w.dim(),
            base_b_dim: w.base_b().dim(),
            base_c_dim: w.base_c().dim(),
            quotients: self.tensors.iter().map(|t| (t.kind, t.dim())).collect(),
            canonical_maps: (1..=4)
                .map(|k| {
                    let (dom, cod) = BalancedKind::canonical_map(k);
                    CanonicalMapSummary { index: k, domain: dom, codomain: cod, rank: self.maps[k - 1].rank(), bijective: true }
                })
                .collect(),
            t_b: restrict(&self.t_b, w.base_b(), w.base_c()),
            t_c: restrict(&self.t_c, w.base_c(), w.base_b()),
            counital_b: w.eps_s().clone(),
            counital_c: w.eps_t().clone(),
        }
    }
}

/// Matrix of `m` from `dom` to `cod` in their echelon bases.
pub fn restrict(m: &Mat, dom: &Subspace, cod: &Subspace) -> Mat {
    cod.coordinate_matrix().mul(m).mul(&dom.basis_matrix())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMapSummary {
    pub index: usize,
    pub domain: BalancedKind,
    pub codomain: BalancedKind,
    pub rank: usize,
    pub bijective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebroidSummary {
    pub total_dim: usize,
    pub base_b_dim: usize,
    pub base_c_dim: usize,
    pub quotients: Vec<(BalancedKind, usize)>,
    pub canonical_maps: Vec<CanonicalMapSummary>,
    pub t_b: Mat,
    pub t_c: Mat,
    pub counital_b: Mat,
    pub counital_c: Mat,
}

/// Checks every balanced tensor product and canonical map, reporting each.
pub fn verify_algebroid(w: &WeakHopf) -> VerificationReport {
    let mut r = VerificationReport::new(format!("algebroid of {}", w.name()));
    let tensors: Vec<BalancedTensor> = BalancedKind::ALL.iter().map(|&k| balanced_tensor(w, k)).collect();
    let get = |k: BalancedKind| tensors.iter().find(|t| t.kind == k).expect("all kinds");
    let nn = w.dim() * w.dim();
    for t in &tensors {
        let ok = if t.pi().mul(&t.quotient.section()) == Mat::identity(t.dim()) && t.dim() + t.killed().dim() == nn {
            Ok(())
        } else {
            Err(Witness::new(vec![], "projection and section are not compatible"))
        };
        r.record(format!("balanced.{}", t.kind.code()), format!("{} is the quotient by its relators", t.kind), ok);
    }
    let flip = tensor::flip_matrix(w.dim());
    for (a, b) in [(BalancedKind::SBSB, BalancedKind::CC), (BalancedKind::SCSC, BalancedKind::BB)] {
        let flipped = get(b).killed().image(&flip);
        let ok = if &flipped == get(a).killed() {
            Ok(())
        } else {
            Err(Witness::new(vec![], format!("flipped relators of {b} differ from those of {a}")))
        };
        r.record(format!("balanced.flip.{}", a.code()), format!("{a} is the flip of {b}"), ok);
    }
    for k in 1..=4 {
        let (dom, cod) = BalancedKind::canonical_map(k);
        let outcome = descend(&format!("𝔗{k}"), w.t(k), get(dom), get(cod))
            .map_err(|e| Witness::new(vec![], e.to_string()))
            .and_then(|m| {
                if m.rows() == m.cols() && m.is_invertible() {
                    Ok(())
                } else {
                    Err(Witness::new(vec![], format!("rank {} on dimension {}", m.rank(), m.cols())))
                }
            });
        r.record(format!("canonical.bijective.{k}"), format!("T{k} descends to a bijection {dom} → {cod}"), outcome);
    }
    let dictionary = (|| {
        for (space, other, t, s, name) in
            [(w.base_b(), w.base_c(), w.t_b(), "S_C", "t_B"), (w.base_c(), w.base_b(), w.t_c(), "S_B", "t_C")]
        {
            for x in space.basis() {
                let tx = t.mul_vec(x);
                if !other.contains(&tx) || w.s(&tx) != *x {
                    let idx = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
                    return Err(Witness::new(idx, format!("{name} is not the inverse of {s}")));
                }
            }
        }
        Ok(())
    })();
    r.record("dictionary.t_maps", "t_B = S_C⁻¹ and t_C = S_B⁻¹", dictionary);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip_through_codes() {
        for k in BalancedKind::ALL {
            assert_eq!(k.code().parse::<BalancedKind>().unwrap(), k);
            assert_eq!(k.notation().parse::<BalancedKind>().unwrap(), k);
        }
        assert!("B_C".parse::<BalancedKind>().is_err());
    }
}
