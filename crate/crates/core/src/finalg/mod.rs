//! Finite-dimensional associative algebras given by structure constants.

pub mod multiplier;
pub mod tensor;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{vector, Field, Mat, RowEchelon, Subspace, Q};
use crate::report::{VerificationReport, Witness};

pub use multiplier::{multiplier_algebra, MultiplierAlgebra, MultiplierPair};

/// `e_i · e_j = Σ_k c(i, j, k) e_k`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    /// Row `i * dim + j` lists the nonzero `(k, c(i, j, k))`.
    table: Vec<Vec<(usize, Q)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub mul: Vec<(usize, usize, usize, Q)>,
}

impl FiniteAlgebra {
    pub fn new<I>(labels: Vec<String>, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Q)>,
    {
        let n = labels.len();
        let mut acc: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for (t, (i, j, k, c)) in triples.into_iter().enumerate() {
            if i >= n || j >= n || k >= n {
                return Err(Error::Parse {
                    location: format!("mul[{t}]"),
                    message: format!("index out of range for dimension {n}"),
                });
            }
            *acc.entry((i, j, k)).or_default() += &c;
        }
        let mut table = vec![Vec::new(); n * n];
        for ((i, j, k), c) in acc {
            if !c.is_zero() {
                table[i * n + j].push((k, c));
            }
        }
        Ok(FiniteAlgebra { labels, table })
    }

    /// The algebra whose product is given by `f(i, j)` as a coordinate vector.
    pub fn from_products(labels: Vec<String>, mut f: impl FnMut(usize, usize) -> Vec<Q>) -> Self {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                table.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        FiniteAlgebra { labels, table }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        if j.basis.len() != j.dim {
            return Err(Error::Parse {
                location: "basis".into(),
                message: format!("{} labels for dimension {}", j.basis.len(), j.dim),
            });
        }
        Self::new(j.basis.clone(), j.mul.iter().cloned())
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson { dim: self.dim(), basis: self.labels.clone(), mul: self.triples().collect() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        vector::unit(self.dim(), i)
    }

    /// Nonzero terms of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim() + j]
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, Q)> + '_ {
        let n = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, row)| row.iter().map(move |(k, c)| (ij / n, ij % n, *k, c.clone())))
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out: Vec<Q> = vector::zeros(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.table[i * n + j] {
                    out[*k].add_product(&xy, c);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[Q]) -> Mat {
        let cols: Vec<Vec<Q>> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[Q]) -> Mat {
        let cols: Vec<Vec<Q>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    /// The `n x n²` matrix of `a ⊗ b ↦ ab`.
    pub fn mult_matrix(&self) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n * n);
        for (ij, row) in self.table.iter().enumerate() {
            for (k, c) in row {
                m.set(*k, ij, c.clone());
            }
        }
        m
    }

    /// The unit, if the algebra has one.
    pub fn unit(&self) -> Option<Vec<Q>> {
        let n = self.dim();
        // Σ_i u_i c(i, j, k) = δ_jk and Σ_i u_i c(j, i, k) = δ_jk
        let mut coeffs = Mat::zeros(2 * n * n, n);
        let mut rhs = vector::zeros(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    rhs[j * n + k] = Q::ONE;
                    rhs[n * n + j * n + k] = Q::ONE;
                }
            }
            for i in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    *coeffs.entry_mut(j * n + k, i) += c;
                }
                for (k, c) in self.basis_product(j, i) {
                    *coeffs.entry_mut(n * n + j * n + k, i) += c;
                }
            }
        }
        coeffs.solve(&rhs).particular().map(<[Q]>::to_vec)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn opposite(&self) -> FiniteAlgebra {
        let n = self.dim();
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.table[j * n + i].clone();
            }
        }
        FiniteAlgebra { labels: self.labels.clone(), table }
    }

    /// Span of all products `e_i e_j`.
    pub fn square_span(&self) -> Subspace {
        let n = self.dim();
        Subspace::span(n, self.table.iter().map(|row| {
            let mut v = vector::zeros(n);
            for (k, c) in row {
                v[*k] = c.clone();
            }
            v
        }))
    }

    /// `{a : a x = 0 for all x}` when `left`, otherwise `{a : x a = 0 for all x}`.
    pub fn annihilator(&self, left: bool) -> Subspace {
        let n = self.dim();
        let mut m = Mat::zeros(n * n, n);
        for b in 0..n {
            for i in 0..n {
                let terms = if left { self.basis_product(i, b) } else { self.basis_product(b, i) };
                for (k, c) in terms {
                    m.set(b * n + k, i, c.clone());
                }
            }
        }
        Subspace::kernel(&m)
    }

    pub fn element(&self, coords: Vec<Q>) -> Result<AlgebraElement<'_>> {
        AlgebraElement::new(self, coords)
    }
}

/// Lexicographic tensor product, `A` index major.
pub fn tensor_algebra(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    let (n, m) = (a.dim(), b.dim());
    let labels = a
        .labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let mut table = vec![Vec::new(); n * m * n * m];
    for i in 0..n {
        for k in 0..n {
            let ap = a.basis_product(i, k);
            if ap.is_empty() {
                continue;
            }
            for j in 0..m {
                for l in 0..m {
                    let bp = b.basis_product(j, l);
                    let row = &mut table[(i * m + j) * (n * m) + (k * m + l)];
                    for (p, c) in ap {
                        for (q, d) in bp {
                            row.push((p * m + q, c * d));
                        }
                    }
                    row.sort_by_key(|t| t.0);
                }
            }
        }
    }
    FiniteAlgebra { labels, table }
}

pub fn opposite(a: &FiniteAlgebra) -> FiniteAlgebra {
    a.opposite()
}

/// A coordinate vector tied to its algebra.
#[derive(Debug, Clone)]
pub struct AlgebraElement<'a> {
    algebra: &'a FiniteAlgebra,
    coords: Vec<Q>,
}

impl<'a> AlgebraElement<'a> {
    pub fn new(algebra: &'a FiniteAlgebra, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Shape(format!("{} coordinates for dimension {}", coords.len(), algebra.dim())));
        }
        Ok(AlgebraElement { algebra, coords })
    }

    pub fn basis(algebra: &'a FiniteAlgebra, i: usize) -> Self {
        AlgebraElement { algebra, coords: algebra.basis_vector(i) }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coords)
    }
}

impl PartialEq for AlgebraElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        (std::ptr::eq(self.algebra, other.algebra) || self.algebra == other.algebra) && self.coords == other.coords
    }
}

pub fn multiply<'a>(a: &AlgebraElement<'a>, b: &AlgebraElement<'a>) -> Result<AlgebraElement<'a>> {
    if !std::ptr::eq(a.algebra, b.algebra) && a.algebra != b.algebra {
        return Err(Error::AlgebraMismatch);
    }
    Ok(AlgebraElement { algebra: a.algebra, coords: a.algebra.mul(&a.coords, &b.coords) })
}

/// Associativity, non-degeneracy and idempotency of the product.
pub fn validate_algebra(a: &FiniteAlgebra) -> VerificationReport {
    let mut r = VerificationReport::new("algebra");
    let n = a.dim();
    let assoc = (|| {
        for i in 0..n {
            let ei = a.basis_vector(i);
            for j in 0..n {
                let eij = a.mul(&ei, &a.basis_vector(j));
                for k in 0..n {
                    let ek = a.basis_vector(k);
                    let lhs = a.mul(&eij, &ek);
                    let rhs = a.mul(&ei, &a.mul(&a.basis_vector(j), &ek));
                    if lhs != rhs {
                        return Err(Witness::new(vec![i, j, k], format!(
                            "({0}{1}){2} != {0}({1}{2})",
                            a.label(i),
                            a.label(j),
                            a.label(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    })();
    r.record("algebra.associative", "(ab)c = a(bc)", assoc);

    let nondeg = |left: bool| {
        let ann = a.annihilator(left);
        match ann.basis().first() {
            None => Ok(()),
            Some(v) => {
                let idx: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
                Err(Witness::new(idx, format!("nonzero element {} annihilates A", describe(a, v))))
            }
        }
    };
    r.record("algebra.nondegenerate.left", "aA = 0 implies a = 0", nondeg(true));
    r.record("algebra.nondegenerate.right", "Aa = 0 implies a = 0", nondeg(false));

    let sq = a.square_span();
    let idem = match sq.complement_indices().first() {
        None => Ok(()),
        Some(&c) => Err(Witness::at(c, format!("{} is not in span(AA)", a.label(c)))),
    };
    r.record("algebra.idempotent", "span(AA) = A", idem);
    r
}

/// `2 u12 - 1/2 u21` style rendering.
pub fn describe(a: &FiniteAlgebra, v: &[Q]) -> String {
    describe_with(v, |i| a.label(i).to_string())
}

pub fn describe_with(v: &[Q], label: impl Fn(usize) -> String) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| if c.is_one() { label(i) } else { format!("{c}·{}", label(i)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Rank of a family of vectors, computed incrementally.
pub fn rank_of<I: IntoIterator<Item = Vec<Q>>>(width: usize, vs: I) -> usize {
    let mut e = RowEchelon::new(width);
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> FiniteAlgebra {
        FiniteAlgebra::new(vec!["e".into()], [(0, 0, 0, Q::ONE)]).unwrap()
    }

    /// Matrix units in 2x2 matrices: `uij ukl = [j = k] uil`.
    fn matrix_units() -> FiniteAlgebra {
        let labels = ["u11", "u12", "u21", "u22"].map(String::from).to_vec();
        let mut t = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    t.push((i * 2 + j, j * 2 + l, i * 2 + l, Q::ONE));
                }
            }
        }
        FiniteAlgebra::new(labels, t).unwrap()
    }

    #[test]
    fn field_passes_validation() {
        assert!(validate_algebra(&field()).passed());
        assert_eq!(field().unit(), Some(vec![Q::ONE]));
    }

    #[test]
    fn null_element_breaks_nondegeneracy() {
        let a = FiniteAlgebra::new(vec!["e1".into(), "e2".into()], [(0, 0, 0, Q::ONE)]).unwrap();
        let r = validate_algebra(&a);
        let e = r.entry("algebra.nondegenerate.left").unwrap();
        assert_eq!(e.witness.as_ref().unwrap().indices, vec![1]);
        assert!(!r.passed());
    }

    #[test]
    fn matrix_unit_products() {
        let a = matrix_units();
        let u12 = AlgebraElement::basis(&a, 1);
        let u21 = AlgebraElement::basis(&a, 2);
        assert_eq!(multiply(&u12, &u21).unwrap().coords(), a.basis_vector(0).as_slice());
        assert!(multiply(&u12, &u12).unwrap().is_zero());
        let zero = a.element(vector::zeros(4)).unwrap();
        assert!(multiply(&u12, &zero).unwrap().is_zero());
        let other = field();
        assert!(matches!(multiply(&u12, &AlgebraElement::basis(&other, 0)), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn opposite_reverses() {
        let a = matrix_units();
        let op = a.opposite();
        assert_eq!(op.mul(&a.basis_vector(1), &a.basis_vector(2)), a.basis_vector(3));
        assert_eq!(op.opposite(), a);
        assert_eq!(field().opposite(), field());
    }

    #[test]
    fn tensor_products() {
        assert_eq!(tensor_algebra(&field(), &field()).dim(), 1);
        let a = matrix_units();
        let t = tensor_algebra(&a, &a);
        assert_eq!(t.label(4), "u12⊗u11");
        // (u12⊗u11)(u21⊗u12) = u11⊗u12
        let lhs = t.mul(&t.basis_vector(4), &t.basis_vector(2 * 4 + 1));
        assert_eq!(lhs, t.basis_vector(1));
        assert!(validate_algebra(&t).passed());
    }

    #[test]
    fn unit_of_matrix_units() {
        let a = matrix_units();
        let one = a.unit().unwrap();
        assert_eq!(one, vec![Q::ONE, Q::ZERO, Q::ZERO, Q::ONE]);
        let no_unit = FiniteAlgebra::new(vec!["n".into()], []).unwrap();
        assert_eq!(no_unit.unit(), None);
    }
}
