//! The multiplier algebra `M(A)` realized as compatible pairs `(L, R)` of
//! linear maps with `L(ab) = L(a)b`, `R(ab) = aR(b)` and `aL(b) = R(a)b`.

use super::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{vector, Mat, Subspace, Q};

/// A multiplier `m` acting by `L(x) = m x` and `R(x) = x m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierPair {
    pub left: Mat,
    pub right: Mat,
}

#[derive(Debug, Clone)]
pub struct MultiplierAlgebra {
    base: FiniteAlgebra,
    /// Solution space inside the `2n²` coordinates `(vec L, vec R)`.
    elements: Subspace,
    unit: MultiplierPair,
}

impl MultiplierPair {
    pub fn identity(n: usize) -> Self {
        MultiplierPair { left: Mat::identity(n), right: Mat::identity(n) }
    }

    /// `(L_a, R_a)`
    pub fn of_element(a: &FiniteAlgebra, x: &[Q]) -> Self {
        MultiplierPair { left: a.left_mult(x), right: a.right_mult(x) }
    }

    /// `(m₁m₂)x = m₁(m₂x)` and `x(m₁m₂) = (xm₁)m₂`.
    pub fn product(&self, other: &Self) -> Self {
        MultiplierPair { left: self.left.mul(&other.left), right: other.right.mul(&self.right) }
    }

    fn to_coords(&self) -> Vec<Q> {
        self.left.entries().iter().chain(self.right.entries()).cloned().collect()
    }

    fn from_coords(n: usize, v: &[Q]) -> Self {
        let m = |off: usize| Mat::from_fn(n, n, |i, j| v[off + i * n + j].clone());
        MultiplierPair { left: m(0), right: m(n * n) }
    }

    /// First basis pair `(a, b)` violating one of the three compatibility laws.
    pub fn violation(&self, a: &FiniteAlgebra) -> Option<(&'static str, usize, usize)> {
        let n = a.dim();
        for i in 0..n {
            let ei = a.basis_vector(i);
            for j in 0..n {
                let ej = a.basis_vector(j);
                let ab = a.mul(&ei, &ej);
                if self.left.mul_vec(&ab) != a.mul(&self.left.mul_vec(&ei), &ej) {
                    return Some(("L(ab) = L(a)b", i, j));
                }
                if self.right.mul_vec(&ab) != a.mul(&ei, &self.right.mul_vec(&ej)) {
                    return Some(("R(ab) = aR(b)", i, j));
                }
                if a.mul(&ei, &self.left.mul_vec(&ej)) != a.mul(&self.right.mul_vec(&ei), &ej) {
                    return Some(("aL(b) = R(a)b", i, j));
                }
            }
        }
        None
    }
}

/// Solves the defining linear equations of multiplier pairs.
pub fn multiplier_algebra(a: &FiniteAlgebra) -> Result<MultiplierAlgebra> {
    let n = a.dim();
    if !a.annihilator(true).basis().is_empty() || !a.annihilator(false).basis().is_empty() {
        return Err(Error::Structure("multiplier algebra needs a non-degenerate product".into()));
    }
    if a.square_span().dim() != n {
        return Err(Error::Structure("multiplier algebra needs an idempotent algebra".into()));
    }
    let nn = n * n;
    let l = |k: usize, j: usize| k * n + j; // coefficient of e_k in L(e_j)
    let r = |k: usize, j: usize| nn + k * n + j;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // L(e_i e_j) - L(e_i) e_j = 0, coordinate p
            let mut eq = vec![vec![Q::ZERO; 2 * nn]; n];
            for (k, c) in a.basis_product(i, j) {
                for (p, row) in eq.iter_mut().enumerate() {
                    row[l(p, *k)] += c;
                }
            }
            for m in 0..n {
                for (p, c) in a.basis_product(m, j) {
                    eq[*p][l(m, i)] -= c;
                }
            }
            rows.extend(eq);

            // R(e_i e_j) - e_i R(e_j) = 0
            let mut eq = vec![vec![Q::ZERO; 2 * nn]; n];
            for (k, c) in a.basis_product(i, j) {
                for (p, row) in eq.iter_mut().enumerate() {
                    row[r(p, *k)] += c;
                }
            }
            for m in 0..n {
                for (p, c) in a.basis_product(i, m) {
                    eq[*p][r(m, j)] -= c;
                }
            }
            rows.extend(eq);

            // e_i L(e_j) - R(e_i) e_j = 0
            let mut eq = vec![vec![Q::ZERO; 2 * nn]; n];
            for m in 0..n {
                for (p, c) in a.basis_product(i, m) {
                    eq[*p][l(m, j)] += c;
                }
                for (p, c) in a.basis_product(m, j) {
                    eq[*p][r(m, i)] -= c;
                }
            }
            rows.extend(eq);
        }
    }
    rows.retain(|row| !vector::is_zero(row));
    let system = if rows.is_empty() { Mat::zeros(0, 2 * nn) } else { Mat::from_rows(rows).expect("rows of equal length") };
    let elements = Subspace::span(2 * nn, system.nullspace());
    let unit = MultiplierPair::identity(n);
    Ok(MultiplierAlgebra { base: a.clone(), elements, unit })
}

impl MultiplierAlgebra {
    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.elements.dim()
    }

    pub fn unit(&self) -> &MultiplierPair {
        &self.unit
    }

    pub fn contains(&self, m: &MultiplierPair) -> bool {
        self.elements.contains(&m.to_coords())
    }

    pub fn basis(&self) -> Vec<MultiplierPair> {
        let n = self.base.dim();
        self.elements.basis().iter().map(|v| MultiplierPair::from_coords(n, v)).collect()
    }

    pub fn embed(&self, x: &[Q]) -> MultiplierPair {
        MultiplierPair::of_element(&self.base, x)
    }

    /// Span of the image of `A`.
    pub fn image_of_base(&self) -> Subspace {
        let n = self.base.dim();
        Subspace::span(2 * n * n, (0..n).map(|i| self.embed(&self.base.basis_vector(i)).to_coords()))
    }

    pub fn embedding_is_injective(&self) -> bool {
        self.image_of_base().dim() == self.base.dim()
    }

    pub fn embedding_is_onto(&self) -> bool {
        self.image_of_base() == self.elements
    }

    /// `mA = 0` forces `m = 0`: no nonzero element has `L = 0`.
    pub fn is_essential(&self) -> bool {
        let n = self.base.dim();
        let left_parts = self.elements.basis().iter().map(|v| v[..n * n].to_vec());
        crate::finalg::rank_of(n * n, left_parts) == self.dim()
    }

    /// Closure under the product and the ideal property, on basis elements.
    pub fn is_closed(&self) -> bool {
        let b = self.basis();
        let n = self.base.dim();
        let products_ok = b.iter().all(|x| b.iter().all(|y| self.contains(&x.product(y))));
        let ideal_ok = b.iter().all(|m| {
            (0..n).all(|i| {
                let a = self.embed(&self.base.basis_vector(i));
                let ma = m.product(&a);
                let am = a.product(m);
                let img = self.image_of_base();
                img.contains(&ma.to_coords()) && img.contains(&am.to_coords())
            })
        });
        products_ok && ideal_ok && self.contains(&self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag2() -> FiniteAlgebra {
        FiniteAlgebra::new(vec!["p".into(), "q".into()], [(0, 0, 0, Q::ONE), (1, 1, 1, Q::ONE)]).unwrap()
    }

    #[test]
    fn unital_algebra_is_its_own_multiplier_algebra() {
        let m = multiplier_algebra(&diag2()).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.embedding_is_injective());
        assert!(m.embedding_is_onto());
        assert!(m.is_essential());
        assert!(m.is_closed());
        assert_eq!(m.unit().violation(m.base()), None);
        let one = m.embed(&[Q::ONE, Q::ONE]);
        assert_eq!(&one, m.unit());
    }

    #[test]
    fn rejects_degenerate_product() {
        let a = FiniteAlgebra::new(vec!["e".into(), "n".into()], [(0, 0, 0, Q::ONE)]).unwrap();
        assert!(multiplier_algebra(&a).is_err());
    }

    #[test]
    fn random_pair_violates_laws() {
        let p = MultiplierPair { left: Mat::from_ints(&[[0, 1], [1, 0]]), right: Mat::identity(2) };
        assert!(p.violation(&diag2()).is_some());
        assert!(!multiplier_algebra(&diag2()).unwrap().contains(&p));
    }
}
