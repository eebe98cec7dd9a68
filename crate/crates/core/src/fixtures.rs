//! The standard small examples.

use crate::groupoid::{function_algebra, groupoid_algebra, FiniteGroupoid};
use crate::wmha::WeakHopf;

/// `ℤ/2`, one object.
pub fn z2() -> FiniteGroupoid {
    FiniteGroupoid::cyclic(2)
}

/// Pair groupoid on `{1, 2}`; arrow `"ij"` goes from `j` to `i`.
pub fn pair2() -> FiniteGroupoid {
    FiniteGroupoid::pair(&["1", "2"])
}

/// `pair{1,2} ⊔ ℤ/2`.
pub fn g3() -> FiniteGroupoid {
    pair2().disjoint_union(&z2()).expect("disjoint labels")
}

fn named(w: crate::Result<WeakHopf>, name: &str) -> WeakHopf {
    w.expect("groupoid constructions are valid").renamed(name)
}

/// `ℂ[ℤ/2]`, an ordinary Hopf algebra.
pub fn fix_h() -> WeakHopf {
    named(groupoid_algebra(&z2()), "C[Z/2]")
}

/// Groupoid algebra of the pair groupoid on two objects (2x2 matrix units).
pub fn fix_p2() -> WeakHopf {
    named(groupoid_algebra(&pair2()), "groupoid algebra of pair{1,2}")
}

/// Function algebra of the pair groupoid on two objects.
pub fn fix_k2() -> WeakHopf {
    named(function_algebra(&pair2()), "function algebra of pair{1,2}")
}

/// Groupoid algebra of `pair{1,2} ⊔ ℤ/2`.
pub fn fix_g3() -> WeakHopf {
    named(groupoid_algebra(&g3()), "groupoid algebra of pair{1,2} + Z/2")
}

/// Function algebra of `pair{1,2} ⊔ ℤ/2`.
pub fn fix_g3_functions() -> WeakHopf {
    named(function_algebra(&g3()), "function algebra of pair{1,2} + Z/2")
}
