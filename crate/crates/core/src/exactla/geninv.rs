use super::bilinear::BilinearForm;
use super::matrix::Mat;
use super::quotient::QuotientSpace;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Outcome of checking `TRT = T` and `RTR = R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GinvVerdict {
    pub holds: bool,
    /// The failing identity and the first basis vector (column) where it breaks.
    pub failure: Option<(&'static str, usize)>,
}

/// `(T, R)` with `TRT = T` and `RTR = R`, plus the idempotents `E = TR` and `F = RT`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedInversePair {
    pub forward: Mat,
    pub backward: Mat,
    pub range_idem: Mat,
    pub kernel_idem: Mat,
}

pub fn check_generalized_inverse(t: &Mat, r: &Mat) -> Result<GinvVerdict> {
    if t.rows() != r.cols() || t.cols() != r.rows() {
        return Err(Error::Shape(format!(
            "T is {}x{} but R is {}x{}",
            t.rows(),
            t.cols(),
            r.rows(),
            r.cols()
        )));
    }
    let trt = t.mul(r).mul(t);
    if let Some(j) = trt.first_differing_column(t) {
        return Ok(GinvVerdict { holds: false, failure: Some(("TRT = T", j)) });
    }
    let rtr = r.mul(t).mul(r);
    if let Some(j) = rtr.first_differing_column(r) {
        return Ok(GinvVerdict { holds: false, failure: Some(("RTR = R", j)) });
    }
    Ok(GinvVerdict { holds: true, failure: None })
}

impl GeneralizedInversePair {
    pub fn new(t: Mat, r: Mat) -> Result<Self> {
        let v = check_generalized_inverse(&t, &r)?;
        if let Some((identity, basis)) = v.failure {
            return Err(Error::NotGeneralizedInverse { identity, basis });
        }
        let range_idem = t.mul(&r);
        let kernel_idem = r.mul(&t);
        Ok(GeneralizedInversePair { forward: t, backward: r, range_idem, kernel_idem })
    }

    /// `ker T`, which equals `ker F`.
    pub fn kernel(&self) -> Subspace {
        Subspace::kernel(&self.forward)
    }

    /// `ker R`, which equals `ker E`.
    pub fn cokernel_complement(&self) -> Subspace {
        Subspace::kernel(&self.backward)
    }
}

/// Quotients of `X` by the kernels of `T` and `R` (and likewise for `X'`),
/// the two pairings they inherit, and the induced bijections between them.
#[derive(Debug, Clone)]
pub struct InducedPairings {
    /// `X / ker T`
    pub quot_s: QuotientSpace,
    /// `X / ker R`
    pub quot_t: QuotientSpace,
    pub quotp_s: QuotientSpace,
    pub quotp_t: QuotientSpace,
    /// On `X/ker R × X'/ker T'`: `⟨π_t x, π'_s x'⟩₁ = ⟨Ex, x'⟩`.
    pub pair1: BilinearForm,
    /// On `X/ker T × X'/ker R'`: `⟨π_s x, π'_t x'⟩₂ = ⟨Fx, x'⟩`.
    pub pair2: BilinearForm,
    /// `π_s x ↦ π_t(Tx)`
    pub frak_t: Mat,
    pub frak_tp: Mat,
    /// `π_t x ↦ π_s(Rx)`
    pub frak_r: Mat,
    pub frak_rp: Mat,
}

/// First basis pair where `⟨Mx, x'⟩ = ⟨x, M'x'⟩` fails, i.e. `MᵀG ≠ GM'`.
pub fn adjointness_witness(form: &BilinearForm, m: &Mat, mp: &Mat) -> Option<(usize, usize)> {
    let g = form.gram();
    m.transpose().mul(g).first_difference(&g.mul(mp))
}

pub fn induced_quotient_pairings(form: &BilinearForm, t: &Mat, tp: &Mat, r: &Mat, rp: &Mat) -> Result<InducedPairings> {
    let (n, np) = (form.left_dim(), form.right_dim());
    for (name, m, d) in [("T", t, n), ("R", r, n), ("T'", tp, np), ("R'", rp, np)] {
        if m.shape() != (d, d) {
            return Err(Error::Shape(format!("{name} must be {d}x{d}, got {}x{}", m.rows(), m.cols())));
        }
    }
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if let Some((left, right)) = adjointness_witness(form, t, tp) {
        return Err(Error::NotAdjoint { map: "T", left, right });
    }
    if let Some((left, right)) = adjointness_witness(form, r, rp) {
        return Err(Error::NotAdjoint { map: "R", left, right });
    }
    let x = GeneralizedInversePair::new(t.clone(), r.clone())?;
    let xp = GeneralizedInversePair::new(tp.clone(), rp.clone())?;

    let quot_s = QuotientSpace::new(x.kernel());
    let quot_t = QuotientSpace::new(x.cokernel_complement());
    let quotp_s = QuotientSpace::new(xp.kernel());
    let quotp_t = QuotientSpace::new(xp.cokernel_complement());

    let g = form.gram();
    let pair1 = quot_t.section().transpose().mul(&x.range_idem.transpose()).mul(g).mul(&quotp_s.section());
    let pair2 = quot_s.section().transpose().mul(&x.kernel_idem.transpose()).mul(g).mul(&quotp_t.section());

    let descend = |dom: &QuotientSpace, m: &Mat, cod: &QuotientSpace, name: &str| {
        dom.descend_map(m, cod)
            .map_err(|_| Error::Structure(format!("{name} does not respect the kernel quotients")))
    };
    let frak_t = descend(&quot_s, t, &quot_t, "T")?;
    let frak_r = descend(&quot_t, r, &quot_s, "R")?;
    let frak_tp = descend(&quotp_s, tp, &quotp_t, "T'")?;
    let frak_rp = descend(&quotp_t, rp, &quotp_s, "R'")?;

    Ok(InducedPairings {
        quot_s,
        quot_t,
        quotp_s,
        quotp_t,
        pair1: BilinearForm::new(pair1),
        pair2: BilinearForm::new(pair2),
        frak_t,
        frak_tp,
        frak_r,
        frak_rp,
    })
}

impl InducedPairings {
    /// `⟨𝔗u, u'⟩₁ = ⟨u, 𝔗'u'⟩₂`, as `𝔗ᵀ P₁ = P₂ 𝔗'`.
    pub fn forward_adjointness(&self) -> Option<(usize, usize)> {
        let lhs = self.frak_t.transpose().mul(self.pair1.gram());
        lhs.first_difference(&self.pair2.gram().mul(&self.frak_tp))
    }

    /// `⟨𝔑v, v'⟩₂ = ⟨v, 𝔑'v'⟩₁`, as `𝔑ᵀ P₂ = P₁ 𝔑'`.
    pub fn backward_adjointness(&self) -> Option<(usize, usize)> {
        let lhs = self.frak_r.transpose().mul(self.pair2.gram());
        lhs.first_difference(&self.pair1.gram().mul(&self.frak_rp))
    }

    /// Whether the induced maps on both sides are mutually inverse.
    pub fn maps_are_inverse(&self) -> bool {
        let id = |k| Mat::identity(k);
        self.frak_t.mul(&self.frak_r) == id(self.quot_t.dim())
            && self.frak_r.mul(&self.frak_t) == id(self.quot_s.dim())
            && self.frak_tp.mul(&self.frak_rp) == id(self.quotp_t.dim())
            && self.frak_rp.mul(&self.frak_tp) == id(self.quotp_s.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn true_inverse() {
        let t = Mat::from_ints(&[[2, 1], [1, 1]]);
        let r = t.inverse().unwrap();
        assert!(check_generalized_inverse(&t, &r).unwrap().holds);
    }

    #[test]
    fn projection_is_own_inverse() {
        let p = Mat::from_ints(&[[1, 0], [0, 0]]);
        assert!(check_generalized_inverse(&p, &p).unwrap().holds);
    }

    #[test]
    fn identity_is_not_generalized_inverse_of_projection() {
        let p = Mat::from_ints(&[[1, 0], [0, 0]]);
        let v = check_generalized_inverse(&p, &Mat::identity(2)).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failure, Some(("RTR = R", 1)));
    }

    #[test]
    fn shape_mismatch() {
        assert!(check_generalized_inverse(&Mat::identity(2), &Mat::identity(3)).is_err());
    }

    #[test]
    fn invertible_case_is_trivial() {
        let id = Mat::identity(3);
        let ind = induced_quotient_pairings(&BilinearForm::dot(3), &id, &id, &id, &id).unwrap();
        assert_eq!(ind.pair1, BilinearForm::dot(3));
        assert_eq!(ind.pair2, BilinearForm::dot(3));
        assert_eq!(ind.frak_t, id);
    }

    #[test]
    fn rank_one_projection() {
        let p = Mat::from_ints(&[[1, 0], [0, 0]]);
        let ind = induced_quotient_pairings(&BilinearForm::dot(2), &p, &p, &p, &p).unwrap();
        assert_eq!(ind.pair1.gram(), &Mat::from_ints(&[[1]]));
        assert_eq!(ind.pair2.gram(), &Mat::from_ints(&[[1]]));
        assert_eq!(ind.forward_adjointness(), None);
        assert_eq!(ind.backward_adjointness(), None);
        assert!(ind.maps_are_inverse());
    }

    #[test]
    fn rejects_non_adjoint_maps() {
        let t = Mat::from_ints(&[[1, 1], [0, 0]]);
        let r = Mat::from_ints(&[[1, 0], [0, 0]]);
        let err = induced_quotient_pairings(&BilinearForm::dot(2), &t, &t, &r, &r).unwrap_err();
        assert!(matches!(err, Error::NotAdjoint { map: "T", .. }));
    }
}
