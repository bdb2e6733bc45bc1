//! Invariants that, by the uniqueness of fine `ℤ4³`-gradings with
//! one-dimensional components, certify two gradings as equivalent.

use serde::Serialize;

use crate::algebra::InvolutiveAlgebra;
use crate::exactnum::Scalar;
use crate::grading_groups::{AbelianGroup, GroupElt};
use crate::gradings::{graded_subalgebra, Fingerprint, Grading};
use crate::jordan::check_jordan_identity;
use crate::structurable::hk_split;

#[derive(Debug, Clone, Serialize)]
pub struct SubalgebraCheck {
    pub dim: usize,
    pub closed: bool,
    pub commutative: bool,
    pub jordan: bool,
    pub components_dim1: bool,
    pub detail: Option<String>,
}

impl SubalgebraCheck {
    pub fn passed(&self) -> bool {
        self.closed && self.dim == 16 && self.commutative && self.jordan && self.components_dim1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecognitionReport {
    pub model: String,
    pub skew_dimension: usize,
    /// Degree of the skew line, if it is homogeneous.
    pub g0: Option<GroupElt>,
    pub components: usize,
    pub all_dim1: bool,
    pub support_is_s_g0: bool,
    pub fingerprint: Fingerprint,
    pub subalgebra: Option<SubalgebraCheck>,
}

impl RecognitionReport {
    pub fn passed(&self) -> bool {
        self.g0.is_some()
            && self.skew_dimension == 1
            && self.components == 56
            && self.all_dim1
            && self.support_is_s_g0
            && self.subalgebra.as_ref().is_none_or(SubalgebraCheck::passed)
    }
}

/// Degree of the skew elements when they span a homogeneous line.
pub fn skew_degree<F: Scalar>(alg: &InvolutiveAlgebra<F>, grading: &Grading) -> (usize, Option<GroupElt>) {
    let (_, k) = hk_split(alg);
    let degs: std::collections::BTreeSet<&GroupElt> =
        k.iter().flat_map(|v| v.iter().map(|(i, _)| &grading.degrees[i]).collect::<Vec<_>>()).collect();
    let g0 = (k.len() == 1 && degs.len() == 1).then(|| degs.into_iter().next().cloned()).flatten();
    (k.len(), g0)
}

/// The `ℤ4²` piece `⊕_{(0,k,ℓ)}` of a `ℤ4³`-graded algebra.
pub fn z4_squared_subalgebra<F: Scalar>(alg: &InvolutiveAlgebra<F>, grading: &Grading) -> SubalgebraCheck {
    let g = AbelianGroup::z4_cubed();
    match graded_subalgebra(alg, grading, &[g.t(&[0, 1, 0]), g.t(&[0, 0, 1])]) {
        Err(e) => SubalgebraCheck {
            dim: 0,
            closed: false,
            commutative: false,
            jordan: false,
            components_dim1: false,
            detail: Some(e.to_string()),
        },
        Ok((sub, sg, _)) => {
            let d = sub.dim();
            let commutative = (0..d).all(|i| (i..d).all(|j| sub.mul_basis(i, j) == sub.mul_basis(j, i)));
            let jordan = check_jordan_identity(&sub);
            let components_dim1 = sg.support().len() == d && sg.is_fine_dim1();
            SubalgebraCheck { dim: d, closed: true, commutative, jordan: jordan.is_ok(), components_dim1, detail: jordan.err() }
        }
    }
}

/// Checks a verified `ℤ4³`-grading of a 56-dimensional algebra; `with_subalgebra`
/// adds the `ℤ4²` subalgebra check.
pub fn recognition_invariants<F: Scalar>(
    model: &str,
    alg: &InvolutiveAlgebra<F>,
    grading: &Grading,
    with_subalgebra: bool,
) -> RecognitionReport {
    let (skew_dimension, g0) = skew_degree(alg, grading);
    let support = grading.support();
    let support_is_s_g0 = match &g0 {
        Some(g0) => grading.group.support_s(g0).is_ok_and(|s| s.into_iter().collect::<std::collections::BTreeSet<_>>() == support),
        None => false,
    };
    RecognitionReport {
        model: model.into(),
        skew_dimension,
        components: support.len(),
        all_dim1: grading.verified && grading.is_fine_dim1(),
        support_is_s_g0,
        fingerprint: grading.fingerprint(g0.as_ref()),
        g0,
        subalgebra: with_subalgebra.then(|| z4_squared_subalgebra(alg, grading)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brown::{model_a::build_model_a, model_b::build_model_b};
    use crate::exactnum::GaussRat;
    use crate::grading_groups::named;

    #[test]
    fn both_models_share_invariants() {
        let a = build_model_a::<GaussRat>().unwrap();
        let b = build_model_b::<GaussRat>().unwrap();
        let ra = recognition_invariants("A", &a.graded, &a.grading, false);
        let rb = recognition_invariants("B", &b.graded, &b.grading, true);
        assert!(ra.passed(), "{ra:?}");
        assert!(rb.passed(), "{rb:?}");
        assert_eq!(ra.g0, Some(named::g0()));
        assert_eq!(ra.fingerprint, rb.fingerprint);
        assert_eq!(rb.fingerprint.dims.len(), 64);
        // model A's ℤ4² piece is H4(K) restricted to ψ/φ̃ eigenvectors: 16 dims
        assert_eq!(z4_squared_subalgebra(&a.graded, &a.grading).dim, 16);
    }

    #[test]
    fn corrupted_degree_breaks_support() {
        let b = build_model_b::<GaussRat>().unwrap();
        let mut g = b.grading.clone();
        g.degrees.swap(2, 3);
        assert!(!g.verify(&b.graded).passed());
        let r = recognition_invariants("B", &b.graded, &g, false);
        assert!(!r.passed());
    }
}
