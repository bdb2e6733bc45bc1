//! Group gradings given by a degree per basis vector: verification,
//! coarsening, component dimensions, fingerprints and graded subalgebras.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::InvolutiveAlgebra;
use crate::exactnum::Scalar;
use crate::grading_groups::{AbelianGroup, GroupElt, GroupError, Hom};
use crate::linalg::{Operator, SparseVec};

/// A grading with a homogeneous basis: basis vector `i` has degree `degrees[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub group: AbelianGroup,
    pub degrees: Vec<GroupElt>,
    pub verified: bool,
}

/// A basis product `e_i e_j` with a component `e_k` of the wrong degree, or
/// an involution image leaving its component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    Product { i: usize, j: usize, k: usize },
    Involution { i: usize, k: usize },
    NotInGroup { i: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct GradingReport {
    pub pairs_checked: usize,
    pub witness: Option<Witness>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Dimensions of all components (every group element when the group is
    /// finite, the support otherwise), sorted descending.
    pub dims: Vec<usize>,
    pub support_size: usize,
    /// Orders of the support elements, sorted (0 for infinite order).
    pub support_orders: Vec<u64>,
    pub g0_order: Option<u64>,
}

impl Grading {
    pub fn new(group: AbelianGroup, degrees: Vec<GroupElt>) -> Self {
        Grading { group, degrees, verified: false }
    }

    pub fn trivial(group: AbelianGroup, dim: usize) -> Self {
        let z = group.zero();
        Grading::new(group, vec![z; dim])
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn sum(&self, i: usize, j: usize) -> GroupElt {
        self.group.add(&self.degrees[i], &self.degrees[j]).expect("degrees are group elements")
    }

    /// Checks homogeneity of every basis product given by `product(i, j)`
    /// and, if supplied, stability of components under the involution.
    pub fn check_table<F: Scalar>(
        &self,
        product: impl Fn(usize, usize) -> SparseVec<F> + Sync,
        invol: Option<&Operator<F>>,
    ) -> GradingReport {
        let d = self.dim();
        let mut rep = GradingReport { pairs_checked: d * d, witness: None };
        if let Some(i) = (0..d).find(|&i| !self.group.contains(&self.degrees[i])) {
            rep.witness = Some(Witness::NotInGroup { i });
            return rep;
        }
        rep.witness = (0..d * d).into_par_iter().find_map_first(|p| {
            let (i, j) = (p / d, p % d);
            let g = self.sum(i, j);
            product(i, j)
                .iter()
                .find(|(k, _)| self.degrees[*k] != g)
                .map(|(k, _)| Witness::Product { i, j, k })
        });
        if rep.witness.is_none() {
            if let Some(inv) = invol {
                rep.witness = (0..d).find_map(|i| {
                    inv.column(i)
                        .iter()
                        .find(|(k, _)| self.degrees[*k] != self.degrees[i])
                        .map(|(k, _)| Witness::Involution { i, k })
                });
            }
        }
        rep
    }

    /// Exhaustive verification on an algebra with involution; sets `verified`.
    pub fn verify<F: Scalar>(&mut self, alg: &InvolutiveAlgebra<F>) -> GradingReport {
        assert_eq!(alg.dim(), self.dim(), "degree map must cover the basis");
        let rep = self.check_table(|i, j| alg.mul_basis(i, j).clone(), Some(alg.involution()));
        self.verified = rep.passed();
        rep
    }

    /// Composes the degree map with `hom`. A coarsening of a verified
    /// grading is verified.
    pub fn coarsen(&self, hom: &Hom) -> Result<Grading, GroupError> {
        let degrees = self.degrees.iter().map(|g| hom.apply(g)).collect::<Result<_, _>>()?;
        Ok(Grading { group: hom.codomain().clone(), degrees, verified: self.verified })
    }

    pub fn support(&self) -> BTreeSet<GroupElt> {
        self.degrees.iter().cloned().collect()
    }

    /// Dimension of each component; for a finite group every element is
    /// listed, including those with zero component.
    pub fn component_dims(&self) -> BTreeMap<GroupElt, usize> {
        let mut out: BTreeMap<GroupElt, usize> = BTreeMap::new();
        if let Ok(all) = self.group.elements() {
            for g in all {
                out.insert(g, 0);
            }
        }
        for g in &self.degrees {
            *out.entry(g.clone()).or_default() += 1;
        }
        out
    }

    pub fn component(&self, g: &GroupElt) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.degrees[i] == g).collect()
    }

    /// All nonzero components are one-dimensional, which rules out proper
    /// refinements.
    pub fn is_fine_dim1(&self) -> bool {
        self.component_dims().values().all(|&d| d <= 1)
    }

    pub fn fingerprint(&self, g0: Option<&GroupElt>) -> Fingerprint {
        let mut dims: Vec<usize> = self.component_dims().into_values().collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        let support = self.support();
        let mut support_orders: Vec<u64> =
            support.iter().map(|g| self.group.order_of(g).unwrap_or(0)).collect();
        support_orders.sort_unstable();
        Fingerprint {
            dims,
            support_size: support.len(),
            support_orders,
            g0_order: g0.map(|g| self.group.order_of(g).unwrap_or(0)),
        }
    }

    pub fn to_json(&self, g0: Option<&GroupElt>) -> GradingJson {
        GradingJson {
            schema: "grading/v1".into(),
            group: self.group.clone(),
            degrees: self.degrees.clone(),
            g0: g0.cloned(),
            verified: self.verified,
            fingerprint: self.fingerprint(g0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingJson {
    pub schema: String,
    pub group: AbelianGroup,
    pub degrees: Vec<GroupElt>,
    pub g0: Option<GroupElt>,
    pub verified: bool,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, thiserror::Error)]
pub enum SubalgebraError {
    #[error("grading must be verified first")]
    Unverified,
    #[error("the subgroup generated is not finite")]
    Infinite,
    #[error("span is not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Elements of the subgroup generated by `gens` in a finite group.
pub fn subgroup(group: &AbelianGroup, gens: &[GroupElt]) -> Result<BTreeSet<GroupElt>, SubalgebraError> {
    if !group.is_finite() {
        return Err(SubalgebraError::Infinite);
    }
    let mut set = BTreeSet::from([group.zero()]);
    let mut frontier = vec![group.zero()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = group.add(&x, g)?;
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(set)
}

/// The subalgebra `⊕_{h ∈ H} A_h` for the subgroup `H` generated by `gens`,
/// with the restricted grading. Basis indices of the result follow their
/// order in `alg`; the map back is returned as well.
pub fn graded_subalgebra<F: Scalar>(
    alg: &InvolutiveAlgebra<F>,
    grading: &Grading,
    gens: &[GroupElt],
) -> Result<(InvolutiveAlgebra<F>, Grading, Vec<usize>), SubalgebraError> {
    if !grading.verified {
        return Err(SubalgebraError::Unverified);
    }
    let h = subgroup(&grading.group, gens)?;
    let idx: Vec<usize> = (0..alg.dim()).filter(|&i| h.contains(&grading.degrees[i])).collect();
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(n, &i)| (i, n)).collect();
    let restrict = |v: &SparseVec<F>, what: &str| -> Result<SparseVec<F>, SubalgebraError> {
        let mut pairs = Vec::with_capacity(v.nnz());
        for (k, c) in v.iter() {
            let n = pos.get(&k).ok_or_else(|| SubalgebraError::NotClosed(format!("{what} leaves the span at {}", alg.label(k))))?;
            pairs.push((*n, c.clone()));
        }
        Ok(SparseVec::from_pairs(pairs))
    };
    let m = idx.len();
    let mut table = Vec::with_capacity(m * m);
    for &i in &idx {
        for &j in &idx {
            table.push(restrict(alg.mul_basis(i, j), &format!("{}·{}", alg.label(i), alg.label(j)))?);
        }
    }
    let invol = Operator::from_columns(
        idx.iter().map(|&i| restrict(alg.involution().column(i), "involution")).collect::<Result<_, _>>()?,
    );
    let unit = restrict(alg.unit(), "unit")?;
    let labels = idx.iter().map(|&i| alg.label(i).to_string()).collect();
    let sub = InvolutiveAlgebra::new(labels, table, invol, unit);
    let g = Grading {
        group: grading.group.clone(),
        degrees: idx.iter().map(|&i| grading.degrees[i].clone()).collect(),
        verified: true,
    };
    Ok((sub, g, idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{build_split_octonions, oct_degree, to_group};
    use crate::exactnum::GaussRat;

    fn octonion_grading() -> (InvolutiveAlgebra<GaussRat>, Grading) {
        let c = build_split_octonions::<GaussRat>();
        let g = Grading::new(AbelianGroup::z2_cubed(), (0..8).map(|k| to_group(oct_degree(k))).collect());
        (c.alg, g)
    }

    #[test]
    fn octonion_z2_cubed() {
        let (alg, mut g) = octonion_grading();
        assert!(g.verify(&alg).passed());
        assert!(g.is_fine_dim1());
        assert_eq!(g.fingerprint(None).support_size, 8);
        let mut t = Grading::trivial(AbelianGroup::z2_cubed(), 8);
        assert!(t.verify(&alg).passed());
        assert_eq!(t.component_dims()[&t.group.zero()], 8);
    }

    #[test]
    fn misassigned_degree_fails() {
        let (alg, mut g) = octonion_grading();
        g.degrees.swap(1, 2);
        let rep = g.verify(&alg);
        assert!(matches!(rep.witness, Some(Witness::Product { .. })));
        assert!(!g.verified);
    }

    #[test]
    fn coarsen_and_subalgebra() {
        let (alg, mut g) = octonion_grading();
        g.verify(&alg);
        let id = Hom::identity(&g.group);
        assert_eq!(g.coarsen(&id).unwrap(), g);
        // project onto the g0 bit
        let z2 = AbelianGroup::torsion_only(&[2]);
        let p = Hom::new(g.group.clone(), z2, vec![vec![0, 0, 1]]).unwrap();
        let c = g.coarsen(&p).unwrap();
        assert_eq!(c.component_dims().values().copied().collect::<Vec<_>>(), vec![4, 4]);
        let (q, qg, idx) = graded_subalgebra(&alg, &g, &[to_group(crate::composition::A1), to_group(crate::composition::A2)]).unwrap();
        assert_eq!(q.dim(), 4);
        assert_eq!(idx, vec![0, 1, 2, 3]);
        assert!(qg.is_fine_dim1());
        q.validate().unwrap();
    }
}
