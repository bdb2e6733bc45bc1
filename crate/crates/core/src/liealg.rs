//! Lie algebras attached to a graded structurable algebra: the derivation
//! algebra, the structure algebra `Der ⊕ T_A` and the Kantor algebra
//! `ñ ⊕ str ⊕ n`, with Jacobi, Killing-form and center certificates.
//!
//! Everything is computed in a homogeneous basis of the algebra, so the
//! operators `D_{x,y}`, `V_{x,y}`, `T_x` on basis elements are homogeneous and
//! every bracket lands in one small graded component.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{add, InvolutiveAlgebra};
use crate::exactnum::Scalar;
use crate::grading_groups::{AbelianGroup, GroupElt};
use crate::gradings::{Grading, GradingReport};
use crate::linalg::{joint_kernel, rank_of, Operator, SparseVec, SpanBasis};
use crate::sample;
use crate::structurable::{d_op, t_op, v_op};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("operator of degree {0} lies outside the computed span")]
    NotInSpan(String),
    #[error("operator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("dimension mismatch: {what} is {got}, expected {want}")]
    Dimension { what: String, got: usize, want: usize },
    #[error("value outside the skew line: {0}")]
    NotSkew(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JacobiMode {
    Full,
    Sampled { n: usize, seed: u64 },
}

impl std::str::FromStr for JacobiMode {
    type Err = String;

    /// `full` or `sampled:N` (seed 0; use [`JacobiMode::with_seed`]).
    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "full" => Ok(JacobiMode::Full),
            Some(("sampled", n)) => {
                n.parse().map(|n| JacobiMode::Sampled { n, seed: 0 }).map_err(|_| format!("bad sample count {n:?}"))
            }
            _ => Err(format!("expected full or sampled:N, got {s:?}")),
        }
    }
}

impl JacobiMode {
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            JacobiMode::Sampled { n, .. } => JacobiMode::Sampled { n, seed },
            m => m,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobiReport {
    pub mode: JacobiMode,
    pub triples_checked: usize,
    pub witness: Option<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Certificates {
    pub jacobi: Option<JacobiReport>,
    pub killing_rank: Option<usize>,
    pub center_dim: Option<usize>,
}

/// Structure constants of a Lie algebra on a fixed basis.
#[derive(Debug, Clone)]
pub struct LieTable<F> {
    labels: Vec<String>,
    /// `[e_i, e_j]` at `i·dim + j`.
    brackets: Vec<SparseVec<F>>,
    pub grading: Option<Grading>,
    pub certificates: Certificates,
}

impl<F: Scalar> LieTable<F> {
    /// Builds the table from `bracket(i, j)` for `i < j`; the rest follows by
    /// antisymmetry.
    pub fn from_upper<E>(
        labels: Vec<String>,
        bracket: impl Fn(usize, usize) -> Result<SparseVec<F>, E> + Sync,
    ) -> Result<Self, E>
    where
        E: Send,
    {
        let d = labels.len();
        let upper: Vec<SparseVec<F>> =
            (0..d * d).into_par_iter().map(|p| if p / d < p % d { bracket(p / d, p % d) } else { Ok(SparseVec::new()) }).collect::<Result<_, E>>()?;
        let mut brackets = upper;
        for i in 0..d {
            for j in 0..i {
                brackets[i * d + j] = brackets[j * d + i].neg();
            }
        }
        Ok(LieTable { labels, brackets, grading: None, certificates: Certificates::default() })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.brackets[i * self.dim() + j]
    }

    pub fn bracket(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&x.mul_ref(y), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// `[v, e_k]` for a combination `v`.
    fn bracket_left(&self, v: &SparseVec<F>, k: usize) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, x) in v.iter() {
            out.add_scaled(x, self.bracket_basis(i, k));
        }
        out
    }

    /// Replaces one structure constant, breaking antisymmetry on purpose
    /// only if the caller does so; used for negative controls.
    pub fn with_bracket(&self, i: usize, j: usize, v: SparseVec<F>) -> Self {
        let mut t = self.clone();
        let d = self.dim();
        t.brackets[j * d + i] = v.neg();
        t.brackets[i * d + j] = v;
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| self.bracket_basis(i, i).is_zero() && (0..i).all(|j| *self.bracket_basis(i, j) == self.bracket_basis(j, i).neg()))
    }

    /// `ad e_i` as an operator: column `k` is `[e_i, e_k]`.
    pub fn ad(&self, i: usize) -> Operator<F> {
        Operator::from_fn(self.dim(), |k| self.bracket_basis(i, k).clone())
    }

    pub fn ad_of(&self, v: &SparseVec<F>) -> Operator<F> {
        Operator::from_fn(self.dim(), |k| self.bracket_left(v, k))
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec<F> {
        let mut s = self.bracket_left(self.bracket_basis(i, j), k);
        s.add_scaled(&F::one(), &self.bracket_left(self.bracket_basis(j, k), i));
        s.add_scaled(&F::one(), &self.bracket_left(self.bracket_basis(k, i), j));
        s
    }

    /// Exact Jacobi identity on all basis triples `i < j < k`, or on `n`
    /// seeded random basis triples. The witness is the first failure in
    /// index order (full) or sample order (sampled).
    pub fn jacobi_check(&self, mode: JacobiMode) -> JacobiReport {
        let d = self.dim();
        match mode {
            JacobiMode::Full => {
                let witness = (0..d).into_par_iter().find_map_first(|i| {
                    (i + 1..d).find_map(|j| {
                        (j + 1..d).find_map(|k| (!self.jacobiator(i, j, k).is_zero()).then_some((i, j, k)))
                    })
                });
                let triples_checked = d * d.saturating_sub(1) * d.saturating_sub(2) / 6;
                JacobiReport { mode, triples_checked, witness }
            }
            JacobiMode::Sampled { n, seed } => {
                let witness = (0..n).into_par_iter().find_map_first(|t| {
                    let mut rng = sample::trial_rng(seed, t as u64);
                    let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                    (!self.jacobiator(i, j, k).is_zero()).then_some((i, j, k))
                });
                JacobiReport { mode, triples_checked: n, witness }
            }
        }
    }

    /// Runs the Jacobi check and records it.
    pub fn certify_jacobi(&mut self, mode: JacobiMode) -> bool {
        let r = self.jacobi_check(mode);
        let ok = r.passed();
        self.certificates.jacobi = Some(r);
        ok
    }

    /// `κ(e_a, e_b) = tr(ad e_a ∘ ad e_b)`, computed exactly. With a verified
    /// grading only pairs of opposite degree are evaluated; the rest vanish.
    pub fn killing_gram(&self) -> Vec<Vec<F>> {
        let d = self.dim();
        let opposite = |a: usize, b: usize| match &self.grading {
            Some(g) if g.verified => g.group.is_zero(&g.group.add(&g.degrees[a], &g.degrees[b]).expect("degrees")),
            _ => true,
        };
        (0..d)
            .into_par_iter()
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let mut t = F::zero();
                        if !opposite(a, b) {
                            return t;
                        }
                        for k in 0..d {
                            // coefficient of e_k in [e_a, [e_b, e_k]]
                            for (m, c) in self.bracket_basis(b, k).iter() {
                                let x = self.bracket_basis(a, m).get(k);
                                t.add_mul(c, &x);
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect()
    }

    pub fn killing_rank(&self) -> usize {
        rank_of(self.killing_gram().iter().map(|r| SparseVec::from_dense(r)))
    }

    /// Basis of the center, the common kernel of all `ad e_k`.
    pub fn center(&self) -> Vec<SparseVec<F>> {
        let ads: Vec<Operator<F>> = (0..self.dim()).map(|k| self.ad(k)).collect();
        let refs: Vec<&Operator<F>> = ads.iter().collect();
        joint_kernel(&refs, &[], self.dim())
    }

    pub fn derived_dim(&self) -> usize {
        rank_of(self.brackets.iter().filter(|v| !v.is_zero()).cloned())
    }

    /// Records Killing rank and center dimension.
    pub fn certify_killing_and_center(&mut self) -> (usize, usize) {
        let (k, c) = (self.killing_rank(), self.center().len());
        self.certificates.killing_rank = Some(k);
        self.certificates.center_dim = Some(c);
        (k, c)
    }

    /// Every bracket of basis elements is homogeneous of the summed degree.
    pub fn verify_grading(&mut self) -> Option<GradingReport> {
        let g = self.grading.as_ref()?;
        let rep = g.check_table(|i, j| self.bracket_basis(i, j).clone(), None);
        if let Some(g) = self.grading.as_mut() {
            g.verified = rep.passed();
        }
        Some(rep)
    }

    /// `ad[x,y] = [ad x, ad y]` on seeded random sparse combinations.
    pub fn check_ad_homomorphism(&self, trials: usize, seed: u64) -> Result<(), usize> {
        (0..trials)
            .into_par_iter()
            .find_map_first(|t| {
                let mut rng = sample::trial_rng(seed, t as u64);
                let x = self.random_element(&mut rng, 3);
                let y = self.random_element(&mut rng, 3);
                let lhs = self.ad_of(&self.bracket(&x, &y));
                let rhs = self.ad_of(&x).commutator(&self.ad_of(&y));
                (lhs != rhs).then_some(t)
            })
            .map_or(Ok(()), Err)
    }

    /// `κ([x,y],z) = κ(x,[y,z])` on seeded random sparse combinations.
    pub fn check_killing_invariance(&self, gram: &[Vec<F>], trials: usize, seed: u64) -> Result<(), usize> {
        let form = |a: &SparseVec<F>, b: &SparseVec<F>| {
            let mut t = F::zero();
            for (i, x) in a.iter() {
                for (j, y) in b.iter() {
                    t.add_mul(&x.mul_ref(y), &gram[i][j]);
                }
            }
            t
        };
        (0..trials)
            .find(|&t| {
                let mut rng = sample::trial_rng(seed, t as u64);
                let [x, y, z]: [SparseVec<F>; 3] = std::array::from_fn(|_| self.random_element(&mut rng, 4));
                form(&self.bracket(&x, &y), &z) != form(&x, &self.bracket(&y, &z))
            })
            .map_or(Ok(()), Err)
    }

    /// A combination of `terms` random basis elements with small Gaussian
    /// integer coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R, terms: usize) -> SparseVec<F> {
        let mut v = SparseVec::new();
        for _ in 0..terms {
            let i = rng.gen_range(0..self.dim());
            v.add_scaled(&sample::nonzero_scalar(rng), &SparseVec::unit(i));
        }
        v
    }

    pub fn to_json(&self) -> LieJson {
        let d = self.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v = self.bracket_basis(i, j);
                if !v.is_zero() {
                    brackets.push(BracketJson {
                        i,
                        j,
                        terms: v.iter().map(|(k, c)| (k, c.to_gauss().to_text())).collect(),
                    });
                }
            }
        }
        LieJson {
            schema: "lie/v1".into(),
            dim: d,
            labels: self.labels.clone(),
            brackets,
            degrees: self.grading.as_ref().map(|g| DegreesJson {
                group: g.group.clone(),
                degrees: g.degrees.clone(),
                verified: g.verified,
            }),
            certificates: self.certificates.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreesJson {
    pub group: AbelianGroup,
    pub degrees: Vec<GroupElt>,
    pub verified: bool,
}

/// The "lie/v1" document. Upper-triangular brackets only.
#[derive(Debug, Clone, Serialize)]
pub struct LieJson {
    pub schema: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketJson>,
    pub degrees: Option<DegreesJson>,
    pub certificates: Certificates,
}

/// Degree of each entry of an operator on an algebra with a basis-diagonal
/// grading: entry `(i, j)` has degree `deg e_i − deg e_j`.
pub fn split_by_degree<F: Scalar>(op: &Operator<F>, grading: &Grading) -> BTreeMap<GroupElt, Operator<F>> {
    let g = &grading.group;
    let d = op.dim();
    let mut parts: BTreeMap<GroupElt, Vec<Vec<(usize, F)>>> = BTreeMap::new();
    for j in 0..d {
        for (i, c) in op.column(j).iter() {
            let deg = g.sub(&grading.degrees[i], &grading.degrees[j]).expect("degrees");
            parts.entry(deg).or_insert_with(|| vec![Vec::new(); d])[j].push((i, c.clone()));
        }
    }
    parts
        .into_iter()
        .map(|(deg, cols)| (deg, Operator::from_columns(cols.into_iter().map(SparseVec::from_pairs).collect())))
        .collect()
}

/// The degree of a homogeneous nonzero operator.
pub fn operator_degree<F: Scalar>(op: &Operator<F>, grading: &Grading) -> Result<Option<GroupElt>, LieError> {
    let parts = split_by_degree(op, grading);
    match parts.len() {
        0 => Ok(None),
        1 => Ok(parts.into_keys().next()),
        _ => Err(LieError::NotHomogeneous(parts.keys().map(|g| g.to_string()).collect::<Vec<_>>().join(" + "))),
    }
}

/// A basis of homogeneous operators on a graded algebra, with a per-degree
/// echelon form for re-expressing arbitrary operators in it.
#[derive(Debug, Clone)]
pub struct OperatorBasis<F> {
    pub ops: Vec<Operator<F>>,
    /// Operator degree in the algebra's grading group.
    pub op_degrees: Vec<GroupElt>,
    spans: BTreeMap<GroupElt, (SpanBasis<F>, Vec<usize>)>,
}

impl<F: Scalar> Default for OperatorBasis<F> {
    fn default() -> Self {
        OperatorBasis { ops: Vec::new(), op_degrees: Vec::new(), spans: BTreeMap::new() }
    }
}

impl<F: Scalar> OperatorBasis<F> {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Adds a homogeneous operator of degree `deg` if it is independent of
    /// the current span; returns whether it was added.
    pub fn push(&mut self, op: Operator<F>, deg: GroupElt) -> bool {
        let (span, idx) = self.spans.entry(deg.clone()).or_insert_with(|| (SpanBasis::new(), Vec::new()));
        if !span.insert(op.to_vec()) {
            return false;
        }
        idx.push(self.ops.len());
        self.ops.push(op);
        self.op_degrees.push(deg);
        true
    }

    /// Coordinates of `op` in the basis, decomposing it by degree first.
    pub fn coords(&self, op: &Operator<F>, grading: &Grading) -> Result<SparseVec<F>, LieError> {
        let mut out = SparseVec::new();
        for (deg, part) in split_by_degree(op, grading) {
            let (span, idx) = self.spans.get(&deg).ok_or_else(|| LieError::NotInSpan(deg.to_string()))?;
            let c = span.coords(&part.to_vec()).ok_or_else(|| LieError::NotInSpan(deg.to_string()))?;
            out.add_scaled(&F::one(), &c.map_indices(|k| idx[k]));
        }
        Ok(out)
    }

    pub fn contains(&self, op: &Operator<F>, grading: &Grading) -> bool {
        self.coords(op, grading).is_ok()
    }

    pub fn combination(&self, c: &SparseVec<F>) -> Operator<F> {
        let d = self.ops.first().map_or(0, Operator::dim);
        let mut acc = Operator::zero(d);
        for (k, x) in c.iter() {
            acc = acc.lin_comb(x, &self.ops[k]);
        }
        acc
    }

    /// Lie table of the span under commutators; fails if it is not closed.
    pub fn commutator_table(&self, labels: Vec<String>, grading: &Grading) -> Result<LieTable<F>, LieError> {
        LieTable::from_upper(labels, |i, j| self.coords(&self.ops[i].commutator(&self.ops[j]), grading))
    }
}

/// All `f(x)` for `x` in the basis, run in parallel and returned in pair
/// order `(i, j)`.
fn pair_ops<F: Scalar>(
    alg: &InvolutiveAlgebra<F>,
    f: impl Fn(&[F], &[F]) -> Operator<F> + Sync,
) -> Vec<Operator<F>> {
    let d = alg.dim();
    (0..d * d).into_par_iter().map(|p| f(&alg.basis(p / d), &alg.basis(p % d))).collect()
}

pub struct DerivationAlgebra<F> {
    pub basis: OperatorBasis<F>,
    pub table: LieTable<F>,
    /// Generating pair `(i, j)` of each basis element `D_{e_i, e_j}`.
    pub pairs: Vec<(usize, usize)>,
    /// Number of `D_{e_i,e_j}` checked to be homogeneous of degree
    /// `deg e_i + deg e_j` (all pairs).
    pub homogeneous_pairs: usize,
}

/// `Der(A, ‾)` as the span of `D_{x,y}` over basis pairs. Pairs are scanned
/// in index order and a `D` is kept when it is independent of the ones
/// before it, so the basis is homogeneous and reproducible.
pub fn derivation_algebra<F: Scalar>(alg: &InvolutiveAlgebra<F>, grading: &Grading) -> Result<DerivationAlgebra<F>, LieError> {
    let d = alg.dim();
    let ops = pair_ops(alg, |x, y| d_op(alg, x, y));
    let mut basis = OperatorBasis::default();
    let mut pairs = Vec::new();
    for (p, op) in ops.into_iter().enumerate() {
        let (i, j) = (p / d, p % d);
        let want = grading.group.add(&grading.degrees[i], &grading.degrees[j]).expect("degrees");
        match operator_degree(&op, grading)? {
            None => continue,
            Some(g) if g != want => {
                return Err(LieError::NotHomogeneous(format!("D[{},{}] has degree {g}, not {want}", alg.label(i), alg.label(j))))
            }
            Some(g) => {
                if basis.push(op, g) {
                    pairs.push((i, j));
                }
            }
        }
    }
    let labels = pairs.iter().map(|&(i, j)| format!("D[{},{}]", alg.label(i), alg.label(j))).collect();
    let mut table = basis.commutator_table(labels, grading)?;
    table.grading = Some(Grading::new(grading.group.clone(), basis.op_degrees.clone()));
    Ok(DerivationAlgebra { basis, table, pairs, homogeneous_pairs: d * d })
}

impl<F: Scalar> DerivationAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Every basis derivation kills the skew elements `ks`.
    pub fn kills(&self, ks: &[Vec<F>]) -> bool {
        self.basis.ops.iter().all(|op| ks.iter().all(|s| op.apply(s).iter().all(|c| c.is_zero())))
    }

    /// `D(ab) = D(a)b + aD(b)` for random combinations `D` of the basis and
    /// random `a, b`.
    pub fn check_leibniz(&self, alg: &InvolutiveAlgebra<F>, trials: usize, seed: u64) -> Result<(), usize> {
        (0..trials)
            .into_par_iter()
            .find_map_first(|t| {
                let mut rng = sample::trial_rng(seed, t as u64);
                let c = SparseVec::from_dense(&sample::vector::<F, _>(&mut rng, self.dim()));
                let op = self.basis.combination(&c);
                let a = sample::vector(&mut rng, alg.dim());
                let b = sample::vector(&mut rng, alg.dim());
                let lhs = op.apply(&alg.mul(&a, &b));
                let rhs = add(&alg.mul(&op.apply(&a), &b), &alg.mul(&a, &op.apply(&b)));
                (lhs != rhs).then_some(t)
            })
            .map_or(Ok(()), Err)
    }
}

pub struct StructureAlgebra<F> {
    /// The derivation basis followed by `T_{e_k}` for every basis element.
    pub basis: OperatorBasis<F>,
    pub table: LieTable<F>,
    pub der_dim: usize,
    /// `ℤ2`-degree of each basis element: `T_x` is odd for symmetric `x`.
    pub parity: Vec<u32>,
}

/// Whether basis element `k` is skew under the involution (it is either
/// symmetric or skew in a homogeneous basis of the Brown algebra).
fn is_skew<F: Scalar>(alg: &InvolutiveAlgebra<F>, k: usize) -> Result<bool, LieError> {
    let img = alg.involution().column(k);
    let e = SparseVec::unit(k);
    if *img == e {
        Ok(false)
    } else if *img == e.neg() {
        Ok(true)
    } else {
        Err(LieError::NotSkew(format!("basis element {} is neither symmetric nor skew", alg.label(k))))
    }
}

/// `str(A, ‾) = Der(A, ‾) ⊕ T_A` with the `ℤ2 × G` grading
/// `deg T_x = (1̄ if x ∈ H else 0̄, deg x)`.
pub fn structure_algebra<F: Scalar>(
    alg: &InvolutiveAlgebra<F>,
    grading: &Grading,
    der: &DerivationAlgebra<F>,
) -> Result<StructureAlgebra<F>, LieError> {
    let d = alg.dim();
    let mut basis = der.basis.clone();
    let mut labels: Vec<String> = der.table.labels().to_vec();
    let mut parity = vec![0; der.dim()];
    let ts: Vec<Operator<F>> = (0..d).into_par_iter().map(|k| t_op(alg, &alg.basis(k))).collect();
    for (k, t) in ts.into_iter().enumerate() {
        let deg = operator_degree(&t, grading)?.ok_or_else(|| LieError::NotHomogeneous(format!("T[{}] = 0", alg.label(k))))?;
        if deg != grading.degrees[k] {
            return Err(LieError::NotHomogeneous(format!("T[{}] has degree {deg}", alg.label(k))));
        }
        if !basis.push(t, deg) {
            return Err(LieError::Dimension { what: "Der ⊕ T_A".into(), got: basis.len(), want: der.dim() + d });
        }
        labels.push(format!("T[{}]", alg.label(k)));
        parity.push(if is_skew(alg, k)? { 0 } else { 1 });
    }
    let mut table = basis.commutator_table(labels, grading)?;
    let mut torsion = vec![2];
    torsion.extend(&grading.group.torsion);
    let group = AbelianGroup::new(grading.group.free_rank, torsion).expect("orders ≥ 2");
    let degrees = basis
        .op_degrees
        .iter()
        .zip(&parity)
        .map(|(g, &p)| {
            let mut t = vec![p];
            t.extend(&g.torsion);
            GroupElt { free: g.free.clone(), torsion: t }
        })
        .collect();
    table.grading = Some(Grading::new(group, degrees));
    Ok(StructureAlgebra { der_dim: der.dim(), basis, table, parity })
}

impl<F: Scalar> StructureAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimensions of the even and odd parts.
    pub fn parity_dims(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|&&p| p == 1).count();
        (self.parity.len() - odd, odd)
    }

    /// Whether every `V_{x,y}` over basis pairs lies in the span, and the
    /// rank of the `V`s (the inner structure algebra).
    pub fn inner_structure(&self, alg: &InvolutiveAlgebra<F>, grading: &Grading) -> (bool, usize) {
        let vs = pair_ops(alg, |x, y| v_op(alg, x, y));
        let inside = vs.par_iter().all(|v| self.basis.contains(v, grading));
        (inside, rank_of(vs.iter().map(Operator::to_vec)))
    }
}

/// Layout of the Kantor algebra basis: `ñ_{−2}`, `ñ_{−1}`, `str`, `n_1`, `n_2`.
#[derive(Debug, Clone, Copy)]
pub struct KantorLayout {
    pub alg_dim: usize,
    pub str_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KantorPiece {
    /// `(0, s)~`
    TildeSkew,
    /// `(e_k, 0)~`
    Tilde(usize),
    Str(usize),
    /// `(e_k, 0)`
    Plain(usize),
    /// `(0, s)`
    Skew,
}

impl KantorLayout {
    pub fn dim(&self) -> usize {
        2 * self.alg_dim + self.str_dim + 2
    }

    pub fn piece(&self, i: usize) -> KantorPiece {
        let (n, s) = (self.alg_dim, self.str_dim);
        match i {
            0 => KantorPiece::TildeSkew,
            i if i <= n => KantorPiece::Tilde(i - 1),
            i if i <= n + s => KantorPiece::Str(i - 1 - n),
            i if i <= 2 * n + s => KantorPiece::Plain(i - 1 - n - s),
            _ => KantorPiece::Skew,
        }
    }

    pub fn index(&self, p: KantorPiece) -> usize {
        let (n, s) = (self.alg_dim, self.str_dim);
        match p {
            KantorPiece::TildeSkew => 0,
            KantorPiece::Tilde(k) => 1 + k,
            KantorPiece::Str(k) => 1 + n + k,
            KantorPiece::Plain(k) => 1 + n + s + k,
            KantorPiece::Skew => 2 * n + s + 1,
        }
    }

    pub fn z_degree(&self, i: usize) -> i64 {
        match self.piece(i) {
            KantorPiece::TildeSkew => -2,
            KantorPiece::Tilde(_) => -1,
            KantorPiece::Str(_) => 0,
            KantorPiece::Plain(_) => 1,
            KantorPiece::Skew => 2,
        }
    }
}

pub struct KantorAlgebra<F> {
    pub layout: KantorLayout,
    pub table: LieTable<F>,
}

impl<F: Scalar> KantorAlgebra<F> {
    /// Dimensions of the pieces of degree −2..2.
    pub fn piece_dims(&self) -> [usize; 5] {
        let mut out = [0; 5];
        for i in 0..self.layout.dim() {
            out[(self.layout.z_degree(i) + 2) as usize] += 1;
        }
        out
    }
}

/// `kan(A, ‾) = ñ ⊕ str ⊕ n` with `n = A × K`, for an algebra whose skew
/// elements are the span of the basis element `skew`.
///
/// Brackets, with `f^ε = f − T_{f(1)+\overline{f(1)}}` and
/// `f^δ = f + R_{\overline{f(1)}}`:
/// `[f, (x,s)] = (f(x), f^δ(s))`, `[f, (x,s)~] = (f^ε(x), f^{εδ}(s))~`,
/// `[(x,r),(y,s)] = (0, xȳ − yx̄)`, the same on `ñ`, and
/// `[(x,r),(y,s)~] = −(sx,0)~ + V_{x,y} + L_rL_s + (ry,0)`;
/// `str` brackets by commutators, everything else by antisymmetry.
pub fn kantor_algebra<F: Scalar>(
    alg: &InvolutiveAlgebra<F>,
    grading: &Grading,
    st: &StructureAlgebra<F>,
    skew: usize,
) -> Result<KantorAlgebra<F>, LieError> {
    let n = alg.dim();
    let lay = KantorLayout { alg_dim: n, str_dim: st.dim() };
    let one = alg.unit_dense();
    let s_vec = alg.basis(skew);
    // coefficient of a value that must lie in K = span{skew}
    let skew_coeff = |v: &[F], what: &str| -> Result<F, LieError> {
        if v.iter().enumerate().any(|(k, c)| k != skew && !c.is_zero()) {
            return Err(LieError::NotSkew(what.into()));
        }
        Ok(v[skew].clone())
    };
    let str_coords = |op: &Operator<F>| st.basis.coords(op, grading).map(|c| c.map_indices(|k| lay.index(KantorPiece::Str(k))));
    let mul_s = |v: &[F]| SparseVec::from_dense(&alg.mul(&s_vec, v));
    let in_piece = |v: &SparseVec<F>, p: fn(usize) -> KantorPiece| v.map_indices(|k| lay.index(p(k)));

    // per str basis element: f^ε as an operator, f^δ(s) and f^{εδ}(s)
    struct Actions<F> {
        eps: Operator<F>,
        delta_s: F,
        eps_delta_s: F,
    }
    let actions: Vec<Actions<F>> = st
        .basis
        .ops
        .par_iter()
        .enumerate()
        .map(|(a, f)| {
            let f1 = f.apply(&one);
            let t = t_op(alg, &add(&f1, &alg.bar(&f1)));
            let eps = f.sub(&t);
            let delta = |g: &Operator<F>, g1: &[F]| add(&g.apply(&s_vec), &alg.mul(&s_vec, &alg.bar(g1)));
            let delta_s = skew_coeff(&delta(f, &f1), &format!("f^δ(s) for {}", st.table.labels()[a]))?;
            let e1 = eps.apply(&one);
            let eps_delta_s = skew_coeff(&delta(&eps, &e1), &format!("f^εδ(s) for {}", st.table.labels()[a]))?;
            Ok(Actions { eps, delta_s, eps_delta_s })
        })
        .collect::<Result<_, LieError>>()?;
    let skew_part = |x: &[F], y: &[F]| -> Result<F, LieError> {
        let v = crate::algebra::sub(&alg.mul(x, &alg.bar(y)), &alg.mul(y, &alg.bar(x)));
        skew_coeff(&v, "xȳ − yx̄")
    };
    let ls = alg.left_op(&s_vec);
    let lsls = ls.compose(&ls);

    use KantorPiece::*;
    let bracket = |i: usize, j: usize| -> Result<SparseVec<F>, LieError> {
        let r = match (lay.piece(i), lay.piece(j)) {
            (TildeSkew, Tilde(_)) | (Plain(_), Skew) => SparseVec::new(),
            (TildeSkew, Str(a)) => SparseVec::single(lay.index(TildeSkew), -actions[a].eps_delta_s.clone()),
            // −[(y,0),(0,s)~] = (sy,0)~
            (TildeSkew, Plain(k)) => in_piece(&mul_s(&alg.basis(k)), Tilde),
            (TildeSkew, Skew) => str_coords(&lsls)?.neg(),
            (Tilde(k), Tilde(l)) => SparseVec::single(lay.index(TildeSkew), skew_part(&alg.basis(k), &alg.basis(l))?),
            (Tilde(k), Str(a)) => in_piece(actions[a].eps.column(k), Tilde).neg(),
            (Tilde(k), Plain(l)) => str_coords(&v_op(alg, &alg.basis(l), &alg.basis(k)))?.neg(),
            (Tilde(k), Skew) => in_piece(&mul_s(&alg.basis(k)), Plain).neg(),
            (Str(a), Str(b)) => st.table.bracket_basis(a, b).map_indices(|k| lay.index(Str(k))),
            (Str(a), Plain(k)) => in_piece(st.basis.ops[a].column(k), Plain),
            (Str(a), Skew) => SparseVec::single(lay.index(Skew), actions[a].delta_s.clone()),
            (Plain(k), Plain(l)) => SparseVec::single(lay.index(Skew), skew_part(&alg.basis(k), &alg.basis(l))?),
            (p, q) => unreachable!("{p:?} before {q:?} in the layout"),
        };
        Ok(r)
    };
    let labels = (0..lay.dim())
        .map(|i| match lay.piece(i) {
            TildeSkew => format!("~(0,{})", alg.label(skew)),
            Tilde(k) => format!("~({})", alg.label(k)),
            Str(a) => st.table.labels()[a].clone(),
            Plain(k) => format!("({})", alg.label(k)),
            Skew => format!("(0,{})", alg.label(skew)),
        })
        .collect();
    let mut table = LieTable::from_upper(labels, bracket)?;

    let group = AbelianGroup::new(grading.group.free_rank + 1, grading.group.torsion.clone()).expect("orders ≥ 2");
    let s_deg = &grading.degrees[skew];
    let degrees = (0..lay.dim())
        .map(|i| {
            let g = match lay.piece(i) {
                TildeSkew | Skew => s_deg,
                Tilde(k) | Plain(k) => &grading.degrees[k],
                Str(a) => &st.basis.op_degrees[a],
            };
            let mut free = vec![lay.z_degree(i)];
            free.extend(&g.free);
            GroupElt { free, torsion: g.torsion.clone() }
        })
        .collect();
    table.grading = Some(Grading::new(group, degrees));
    Ok(KantorAlgebra { layout: lay, table })
}

/// The three algebras for a graded Brown algebra with skew basis element
/// `skew`.
pub struct LieTower<F> {
    pub der: DerivationAlgebra<F>,
    pub str_: StructureAlgebra<F>,
    pub kan: KantorAlgebra<F>,
}

pub fn build_tower<F: Scalar>(alg: &InvolutiveAlgebra<F>, grading: &Grading, skew: usize) -> Result<LieTower<F>, LieError> {
    let der = derivation_algebra(alg, grading)?;
    let str_ = structure_algebra(alg, grading, &der)?;
    let kan = kantor_algebra(alg, grading, &str_, skew)?;
    Ok(LieTower { der, str_, kan })
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::brown::model_b::{build_model_b, BElt, ModelB};
    use crate::exactnum::GaussRat;

    type F = GaussRat;

    fn model() -> &'static ModelB<F> {
        static M: OnceLock<ModelB<F>> = OnceLock::new();
        M.get_or_init(|| build_model_b().unwrap())
    }

    fn tower() -> &'static LieTower<F> {
        static T: OnceLock<LieTower<F>> = OnceLock::new();
        T.get_or_init(|| {
            let m = model();
            build_tower(&m.graded, &m.grading, BElt::S0.index()).unwrap()
        })
    }

    #[test]
    fn jacobi_mode_parsing() {
        assert_eq!("full".parse::<JacobiMode>().unwrap(), JacobiMode::Full);
        assert_eq!("sampled:12".parse::<JacobiMode>().unwrap(), JacobiMode::Sampled { n: 12, seed: 0 });
        assert!("sampled".parse::<JacobiMode>().is_err());
        assert!("sampled:x".parse::<JacobiMode>().is_err());
    }

    #[test]
    fn derivations() {
        let m = model();
        let t = tower();
        assert_eq!(t.der.dim(), 78);
        assert!(t.der.kills(&[m.graded.basis(BElt::S0.index())]));
        t.der.check_leibniz(&m.graded, 50, 0).unwrap();
        let mut table = t.der.table.clone();
        assert!(table.is_antisymmetric());
        assert!(table.verify_grading().unwrap().passed());
        assert!(table.certify_jacobi(JacobiMode::Full));
        assert_eq!(table.killing_rank(), 78);
        assert!(table.center().is_empty());
    }

    #[test]
    fn structure_algebra_dims() {
        let m = model();
        let t = tower();
        assert_eq!(t.str_.dim(), 134);
        assert_eq!(t.str_.parity_dims(), (79, 55));
        let mut table = t.str_.table.clone();
        assert!(table.verify_grading().unwrap().passed());
        let center = table.center();
        assert_eq!(center.len(), 1);
        // the center is spanned by T_1 = id
        assert_eq!(t.str_.basis.combination(&center[0]).scaled(&center[0].get(78).checked_inv().unwrap()), Operator::identity(56));
        assert_eq!(table.derived_dim(), 133);
        assert!(table.jacobi_check(JacobiMode::Sampled { n: 3000, seed: 1 }).passed());
        assert_eq!(t.str_.inner_structure(&m.graded, &m.grading), (true, 134));
    }

    #[test]
    fn kantor_algebra_basics() {
        let t = tower();
        let k = &t.kan;
        assert_eq!(k.table.dim(), 248);
        assert_eq!(k.piece_dims(), [1, 56, 134, 56, 1]);
        let mut table = k.table.clone();
        assert!(table.verify_grading().unwrap().passed());
        assert!(table.jacobi_check(JacobiMode::Sampled { n: 20000, seed: 2 }).passed());
        table.check_ad_homomorphism(20, 3).unwrap();
        // [(1,0),(s0,0)] = (0, 1·s̄0 − s0·1̄) = (0, −2 s0)
        let lay = k.layout;
        let one = lay.index(KantorPiece::Plain(0));
        let s = lay.index(KantorPiece::Plain(BElt::S0.index()));
        assert_eq!(*table.bracket_basis(one, s), SparseVec::single(lay.index(KantorPiece::Skew), F::from_i64(-2)));
    }

    #[test]
    fn corrupted_table_fails_jacobi() {
        let t = &tower().der.table;
        let bad = t.with_bracket(0, 1, t.bracket_basis(0, 1).scaled(&F::from_i64(2)).add(&SparseVec::unit(5)));
        let r = bad.jacobi_check(JacobiMode::Full);
        assert!(!r.passed());
        let (i, j, k) = r.witness.unwrap();
        assert!(i < j && j < k);
    }
}
