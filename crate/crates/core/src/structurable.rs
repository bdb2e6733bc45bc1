//! Structurable-algebra kernel: the operators `V`, `T`, `D`, the structurable
//! identity and skew-alternativity checks, the generalized Cayley–Dickson
//! double, the structurable matrix algebra and the trace form.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{add, cd_double_with, scale, sub, AlgebraError, InvolutiveAlgebra};
use crate::exactnum::Scalar;
use crate::grading_groups::{AbelianGroup, GroupElt};
use crate::jordan::{Albert, JordanTable};
use crate::linalg::{operator_kernel, rank_of, Operator, SparseVec};
use crate::sample;

pub use crate::algebra::InvolutiveAlgebra as Algebra;

/// Bases of the symmetric (`H`) and skew (`K`) eigenspaces of the involution.
pub fn hk_split<F: Scalar>(alg: &InvolutiveAlgebra<F>) -> (Vec<SparseVec<F>>, Vec<SparseVec<F>>) {
    let d = alg.dim();
    let inv = alg.involution();
    let id = Operator::identity(d);
    (operator_kernel(&inv.sub(&id)), operator_kernel(&inv.add(&id)))
}

pub fn skew_dimension<F: Scalar>(alg: &InvolutiveAlgebra<F>) -> usize {
    hk_split(alg).1.len()
}

fn op_from_map<F: Scalar>(alg: &InvolutiveAlgebra<F>, f: impl Fn(&[F]) -> Vec<F>) -> Operator<F> {
    Operator::from_fn(alg.dim(), |j| SparseVec::from_dense(&f(&alg.basis(j))))
}

/// `V_{x,y}(z) = (xȳ)z + (zȳ)x − (zx̄)y`
pub fn v_op<F: Scalar>(alg: &InvolutiveAlgebra<F>, x: &[F], y: &[F]) -> Operator<F> {
    let (xb, yb) = (alg.bar(x), alg.bar(y));
    let xyb = alg.mul(x, &yb);
    op_from_map(alg, |z| {
        let t1 = alg.mul(&xyb, z);
        let t2 = alg.mul(&alg.mul(z, &yb), x);
        let t3 = alg.mul(&alg.mul(z, &xb), y);
        sub(&add(&t1, &t2), &t3)
    })
}

/// `V_{x,y}(z)` for a single `z`.
pub fn v_apply<F: Scalar>(alg: &InvolutiveAlgebra<F>, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
    let (xb, yb) = (alg.bar(x), alg.bar(y));
    let t1 = alg.mul(&alg.mul(x, &yb), z);
    let t2 = alg.mul(&alg.mul(z, &yb), x);
    let t3 = alg.mul(&alg.mul(z, &xb), y);
    sub(&add(&t1, &t2), &t3)
}

/// `T_x = V_{x,1}`
pub fn t_op<F: Scalar>(alg: &InvolutiveAlgebra<F>, x: &[F]) -> Operator<F> {
    v_op(alg, x, &alg.unit_dense())
}

/// `D_{x,y}(z) = ⅓[[x,y] + [x̄,ȳ], z] + (z,y,x) − (z,x̄,ȳ)`
pub fn d_op<F: Scalar>(alg: &InvolutiveAlgebra<F>, x: &[F], y: &[F]) -> Operator<F> {
    let (xb, yb) = (alg.bar(x), alg.bar(y));
    let c = scale(&F::from_ratio(1, 3), &add(&alg.commutator(x, y), &alg.commutator(&xb, &yb)));
    op_from_map(alg, |z| {
        let t1 = alg.commutator(&c, z);
        let t2 = alg.associator(z, y, x);
        let t3 = alg.associator(z, &xb, &yb);
        sub(&add(&t1, &t2), &t3)
    })
}

/// Outcome of the structurable-identity test.
#[derive(Debug, Clone, Default, Serialize)]
pub struct StructurableReport {
    pub seed: u64,
    pub trials: usize,
    pub trial_failures: Vec<String>,
    pub skew_dimension: usize,
    pub skew_alternativity_checked: usize,
    pub skew_alternativity_failures: Vec<String>,
    pub involution: Option<String>,
}

impl StructurableReport {
    pub fn passed(&self) -> bool {
        self.trial_failures.is_empty() && self.skew_alternativity_failures.is_empty() && self.involution.is_none()
    }
}

/// Evaluates `[V_{x,y}, V_{z,w}] = V_{V_{x,y}z, w} − V_{z, V_{y,x}w}` as
/// operators on `trials` seeded random quadruples, and skew-alternativity
/// `(s,x,y) = −(x,s,y) = (x,y,s)` for all basis `x, y` and `s` in a basis of
/// the skew elements.
pub fn check_structurable<F: Scalar>(alg: &InvolutiveAlgebra<F>, trials: usize, seed: u64) -> StructurableReport {
    let d = alg.dim();
    let mut rep = StructurableReport { seed, trials, ..Default::default() };
    rep.involution = alg.validate().err();
    rep.trial_failures = (0..trials)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = sample::trial_rng(seed, k as u64);
            let [x, y, z, w]: [Vec<F>; 4] = std::array::from_fn(|_| sample::vector(&mut rng, d));
            let vxy = v_op(alg, &x, &y);
            let lhs = vxy.commutator(&v_op(alg, &z, &w));
            let vyx_w = v_apply(alg, &y, &x, &w);
            let rhs = v_op(alg, &vxy.apply(&z), &w).sub(&v_op(alg, &z, &vyx_w));
            (lhs != rhs).then(|| format!("trial {k}: structurable identity fails"))
        })
        .collect();
    let (_, k) = hk_split(alg);
    rep.skew_dimension = k.len();
    for s in &k {
        let s = s.to_dense(d);
        let fails: Vec<String> = (0..d * d)
            .into_par_iter()
            .filter_map(|p| {
                let (x, y) = (alg.basis(p / d), alg.basis(p % d));
                let a = alg.associator(&s, &x, &y);
                let b = alg.associator(&x, &s, &y);
                let c = alg.associator(&x, &y, &s);
                let ok = a == scale(&-F::one(), &b) && a == c;
                (!ok).then(|| format!("skew-alternativity fails at ({}, {})", alg.label(p / d), alg.label(p % d)))
            })
            .collect();
        rep.skew_alternativity_checked += d * d;
        rep.skew_alternativity_failures.extend(fails);
    }
    rep
}

/// `CD(B, μ)` for a Jordan algebra with its generic trace; `θ` comes from
/// the trace form.
pub fn cd_double<F: Scalar>(b: &JordanTable<F>, mu: &F) -> Result<InvolutiveAlgebra<F>, AlgebraError> {
    cd_double_with(&b.alg, &b.theta(), mu, "v")
}

/// Results of the `L_v`, `R_v` relations in a Cayley–Dickson double.
pub fn check_double_relations<F: Scalar>(a: &InvolutiveAlgebra<F>, b: &JordanTable<F>, mu: &F) -> Result<(), String> {
    let n = b.dim();
    let v = a.basis(n);
    if a.mul(&v, &v) != scale(mu, &a.unit_dense()) {
        return Err("v² ≠ μ·1".into());
    }
    let lv = a.left_op(&v);
    let rv = a.right_op(&v);
    let mu_id = Operator::scalar(2 * n, mu.clone());
    if lv.compose(&lv) != mu_id || rv.compose(&rv) != mu_id {
        return Err("L_v² or R_v² ≠ μ·id".into());
    }
    let th = b.theta();
    let theta2 = Operator::from_fn(2 * n, |j| {
        if j < n {
            th.column(j).clone()
        } else {
            th.column(j - n).map_indices(|k| k + n)
        }
    });
    if lv.compose(&rv) != theta2.scaled(mu) || rv.compose(&lv) != theta2.scaled(mu) {
        return Err("L_vR_v ≠ μθ".into());
    }
    Ok(())
}

/// Index layout of the structurable matrix algebra on `F ⊕ J ⊕ J' ⊕ F`.
pub mod layout {
    pub const ALPHA: usize = 0;
    pub const BETA: usize = 55;
    /// `η(e_k)`: upper-right slot.
    pub fn eta(k: usize) -> usize {
        1 + k
    }
    /// `η'(e_k)`: lower-left slot.
    pub fn eta_p(k: usize) -> usize {
        28 + k
    }
}

/// The structurable matrix algebra of the admissible triple `(T, N, N)`:
/// `[[α, x], [x', β]]` with
/// `[[α,x],[x',β]]·[[γ,y],[y',δ]] = [[αγ + T(x,y'), αy + δx + x'×y'],
/// [γx' + βy' + x×y, T(y,x') + βδ]]` and involution swapping `α`, `β`.
pub fn matrix_structurable<F: Scalar>(alb: &Albert<F>) -> InvolutiveAlgebra<F> {
    use layout::*;
    let ab = alb.alg();
    let mut labels = vec!["alpha".to_string()];
    labels.extend(ab.labels().iter().map(|l| format!("eta({l})")));
    labels.extend(ab.labels().iter().map(|l| format!("eta'({l})")));
    labels.push("beta".into());
    let cross: Vec<Vec<F>> = (0..27 * 27)
        .into_par_iter()
        .map(|k| alb.cross(&ab.basis(k / 27), &ab.basis(k % 27)))
        .collect();
    let tr: Vec<F> = (0..27 * 27).map(|k| alb.t2(&ab.basis(k / 27), &ab.basis(k % 27))).collect();
    let embed = |v: &[F], off: usize| SparseVec::from_pairs(v.iter().enumerate().map(|(k, c)| (off + k, c.clone())).collect());
    // Slot kinds: 0 = α, 1 = η, 2 = η', 3 = β.
    let kind = |i: usize| match i {
        ALPHA => (0, 0),
        BETA => (3, 0),
        i if i < 28 => (1, i - 1),
        i => (2, i - 28),
    };
    let rule = |i: usize, j: usize| -> SparseVec<F> {
        match (kind(i), kind(j)) {
            ((0, _), (0, _)) => SparseVec::unit(ALPHA),
            ((3, _), (3, _)) => SparseVec::unit(BETA),
            // α·y
            ((0, _), (1, k)) => SparseVec::unit(eta(k)),
            // β·y'
            ((3, _), (2, k)) => SparseVec::unit(eta_p(k)),
            // x·δ
            ((1, k), (3, _)) => SparseVec::unit(eta(k)),
            // x'·γ
            ((2, k), (0, _)) => SparseVec::unit(eta_p(k)),
            // η(x)η'(y') = T(x,y') in α
            ((1, a), (2, b)) => SparseVec::single(ALPHA, tr[a * 27 + b].clone()),
            // η'(x')η(y) = T(y,x') in β
            ((2, a), (1, b)) => SparseVec::single(BETA, tr[b * 27 + a].clone()),
            // η(x)η(y) = η'(x×y)
            ((1, a), (1, b)) => embed(&cross[a * 27 + b], 28),
            // η'(x')η'(y') = η(x'×y')
            ((2, a), (2, b)) => embed(&cross[a * 27 + b], 1),
            _ => SparseVec::new(),
        }
    };
    let invol = Operator::from_fn(56, |i| match i {
        ALPHA => SparseVec::unit(BETA),
        BETA => SparseVec::unit(ALPHA),
        i => SparseVec::unit(i),
    });
    let unit = SparseVec::from_pairs(vec![(ALPHA, F::one()), (BETA, F::one())]);
    InvolutiveAlgebra::from_rule(labels, rule, invol, unit)
}

/// `s0 = diag(1, −1)` in the matrix model.
pub fn s0<F: Scalar>() -> Vec<F> {
    let mut v = vec![F::zero(); 56];
    v[layout::ALPHA] = F::one();
    v[layout::BETA] = -F::one();
    v
}

/// The linear form `tr[[α,x],[x',β]] = α + β`.
pub fn matrix_trace<F: Scalar>() -> Vec<F> {
    (0..56)
        .map(|k| if k == layout::ALPHA || k == layout::BETA { F::one() } else { F::zero() })
        .collect()
}

/// Gram matrix of `⟨a, b⟩ = tr(a b̄)` on the basis, for a trace form given as
/// a linear functional.
pub fn trace_form<F: Scalar>(alg: &InvolutiveAlgebra<F>, tr: &[F]) -> Vec<Vec<F>> {
    let d = alg.dim();
    (0..d)
        .into_par_iter()
        .map(|i| {
            (0..d)
                .map(|j| alg.mul_sparse(&SparseVec::unit(i), alg.involution().column(j)).dot_dense(tr))
                .collect()
        })
        .collect()
}

pub fn bilinear<F: Scalar>(gram: &[Vec<F>], a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc.add_mul(&ai.mul_ref(bj), &gram[i][j]);
            }
        }
    }
    acc
}

pub fn gram_rank<F: Scalar>(gram: &[Vec<F>]) -> usize {
    rank_of(gram.iter().map(|r| SparseVec::from_dense(r)))
}

/// Orthogonality `⟨A_g, A_h⟩ = 0` whenever `g + h ≠ 0`, for a grading given
/// by basis degrees. Returns the violating pairs.
pub fn orthogonality_violations<F: Scalar>(gram: &[Vec<F>], group: &AbelianGroup, degrees: &[GroupElt]) -> Vec<(usize, usize)> {
    let d = degrees.len();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let s = group.add(&degrees[i], &degrees[j]).expect("degrees in group");
            if !group.is_zero(&s) && !gram[i][j].is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Checks `⟨ā, b̄⟩ = ⟨a, b⟩` and `⟨ca, b⟩ = ⟨a, c̄b⟩` on seeded random triples.
pub fn check_trace_invariance<F: Scalar>(alg: &InvolutiveAlgebra<F>, gram: &[Vec<F>], trials: usize, seed: u64) -> Result<(), String> {
    let d = alg.dim();
    let bad = (0..trials).into_par_iter().find_first(|&k| {
        let mut rng = sample::trial_rng(seed, k as u64);
        let a: Vec<F> = sample::vector(&mut rng, d);
        let b: Vec<F> = sample::vector(&mut rng, d);
        let c: Vec<F> = sample::vector(&mut rng, d);
        let sym = bilinear(gram, &alg.bar(&a), &alg.bar(&b)) == bilinear(gram, &a, &b);
        let inv = bilinear(gram, &alg.mul(&c, &a), &b) == bilinear(gram, &a, &alg.mul(&alg.bar(&c), &b));
        !(sym && inv)
    });
    match bad {
        Some(k) => Err(format!("trace-form invariance fails on trial {k}")),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;
    use crate::jordan::build_albert;
    use num_traits::Zero;

    type F = GaussRat;

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    #[test]
    fn matrix_model_basics() {
        let alb = build_albert::<F>();
        let a = matrix_structurable(&alb);
        a.validate().unwrap();
        let s = s0::<F>();
        assert_eq!(a.mul(&s, &s), a.unit_dense());
        let (h, k) = hk_split(&a);
        assert_eq!((h.len(), k.len()), (55, 1));
        assert_eq!(rank_of([k[0].clone(), SparseVec::from_dense(&s)]), 1);
        // η(x)·η'(y') = ½T(x,y')(1 + s0)
        let x = alb.random(&mut sample::rng(4));
        let y = alb.random(&mut sample::rng(5));
        let mut ex = vec![F::zero(); 56];
        let mut ey = vec![F::zero(); 56];
        for k in 0..27 {
            ex[layout::eta(k)] = x[k].clone();
            ey[layout::eta_p(k)] = y[k].clone();
        }
        let half_t = alb.t2(&x, &y) * F::from_ratio(1, 2).unwrap();
        assert_eq!(a.mul(&ex, &ey), scale(&half_t, &add(&a.unit_dense(), &s)));
    }

    #[test]
    fn v_and_d_examples() {
        let alb = build_albert::<F>();
        let a = matrix_structurable(&alb);
        let one = a.unit_dense();
        assert_eq!(v_op(&a, &one, &one), Operator::identity(56));
        assert!(d_op(&a, &one, &one).is_zero());
        let mut rng = sample::rng(9);
        let x = sample::vector(&mut rng, 56);
        let y = sample::vector(&mut rng, 56);
        let d = d_op(&a, &x, &y);
        assert!(d.apply(&s0()).iter().all(|c: &F| c.is_zero()));
        let p = sample::vector(&mut rng, 56);
        let q = sample::vector(&mut rng, 56);
        let lhs = d.apply(&a.mul(&p, &q));
        let rhs = add(&a.mul(&d.apply(&p), &q), &a.mul(&p, &d.apply(&q)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn structurable_checks() {
        let alb = build_albert::<F>();
        let a = matrix_structurable(&alb);
        let rep = check_structurable(&a, 4, 0);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.skew_dimension, 1);
        let jr = check_structurable(alb.alg(), 3, 0);
        assert!(jr.passed());
        assert_eq!(jr.skew_dimension, 0);
        // corrupt one constant
        let bad = a.with_product(3, 30, a.mul_basis(3, 30).add(&SparseVec::unit(55)));
        assert!(!check_structurable(&bad, 2, 0).passed());
    }

    #[test]
    fn trace_form_basics() {
        let alb = build_albert::<F>();
        let a = matrix_structurable(&alb);
        let g = trace_form(&a, &matrix_trace());
        let one = a.unit_dense();
        assert_eq!(bilinear(&g, &one, &one), f(2));
        assert_eq!(gram_rank(&g), 56);
        check_trace_invariance(&a, &g, 5, 1).unwrap();
    }
}
