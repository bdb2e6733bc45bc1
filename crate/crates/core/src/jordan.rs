//! Jordan algebras: the Albert algebra with its cubic-form apparatus, rank and
//! orbit classification, and the degree-4 algebras `H4(Q)` and `Alb × F`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{add, combine, is_zero, scale, sub, InvolutiveAlgebra};
use crate::composition::{build_split_octonions, CompositionTable};
use crate::exactnum::{GaussRat, Scalar};
use crate::linalg::{Operator, SparseVec};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("similarity parameters must be nonzero")]
    ZeroLambda,
    #[error("no singular element found after {0} attempts")]
    Exhausted(usize),
}

/// A Jordan algebra (identity involution) with its generic trace.
#[derive(Clone, Debug)]
pub struct JordanTable<F> {
    pub alg: InvolutiveAlgebra<F>,
    /// Generic trace as a linear form on the basis.
    pub trace: Vec<F>,
    /// Degree of the generic minimal polynomial, `T(1)`.
    pub degree: u32,
}

impl<F: Scalar> JordanTable<F> {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn generic_trace(&self, x: &[F]) -> F {
        let mut t = F::zero();
        for (c, v) in self.trace.iter().zip(x) {
            t.add_mul(c, v);
        }
        t
    }

    /// `θ(b) = −b + (2T(b)/T(1))·1`
    pub fn theta(&self) -> Operator<F> {
        let two_over = F::from_ratio(2, self.degree as i64);
        let unit = self.alg.unit().clone();
        Operator::from_fn(self.dim(), |j| {
            let mut v = SparseVec::single(j, -F::one());
            v.add_scaled(&self.trace[j].mul_ref(&two_over), &unit);
            v
        })
    }
}

/// Checks commutativity on basis pairs and the fully linearized Jordan
/// identity
/// `((ac)b)d + ((cd)b)a + ((da)b)c = (ac)(bd) + (cd)(ba) + (da)(bc)`
/// on all basis quadruples with `a ≤ c ≤ d`. Returns the first witness.
pub fn check_jordan_identity<F: Scalar>(alg: &InvolutiveAlgebra<F>) -> Result<(), String> {
    let n = alg.dim();
    for i in 0..n {
        for j in i + 1..n {
            if alg.mul_basis(i, j) != alg.mul_basis(j, i) {
                return Err(format!("not commutative on ({}, {})", alg.label(i), alg.label(j)));
            }
        }
    }
    let m = |x: &SparseVec<F>, y: &SparseVec<F>| alg.mul_sparse(x, y);
    let e = SparseVec::<F>::unit;
    let bad = (0..n).into_par_iter().find_map_first(|b| {
        let eb = e(b);
        for a in 0..n {
            for c in a..n {
                let ac = alg.mul_basis(a, c).clone();
                let ac_b = m(&ac, &eb);
                for d in c..n {
                    let cd = alg.mul_basis(c, d);
                    let da = alg.mul_basis(d, a);
                    let mut lhs = m(&ac_b, &e(d));
                    lhs = lhs.add(&m(&m(cd, &eb), &e(a)));
                    lhs = lhs.add(&m(&m(da, &eb), &e(c)));
                    let mut rhs = m(&ac, alg.mul_basis(b, d));
                    rhs = rhs.add(&m(cd, alg.mul_basis(b, a)));
                    rhs = rhs.add(&m(da, alg.mul_basis(b, c)));
                    if lhs != rhs {
                        return Some((a, b, c, d));
                    }
                }
            }
        }
        None
    });
    match bad {
        Some((a, b, c, d)) => Err(format!(
            "Jordan identity fails at ({}, {}, {}, {})",
            alg.label(a),
            alg.label(b),
            alg.label(c),
            alg.label(d)
        )),
        None => Ok(()),
    }
}

/// `(x²y)x = x²(yx)`
pub fn jordan_identity_holds<F: Scalar>(alg: &InvolutiveAlgebra<F>, x: &[F], y: &[F]) -> bool {
    let x2 = alg.mul(x, x);
    alg.mul(&alg.mul(&x2, y), x) == alg.mul(&x2, &alg.mul(y, x))
}

/// Rank of an Albert element: the possible values are 0, 1, 10 and 27.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "orbit")]
pub enum OrbitLabel {
    O0,
    O1,
    O10,
    O27 { norm: GaussRat },
}

impl OrbitLabel {
    pub fn rank(&self) -> usize {
        match self {
            OrbitLabel::O0 => 0,
            OrbitLabel::O1 => 1,
            OrbitLabel::O10 => 10,
            OrbitLabel::O27 { .. } => 27,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrbitLabel::O0 => "O0",
            OrbitLabel::O1 => "O1",
            OrbitLabel::O10 => "O10",
            OrbitLabel::O27 { .. } => "O27",
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RankSuiteReport {
    /// Ranks of `E1`, `E2 + E3` and `1`.
    pub fixed_ranks: [usize; 3],
    pub samples: usize,
    pub rank_counts: std::collections::BTreeMap<usize, usize>,
    pub rank_one_pairs: usize,
    pub sharp_trials: usize,
    pub failures: Vec<String>,
}

impl RankSuiteReport {
    pub fn passed(&self) -> bool {
        self.fixed_ranks == [1, 10, 27] && self.failures.is_empty()
    }
}

/// Coordinates `[α1, α2, α3, a1 (8), a2 (8), a3 (8)]` of
/// `Σ α_i E_i + ι_i(a_i)`.
#[derive(Clone, Debug)]
pub struct Albert<F> {
    pub oct: CompositionTable<F>,
    pub jordan: JordanTable<F>,
}

/// Index of `E_i`, `i ∈ {1,2,3}`.
pub fn e_index(i: usize) -> usize {
    i - 1
}

/// Index of `ι_i(x_k)`, `i ∈ {1,2,3}`, `k ∈ 0..8`.
pub fn iota_index(i: usize, k: usize) -> usize {
    3 + 8 * (i - 1) + k
}

fn next(i: usize) -> usize {
    i % 3 + 1
}

impl<F: Scalar> Albert<F> {
    pub fn alg(&self) -> &InvolutiveAlgebra<F> {
        &self.jordan.alg
    }

    pub fn zero(&self) -> Vec<F> {
        vec![F::zero(); 27]
    }

    pub fn one(&self) -> Vec<F> {
        self.alg().unit_dense()
    }

    pub fn e(&self, i: usize) -> Vec<F> {
        self.alg().basis(e_index(i))
    }

    /// `ι_i(a)` for an octonion coordinate vector `a`.
    pub fn iota(&self, i: usize, a: &[F]) -> Vec<F> {
        let mut x = self.zero();
        for (k, c) in a.iter().enumerate() {
            x[iota_index(i, k)] = c.clone();
        }
        x
    }

    pub fn alpha(&self, x: &[F], i: usize) -> F {
        x[e_index(i)].clone()
    }

    pub fn oct_part(&self, x: &[F], i: usize) -> Vec<F> {
        x[iota_index(i, 0)..iota_index(i, 0) + 8].to_vec()
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.alg().mul(x, y)
    }

    pub fn t(&self, x: &[F]) -> F {
        self.jordan.generic_trace(x)
    }

    /// Bilinear trace `T(x, y) = T(xy)`.
    pub fn t2(&self, x: &[F], y: &[F]) -> F {
        self.t(&self.mul(x, y))
    }

    pub fn s(&self, x: &[F]) -> F {
        let mut acc = F::zero();
        let four = F::from_i64(4);
        for i in 1..=3 {
            let (j, k) = (next(i), next(next(i)));
            acc += &self.alpha(x, j).mul_ref(&self.alpha(x, k));
            acc -= &four.mul_ref(&self.oct.norm(&self.oct_part(x, i)));
        }
        acc
    }

    /// `N(x) = α1α2α3 + 8n(a1, ā2ā3) − 4Σ α_i n(a_i)`
    pub fn n(&self, x: &[F]) -> F {
        let o = &self.oct;
        let (a1, a2, a3) = (self.oct_part(x, 1), self.oct_part(x, 2), self.oct_part(x, 3));
        let mut acc = self.alpha(x, 1).mul_ref(&self.alpha(x, 2)).mul_ref(&self.alpha(x, 3));
        let prod = o.mul(&o.conj(&a2), &o.conj(&a3));
        acc += &F::from_i64(8).mul_ref(&o.norm_bilinear(&a1, &prod));
        for (i, ai) in [(1, &a1), (2, &a2), (3, &a3)] {
            acc -= &F::from_i64(4).mul_ref(&self.alpha(x, i).mul_ref(&o.norm(ai)));
        }
        acc
    }

    /// `x♯ = x² − T(x)x + S(x)1`
    pub fn sharp(&self, x: &[F]) -> Vec<F> {
        let x2 = self.mul(x, x);
        combine(27, &[(F::one(), &x2), (-self.t(x), x), (self.s(x), &self.one())])
    }

    /// `x × y = (x+y)♯ − x♯ − y♯`
    pub fn cross(&self, x: &[F], y: &[F]) -> Vec<F> {
        sub(&sub(&self.sharp(&add(x, y)), &self.sharp(x)), &self.sharp(y))
    }

    /// `U_x(y) = T(x,y)x − x♯ × y`
    pub fn u_apply(&self, x: &[F], y: &[F]) -> Vec<F> {
        sub(&scale(&self.t2(x, y), x), &self.cross(&self.sharp(x), y))
    }

    /// `U_x(y) = 2x(xy) − x²y`, the independent formula.
    pub fn u_apply_quadratic(&self, x: &[F], y: &[F]) -> Vec<F> {
        let xy = self.mul(x, y);
        sub(&scale(&F::from_i64(2), &self.mul(x, &xy)), &self.mul(&self.mul(x, x), y))
    }

    /// Matrix of `U_x`, built from `T(x,y)x − x♯×y` with `x♯` computed once.
    pub fn u_operator(&self, x: &[F]) -> Operator<F> {
        let xs = self.sharp(x);
        Operator::from_fn(27, |j| {
            let ej = self.alg().basis(j);
            let v = sub(&scale(&self.t2(x, &ej), x), &self.cross(&xs, &ej));
            SparseVec::from_dense(&v)
        })
    }

    /// `rank(x) = dim im U_x`
    pub fn rank(&self, x: &[F]) -> usize {
        self.u_operator(x).rank()
    }

    /// Classification by `N` and `♯` (no rank computation).
    pub fn classify_orbit(&self, x: &[F]) -> OrbitLabel {
        let n = self.n(x);
        if !n.is_zero() {
            OrbitLabel::O27 { norm: n.to_gauss() }
        } else if is_zero(x) {
            OrbitLabel::O0
        } else if is_zero(&self.sharp(x)) {
            OrbitLabel::O1
        } else {
            OrbitLabel::O10
        }
    }

    /// Classification with the rank as an independent cross-check.
    pub fn classify_checked(&self, x: &[F]) -> Result<OrbitLabel, String> {
        let label = self.classify_orbit(x);
        let r = self.rank(x);
        if label.rank() == r {
            Ok(label)
        } else {
            Err(format!("classifier says {} but rank is {r}", label.name()))
        }
    }

    /// The norm similarity `c_{λ1,λ2,λ3}`: `ι_i(x) ↦ ι_i(λ_i x)`,
    /// `E_i ↦ μ_i E_i` with `μ_i = λ_i⁻¹λ_{i+1}λ_{i+2}`.
    pub fn norm_similarity(&self, lambda: [F; 3]) -> Result<Operator<F>, JordanError> {
        self.similarity_map(lambda, false)
    }

    /// `c†`: `ι_i(x) ↦ ι_i(λ_i⁻¹ x)`, `E_i ↦ μ_i⁻¹ E_i`.
    pub fn norm_similarity_dagger(&self, lambda: [F; 3]) -> Result<Operator<F>, JordanError> {
        self.similarity_map(lambda, true)
    }

    fn similarity_map(&self, lambda: [F; 3], dagger: bool) -> Result<Operator<F>, JordanError> {
        let inv: Vec<F> = lambda
            .iter()
            .map(|l| l.checked_inv().ok_or(JordanError::ZeroLambda))
            .collect::<Result<_, _>>()?;
        let mu = |i: usize| inv[i - 1].mul_ref(&lambda[next(i) - 1]).mul_ref(&lambda[next(next(i)) - 1]);
        Ok(Operator::from_fn(27, |j| {
            let c = if j < 3 {
                let m = mu(j + 1);
                if dagger {
                    m.checked_inv().expect("nonzero")
                } else {
                    m
                }
            } else {
                let i = (j - 3) / 8;
                if dagger {
                    inv[i].clone()
                } else {
                    lambda[i].clone()
                }
            };
            SparseVec::single(j, c)
        }))
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Vec<F> {
        sample::vector(rng, 27)
    }

    /// A random element with `N = 0`: all coordinates but `α1` are drawn,
    /// then `α1` solves the linear equation `N = 0`.
    pub fn random_singular<R: rand::Rng>(&self, rng: &mut R) -> Result<Vec<F>, JordanError> {
        const ATTEMPTS: usize = 100;
        for _ in 0..ATTEMPTS {
            let mut x = self.random(rng);
            x[e_index(1)] = F::zero();
            let coef = self.alpha(&x, 2).mul_ref(&self.alpha(&x, 3))
                - F::from_i64(4).mul_ref(&self.oct.norm(&self.oct_part(&x, 1)));
            let Some(inv) = coef.checked_inv() else { continue };
            let rest = self.n(&x);
            x[e_index(1)] = -rest.mul_ref(&inv);
            debug_assert!(self.n(&x).is_zero());
            return Ok(x);
        }
        Err(JordanError::Exhausted(ATTEMPTS))
    }

    pub fn random_singular_seeded(&self, seed: u64) -> Result<Vec<F>, JordanError> {
        self.random_singular(&mut sample::rng(seed))
    }

    /// Rank and orbit checks on `samples` seeded elements, cycling through
    /// random, singular and sharp-of-singular elements, plus `(x♯)♯ = N(x)x`
    /// on `sharp_trials` random elements.
    pub fn rank_suite(&self, samples: usize, sharp_trials: usize, seed: u64) -> RankSuiteReport {
        let mut rep = RankSuiteReport {
            fixed_ranks: [self.rank(&self.e(1)), self.rank(&add(&self.e(2), &self.e(3))), self.rank(&self.one())],
            ..Default::default()
        };
        let drawn: Vec<Result<Vec<F>, String>> = (0..samples)
            .into_par_iter()
            .map(|t| {
                let mut rng = sample::trial_rng(seed, t as u64);
                match t % 3 {
                    0 => Ok(self.random(&mut rng)),
                    1 => self.random_singular(&mut rng).map_err(|e| e.to_string()),
                    _ => self.random_singular(&mut rng).map(|x| self.sharp(&x)).map_err(|e| e.to_string()),
                }
            })
            .collect();
        let checks: Vec<(usize, Vec<String>)> = drawn
            .par_iter()
            .enumerate()
            .map(|(t, x)| {
                let x = match x {
                    Ok(x) => x,
                    Err(e) => return (0, vec![format!("sample {t}: {e}")]),
                };
                let mut bad = Vec::new();
                let r = self.rank(x);
                if let Err(e) = self.classify_checked(x) {
                    bad.push(format!("sample {t}: {e}"));
                }
                let rs = self.rank(&self.sharp(x));
                let want = match r {
                    1 => 0,
                    10 => 1,
                    27 => 27,
                    _ => rs,
                };
                if rs != want {
                    bad.push(format!("sample {t}: rank {r} but rank(x♯) = {rs}"));
                }
                (r, bad)
            })
            .collect();
        let mut rank_one = Vec::new();
        for ((r, bad), x) in checks.into_iter().zip(&drawn) {
            *rep.rank_counts.entry(r).or_default() += 1;
            rep.failures.extend(bad);
            if let (1, Ok(x)) = (r, x) {
                rank_one.push(x);
            }
        }
        for w in rank_one.windows(2) {
            rep.rank_one_pairs += 1;
            if !self.n(&add(w[0], w[1])).is_zero() {
                rep.failures.push("N(x+y) ≠ 0 for rank-one x, y".into());
            }
        }
        let sharp_fail = (0..sharp_trials).into_par_iter().find_first(|&t| {
            let x = self.random(&mut sample::trial_rng(seed ^ 0x5eed, t as u64));
            self.sharp(&self.sharp(&x)) != scale(&self.n(&x), &x)
        });
        if let Some(t) = sharp_fail {
            rep.failures.push(format!("(x♯)♯ ≠ N(x)x, trial {t}"));
        }
        rep.samples = samples;
        rep.sharp_trials = sharp_trials;
        rep
    }
}

/// The Albert algebra `H3(C)` over the given octonion table.
pub fn build_albert_over<F: Scalar>(oct: &CompositionTable<F>) -> Albert<F> {
    let ol = oct.alg.labels().to_vec();
    let mut labels: Vec<String> = (1..=3).map(|i| format!("E{i}")).collect();
    for i in 1..=3 {
        labels.extend(ol.iter().map(|l| format!("iota{i}({l})")));
    }
    let half = F::from_ratio(1, 2);
    let octv = |v: &[F]| v.to_vec();
    let iota_vec = |i: usize, a: &[F]| {
        SparseVec::from_pairs(a.iter().enumerate().map(|(k, c)| (iota_index(i, k), c.clone())).collect())
    };
    let decode = |idx: usize| -> (usize, Option<Vec<F>>) {
        if idx < 3 {
            (idx + 1, None)
        } else {
            let i = (idx - 3) / 8 + 1;
            (i, Some(octv(&oct.alg.basis((idx - 3) % 8))))
        }
    };
    let rule = |p: usize, q: usize| -> SparseVec<F> {
        match (decode(p), decode(q)) {
            ((i, None), (j, None)) => {
                if i == j {
                    SparseVec::unit(e_index(i))
                } else {
                    SparseVec::new()
                }
            }
            ((i, None), (j, Some(a))) | ((j, Some(a)), (i, None)) => {
                if i == j {
                    SparseVec::new()
                } else {
                    iota_vec(j, &a).scaled(&half)
                }
            }
            ((i, Some(a)), (j, Some(b))) => {
                if i == j {
                    let c = F::from_i64(2).mul_ref(&oct.norm_bilinear(&a, &b));
                    let (k, l) = (next(i), next(next(i)));
                    SparseVec::from_pairs(vec![(e_index(k), c.clone()), (e_index(l), c)])
                } else if j == next(i) {
                    iota_vec(next(j), &oct.mul(&oct.conj(&a), &oct.conj(&b)))
                } else {
                    // ι_i(a) ι_{i+2}(b) = ι_{i+2}(b) ι_i(a) = ι_{i+1}(b̄ ā)
                    iota_vec(next(i), &oct.mul(&oct.conj(&b), &oct.conj(&a)))
                }
            }
        }
    };
    let unit = SparseVec::from_pairs((0..3).map(|k| (k, F::one())).collect());
    let alg = InvolutiveAlgebra::from_rule(labels, rule, Operator::identity(27), unit);
    let trace = (0..27).map(|k| if k < 3 { F::one() } else { F::zero() }).collect();
    Albert { oct: oct.clone(), jordan: JordanTable { alg, trace, degree: 3 } }
}

/// The split Albert algebra over the `ℤ2³`-graded octonions.
pub fn build_albert<F: Scalar>() -> Albert<F> {
    build_albert_over(&build_split_octonions())
}

/// `Alb × F`, the last basis vector being the unit `e_F` of the second
/// factor.
pub fn albert_times_field<F: Scalar>(alb: &Albert<F>) -> JordanTable<F> {
    let a = alb.alg();
    let mut labels = a.labels().to_vec();
    labels.push("eF".into());
    let rule = |i: usize, j: usize| match (i < 27, j < 27) {
        (true, true) => a.mul_basis(i, j).clone(),
        (false, false) => SparseVec::unit(27),
        _ => SparseVec::new(),
    };
    let mut unit = a.unit().clone();
    unit.add_scaled(&F::one(), &SparseVec::unit(27));
    let alg = InvolutiveAlgebra::from_rule(labels, rule, Operator::identity(28), unit);
    let mut trace = alb.jordan.trace.clone();
    trace.push(F::one());
    JordanTable { alg, trace, degree: 4 }
}

/// `H4(Q)` of `∗`-symmetric 4×4 matrices over a quaternion algebra `Q`
/// under `(xy + yx)/2`.
///
/// Basis: `diag(p)` (1 at `(p,p)`) for `p = 1..4`, then for each pair
/// `p < q` and each basis vector `c` of `Q` the matrix with `c` at `(p,q)`
/// and `c̄` at `(q,p)`.
#[derive(Clone, Debug)]
pub struct H4<F> {
    pub q: CompositionTable<F>,
    pub jordan: JordanTable<F>,
}

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn pair_index(p: usize, q: usize) -> usize {
    PAIRS.iter().position(|&x| x == (p, q)).expect("p < q")
}

/// Index of the basis element with `Q`-basis vector `c` at `(p,q)`, `p < q`.
pub fn h4_pair_index(p: usize, q: usize, c: usize) -> usize {
    4 + 4 * pair_index(p, q) + c
}

type QMatrix<F> = Vec<Vec<Vec<F>>>;

impl<F: Scalar> H4<F> {
    pub fn alg(&self) -> &InvolutiveAlgebra<F> {
        &self.jordan.alg
    }

    /// The 4×4 matrix over `Q` of a coordinate vector.
    pub fn to_matrix(&self, x: &[F]) -> QMatrix<F> {
        let q = &self.q;
        let qd = q.dim();
        let one = q.alg.unit_dense();
        let mut m = vec![vec![vec![F::zero(); qd]; 4]; 4];
        for p in 0..4 {
            m[p][p] = scale(&x[p], &one);
        }
        for (k, &(p, r)) in PAIRS.iter().enumerate() {
            let c: Vec<F> = x[4 + 4 * k..8 + 4 * k].to_vec();
            m[r][p] = q.conj(&c);
            m[p][r] = c;
        }
        m
    }

    /// Coordinates of a `∗`-symmetric matrix.
    pub fn from_matrix(&self, m: &QMatrix<F>) -> Vec<F> {
        let mut x = vec![F::zero(); 28];
        for p in 0..4 {
            x[p] = self.q.scalar_part(&m[p][p]);
        }
        for (k, &(p, r)) in PAIRS.iter().enumerate() {
            debug_assert_eq!(m[r][p], self.q.conj(&m[p][r]), "matrix is not *-symmetric");
            for c in 0..4 {
                x[4 + 4 * k + c] = m[p][r][c].clone();
            }
        }
        x
    }
}

fn qmat_mul<F: Scalar>(q: &CompositionTable<F>, a: &QMatrix<F>, b: &QMatrix<F>) -> QMatrix<F> {
    let qd = q.dim();
    let mut out = vec![vec![vec![F::zero(); qd]; 4]; 4];
    for p in 0..4 {
        for r in 0..4 {
            for s in 0..4 {
                if is_zero(&a[p][s]) || is_zero(&b[s][r]) {
                    continue;
                }
                out[p][r] = add(&out[p][r], &q.mul(&a[p][s], &b[s][r]));
            }
        }
    }
    out
}

/// Builds `H4(Q)` for a 4-dimensional quaternion table.
pub fn build_h4_quaternion<F: Scalar>(q: &CompositionTable<F>) -> H4<F> {
    assert_eq!(q.dim(), 4, "quaternion algebra expected");
    let mut labels: Vec<String> = (1..=4).map(|p| format!("d{p}")).collect();
    for &(p, r) in &PAIRS {
        labels.extend(q.alg.labels().iter().map(|l| format!("h{}{}[{l}]", p + 1, r + 1)));
    }
    let shell = H4 {
        q: q.clone(),
        jordan: JordanTable {
            alg: InvolutiveAlgebra::new(
                labels.clone(),
                vec![SparseVec::new(); 28 * 28],
                Operator::identity(28),
                SparseVec::new(),
            ),
            trace: Vec::new(),
            degree: 4,
        },
    };
    let half = F::from_ratio(1, 2);
    let basis_mats: Vec<QMatrix<F>> = (0..28)
        .map(|k| shell.to_matrix(&SparseVec::<F>::unit(k).to_dense(28)))
        .collect();
    let rule = |i: usize, j: usize| {
        let ab = qmat_mul(q, &basis_mats[i], &basis_mats[j]);
        let ba = qmat_mul(q, &basis_mats[j], &basis_mats[i]);
        let mut s = ab;
        for p in 0..4 {
            for r in 0..4 {
                s[p][r] = scale(&half, &add(&s[p][r], &ba[p][r]));
            }
        }
        SparseVec::from_dense(&shell.from_matrix(&s))
    };
    let unit = SparseVec::from_pairs((0..4).map(|k| (k, F::one())).collect());
    let alg = InvolutiveAlgebra::from_rule(labels, rule, Operator::identity(28), unit);
    let trace = (0..28).map(|k| if k < 4 { F::one() } else { F::zero() }).collect();
    H4 { q: q.clone(), jordan: JordanTable { alg, trace, degree: 4 } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{m2_quaternions, octonion_quaternions};
    use num_traits::Zero;

    type F = GaussRat;

    fn alb() -> Albert<F> {
        build_albert()
    }

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    #[test]
    fn product_examples() {
        let a = alb();
        let x0 = a.oct.alg.basis(0);
        let i1 = a.iota(1, &x0);
        assert!(is_zero(&a.mul(&a.e(1), &i1)));
        assert_eq!(a.mul(&a.e(2), &i1), scale(&F::from_ratio(1, 2).unwrap(), &i1));
        assert_eq!(a.mul(&i1, &a.iota(2, &x0)), a.iota(3, &x0));
        a.alg().validate().unwrap();
    }

    #[test]
    fn cubic_form_examples() {
        let a = alb();
        assert_eq!((a.t(&a.one()), a.s(&a.one()), a.n(&a.one())), (f(3), f(3), f(1)));
        assert_eq!((a.t(&a.e(1)), a.s(&a.e(1)), a.n(&a.e(1))), (f(1), f(0), f(0)));
        let x = add(&a.one(), &a.iota(1, &a.oct.alg.basis(0)));
        assert_eq!(a.n(&x), f(-3));
    }

    #[test]
    fn sharp_and_cross_examples() {
        let a = alb();
        assert!(is_zero(&a.sharp(&a.e(1))));
        assert_eq!(a.sharp(&add(&a.e(2), &a.e(3))), a.e(1));
        let x = a.random(&mut sample::rng(1));
        assert_eq!(a.cross(&x, &a.one()), sub(&scale(&a.t(&x), &a.one()), &x));
    }

    #[test]
    fn cross_product_table() {
        let a = alb();
        let o = &a.oct;
        for i in 1..=3 {
            let (j, k) = (next(i), next(next(i)));
            assert_eq!(a.cross(&a.e(i), &a.e(j)), a.e(k));
            assert!(is_zero(&a.cross(&a.e(i), &a.e(i))));
            for p in 0..8 {
                let x = o.alg.basis(p);
                assert_eq!(a.cross(&a.e(i), &a.iota(i, &x)), scale(&f(-1), &a.iota(i, &x)));
                assert!(is_zero(&a.cross(&a.e(i), &a.iota(j, &x))));
                assert!(is_zero(&a.cross(&a.e(i), &a.iota(k, &x))));
                for q in 0..8 {
                    let y = o.alg.basis(q);
                    let n = o.norm_bilinear(&x, &y);
                    assert_eq!(a.cross(&a.iota(i, &x), &a.iota(i, &y)), scale(&(f(-4) * n), &a.e(i)));
                    let p2 = o.mul(&o.conj(&x), &o.conj(&y));
                    assert_eq!(a.cross(&a.iota(i, &x), &a.iota(j, &y)), scale(&f(2), &a.iota(k, &p2)));
                }
            }
        }
    }

    #[test]
    fn u_operator_and_rank_examples() {
        let a = alb();
        let y = a.random(&mut sample::rng(2));
        assert_eq!(a.u_apply(&a.one(), &y), y);
        assert_eq!(a.u_apply(&a.e(1), &a.e(1)), a.e(1));
        assert!(is_zero(&a.u_apply(&a.e(1), &a.e(2))));
        assert_eq!(a.rank(&a.e(1)), 1);
        assert_eq!(a.rank(&add(&a.e(2), &a.e(3))), 10);
        assert_eq!(a.rank(&a.one()), 27);
    }

    #[test]
    fn orbit_examples() {
        let a = alb();
        assert_eq!(a.classify_checked(&a.e(1)).unwrap(), OrbitLabel::O1);
        assert_eq!(a.classify_checked(&add(&a.e(2), &a.e(3))).unwrap(), OrbitLabel::O10);
        assert_eq!(
            a.classify_checked(&scale(&f(2), &a.one())).unwrap(),
            OrbitLabel::O27 { norm: f(8) }
        );
        assert_eq!(a.classify_checked(&a.zero()).unwrap(), OrbitLabel::O0);
    }

    #[test]
    fn similarity_examples() {
        let a = alb();
        let id = a.norm_similarity([f(1), f(1), f(1)]).unwrap();
        assert_eq!(id, Operator::identity(27));
        let c = a.norm_similarity([f(2), f(1), f(1)]).unwrap();
        assert_eq!(a.n(&c.apply(&a.one())), f(2));
        assert!(a.norm_similarity([f(0), f(1), f(1)]).is_err());
    }

    #[test]
    fn random_singular_is_singular_and_deterministic() {
        let a = alb();
        let x = a.random_singular_seeded(5).unwrap();
        assert!(a.n(&x).is_zero());
        assert_eq!(x, a.random_singular_seeded(5).unwrap());
        assert_eq!(a.rank(&x), 10);
        assert_eq!(a.rank(&a.sharp(&x)), 1);
    }

    #[test]
    fn rank_suite_passes() {
        let r = alb().rank_suite(30, 10, 0);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.rank_counts.values().sum::<usize>(), 30);
        assert!(r.rank_one_pairs > 0);
    }

    #[test]
    fn h4_examples() {
        for q in [m2_quaternions::<F>(), octonion_quaternions::<F>()] {
            let h = build_h4_quaternion(&q);
            let one = h.alg().unit_dense();
            assert_eq!(h.jordan.generic_trace(&one), f(4));
            let th = h.jordan.theta();
            assert_eq!(th.apply(&one), one);
            // trace-zero element
            let b = h.alg().basis(h4_pair_index(0, 2, 1));
            assert_eq!(th.apply(&b), scale(&f(-1), &b));
            let d = sub(&h.alg().basis(0), &h.alg().basis(1));
            assert_eq!(th.apply(&d), scale(&f(-1), &d));
            assert!(jordan_identity_holds(h.alg(), &sample::vector(&mut sample::rng(3), 28), &one));
        }
    }
}
