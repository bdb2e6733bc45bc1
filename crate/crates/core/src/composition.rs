//! The split octonions as a `ℤ2³`-twisted group algebra, the quaternion
//! subalgebras used by the Brown models, and Cayley–Dickson doubling.

use serde::Serialize;

use crate::algebra::{cd_double_with, AlgebraError, InvolutiveAlgebra};
use crate::exactnum::Scalar;
use crate::grading_groups::{named, GroupElt};
use crate::linalg::{Operator, SparseVec};

/// Element `(g1, g2, g3)` of `ℤ2³`.
pub type Bits3 = [u8; 3];

pub const A0: Bits3 = [0, 0, 0];
pub const A1: Bits3 = [0, 1, 0];
pub const A2: Bits3 = [1, 0, 0];
pub const A3: Bits3 = [1, 1, 0];
pub const G0: Bits3 = [0, 0, 1];

pub fn a(j: usize) -> Bits3 {
    [A0, A1, A2, A3][j]
}

pub fn add3(g: Bits3, h: Bits3) -> Bits3 {
    [g[0] ^ h[0], g[1] ^ h[1], g[2] ^ h[2]]
}

pub fn to_group(g: Bits3) -> GroupElt {
    crate::grading_groups::AbelianGroup::z2_cubed().t(&[g[0] as i64, g[1] as i64, g[2] as i64])
}

/// Image of `g` under the fixed embedding `ℤ2³ → ℤ4³`.
pub fn to_z4(g: Bits3) -> GroupElt {
    named::z2_into_z4().apply(&to_group(g)).expect("member")
}

/// `ψ(g,h) = h1g2g3 + g1h2g3 + g1g2h3 + Σ_{i≤j} g_i h_j  (mod 2)`
pub fn psi(g: Bits3, h: Bits3) -> u8 {
    let mut s = h[0] * g[1] * g[2] + g[0] * h[1] * g[2] + g[0] * g[1] * h[2];
    for i in 0..3 {
        for j in i..3 {
            s += g[i] * h[j];
        }
    }
    s % 2
}

fn sign(bit: u8) -> i8 {
    if bit.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn sigma(g: Bits3, h: Bits3) -> i8 {
    sign(psi(g, h))
}

/// `φ(g) = Σ g_i + Σ_{i<j} g_i g_j + g1g2g3  (mod 2)`
pub fn phi(g: Bits3) -> u8 {
    let s = g[0] + g[1] + g[2] + g[0] * g[1] + g[0] * g[2] + g[1] * g[2] + g[0] * g[1] * g[2];
    s % 2
}

pub fn s(g: Bits3) -> i8 {
    sign(phi(g))
}

pub fn gamma(g: Bits3, h: Bits3) -> i8 {
    s(g) * s(h) * sigma(g, h)
}

/// `σ_j(h) = σ(a_j, g0 + h)` for `h` in the support of `Q⊥`.
pub fn sigma_j(j: usize, h: Bits3) -> i8 {
    sigma(a(j), add3(G0, h))
}

/// Support element of the `k`-th octonion basis vector in the order
/// `x_{a0..a3}, x_{g0+a0..a3}`.
pub fn oct_degree(k: usize) -> Bits3 {
    if k < 4 {
        a(k)
    } else {
        add3(G0, a(k - 4))
    }
}

pub fn oct_index(g: Bits3) -> usize {
    (0..8).find(|&k| oct_degree(k) == g).expect("every element of Z2^3 is a degree")
}

fn oct_label(k: usize) -> String {
    match k {
        0 => "x[0]".into(),
        1..=3 => format!("x[a{k}]"),
        4 => "x[g0]".into(),
        _ => format!("x[g0+a{}]", k - 4),
    }
}

/// Signed 8×8 table `f(g, h)` in the basis order above.
pub fn sign_table(f: impl Fn(Bits3, Bits3) -> i8) -> [[i8; 8]; 8] {
    let mut m = [[0i8; 8]; 8];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = f(oct_degree(r), oct_degree(c));
        }
    }
    m
}

pub fn gamma_matrix() -> [[i8; 8]; 8] {
    sign_table(gamma)
}

pub fn sigma_matrix() -> [[i8; 8]; 8] {
    sign_table(sigma)
}

/// `σ11 = (σ(a_j, a_k))_{j,k}`.
pub fn sigma11() -> [[i8; 4]; 4] {
    let mut m = [[0i8; 4]; 4];
    for (j, row) in m.iter_mut().enumerate() {
        for (k, x) in row.iter_mut().enumerate() {
            *x = sigma(a(j), a(k));
        }
    }
    m
}

/// A composition algebra: the involution is the standard conjugation.
#[derive(Clone, Debug)]
pub struct CompositionTable<F> {
    pub alg: InvolutiveAlgebra<F>,
    /// `ℤ2³` degree of each basis vector, when the basis is homogeneous.
    pub degrees: Option<Vec<Bits3>>,
}

impl<F: Scalar> CompositionTable<F> {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.alg.mul(x, y)
    }

    pub fn conj(&self, x: &[F]) -> Vec<F> {
        self.alg.bar(x)
    }

    /// The scalar `λ` with `v = λ·1`; panics if `v` is not a multiple of 1.
    pub fn scalar_part(&self, v: &[F]) -> F {
        let unit = self.alg.unit();
        let (k, u) = unit.iter().next().expect("nonzero unit");
        let lam = v[k].mul_ref(&u.checked_inv().expect("nonzero"));
        debug_assert_eq!(SparseVec::from_dense(v), unit.scaled(&lam), "not a scalar multiple of 1");
        lam
    }

    /// `n(x)` with `x x̄ = n(x)·1`.
    pub fn norm(&self, x: &[F]) -> F {
        self.scalar_part(&self.mul(x, &self.conj(x)))
    }

    /// Polar form with `x ȳ + y x̄ = n(x, y)·1`, so `n(x, x) = 2n(x)`.
    pub fn norm_bilinear(&self, x: &[F], y: &[F]) -> F {
        let a = self.mul(x, &self.conj(y));
        let b = self.mul(y, &self.conj(x));
        self.scalar_part(&crate::algebra::add(&a, &b))
    }

    /// `σ/γ`-style JSON export is only meaningful for the octonion basis.
    pub fn to_json(&self) -> crate::algebra::AlgebraJson {
        self.alg.to_json()
    }
}

fn signed<F: Scalar>(k: usize, sgn: i8) -> SparseVec<F> {
    SparseVec::single(k, F::from_i64(sgn as i64))
}

fn twisted_group_algebra<F: Scalar>(degs: &[Bits3], labels: Vec<String>) -> CompositionTable<F> {
    let idx = |g: Bits3| degs.iter().position(|&d| d == g).expect("closed support");
    let rule = |i: usize, j: usize| signed(idx(add3(degs[i], degs[j])), sigma(degs[i], degs[j]));
    let invol = Operator::from_fn(degs.len(), |i| signed(i, s(degs[i])));
    let alg = InvolutiveAlgebra::from_rule(labels, rule, invol, SparseVec::unit(idx(A0)));
    CompositionTable { alg, degrees: Some(degs.to_vec()) }
}

/// The split octonions with basis `x_g`, `x_g x_h = σ(g,h) x_{g+h}`,
/// `x̄_g = s(g) x_g`, ordered `x_{a0..a3}, x_{g0+a0..a3}`.
pub fn build_split_octonions<F: Scalar>() -> CompositionTable<F> {
    let degs: Vec<Bits3> = (0..8).map(oct_degree).collect();
    twisted_group_algebra(&degs, (0..8).map(oct_label).collect())
}

/// The quaternion subalgebra spanned by `x_{a0..a3}`.
pub fn octonion_quaternions<F: Scalar>() -> CompositionTable<F> {
    let degs: Vec<Bits3> = (0..4).map(oct_degree).collect();
    twisted_group_algebra(&degs, (0..4).map(oct_label).collect())
}

/// `M2(F)` with basis `E11, E12, E21, E22` and the adjugate involution.
pub fn m2_quaternions<F: Scalar>() -> CompositionTable<F> {
    // index = 2*(row) + col
    let rule = |i: usize, j: usize| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        if b == c {
            SparseVec::unit(2 * a + d)
        } else {
            SparseVec::new()
        }
    };
    let invol = Operator::from_columns(vec![
        SparseVec::unit(3),
        signed(1, -1),
        signed(2, -1),
        SparseVec::unit(0),
    ]);
    let unit = SparseVec::from_pairs(vec![(0, F::one()), (3, F::one())]);
    let labels = ["E11", "E12", "E21", "E22"].iter().map(|s| s.to_string()).collect();
    CompositionTable { alg: InvolutiveAlgebra::from_rule(labels, rule, invol, unit), degrees: None }
}

/// Isomorphism `M2(F) → span{x_{a0..a3}}` determined by
/// `E11−E22 ↦ i·x_{a1}` and `E12−E21 ↦ x_{a2}`.
pub fn m2_to_octonion_quaternions<F: Scalar>() -> Operator<F> {
    let half = F::from_ratio(1, 2);
    let hi = half.mul_ref(&F::imag_unit());
    let v = |pairs: Vec<(usize, F)>| SparseVec::from_pairs(pairs);
    // h = i x_{a1}, w = x_{a2}, hw = i x_{a1} x_{a2} = i x_{a3}
    Operator::from_columns(vec![
        v(vec![(0, half.clone()), (1, hi.clone())]),
        v(vec![(2, half.clone()), (3, hi.clone())]),
        v(vec![(2, -half.clone()), (3, hi.clone())]),
        v(vec![(0, half), (1, -hi)]),
    ])
}

/// Cayley–Dickson double `Q ⊕ uQ` of a Hurwitz algebra, `u² = μ·1`.
pub fn cd_compose<F: Scalar>(q: &CompositionTable<F>, mu: &F) -> Result<CompositionTable<F>, AlgebraError> {
    let alg = cd_double_with(&q.alg, q.alg.involution(), mu, "u")?;
    Ok(CompositionTable { alg, degrees: None })
}

/// Outcome of checking the four sign properties of the octonion basis.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BasisLemmaReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl BasisLemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks P11, P22, P12 and P21 for all arguments and `j = 1, 2, 3`.
pub fn verify_basis_lemma() -> BasisLemmaReport {
    let q: Vec<Bits3> = (0..4).map(a).collect();
    let qp: Vec<Bits3> = q.iter().map(|&g| add3(G0, g)).collect();
    let nx = |j: usize| j % 3 + 1;
    let mut rep = BasisLemmaReport::default();
    let mut check = |name: &str, j: usize, x: Bits3, y: Bits3, lhs: i8, rhs: i8| {
        rep.checked += 1;
        if lhs != rhs {
            rep.violations.push(format!("{name} j={j} at {x:?},{y:?}: {lhs} != {rhs}"));
        }
    };
    for j in 1..=3 {
        let (j1, j2) = (nx(j), nx(nx(j)));
        let (aj, aj1) = (a(j), a(j1));
        for &g in &q {
            for &g2 in &q {
                check("P11", j, g, g2, gamma(g, g2), gamma(add3(g, aj), add3(g2, aj1)));
            }
        }
        for &h in &qp {
            for &h2 in &qp {
                let rhs = sigma_j(j, h) * sigma_j(j1, h2) * gamma(add3(h, aj), add3(h2, aj1));
                check("P22", j, h, h2, gamma(h, h2), rhs);
            }
        }
        for &g in &q {
            for &h in &qp {
                let gh = add3(g, h);
                let rhs12 = sigma_j(j1, h) * sigma_j(j2, gh) * gamma(add3(g, aj), add3(h, aj1));
                check("P12", j, g, h, gamma(g, h), rhs12);
                let rhs21 = sigma_j(j, h) * sigma_j(j2, gh) * gamma(add3(h, aj), add3(g, aj1));
                check("P21", j, h, g, gamma(h, g), rhs21);
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_homomorphism;
    use crate::exactnum::GaussRat;
    use num_traits::Zero;

    type F = GaussRat;

    #[test]
    fn psi_examples() {
        assert_eq!(psi(A1, A1), 1);
        assert_eq!(psi(A1, A2), 0);
        for k in 0..8 {
            assert_eq!(psi(A0, oct_degree(k)), 0);
        }
    }

    #[test]
    fn sign_examples() {
        assert_eq!(gamma(A0, A0), 1);
        assert_eq!(gamma(A1, A1), -1);
        assert_eq!(sigma(A1, A2), 1);
        assert_eq!(s(A0), 1);
        assert!((1..8).all(|k| s(oct_degree(k)) == -1));
    }

    #[test]
    fn octonion_examples() {
        let c = build_split_octonions::<F>();
        c.alg.validate().unwrap();
        let x = |k| c.alg.basis(k);
        assert_eq!(c.mul(&x(1), &x(2)), x(3));
        assert_eq!(c.norm(&x(1)), F::from_int(1));
        // para-product x*y = x̄ȳ realizes γ
        for i in 0..8 {
            for j in 0..8 {
                let p = c.mul(&c.conj(&x(i)), &c.conj(&x(j)));
                let k = oct_index(add3(oct_degree(i), oct_degree(j)));
                let expect = crate::algebra::scale(&F::from_i64(gamma(oct_degree(i), oct_degree(j)) as i64), &x(k));
                assert_eq!(p, expect);
            }
        }
        // basis is orthogonal for the norm
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert!(c.norm_bilinear(&x(i), &x(j)).is_zero());
                }
            }
        }
    }

    #[test]
    fn sigma_j_rows_match_sigma11() {
        let m = sigma11();
        for j in 1..=3 {
            for k in 0..4 {
                assert_eq!(sigma_j(j, add3(G0, a(k))), m[j][k]);
            }
        }
    }

    #[test]
    fn basis_lemma_holds() {
        let r = verify_basis_lemma();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.checked, 3 * 4 * 16);
    }

    #[test]
    fn m2_is_isomorphic_to_octonion_quaternions() {
        let m2 = m2_quaternions::<F>();
        let q = octonion_quaternions::<F>();
        m2.alg.validate().unwrap();
        q.alg.validate().unwrap();
        check_homomorphism(&m2.alg, &q.alg, &m2_to_octonion_quaternions()).unwrap();
    }

    #[test]
    fn doubling() {
        let q = octonion_quaternions::<F>();
        let c = cd_compose(&q, &F::from_int(1)).unwrap();
        assert_eq!(c.dim(), 8);
        c.alg.validate().unwrap();
        let u = c.alg.basis(4);
        assert_eq!(c.mul(&u, &u), c.alg.unit_dense());
        assert!(cd_compose(&q, &F::from_int(0)).is_err());
        // (q1, q2) ↦ q1 + (i·x_{g0}) q2 is an isomorphism onto the octonions.
        let oct = build_split_octonions::<F>();
        let ixg0 = crate::algebra::scale(&F::i(), &oct.alg.basis(4));
        let map = Operator::from_fn(8, |k| {
            if k < 4 {
                SparseVec::unit(k)
            } else {
                SparseVec::from_dense(&oct.mul(&ixg0, &oct.alg.basis(k - 4)))
            }
        });
        check_homomorphism(&c.alg, &oct.alg, &map).unwrap();
    }
}
