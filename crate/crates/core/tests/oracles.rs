//! Published tables and closed-form values checked against the constructions.

use brown_core::brown::model_b::{build_model_b, BElt};
use brown_core::composition::{build_split_octonions, gamma_matrix, sigma11, verify_basis_lemma};
use brown_core::grading_groups::named;
use brown_core::jordan::{build_albert, OrbitLabel};
use brown_core::structurable::v_op;
use brown_core::{Field, Scalar};
use num_traits::{One, Zero};

const GAMMA11: [[i8; 4]; 4] = [[1, -1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1], [-1, 1, -1, -1]];
const GAMMA12: [[i8; 4]; 4] = [[-1, -1, -1, -1], [-1, 1, -1, 1], [-1, 1, 1, -1], [-1, -1, 1, 1]];
const GAMMA21: [[i8; 4]; 4] = [[-1, 1, 1, 1], [-1, -1, -1, 1], [-1, 1, -1, -1], [-1, -1, 1, -1]];
const GAMMA22: [[i8; 4]; 4] = [[-1, -1, -1, -1], [1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1]];
const SIGMA11: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];

fn block(m: &[[i8; 8]; 8], r: usize, c: usize) -> [[i8; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for (j, row) in out.iter_mut().enumerate() {
        for (k, x) in row.iter_mut().enumerate() {
            *x = m[4 * r + j][4 * c + k];
        }
    }
    out
}

#[test]
fn gamma_blocks_match_printed_tables() {
    let g = gamma_matrix();
    assert_eq!(block(&g, 0, 0), GAMMA11);
    assert_eq!(block(&g, 0, 1), GAMMA12);
    assert_eq!(block(&g, 1, 0), GAMMA21);
    assert_eq!(block(&g, 1, 1), GAMMA22);
    assert_eq!(sigma11(), SIGMA11);
}

#[test]
fn basis_lemma_has_no_violations() {
    let r = verify_basis_lemma();
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn octonion_unit_and_norm() {
    let o = build_split_octonions::<Field>();
    let mut e = vec![Field::zero(); 8];
    e[0] = Field::one();
    assert_eq!(o.norm(&e), Field::one());
    // every x_g has norm 1, so x_0 + i·x_g is isotropic
    for k in 1..8 {
        let mut x = e.clone();
        x[k] = Field::i();
        assert!(o.norm(&x).is_zero(), "x_0 + i·x_{k}");
    }
}

#[test]
fn albert_rank_ladder() {
    let alb = build_albert::<Field>();
    let e1 = alb.e(1);
    let e23: Vec<Field> = alb.e(2).iter().zip(alb.e(3)).map(|(a, b)| a.clone() + b).collect();
    assert_eq!(alb.rank(&e1), 1);
    assert_eq!(alb.rank(&e23), 10);
    assert_eq!(alb.rank(&alb.one()), 27);
    assert_eq!(alb.n(&alb.one()), Field::one());
    assert_eq!(alb.t(&alb.one()), Field::from_i64(3));
    assert_eq!(alb.classify_orbit(&alb.zero()), OrbitLabel::O0);
}

#[test]
fn v_of_the_skew_line_is_minus_identity() {
    // s0² = 1 and s̄0 = −s0 give V_{s0,s0}z = −z.
    let b = build_model_b::<Field>().unwrap();
    let s0 = b.graded.basis(BElt::S0.index());
    assert_eq!(b.graded.mul(&s0, &s0), b.graded.unit_dense());
    assert_eq!(v_op(&b.graded, &s0, &s0), brown_core::linalg::Operator::scalar(56, -Field::one()));
    assert_eq!(b.grading.degrees[BElt::S0.index()], named::g0());
}
