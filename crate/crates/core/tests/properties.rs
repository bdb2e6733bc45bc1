//! Randomized invariants over small exact inputs.

use brown_core::composition::build_split_octonions;
use brown_core::grading_groups::AbelianGroup;
use brown_core::jordan::build_albert;
use brown_core::linalg::{SpanBasis, SparseVec};
use brown_core::{Field, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = Field> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| {
        let r = Field::int_pair(a, b);
        r * <Field as Scalar>::from_ratio(1, d)
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Field>> {
    prop::collection::vec((-2i64..=2, -1i64..=1).prop_map(|(a, b)| Field::int_pair(a, b)), n)
}

fn scale(c: &Field, v: &[Field]) -> Vec<Field> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.checked_inv().unwrap(), Field::one());
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in vector(8), y in vector(8)) {
        let o = build_split_octonions::<Field>();
        let xy = o.mul(&x, &y);
        prop_assert_eq!(o.norm(&xy), o.norm(&x) * o.norm(&y));
        // left alternative law
        prop_assert_eq!(o.mul(&x, &xy), o.mul(&o.mul(&x, &x), &y));
    }

    #[test]
    fn albert_adjoint_identities(x in vector(27)) {
        let alb = build_albert::<Field>();
        let xs = alb.sharp(&x);
        prop_assert_eq!(alb.sharp(&xs), scale(&alb.n(&x), &x));
        prop_assert_eq!(alb.n(&xs), alb.n(&x) * alb.n(&x));
        prop_assert_eq!(alb.t(&xs), alb.s(&x));
    }

    #[test]
    fn z4_cubed_is_an_abelian_group(a in prop::array::uniform3(-5i64..5), b in prop::array::uniform3(-5i64..5), c in prop::array::uniform3(-5i64..5)) {
        let g = AbelianGroup::z4_cubed();
        let (x, y, z) = (g.t(&a), g.t(&b), g.t(&c));
        let xy = g.add(&x, &y).unwrap();
        prop_assert_eq!(&xy, &g.add(&y, &x).unwrap());
        prop_assert_eq!(g.add(&xy, &z).unwrap(), g.add(&x, &g.add(&y, &z).unwrap()).unwrap());
        prop_assert!(g.is_zero(&g.sub(&x, &x).unwrap()));
        prop_assert!(g.is_zero(&g.scale(&x, 4).unwrap()));
    }

    #[test]
    fn span_coordinates_reconstruct(vs in prop::collection::vec(vector(6), 1..8), cs in prop::collection::vec(-3i64..=3, 8)) {
        let mut span = SpanBasis::<Field>::new();
        let mut kept = Vec::new();
        for v in &vs {
            let sv = SparseVec::from_dense(v);
            if span.insert(sv.clone()) {
                kept.push(sv);
            }
        }
        let mut target = SparseVec::new();
        for (v, c) in kept.iter().zip(&cs) {
            target.add_scaled(&Field::from_i64(*c), v);
        }
        let coords = span.coords(&target).expect("in span");
        let mut back = SparseVec::new();
        for (k, c) in coords.iter() {
            back.add_scaled(c, &kept[k]);
        }
        prop_assert_eq!(back, target);
    }
}
