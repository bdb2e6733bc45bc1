//! Model B: the structurable matrix algebra of the Albert algebra with the
//! homogeneous basis `B_A` and its `ℤ4³`-grading.

use std::collections::BTreeMap;

use serde::Serialize;

use super::model_a::ModelError;
use crate::algebra::InvolutiveAlgebra;
use crate::composition::{a as a_bits, add3, gamma, oct_index, sigma_j, to_z4, Bits3, G0};
use crate::exactnum::Scalar;
use crate::grading_groups::{named, AbelianGroup, GroupElt};
use crate::gradings::Grading;
use crate::jordan::{build_albert, Albert};
use crate::linalg::SparseVec;
use crate::structurable::{layout, matrix_structurable, s0};

/// Basis element of `B_A` before right multiplication by `s0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Base {
    One,
    /// `α_{j,g}`, `g ∈ {a0, …, a3}`.
    Alpha(usize, Bits3),
    /// `α'_{j,h}`, `h ∈ g0 + {a0, …, a3}`.
    AlphaP(usize, Bits3),
    Eps(usize),
}

/// `base` or `base·s0`. In particular `s0 = One·s0` and `ε'_j = ε_j s0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BElt {
    pub base: Base,
    pub s: bool,
}

fn next(j: usize) -> usize {
    j % 3 + 1
}

fn plain(base: Base) -> BElt {
    BElt { base, s: false }
}

fn with_s(base: Base) -> BElt {
    BElt { base, s: true }
}

/// Position of `a_i` among `a0..a3`, ignoring the `g0` bit.
fn a_pos(g: Bits3) -> usize {
    (0..4).find(|&i| a_bits(i) == [g[0], g[1], 0]).expect("a_i")
}

impl BElt {
    pub const ONE: BElt = BElt { base: Base::One, s: false };
    pub const S0: BElt = BElt { base: Base::One, s: true };

    /// Layout: `1`, `s0`, `α_{j,g}` (12), `α_{j,g}s0` (12), `α'_{j,h}` (12),
    /// `α'_{j,h}s0` (12), `ε_j` (3), `ε'_j` (3).
    pub fn index(&self) -> usize {
        let s = self.s as usize;
        match self.base {
            Base::One => s,
            Base::Alpha(j, g) => 2 + 12 * s + 4 * (j - 1) + a_pos(g),
            Base::AlphaP(j, h) => 26 + 12 * s + 4 * (j - 1) + a_pos(h),
            Base::Eps(j) => 50 + 3 * s + j - 1,
        }
    }

    pub fn from_index(k: usize) -> BElt {
        match k {
            0 | 1 => BElt { base: Base::One, s: k == 1 },
            2..=49 => {
                let (block, r) = ((k - 2) / 12, (k - 2) % 12);
                let (j, i) = (r / 4 + 1, r % 4);
                let base = if block < 2 { Base::Alpha(j, a_bits(i)) } else { Base::AlphaP(j, add3(G0, a_bits(i))) };
                BElt { base, s: block % 2 == 1 }
            }
            50..=55 => BElt { base: Base::Eps((k - 50) % 3 + 1), s: k >= 53 },
            _ => panic!("B_A has 56 elements"),
        }
    }

    pub fn all() -> Vec<BElt> {
        (0..56).map(BElt::from_index).collect()
    }

    pub fn degree(&self) -> GroupElt {
        let g = AbelianGroup::z4_cubed();
        let d = match self.base {
            Base::One => g.zero(),
            Base::Alpha(j, a) => g.add(&named::b(j), &to_z4(a)).expect("z4"),
            Base::AlphaP(j, h) => g.sum([&g.t(&[1, 0, 0]), &named::b(j), &to_z4(h)]).expect("z4"),
            Base::Eps(j) => named::a(j),
        };
        if self.s {
            g.add(&d, &named::g0()).expect("z4")
        } else {
            d
        }
    }

    pub fn label(&self) -> String {
        let bits = |g: Bits3| {
            let i = a_pos(g);
            match (g[2] == 1, i) {
                (false, 0) => "0".to_string(),
                (false, i) => format!("a{i}"),
                (true, 0) => "g0".to_string(),
                (true, i) => format!("g0+a{i}"),
            }
        };
        let b = match self.base {
            Base::One if self.s => return "s0".into(),
            Base::One => return "1".into(),
            Base::Eps(j) if self.s => return format!("eps'{j}"),
            Base::Eps(j) => format!("eps{j}"),
            Base::Alpha(j, g) => format!("alpha[{j},{}]", bits(g)),
            Base::AlphaP(j, h) => format!("alpha'[{j},{}]", bits(h)),
        };
        if self.s {
            format!("{b}s0")
        } else {
            b
        }
    }
}

/// A linear combination of `B_A` elements.
pub type Combo<F> = Vec<(F, BElt)>;

fn combo_vec<F: Scalar>(c: &Combo<F>) -> SparseVec<F> {
    let mut v = SparseVec::new();
    for (x, e) in c {
        v.add_scaled(x, &SparseVec::unit(e.index()));
    }
    v
}

fn term<F: Scalar>(c: F, e: BElt) -> Combo<F> {
    vec![(c, e)]
}

fn toggle(e: BElt) -> BElt {
    BElt { base: e.base, s: !e.s }
}

/// `z·s0`: toggles the `s0` factor (`(xs0)s0 = x`).
pub fn right_s0<F: Scalar>(c: &Combo<F>) -> Combo<F> {
    c.iter().map(|(x, e)| (x.clone(), toggle(*e))).collect()
}

/// `s0·z`: `s0·1 = s0`, `s0·s0 = 1`, and `s0·z = −z·s0` otherwise.
pub fn left_s0<F: Scalar>(c: &Combo<F>) -> Combo<F> {
    c.iter()
        .map(|(x, e)| if e.base == Base::One { (x.clone(), toggle(*e)) } else { (-x.clone(), toggle(*e)) })
        .collect()
}

/// The products listed in the eighteen families, with the family name.
/// Returns `None` for pairs the families do not list.
pub fn literal_product<F: Scalar>(x: BElt, y: BElt) -> Option<(&'static str, Combo<F>)> {
    use Base::*;
    let i = F::imag_unit;
    let n = |k: i64| F::from_i64(k);
    let zero = Vec::new;
    let r = match (x.base, x.s, y.base, y.s) {
        (One, true, One, true) => ("i", term(n(1), BElt::ONE)),
        (Eps(j), false, Eps(k), false) if j == k => ("i", term(n(1), BElt::ONE)),
        (Eps(j), true, Eps(k), true) if j == k => ("i", term(n(-1), BElt::ONE)),
        (Eps(j), false, Eps(k), false) if k == next(j) => ("i", term(n(1), plain(Eps(next(k))))),
        (Eps(j), false, Eps(k), true) if j == k => ("ii", term(n(1), BElt::S0)),
        (Eps(j), true, Eps(k), true) if k == next(j) => ("ii", term(n(1), plain(Eps(next(k))))),
        (Eps(j), false, Eps(k), true) if k == next(j) => ("ii", term(n(-1), with_s(Eps(next(k))))),
        (Eps(k), false, Eps(j), true) if k == next(j) => ("ii", term(n(-1), with_s(Eps(next(k))))),
        (Eps(j), es, Alpha(k, g), as_) if j == k => {
            let g2 = add3(g, a_bits(j));
            if es == as_ {
                ("iii", term(n(-1), plain(Alpha(j, g2))))
            } else {
                ("iii", term(n(1), with_s(Alpha(j, g2))))
            }
        }
        (Eps(j), es, AlphaP(k, h), as_) if j == k => {
            let h2 = add3(h, a_bits(j));
            let c = i() * n(sigma_j(j, h) as i64);
            if es == as_ {
                ("iv", term(-c, plain(AlphaP(j, h2))))
            } else {
                ("iv", term(c, with_s(AlphaP(j, h2))))
            }
        }
        (Eps(_), _, Alpha(..) | AlphaP(..), _) => ("v", zero()),
        (Alpha(j, g), s1, Alpha(k, g2), s2) if j == k && g == g2 && s1 == s2 => {
            ("vi", term(n(-8), plain(Eps(j))))
        }
        (Alpha(j, g), s1, Alpha(k, g2), s2) if j == k && g2 == add3(g, a_bits(j)) && s1 == s2 => {
            ("vi", term(n(if s1 { -8 } else { 8 }), BElt::ONE))
        }
        (AlphaP(j, h), s1, AlphaP(k, h2), s2) if j == k && h == h2 && s1 == s2 => {
            ("vii", term(n(8), with_s(Eps(j))))
        }
        (AlphaP(j, h), s1, AlphaP(k, h2), s2) if j == k && h2 == add3(h, a_bits(j)) && s1 == s2 => {
            let c = n(if s1 { -8 } else { 8 }) * i() * n(sigma_j(j, h) as i64);
            ("vii", term(c, BElt::S0))
        }
        (Alpha(j, g), s1, Alpha(k, g2), s2) if j == k && g2 != g && g2 != add3(g, a_bits(j)) && (s1 <= s2) => {
            ("viii", zero())
        }
        (AlphaP(j, h), s1, AlphaP(k, h2), s2) if j == k && h2 != h && h2 != add3(h, a_bits(j)) && (s1 <= s2) => {
            ("ix", zero())
        }
        (Alpha(j, _), _, AlphaP(k, _), _) if j == k => ("x", zero()),
        (Alpha(j, g), s1, Alpha(k, g2), s2) if k == next(j) => {
            let t = next(k);
            let c = n(2 * gamma(g, g2) as i64);
            let target = add3(add3(g, g2), a_bits(t));
            if s1 == s2 {
                ("xi", term(c, plain(Alpha(t, target))))
            } else {
                ("xii", term(-c, with_s(Alpha(t, target))))
            }
        }
        (Alpha(j, g), s1, AlphaP(k, h), s2) if k == next(j) => {
            let t = next(k);
            let c = n(2 * sigma_j(k, h) as i64 * gamma(g, h) as i64) * i();
            let target = add3(add3(g, h), a_bits(t));
            if s1 == s2 {
                ("xiii", term(c, plain(AlphaP(t, target))))
            } else {
                ("xiv", term(-c, with_s(AlphaP(t, target))))
            }
        }
        (AlphaP(j, h), s1, Alpha(k, g), s2) if k == next(j) => {
            let t = next(k);
            let c = n(2 * sigma_j(j, h) as i64 * gamma(h, g) as i64) * i();
            let target = add3(add3(h, g), a_bits(t));
            if s1 == s2 {
                ("xv", term(c, plain(AlphaP(t, target))))
            } else {
                ("xvi", term(-c, with_s(AlphaP(t, target))))
            }
        }
        (AlphaP(j, h), s1, AlphaP(k, h2), s2) if k == next(j) => {
            let t = next(k);
            let c = n(2 * gamma(add3(h, a_bits(j)), add3(h2, a_bits(k))) as i64);
            let target = add3(add3(h, h2), a_bits(t));
            if s1 == s2 {
                ("xvii", term(-c, with_s(Alpha(t, target))))
            } else {
                ("xviii", term(c, plain(Alpha(t, target))))
            }
        }
        _ => return None,
    };
    Some(r)
}

/// `deg x + deg y = g0`, where `xy = −yx` for `x, y ∉ {1, s0}`.
pub fn anticommute(x: BElt, y: BElt) -> bool {
    let g = AbelianGroup::z4_cubed();
    g.add(&x.degree(), &y.degree()).expect("z4") == named::g0()
}

/// Predicted product `xy` and the rule that produced it: `unit`, `s0`, a
/// literal family, `commuted` (a listed `yx` and the commutation rule) or
/// `reduced` (peeling `s0` off a factor: `x(ys0) = s0(xy)`,
/// `(xs0)y = −(xy)s0`).
pub fn predicted_product<F: Scalar>(x: BElt, y: BElt) -> (String, Combo<F>) {
    if x == BElt::ONE {
        return ("unit".into(), term(F::one(), y));
    }
    if y == BElt::ONE {
        return ("unit".into(), term(F::one(), x));
    }
    if let Some((f, c)) = literal_product(x, y) {
        return (f.into(), c);
    }
    if x == BElt::S0 {
        return ("s0".into(), left_s0(&term(F::one(), y)));
    }
    if y == BElt::S0 {
        return ("s0".into(), right_s0(&term(F::one(), x)));
    }
    if let Some((_, c)) = literal_product::<F>(y, x) {
        let c = if anticommute(x, y) { c.into_iter().map(|(a, e)| (-a, e)).collect() } else { c };
        return ("commuted".into(), c);
    }
    if y.s {
        let (_, c) = predicted_product::<F>(x, toggle(y));
        return ("reduced".into(), left_s0(&c));
    }
    if x.s {
        let (_, c) = predicted_product::<F>(toggle(x), y);
        return ("reduced".into(), right_s0(&c).into_iter().map(|(a, e)| (-a, e)).collect());
    }
    unreachable!("every pair of plain elements is listed up to order")
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FamilyCount {
    pub checked: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductsReport {
    pub families: BTreeMap<String, FamilyCount>,
    pub commutation_checked: usize,
    pub commutation_failures: usize,
}

pub const LITERAL_FAMILIES: [&str; 18] =
    ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii"];

impl ProductsReport {
    pub fn passed(&self) -> bool {
        self.commutation_failures == 0
            && self.families.values().all(|f| f.mismatches == 0)
            && LITERAL_FAMILIES.iter().all(|f| self.families.get(*f).is_some_and(|c| c.checked > 0))
    }

    pub fn pairs_checked(&self) -> usize {
        self.families.values().map(|f| f.checked).sum()
    }
}

pub struct ModelB<F> {
    pub albert: Albert<F>,
    /// The structurable matrix algebra in its native basis.
    pub matrix: InvolutiveAlgebra<F>,
    /// `B_A` in native coordinates.
    pub basis: Vec<SparseVec<F>>,
    /// The algebra rewritten in `B_A`.
    pub graded: InvolutiveAlgebra<F>,
    pub grading: Grading,
}

/// Native coordinates of `B_A`.
pub fn basis_vectors<F: Scalar>(alb: &Albert<F>, m: &InvolutiveAlgebra<F>) -> Vec<SparseVec<F>> {
    let place = |top: &[F], bottom: &[F]| {
        let mut v = vec![F::zero(); 56];
        for k in 0..27 {
            v[layout::eta(k)] = top[k].clone();
            v[layout::eta_p(k)] = bottom[k].clone();
        }
        v
    };
    let x = |g: Bits3| {
        let mut o = vec![F::zero(); 8];
        o[oct_index(g)] = F::one();
        o
    };
    let s = s0::<F>();
    BElt::all()
        .into_iter()
        .map(|e| {
            let v = match e.base {
                Base::One => m.unit_dense(),
                Base::Alpha(j, g) => place(&alb.iota(j, &x(g)), &alb.iota(j, &x(add3(g, a_bits(j))))),
                Base::AlphaP(j, h) => {
                    let c = F::imag_unit() * F::from_i64(sigma_j(j, h) as i64);
                    let top: Vec<F> = alb.iota(j, &x(h)).iter().map(|t| c.mul_ref(t)).collect();
                    place(&top, &alb.iota(j, &x(add3(h, a_bits(j)))))
                }
                Base::Eps(j) => place(&alb.e(j), &alb.e(j)),
            };
            SparseVec::from_dense(&if e.s { m.mul(&v, &s) } else { v })
        })
        .collect()
}

pub fn build_model_b<F: Scalar>() -> Result<ModelB<F>, ModelError> {
    let albert = build_albert::<F>();
    let matrix = matrix_structurable(&albert);
    let basis = basis_vectors(&albert, &matrix);
    let labels = BElt::all().iter().map(BElt::label).collect();
    let graded = matrix.change_basis(&basis, labels)?;
    let mut grading = Grading::new(AbelianGroup::z4_cubed(), BElt::all().iter().map(BElt::degree).collect());
    let rep = grading.verify(&graded);
    if !rep.passed() {
        return Err(ModelError::Verification(format!("ℤ4³ grading: {:?}", rep.witness)));
    }
    Ok(ModelB { albert, matrix, basis, graded, grading })
}

impl<F: Scalar> ModelB<F> {
    /// Compares every basis product with the prediction, counting per
    /// family, and checks the commutation rule on `B_A ∖ {1, s0}`.
    pub fn check_products(&self) -> ProductsReport {
        let all = BElt::all();
        let mut families: BTreeMap<String, FamilyCount> = BTreeMap::new();
        let (mut commutation_checked, mut commutation_failures) = (0, 0);
        for &x in &all {
            for &y in &all {
                let (fam, c) = predicted_product::<F>(x, y);
                let actual = self.graded.mul_basis(x.index(), y.index());
                let entry = families.entry(fam).or_default();
                entry.checked += 1;
                if combo_vec(&c) != *actual {
                    entry.mismatches += 1;
                    entry.first_mismatch.get_or_insert((x.label(), y.label()));
                }
                if x.base != Base::One && y.base != Base::One {
                    commutation_checked += 1;
                    let yx = self.graded.mul_basis(y.index(), x.index());
                    let want = if anticommute(x, y) { yx.neg() } else { yx.clone() };
                    if *actual != want {
                        commutation_failures += 1;
                    }
                }
            }
        }
        ProductsReport { families, commutation_checked, commutation_failures }
    }

    /// For each basis element whose degree has order 4, `(x²)² ∈ F·1` and is
    /// nonzero.
    pub fn check_fourth_powers(&self) -> Result<usize, String> {
        let g = &self.grading.group;
        let one = self.graded.unit().clone();
        let mut n = 0;
        for e in BElt::all() {
            if g.order_of(&e.degree()).ok() != Some(4) {
                continue;
            }
            let x = SparseVec::unit(e.index());
            let x2 = self.graded.mul_sparse(&x, &x);
            let x4 = self.graded.mul_sparse(&x2, &x2);
            let lead = x4.get(0);
            if x4.is_zero() || x4 != one.scaled(&lead) {
                return Err(format!("({})⁴ is not a nonzero scalar", e.label()));
            }
            n += 1;
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;

    type F = GaussRat;

    #[test]
    fn index_roundtrip_and_degrees() {
        for k in 0..56 {
            assert_eq!(BElt::from_index(k).index(), k);
        }
        assert_eq!(BElt::S0.degree(), named::g0());
        assert_eq!(BElt::from_index(50).label(), "eps1");
        assert_eq!(BElt::from_index(53).label(), "eps'1");
    }

    #[test]
    fn model_b_products() {
        let m = build_model_b::<F>().unwrap();
        assert!(m.grading.is_fine_dim1());
        let r = m.check_products();
        assert!(r.passed(), "{:#?}", r);
        assert_eq!(r.pairs_checked(), 56 * 56);
        assert_eq!(r.commutation_failures, 0);
        assert!(m.check_fourth_powers().unwrap() > 0);
    }
}
