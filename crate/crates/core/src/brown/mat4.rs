//! 4×4 matrices over the scalar field, skew matrices, the hat map and the
//! `GL4` action on the block form `[[z, x], [y, zᵗ]]` of `H4(M2)`.

use rand::Rng;

use crate::exactnum::Scalar;
use crate::sample;

pub type M4<F> = [[F; 4]; 4];

pub fn m4<F: Scalar>(f: impl Fn(usize, usize) -> F) -> M4<F> {
    std::array::from_fn(|r| std::array::from_fn(|c| f(r, c)))
}

pub fn zero<F: Scalar>() -> M4<F> {
    m4(|_, _| F::zero())
}

pub fn identity<F: Scalar>() -> M4<F> {
    m4(|r, c| if r == c { F::one() } else { F::zero() })
}

pub fn unit<F: Scalar>(p: usize, q: usize) -> M4<F> {
    m4(|r, c| if (r, c) == (p, q) { F::one() } else { F::zero() })
}

pub fn mul<F: Scalar>(a: &M4<F>, b: &M4<F>) -> M4<F> {
    m4(|r, c| {
        let mut s = F::zero();
        for k in 0..4 {
            s.add_mul(&a[r][k], &b[k][c]);
        }
        s
    })
}

pub fn mul3<F: Scalar>(a: &M4<F>, b: &M4<F>, c: &M4<F>) -> M4<F> {
    mul(&mul(a, b), c)
}

pub fn add<F: Scalar>(a: &M4<F>, b: &M4<F>) -> M4<F> {
    m4(|r, c| a[r][c].clone() + b[r][c].clone())
}

pub fn sub<F: Scalar>(a: &M4<F>, b: &M4<F>) -> M4<F> {
    m4(|r, c| a[r][c].clone() - b[r][c].clone())
}

pub fn scale<F: Scalar>(s: &F, a: &M4<F>) -> M4<F> {
    m4(|r, c| s.mul_ref(&a[r][c]))
}

pub fn neg<F: Scalar>(a: &M4<F>) -> M4<F> {
    m4(|r, c| -a[r][c].clone())
}

pub fn transpose<F: Scalar>(a: &M4<F>) -> M4<F> {
    m4(|r, c| a[c][r].clone())
}

pub fn trace<F: Scalar>(a: &M4<F>) -> F {
    (0..4).fold(F::zero(), |s, k| s + a[k][k].clone())
}

pub fn is_zero<F: Scalar>(a: &M4<F>) -> bool {
    a.iter().flatten().all(|x| x.is_zero())
}

pub fn pow<F: Scalar>(a: &M4<F>, k: u32) -> M4<F> {
    (0..k).fold(identity(), |acc, _| mul(&acc, a))
}

pub fn det<F: Scalar>(a: &M4<F>) -> F {
    // Laplace expansion along the first row.
    fn minor3<F: Scalar>(a: &M4<F>, skip: usize) -> F {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let e = |r: usize, k: usize| a[r][cols[k]].clone();
        e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
            + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
    }
    let mut d = F::zero();
    for c in 0..4 {
        let t = a[0][c].mul_ref(&minor3(a, c));
        if c % 2 == 0 {
            d += &t;
        } else {
            d -= &t;
        }
    }
    d
}

/// Gauss–Jordan inverse; `None` for a singular matrix.
pub fn inverse<F: Scalar>(a: &M4<F>) -> Option<M4<F>> {
    let mut m: Vec<Vec<F>> = (0..4)
        .map(|r| (0..8).map(|c| if c < 4 { a[r][c].clone() } else if c - 4 == r { F::one() } else { F::zero() }).collect())
        .collect();
    for col in 0..4 {
        let p = (col..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].checked_inv()?;
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..8 {
                    let t = f.mul_ref(&m[col][c]);
                    m[r][c] -= &t;
                }
            }
        }
    }
    Some(m4(|r, c| m[r][c + 4].clone()))
}

/// Skew matrix with upper entries `x12, x13, x14, x23, x24, x34`.
pub fn skew<F: Scalar>(e: [F; 6]) -> M4<F> {
    let mut m = zero();
    for (k, &(p, q)) in crate::jordan::PAIRS.iter().enumerate() {
        m[p][q] = e[k].clone();
        m[q][p] = -e[k].clone();
    }
    m
}

pub fn skew_entries<F: Scalar>(x: &M4<F>) -> [F; 6] {
    std::array::from_fn(|k| {
        let (p, q) = crate::jordan::PAIRS[k];
        x[p][q].clone()
    })
}

pub fn is_skew<F: Scalar>(x: &M4<F>) -> bool {
    *x == neg(&transpose(x))
}

/// The hat map: `(x12, x13, x14, x23, x24, x34) ↦ (x34, −x24, x23, x14, −x13, x12)`.
pub fn hat<F: Scalar>(x: &M4<F>) -> M4<F> {
    let [a, b, c, d, e, z] = skew_entries(x);
    skew([z, -e, d, c, -b, a])
}

pub fn pfaffian<F: Scalar>(x: &M4<F>) -> F {
    x[0][1].mul_ref(&x[2][3]) - x[0][2].mul_ref(&x[1][3]) + x[0][3].mul_ref(&x[1][2])
}

/// `X = diag(1, i, −1, −i)`.
pub fn pauli_x<F: Scalar>() -> M4<F> {
    m4(|r, c| if r == c { F::pow_i(r as i64) } else { F::zero() })
}

/// The cyclic shift `Y`.
pub fn pauli_y<F: Scalar>() -> M4<F> {
    m4(|r, c| if c == (r + 1) % 4 { F::one() } else { F::zero() })
}

/// `X^k Y^ℓ`.
pub fn pauli<F: Scalar>(k: u32, l: u32) -> M4<F> {
    mul(&pow(&pauli_x(), k), &pow(&pauli_y(), l))
}

/// The skew basis `ξ1, …, ξ6` adapted to the `Y`-action.
pub fn xi<F: Scalar>(n: usize) -> M4<F> {
    let o = F::one;
    let z = F::zero;
    let i = F::imag_unit;
    match n {
        1 => skew([o(), z(), -o(), o(), z(), o()]),
        2 => skew([o(), z(), o(), -o(), z(), o()]),
        3 => skew([o(), z(), i(), i(), z(), -o()]),
        4 => skew([o(), z(), -i(), -i(), z(), -o()]),
        5 => skew([z(), o(), z(), z(), i(), z()]),
        6 => skew([z(), o(), z(), z(), -i(), z()]),
        _ => panic!("xi_n is defined for n in 1..=6"),
    }
}

pub fn random<F: Scalar, R: Rng>(rng: &mut R) -> M4<F> {
    std::array::from_fn(|_| std::array::from_fn(|_| sample::scalar(rng)))
}

pub fn random_skew<F: Scalar, R: Rng>(rng: &mut R) -> M4<F> {
    skew(std::array::from_fn(|_| sample::scalar(rng)))
}

pub fn random_invertible<F: Scalar, R: Rng>(rng: &mut R) -> M4<F> {
    loop {
        let g: M4<F> = random(rng);
        if !det(&g).is_zero() {
            return g;
        }
    }
}

/// An element `[[z, x], [y, zᵗ]]` of `H4(M2)`: `z` arbitrary, `x`, `y` skew.
#[derive(Clone, Debug, PartialEq)]
pub struct HBlocks<F> {
    pub z: M4<F>,
    pub x: M4<F>,
    pub y: M4<F>,
}

impl<F: Scalar> HBlocks<F> {
    pub fn zero() -> Self {
        HBlocks { z: zero(), x: zero(), y: zero() }
    }

    /// Jordan product `(ab + ba)/2` of the 8×8 block matrices.
    pub fn jordan(&self, o: &Self) -> Self {
        let half = F::from_ratio(1, 2);
        let (z1, x1, y1) = (&self.z, &self.x, &self.y);
        let (z2, x2, y2) = (&o.z, &o.x, &o.y);
        let (t1, t2) = (transpose(z1), transpose(z2));
        let z = add(&add(&mul(z1, z2), &mul(z2, z1)), &add(&mul(x1, y2), &mul(x2, y1)));
        let x = add(&add(&mul(z1, x2), &mul(x2, &t1)), &add(&mul(z2, x1), &mul(x1, &t2)));
        let y = add(&add(&mul(&t1, y2), &mul(y2, z1)), &add(&mul(&t2, y1), &mul(y1, z2)));
        HBlocks { z: scale(&half, &z), x: scale(&half, &x), y: scale(&half, &y) }
    }
}

/// `g·[[z,x],[y,zᵗ]] = [[gzg⁻¹, gxgᵗ], [(g⁻¹)ᵗyg⁻¹, ·]]`, optionally scaling the
/// `x` and `y` blocks by `cx`, `cy` (used for the `X̃` action over `ℚ(i)`).
pub fn gl4_act_scaled<F: Scalar>(g: &M4<F>, ginv: &M4<F>, cx: &F, cy: &F, a: &HBlocks<F>) -> HBlocks<F> {
    let gt = transpose(g);
    let git = transpose(ginv);
    HBlocks {
        z: mul3(g, &a.z, ginv),
        x: scale(cx, &mul3(g, &a.x, &gt)),
        y: scale(cy, &mul3(&git, &a.y, ginv)),
    }
}

pub fn gl4_act<F: Scalar>(g: &M4<F>, a: &HBlocks<F>) -> Option<HBlocks<F>> {
    let ginv = inverse(g)?;
    Some(gl4_act_scaled(g, &ginv, &F::one(), &F::one(), a))
}

/// Checks on `trials` random exact inputs:
/// `hat(gxgᵗ) = det(g)(g⁻¹)ᵗ x̂ g⁻¹`, `hat(zx + xzᵗ) = tr(z)x̂ − (zᵗx̂ + x̂z)`,
/// `xy + ŷx̂ = ½tr(xy)·1` and `x x̂ = −pf(x)·1`. Returns the name of the
/// first identity that fails.
pub fn check_hat_identities<F: Scalar>(trials: usize, seed: u64) -> Result<(), String> {
    let half = F::from_ratio(1, 2);
    for t in 0..trials {
        let mut rng = sample::trial_rng(seed, t as u64);
        let x: M4<F> = random_skew(&mut rng);
        let y: M4<F> = random_skew(&mut rng);
        let z: M4<F> = random(&mut rng);
        let g: M4<F> = random_invertible(&mut rng);
        let gi = inverse(&g).expect("invertible");
        let lhs = hat(&mul3(&g, &x, &transpose(&g)));
        let rhs = scale(&det(&g), &mul3(&transpose(&gi), &hat(&x), &gi));
        if lhs != rhs {
            return Err(format!("hat(gxgᵗ) identity, trial {t}"));
        }
        let lhs = hat(&add(&mul(&z, &x), &mul(&x, &transpose(&z))));
        let hx = hat(&x);
        let rhs = sub(&scale(&trace(&z), &hx), &add(&mul(&transpose(&z), &hx), &mul(&hx, &z)));
        if lhs != rhs {
            return Err(format!("hat(zx + xzᵗ) identity, trial {t}"));
        }
        let lhs = add(&mul(&x, &y), &mul(&hat(&y), &hx));
        if lhs != scale(&half.mul_ref(&trace(&mul(&x, &y))), &identity()) {
            return Err(format!("xy + ŷx̂ identity, trial {t}"));
        }
        if mul(&x, &hx) != scale(&-pfaffian(&x), &identity()) {
            return Err(format!("x x̂ = −pf(x) identity, trial {t}"));
        }
    }
    Ok(())
}

/// `gl4_act(g, ·)` is an automorphism of `H4(M2)` in block form, tested on
/// random pairs.
pub fn check_gl4_automorphism<F: Scalar>(g: &M4<F>, trials: usize, seed: u64) -> Result<(), String> {
    for t in 0..trials {
        let mut rng = sample::trial_rng(seed, t as u64);
        let mut r = || HBlocks { z: random(&mut rng), x: random_skew(&mut rng), y: random_skew(&mut rng) };
        let (a, b) = (r(), r());
        let act = |h: &HBlocks<F>| gl4_act(g, h).ok_or_else(|| "singular g".to_string());
        if act(&a.jordan(&b))? != act(&a)?.jordan(&act(&b)?) {
            return Err(format!("not multiplicative, trial {t}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use num_traits::{One, Zero};

    use super::*;
    use crate::exactnum::GaussRat;

    type F = GaussRat;

    #[test]
    fn hat_examples() {
        let x = skew::<F>([F::one(), F::zero(), F::zero(), F::zero(), F::zero(), F::zero()]);
        assert_eq!(hat(&x)[2][3], F::one());
        let e = sub(&add(&unit(0, 1), &unit(2, 3)), &add(&unit(1, 0), &unit(3, 2)));
        assert_eq!(pfaffian::<F>(&e), F::one());
        assert_eq!(mul(&e, &hat(&e)), neg(&identity()));
    }

    #[test]
    fn inverse_and_det() {
        let mut rng = sample::rng(3);
        let g: M4<F> = random_invertible(&mut rng);
        assert_eq!(mul(&g, &inverse(&g).unwrap()), identity());
        assert_eq!(det(&pauli_x::<F>()), -F::one());
        assert_eq!(det(&pauli_y::<F>()), -F::one());
        assert!(inverse(&zero::<F>()).is_none());
    }

    #[test]
    fn pauli_eigen() {
        // X^kY^l is an eigenvector of Ad X with eigenvalue (−i)^l and of Ad Y with i^k.
        let (x, y) = (pauli_x::<F>(), pauli_y::<F>());
        let (xi_, yi) = (inverse(&x).unwrap(), inverse(&y).unwrap());
        for k in 0..4 {
            for l in 0..4 {
                let p = pauli::<F>(k, l);
                assert_eq!(mul3(&x, &p, &xi_), scale(&F::pow_i(-(l as i64)), &p));
                assert_eq!(mul3(&y, &p, &yi), scale(&F::pow_i(k as i64), &p));
            }
        }
        for n in 1..=6 {
            assert!(is_skew(&xi::<F>(n)));
        }
    }

    #[test]
    fn hat_identities() {
        check_hat_identities::<F>(50, 0).unwrap();
        for g in [pauli_x::<F>(), pauli_y(), scale(&F::imag_unit(), &pauli_x())] {
            check_gl4_automorphism(&g, 10, 1).unwrap();
        }
    }
}
