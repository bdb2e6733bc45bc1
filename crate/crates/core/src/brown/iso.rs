//! The isomorphism from model A to model B, as a chain
//! `CD(H4(M2),1) → CD(H4(Q),1) → CD(Alb×F,1) → matrix model`,
//! where `Q = span{x_{a0..a3}}` inside the split octonions.

use super::model_a::{block_to_native, ModelA, ModelError, HDIM};
use super::model_b::ModelB;
use crate::algebra::{check_homomorphism, InvolutiveAlgebra};
use crate::composition::{build_split_octonions, m2_to_octonion_quaternions, octonion_quaternions, oct_index, G0};
use crate::exactnum::Scalar;
use crate::jordan::{albert_times_field, build_h4_quaternion, e_index, Albert, PAIRS};
use crate::linalg::{invert_columns, Operator, SparseVec};
use crate::structurable::{cd_double, layout, matrix_trace, s0};

pub struct IsoChain<F> {
    pub h4q_double: InvolutiveAlgebra<F>,
    pub albf_double: InvolutiveAlgebra<F>,
    /// Model A (block basis) to `CD(H4(Q),1)`.
    pub step1: Operator<F>,
    /// `φ_CD`: `CD(H4(Q),1) → CD(Alb×F,1)`.
    pub step2: Operator<F>,
    /// `CD(Alb×F,1) →` matrix model, sending `v'` to `s0`.
    pub step3: Operator<F>,
    /// Model A (block basis) to the matrix model.
    pub total: Operator<F>,
}

fn step1<F: Scalar>() -> Operator<F> {
    let m = m2_to_octonion_quaternions::<F>();
    let native = |n: usize| -> SparseVec<F> {
        if n < 4 {
            SparseVec::unit(n)
        } else {
            let (p, c) = ((n - 4) / 4, (n - 4) % 4);
            m.column(c).map_indices(|k| 4 + 4 * p + k)
        }
    };
    let cols = block_to_native::<F>();
    Operator::from_fn(2 * HDIM, |k| {
        let n = cols[k % HDIM].lead().expect("unit column");
        let v = native(n);
        if k < HDIM {
            v
        } else {
            v.map_indices(|i| i + HDIM)
        }
    })
}

/// `φ_CD` on the native basis of `CD(H4(Q),1)`: `diag(x, λ) ↦ (x, λ)`,
/// `vι'_j(a) ↦ (ι_j(ua), 0)` with `u = i·x_{g0}`, extended by `v ↦ v'`.
fn step2<F: Scalar>(alb: &Albert<F>) -> Operator<F> {
    let oct = build_split_octonions::<F>();
    let half = F::from_ratio(1, 2);
    let mut u = vec![F::zero(); 8];
    u[oct_index(G0)] = F::imag_unit();
    let basis_oct = |c: usize| {
        let mut o = vec![F::zero(); 8];
        o[c] = F::one();
        o
    };
    let albert_part = |v: Vec<F>| SparseVec::from_dense(&v);
    // (Albert-or-eF vector, lands in the v' half)
    let image = |k: usize| -> (SparseVec<F>, bool) {
        if k < 4 {
            return (if k < 3 { SparseVec::unit(e_index(k + 1)) } else { SparseVec::unit(27) }, false);
        }
        let (pi, c) = ((k - 4) / 4, (k - 4) % 4);
        let (p, q) = PAIRS[pi];
        let a = basis_oct(c);
        if q == 3 {
            // entry a at (j, 4) is ι'_j(a/2); its v-multiple maps to ι_j(u·a/2)
            let ua: Vec<F> = oct.mul(&u, &a).iter().map(|x| half.mul_ref(x)).collect();
            return (albert_part(alb.iota(p + 1, &ua)), true);
        }
        let ac: Vec<F> = oct.conj(&a).iter().map(|x| half.mul_ref(x)).collect();
        let ah: Vec<F> = a.iter().map(|x| half.mul_ref(x)).collect();
        let v = match (p, q) {
            (1, 2) => alb.iota(1, &ac),
            (0, 2) => alb.iota(2, &ah),
            (0, 1) => alb.iota(3, &ac),
            _ => unreachable!(),
        };
        (albert_part(v), false)
    };
    Operator::from_fn(2 * HDIM, |k| {
        let (v, swap) = image(k % HDIM);
        let in_v = swap != (k >= HDIM);
        if in_v {
            v.map_indices(|i| i + HDIM)
        } else {
            v
        }
    })
}

/// `(x, λ) ↦ ι(x) + λ e_F` with
/// `ι(x) = ¼(η(2x − T(x)1) + η'(2x − T(x)1) + T(x)1)`, `e_F = 1 − ι(1)`,
/// and `v'b ↦ s0·image(b)`.
fn step3<F: Scalar>(alb: &Albert<F>, matrix: &InvolutiveAlgebra<F>) -> Operator<F> {
    let quarter = F::from_ratio(1, 4);
    let iota = |x: &[F]| -> Vec<F> {
        let t = alb.t(x);
        let one = alb.one();
        let mut out = vec![F::zero(); 56];
        for k in 0..27 {
            let c = quarter.mul_ref(&(F::from_i64(2) * x[k].clone() - t.mul_ref(&one[k])));
            out[layout::eta(k)] = c.clone();
            out[layout::eta_p(k)] = c;
        }
        let tq = quarter.mul_ref(&t);
        out[layout::ALPHA] += &tq;
        out[layout::BETA] += &tq;
        out
    };
    let unit = matrix.unit_dense();
    let e_f: Vec<F> = unit.iter().zip(iota(&alb.one())).map(|(a, b)| a.clone() - b).collect();
    let s = s0::<F>();
    Operator::from_fn(2 * HDIM, |k| {
        let b = k % HDIM;
        let img = if b < 27 { iota(&alb.alg().basis(b)) } else { e_f.clone() };
        SparseVec::from_dense(&if k < HDIM { img } else { matrix.mul(&s, &img) })
    })
}

pub fn build_iso_chain<F: Scalar>(b: &ModelB<F>) -> Result<IsoChain<F>, ModelError> {
    let h4q = build_h4_quaternion(&octonion_quaternions::<F>());
    let h4q_double = cd_double(&h4q.jordan, &F::one())?;
    let albf_double = cd_double(&albert_times_field(&b.albert), &F::one())?;
    let s1 = step1::<F>();
    let s2 = step2(&b.albert);
    let s3 = step3(&b.albert, &b.matrix);
    let total = s3.compose(&s2).compose(&s1);
    Ok(IsoChain { h4q_double, albf_double, step1: s1, step2: s2, step3: s3, total })
}

impl<F: Scalar> IsoChain<F> {
    /// Exhaustive multiplicativity (and unit preservation) of each step and
    /// of the composite; also that each step is bijective.
    pub fn verify(&self, a: &ModelA<F>, b: &ModelB<F>) -> Result<(), String> {
        let steps: [(&str, &InvolutiveAlgebra<F>, &InvolutiveAlgebra<F>, &Operator<F>); 4] = [
            ("M2 → Q entrywise", &a.alg, &self.h4q_double, &self.step1),
            ("φ_CD", &self.h4q_double, &self.albf_double, &self.step2),
            ("CD(Alb×F) → matrix model", &self.albf_double, &b.matrix, &self.step3),
            ("composite", &a.alg, &b.matrix, &self.total),
        ];
        for (name, src, dst, map) in steps {
            if map.rank() != src.dim() {
                return Err(format!("{name}: not bijective"));
            }
            check_homomorphism(src, dst, map).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(())
    }

    /// `v ↦ v' ↦ s0`; `ι(x)² = ι(x²)` on `trials` random Albert elements;
    /// `ι(1)` and `e_F = 1 − ι(1)` are orthogonal idempotents.
    pub fn check_special_elements(&self, b: &ModelB<F>, trials: usize, seed: u64) -> Result<(), String> {
        let n = 2 * HDIM;
        let v_of = |alg: &InvolutiveAlgebra<F>| -> SparseVec<F> { alg.unit().map_indices(|k| k + HDIM) };
        if self.step2.apply_sparse(&v_of(&self.h4q_double)) != v_of(&self.albf_double) {
            return Err("φ_CD(v) ≠ v'".into());
        }
        if self.step3.apply_sparse(&v_of(&self.albf_double)) != SparseVec::from_dense(&s0::<F>()) {
            return Err("v' does not map to s0".into());
        }
        let alb = &b.albert;
        let embed = |x: &[F]| -> Vec<F> {
            let mut v = vec![F::zero(); n];
            v[..27].clone_from_slice(x);
            self.step3.apply(&v)
        };
        for t in 0..trials {
            let mut rng = crate::sample::trial_rng(seed, t as u64);
            let x = alb.random(&mut rng);
            let ix = embed(&x);
            if b.matrix.mul(&ix, &ix) != embed(&alb.mul(&x, &x)) {
                return Err(format!("ι(x)² ≠ ι(x²), trial {t}"));
            }
        }
        let e_alb = embed(&alb.one());
        let mut f = vec![F::zero(); n];
        f[27] = F::one();
        let e_f = self.step3.apply(&f);
        let m = &b.matrix;
        let zero = vec![F::zero(); 56];
        if m.mul(&e_alb, &e_alb) != e_alb || m.mul(&e_f, &e_f) != e_f || m.mul(&e_alb, &e_f) != zero {
            return Err("ι(1), e_F are not orthogonal idempotents".into());
        }
        if crate::algebra::add(&e_alb, &e_f) != m.unit_dense() {
            return Err("ι(1) + e_F ≠ 1".into());
        }
        Ok(())
    }

    /// The composite in `B_A` coordinates.
    pub fn to_graded_b(&self, b: &ModelB<F>) -> Operator<F> {
        let inv = Operator::from_columns(invert_columns(&b.basis).expect("B_A is a basis"));
        inv.compose(&self.total)
    }

    /// The linear form `tr` of the matrix model pulled back to model A.
    pub fn transported_trace(&self) -> Vec<F> {
        let tr = matrix_trace::<F>();
        (0..self.total.dim()).map(|k| self.total.column(k).dot_dense(&tr)).collect()
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::brown::{model_a::build_model_a, model_b::build_model_b};
    use crate::exactnum::GaussRat;

    #[test]
    fn chain_is_an_isomorphism() {
        let a = build_model_a::<GaussRat>().unwrap();
        let b = build_model_b::<GaussRat>().unwrap();
        let c = build_iso_chain(&b).unwrap();
        c.verify(&a, &b).unwrap();
        c.check_special_elements(&b, 50, 0).unwrap();
        // on H4 the transported trace is ½·tr(z)
        let tr = c.transported_trace();
        assert_eq!(tr[0], GaussRat::from_ratio(1, 2).unwrap());
        assert!(tr[HDIM..].iter().all(|t| t.is_zero()));
    }
}
