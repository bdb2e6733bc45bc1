//! Finite-dimensional algebras with involution given by sparse structure
//! constants.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{GaussRat, Scalar};
use crate::linalg::{axpy_dense, Operator, SparseVec, SpanBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("new basis is linearly dependent")]
    SingularBasis,
    #[error("{0}")]
    Invalid(String),
    #[error("malformed algebra JSON: {0}")]
    Json(String),
    #[error("doubling parameter must be nonzero")]
    ZeroMu,
}

/// Unital algebra with a linear involution, stored as structure constants.
///
/// The unit is kept as a vector rather than a basis index because some of
/// the natural bases here (e.g. matrix units of `M2`) do not contain it.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutiveAlgebra<F> {
    labels: Vec<String>,
    table: Vec<SparseVec<F>>,
    invol: Operator<F>,
    unit: SparseVec<F>,
}

impl<F: Scalar> InvolutiveAlgebra<F> {
    /// `table[i * dim + j]` is the product `e_i e_j`.
    pub fn new(labels: Vec<String>, table: Vec<SparseVec<F>>, invol: Operator<F>, unit: SparseVec<F>) -> Self {
        let d = labels.len();
        assert_eq!(table.len(), d * d, "structure table has wrong size");
        assert_eq!(invol.dim(), d, "involution has wrong size");
        InvolutiveAlgebra { labels, table, invol, unit }
    }

    /// Builds the table from a product rule on basis indices.
    pub fn from_rule(
        labels: Vec<String>,
        rule: impl Fn(usize, usize) -> SparseVec<F> + Sync,
        invol: Operator<F>,
        unit: SparseVec<F>,
    ) -> Self {
        let d = labels.len();
        let table = (0..d * d).into_par_iter().map(|k| rule(k / d, k % d)).collect();
        Self::new(labels, table, invol, unit)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &SparseVec<F> {
        &self.unit
    }

    pub fn unit_dense(&self) -> Vec<F> {
        self.unit.to_dense(self.dim())
    }

    pub fn involution(&self) -> &Operator<F> {
        &self.invol
    }

    pub fn table(&self) -> &[SparseVec<F>] {
        &self.table
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim() + j]
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        SparseVec::unit(i).to_dense(self.dim())
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        let bnz: Vec<usize> = (0..d).filter(|&j| !b[j].is_zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &j in &bnz {
                axpy_dense(&mut out, &x.mul_ref(&b[j]), &self.table[i * d + j]);
            }
        }
        out
    }

    pub fn mul_sparse(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> SparseVec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                axpy_dense(&mut out, &x.mul_ref(y), &self.table[i * d + j]);
            }
        }
        SparseVec::from_dense(&out)
    }

    pub fn bar(&self, a: &[F]) -> Vec<F> {
        self.invol.apply(a)
    }

    /// `[a, b] = ab − ba`
    pub fn commutator(&self, a: &[F], b: &[F]) -> Vec<F> {
        sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// `(a, b, c) = (ab)c − a(bc)`
    pub fn associator(&self, a: &[F], b: &[F], c: &[F]) -> Vec<F> {
        sub(&self.mul(&self.mul(a, b), c), &self.mul(a, &self.mul(b, c)))
    }

    /// Left multiplication operator `L_a`.
    pub fn left_op(&self, a: &[F]) -> Operator<F> {
        let d = self.dim();
        Operator::from_fn(d, |j| SparseVec::from_dense(&self.mul(a, &self.basis(j))))
    }

    /// Right multiplication operator `R_a`.
    pub fn right_op(&self, a: &[F]) -> Operator<F> {
        let d = self.dim();
        Operator::from_fn(d, |j| SparseVec::from_dense(&self.mul(&self.basis(j), a)))
    }

    /// Checks the unit, `invol² = id` and `inv(ab) = inv(b)inv(a)` on all
    /// basis pairs. Returns a description of the first violation.
    pub fn validate(&self) -> Result<(), String> {
        let d = self.dim();
        let one = self.unit_dense();
        for i in 0..d {
            let e = self.basis(i);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return Err(format!("unit fails on {}", self.labels[i]));
            }
        }
        if self.invol.compose(&self.invol) != Operator::identity(d) {
            return Err("involution is not of order 2".into());
        }
        let bad = (0..d * d).into_par_iter().find_first(|&k| {
            let (i, j) = (k / d, k % d);
            let lhs = self.invol.apply_sparse(self.mul_basis(i, j));
            let rhs = self.mul_sparse(self.invol.column(j), self.invol.column(i));
            lhs != rhs
        });
        match bad {
            Some(k) => Err(format!(
                "involution is not an antiautomorphism on ({}, {})",
                self.labels[k / d],
                self.labels[k % d]
            )),
            None => Ok(()),
        }
    }

    /// The same algebra in the basis `f_k = Σ cols[k]_i e_i`.
    pub fn change_basis(&self, cols: &[SparseVec<F>], labels: Vec<String>) -> Result<Self, AlgebraError> {
        let d = self.dim();
        assert_eq!(cols.len(), d);
        assert_eq!(labels.len(), d);
        let mut span = SpanBasis::new();
        for c in cols {
            if !span.insert(c.clone()) {
                return Err(AlgebraError::SingularBasis);
            }
        }
        let coords = |v: &SparseVec<F>| span.coords(v).expect("full rank basis spans everything");
        let table = (0..d * d)
            .into_par_iter()
            .map(|k| coords(&self.mul_sparse(&cols[k / d], &cols[k % d])))
            .collect();
        let invol = Operator::from_columns(cols.iter().map(|c| coords(&self.invol.apply_sparse(c))).collect());
        let unit = coords(&self.unit);
        Ok(Self::new(labels, table, invol, unit))
    }

    /// Same table with every scalar pushed through `f`.
    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> InvolutiveAlgebra<G> {
        let mv = |v: &SparseVec<F>| SparseVec::from_pairs(v.iter().map(|(i, c)| (i, f(c))).collect());
        InvolutiveAlgebra {
            labels: self.labels.clone(),
            table: self.table.iter().map(mv).collect(),
            invol: Operator::from_columns(self.invol.columns().iter().map(mv).collect()),
            unit: mv(&self.unit),
        }
    }

    /// Returns a copy with one structure constant replaced.
    pub fn with_product(&self, i: usize, j: usize, v: SparseVec<F>) -> Self {
        let mut out = self.clone();
        let d = self.dim();
        out.table[i * d + j] = v;
        out
    }

    pub fn to_json(&self) -> AlgebraJson {
        let g = |v: &SparseVec<F>| v.iter().map(|(k, c)| (k, c.to_gauss())).collect::<Vec<_>>();
        let d = self.dim();
        AlgebraJson {
            schema: "involutive-algebra/v1".into(),
            dim: d,
            labels: self.labels.clone(),
            unit: g(&self.unit),
            mult: (0..d * d)
                .filter(|&k| !self.table[k].is_zero())
                .map(|k| (k / d, k % d, g(&self.table[k])))
                .collect(),
            invol: (0..d).map(|i| (i, g(self.invol.column(i)))).collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, AlgebraError> {
        let bad = |m: &str| AlgebraError::Json(m.to_string());
        if j.schema != "involutive-algebra/v1" {
            return Err(bad("unknown schema"));
        }
        let d = j.dim;
        if j.labels.len() != d {
            return Err(bad("label count differs from dim"));
        }
        let sv = |v: &[(usize, GaussRat)]| -> Result<SparseVec<F>, AlgebraError> {
            if v.iter().any(|(k, _)| *k >= d) {
                return Err(bad("index out of range"));
            }
            Ok(SparseVec::from_pairs(v.iter().map(|(k, c)| (*k, F::from_gauss(c))).collect()))
        };
        let mut table = vec![SparseVec::new(); d * d];
        for (i, jj, v) in &j.mult {
            if *i >= d || *jj >= d {
                return Err(bad("index out of range"));
            }
            table[i * d + jj] = sv(v)?;
        }
        let mut cols = vec![SparseVec::new(); d];
        for (i, v) in &j.invol {
            if *i >= d {
                return Err(bad("index out of range"));
            }
            cols[*i] = sv(v)?;
        }
        Ok(Self::new(j.labels.clone(), table, Operator::from_columns(cols), sv(&j.unit)?))
    }
}

/// Serialized form, schema `involutive-algebra/v1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub schema: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<(usize, GaussRat)>,
    pub mult: Vec<(usize, usize, Vec<(usize, GaussRat)>)>,
    pub invol: Vec<(usize, Vec<(usize, GaussRat)>)>,
}

pub fn add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale<F: Scalar>(c: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| x.mul_ref(c)).collect()
}

pub fn is_zero<F: Scalar>(a: &[F]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Linear combination `Σ c_k v_k` of dense vectors.
pub fn combine<F: Scalar>(dim: usize, terms: &[(F, &[F])]) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            o.add_mul(c, x);
        }
    }
    out
}

/// Checks that `map` is multiplicative and commutes with the involutions on
/// all basis pairs; returns the first failing pair.
pub fn check_homomorphism<F: Scalar>(
    src: &InvolutiveAlgebra<F>,
    dst: &InvolutiveAlgebra<F>,
    map: &Operator<F>,
) -> Result<(), String> {
    let d = src.dim();
    let bad = (0..d * d).into_par_iter().find_first(|&k| {
        let (i, j) = (k / d, k % d);
        map.apply_sparse(src.mul_basis(i, j)) != dst.mul_sparse(map.column(i), map.column(j))
    });
    if let Some(k) = bad {
        return Err(format!("not multiplicative on ({}, {})", src.label(k / d), src.label(k % d)));
    }
    for i in 0..d {
        if map.apply_sparse(src.involution().column(i)) != dst.involution().apply_sparse(map.column(i)) {
            return Err(format!("does not commute with the involution on {}", src.label(i)));
        }
    }
    if map.apply_sparse(src.unit()) != *dst.unit() {
        return Err("unit not preserved".into());
    }
    Ok(())
}

/// Generalized Cayley–Dickson double `B ⊕ vB` of an algebra with involution,
/// given the companion map `θ`:
/// `(b1,b2)(c1,c2) = (b1c1 + μ(b2c2^θ)^θ, b1^θc2 + (b2^θc1^θ)^θ)`,
/// `conj(b1,b2) = (b̄1, −(b̄2)^θ)`.
pub fn cd_double_with<F: Scalar>(
    b: &InvolutiveAlgebra<F>,
    theta: &Operator<F>,
    mu: &F,
    v_name: &str,
) -> Result<InvolutiveAlgebra<F>, AlgebraError> {
    if mu.is_zero() {
        return Err(AlgebraError::ZeroMu);
    }
    let n = b.dim();
    let mut labels = b.labels().to_vec();
    labels.extend(b.labels().iter().map(|l| format!("{v_name}·{l}")));
    let th = |v: &SparseVec<F>| theta.apply_sparse(v);
    let shift = |v: &SparseVec<F>| v.map_indices(|k| k + n);
    let rule = |i: usize, j: usize| -> SparseVec<F> {
        match (i < n, j < n) {
            (true, true) => b.mul_basis(i, j).clone(),
            // (0,b2)(0,c2) = (μ(b2 c2^θ)^θ, 0)
            (false, false) => {
                let c2t = th(&SparseVec::unit(j - n));
                th(&b.mul_sparse(&SparseVec::unit(i - n), &c2t)).scaled(mu)
            }
            // (b1,0)(0,c2) = (0, b1^θ c2)
            (true, false) => shift(&b.mul_sparse(&th(&SparseVec::unit(i)), &SparseVec::unit(j - n))),
            // (0,b2)(c1,0) = (0, (b2^θ c1^θ)^θ)
            (false, true) => {
                let p = b.mul_sparse(&th(&SparseVec::unit(i - n)), &th(&SparseVec::unit(j)));
                shift(&th(&p))
            }
        }
    };
    let invol = Operator::from_fn(2 * n, |i| {
        if i < n {
            b.involution().column(i).clone()
        } else {
            shift(&th(b.involution().column(i - n))).neg()
        }
    });
    Ok(InvolutiveAlgebra::from_rule(labels, rule, invol, b.unit().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = GaussRat;

    /// ℂ over ℚ(i) as a 2-dim algebra {1, j} with j² = −1 and conjugation.
    fn complex_numbers() -> InvolutiveAlgebra<F> {
        let one = F::from_int(1);
        let table = vec![
            SparseVec::unit(0),
            SparseVec::unit(1),
            SparseVec::unit(1),
            SparseVec::single(0, -one.clone()),
        ];
        let invol = Operator::from_columns(vec![SparseVec::unit(0), SparseVec::single(1, -one)]);
        InvolutiveAlgebra::new(vec!["1".into(), "j".into()], table, invol, SparseVec::unit(0))
    }

    #[test]
    fn validate_and_json_round_trip() {
        let c = complex_numbers();
        c.validate().unwrap();
        let j = c.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(InvolutiveAlgebra::<F>::from_json(&back).unwrap(), c);
    }

    #[test]
    fn change_basis_preserves_products() {
        let c = complex_numbers();
        let cols = vec![SparseVec::from_pairs(vec![(0, F::from_int(1)), (1, F::from_int(1))]), SparseVec::unit(1)];
        let c2 = c.change_basis(&cols, vec!["1+j".into(), "j".into()]).unwrap();
        c2.validate().unwrap();
        // (1+j)² = 2j
        assert_eq!(c2.mul_basis(0, 0), &SparseVec::single(1, F::from_int(2)));
        let map = Operator::from_columns(cols);
        check_homomorphism(&c2, &c, &map).unwrap();
    }

    #[test]
    fn double_of_reals_is_split_complex() {
        let r = InvolutiveAlgebra::new(
            vec!["1".into()],
            vec![SparseVec::unit(0)],
            Operator::identity(1),
            SparseVec::unit(0),
        );
        let d = cd_double_with(&r, &Operator::identity(1), &F::from_int(1), "v").unwrap();
        d.validate().unwrap();
        assert_eq!(d.mul_basis(1, 1), &SparseVec::unit(0));
        assert!(cd_double_with(&r, &Operator::identity(1), &F::from_int(0), "v").is_err());
    }
}
