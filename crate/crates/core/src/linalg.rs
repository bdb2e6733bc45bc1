//! Sparse exact linear algebra: vectors, column-stored operators and
//! incremental reduced row echelon spans.

use std::collections::HashMap;

use crate::exactnum::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Scalar> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn single(i: usize, c: F) -> Self {
        if c.is_zero() {
            Self::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary `(index, coeff)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut out = vec![F::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|p| p.0)
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.mul_ref(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x.clone())).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, y.mul_ref(c)));
                }
                (Some(_), Some(_)) => {
                    let (i, mut x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    x.add_mul(c, y);
                    if !x.is_zero() {
                        out.push((i, x));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, y.mul_ref(c)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&F::one(), other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&-F::one(), other);
        r
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }

    pub fn dot_dense(&self, v: &[F]) -> F {
        let mut acc = F::zero();
        for (i, c) in &self.entries {
            acc.add_mul(c, &v[*i]);
        }
        acc
    }
}

/// `acc += c * v`
pub fn axpy_dense<F: Scalar>(acc: &mut [F], c: &F, v: &SparseVec<F>) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v.iter() {
        acc[i].add_mul(c, x);
    }
}

/// Linear operator on `F^dim`, stored as the images of the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<F> {
    dim: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Scalar> Operator<F> {
    pub fn zero(dim: usize) -> Self {
        Operator { dim, cols: vec![SparseVec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, F::one())
    }

    pub fn scalar(dim: usize, c: F) -> Self {
        Operator { dim, cols: (0..dim).map(|i| SparseVec::single(i, c.clone())).collect() }
    }

    pub fn from_columns(cols: Vec<SparseVec<F>>) -> Self {
        Operator { dim: cols.len(), cols }
    }

    /// Operator whose `j`-th column is `f(j)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize) -> SparseVec<F>) -> Self {
        Operator { dim, cols: (0..dim).map(f).collect() }
    }

    /// From a dense row-major matrix.
    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let dim = rows.len();
        let cols = (0..dim)
            .map(|j| SparseVec::from_pairs((0..dim).map(|i| (i, rows[i][j].clone())).collect()))
            .collect();
        Operator { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> F {
        self.cols[col].get(row)
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (j, c) in v.iter().enumerate() {
            axpy_dense(&mut out, c, &self.cols[j]);
        }
        out
    }

    pub fn apply_sparse(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (j, c) in v.iter() {
            axpy_dense(&mut out, c, &self.cols[j]);
        }
        SparseVec::from_dense(&out)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Operator {
            dim: self.dim,
            cols: other.cols.iter().map(|c| self.apply_sparse(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lin_comb(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lin_comb(&-F::one(), other)
    }

    /// `self + c * other`
    pub fn lin_comb(&self, c: &F, other: &Self) -> Self {
        Operator {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| {
                    let mut a = a.clone();
                    a.add_scaled(c, b);
                    a
                })
                .collect(),
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        Operator { dim: self.dim, cols: self.cols.iter().map(|v| v.scaled(c)).collect() }
    }

    /// `self∘other − other∘self`
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for (j, c) in self.cols.iter().enumerate() {
            t += &c.get(j);
        }
        t
    }

    /// Vectorization with index `col * dim + row`.
    pub fn to_vec(&self) -> SparseVec<F> {
        let mut pairs = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                pairs.push((j * self.dim + i, x.clone()));
            }
        }
        SparseVec { entries: pairs }
    }

    pub fn from_vec(dim: usize, v: &SparseVec<F>) -> Self {
        let mut cols = vec![Vec::new(); dim];
        for (k, x) in v.iter() {
            cols[k / dim].push((k % dim, x.clone()));
        }
        Operator { dim, cols: cols.into_iter().map(|e| SparseVec { entries: e }).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut span = SpanBasis::without_tracking();
        for c in &self.cols {
            span.insert(c.clone());
        }
        span.rank()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::identity(self.dim);
        for _ in 0..k {
            r = self.compose(&r);
        }
        r
    }
}

/// Incrementally maintained reduced row echelon basis of a span.
///
/// Each stored row has its pivot at its first index with coefficient 1, and
/// every other row is zero at that pivot. When tracking is on, each row also
/// records how it is combined from the accepted input vectors, so
/// [`SpanBasis::coords`] answers "which combination of the inserted vectors
/// gives `v`".
#[derive(Clone, Debug)]
pub struct SpanBasis<F> {
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<usize, usize>,
    combos: Vec<SparseVec<F>>,
    accepted: usize,
    track: bool,
}

impl<F: Scalar> Default for SpanBasis<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Scalar> SpanBasis<F> {
    pub fn new() -> Self {
        SpanBasis {
            rows: Vec::new(),
            pivot_row: HashMap::new(),
            combos: Vec::new(),
            accepted: 0,
            track: true,
        }
    }

    pub fn without_tracking() -> Self {
        SpanBasis { track: false, ..Self::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.lead().expect("nonzero row")).collect()
    }

    /// Coefficients of `v` against the echelon rows, and the residual.
    fn split(&self, v: &SparseVec<F>) -> (Vec<(usize, F)>, SparseVec<F>) {
        let hits: Vec<(usize, F)> = v
            .iter()
            .filter_map(|(i, c)| self.pivot_row.get(&i).map(|&r| (r, c.clone())))
            .collect();
        let mut res = v.clone();
        for (r, c) in &hits {
            res.add_scaled(&-c.clone(), &self.rows[*r]);
        }
        (hits, res)
    }

    pub fn residual(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.split(v).1
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.residual(v).is_zero()
    }

    /// Inserts `v`; returns `false` (and changes nothing) if `v` is already
    /// in the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let (hits, mut res) = self.split(&v);
        if res.is_zero() {
            return false;
        }
        let mut combo = SparseVec::new();
        if self.track {
            combo = SparseVec::unit(self.accepted);
            for (r, c) in &hits {
                combo.add_scaled(&-c.clone(), &self.combos[*r]);
            }
        }
        let (p, lead) = {
            let (p, c) = &res.entries()[0];
            (*p, c.clone())
        };
        let inv = lead.checked_inv().expect("nonzero pivot");
        res = res.scaled(&inv);
        if self.track {
            combo = combo.scaled(&inv);
        }
        for k in 0..self.rows.len() {
            let c = self.rows[k].get(p);
            if !c.is_zero() {
                let neg = -c;
                self.rows[k].add_scaled(&neg, &res);
                if self.track {
                    let (head, tail) = (self.combos[k].clone(), &combo);
                    let mut h = head;
                    h.add_scaled(&neg, tail);
                    self.combos[k] = h;
                }
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(res);
        self.combos.push(combo);
        self.accepted += 1;
        true
    }

    /// Coordinates of `v` in terms of the accepted input vectors (in
    /// insertion order), or `None` if `v` is outside the span.
    pub fn coords(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        assert!(self.track, "coordinate tracking disabled");
        let (hits, res) = self.split(v);
        if !res.is_zero() {
            return None;
        }
        let mut out = SparseVec::new();
        for (r, c) in &hits {
            out.add_scaled(c, &self.combos[*r]);
        }
        Some(out)
    }

    /// Basis of `{x : <row, x> = 0 for all rows}` where the rows are the
    /// inserted vectors viewed as linear equations in `ncols` unknowns.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec<F>> {
        (0..ncols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|free| {
                let mut pairs = vec![(free, F::one())];
                for row in &self.rows {
                    let x = row.get(free);
                    if !x.is_zero() {
                        pairs.push((row.lead().unwrap(), -x));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank_of<F: Scalar>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut span = SpanBasis::without_tracking();
    for v in vectors {
        span.insert(v);
    }
    span.rank()
}

/// Kernel of the operator (as a matrix acting on column vectors).
pub fn operator_kernel<F: Scalar>(op: &Operator<F>) -> Vec<SparseVec<F>> {
    let n = op.dim();
    let mut rows = vec![Vec::new(); n];
    for (j, c) in op.columns().iter().enumerate() {
        for (i, x) in c.iter() {
            rows[i].push((j, x.clone()));
        }
    }
    let mut span = SpanBasis::without_tracking();
    for r in rows {
        span.insert(SparseVec::from_pairs(r));
    }
    span.kernel(n)
}

/// Common kernel of several operators on the same space, intersected with
/// the hyperplanes `{x : x_k = 0}` for `k` in `zero_coords`.
pub fn joint_kernel<F: Scalar>(ops: &[&Operator<F>], zero_coords: &[usize], n: usize) -> Vec<SparseVec<F>> {
    let mut span = SpanBasis::without_tracking();
    for &k in zero_coords {
        span.insert(SparseVec::unit(k));
    }
    for op in ops {
        let mut rows = vec![Vec::new(); n];
        for (j, c) in op.columns().iter().enumerate() {
            for (i, x) in c.iter() {
                rows[i].push((j, x.clone()));
            }
        }
        for r in rows {
            span.insert(SparseVec::from_pairs(r));
        }
    }
    span.kernel(n)
}

/// Inverse of the matrix whose columns are `cols`, or `None` if singular.
pub fn invert_columns<F: Scalar>(cols: &[SparseVec<F>]) -> Option<Vec<SparseVec<F>>> {
    let n = cols.len();
    let mut span = SpanBasis::new();
    for c in cols {
        if !span.insert(c.clone()) {
            return None;
        }
    }
    (0..n).map(|k| span.coords(&SparseVec::unit(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;

    type V = SparseVec<GaussRat>;

    fn v(pairs: &[(usize, i64)]) -> V {
        SparseVec::from_pairs(pairs.iter().map(|&(i, c)| (i, GaussRat::from_int(c))).collect())
    }

    #[test]
    fn add_scaled_merges_and_cancels() {
        let mut a = v(&[(0, 1), (2, 3)]);
        a.add_scaled(&GaussRat::from_int(-3), &v(&[(1, 5), (2, 1)]));
        assert_eq!(a, v(&[(0, 1), (1, -15)]));
    }

    #[test]
    fn span_coords_and_kernel() {
        let mut s = SpanBasis::new();
        assert!(s.insert(v(&[(0, 1), (1, 1)])));
        assert!(s.insert(v(&[(1, 1), (2, 1)])));
        assert!(!s.insert(v(&[(0, 1), (1, 2), (2, 1)])));
        assert_eq!(s.rank(), 2);
        let c = s.coords(&v(&[(0, 2), (1, -1), (2, -3)])).unwrap();
        assert_eq!(c, v(&[(0, 2), (1, -3)]));
        assert!(s.coords(&v(&[(2, 1)])).is_none());
        let k = s.kernel(3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], v(&[(0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn inverse_of_permutation_with_scale() {
        let cols = vec![v(&[(1, 2)]), v(&[(0, 1)])];
        let inv = invert_columns(&cols).unwrap();
        let half = GaussRat::from_ratio(1, 2).unwrap();
        assert_eq!(inv[0], v(&[(1, 1)]));
        assert_eq!(inv[1], SparseVec::single(0, half));
        assert!(invert_columns(&[v(&[(0, 1)]), v(&[(0, 2)])]).is_none());
    }

    #[test]
    fn operator_algebra() {
        let a = Operator::from_columns(vec![v(&[(1, 1)]), v(&[])]);
        let b = Operator::from_columns(vec![v(&[]), v(&[(0, 1)])]);
        let c = a.commutator(&b);
        assert_eq!(c.entry(1, 1), GaussRat::from_int(1));
        assert_eq!(c.entry(0, 0), GaussRat::from_int(-1));
        assert_eq!(Operator::from_vec(2, &c.to_vec()), c);
        assert_eq!(c.rank(), 2);
        assert_eq!(operator_kernel(&a).len(), 1);
    }
}
