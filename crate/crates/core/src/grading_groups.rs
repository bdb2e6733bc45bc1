//! Finitely generated abelian groups `ℤ^r × ℤ_{d1} × … × ℤ_{dk}` used as
//! grading groups, their elements and homomorphisms.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element shape does not match the group {0}")]
    Mismatch(String),
    #[error("element has infinite order")]
    InfiniteOrder,
    #[error("group is infinite")]
    Infinite,
    #[error("torsion order {0} is not at least 2")]
    BadOrder(u32),
    #[error("ill-defined homomorphism: generator {gen} of order {order} maps to an element of different order")]
    IllDefinedHom { gen: usize, order: u32 },
    #[error("homomorphism matrix has wrong shape")]
    HomShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

/// A group element. It does not carry its parent; operations go through
/// [`AbelianGroup`], which checks the shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElt {
    pub free: Vec<i64>,
    pub torsion: Vec<u32>,
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tors: Vec<String> = self.torsion.iter().map(u32::to_string).collect();
        if self.free.is_empty() {
            write!(f, "({})", tors.join(","))
        } else {
            let free: Vec<String> = self.free.iter().map(i64::to_string).collect();
            write!(f, "({}|{})", free.join(","), tors.join(","))
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        for d in &self.torsion {
            parts.push(format!("Z{d}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join("x"))
    }
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u32>) -> Result<Self, GroupError> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(GroupError::BadOrder(d));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn torsion_only(torsion: &[u32]) -> Self {
        Self::new(0, torsion.to_vec()).expect("valid torsion orders")
    }

    /// `ℤ4³`
    pub fn z4_cubed() -> Self {
        Self::torsion_only(&[4, 4, 4])
    }

    /// `ℤ2³`
    pub fn z2_cubed() -> Self {
        Self::torsion_only(&[2, 2, 2])
    }

    /// Direct product `self × other`, free parts first.
    pub fn product(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn size(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().map(|&d| d as u64).product())
    }

    pub fn zero(&self) -> GroupElt {
        GroupElt { free: vec![0; self.free_rank], torsion: vec![0; self.torsion.len()] }
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn elt(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElt, GroupError> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(GroupError::Mismatch(self.to_string()));
        }
        Ok(GroupElt {
            free: free.to_vec(),
            torsion: torsion
                .iter()
                .zip(&self.torsion)
                .map(|(&t, &d)| t.rem_euclid(d as i64) as u32)
                .collect(),
        })
    }

    /// Element of a pure torsion group.
    pub fn t(&self, torsion: &[i64]) -> GroupElt {
        self.elt(&[], torsion).expect("torsion element of matching shape")
    }

    pub fn contains(&self, g: &GroupElt) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(&t, &d)| t < d)
    }

    fn check(&self, g: &GroupElt) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::Mismatch(self.to_string()))
        }
    }

    pub fn add(&self, g: &GroupElt, h: &GroupElt) -> Result<GroupElt, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add_unchecked(g, h))
    }

    pub(crate) fn add_unchecked(&self, g: &GroupElt, h: &GroupElt) -> GroupElt {
        GroupElt {
            free: g.free.iter().zip(&h.free).map(|(a, b)| a + b).collect(),
            torsion: g
                .torsion
                .iter()
                .zip(&h.torsion)
                .zip(&self.torsion)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        }
    }

    pub fn neg(&self, g: &GroupElt) -> Result<GroupElt, GroupError> {
        self.scale(g, -1)
    }

    pub fn sub(&self, g: &GroupElt, h: &GroupElt) -> Result<GroupElt, GroupError> {
        self.add(g, &self.neg(h)?)
    }

    pub fn scale(&self, g: &GroupElt, n: i64) -> Result<GroupElt, GroupError> {
        self.check(g)?;
        Ok(GroupElt {
            free: g.free.iter().map(|a| a * n).collect(),
            torsion: g
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(&a, &d)| (a as i64 * n).rem_euclid(d as i64) as u32)
                .collect(),
        })
    }

    pub fn sum<'a>(&self, elts: impl IntoIterator<Item = &'a GroupElt>) -> Result<GroupElt, GroupError> {
        let mut acc = self.zero();
        for g in elts {
            acc = self.add(&acc, g)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self, g: &GroupElt) -> bool {
        g.free.iter().all(|&a| a == 0) && g.torsion.iter().all(|&a| a == 0)
    }

    /// Least `n ≥ 1` with `n·g = 0`.
    pub fn order_of(&self, g: &GroupElt) -> Result<u64, GroupError> {
        self.check(g)?;
        if g.free.iter().any(|&a| a != 0) {
            return Err(GroupError::InfiniteOrder);
        }
        Ok(g.torsion.iter().zip(&self.torsion).fold(1u64, |acc, (&a, &d)| {
            let d = d as u64;
            let o = d / gcd(a as u64, d);
            lcm(acc, o)
        }))
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<GroupElt>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::Infinite);
        }
        let mut out = vec![self.zero()];
        for (k, &d) in self.torsion.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..d).map(move |t| {
                        let mut h = g.clone();
                        h.torsion[k] = t;
                        h
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// `S_{g0} = {g : 2g ≠ g0}`, in element order.
    pub fn support_s(&self, g0: &GroupElt) -> Result<Vec<GroupElt>, GroupError> {
        self.check(g0)?;
        Ok(self
            .elements()?
            .into_iter()
            .filter(|g| self.scale(g, 2).expect("member") != *g0)
            .collect())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A homomorphism given by an integer matrix acting on coordinate vectors
/// (free coordinates first, then torsion), validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    /// `rows = codomain coordinates`, `cols = domain coordinates`.
    matrix: Vec<Vec<i64>>,
}

impl Hom {
    pub fn new(domain: AbelianGroup, codomain: AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let n_in = domain.free_rank + domain.torsion.len();
        let n_out = codomain.free_rank + codomain.torsion.len();
        if matrix.len() != n_out || matrix.iter().any(|r| r.len() != n_in) {
            return Err(GroupError::HomShape);
        }
        // A torsion generator of order d must map to an element killed by d.
        for (k, &d) in domain.torsion.iter().enumerate() {
            let col = domain.free_rank + k;
            for (i, row) in matrix.iter().enumerate() {
                let ok = if i < codomain.free_rank {
                    row[col] == 0
                } else {
                    let e = codomain.torsion[i - codomain.free_rank] as i64;
                    (row[col] * d as i64).rem_euclid(e) == 0
                };
                if !ok {
                    return Err(GroupError::IllDefinedHom { gen: col, order: d });
                }
            }
        }
        Ok(Hom { domain, codomain, matrix })
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        let n = g.free_rank + g.torsion.len();
        let m = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        Hom { domain: g.clone(), codomain: g.clone(), matrix: m }
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn apply(&self, g: &GroupElt) -> Result<GroupElt, GroupError> {
        self.domain.check(g)?;
        let x: Vec<i64> = g.free.iter().copied().chain(g.torsion.iter().map(|&t| t as i64)).collect();
        let y: Vec<i64> = self.matrix.iter().map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
        let r = self.codomain.free_rank;
        self.codomain.elt(&y[..r], &y[r..])
    }

    /// `self ∘ first`
    pub fn after(&self, first: &Hom) -> Result<Hom, GroupError> {
        if first.codomain != self.domain {
            return Err(GroupError::Mismatch(self.domain.to_string()));
        }
        let n_in = first.matrix.first().map_or(0, Vec::len);
        let m = self
            .matrix
            .iter()
            .map(|row| {
                (0..n_in)
                    .map(|j| row.iter().zip(&first.matrix).map(|(a, fr)| a * fr[j]).sum())
                    .collect()
            })
            .collect();
        Hom::new(first.domain.clone(), self.codomain.clone(), m)
    }
}

/// Named elements of `ℤ2³` and `ℤ4³` with the fixed coordinate order.
pub mod named {
    use super::*;

    /// `a1=(0,1,0)`, `a2=(1,0,0)`, `a3=a1+a2`, `g0=(0,0,1)` in `ℤ2³`.
    pub fn z2_a(j: usize) -> GroupElt {
        let g = AbelianGroup::z2_cubed();
        match j {
            0 => g.zero(),
            1 => g.t(&[0, 1, 0]),
            2 => g.t(&[1, 0, 0]),
            3 => g.t(&[1, 1, 0]),
            _ => panic!("a_j is defined for j in 0..=3"),
        }
    }

    pub fn z2_g0() -> GroupElt {
        AbelianGroup::z2_cubed().t(&[0, 0, 1])
    }

    /// The embedding `ℤ2³ → ℤ4³`: `a1 ↦ (0,2,0)`, `a2 ↦ (0,0,2)`, `g0 ↦ (2,0,0)`.
    pub fn z2_into_z4() -> Hom {
        // Coordinates of ℤ2³ are (bit1, bit2, bit3) with a2 = e1, a1 = e2, g0 = e3.
        Hom::new(
            AbelianGroup::z2_cubed(),
            AbelianGroup::z4_cubed(),
            vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]],
        )
        .expect("well-defined embedding")
    }

    pub fn b(j: usize) -> GroupElt {
        let g = AbelianGroup::z4_cubed();
        match j {
            1 => g.t(&[0, 1, 0]),
            2 => g.t(&[0, 0, 1]),
            3 => g.t(&[0, -1, -1]),
            _ => panic!("b_j is defined for j in 1..=3"),
        }
    }

    pub fn g0() -> GroupElt {
        AbelianGroup::z4_cubed().t(&[2, 0, 0])
    }

    /// Image of `a_j` in `ℤ4³`.
    pub fn a(j: usize) -> GroupElt {
        z2_into_z4().apply(&z2_a(j)).expect("member")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn addition_examples() {
        let g = AbelianGroup::z4_cubed();
        assert_eq!(g.add(&b(1), &b(2)).unwrap(), g.t(&[0, 1, 1]));
        assert_eq!(g.sum([b(1), b(2), b(3)].iter()).unwrap(), g.zero());
        assert_eq!(g.add(&a(1), &a(2)).unwrap(), a(3));
        assert_eq!(a(3), g.t(&[0, 2, 2]));
        let h = AbelianGroup::torsion_only(&[4, 4]);
        assert!(g.add(&g.zero(), &h.zero()).is_err());
        assert!(g.add(&g.zero(), &GroupElt { free: vec![], torsion: vec![5, 0, 0] }).is_err());
    }

    #[test]
    fn orders() {
        let g = AbelianGroup::z4_cubed();
        assert_eq!(g.order_of(&g0()).unwrap(), 2);
        assert_eq!(g.order_of(&b(1)).unwrap(), 4);
        assert_eq!(g.order_of(&g.zero()).unwrap(), 1);
        let z = AbelianGroup::new(1, vec![4]).unwrap();
        let e = z.elt(&[1], &[2]).unwrap();
        assert_eq!(z.order_of(&e), Err(GroupError::InfiniteOrder));
    }

    #[test]
    fn support_of_brown_grading() {
        let g = AbelianGroup::z4_cubed();
        let s = g.support_s(&g0()).unwrap();
        assert_eq!(s.len(), 56);
        assert!(!s.contains(&g.t(&[1, 0, 0])));
        assert!(s.contains(&g.t(&[0, 1, 0])));
    }

    #[test]
    fn homomorphisms() {
        let z4 = AbelianGroup::torsion_only(&[4]);
        let z2 = AbelianGroup::torsion_only(&[2]);
        let q = Hom::new(z4.clone(), z2.clone(), vec![vec![1]]).unwrap();
        assert_eq!(q.apply(&z4.t(&[3])).unwrap(), z2.t(&[1]));
        let p = Hom::new(AbelianGroup::z4_cubed(), z4.clone(), vec![vec![1, 0, 0]]).unwrap();
        assert_eq!(p.apply(&AbelianGroup::z4_cubed().t(&[2, 1, 3])).unwrap(), z4.t(&[2]));
        assert_eq!(z2_into_z4().apply(&z2_g0()).unwrap(), g0());
        // ℤ2 → ℤ4 sending 1 to 1 is not well defined.
        assert!(Hom::new(z2, z4.clone(), vec![vec![1]]).is_err());
        let id = Hom::identity(&z4);
        assert_eq!(q.after(&id).unwrap(), q);
    }
}
