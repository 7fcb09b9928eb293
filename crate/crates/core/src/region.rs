//! Finite unions of shifted monoids `s + N{g_1, …, g_k}` inside `G`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diophantine::{solve_exists, DiophantineSystem};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionComponent {
    pub shift: GroupElement,
    pub generators: Vec<GroupElement>,
}

impl RegionComponent {
    pub fn new(shift: GroupElement, generators: Vec<GroupElement>) -> Self {
        RegionComponent { shift, generators }
    }

    pub fn contains(&self, group: &AbelianGroup, p: &GroupElement) -> Result<bool> {
        let target = group.sub(p, &self.shift)?;
        let sys = DiophantineSystem::new(group, self.generators.clone(), target)?;
        Ok(solve_exists(&sys)?.is_some())
    }
}

/// An empty component list is the empty region.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub components: Vec<RegionComponent>,
}

impl Region {
    pub fn empty() -> Self {
        Region::default()
    }

    pub fn cone(shift: GroupElement, generators: Vec<GroupElement>) -> Self {
        Region { components: vec![RegionComponent::new(shift, generators)] }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Region { components }
    }

    pub fn translate(&self, group: &AbelianGroup, by: &GroupElement) -> Region {
        Region {
            components: self
                .components
                .iter()
                .map(|c| RegionComponent::new(group.add_unchecked(&c.shift, by), c.generators.clone()))
                .collect(),
        }
    }

    pub fn contains(&self, group: &AbelianGroup, p: &GroupElement) -> Result<bool> {
        for c in &self.components {
            if c.contains(group, p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Weak compositions of `total` into `parts` nonnegative summands, lexicographically descending.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ λ_j c_j`.
pub fn combination(group: &AbelianGroup, lambda: &[usize], c: &[GroupElement]) -> GroupElement {
    let coeffs: Vec<BigInt> = lambda.iter().map(|&x| BigInt::from(x)).collect();
    group.combination(&coeffs, c)
}

/// `D[i] = ⋃_{Σλ = |i|} (sign(i) λ·C + D)`.
pub fn region_shift_index(group: &AbelianGroup, d: &Region, i: i64, c: &[GroupElement]) -> Region {
    if i == 0 {
        return d.clone();
    }
    let mut out = Region::empty();
    for lambda in weak_compositions(i.unsigned_abs() as usize, c.len()) {
        let mut s = combination(group, &lambda, c);
        if i < 0 {
            s = group.neg_unchecked(&s);
        }
        out = out.union(&d.translate(group, &s));
    }
    out
}

pub fn region_membership(group: &AbelianGroup, p: &GroupElement, region: &Region) -> Result<bool> {
    region.contains(group, p)
}

/// Inclusive box `lo[i] ..= hi[i]` on the free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl FreeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Invalid("box bounds of different lengths".into()));
        }
        if let Some(i) = (0..lo.len()).find(|&i| hi[i] < lo[i]) {
            return Err(Error::Invalid(format!("box has negative extent in coordinate {}", i + 1)));
        }
        Ok(FreeBox { lo, hi })
    }

    /// The same interval in every one of `dim` coordinates.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        FreeBox::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    /// Lattice points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for (&a, &b) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (a..=b).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn contains(&self, free: &[BigInt]) -> bool {
        free.len() == self.lo.len()
            && free.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| *x >= BigInt::from(*a) && *x <= BigInt::from(*b))
    }

    /// Every group element whose free part lies in the box, torsion classes innermost.
    pub fn elements(&self, group: &AbelianGroup) -> Result<Vec<GroupElement>> {
        if self.dim() != group.rank() {
            return Err(Error::Invalid(format!("box of dimension {} for a group of rank {}", self.dim(), group.rank())));
        }
        let classes = group.torsion_elements();
        let mut out = Vec::new();
        for p in self.points() {
            for t in &classes {
                out.push(GroupElement::from_parts(p.iter().map(|&x| BigInt::from(x)).collect(), t.clone()));
            }
        }
        Ok(out)
    }
}

impl FromStr for FreeBox {
    type Err = Error;

    /// Parses `lo:hi,lo:hi,…`.
    fn from_str(s: &str) -> Result<Self> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split(',') {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| Error::Invalid(format!("box coordinate {part:?} is not lo:hi")))?;
            let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad box bound {x:?}")));
            lo.push(parse(a)?);
            hi.push(parse(b)?);
        }
        FreeBox::new(lo, hi)
    }
}

/// Members of `region` inside the box, by exhaustive membership.
pub fn region_window(group: &AbelianGroup, region: &Region, bx: &FreeBox) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    for p in bx.elements(group)? {
        if region.contains(group, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(xs: &[i64]) -> GroupElement {
        GroupElement::free_i64(xs)
    }

    #[test]
    fn shift_index_definition() {
        let g = AbelianGroup::free(2);
        let c = vec![e(&[1, 0]), e(&[0, 1])];
        let d = Region::cone(e(&[0, 0]), c.clone());
        assert_eq!(region_shift_index(&g, &d, 0, &c), d);
        let m1 = region_shift_index(&g, &d, -1, &c);
        assert_eq!(m1.components.len(), 2);
        assert_eq!(m1.components[0].shift, e(&[-1, 0]));
        assert_eq!(m1.components[1].shift, e(&[0, -1]));
        let g1 = AbelianGroup::free(1);
        let d = Region::cone(e(&[0]), vec![e(&[1])]);
        let r = region_shift_index(&g1, &d, -2, &[e(&[1])]);
        assert_eq!(r, Region::cone(e(&[-2]), vec![e(&[1])]));
    }

    #[test]
    fn membership() {
        let g = AbelianGroup::free(2);
        let quad = vec![e(&[1, 0]), e(&[0, 1])];
        let r = Region::cone(e(&[1, 0]), quad.clone());
        assert!(region_membership(&g, &e(&[3, 2]), &r).unwrap());
        let two = r.union(&Region::cone(e(&[0, 1]), quad));
        assert!(!region_membership(&g, &e(&[0, 0]), &two).unwrap());
        let g1 = AbelianGroup::free(1);
        let p23 = Region::cone(e(&[-5]), vec![e(&[-2]), e(&[-3])]);
        assert!(!region_membership(&g1, &e(&[-6]), &p23).unwrap());
        assert!(region_membership(&g1, &e(&[-7]), &p23).unwrap());
    }

    #[test]
    fn windows() {
        let g = AbelianGroup::free(2);
        let orth = Region::cone(e(&[0, 0]), vec![e(&[1, 0]), e(&[0, 1])]);
        let bx = FreeBox::cube(2, 0, 2).unwrap();
        assert_eq!(region_window(&g, &orth, &bx).unwrap().len(), 9);
        assert!(region_window(&g, &Region::empty(), &bx).unwrap().is_empty());
        assert!(FreeBox::new(vec![0], vec![-1]).is_err());
        assert_eq!("-1:3,0:0".parse::<FreeBox>().unwrap(), FreeBox::new(vec![-1, 0], vec![3, 0]).unwrap());
    }

    #[test]
    fn compositions() {
        assert_eq!(weak_compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(weak_compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(weak_compositions(3, 3).len(), 10);
    }
}
