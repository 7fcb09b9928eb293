//! Finitely generated abelian groups `Z^r ⊕ Z/m_1 ⊕ … ⊕ Z/m_s` and their elements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, GroupError> {
        if let Some(m) = torsion.iter().find(|m| **m < BigInt::from(2)) {
            return Err(GroupError::BadModulus(m.clone()));
        }
        Ok(AbelianGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn with_torsion(rank: usize, moduli: &[i64]) -> Result<Self, GroupError> {
        AbelianGroup::new(rank, moduli.iter().map(|&m| BigInt::from(m)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_moduli(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of elements of the torsion subgroup, if it fits in a `u64`.
    pub fn torsion_order(&self) -> Option<u64> {
        self.torsion.iter().try_fold(1u64, |acc, m| acc.checked_mul(m.to_u64()?))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Builds an element, reducing torsion coordinates into `[0, m_t)`.
    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        if free.len() != self.rank || torsion.len() != self.torsion.len() {
            return Err(GroupError::Shape {
                rank: self.rank,
                torsion: self.torsion.len(),
                got_free: free.len(),
                got_torsion: torsion.len(),
            });
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(x, m)| x.mod_floor(m)).collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn element_i64(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElement, GroupError> {
        self.element(
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    /// Checks that `p` has the right shape and reduced torsion residues.
    pub fn check(&self, p: &GroupElement) -> Result<(), GroupError> {
        if p.free.len() != self.rank || p.torsion.len() != self.torsion.len() {
            return Err(GroupError::Shape {
                rank: self.rank,
                torsion: self.torsion.len(),
                got_free: p.free.len(),
                got_torsion: p.torsion.len(),
            });
        }
        for (x, m) in p.torsion.iter().zip(&self.torsion) {
            if x.is_negative() || x >= m {
                return Err(GroupError::Unreduced(x.clone(), m.clone()));
            }
        }
        Ok(())
    }

    pub fn contains(&self, p: &GroupElement) -> bool {
        self.check(p).is_ok()
    }

    pub fn add(&self, p: &GroupElement, q: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn neg(&self, p: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    pub fn sub(&self, p: &GroupElement, q: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, &self.neg_unchecked(q)))
    }

    pub(crate) fn add_unchecked(&self, p: &GroupElement, q: &GroupElement) -> GroupElement {
        GroupElement {
            free: p.free.iter().zip(&q.free).map(|(a, b)| a + b).collect(),
            torsion: p
                .torsion
                .iter()
                .zip(&q.torsion)
                .zip(&self.torsion)
                .map(|((a, b), m)| (a + b).mod_floor(m))
                .collect(),
        }
    }

    pub(crate) fn neg_unchecked(&self, p: &GroupElement) -> GroupElement {
        GroupElement {
            free: p.free.iter().map(|a| -a).collect(),
            torsion: p.torsion.iter().zip(&self.torsion).map(|(a, m)| (-a).mod_floor(m)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt, p: &GroupElement) -> GroupElement {
        GroupElement {
            free: p.free.iter().map(|a| a * k).collect(),
            torsion: p.torsion.iter().zip(&self.torsion).map(|(a, m)| (a * k).mod_floor(m)).collect(),
        }
    }

    /// `Σ coeffs[j] * elements[j]`.
    pub fn combination(&self, coeffs: &[BigInt], elements: &[GroupElement]) -> GroupElement {
        assert_eq!(coeffs.len(), elements.len(), "coefficient count mismatch");
        coeffs
            .iter()
            .zip(elements)
            .fold(self.zero(), |acc, (c, e)| self.add_unchecked(&acc, &self.scale(c, e)))
    }

    /// Every element of the torsion subgroup, in lexicographic order of residues.
    pub fn torsion_elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for m in &self.torsion {
            let m = m.to_u64().expect("torsion modulus too large to enumerate");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(x));
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.rank));
        }
        for m in &self.torsion {
            parts.push(format!("Z/{m}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of an [`AbelianGroup`]: a free part in `Z^r` and reduced torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    /// An element of a free group `Z^r`.
    pub fn free_i64(xs: &[i64]) -> Self {
        GroupElement { free: xs.iter().map(|&x| BigInt::from(x)).collect(), torsion: Vec::new() }
    }

    /// Raw constructor; the caller is responsible for reduced residues.
    pub fn from_parts(free: Vec<BigInt>, torsion: Vec<BigInt>) -> Self {
        GroupElement { free, torsion }
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Image in `R ⊗ G = Q^r`.
    pub fn image(&self) -> Vec<BigRational> {
        self.free.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn free_is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }

    /// All coordinates, free part first, as one integer vector.
    pub fn coordinates(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({})", free.join(","))?;
        if !self.torsion.is_empty() {
            let tors: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", tors.join(","))?;
        }
        Ok(())
    }
}

/// Integers in JSON: numbers when they fit in 64 bits, decimal strings otherwise.
pub(crate) mod json_int {
    use super::*;

    pub fn to_value(x: &BigInt) -> serde_json::Value {
        match x.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(x.to_string()),
        }
    }

    pub fn from_value(v: &serde_json::Value) -> Result<BigInt, String> {
        match v {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(BigInt::from(u))
                } else {
                    Err(format!("expected an integer, got {n}"))
                }
            }
            serde_json::Value::String(s) => s.trim().parse().map_err(|_| format!("bad integer {s:?}")),
            other => Err(format!("expected an integer, got {other}")),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let free: Vec<serde_json::Value> = self.free.iter().map(json_int::to_value).collect();
        let torsion: Vec<serde_json::Value> = self.torsion.iter().map(json_int::to_value).collect();
        let mut st = serializer.serialize_struct("GroupElement", 2)?;
        st.serialize_field("free", &free)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            free: Vec<serde_json::Value>,
            #[serde(default)]
            torsion: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let conv = |xs: Vec<serde_json::Value>| -> Result<Vec<BigInt>, D::Error> {
            xs.iter().map(|v| json_int::from_value(v).map_err(de::Error::custom)).collect()
        };
        Ok(GroupElement { free: conv(raw.free)?, torsion: conv(raw.torsion)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeRole {
    VariableDegrees,
    SemigroupGenerators,
}

/// An ordered list of degrees: either the `a_i` of the variables or the set `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeList {
    elements: Vec<GroupElement>,
    role: DegreeRole,
}

impl DegreeList {
    pub fn new(group: &AbelianGroup, elements: Vec<GroupElement>, role: DegreeRole) -> Result<Self, GroupError> {
        if elements.is_empty() {
            return Err(GroupError::EmptyDegreeList);
        }
        for e in &elements {
            group.check(e)?;
        }
        Ok(DegreeList { elements, role })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn role(&self) -> DegreeRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Parses a degree written as `free[;torsion]`, e.g. `1,0` or `1,1;0,1`.
pub fn parse_degree(group: &AbelianGroup, s: &str) -> Result<GroupElement, GroupError> {
    let (free_s, tors_s) = match s.split_once(';') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    let parse_list = |t: &str| -> Result<Vec<BigInt>, GroupError> {
        t.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<BigInt>().map_err(|_| GroupError::Parse(s.to_string())))
            .collect()
    };
    group.element(parse_list(free_s)?, parse_list(tors_s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_addition() {
        let g = AbelianGroup::free(2);
        let p = GroupElement::free_i64(&[1, 0]);
        let q = GroupElement::free_i64(&[0, 1]);
        assert_eq!(g.add(&p, &q).unwrap(), GroupElement::free_i64(&[1, 1]));
    }

    #[test]
    fn torsion_of_order_two() {
        let g = AbelianGroup::with_torsion(2, &[2, 2]).unwrap();
        let p = g.element_i64(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(g.add(&p, &p).unwrap(), g.element_i64(&[2, 2], &[0, 0]).unwrap());
    }

    #[test]
    fn inverse_gives_identity() {
        let g = AbelianGroup::with_torsion(2, &[2, 2]).unwrap();
        let p = g.element_i64(&[2, 0], &[0, 0]).unwrap();
        let s = g.add(&p, &g.neg(&p).unwrap()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let g = AbelianGroup::free(2);
        let p = GroupElement::free_i64(&[1, 0, 0]);
        assert!(g.add(&p, &p).is_err());
        let t = AbelianGroup::with_torsion(1, &[3]).unwrap();
        let bad = GroupElement::from_parts(vec![BigInt::from(1)], vec![BigInt::from(5)]);
        assert!(t.check(&bad).is_err());
        assert!(AbelianGroup::with_torsion(1, &[1]).is_err());
    }

    #[test]
    fn json_shape() {
        let g = AbelianGroup::with_torsion(2, &[2]).unwrap();
        let p = g.element_i64(&[3, -1], &[1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"free":[3,-1],"torsion":[1]}"#);
        let back: GroupElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let huge: GroupElement = serde_json::from_str(r#"{"free":["123456789012345678901234567890"]}"#).unwrap();
        assert_eq!(huge.free()[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn parse_command_line_degrees() {
        let g = AbelianGroup::with_torsion(2, &[2, 2]).unwrap();
        let p = parse_degree(&g, "1,0;3,1").unwrap();
        assert_eq!(p, g.element_i64(&[1, 0], &[1, 1]).unwrap());
        assert!(parse_degree(&g, "1").is_err());
    }
}
