//! Simplicial complexes on at most 64 vertices and reduced cohomology of induced subcomplexes.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const DEFAULT_SUBSET_CAP: usize = 22;

/// Bit `i` set means vertex `i` (0-based).
pub type Mask = u64;

pub fn mask_of(vertices: &[usize]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn vertices_of(mask: Mask) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut sub = m;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & m;
        }
        Some(cur)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Mask>,
}

impl SimplicialComplex {
    /// Builds the complex generated by the given faces; non-maximal ones are dropped.
    pub fn from_facets(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if n > 64 {
            return Err(Error::Invalid(format!("{n} vertices exceed the supported 64")));
        }
        let mut masks = Vec::new();
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::BadTriangulation(format!("vertex {} out of range 1..={n}", v + 1)));
            }
            let m = mask_of(f);
            if m.count_ones() as usize != f.len() {
                return Err(Error::BadTriangulation(format!("facet {f:?} repeats a vertex")));
            }
            masks.push(m);
        }
        Ok(SimplicialComplex::from_masks(n, masks))
    }

    pub fn from_masks(n: usize, mut masks: Vec<Mask>) -> Self {
        masks.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), vertices_of(m)));
        masks.dedup();
        let mut facets: Vec<Mask> = Vec::new();
        for m in masks {
            if !facets.iter().any(|&f| f & m == m) {
                facets.push(m);
            }
        }
        facets.sort_by_key(|&m| vertices_of(m));
        SimplicialComplex { n, facets }
    }

    /// Boundary of the simplex on `n` vertices.
    pub fn simplex_boundary(n: usize) -> Self {
        let full: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
        SimplicialComplex::from_masks(n, (0..n).map(|i| full & !(1 << i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facet_masks(&self) -> &[Mask] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| vertices_of(m)).collect()
    }

    pub fn contains_face(&self, face: Mask) -> bool {
        face == 0 || self.facets.iter().any(|&f| f & face == face)
    }

    /// Vertices that belong to some face.
    pub fn vertex_mask(&self) -> Mask {
        self.facets.iter().fold(0, |a, &f| a | f)
    }

    /// Faces of the induced subcomplex `{τ ∈ Δ : τ ⊆ σ}`, including the empty face.
    pub fn induced_faces(&self, sigma: Mask) -> Vec<Mask> {
        let mut set: HashSet<Mask> = HashSet::new();
        set.insert(0);
        for &f in &self.facets {
            let m = f & sigma;
            if set.contains(&m) {
                continue;
            }
            set.extend(submasks(m));
        }
        let mut faces: Vec<Mask> = set.into_iter().collect();
        faces.sort_by_key(|&m| (m.count_ones(), vertices_of(m)));
        faces
    }

    pub fn faces(&self) -> Vec<Mask> {
        self.induced_faces(!0)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .facets()
            .iter()
            .map(|fc| format!("{{{}}}", fc.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let p = t
            .strip_prefix("GF(")
            .and_then(|x| x.strip_suffix(')'))
            .and_then(|x| x.parse::<u64>().ok())
            .ok_or_else(|| Error::Invalid(format!("unknown field {s:?}, expected Q or GF(p)")))?;
        if p < 2 || (2..p).take_while(|k| k * k <= p).any(|k| p % k == 0) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn rank_over(m: &IntMatrix, field: Field) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    match field {
        Field::Rationals => m.rank(),
        Field::Prime(p) => m.rank_mod(p),
    }
}

/// Position of `v` among the vertices of `face`, i.e. the number of smaller vertices.
pub(crate) fn position(face: Mask, v: usize) -> usize {
    (face & ((1u64 << v) - 1)).count_ones() as usize
}

/// Matrix of the map from faces of size `k` to faces of size `k+1` sending `τ` to
/// `Σ_{v ∉ τ} (-1)^{pos(v, τ ∪ v)} (τ ∪ v)`.
fn coboundary(lower: &[Mask], upper: &[Mask]) -> IntMatrix {
    let index: std::collections::HashMap<Mask, usize> = lower.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut m = IntMatrix::zeros(upper.len(), lower.len());
    for (row, &tau) in upper.iter().enumerate() {
        for v in vertices_of(tau) {
            if let Some(&col) = index.get(&(tau & !(1 << v))) {
                m[(row, col)] = if position(tau, v).is_multiple_of(2) { 1.into() } else { (-1).into() };
            }
        }
    }
    m
}

/// `dims[j+1] = dim H̃^j(Δ_σ)` for `j = -1, …, top` where `top + 1` is the largest facet size.
pub fn reduced_cohomology_dims(delta: &SimplicialComplex, sigma: Mask, field: Field) -> Vec<usize> {
    let top = delta.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let faces = delta.induced_faces(sigma);
    let mut by_size: Vec<Vec<Mask>> = vec![Vec::new(); top + 2];
    for f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    // ranks[k] = rank of the map from size-k faces to size-(k+1) faces
    let ranks: Vec<usize> = (0..=top).map(|k| rank_over(&coboundary(&by_size[k], &by_size[k + 1]), field)).collect();
    (0..=top)
        .map(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            by_size[k].len() - ranks[k] - incoming
        })
        .collect()
}

/// `-1 + Σ (-1)^{|τ|-1}` over nonempty faces `τ` of `Δ_σ`; equals `Σ (-1)^j dim H̃^j`.
pub fn reduced_euler_characteristic(delta: &SimplicialComplex, sigma: Mask) -> i64 {
    delta
        .induced_faces(sigma)
        .iter()
        .map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 })
        .sum()
}

/// A subset `σ` with `H̃^degree(Δ_σ) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sigma: Mask,
    pub degree: usize,
    pub dim: usize,
}

/// All `(σ, j, dim)` with `j >= 0` and `dim H̃^j(Δ_σ) > 0`, ordered by `|σ|`, then `σ`, then `j`.
pub fn nonzero_witnesses(delta: &SimplicialComplex, field: Field, cap: usize) -> Result<Vec<Witness>> {
    let n = delta.n;
    if n > cap || n >= 64 {
        return Err(Error::SubsetCapExceeded { n, cap });
    }
    let mut out: Vec<Witness> = (0..1u64 << n)
        .into_par_iter()
        .flat_map_iter(|sigma| {
            let dims = reduced_cohomology_dims(delta, sigma, field);
            dims.into_iter()
                .enumerate()
                .skip(1)
                .filter(|&(_, d)| d > 0)
                .map(move |(k, dim)| Witness { sigma, degree: k - 1, dim })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by_key(|w| (w.sigma.count_ones(), vertices_of(w.sigma), w.degree));
    Ok(out)
}
