//! Nonnegative integer solutions of linear systems over a finitely generated abelian group.
//!
//! Feasibility uses the Contejean-Devie breadth-first completion on the homogenized system,
//! fibers are enumerated by depth-first search under a positive functional, and Hilbert
//! bases are the minimal solutions of the homogeneous system.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::linalg;
use crate::lp;
pub use crate::snf::{smith_normal_form, SmithForm};

pub const DEFAULT_MAX_NODES: usize = 2_000_000;

/// `∃? λ ∈ N^k` with `Σ λ_j columns[j] = target` in the group.
#[derive(Clone, Debug)]
pub struct DiophantineSystem {
    group: AbelianGroup,
    columns: Vec<GroupElement>,
    target: GroupElement,
}

impl DiophantineSystem {
    pub fn new(group: &AbelianGroup, columns: Vec<GroupElement>, target: GroupElement) -> Result<Self> {
        for c in &columns {
            group.check(c)?;
        }
        group.check(&target)?;
        Ok(DiophantineSystem { group: group.clone(), columns, target })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn columns(&self) -> &[GroupElement] {
        &self.columns
    }

    pub fn target(&self) -> &GroupElement {
        &self.target
    }

    /// Whether `λ` satisfies the system exactly.
    pub fn check_witness(&self, lambda: &[BigInt]) -> bool {
        lambda.len() == self.columns.len()
            && lambda.iter().all(|x| !x.is_negative())
            && self.group.combination(lambda, &self.columns) == self.target
    }
}

/// Minimal nonzero solutions of a homogeneous system, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<Vec<BigInt>>,
}

impl HilbertBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: DEFAULT_MAX_NODES }
    }
}

/// Integer columns of a group system: free rows, then torsion rows, plus the
/// `±m_t e_t` slack columns that turn congruences into equations.
struct Lowered {
    cols: Vec<Vec<i64>>,
    /// For each lowered column, the original column it came from.
    origin: Vec<Option<usize>>,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("coefficient {x} exceeds 64 bits")))
}

fn element_row(p: &GroupElement) -> Result<Vec<i64>> {
    p.coordinates().iter().map(to_i64).collect()
}

fn lower(group: &AbelianGroup, columns: &[GroupElement]) -> Result<Lowered> {
    let r = group.rank();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut origin = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let v = element_row(c)?;
        if v.iter().all(|&x| x == 0) || cols.contains(&v) {
            continue;
        }
        cols.push(v);
        origin.push(Some(j));
    }
    let rows = r + group.torsion_moduli().len();
    for (t, m) in group.torsion_moduli().iter().enumerate() {
        let m = to_i64(m)?;
        for sign in [1, -1] {
            let mut v = vec![0; rows];
            v[r + t] = sign * m;
            cols.push(v);
            origin.push(None);
        }
    }
    Ok(Lowered { cols, origin })
}

/// Breadth-first Contejean-Devie completion.
struct Completion<'a> {
    cols: &'a [Vec<i64>],
    rows: usize,
    upper: Vec<Option<i64>>,
    max_nodes: usize,
}

enum Outcome {
    Stopped(Vec<i64>),
    Exhausted(Vec<Vec<i64>>),
}

fn dominates(v: &[i64], m: &[i64]) -> bool {
    v.iter().zip(m).all(|(a, b)| a >= b)
}

impl Completion<'_> {
    fn image_step(&self, av: &[i64], j: usize) -> Result<Vec<i64>> {
        av.iter()
            .zip(&self.cols[j])
            .map(|(a, b)| a.checked_add(*b).ok_or_else(|| Error::Overflow("solver arithmetic".into())))
            .collect()
    }

    fn run(&self, seed: Vec<Vec<i64>>, stop: impl Fn(&[i64]) -> bool) -> Result<Outcome> {
        let k = self.cols.len();
        let mut minimal = seed;
        let mut level: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for j in 0..k {
            if self.upper[j] == Some(0) {
                continue;
            }
            let mut v = vec![0; k];
            v[j] = 1;
            if minimal.iter().any(|m| dominates(&v, m)) {
                continue;
            }
            level.push((v, self.cols[j].clone()));
        }
        let mut nodes = level.len();
        while !level.is_empty() {
            let mut frontier = Vec::with_capacity(level.len());
            for (v, av) in level {
                if av.iter().all(|&x| x == 0) {
                    if stop(&v) {
                        return Ok(Outcome::Stopped(v));
                    }
                    if !minimal.iter().any(|m| dominates(&v, m)) {
                        minimal.push(v);
                    }
                } else {
                    frontier.push((v, av));
                }
            }
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            let mut next = Vec::new();
            for (v, av) in &frontier {
                for j in 0..k {
                    if self.upper[j].is_some_and(|b| v[j] >= b) {
                        continue;
                    }
                    let dot: i128 = (0..self.rows).map(|i| av[i] as i128 * self.cols[j][i] as i128).sum();
                    if dot >= 0 {
                        continue;
                    }
                    let mut w = v.clone();
                    w[j] += 1;
                    if minimal.iter().any(|m| dominates(&w, m)) || seen.contains(&w) {
                        continue;
                    }
                    let aw = self.image_step(av, j)?;
                    seen.insert(w.clone());
                    next.push((w, aw));
                    nodes += 1;
                    if nodes > self.max_nodes {
                        return Err(Error::Overflow(format!(
                            "Contejean-Devie search exceeded {} nodes",
                            self.max_nodes
                        )));
                    }
                }
            }
            level = next;
        }
        Ok(Outcome::Exhausted(minimal))
    }
}

/// Cheap necessary condition: the free part of the target lies in the rational cone of the columns.
fn rationally_feasible(group: &AbelianGroup, columns: &[GroupElement], target: &GroupElement) -> bool {
    let k = columns.len();
    let r = group.rank();
    if r == 0 {
        return true;
    }
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut a = Vec::with_capacity(k + 2 * r);
    let mut b = Vec::with_capacity(k + 2 * r);
    for j in 0..k {
        let mut row = vec![BigRational::zero(); k];
        row[j] = BigRational::from_integer(1.into());
        a.push(row);
        b.push(BigRational::zero());
    }
    for i in 0..r {
        let row: Vec<BigRational> = columns.iter().map(|c| q(&c.free()[i])).collect();
        a.push(row.iter().map(|x| -x).collect());
        b.push(-q(&target.free()[i]));
        a.push(row);
        b.push(q(&target.free()[i]));
    }
    lp::find_point(&a, &b, k).is_some()
}

pub fn solve_exists(sys: &DiophantineSystem) -> Result<Option<Vec<BigInt>>> {
    solve_exists_with(sys, Limits::default())
}

/// A witness `λ` if the system is solvable, `None` if not.
pub fn solve_exists_with(sys: &DiophantineSystem, limits: Limits) -> Result<Option<Vec<BigInt>>> {
    let k = sys.columns.len();
    if sys.target.is_zero() {
        return Ok(Some(vec![BigInt::zero(); k]));
    }
    if !rationally_feasible(&sys.group, &sys.columns, &sys.target) {
        return Ok(None);
    }
    let low = lower(&sys.group, &sys.columns)?;
    let target = element_row(&sys.target)?;
    let mut cols = Vec::with_capacity(low.cols.len() + 1);
    cols.push(target.iter().map(|x| -x).collect::<Vec<i64>>());
    cols.extend(low.cols.iter().cloned());
    let mut upper = vec![None; cols.len()];
    upper[0] = Some(1);
    let search = Completion { cols: &cols, rows: target.len(), upper, max_nodes: limits.max_nodes };
    match search.run(Vec::new(), |v| v[0] == 1)? {
        Outcome::Stopped(v) => {
            let mut lambda = vec![BigInt::zero(); k];
            for (idx, o) in low.origin.iter().enumerate() {
                if let Some(j) = o {
                    lambda[*j] = BigInt::from(v[idx + 1]);
                }
            }
            debug_assert!(sys.check_witness(&lambda));
            Ok(Some(lambda))
        }
        Outcome::Exhausted(_) => Ok(None),
    }
}

/// Some rational `h` with `h·v >= 1` for every vector, scaled to be integral.
pub fn positive_functional(vectors: &[Vec<BigInt>], dim: usize) -> Option<Vec<BigInt>> {
    let a: Vec<Vec<BigRational>> = vectors.iter().map(|v| linalg::to_rational_vec(v)).collect();
    let b = vec![BigRational::from_integer(1.into()); vectors.len()];
    let h = lp::find_point(&a, &b, dim)?;
    let den = h.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    Some(h.iter().map(|x| x.numer() * (&den / x.denom())).collect())
}

/// All `u ∈ N^k` with `Σ u_j columns[j] = target`, requiring a positive functional on the
/// free parts of the columns (so the set is finite).
pub fn enumerate_solutions(
    group: &AbelianGroup,
    columns: &[GroupElement],
    target: &GroupElement,
) -> Result<Vec<Vec<u64>>> {
    for c in columns {
        group.check(c)?;
    }
    group.check(target)?;
    let r = group.rank();
    let free: Vec<Vec<BigInt>> = columns.iter().map(|c| c.free().to_vec()).collect();
    let h = positive_functional(&free, r).ok_or(Error::NotPointed)?;
    let weights: Vec<BigInt> = free.iter().map(|v| linalg::dot_int(&h, v)).collect();
    let budget = linalg::dot_int(&h, target.free());
    let mut out = Vec::new();
    if budget.is_negative() {
        return Ok(out);
    }
    let mut u = vec![0u64; columns.len()];
    let mut acc = group.zero();
    fiber_dfs(group, columns, &weights, target, 0, &budget, &mut u, &mut acc, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fiber_dfs(
    group: &AbelianGroup,
    columns: &[GroupElement],
    weights: &[BigInt],
    target: &GroupElement,
    j: usize,
    remaining: &BigInt,
    u: &mut Vec<u64>,
    acc: &mut GroupElement,
    out: &mut Vec<Vec<u64>>,
) {
    if j == columns.len() {
        if acc == target {
            out.push(u.clone());
        }
        return;
    }
    let max = (remaining / &weights[j]).to_u64().unwrap_or(u64::MAX);
    let saved = acc.clone();
    let mut rem = remaining.clone();
    for x in 0..=max {
        u[j] = x;
        fiber_dfs(group, columns, weights, target, j + 1, &rem, u, acc, out);
        *acc = group.add_unchecked(acc, &columns[j]);
        rem -= &weights[j];
    }
    u[j] = 0;
    *acc = saved;
}

/// Monomials `x^u` of degree `p`.
pub fn enumerate_fiber(group: &AbelianGroup, degrees: &[GroupElement], p: &GroupElement) -> Result<Vec<Vec<u64>>> {
    enumerate_solutions(group, degrees, p)
}

pub fn hilbert_basis(group: &AbelianGroup, columns: &[GroupElement]) -> Result<HilbertBasis> {
    hilbert_basis_with(group, columns, Limits::default())
}

/// Minimal nonzero `λ ∈ N^k` with `Σ λ_j columns[j] = 0`, over a torsion-free group.
pub fn hilbert_basis_with(group: &AbelianGroup, columns: &[GroupElement], limits: Limits) -> Result<HilbertBasis> {
    if !group.is_torsion_free() {
        return Err(Error::TorsionUnsupported);
    }
    for c in columns {
        group.check(c)?;
    }
    let cols: Vec<Vec<i64>> = columns.iter().map(element_row).collect::<Result<_>>()?;
    let mins = minimal_solutions(&cols, group.rank(), Vec::new(), limits)?;
    let mut elements: Vec<Vec<BigInt>> =
        mins.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect();
    elements.sort();
    Ok(HilbertBasis { elements })
}

/// All minimal nonzero solutions of the homogeneous integer system with the given columns.
pub(crate) fn minimal_solutions(
    cols: &[Vec<i64>],
    rows: usize,
    seed: Vec<Vec<i64>>,
    limits: Limits,
) -> Result<Vec<Vec<i64>>> {
    let search = Completion { cols, rows, upper: vec![None; cols.len()], max_nodes: limits.max_nodes };
    let n_seed = seed.len();
    match search.run(seed, |_| false)? {
        Outcome::Exhausted(m) => Ok(m.into_iter().skip(n_seed).collect()),
        Outcome::Stopped(_) => unreachable!("search without a stopping rule"),
    }
}

/// Hilbert basis of `{y ∈ Z^k : h·y >= 0 for every row h}` for a pointed cone.
pub fn cone_hilbert_basis(inequalities: &[Vec<BigInt>], k: usize, limits: Limits) -> Result<Vec<Vec<BigInt>>> {
    let q = inequalities.len();
    let rows: Vec<Vec<i64>> =
        inequalities.iter().map(|h| h.iter().map(to_i64).collect::<Result<Vec<i64>>>()).collect::<Result<_>>()?;
    // unknowns (y+, y-, s): H y+ - H y- - s = 0
    let mut cols = Vec::with_capacity(2 * k + q);
    for sign in [1i64, -1] {
        for j in 0..k {
            cols.push(rows.iter().map(|h| sign * h[j]).collect::<Vec<i64>>());
        }
    }
    for i in 0..q {
        let mut c = vec![0; q];
        c[i] = -1;
        cols.push(c);
    }
    let width = 2 * k + q;
    let seed: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            let mut v = vec![0; width];
            v[j] = 1;
            v[k + j] = 1;
            v
        })
        .collect();
    let mins = minimal_solutions(&cols, q, seed, limits)?;
    let mut cands: Vec<Vec<i64>> = mins.iter().map(|v| (0..k).map(|j| v[j] - v[k + j]).collect()).collect();
    cands.retain(|y: &Vec<i64>| y.iter().any(|&x| x != 0));
    cands.sort();
    cands.dedup();
    let in_cone = |y: &[i64]| rows.iter().all(|h| h.iter().zip(y).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>() >= 0);
    let irreducible: Vec<Vec<i64>> = cands
        .iter()
        .filter(|g| {
            !cands.iter().any(|g2| {
                g2 != *g && {
                    let diff: Vec<i64> = g.iter().zip(g2).map(|(a, b)| a - b).collect();
                    diff.iter().any(|&x| x != 0) && in_cone(&diff)
                }
            })
        })
        .cloned()
        .collect();
    Ok(irreducible.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect())
}

/// The subgroup of `G` generated by some elements, as a lattice in coordinate space
/// containing the torsion relations.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: AbelianGroup,
    lattice: crate::lattice::Lattice,
}

impl Subgroup {
    pub fn generated_by(group: &AbelianGroup, gens: &[GroupElement]) -> Self {
        let dim = group.rank() + group.torsion_moduli().len();
        let mut vs: Vec<Vec<BigInt>> = gens.iter().map(GroupElement::coordinates).collect();
        vs.extend(relation_vectors(group));
        Subgroup { group: group.clone(), lattice: crate::lattice::Lattice::from_generators(dim, &vs) }
    }

    pub fn contains(&self, p: &GroupElement) -> bool {
        self.lattice.contains(&p.coordinates())
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { group: self.group.clone(), lattice: self.lattice.intersection(&other.lattice) }
    }

    pub(crate) fn lattice(&self) -> &crate::lattice::Lattice {
        &self.lattice
    }
}

pub(crate) fn relation_vectors(group: &AbelianGroup) -> Vec<Vec<BigInt>> {
    let r = group.rank();
    let dim = r + group.torsion_moduli().len();
    group
        .torsion_moduli()
        .iter()
        .enumerate()
        .map(|(t, m)| {
            let mut v = vec![BigInt::zero(); dim];
            v[r + t] = m.clone();
            v
        })
        .collect()
}
