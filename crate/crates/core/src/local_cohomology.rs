//! Local cohomology of `S` with support in `B`: the graded pieces `H^i_B(S)_u` are reduced
//! cohomology groups `H̃^{i-2}(Δ_{neg u})`, so each `H^i_B(S)` is supported on finitely many
//! shifted monoids in `G`. An independent Čech-complex computation is provided as an oracle.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    mask_of, nonzero_witnesses, position, rank_over, reduced_cohomology_dims, vertices_of, Mask, DEFAULT_SUBSET_CAP,
};
use crate::diophantine::{enumerate_solutions, solve_exists, DiophantineSystem};
use crate::error::{Error, Result};
use crate::fan::GradingSetup;
use crate::group::GroupElement;
use crate::linalg::IntMatrix;
use crate::region::Region;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEntry {
    /// `σ ⊆ [n]`, 0-based.
    pub sigma: Vec<usize>,
    /// `dim H̃^{i-2}(Δ_σ)`.
    pub mult: usize,
    /// `-Σ_{j∈σ} a_j + N{a_j : j ∉ σ} + N{-a_j : j ∈ σ}`.
    pub region: Region,
}

/// Rows `i = 0, …, d+1` of support entries; rows 0 and 1 are always empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportTable {
    rows: Vec<Vec<SupportEntry>>,
}

/// One line of the JSON form of a support table (`sigma` is 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportRow {
    pub i: usize,
    pub sigma: Vec<usize>,
    pub mult: usize,
    pub shift: GroupElement,
    pub generators: Vec<GroupElement>,
}

impl SupportTable {
    /// Entries of row `i`; empty outside `0..=d+1`.
    pub fn row(&self, i: usize) -> &[SupportEntry] {
        self.rows.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of rows, `d + 2`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Rows with at least one entry.
    pub fn nonempty_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| !self.rows[i].is_empty()).collect()
    }

    /// `H^i_B(S)_p ≠ 0`.
    pub fn in_support(&self, setup: &GradingSetup, i: usize, p: &GroupElement) -> Result<bool> {
        for e in self.row(i) {
            if e.region.contains(setup.group(), p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_rows(&self) -> Vec<SupportRow> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for e in row {
                let c = &e.region.components[0];
                out.push(SupportRow {
                    i,
                    sigma: e.sigma.iter().map(|v| v + 1).collect(),
                    mult: e.mult,
                    shift: c.shift.clone(),
                    generators: c.generators.clone(),
                });
            }
        }
        out
    }

    pub fn from_rows(rows: &[SupportRow]) -> SupportTable {
        let len = rows.iter().map(|r| r.i + 1).max().unwrap_or(0);
        let mut table = vec![Vec::new(); len];
        for r in rows {
            table[r.i].push(SupportEntry {
                sigma: r.sigma.iter().map(|v| v - 1).collect(),
                mult: r.mult,
                region: Region::cone(r.shift.clone(), r.generators.clone()),
            });
        }
        SupportTable { rows: table }
    }
}

/// The region of degrees `deg(u)` with `neg(u) = σ`.
pub fn sigma_region(setup: &GradingSetup, sigma: &[usize]) -> Region {
    let g = setup.group();
    let a = setup.degrees();
    let mut shift = g.zero();
    let mut gens = Vec::new();
    for (j, aj) in a.iter().enumerate() {
        if sigma.contains(&j) {
            shift = g.sub(&shift, aj).expect("degrees belong to the group");
            gens.push(g.neg(aj).expect("degrees belong to the group"));
        } else {
            gens.push(aj.clone());
        }
    }
    Region::cone(shift, gens)
}

pub fn support_table(setup: &GradingSetup) -> Result<SupportTable> {
    support_table_with_cap(setup, DEFAULT_SUBSET_CAP)
}

/// Builds the support table from the subsets `σ` with nonvanishing reduced cohomology.
pub fn support_table_with_cap(setup: &GradingSetup, cap: usize) -> Result<SupportTable> {
    if !setup.flags().pointed {
        return Err(Error::HypothesisViolated(
            "the cone spanned by the free degrees is not pointed, so the topological formula does not apply".into(),
        ));
    }
    let d = setup.d();
    let mut rows = vec![Vec::new(); d + 2];
    for w in nonzero_witnesses(setup.delta(), setup.field(), cap)? {
        let i = w.degree + 2;
        if i < rows.len() {
            let sigma = vertices_of(w.sigma);
            let region = sigma_region(setup, &sigma);
            rows[i].push(SupportEntry { sigma, mult: w.dim, region });
        }
    }
    Ok(SupportTable { rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertDim {
    Finite(u64),
    Infinite,
}

/// `dim_k H^i_B(S)_p`.
pub fn hilbert_dim(setup: &GradingSetup, table: &SupportTable, i: usize, p: &GroupElement) -> Result<HilbertDim> {
    setup.check(p)?;
    if i == 1 {
        return Ok(HilbertDim::Finite(0));
    }
    let g = setup.group();
    let a = setup.degrees();
    let mut total: u64 = 0;
    for e in table.row(i) {
        // u_j = -1 - v_j on σ, u_j = v_j off σ
        let mut target = p.clone();
        let mut columns = Vec::with_capacity(a.len());
        for (j, aj) in a.iter().enumerate() {
            if e.sigma.contains(&j) {
                target = g.add(&target, aj)?;
                columns.push(g.neg(aj)?);
            } else {
                columns.push(aj.clone());
            }
        }
        match enumerate_solutions(g, &columns, &target) {
            Ok(sols) => total += e.mult as u64 * sols.len() as u64,
            Err(Error::NotPointed) => {
                let sys = DiophantineSystem::new(g, columns, target)?;
                if solve_exists(&sys)?.is_some() {
                    return Ok(HilbertDim::Infinite);
                }
            }
            Err(err) => return Err(err),
        }
    }
    Ok(HilbertDim::Finite(total))
}

/// `neg(u)` as a mask.
fn neg_mask(u: &[i64]) -> Mask {
    mask_of(&(0..u.len()).filter(|&j| u[j] < 0).collect::<Vec<_>>())
}

/// `dim H̃^{i-2}(Δ_{neg u})` for `i >= 2`, and 0 for `i ∈ {0, 1}`.
pub fn formula_dimension(setup: &GradingSetup, u: &[i64], i: usize) -> usize {
    formula_dimensions(setup, u).get(i).copied().unwrap_or(0)
}

/// [`formula_dimension`] for `i = 0, …, d+1`.
pub fn formula_dimensions(setup: &GradingSetup, u: &[i64]) -> Vec<usize> {
    let dims = reduced_cohomology_dims(setup.delta(), neg_mask(u), setup.field());
    (0..setup.d() + 2).map(|i| if i < 2 { 0 } else { dims.get(i - 1).copied().unwrap_or(0) }).collect()
}

/// Orientation signs on the facets making the augmented Čech differential square to zero:
/// across a ridge `τ = σ₁ - v₁ = σ₂ - v₂`, `o(σ₂) = -o(σ₁) (-1)^{pos(v₁,σ₁)} (-1)^{pos(v₂,σ₂)}`.
fn facet_orientations(facets: &[Mask]) -> HashMap<Mask, i64> {
    let mut by_ridge: HashMap<Mask, Vec<(Mask, usize)>> = HashMap::new();
    for &f in facets {
        for v in vertices_of(f) {
            by_ridge.entry(f & !(1 << v)).or_default().push((f, v));
        }
    }
    let sign = |f: Mask, v: usize| if position(f, v).is_multiple_of(2) { 1 } else { -1 };
    let mut orient: HashMap<Mask, i64> = HashMap::new();
    for &start in facets {
        if orient.contains_key(&start) {
            continue;
        }
        orient.insert(start, 1);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let of = orient[&f];
            for v in vertices_of(f) {
                for &(g, w) in &by_ridge[&(f & !(1 << v))] {
                    if g != f && !orient.contains_key(&g) {
                        orient.insert(g, -of * sign(f, v) * sign(g, w));
                        queue.push_back(g);
                    }
                }
            }
        }
    }
    orient
}

/// Dimension of `H^i` of the degree-`u` strand of the canonical Čech complex.
pub fn cech_dimension(setup: &GradingSetup, u: &[i64], i: usize) -> usize {
    cech_dimensions(setup, u).get(i).copied().unwrap_or(0)
}

/// [`cech_dimension`] for `i = 0, …, d+1`.
///
/// Level 0 is `k` when `u >= 0` and zero otherwise; level `k >= 1` has a basis vector for each
/// face `τ ∈ Δ` with `|τ| = d+1-k` and `τ ∩ neg(u) = ∅`.
pub fn cech_dimensions(setup: &GradingSetup, u: &[i64]) -> Vec<usize> {
    let d = setup.d();
    let neg = neg_mask(u);
    let mut levels: Vec<Vec<Mask>> = vec![Vec::new(); d + 2];
    for f in setup.delta().induced_faces(!neg) {
        levels[d + 1 - f.count_ones() as usize].push(f);
    }
    for l in levels.iter_mut() {
        l.sort_unstable();
    }
    let level0 = if neg == 0 { 1 } else { 0 };
    let sizes: Vec<usize> = (0..=d + 1).map(|k| if k == 0 { level0 } else { levels[k].len() }).collect();
    let orient = facet_orientations(setup.delta().facet_masks());
    // diff[k]: level k -> level k+1, rows indexed by level k+1
    let mut ranks = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut m = IntMatrix::zeros(sizes[k + 1], sizes[k]);
        if k == 0 {
            if level0 == 1 {
                for (row, f) in levels[1].iter().enumerate() {
                    m[(row, 0)] = BigInt::from(orient.get(f).copied().unwrap_or(1));
                }
            }
        } else {
            let index: HashMap<Mask, usize> = levels[k + 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
            for (col, &f) in levels[k].iter().enumerate() {
                for v in vertices_of(f) {
                    if let Some(&row) = index.get(&(f & !(1 << v))) {
                        m[(row, col)] = BigInt::from(if position(f, v).is_multiple_of(2) { 1 } else { -1 });
                    }
                }
            }
        }
        ranks.push(rank_over(&m, setup.field()));
    }
    (0..=d + 1)
        .map(|k| {
            let out = if k <= d { ranks[k] } else { 0 };
            let inc = if k == 0 { 0 } else { ranks[k - 1] };
            sizes[k] - out - inc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn p1_top_cohomology() {
        let s = catalog::projective_space(1).unwrap();
        assert_eq!(cech_dimension(&s, &[-1, -1], 2), 1);
        assert_eq!(formula_dimension(&s, &[-1, -1], 2), 1);
        let t = support_table(&s).unwrap();
        assert_eq!(hilbert_dim(&s, &t, 2, &GroupElement::free_i64(&[-2])).unwrap(), HilbertDim::Finite(1));
        assert_eq!(hilbert_dim(&s, &t, 2, &GroupElement::free_i64(&[-4])).unwrap(), HilbertDim::Finite(3));
        assert_eq!(hilbert_dim(&s, &t, 2, &GroupElement::free_i64(&[-1])).unwrap(), HilbertDim::Finite(0));
    }

    #[test]
    fn hirzebruch_rows() {
        let s = catalog::hirzebruch(2, [1, 1]).unwrap();
        let t = support_table(&s).unwrap();
        assert_eq!(t.nonempty_rows(), vec![2, 3]);
        let sig: Vec<Vec<usize>> = t.row(2).iter().map(|e| e.sigma.clone()).collect();
        assert_eq!(sig, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(t.row(3)[0].region.components[0].shift, GroupElement::free_i64(&[0, -2]));
        assert_eq!(cech_dimension(&s, &[-1, 0, -1, 0], 2), 1);
        assert_eq!(cech_dimension(&s, &[-1, 0, -1, 0], 3), 0);
    }

    #[test]
    fn roundtrip_rows() {
        let s = catalog::hirzebruch(2, [1, 1]).unwrap();
        let t = support_table(&s).unwrap();
        let back = SupportTable::from_rows(&t.to_rows());
        assert_eq!(back.to_rows(), t.to_rows());
    }
}
