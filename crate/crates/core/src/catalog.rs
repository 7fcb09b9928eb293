//! Ready-made setups: projective spaces and their products, Hirzebruch surfaces, weighted
//! projective spaces, a grading with torsion, and a few blowups.

use crate::error::Result;
use crate::fan::{group_from_rays, ChamberSpec, GradingSetup};
use crate::group::{AbelianGroup, GroupElement};
use crate::linalg::IntMatrix;

fn free_columns(rows: &[Vec<i64>]) -> Vec<GroupElement> {
    let n = rows[0].len();
    (0..n).map(|j| GroupElement::free_i64(&rows.iter().map(|r| r[j]).collect::<Vec<_>>())).collect()
}

fn units(r: usize) -> Vec<GroupElement> {
    (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            GroupElement::free_i64(&v)
        })
        .collect()
}

/// Facets `{i, i+1}` (cyclically) of a polygon on `n` vertices, 0-based.
fn polygon(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| {
        let mut f = vec![i, (i + 1) % n];
        f.sort();
        f
    }).collect()
}

/// `P^n` with the standard grading and `C = {1}`.
pub fn projective_space(n: usize) -> Result<GradingSetup> {
    weighted_projective_space(&vec![1; n + 1], &[1])
}

/// `k[x_1..x_n]` graded by positive weights with `B` the maximal ideal.
pub fn weighted_projective_space(weights: &[i64], c: &[i64]) -> Result<GradingSetup> {
    let g = AbelianGroup::free(1);
    let a = weights.iter().map(|&w| GroupElement::free_i64(&[w])).collect();
    let c = c.iter().map(|&x| GroupElement::free_i64(&[x])).collect();
    GradingSetup::new(g, a, ChamberSpec::point(&[1]), Some(c))
}

/// `P^{n_1} × … × P^{n_k}` with `C` the standard basis.
pub fn product_of_projective_spaces(dims: &[usize]) -> Result<GradingSetup> {
    let r = dims.len();
    let g = AbelianGroup::free(r);
    let mut a = Vec::new();
    for (k, &nk) in dims.iter().enumerate() {
        for _ in 0..=nk {
            a.push(units(r)[k].clone());
        }
    }
    GradingSetup::new(g, a, ChamberSpec::point(&vec![1; r]), Some(units(r)))
}

/// Hirzebruch surface `F_t` with degrees `(1,0), (-t,1), (1,0), (0,1)` and `C = {e_1, e_2}`;
/// `w` selects the chamber.
pub fn hirzebruch(t: i64, w: [i64; 2]) -> Result<GradingSetup> {
    let a = free_columns(&[vec![1, -t, 1, 0], vec![0, 1, 0, 1]]);
    GradingSetup::new(AbelianGroup::free(2), a, ChamberSpec::point(&w), Some(units(2)))
}

/// Five variables graded by `Z^2 ⊕ (Z/2)^2`; chamber 1 contains `(2,1)`, chamber 2 contains `(1,2)`.
pub fn torsion_example(chamber: u8) -> Result<GradingSetup> {
    let g = AbelianGroup::with_torsion(2, &[2, 2])?;
    let free = [[1, 0], [0, 1], [1, 0], [0, 1], [1, 1]];
    let tors = [[1, 1], [0, 1], [1, 0], [0, 0], [0, 0]];
    let a = free
        .iter()
        .zip(&tors)
        .map(|(f, t)| g.element_i64(f, t))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let w = if chamber == 1 { [2, 1] } else { [1, 2] };
    GradingSetup::new(g, a, ChamberSpec::point(&w), None)
}

/// `P^2` blown up at the three torus-fixed points (hexagon fan), with `C` the minimal generators of `K`.
pub fn blowup_p2_three_points() -> Result<GradingSetup> {
    let a = free_columns(&[
        vec![1, 0, 0, 0, 1, -1],
        vec![0, 1, -1, 1, 0, 0],
        vec![0, 0, 1, -1, 1, 0],
        vec![0, 0, 0, 1, -1, 1],
    ]);
    let c = free_columns(&[vec![1, 0, 1, 0, 0], vec![1, 0, 0, 0, 1], vec![0, 1, 1, 0, 0], vec![0, 0, 0, 1, 1]]);
    GradingSetup::new(AbelianGroup::free(4), a, ChamberSpec::facets(polygon(6)), Some(c))
}

/// The rays of the hexagon fan, as a `2 × 6` matrix.
pub fn blowup_p2_three_points_rays() -> IntMatrix {
    IntMatrix::from_i64(&[vec![1, 0, -1, -1, 0, 1], vec![0, 1, 1, 0, -1, -1]])
}

/// `P^2` blown up five times: eight rays, `G = Z^6`.
pub fn blowup_p2_eight_rays() -> Result<GradingSetup> {
    let a = free_columns(&[
        vec![1, 0, 0, 0, 0, 0, 1, -1],
        vec![0, 1, -2, 1, 0, 0, 0, 0],
        vec![0, 0, 1, -1, 1, 0, 0, 0],
        vec![0, 0, 0, 1, -2, 1, 0, 0],
        vec![0, 0, 0, 0, 1, -1, 1, 0],
        vec![0, 0, 0, 0, 0, 1, -2, 1],
    ]);
    GradingSetup::new(AbelianGroup::free(6), a, ChamberSpec::facets(polygon(8)), None)
}

pub fn blowup_p2_eight_rays_rays() -> IntMatrix {
    IntMatrix::from_i64(&[vec![1, 1, 0, -1, -1, -1, 0, 1], vec![0, 1, 1, 1, 0, -1, -1, -1]])
}

/// Rays of a smooth resolution of `P(2,3,7,1)`: eleven rays in `Z^3`.
pub fn resolution_p2371_rays() -> IntMatrix {
    IntMatrix::from_i64(&[
        vec![1, 0, 0, -2, 0, 0, -1, 0, -1, -1, -1],
        vec![0, 1, 0, -3, 0, -1, -1, -1, -1, -2, -2],
        vec![0, 0, 1, -7, -1, -2, -3, -3, -4, -4, -5],
    ])
}

/// Generators of the irrelevant ideal of that resolution (1-based variable indices).
pub const RESOLUTION_P2371_B: [[usize; 8]; 18] = [
    [1, 2, 3, 4, 6, 7, 9, 10],
    [2, 3, 4, 5, 6, 7, 9, 10],
    [1, 2, 3, 6, 7, 8, 9, 10],
    [2, 3, 5, 6, 7, 8, 9, 10],
    [1, 2, 3, 5, 7, 8, 9, 11],
    [1, 2, 4, 5, 7, 8, 9, 11],
    [1, 2, 5, 6, 7, 8, 9, 11],
    [1, 2, 3, 6, 7, 8, 10, 11],
    [1, 3, 4, 6, 7, 8, 10, 11],
    [1, 3, 5, 6, 7, 8, 10, 11],
    [2, 3, 4, 6, 7, 9, 10, 11],
    [1, 2, 5, 6, 8, 9, 10, 11],
    [1, 3, 5, 6, 8, 9, 10, 11],
    [1, 4, 5, 6, 8, 9, 10, 11],
    [2, 3, 5, 7, 8, 9, 10, 11],
    [2, 4, 5, 7, 8, 9, 10, 11],
    [3, 4, 6, 7, 8, 9, 10, 11],
    [4, 5, 6, 7, 8, 9, 10, 11],
];

/// The resolution of `P(2,3,7,1)` built from its rays; `C` defaults to the generators of `K`.
pub fn resolution_p2371(c: Option<Vec<GroupElement>>) -> Result<GradingSetup> {
    let (g, a) = group_from_rays(&resolution_p2371_rays())?;
    let n = a.len();
    let facets: Vec<Vec<usize>> = RESOLUTION_P2371_B
        .iter()
        .map(|gen| (0..n).filter(|i| !gen.contains(&(i + 1))).collect())
        .collect();
    GradingSetup::new(g, a, ChamberSpec::facets(facets), c)
}

/// A setup from a fan given by its rays and maximal cones (0-based ray indices).
pub fn from_fan(rays: &IntMatrix, cones: &[Vec<usize>], c: Option<Vec<GroupElement>>) -> Result<GradingSetup> {
    let (g, a) = group_from_rays(rays)?;
    GradingSetup::new(g, a, ChamberSpec::facets(cones.to_vec()), c)
}
