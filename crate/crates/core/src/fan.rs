//! The combinatorial frame of a Cox ring: dual configuration, triangulation, irrelevant
//! ideal, chamber and the semigroups `K ⊆ K^sat`.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use log::warn;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cohomology::{mask_of, Field, SimplicialComplex};
use crate::cone;
use crate::diophantine::{enumerate_fiber, positive_functional, Limits, Subgroup};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::lattice::{integer_kernel, solve_integer, Lattice};
use crate::linalg::{self, IntMatrix, Matrix, RatMatrix};
use crate::lp;
use crate::snf::smith_normal_form;

/// How the triangulation is chosen: a point in the interior of a chamber, an explicit
/// facet list (0-based vertices), or both.
#[derive(Clone, Debug, Default)]
pub struct ChamberSpec {
    pub point: Option<Vec<BigRational>>,
    pub facets: Option<Vec<Vec<usize>>>,
}

impl ChamberSpec {
    pub fn point(w: &[i64]) -> Self {
        ChamberSpec { point: Some(w.iter().map(|&x| BigRational::from_integer(x.into())).collect()), facets: None }
    }

    pub fn facets(facets: Vec<Vec<usize>>) -> Self {
        ChamberSpec { point: None, facets: Some(facets) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetupFlags {
    /// A functional strictly positive on every nonzero free degree exists.
    pub pointed: bool,
    /// Pointed and no free degree vanishes.
    pub acyclic: bool,
    /// Every variable is a vertex of the triangulation.
    pub toric: bool,
    /// The triangulation is the one cut out by an interior point of the chamber.
    pub regular_verified: bool,
    /// Every element of `C` lies in `K`.
    pub c_in_k: bool,
}

#[derive(Clone, Debug)]
struct FacetData {
    /// Complement of the facet: the variables whose product generates `B`.
    hat: Vec<usize>,
    /// Inverse of the matrix with columns `ā_i`, `i ∈ hat`.
    inv: RatMatrix,
}

/// A lattice in `G` together with coordinates: elements are `Σ y_k basis[k]`.
#[derive(Clone, Debug)]
struct LatticeChart {
    free_basis: Vec<Vec<BigInt>>,
    torsion_images: Vec<Vec<BigInt>>,
}

impl LatticeChart {
    fn element(&self, group: &AbelianGroup, y: &[BigInt]) -> GroupElement {
        let r = group.rank();
        let mut free = vec![BigInt::zero(); r];
        let mut tors = vec![BigInt::zero(); group.torsion_moduli().len()];
        for (k, c) in y.iter().enumerate() {
            for (f, b) in free.iter_mut().zip(&self.free_basis[k]) {
                *f += c * b;
            }
            for (t, x) in tors.iter_mut().enumerate() {
                *x += c * &self.torsion_images[k][t];
            }
        }
        group.element(free, tors).expect("chart element has the group's shape")
    }
}

#[derive(Clone, Debug)]
pub struct GradingSetup {
    group: AbelianGroup,
    degrees: Vec<GroupElement>,
    c: Vec<GroupElement>,
    delta: SimplicialComplex,
    rays: IntMatrix,
    facets: Vec<FacetData>,
    gamma: Vec<Vec<BigInt>>,
    interior: Vec<BigRational>,
    flags: SetupFlags,
    warnings: Vec<String>,
    field: Field,
    k_chart: LatticeChart,
    za: Subgroup,
    za_chart: LatticeChart,
    za_torsion: Vec<Vec<BigInt>>,
}

fn free_matrix(group: &AbelianGroup, degrees: &[GroupElement]) -> IntMatrix {
    Matrix::from_fn(group.rank(), degrees.len(), |i, j| degrees[j].free()[i].clone())
}

/// Integer basis of the kernel of `[ā_1 … ā_n]`, one row per dual vector.
pub fn dual_configuration(group: &AbelianGroup, degrees: &[GroupElement]) -> Result<IntMatrix> {
    for a in degrees {
        group.check(a)?;
    }
    let m = free_matrix(group, degrees);
    let r = m.rank();
    let n = degrees.len();
    if n <= r {
        return Err(Error::RankDeficient { n, r });
    }
    let ker = integer_kernel(&m);
    Ok(Matrix::from_fn(ker.len(), n, |i, j| ker[i][j].clone()))
}

fn columns_matrix(group: &AbelianGroup, degrees: &[GroupElement], idx: &[usize]) -> RatMatrix {
    Matrix::from_fn(group.rank(), idx.len(), |i, j| BigRational::from_integer(degrees[idx[j]].free()[i].clone()))
}

/// Facets of the triangulation determined by a chamber point `w` (0-based, sorted).
pub fn triangulation_from_chamber(
    group: &AbelianGroup,
    degrees: &[GroupElement],
    w: &[BigRational],
) -> Result<SimplicialComplex> {
    let r = group.rank();
    let n = degrees.len();
    if w.len() != r {
        return Err(Error::Invalid(format!("chamber point has {} coordinates, expected {r}", w.len())));
    }
    if n <= r {
        return Err(Error::RankDeficient { n, r });
    }
    let mut facets = Vec::new();
    for tau in (0..n).combinations(r) {
        let m = columns_matrix(group, degrees, &tau);
        let Some(lambda) = linalg::solve_square(&m, w) else { continue };
        if lambda.iter().any(Signed::is_negative) {
            continue;
        }
        if lambda.iter().any(Zero::is_zero) {
            return Err(Error::DegenerateChamberPoint(tau.iter().map(|i| i + 1).collect()));
        }
        facets.push((0..n).filter(|i| !tau.contains(i)).collect::<Vec<usize>>());
    }
    if facets.is_empty() {
        return Err(Error::ChamberOutside);
    }
    SimplicialComplex::from_facets(n, &facets)
}

/// Group and degrees of the Cox ring of a fan with the given rays (columns of a `d × n` matrix):
/// `G = coker(Z^d → Z^n)`, `a_i` the class of the `i`-th unit vector.
pub fn group_from_rays(rays: &IntMatrix) -> Result<(AbelianGroup, Vec<GroupElement>)> {
    let n = rays.cols();
    let bt = rays.transpose();
    let s = smith_normal_form(&bt);
    let rank = s.rank();
    let mut torsion_rows = Vec::new();
    let mut moduli = Vec::new();
    for i in 0..rank {
        let di = s.d[(i, i)].clone();
        if di > BigInt::one() {
            torsion_rows.push(i);
            moduli.push(di);
        }
    }
    let free_rows: Vec<usize> = (rank..n).collect();
    let group = AbelianGroup::new(free_rows.len(), moduli)?;
    let degrees = (0..n)
        .map(|j| {
            let free = free_rows.iter().map(|&i| s.u[(i, j)].clone()).collect();
            let tors = torsion_rows.iter().map(|&i| s.u[(i, j)].clone()).collect();
            group.element(free, tors)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((group, degrees))
}

fn gamma_inequalities(facets: &[FacetData]) -> Result<Vec<Vec<BigInt>>> {
    let mut seen = HashSet::new();
    let mut all = Vec::new();
    for f in facets {
        for i in 0..f.inv.rows() {
            let h = linalg::primitive_integer(f.inv.row(i));
            if seen.insert(h.clone()) {
                all.push(h);
            }
        }
    }
    prune_redundant(all)
}

fn rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|h| linalg::to_rational_vec(h)).collect()
}

/// Removes inequalities `h·x >= 0` implied by the others: a row survives when the extreme
/// rays it vanishes on span a hyperplane.
fn prune_redundant(ineq: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>> {
    let Some(dim) = ineq.first().map(Vec::len) else { return Ok(ineq) };
    let rays = cone::extreme_rays(&ineq, dim)?;
    if IntMatrix::from_rows(&rays, dim).rank() < dim {
        return Err(Error::ChamberNotFullDimensional);
    }
    let mut out: Vec<Vec<BigInt>> = ineq
        .into_iter()
        .filter(|h| {
            let tight: Vec<Vec<BigInt>> = rays.iter().filter(|v| linalg::dot_int(h, v).is_zero()).cloned().collect();
            IntMatrix::from_rows(&tight, dim).rank() + 1 == dim
        })
        .collect();
    out.sort();
    Ok(out)
}

fn chart_from_subgroup(group: &AbelianGroup, sub: &Subgroup) -> Result<LatticeChart> {
    let r = group.rank();
    let basis = sub.lattice().basis();
    let projections: Vec<Vec<BigInt>> = basis.iter().map(|v| v[..r].to_vec()).collect();
    let free = Lattice::from_generators(r, &projections);
    let pr = Matrix::from_fn(r, projections.len(), |i, j| projections[j][i].clone());
    let mut torsion_images = Vec::new();
    for b in free.basis() {
        let x = solve_integer(&pr, b)
            .ok_or_else(|| Error::Invalid("lattice projection is not surjective onto its image".into()))?;
        let tors: Vec<BigInt> = group
            .torsion_moduli()
            .iter()
            .enumerate()
            .map(|(t, m)| basis.iter().zip(&x).map(|(v, c)| c * &v[r + t]).sum::<BigInt>().mod_floor(m))
            .collect();
        torsion_images.push(tors);
    }
    Ok(LatticeChart { free_basis: free.basis().to_vec(), torsion_images })
}

const TORSION_ENUMERATION_CAP: u64 = 100_000;

/// Elements `t` of the torsion subgroup of `G` lying in the subgroup.
fn torsion_in(group: &AbelianGroup, sub: &Subgroup) -> Result<Vec<Vec<BigInt>>> {
    match group.torsion_order() {
        Some(o) if o <= TORSION_ENUMERATION_CAP => {}
        _ => return Err(Error::Overflow("torsion subgroup too large to enumerate".into())),
    }
    let zero = vec![BigInt::zero(); group.rank()];
    Ok(group
        .torsion_elements()
        .into_iter()
        .filter(|t| sub.contains(&GroupElement::from_parts(zero.clone(), t.clone())))
        .collect())
}

/// Greedy generators of a finite subgroup of the torsion part: unit residues first, then lex order.
fn torsion_generators(group: &AbelianGroup, elements: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let zero = vec![BigInt::zero(); group.torsion_moduli().len()];
    let unit = |t: &Vec<BigInt>| t.iter().filter(|x| !x.is_zero()).count() == 1 && t.iter().all(|x| x.is_zero() || x.is_one());
    let mut cands: Vec<Vec<BigInt>> = elements.iter().filter(|t| **t != zero).cloned().collect();
    cands.sort_by_key(|t| (!unit(t), t.clone()));
    let add = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        a.iter().zip(b).zip(group.torsion_moduli()).map(|((x, y), m)| (x + y).mod_floor(m)).collect()
    };
    let mut span: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
    let mut gens = Vec::new();
    for c in cands {
        if span.contains(&c) {
            continue;
        }
        gens.push(c.clone());
        let mut frontier: Vec<Vec<BigInt>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y = add(&x, &c);
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

fn sort_elements(mut v: Vec<GroupElement>) -> Vec<GroupElement> {
    v.sort_by(|a, b| a.free().cmp(b.free()).then_with(|| a.torsion().cmp(b.torsion())));
    v
}

impl GradingSetup {
    /// Builds and validates a setup. When `c` is `None` it defaults to the minimal generators of `K`.
    pub fn new(
        group: AbelianGroup,
        degrees: Vec<GroupElement>,
        chamber: ChamberSpec,
        c: Option<Vec<GroupElement>>,
    ) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Group(crate::error::GroupError::EmptyDegreeList));
        }
        for a in &degrees {
            group.check(a)?;
        }
        let n = degrees.len();
        let r = group.rank();
        let fm = free_matrix(&group, &degrees);
        if fm.rank() != r {
            return Err(Error::Invalid(format!(
                "the free degrees span a space of dimension {} inside Z^{r}",
                fm.rank()
            )));
        }
        let rays = dual_configuration(&group, &degrees)?;
        let d = n - r;
        let mut warnings = Vec::new();

        let from_point = match &chamber.point {
            Some(w) => Some(triangulation_from_chamber(&group, &degrees, w)?),
            None => None,
        };
        let delta = match (&chamber.facets, from_point) {
            (None, None) => return Err(Error::Invalid("a chamber point or a triangulation is required".into())),
            (None, Some(t)) => t,
            (Some(f), tp) => {
                let given = SimplicialComplex::from_facets(n, f)?;
                if let Some(t) = tp {
                    if t != given {
                        return Err(Error::InconsistentTriangulation);
                    }
                }
                given
            }
        };

        let mut facets = Vec::new();
        for f in delta.facets() {
            if f.len() != d {
                return Err(Error::BadTriangulation(format!(
                    "facet {:?} has {} vertices, expected {d}",
                    f.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    f.len()
                )));
            }
            let hat: Vec<usize> = (0..n).filter(|i| !f.contains(i)).collect();
            let inv = linalg::inverse(&columns_matrix(&group, &degrees, &hat)).ok_or_else(|| {
                Error::BadTriangulation(format!(
                    "degrees of the complement of facet {:?} are linearly dependent",
                    f.iter().map(|v| v + 1).collect::<Vec<_>>()
                ))
            })?;
            facets.push(FacetData { hat, inv });
        }
        facets.sort_by(|a, b| a.hat.cmp(&b.hat));

        let gamma = gamma_inequalities(&facets)?;
        let ones = vec![BigRational::one(); gamma.len()];
        let interior = lp::find_point(&rational_rows(&gamma), &ones, r).ok_or(Error::ChamberNotFullDimensional)?;

        let regular_verified = if chamber.point.is_some() {
            true
        } else {
            let ok = matches!(triangulation_from_chamber(&group, &degrees, &interior), Ok(t) if t == delta);
            if !ok {
                warnings.push("the triangulation is not cut out by an interior point of its chamber; it is used as given".to_string());
            }
            ok
        };

        let nonzero: Vec<Vec<BigInt>> =
            degrees.iter().filter(|a| !a.free_is_zero()).map(|a| a.free().to_vec()).collect();
        let pointed = positive_functional(&nonzero, r).is_some();
        let acyclic = pointed && nonzero.len() == n;
        let toric = delta.vertex_mask() == mask_of(&(0..n).collect::<Vec<_>>());
        if !pointed {
            warnings.push("the free degrees do not lie in a pointed cone".to_string());
        }

        let mut k_sub: Option<Subgroup> = None;
        for f in &facets {
            let hat_degrees: Vec<GroupElement> = f.hat.iter().map(|&i| degrees[i].clone()).collect();
            let s = Subgroup::generated_by(&group, &hat_degrees);
            k_sub = Some(match k_sub {
                None => s,
                Some(prev) => prev.intersection(&s),
            });
        }
        let k_sub = k_sub.expect("at least one facet");
        let k_chart = chart_from_subgroup(&group, &k_sub)?;
        let za = Subgroup::generated_by(&group, &degrees);
        let za_chart = chart_from_subgroup(&group, &za)?;
        let za_torsion = torsion_in(&group, &za)?;

        let mut setup = GradingSetup {
            group,
            degrees,
            c: Vec::new(),
            delta,
            rays,
            facets,
            gamma,
            interior,
            flags: SetupFlags { pointed, acyclic, toric, regular_verified, c_in_k: false },
            warnings,
            field: Field::Rationals,
            k_chart,
            za,
            za_chart,
            za_torsion,
        };
        let c = match c {
            Some(c) => c,
            None => setup.generators_k()?,
        };
        setup.set_c(c)?;
        for w in &setup.warnings {
            warn!("{w}");
        }
        Ok(setup)
    }

    fn set_c(&mut self, c: Vec<GroupElement>) -> Result<()> {
        if c.is_empty() {
            return Err(Error::Group(crate::error::GroupError::EmptyDegreeList));
        }
        for x in &c {
            self.group.check(x)?;
        }
        self.flags.c_in_k = c.iter().all(|x| self.in_k(x));
        self.c = c;
        Ok(())
    }

    /// The same setup with a different generator set `C`.
    pub fn with_c(&self, c: Vec<GroupElement>) -> Result<Self> {
        let mut s = self.clone();
        s.set_c(c)?;
        Ok(s)
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn c(&self) -> &[GroupElement] {
        &self.c
    }

    pub fn delta(&self) -> &SimplicialComplex {
        &self.delta
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn r(&self) -> usize {
        self.group.rank()
    }

    pub fn d(&self) -> usize {
        self.n() - self.r()
    }

    /// The dual configuration, `d × n`.
    pub fn rays(&self) -> &IntMatrix {
        &self.rays
    }

    /// Inequalities `h·p̄ >= 0` cutting out the chamber, irredundant and primitive.
    pub fn gamma(&self) -> &[Vec<BigInt>] {
        &self.gamma
    }

    pub fn interior_point(&self) -> &[BigRational] {
        &self.interior
    }

    pub fn flags(&self) -> SetupFlags {
        self.flags
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Variables of degree with zero free part.
    pub fn zero_degree_variables(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.degrees[i].free_is_zero()).collect()
    }

    /// Supports of the monomial generators `∏_{i ∈ σ̂} x_i` of the irrelevant ideal (0-based).
    pub fn irrelevant_ideal(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.hat.clone()).collect()
    }

    /// Generators of `B` as strings like `x1x2`.
    pub fn irrelevant_ideal_strings(&self) -> Vec<String> {
        self.irrelevant_ideal().iter().map(|g| monomial_string(g)).collect()
    }

    pub fn check(&self, p: &GroupElement) -> Result<()> {
        Ok(self.group.check(p)?)
    }

    /// `p ∈ ⋂_σ N𝒜_σ̂`.
    pub fn in_k(&self, p: &GroupElement) -> bool {
        if self.group.check(p).is_err() {
            return false;
        }
        let pq = p.image();
        self.facets.iter().all(|f| {
            let lambda = f.inv.mul_vec(&pq);
            if lambda.iter().any(|x| !x.is_integer() || x.is_negative()) {
                return false;
            }
            let coeffs: Vec<BigInt> = lambda.iter().map(|x| x.to_integer()).collect();
            let hat: Vec<GroupElement> = f.hat.iter().map(|&i| self.degrees[i].clone()).collect();
            self.group.combination(&coeffs, &hat) == *p
        })
    }

    fn gamma_values(&self, p: &GroupElement) -> Vec<BigInt> {
        self.gamma.iter().map(|h| linalg::dot_int(h, p.free())).collect()
    }

    pub fn in_z_a(&self, p: &GroupElement) -> bool {
        self.group.check(p).is_ok() && self.za.contains(p)
    }

    /// `p ∈ Z𝒜` and `p̄ ∈ Γ`.
    pub fn in_ksat(&self, p: &GroupElement) -> bool {
        self.in_z_a(p) && self.gamma_values(p).iter().all(|x| !x.is_negative())
    }

    /// `p ∈ Z𝒜` and `p̄` in the interior of `Γ`.
    pub fn in_interior_ksat(&self, p: &GroupElement) -> bool {
        self.in_z_a(p) && self.gamma_values(p).iter().all(Signed::is_positive)
    }

    fn chart_cone(&self, chart: &LatticeChart) -> Vec<Vec<BigInt>> {
        self.gamma
            .iter()
            .map(|h| chart.free_basis.iter().map(|b| linalg::dot_int(h, b)).collect())
            .collect()
    }

    pub fn generators_k(&self) -> Result<Vec<GroupElement>> {
        self.generators_k_with(Limits::default())
    }

    /// Minimal generators of `K`, which is the set of points of the torsion-free lattice
    /// `⋂_σ Z𝒜_σ̂` lying over `Γ`.
    pub fn generators_k_with(&self, limits: Limits) -> Result<Vec<GroupElement>> {
        let cone = self.chart_cone(&self.k_chart);
        let ys = cone::hilbert_basis(&cone, self.r(), limits)?;
        Ok(sort_elements(ys.iter().map(|y| self.k_chart.element(&self.group, y)).collect()))
    }

    pub fn generators_ksat(&self) -> Result<Vec<GroupElement>> {
        self.generators_ksat_with(Limits::default())
    }

    /// Minimal generators of `K^sat`: lifts of the Hilbert basis of `Γ` in the free image of
    /// `Z𝒜` with canonical torsion residues, followed by generators of its torsion units.
    pub fn generators_ksat_with(&self, limits: Limits) -> Result<Vec<GroupElement>> {
        let cone = self.chart_cone(&self.za_chart);
        let ys = cone::hilbert_basis(&cone, self.r(), limits)?;
        let lifts: Vec<GroupElement> = ys
            .iter()
            .map(|y| {
                let e = self.za_chart.element(&self.group, y);
                self.canonical_residue(&e)
            })
            .collect();
        let mut out = sort_elements(lifts);
        let zero = vec![BigInt::zero(); self.r()];
        for t in torsion_generators(&self.group, &self.za_torsion) {
            out.push(GroupElement::from_parts(zero.clone(), t));
        }
        Ok(out)
    }

    fn canonical_residue(&self, e: &GroupElement) -> GroupElement {
        self.za_torsion
            .iter()
            .map(|t| {
                let shift = GroupElement::from_parts(vec![BigInt::zero(); self.r()], t.clone());
                self.group.add_unchecked(e, &shift)
            })
            .min_by(|a, b| a.torsion().cmp(b.torsion()))
            .unwrap_or_else(|| e.clone())
    }

    /// Generators of the torsion subgroup of `Z𝒜`.
    pub fn ksat_units(&self) -> Vec<GroupElement> {
        let zero = vec![BigInt::zero(); self.r()];
        torsion_generators(&self.group, &self.za_torsion)
            .into_iter()
            .map(|t| GroupElement::from_parts(zero.clone(), t))
            .collect()
    }

    /// Exponent vectors of the monomials of degree `p`.
    pub fn fiber(&self, p: &GroupElement) -> Result<Vec<Vec<u64>>> {
        if !self.flags.acyclic {
            return Err(Error::NotPointed);
        }
        enumerate_fiber(&self.group, &self.degrees, p)
    }

    /// Checks that every monomial of degree `p ∈ int K^sat` lies in `B`, and that for `p ∈ K`
    /// every generator of `B` has a power divisible by a monomial of degree `p`.
    pub fn lemma_b_and_c_check(&self, p: &GroupElement) -> Result<LemmaReport> {
        self.check(p)?;
        let part1 = if self.in_interior_ksat(p) {
            let fiber = self.fiber(p)?;
            match fiber.iter().find(|u| !self.facets.iter().any(|f| f.hat.iter().all(|&i| u[i] > 0))) {
                Some(u) => LemmaOutcome::Fail(format!("monomial {} of degree {p} is not in B", exponent_string(u))),
                None => LemmaOutcome::Pass,
            }
        } else {
            LemmaOutcome::PreconditionFailed(format!("{p} is not in the interior of K^sat"))
        };
        let part2 = if self.in_k(p) {
            let fiber = self.fiber(p)?;
            match self.facets.iter().find(|f| {
                !fiber.iter().any(|u| (0..self.n()).all(|i| u[i] == 0 || f.hat.contains(&i)))
            }) {
                Some(f) => LemmaOutcome::Fail(format!(
                    "no monomial of degree {p} divides a power of {}",
                    monomial_string(&f.hat)
                )),
                None => LemmaOutcome::Pass,
            }
        } else {
            LemmaOutcome::PreconditionFailed(format!("{p} is not in K"))
        };
        Ok(LemmaReport { in_b: part1, radical: part2 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    Pass,
    Fail(String),
    PreconditionFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// Monomials of degree `p` lie in `B`.
    pub in_b: LemmaOutcome,
    /// `B ⊆ √⟨S_p⟩`.
    pub radical: LemmaOutcome,
}

pub fn monomial_string(support: &[usize]) -> String {
    if support.is_empty() {
        return "1".to_string();
    }
    support.iter().map(|i| format!("x{}", i + 1)).collect()
}

fn exponent_string(u: &[u64]) -> String {
    let parts: Vec<String> = u
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

/// Unordered comparison helper for generator lists.
pub fn as_set(v: &[GroupElement]) -> BTreeSet<GroupElement> {
    v.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ft(t: i64) -> (AbelianGroup, Vec<GroupElement>) {
        let g = AbelianGroup::free(2);
        let a = vec![
            GroupElement::free_i64(&[1, 0]),
            GroupElement::free_i64(&[-t, 1]),
            GroupElement::free_i64(&[1, 0]),
            GroupElement::free_i64(&[0, 1]),
        ];
        (g, a)
    }

    #[test]
    fn dual_configuration_of_hirzebruch() {
        let (g, a) = ft(2);
        let b = dual_configuration(&g, &a).unwrap();
        assert_eq!(b.rows(), 2);
        let fm = free_matrix(&g, &a);
        assert!(fm.mul(&b.transpose()).is_zero());
        let expected = IntMatrix::from_i64(&[vec![1, 0, -1, 0], vec![0, 1, 2, -1]]);
        let stacked = Matrix::from_fn(4, 4, |i, j| if i < 2 { b[(i, j)].clone() } else { expected[(i - 2, j)].clone() });
        assert_eq!(stacked.rank(), 2);
        let id = vec![GroupElement::free_i64(&[1, 0]), GroupElement::free_i64(&[0, 1])];
        assert!(matches!(dual_configuration(&g, &id), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn hirzebruch_chambers() {
        let (g, a) = ft(2);
        let s = GradingSetup::new(g.clone(), a.clone(), ChamberSpec::point(&[1, 1]), None).unwrap();
        assert_eq!(s.irrelevant_ideal_strings(), vec!["x1x2", "x1x4", "x2x3", "x3x4"]);
        assert_eq!(s.generators_k().unwrap(), vec![GroupElement::free_i64(&[0, 1]), GroupElement::free_i64(&[1, 0])]);
        let s2 = GradingSetup::new(g.clone(), a.clone(), ChamberSpec::point(&[-1, 1]), None).unwrap();
        let mut b2 = s2.irrelevant_ideal_strings();
        b2.sort();
        assert_eq!(b2, vec!["x1x2", "x2x3", "x2x4"]);
        assert!(matches!(
            GradingSetup::new(g, a, ChamberSpec::point(&[0, 1]), None),
            Err(Error::DegenerateChamberPoint(_))
        ));
    }

    #[test]
    fn explicit_facets_are_verified() {
        let (g, a) = ft(2);
        let s = GradingSetup::new(g, a, ChamberSpec::facets(vec![vec![2, 3], vec![1, 2], vec![0, 1], vec![0, 3]]), None)
            .unwrap();
        assert!(s.flags().regular_verified);
        assert!(s.warnings().is_empty());
    }

    #[test]
    fn rays_give_class_group() {
        // P^2
        let rays = IntMatrix::from_i64(&[vec![1, 0, -1], vec![0, 1, -1]]);
        let (g, a) = group_from_rays(&rays).unwrap();
        assert_eq!(g.rank(), 1);
        assert!(g.is_torsion_free());
        assert!(a.iter().all(|x| x.free()[0].abs().is_one()));
    }
}
