//! Multigraded regularity of `S`: membership `m ∈ reg^k(S)`, windows, inner bounds from Betti
//! degrees, regularity of reduced point sets, multiplication maps and Fujita-type witnesses.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diophantine::{solve_exists, DiophantineSystem};
use crate::error::{Error, Result};
use crate::fan::GradingSetup;
use crate::group::{AbelianGroup, GroupElement};
use crate::lattice::integer_kernel;
use crate::linalg::{IntMatrix, Matrix};
use crate::local_cohomology::SupportTable;
use crate::region::{combination, weak_compositions, FreeBox, Region};

/// A three-valued answer: `Incomplete` when a resource limit prevented a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Incomplete,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Incomplete,
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::True, _) | (_, Verdict::True) => Verdict::True,
            (Verdict::False, Verdict::False) => Verdict::False,
            _ => Verdict::Incomplete,
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Incomplete => "incomplete",
        })
    }
}

/// `Some(true)` if `target ∈ N{columns}`, `None` when the search overflowed.
fn feasible(group: &AbelianGroup, columns: Vec<GroupElement>, target: GroupElement) -> Result<Option<bool>> {
    let sys = DiophantineSystem::new(group, columns, target)?;
    match solve_exists(&sys) {
        Ok(w) => Ok(Some(w.is_some())),
        Err(Error::Overflow(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn region_hit(group: &AbelianGroup, region: &Region, p: &GroupElement) -> Result<Option<bool>> {
    let mut unknown = false;
    for c in &region.components {
        match feasible(group, c.generators.clone(), group.sub(p, &c.shift)?)? {
            Some(true) => return Ok(Some(true)),
            Some(false) => {}
            None => unknown = true,
        }
    }
    Ok(if unknown { None } else { Some(false) })
}

fn first_level(level: usize) -> usize {
    level.max(2)
}

/// Decides `m ∈ reg^k(S)`, i.e. `H^i_B(S)_p = 0` for all `i >= k` and `p ∈ m + N𝒞[1-i]`.
///
/// When `C ⊆ K` only the corners `p = m - λ·C` with `Σλ = i-1` are checked; otherwise each
/// translate `m - λ·C + N𝒞` is intersected exactly with every support region.
pub fn is_regular_s(setup: &GradingSetup, table: &SupportTable, m: &GroupElement, level: usize) -> Result<Verdict> {
    setup.check(m)?;
    let g = setup.group();
    let c = setup.c();
    let top = setup.d() + 1;
    let mut verdict = Verdict::True;
    for i in first_level(level)..=top {
        for lambda in weak_compositions(i - 1, c.len()) {
            let p = g.sub(m, &combination(g, &lambda, c))?;
            for e in table.row(i) {
                match region_hit(g, &e.region, &p)? {
                    Some(true) => return Ok(Verdict::False),
                    Some(false) => {}
                    None => verdict = Verdict::Incomplete,
                }
            }
        }
    }
    if setup.flags().c_in_k {
        return Ok(verdict);
    }
    for i in first_level(level)..=top {
        for lambda in weak_compositions(i - 1, c.len()) {
            let corner = g.sub(m, &combination(g, &lambda, c))?;
            for e in table.row(i) {
                for comp in &e.region.components {
                    let mut columns: Vec<GroupElement> = c.to_vec();
                    for x in &comp.generators {
                        columns.push(g.neg(x)?);
                    }
                    match feasible(g, columns, g.sub(&comp.shift, &corner)?)? {
                        Some(true) => return Ok(Verdict::False),
                        Some(false) => {}
                        None => verdict = Verdict::Incomplete,
                    }
                }
            }
        }
    }
    Ok(verdict)
}

/// Checks the definition of `m ∈ reg^k(S)` directly on the degrees inside `window`: no `p` in
/// the window lies in both `m + N𝒞[1-i]` and the support of `H^i_B(S)`.
pub fn is_regular_window(
    setup: &GradingSetup,
    table: &SupportTable,
    m: &GroupElement,
    level: usize,
    window: &FreeBox,
) -> Result<Verdict> {
    setup.check(m)?;
    let g = setup.group();
    let c = setup.c();
    let points = window.elements(g)?;
    let mut verdict = Verdict::True;
    for i in first_level(level)..=setup.d() + 1 {
        if table.row(i).is_empty() {
            continue;
        }
        let corners: Vec<GroupElement> = weak_compositions(i - 1, c.len())
            .iter()
            .map(|l| g.sub(m, &combination(g, l, c)))
            .collect::<std::result::Result<_, _>>()?;
        for p in &points {
            let mut in_translate = Some(false);
            for corner in &corners {
                match feasible(g, c.to_vec(), g.sub(p, corner)?)? {
                    Some(true) => {
                        in_translate = Some(true);
                        break;
                    }
                    Some(false) => {}
                    None => in_translate = None,
                }
            }
            if in_translate == Some(false) {
                continue;
            }
            let mut hit = Some(false);
            for e in table.row(i) {
                match region_hit(g, &e.region, p)? {
                    Some(true) => {
                        hit = Some(true);
                        break;
                    }
                    Some(false) => {}
                    None => hit = None,
                }
            }
            match (in_translate, hit) {
                (Some(true), Some(true)) => return Ok(Verdict::False),
                (_, Some(false)) => {}
                _ => verdict = Verdict::Incomplete,
            }
        }
    }
    Ok(verdict)
}

/// [`is_regular_s`] at every degree of the box (torsion classes innermost), in box order.
pub fn reg_window(
    setup: &GradingSetup,
    table: &SupportTable,
    bx: &FreeBox,
    level: usize,
) -> Result<Vec<(GroupElement, Verdict)>> {
    bx.elements(setup.group())?
        .into_par_iter()
        .map(|p| {
            let v = is_regular_s(setup, table, &p, level)?;
            Ok((p, v))
        })
        .collect()
}

/// [`is_regular_window`] at every degree `m` of `bx`, each checked on the box from `m - below`
/// to `m + above`; support and `N𝒞` memberships are shared between the degrees.
pub fn reg_window_direct(
    setup: &GradingSetup,
    table: &SupportTable,
    bx: &FreeBox,
    level: usize,
    below: i64,
    above: i64,
) -> Result<Vec<(GroupElement, Verdict)>> {
    let g = setup.group();
    let c = setup.c();
    let shifted = |p: &[i64], lo: i64, hi: i64| FreeBox::new(p.iter().map(|x| x - lo).collect(), p.iter().map(|x| x + hi).collect());
    let big = FreeBox::new(
        bx.lo().iter().map(|x| x - below).collect(),
        bx.hi().iter().map(|x| x + above).collect(),
    )?;
    let points = big.elements(g)?;
    let mut support = Vec::new();
    for i in first_level(level)..=setup.d() + 1 {
        if table.row(i).is_empty() {
            continue;
        }
        let hits: Vec<(GroupElement, Option<bool>)> = points
            .par_iter()
            .map(|p| {
                let mut hit = Some(false);
                for e in table.row(i) {
                    match region_hit(g, &e.region, p)? {
                        Some(true) => return Ok((p.clone(), Some(true))),
                        Some(false) => {}
                        None => hit = None,
                    }
                }
                Ok((p.clone(), hit))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, h)| *h != Some(false))
            .collect();
        support.push((i, hits));
    }
    let mut in_nc: HashMap<GroupElement, Option<bool>> = HashMap::new();
    let mut out = Vec::new();
    for m in bx.elements(g)? {
        let free: Vec<i64> = m.free().iter().map(|x| i64::try_from(x).expect("box coordinates fit i64")).collect();
        let window = shifted(&free, below, above)?;
        let mut verdict = Verdict::True;
        'rows: for (i, hits) in &support {
            let corners: Vec<GroupElement> = weak_compositions(i - 1, c.len())
                .iter()
                .map(|l| g.sub(&m, &combination(g, l, c)))
                .collect::<std::result::Result<_, _>>()?;
            for (p, hit) in hits {
                if !window.contains(p.free()) {
                    continue;
                }
                let mut in_translate = Some(false);
                for corner in &corners {
                    let diff = g.sub(p, corner)?;
                    let member = match in_nc.get(&diff) {
                        Some(v) => *v,
                        None => {
                            let v = feasible(g, c.to_vec(), diff.clone())?;
                            in_nc.insert(diff, v);
                            v
                        }
                    };
                    match member {
                        Some(true) => {
                            in_translate = Some(true);
                            break;
                        }
                        Some(false) => {}
                        None => in_translate = None,
                    }
                }
                match (in_translate, hit) {
                    (Some(true), Some(true)) => {
                        verdict = Verdict::False;
                        break 'rows;
                    }
                    (Some(false), _) => {}
                    _ => verdict = Verdict::Incomplete,
                }
            }
        }
        out.push((m, verdict));
    }
    Ok(out)
}

/// Degrees `q_{i,j}` of the free modules `E_i = ⊕_j S(-q_{i,j})` of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub rows: Vec<Vec<GroupElement>>,
}

impl BettiTable {
    pub fn new(rows: Vec<Vec<GroupElement>>) -> Result<Self> {
        if rows.first().is_none_or(Vec::is_empty) {
            return Err(Error::Invalid("Betti table needs a nonempty row 0".into()));
        }
        Ok(BettiTable { rows })
    }

    pub fn check(&self, group: &AbelianGroup) -> Result<()> {
        if self.rows.first().is_none_or(Vec::is_empty) {
            return Err(Error::Invalid("Betti table needs a nonempty row 0".into()));
        }
        for q in self.rows.iter().flatten() {
            group.check(q)?;
        }
        Ok(())
    }

    /// Homological length `s`.
    pub fn length(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Upper bound on the number of `(level, prefix sum)` states explored by [`resolution_bound`].
pub const PHI_STATE_CAP: usize = 1_000_000;

/// Inner bound on `reg(M)` from a resolution: `p` qualifies when some `φ: [d+1] → [ℓ]` has
/// `p - q_{i,j} + c_{φ(1)} + … + c_{φ(i)} ∈ reg^i(S)` for every `i <= min(d+1, s)` and `j`.
pub fn resolution_bound(
    setup: &GradingSetup,
    table: &SupportTable,
    betti: &BettiTable,
    p: &GroupElement,
) -> Result<Verdict> {
    let mut cache = RegCache::default();
    resolution_bound_cached(setup, table, betti, p, &mut cache)
}

/// Memo table for `reg^k(S)` membership queries, shared across calls on one setup.
#[derive(Default)]
pub struct RegCache {
    verdicts: HashMap<(GroupElement, usize), Verdict>,
}

impl RegCache {
    fn query(&mut self, setup: &GradingSetup, table: &SupportTable, m: &GroupElement, level: usize) -> Result<Verdict> {
        let key = (m.clone(), first_level(level));
        if let Some(&v) = self.verdicts.get(&key) {
            return Ok(v);
        }
        let v = is_regular_s(setup, table, m, level)?;
        self.verdicts.insert(key, v);
        Ok(v)
    }
}

pub fn resolution_bound_cached(
    setup: &GradingSetup,
    table: &SupportTable,
    betti: &BettiTable,
    p: &GroupElement,
    cache: &mut RegCache,
) -> Result<Verdict> {
    betti.check(setup.group())?;
    setup.check(p)?;
    let top = (setup.d() + 1).min(betti.length());
    let mut search = PhiSearch { setup, table, betti, p, top, memo: HashMap::new(), cache };
    search.explore(0, setup.group().zero())
}

struct PhiSearch<'a> {
    setup: &'a GradingSetup,
    table: &'a SupportTable,
    betti: &'a BettiTable,
    p: &'a GroupElement,
    top: usize,
    memo: HashMap<(usize, GroupElement), Verdict>,
    cache: &'a mut RegCache,
}

impl PhiSearch<'_> {
    fn explore(&mut self, i: usize, prefix: GroupElement) -> Result<Verdict> {
        let key = (i, prefix.clone());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.memo.len() >= PHI_STATE_CAP {
            return Err(Error::Overflow(format!("more than {PHI_STATE_CAP} partial assignments")));
        }
        let g = self.setup.group();
        let mut here = Verdict::True;
        for q in &self.betti.rows[i] {
            let m = g.add(&g.sub(self.p, q)?, &prefix)?;
            here = here.and(self.cache.query(self.setup, self.table, &m, i)?);
            if here == Verdict::False {
                break;
            }
        }
        let v = if here == Verdict::False || i == self.top {
            here
        } else {
            let mut any = Verdict::False;
            for c in self.setup.c() {
                any = any.or(self.explore(i + 1, g.add(&prefix, c)?)?);
                if any == Verdict::True {
                    break;
                }
            }
            here.and(any)
        };
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// A parsed rational `p/q` or integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Reduced points of `X` given by Cox coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    points: Vec<Vec<String>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<BigRational>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::BadPoints("the point set is empty".into()));
        }
        Ok(PointSet { points })
    }

    pub fn from_i64(points: &[Vec<i64>]) -> Result<Self> {
        PointSet::new(
            points.iter().map(|p| p.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect(),
        )
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Parses `{"points": [["p/q", …], …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PointSetJson = serde_json::from_str(text).map_err(|e| Error::BadPoints(e.to_string()))?;
        let pts = raw
            .points
            .iter()
            .map(|p| p.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(pts)
    }

    pub fn to_json(&self) -> String {
        let raw = PointSetJson { points: self.points.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect() };
        serde_json::to_string(&raw).expect("strings serialize")
    }

    /// Every point has `n` coordinates, avoids `V(B)`, and no two points lie in the same orbit.
    pub fn validate(&self, setup: &GradingSetup) -> Result<()> {
        let n = setup.n();
        for (k, p) in self.points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::BadPoints(format!("point {} has {} coordinates, expected {n}", k + 1, p.len())));
            }
            if !setup.irrelevant_ideal().iter().any(|hat| hat.iter().all(|&i| !p[i].is_zero())) {
                return Err(Error::BadPoints(format!("point {} lies in the vanishing locus of B", k + 1)));
            }
        }
        for a in 0..self.points.len() {
            for b in a + 1..self.points.len() {
                if same_orbit(setup, &self.points[a], &self.points[b]) {
                    return Err(Error::BadPoints(format!("points {} and {} coincide", a + 1, b + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Same zero pattern and `∏ (Q_i/P_i)^{u_i} = 1` for every relation `Σ u_i a_i = 0` among the
/// degrees of the nonzero coordinates.
fn same_orbit(setup: &GradingSetup, p: &[BigRational], q: &[BigRational]) -> bool {
    if p.iter().zip(q).any(|(x, y)| x.is_zero() != y.is_zero()) {
        return false;
    }
    let support: Vec<usize> = (0..p.len()).filter(|&i| !p[i].is_zero()).collect();
    let g = setup.group();
    let a = setup.degrees();
    let r = g.rank();
    let moduli = g.torsion_moduli();
    let s = support.len();
    let rows = r + moduli.len();
    let m = Matrix::from_fn(rows, s + moduli.len(), |i, j| {
        if j < s {
            let aj = &a[support[j]];
            if i < r {
                aj.free()[i].clone()
            } else {
                aj.torsion()[i - r].clone()
            }
        } else if i >= r && j - s == i - r {
            moduli[i - r].clone()
        } else {
            BigInt::zero()
        }
    });
    let ratios: Vec<BigRational> = support.iter().map(|&i| &q[i] / &p[i]).collect();
    integer_kernel(&m).iter().all(|u| {
        let mut prod = BigRational::one();
        for (x, e) in ratios.iter().zip(&u[..s]) {
            let e: i32 = e.try_into().expect("small relation exponent");
            prod *= Pow::pow(x, e);
        }
        prod.is_one()
    })
}

/// `m ∈ reg` of the reduced point scheme: the monomials of degree `m` separate the points,
/// i.e. their evaluation matrix has rank `t`.
pub fn points_regularity(setup: &GradingSetup, pts: &PointSet, m: &GroupElement) -> Result<bool> {
    pts.validate(setup)?;
    setup.check(m)?;
    let fiber = setup.fiber(m)?;
    let t = pts.len();
    if fiber.len() < t {
        return Ok(false);
    }
    let rows: Vec<Vec<BigInt>> = pts
        .points()
        .iter()
        .map(|pt| {
            let vals: Vec<BigRational> = fiber
                .iter()
                .map(|u| {
                    u.iter().zip(pt).fold(BigRational::one(), |acc, (&e, x)| acc * Pow::pow(x, e as u32))
                })
                .collect();
            let den = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            vals.iter().map(|v| v.numer() * (&den / v.denom())).collect()
        })
        .collect();
    let mat: IntMatrix = Matrix::from_rows(&rows, fiber.len());
    Ok(mat.rank() == t)
}

/// Every monomial of degree `p + q` is a product of monomials of degrees `p` and `q`.
pub fn multiplication_surjective(setup: &GradingSetup, p: &GroupElement, q: &GroupElement) -> Result<bool> {
    let g = setup.group();
    let target = g.add(p, q)?;
    let big = setup.fiber(&target)?;
    let small = setup.fiber(p)?;
    setup.fiber(q)?;
    Ok(big.iter().all(|u| small.iter().any(|v| v.iter().zip(u).all(|(a, b)| a <= b))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Disjointness proved by infeasible Diophantine systems.
    Certified,
    /// Some system exceeded its budget; disjointness was only checked on a window.
    WindowOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FujitaWitness {
    pub m: GroupElement,
    pub certification: Certification,
}

/// Coefficient bound for the fallback window of [`fujita_certify`].
const FUJITA_WINDOW: usize = 3;
/// Largest total coefficient of `K` generators tried by [`fujita_witness`].
pub const FUJITA_MAX_HEIGHT: usize = 4;

/// Whether `m + K^sat` misses the support of every `H^i_B(S)`; `None` if it meets one.
pub fn fujita_certify(setup: &GradingSetup, table: &SupportTable, m: &GroupElement) -> Result<Option<Certification>> {
    setup.check(m)?;
    let g = setup.group();
    let ksat = setup.generators_ksat()?;
    let mut cert = Certification::Certified;
    for i in 0..table.len() {
        for e in table.row(i) {
            for comp in &e.region.components {
                let mut columns = ksat.clone();
                for x in &comp.generators {
                    columns.push(g.neg(x)?);
                }
                match feasible(g, columns, g.sub(&comp.shift, m)?)? {
                    Some(true) => return Ok(None),
                    Some(false) => {}
                    None => {
                        for h in 0..=FUJITA_WINDOW {
                            for lambda in weak_compositions(h, ksat.len()) {
                                let p = g.add(m, &combination(g, &lambda, &ksat))?;
                                if region_hit(g, &e.region, &p)? != Some(false) {
                                    return Ok(None);
                                }
                            }
                        }
                        cert = Certification::WindowOnly;
                    }
                }
            }
        }
    }
    Ok(Some(cert))
}

/// Searches `N`-combinations of the generators of `K` by increasing height for an `m` with
/// `m + K^sat` disjoint from all local cohomology supports; certified answers are preferred.
pub fn fujita_witness(setup: &GradingSetup, table: &SupportTable) -> Result<FujitaWitness> {
    let g = setup.group();
    let gens = setup.generators_k()?;
    let mut fallback = None;
    let mut seen = std::collections::HashSet::new();
    for h in 0..=FUJITA_MAX_HEIGHT {
        for lambda in weak_compositions(h, gens.len()) {
            let m = combination(g, &lambda, &gens);
            if !seen.insert(m.clone()) {
                continue;
            }
            match fujita_certify(setup, table, &m)? {
                Some(Certification::Certified) => return Ok(FujitaWitness { m, certification: Certification::Certified }),
                Some(Certification::WindowOnly) if fallback.is_none() => {
                    fallback = Some(FujitaWitness { m, certification: Certification::WindowOnly })
                }
                _ => {}
            }
        }
    }
    fallback.ok_or(Error::SearchExhausted)
}
