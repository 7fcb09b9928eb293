use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rayon::prelude::*;

use multireg::catalog;
use multireg::cohomology::{reduced_cohomology_dims, reduced_euler_characteristic, Field, SimplicialComplex};
use multireg::cone;
use multireg::diophantine::{cone_hilbert_basis, solve_exists, DiophantineSystem, Limits};
use multireg::fan::GradingSetup;
use multireg::linalg::IntMatrix;
use multireg::local_cohomology::{cech_dimensions, formula_dimensions, hilbert_dim, support_table, HilbertDim, SupportTable};
use multireg::region::FreeBox;
use multireg::regularity::{
    fujita_witness, is_regular_s, reg_window_direct, points_regularity, resolution_bound_cached, BettiTable,
    Certification, PointSet, RegCache, Verdict,
};
use multireg::snf::smith_normal_form;
use multireg::{AbelianGroup, GroupElement};

type Check = std::result::Result<(), String>;

const SEED: [u8; 32] = *b"multigraded-regularity-seed-0001";
const CASES: u32 = 500;

fn e(x: &[i64]) -> GroupElement {
    GroupElement::free_i64(x)
}

fn ints(p: &GroupElement) -> Vec<i64> {
    p.free().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

fn geq(p: &[i64], q: &[i64]) -> bool {
    p.iter().zip(q).all(|(a, b)| a >= b)
}

fn set(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn strings(v: &[GroupElement]) -> BTreeSet<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn within(t0: Instant, limit: Duration) -> Check {
    let el = t0.elapsed();
    ensure(el <= limit, || format!("took {el:?}, limit {limit:?}"))
}

fn columns(rows: &[&[i64]]) -> Vec<GroupElement> {
    (0..rows[0].len()).map(|j| e(&rows.iter().map(|r| r[j]).collect::<Vec<_>>())).collect()
}

fn cycle(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| {
            let mut f = vec![i, (i + 1) % n];
            f.sort();
            f
        })
        .collect()
}

fn cube_facets() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn p1_cubed_rays() -> IntMatrix {
    IntMatrix::from_i64(&[vec![1, -1, 0, 0, 0, 0], vec![0, 0, 1, -1, 0, 0], vec![0, 0, 0, 0, 1, -1]])
}

fn b_of(s: &GradingSetup) -> BTreeSet<String> {
    s.irrelevant_ideal_strings().into_iter().collect()
}

fn criterion_1() -> Check {
    let limit = Duration::from_secs(1);
    let chamber1 = set(&["x1x2", "x2x3", "x3x4", "x1x4"]);
    let chamber2 = set(&["x1x2", "x2x3", "x2x4"]);
    for t in 1..=3 {
        let t0 = Instant::now();
        let s = catalog::hirzebruch(t, [1, 1]).map_err(err)?;
        ensure(b_of(&s) == chamber1, || format!("F_{t} first chamber: {:?}", b_of(&s)))?;
        within(t0, limit)?;
        let t0 = Instant::now();
        let s = catalog::hirzebruch(t, [-t, 2]).map_err(err)?;
        ensure(b_of(&s) == chamber2, || format!("F_{t} second chamber: {:?}", b_of(&s)))?;
        within(t0, limit)?;
    }
    let expect = [
        set(&["x1x2", "x1x4", "x1x5", "x2x3", "x3x4", "x3x5"]),
        set(&["x1x2", "x2x3", "x2x5", "x1x4", "x3x4", "x4x5"]),
    ];
    for (k, want) in expect.iter().enumerate() {
        let t0 = Instant::now();
        let s = catalog::torsion_example(k as u8 + 1).map_err(err)?;
        ensure(b_of(&s) == *want, || format!("torsion chamber {}: {:?}", k + 1, b_of(&s)))?;
        within(t0, limit)?;
    }
    let mut cube = BTreeSet::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                cube.insert(format!("x{a}x{b}x{c}"));
            }
        }
    }
    let t0 = Instant::now();
    let s = catalog::product_of_projective_spaces(&[1, 1, 1]).map_err(err)?;
    ensure(b_of(&s) == cube, || format!("P1xP1xP1: {:?}", b_of(&s)))?;
    let s = catalog::from_fan(&p1_cubed_rays(), &cube_facets(), None).map_err(err)?;
    ensure(b_of(&s) == cube, || format!("P1xP1xP1 from rays: {:?}", b_of(&s)))?;
    within(t0, limit)?;
    let eight = set(&[
        "x3x4x5x6x7x8",
        "x1x4x5x6x7x8",
        "x1x2x5x6x7x8",
        "x1x2x3x6x7x8",
        "x1x2x3x4x7x8",
        "x1x2x3x4x5x8",
        "x2x3x4x5x6x7",
        "x1x2x3x4x5x6",
    ]);
    let t0 = Instant::now();
    let s = catalog::blowup_p2_eight_rays().map_err(err)?;
    ensure(b_of(&s) == eight, || format!("eight rays: {:?}", b_of(&s)))?;
    let s = catalog::from_fan(&catalog::blowup_p2_eight_rays_rays(), &cycle(8), None).map_err(err)?;
    ensure(b_of(&s) == eight, || format!("eight rays from fan: {:?}", b_of(&s)))?;
    within(t0, limit)
}

fn criterion_2() -> Check {
    let t0 = Instant::now();
    let f2 = catalog::hirzebruch(2, [1, 1]).map_err(err)?;
    let k = f2.generators_k().map_err(err)?;
    ensure(strings(&k) == set(&["(1,0)", "(0,1)"]), || format!("F2 K = {k:?}"))?;
    let lists = [
        (["(2,0)[0,0]", "(2,2)[0,0]"], ["(1,0)[0,0]", "(1,1)[0,0]", "(0,0)[1,0]", "(0,0)[0,1]"]),
        (["(0,2)[0,0]", "(2,2)[0,0]"], ["(0,1)[0,0]", "(1,1)[0,0]", "(0,0)[1,0]", "(0,0)[0,1]"]),
    ];
    for (c, (kk, ks)) in lists.iter().enumerate() {
        let s = catalog::torsion_example(c as u8 + 1).map_err(err)?;
        let k = s.generators_k().map_err(err)?;
        let ksat = s.generators_ksat().map_err(err)?;
        ensure(strings(&k) == set(kk), || format!("chamber {} K = {:?}", c + 1, strings(&k)))?;
        ensure(strings(&ksat) == set(ks), || format!("chamber {} Ksat = {:?}", c + 1, strings(&ksat)))?;
    }
    let w = catalog::weighted_projective_space(&[2, 3], &[1]).map_err(err)?;
    for p in 0..=12 {
        ensure(w.in_k(&e(&[p])) == (p % 6 == 0), || format!("in_K({p}) for weights (2,3)"))?;
    }
    within(t0, Duration::from_secs(5))
}

fn criterion_2_stretch() -> Check {
    let t0 = Instant::now();
    let s = catalog::resolution_p2371(None).map_err(err)?;
    let k = s.generators_k().map_err(err)?;
    ensure(k.len() == 25, || format!("{} generators", k.len()))?;
    within(t0, Duration::from_secs(600))
}

fn cech_agrees(s: &GradingSetup, name: &str) -> Check {
    let n = s.n();
    let total = 7usize.pow(n as u32);
    let bad: Vec<Vec<i64>> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let u: Vec<i64> = (0..n)
                .map(|_| {
                    let x = (code % 7) as i64 - 3;
                    code /= 7;
                    x
                })
                .collect();
            let c = cech_dimensions(s, &u);
            let f = formula_dimensions(s, &u);
            let ok = c.len() == s.d() + 2 && c == f && c[1] == 0;
            (!ok).then_some(u)
        })
        .collect();
    ensure(bad.is_empty(), || format!("{name}: {} mismatches, first {:?}", bad.len(), bad.first()))
}

fn criterion_3() -> Check {
    let t0 = Instant::now();
    cech_agrees(&catalog::hirzebruch(2, [1, 1]).map_err(err)?, "F2")?;
    cech_agrees(&catalog::projective_space(2).map_err(err)?, "P2")?;
    cech_agrees(&catalog::product_of_projective_spaces(&[1, 1, 1]).map_err(err)?, "P1xP1xP1")?;
    cech_agrees(&catalog::weighted_projective_space(&[2, 3], &[1]).map_err(err)?, "P(2,3)")?;
    within(t0, Duration::from_secs(60))
}

fn criterion_4() -> Check {
    let t0 = Instant::now();
    let w = catalog::weighted_projective_space(&[2, 3], &[1]).map_err(err)?;
    let tw = support_table(&w).map_err(err)?;
    let mut got = BTreeSet::new();
    for p in -12..=0 {
        if tw.in_support(&w, 2, &e(&[p])).map_err(err)? {
            got.insert(p);
        }
        for i in [0, 1] {
            ensure(!tw.in_support(&w, i, &e(&[p])).map_err(err)?, || format!("P(2,3) row {i} at {p}"))?;
        }
    }
    let want: BTreeSet<i64> = [-5, -7, -8, -9, -10, -11, -12].into_iter().collect();
    ensure(got == want, || format!("P(2,3) row 2: {got:?}"))?;
    let f = catalog::hirzebruch(2, [1, 1]).map_err(err)?;
    let tf = support_table(&f).map_err(err)?;
    for x in -5..=2 {
        for y in -5..=2 {
            let p = e(&[x, y]);
            let row2 = (x <= -2 && y >= 0) || (x >= 2 && y <= -2);
            let row3 = y <= -2 && x + 2 * y <= -4;
            let want = [false, false, row2, row3];
            for (i, &w) in want.iter().enumerate() {
                let got = tf.in_support(&f, i, &p).map_err(err)?;
                ensure(got == w, || format!("F2 row {i} at ({x},{y}): {got}"))?;
            }
        }
    }
    within(t0, Duration::from_secs(5))
}

fn vanishing_on_ksat(s: &GradingSetup, t: &SupportTable, bx: &FreeBox, name: &str) -> Check {
    let mut seen = 0;
    for p in bx.elements(s.group()).map_err(err)? {
        if !s.in_ksat(&p) {
            continue;
        }
        seen += 1;
        for i in 0..=s.d() + 1 {
            let h = hilbert_dim(s, t, i, &p).map_err(err)?;
            ensure(h == HilbertDim::Finite(0), || format!("{name}: H^{i} at {p} is {h:?}"))?;
        }
    }
    ensure(seen > 0, || format!("{name}: no K^sat degrees in the window"))
}

fn criterion_5() -> Check {
    let t0 = Instant::now();
    let setups: Vec<(&str, GradingSetup, FreeBox)> = vec![
        ("P1", catalog::projective_space(1).map_err(err)?, FreeBox::cube(1, -6, 6).map_err(err)?),
        ("P2", catalog::projective_space(2).map_err(err)?, FreeBox::cube(1, -6, 6).map_err(err)?),
        ("P3", catalog::projective_space(3).map_err(err)?, FreeBox::cube(1, -6, 6).map_err(err)?),
        ("P(2,3)", catalog::weighted_projective_space(&[2, 3], &[1]).map_err(err)?, FreeBox::cube(1, -12, 12).map_err(err)?),
        ("F2", catalog::hirzebruch(2, [1, 1]).map_err(err)?, FreeBox::cube(2, -4, 4).map_err(err)?),
        ("F2 second chamber", catalog::hirzebruch(2, [-2, 2]).map_err(err)?, FreeBox::cube(2, -4, 4).map_err(err)?),
        ("P1xP1xP1", catalog::product_of_projective_spaces(&[1, 1, 1]).map_err(err)?, FreeBox::cube(3, -2, 3).map_err(err)?),
        ("torsion 1", catalog::torsion_example(1).map_err(err)?, FreeBox::cube(2, -3, 3).map_err(err)?),
        ("torsion 2", catalog::torsion_example(2).map_err(err)?, FreeBox::cube(2, -3, 3).map_err(err)?),
        ("blowup", catalog::blowup_p2_three_points().map_err(err)?, FreeBox::cube(4, -1, 2).map_err(err)?),
    ];
    for (name, s, bx) in &setups {
        let t = support_table(s).map_err(err)?;
        vanishing_on_ksat(s, &t, bx, name)?;
    }
    for (name, s, _) in setups.iter().take(5) {
        let t = support_table(s).map_err(err)?;
        let w = fujita_witness(s, &t).map_err(err)?;
        ensure(w.certification == Certification::Certified, || format!("{name}: Fujita {w:?}"))?;
    }
    within(t0, Duration::from_secs(10))
}

/// A setup with a raster of expected regularity verdicts.
struct Case {
    name: String,
    setup: GradingSetup,
    table: SupportTable,
    raster: FreeBox,
    expect: Vec<(GroupElement, bool)>,
    window_below: i64,
    window_above: i64,
}

impl Case {
    fn new(name: String, setup: GradingSetup, raster: FreeBox, rule: impl Fn(&[i64]) -> bool) -> Result<Self, String> {
        let table = support_table(&setup).map_err(err)?;
        let cmax = setup.c().iter().flat_map(ints).map(i64::abs).max().unwrap_or(0);
        let amax = setup.degrees().iter().flat_map(ints).map(i64::abs).max().unwrap_or(0);
        let expect = raster.elements(setup.group()).map_err(err)?.into_iter().map(|p| {
            let w = rule(&ints(&p));
            (p, w)
        }).collect();
        let d = setup.d() as i64;
        Ok(Case { name, setup, table, raster, expect, window_below: d * cmax + amax + 1, window_above: amax + 2 })
    }
}

fn grid(lo: &[i64], hi: &[i64]) -> FreeBox {
    FreeBox::new(lo.to_vec(), hi.to_vec()).unwrap()
}

fn regularity_cases() -> Result<Vec<Case>, String> {
    let mut cases = Vec::new();
    for t in 0..=3i64 {
        let s = catalog::hirzebruch(t, [1, 1]).map_err(err)?;
        cases.push(Case::new(format!("F_{t}"), s, grid(&[-2, -2], &[4, 4]), move |p| {
            if t <= 1 {
                p[0] >= 0 && p[1] >= 0
            } else {
                (p[0] >= t - 1 && p[1] >= 0) || (p[0] >= 0 && p[1] >= 1)
            }
        })?);
    }
    for n in 2..=4usize {
        let mut weights = vec![1i64; n];
        loop {
            let s = catalog::weighted_projective_space(&weights, &[1]).map_err(err)?;
            let bound = n as i64 - weights.iter().sum::<i64>();
            cases.push(Case::new(format!("weights {weights:?}"), s, grid(&[bound - 3], &[bound + 3]), move |p| p[0] >= bound)?);
            // next nondecreasing tuple in 1..=4
            let Some(k) = (0..n).rev().find(|&k| weights[k] < 4) else { break };
            let v = weights[k] + 1;
            for w in &mut weights[k..] {
                *w = v;
            }
        }
        for mask in 1..8u32 {
            let c: Vec<i64> = (1..=3).filter(|&x| mask & (1 << (x - 1)) != 0).collect();
            let s = catalog::weighted_projective_space(&vec![1; n], &c).map_err(err)?;
            let bound = (n as i64 - 1) * (c.last().unwrap() - 1);
            cases.push(Case::new(format!("P{} with C {c:?}", n - 1), s, grid(&[bound - 3], &[bound + 3]), move |p| p[0] >= bound)?);
        }
    }
    let s = catalog::product_of_projective_spaces(&[1, 1, 1]).map_err(err)?;
    cases.push(Case::new("P1xP1xP1".into(), s, grid(&[-1, -1, -1], &[3, 3, 3]), |p| p.iter().all(|&x| x >= 0))?);
    let s = catalog::product_of_projective_spaces(&[1, 1]).map_err(err)?;
    cases.push(Case::new("P1xP1".into(), s, grid(&[0, 0], &[0, 0]), |_| true)?);
    let s = catalog::product_of_projective_spaces(&[1, 2]).map_err(err)?;
    cases.push(Case::new("P1xP2".into(), s, grid(&[0, 0], &[0, 0]), |_| true)?);
    let s = catalog::blowup_p2_three_points().map_err(err)?;
    cases.push(Case::new("blowup".into(), s, grid(&[0, 0, 0, 0], &[0, 0, 0, 0]), |_| false)?);
    Ok(cases)
}

fn criterion_6(cases: &[Case]) -> Check {
    let t0 = Instant::now();
    for case in cases {
        let bad: Vec<String> = case
            .expect
            .par_iter()
            .filter_map(|(m, want)| match is_regular_s(&case.setup, &case.table, m, 0) {
                Ok(v) if v == Verdict::from_bool(*want) => None,
                Ok(v) => Some(format!("{m}: {v}")),
                Err(x) => Some(format!("{m}: {x}")),
            })
            .collect();
        ensure(bad.is_empty(), || format!("{}: {:?}", case.name, &bad[..bad.len().min(4)]))?;
    }
    within(t0, Duration::from_secs(60))
}

fn criterion_7(cases: &[Case]) -> Check {
    for case in cases {
        let direct = reg_window_direct(&case.setup, &case.table, &case.raster, 0, case.window_below, case.window_above)
            .map_err(err)?;
        let bad: Vec<String> = direct
            .par_iter()
            .filter_map(|(m, b)| match is_regular_s(&case.setup, &case.table, m, 0) {
                Ok(a) if a == *b && a != Verdict::Incomplete => None,
                a => Some(format!("{m}: {a:?} vs {b:?}")),
            })
            .collect();
        ensure(direct.len() == case.expect.len(), || format!("{}: raster size", case.name))?;
        ensure(bad.is_empty(), || format!("{}: {:?}", case.name, &bad[..bad.len().min(4)]))?;
    }
    Ok(())
}

fn d75() -> Vec<Vec<GroupElement>> {
    vec![
        vec![e(&[0, 0, 0])],
        columns(&[&[2, 1, 1, 1, 1, 0, 0, 0, 0], &[0, 1, 1, 0, 0, 2, 1, 1, 0], &[0, 0, 0, 1, 1, 0, 1, 1, 2]]),
        columns(&[
            &[2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
            &[1, 1, 0, 0, 2, 2, 1, 1, 1, 1, 1, 1, 0, 0, 2, 2, 1, 1],
            &[0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 1, 1, 2, 2],
        ]),
        columns(&[
            &[2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0],
            &[2, 1, 1, 1, 1, 0, 2, 2, 2, 2, 1, 1, 1, 1, 2],
            &[0, 1, 1, 1, 1, 2, 1, 1, 1, 1, 2, 2, 2, 2, 2],
        ]),
        columns(&[&[2, 2, 2, 2, 1, 1], &[2, 2, 1, 1, 2, 2], &[1, 1, 2, 2, 2, 2]]),
        vec![e(&[2, 2, 2])],
    ]
}

fn criterion_8() -> Check {
    let t0 = Instant::now();
    let s = catalog::product_of_projective_spaces(&[1, 1, 1]).map_err(err)?;
    let t = support_table(&s).map_err(err)?;
    let unit = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let b74 = BettiTable::new(vec![
        vec![e(&[0, 0, 0])],
        unit.iter().map(|c| e(c)).collect(),
        vec![e(&[1, 1, 0]), e(&[1, 0, 1]), e(&[0, 1, 1])],
        vec![e(&[1, 1, 1])],
    ])
    .map_err(err)?;
    let mut cache = RegCache::default();
    for p in FreeBox::cube(3, 0, 3).map_err(err)?.elements(s.group()).map_err(err)? {
        let f = ints(&p);
        let want = [[1, 1, 0], [1, 0, 1], [0, 1, 1]].iter().any(|c| geq(&f, c));
        let v = resolution_bound_cached(&s, &t, &b74, &p, &mut cache).map_err(err)?;
        ensure(v == Verdict::from_bool(want), || format!("single point at {p}: {v}"))?;
    }
    let v0 = resolution_bound_cached(&s, &t, &b74, &e(&[0, 0, 0]), &mut cache).map_err(err)?;
    ensure(v0 == Verdict::False, || "single point at 0 is not false".into())?;
    let b75 = BettiTable::new(d75()).map_err(err)?;
    let corners = [[1, 2, 2], [2, 1, 2], [2, 2, 1]];
    for p in FreeBox::cube(3, 0, 4).map_err(err)?.elements(s.group()).map_err(err)? {
        let f = ints(&p);
        let want = corners.iter().any(|c| geq(&f, c));
        let v = resolution_bound_cached(&s, &t, &b75, &p, &mut cache).map_err(err)?;
        ensure(v == Verdict::from_bool(want), || format!("two points at {p}: {v}"))?;
    }
    within(t0, Duration::from_secs(120))
}

fn criterion_9() -> Check {
    let t0 = Instant::now();
    let s = catalog::product_of_projective_spaces(&[1, 1, 1]).map_err(err)?;
    let two = PointSet::from_i64(&[vec![1, 1, 1, 1, 1, 1], vec![2, 1, 2, 1, 2, 1]]).map_err(err)?;
    let one = PointSet::from_i64(&[vec![1, 1, 1, 1, 1, 1]]).map_err(err)?;
    for p in FreeBox::cube(3, 0, 2).map_err(err)?.elements(s.group()).map_err(err)? {
        let f = ints(&p);
        let want = f.iter().any(|&x| x >= 1);
        let got = points_regularity(&s, &two, &p).map_err(err)?;
        ensure(got == want, || format!("two points at {p}: {got}"))?;
        let got = points_regularity(&s, &one, &p).map_err(err)?;
        ensure(got, || format!("one point at {p}: false"))?;
    }
    ensure(!points_regularity(&s, &two, &e(&[0, 0, 0])).map_err(err)?, || "two points at 0".into())?;
    ensure(points_regularity(&s, &two, &e(&[1, 0, 0])).map_err(err)?, || "two points at (1,0,0)".into())?;
    within(t0, Duration::from_secs(30))
}

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn run_suite<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check {
    runner().run(&strategy, test).map_err(|x| format!("{name}: {x}"))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn group_strategy() -> impl Strategy<Value = (AbelianGroup, Vec<GroupElement>)> {
    (0usize..=3, prop::collection::vec(2i64..=6, 0..=2)).prop_flat_map(|(rank, moduli)| {
        let g = AbelianGroup::with_torsion(rank, &moduli).unwrap();
        let elem = (prop::collection::vec(-20i64..=20, rank), prop::collection::vec(-20i64..=20, moduli.len()));
        (Just(g), prop::collection::vec(elem, 3)).prop_map(|(g, raw)| {
            let els = raw.iter().map(|(f, t)| g.element_i64(f, t).unwrap()).collect();
            (g, els)
        })
    })
}

fn suite_group_axioms() -> Check {
    run_suite("group axioms", group_strategy(), |(g, x)| {
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        let add = |p: &GroupElement, q: &GroupElement| g.add(p, q).unwrap();
        prop_assert_eq!(add(&add(a, b), c), add(a, &add(b, c)));
        prop_assert_eq!(add(a, b), add(b, a));
        prop_assert_eq!(add(a, &g.zero()), a.clone());
        prop_assert!(add(a, &g.neg(a).unwrap()).is_zero());
        prop_assert_eq!(g.sub(a, b).unwrap(), add(a, &g.neg(b).unwrap()));
        prop_assert!(g.contains(&add(a, b)));
        Ok(())
    })
}

fn suite_snf() -> Check {
    let strategy = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r));
    run_suite("Smith normal form", strategy, |rows| {
        let m = IntMatrix::from_i64(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.determinant().magnitude().clone(), 1u32.into());
        prop_assert_eq!(s.v.determinant().magnitude().clone(), 1u32.into());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j && s.d[(i, j)] != BigInt::from(0) {
                    return Err(fail(format!("off-diagonal entry at ({i},{j})")));
                }
            }
        }
        let inv = s.invariants();
        prop_assert!(inv.iter().all(|x| *x > BigInt::from(0)));
        prop_assert!(inv.windows(2).all(|w| &w[1] % &w[0] == BigInt::from(0)));
        prop_assert_eq!(inv.len(), m.rank());
        Ok(())
    })
}

fn suite_witness() -> Check {
    let strategy = (1usize..=3, 0usize..=1, 1usize..=4).prop_flat_map(|(rank, tors, k)| {
        let col = (prop::collection::vec(0i64..=4, rank), prop::collection::vec(0i64..=2, tors));
        (
            Just((rank, tors)),
            prop::collection::vec(col, k),
            prop::collection::vec(0i64..=4, k),
            prop::collection::vec(-3i64..=6, rank),
        )
    });
    run_suite("Diophantine witnesses", strategy, |((rank, tors), cols, lambda, free_target)| {
        let g = AbelianGroup::with_torsion(rank, &vec![3; tors]).unwrap();
        let k = cols.len();
        let cols: Vec<GroupElement> = cols.iter().map(|(f, t)| g.element_i64(f, t).unwrap()).collect();
        let coeffs: Vec<BigInt> = lambda.iter().map(|&x| BigInt::from(x)).collect();
        let target = g.combination(&coeffs, &cols);
        let sys = DiophantineSystem::new(&g, cols.clone(), target).unwrap();
        let w = solve_exists(&sys).map_err(|x| fail(x.to_string()))?;
        match w {
            Some(w) => prop_assert!(sys.check_witness(&w)),
            None => return Err(fail("solvable system reported infeasible".into())),
        }
        let target = g.element_i64(&free_target, &vec![0; tors]).unwrap();
        let sys = DiophantineSystem::new(&g, cols, target).unwrap();
        let brute = (0..7usize.pow(k as u32)).any(|mut code| {
            let l: Vec<BigInt> = (0..k)
                .map(|_| {
                    let x = code % 7;
                    code /= 7;
                    BigInt::from(x)
                })
                .collect();
            sys.check_witness(&l)
        });
        match solve_exists(&sys).map_err(|x| fail(x.to_string()))? {
            Some(w) => prop_assert!(sys.check_witness(&w)),
            None => prop_assert!(!brute, "infeasible but {:?} has a solution", free_target),
        }
        Ok(())
    })
}

fn suite_hilbert_minimality() -> Check {
    let strategy = (2usize..=3).prop_flat_map(|k| {
        (Just(k), prop::collection::vec(prop::collection::vec(-3i64..=3, k), 1..=2))
            .prop_filter("interior point", |(_, rows)| rows.iter().all(|r| r.iter().sum::<i64>() > 0))
    });
    run_suite("Hilbert basis minimality", strategy, |(k, extra)| {
        let mut h: Vec<Vec<BigInt>> = (0..k).map(|i| (0..k).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        h.extend(extra.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()));
        let basis = cone::hilbert_basis(&h, k, Limits::default()).map_err(|x| fail(x.to_string()))?;
        match cone_hilbert_basis(&h, k, Limits::default()) {
            Ok(mut oracle) => {
                oracle.sort();
                prop_assert_eq!(&basis, &oracle);
            }
            Err(multireg::Error::Overflow(_)) => {}
            Err(x) => return Err(fail(x.to_string())),
        }
        let in_cone = |y: &[BigInt]| h.iter().all(|row| row.iter().zip(y).map(|(a, b)| a * b).sum::<BigInt>() >= BigInt::from(0));
        for (i, b) in basis.iter().enumerate() {
            prop_assert!(in_cone(b));
            for (j, c) in basis.iter().enumerate() {
                if i != j {
                    let diff: Vec<BigInt> = b.iter().zip(c).map(|(x, y)| x - y).collect();
                    prop_assert!(!in_cone(&diff), "{:?} - {:?} lies in the cone", b, c);
                }
            }
        }
        let g = AbelianGroup::free(k);
        let gens: Vec<GroupElement> = basis.iter().map(|b| GroupElement::from_parts(b.clone(), vec![])).collect();
        for y in FreeBox::cube(k, 0, 5).unwrap().points() {
            let y: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
            if !in_cone(&y) {
                continue;
            }
            let sys = DiophantineSystem::new(&g, gens.clone(), GroupElement::from_parts(y.clone(), vec![])).unwrap();
            let w = solve_exists(&sys).map_err(|x| fail(x.to_string()))?;
            prop_assert!(w.is_some(), "{:?} is not generated", y);
        }
        Ok(())
    })
}

fn suite_euler() -> Check {
    let strategy = (1usize..=6).prop_flat_map(|n| {
        let max = (1u64 << n) - 1;
        (Just(n), prop::collection::vec(1u64..=max, 1..=5), 0u64..=max, prop::sample::select(vec![0u64, 2, 3]))
    });
    run_suite("Euler characteristic", strategy, |(n, facets, sigma, p)| {
        let facets: Vec<Vec<usize>> = facets.iter().map(|m| (0..n).filter(|v| m & (1 << v) != 0).collect()).collect();
        let delta = SimplicialComplex::from_facets(n, &facets).unwrap();
        let field = if p == 0 { Field::Rationals } else { Field::Prime(p) };
        let dims = reduced_cohomology_dims(&delta, sigma, field);
        let chi: i64 = dims.iter().enumerate().map(|(k, &d)| if k % 2 == 1 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(chi, reduced_euler_characteristic(&delta, sigma));
        Ok(())
    })
}

fn monotone_rasters(cases: &[Case]) -> Check {
    for case in cases {
        let g = case.setup.group();
        let truth: std::collections::HashMap<GroupElement, bool> = case.expect.iter().cloned().collect();
        for (m, v) in &case.expect {
            if !v {
                continue;
            }
            for c in case.setup.c() {
                let q = g.add(m, c).map_err(err)?;
                if let Some(&w) = truth.get(&q) {
                    ensure(w, || format!("{}: {m} regular but {q} not", case.name))?;
                }
            }
        }
    }
    Ok(())
}

fn suite_monotonicity(cases: &[Case]) -> Check {
    monotone_rasters(cases)?;
    let setups: Vec<(GradingSetup, SupportTable)> = (0..=4)
        .map(|t| {
            let s = catalog::hirzebruch(t, [1, 1]).unwrap();
            let tb = support_table(&s).unwrap();
            (s, tb)
        })
        .collect();
    let strategy = (0usize..setups.len(), -6i64..=6, -6i64..=6, 0usize..=1);
    run_suite("regularity monotonicity", strategy, |(k, x, y, level)| {
        let (s, t) = &setups[k];
        let m = e(&[x, y]);
        let v = is_regular_s(s, t, &m, level).map_err(|x| fail(x.to_string()))?;
        if v == Verdict::True {
            for c in s.c() {
                let q = s.group().add(&m, c).unwrap();
                let w = is_regular_s(s, t, &q, level).map_err(|x| fail(x.to_string()))?;
                prop_assert_eq!(w, Verdict::True, "{} regular, {} not", m, q);
            }
        }
        Ok(())
    })
}

fn criterion_10(cases: &[Case]) -> Check {
    let suites: [(&str, &dyn Fn() -> Check); 6] = [
        ("group axioms", &suite_group_axioms),
        ("SNF", &suite_snf),
        ("witnesses", &suite_witness),
        ("Hilbert bases", &suite_hilbert_minimality),
        ("Euler characteristic", &suite_euler),
        ("monotonicity", &|| suite_monotonicity(cases)),
    ];
    let mut failures = Vec::new();
    for (name, suite) in suites {
        let t0 = Instant::now();
        let r = suite();
        println!("    suite {name}: {} ({:.2}s)", if r.is_ok() { "ok" } else { "failed" }, t0.elapsed().as_secs_f64());
        if let Err(x) = r {
            failures.push(format!("{name}: {x}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn main() {
    println!("acceptance run, property seed {:?}, {CASES} cases per suite", String::from_utf8_lossy(&SEED));
    let mut failed = 0;
    let mut report = |label: &str, title: &str, f: &dyn Fn() -> Check| {
        let t0 = Instant::now();
        let r = f();
        let el = t0.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {label}: PASS  {title} ({el:.2}s)"),
            Err(x) => {
                if !label.contains("stretch") {
                    failed += 1;
                }
                println!("criterion {label}: FAIL  {title} ({el:.2}s): {x}");
            }
        }
    };
    report("1", "irrelevant ideals", &criterion_1);
    report("2", "semigroups", &criterion_2);
    report("2 stretch", "25 generators of K for the resolution of P(2,3,7,1)", &criterion_2_stretch);
    report("3", "Cech complex agrees with the local cohomology formula", &criterion_3);
    report("4", "local cohomology supports", &criterion_4);
    report("5", "vanishing on K^sat and Fujita witnesses", &criterion_5);
    let cases = regularity_cases();
    match &cases {
        Ok(cases) => {
            report("6", "regularity of S", &|| criterion_6(cases));
            report("7", "finite criterion agrees with the window check", &|| criterion_7(cases));
        }
        Err(x) => {
            let x = x.clone();
            report("6", "regularity of S", &|| Err(x.clone()));
            report("7", "finite criterion agrees with the window check", &|| Err(x.clone()));
        }
    }
    report("8", "resolution bounds", &criterion_8);
    report("9", "regularity of points", &criterion_9);
    match &cases {
        Ok(cases) => report("10", "property suites", &|| criterion_10(cases)),
        Err(x) => report("10", "property suites", &|| Err(x.clone())),
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
