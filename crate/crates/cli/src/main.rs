use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use multireg::config::load_setup;
use multireg::fan::{monomial_string, GradingSetup};
use multireg::group::parse_degree;
use multireg::local_cohomology::{cech_dimension, formula_dimension, support_table};
use multireg::region::FreeBox;
use multireg::regularity::{
    fujita_witness, is_regular_s, multiplication_surjective, points_regularity, reg_window, resolution_bound_cached,
    BettiTable, Certification, PointSet, RegCache, Verdict,
};
use multireg::GroupElement;

const EXIT_TRUE: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_INCOMPLETE: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "multireg", version, about = "Multigraded Castelnuovo-Mumford regularity of Cox rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Semigroup {
    #[value(name = "K")]
    K,
    #[value(name = "Ksat")]
    Ksat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irrelevant ideal, semigroups and hypothesis flags of a configuration.
    Analyze { config: PathBuf },
    /// Supports of the local cohomology modules H^i_B(S).
    LcSupport {
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of H^i of the degree-u strand of the Čech complex.
    Cech {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        i: usize,
    },
    /// Is m in reg^k(S)?
    RegTest {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Regularity of S on every degree of a box.
    RegWindow {
        config: PathBuf,
        #[arg(long = "box", allow_hyphen_values = true)]
        bx: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Inner bound on reg(M) from the Betti degrees of a resolution.
    ResBound {
        config: PathBuf,
        #[arg(long)]
        betti: PathBuf,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "window", required_unless_present = "window")]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Regularity of a reduced set of points.
    PointsReg {
        config: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "window", required_unless_present = "window")]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Is S_p ⊗ S_q → S_{p+q} surjective?
    MultSurjective {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Minimal generators of K or K^sat.
    HilbertBasis {
        config: PathBuf,
        #[arg(long)]
        semigroup: Semigroup,
    },
    /// A degree m with m + K^sat disjoint from every local cohomology support.
    Fujita { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_TRUE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn setup_from(path: &Path) -> Result<GradingSetup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let setup = load_setup(&text).with_context(|| format!("loading {}", path.display()))?;
    for w in setup.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(setup)
}

fn degree(setup: &GradingSetup, s: &str) -> Result<GroupElement> {
    Ok(parse_degree(setup.group(), s)?)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::True => EXIT_TRUE,
        Verdict::False => EXIT_FALSE,
        Verdict::Incomplete => EXIT_INCOMPLETE,
    }
}

fn bool_code(b: bool) -> u8 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn list(elements: &[GroupElement]) -> String {
    elements.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Analyze { config } => analyze(&setup_from(&config)?),
        Command::LcSupport { config, json } => lc_support(&setup_from(&config)?, json),
        Command::Cech { config, u, i } => {
            let setup = setup_from(&config)?;
            let u: Vec<i64> = u
                .split(',')
                .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad exponent {x:?}")))
                .collect::<Result<_>>()?;
            if u.len() != setup.n() {
                bail!("u has {} entries, expected {}", u.len(), setup.n());
            }
            println!("{}", cech_dimension(&setup, &u, i));
            let f = formula_dimension(&setup, &u, i);
            println!("formula {f}");
            Ok(EXIT_TRUE)
        }
        Command::RegTest { config, m, level } => {
            let setup = setup_from(&config)?;
            let table = support_table(&setup)?;
            let m = degree(&setup, &m)?;
            let v = is_regular_s(&setup, &table, &m, level)?;
            println!("{v}");
            Ok(verdict_code(v))
        }
        Command::RegWindow { config, bx, svg, csv, level } => {
            let setup = setup_from(&config)?;
            let table = support_table(&setup)?;
            let bx: FreeBox = bx.parse()?;
            let raster = reg_window(&setup, &table, &bx, level)?;
            emit_window(&setup, &bx, &raster, svg.as_deref(), csv.as_deref())
        }
        Command::ResBound { config, betti, m, window } => {
            let setup = setup_from(&config)?;
            let table = support_table(&setup)?;
            let text = fs::read_to_string(&betti).with_context(|| format!("reading {}", betti.display()))?;
            let betti: BettiTable = serde_json::from_str(&text).context("parsing the Betti table")?;
            betti.check(setup.group())?;
            let mut cache = RegCache::default();
            let mut eval = |p: &GroupElement| resolution_bound_cached(&setup, &table, &betti, p, &mut cache);
            match (m, window) {
                (Some(m), _) => {
                    let v = eval(&degree(&setup, &m)?)?;
                    println!("{v}");
                    Ok(verdict_code(v))
                }
                (None, Some(w)) => {
                    let bx: FreeBox = w.parse()?;
                    let mut raster = Vec::new();
                    for p in bx.elements(setup.group())? {
                        let v = eval(&p)?;
                        raster.push((p, v));
                    }
                    emit_window(&setup, &bx, &raster, None, None)
                }
                (None, None) => bail!("give --m or --window"),
            }
        }
        Command::PointsReg { config, points, m, window } => {
            let setup = setup_from(&config)?;
            let text = fs::read_to_string(&points).with_context(|| format!("reading {}", points.display()))?;
            let pts = PointSet::from_json(&text)?;
            pts.validate(&setup)?;
            match (m, window) {
                (Some(m), _) => {
                    let b = points_regularity(&setup, &pts, &degree(&setup, &m)?)?;
                    println!("{b}");
                    Ok(bool_code(b))
                }
                (None, Some(w)) => {
                    let bx: FreeBox = w.parse()?;
                    let mut raster = Vec::new();
                    for p in bx.elements(setup.group())? {
                        let v = Verdict::from_bool(points_regularity(&setup, &pts, &p)?);
                        raster.push((p, v));
                    }
                    emit_window(&setup, &bx, &raster, None, None)
                }
                (None, None) => bail!("give --m or --window"),
            }
        }
        Command::MultSurjective { config, p, q } => {
            let setup = setup_from(&config)?;
            let b = multiplication_surjective(&setup, &degree(&setup, &p)?, &degree(&setup, &q)?)?;
            println!("{b}");
            Ok(bool_code(b))
        }
        Command::HilbertBasis { config, semigroup } => {
            let setup = setup_from(&config)?;
            let gens = match semigroup {
                Semigroup::K => setup.generators_k()?,
                Semigroup::Ksat => setup.generators_ksat()?,
            };
            for g in &gens {
                println!("{g}");
            }
            Ok(EXIT_TRUE)
        }
        Command::Fujita { config } => {
            let setup = setup_from(&config)?;
            let table = support_table(&setup)?;
            let w = fujita_witness(&setup, &table)?;
            let how = match w.certification {
                Certification::Certified => "certified",
                Certification::WindowOnly => "window-only",
            };
            println!("{} {how}", w.m);
            Ok(match w.certification {
                Certification::Certified => EXIT_TRUE,
                Certification::WindowOnly => EXIT_INCOMPLETE,
            })
        }
    }
}

fn analyze(setup: &GradingSetup) -> Result<u8> {
    let g = setup.group();
    println!("n = {}", setup.n());
    println!("r = {}", setup.r());
    println!("d = {}", setup.d());
    println!("group = {g}");
    let tors: Vec<String> = g.torsion_moduli().iter().map(BigInt::to_string).collect();
    println!("torsion = [{}]", tors.join(","));
    println!("degrees = {}", list(setup.degrees()));
    let facets: Vec<String> = setup
        .delta()
        .facets()
        .iter()
        .map(|f| format!("{{{}}}", f.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    println!("facets = {}", facets.join(" "));
    println!("B = {}", setup.irrelevant_ideal().iter().map(|h| monomial_string(h)).collect::<Vec<_>>().join(" "));
    let gamma: Vec<String> = setup
        .gamma()
        .iter()
        .map(|h| format!("[{}]", h.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    println!("chamber inequalities = {}", gamma.join(" "));
    match setup.generators_k() {
        Ok(k) => println!("K = {}", list(&k)),
        Err(e) => println!("K = unsupported ({e})"),
    }
    match setup.generators_ksat() {
        Ok(k) => println!("Ksat = {}", list(&k)),
        Err(e) => println!("Ksat = unsupported ({e})"),
    }
    println!("C = {}", list(setup.c()));
    let f = setup.flags();
    println!(
        "flags: pointed={} acyclic={} toric={} regular_verified={} c_in_k={}",
        f.pointed, f.acyclic, f.toric, f.regular_verified, f.c_in_k
    );
    println!("field = {}", setup.field());
    Ok(EXIT_TRUE)
}

fn lc_support(setup: &GradingSetup, json: bool) -> Result<u8> {
    let table = support_table(setup)?;
    let rows = table.to_rows();
    if json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        for i in 0..table.len() {
            for e in table.row(i) {
                let c = &e.region.components[0];
                let sigma: Vec<String> = e.sigma.iter().map(|v| (v + 1).to_string()).collect();
                println!("H^{i}: sigma={{{}}} mult={} {} + N{{{}}}", sigma.join(","), e.mult, c.shift, list(&c.generators));
            }
        }
        if rows.is_empty() {
            println!("all local cohomology vanishes");
        }
    }
    Ok(EXIT_TRUE)
}

fn cell_char(v: Verdict) -> char {
    match v {
        Verdict::True => '#',
        Verdict::False => '.',
        Verdict::Incomplete => '?',
    }
}

fn free_i64(p: &GroupElement) -> Vec<i64> {
    p.free().iter().map(|x| i64::try_from(x).expect("box coordinates fit in i64")).collect()
}

fn emit_window(
    setup: &GradingSetup,
    bx: &FreeBox,
    raster: &[(GroupElement, Verdict)],
    svg: Option<&Path>,
    csv: Option<&Path>,
) -> Result<u8> {
    let planar = setup.r() == 2 && setup.group().is_torsion_free();
    if planar {
        let (lo, hi) = (bx.lo(), bx.hi());
        for y in (lo[1]..=hi[1]).rev() {
            let mut line = format!("{y:>4} ");
            for x in lo[0]..=hi[0] {
                let v = raster.iter().find(|(p, _)| free_i64(p) == [x, y]).map(|(_, v)| *v).expect("box point");
                line.push(cell_char(v));
            }
            println!("{line}");
        }
        println!("     x from {} to {}", lo[0], hi[0]);
    } else {
        for (p, v) in raster {
            println!("{p} {v}");
        }
    }
    if let Some(path) = csv {
        let mut out = String::from("degree,verdict\n");
        for (p, v) in raster {
            writeln!(out, "\"{p}\",{v}")?;
        }
        fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = svg {
        if !planar {
            bail!("SVG output needs a torsion-free group of rank 2");
        }
        fs::write(path, svg_grid(bx, raster)).with_context(|| format!("writing {}", path.display()))?;
    }
    let members = raster.iter().filter(|(_, v)| *v == Verdict::True).count();
    let unknown = raster.iter().filter(|(_, v)| *v == Verdict::Incomplete).count();
    println!("{members} of {} degrees regular, {unknown} undecided", raster.len());
    Ok(if unknown > 0 { EXIT_INCOMPLETE } else { EXIT_TRUE })
}

const CELL: i64 = 20;

/// A flat grid of squares, one per box point, `y` increasing upwards; members are filled.
fn svg_grid(bx: &FreeBox, raster: &[(GroupElement, Verdict)]) -> String {
    let (lo, hi) = (bx.lo(), bx.hi());
    let w = (hi[0] - lo[0] + 1) * CELL;
    let h = (hi[1] - lo[1] + 1) * CELL;
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    for (p, v) in raster {
        let f = free_i64(p);
        let x = (f[0] - lo[0]) * CELL;
        let y = (hi[1] - f[1]) * CELL;
        let fill = match v {
            Verdict::True => "#1f4e79",
            Verdict::False => "#ffffff",
            Verdict::Incomplete => "#bbbbbb",
        };
        let _ = writeln!(
            s,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" stroke=\"#888888\"><title>{p} {v}</title></rect>"
        );
    }
    s.push_str("</svg>\n");
    s
}
