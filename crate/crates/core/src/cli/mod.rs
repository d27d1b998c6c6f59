//! The `kacspin` command line: argument grammar, dispatch and output.
//!
//! Exit codes: 0 success, 1 verification failure (the JSON carries a
//! counterexample), 2 parse or usage error, 3 unsupported combination.

pub mod checks;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::{form_signature, invariant_subspace_search, s52_decompose, Module};
use crate::cocycle::CocycleTable;
use crate::diagram::{parse_gcm, realization, validate, Gcm};
use crate::error::{Error, Result};
use crate::exactnum::DenseMatrix;
use crate::liftgroup::{closed_form_exp, max_abs_diff, numeric_expm, scaled_generator_f64, wspin_relations_check, Angle};
use crate::report::SCHEMA;
use crate::rootsys::{real_roots, word_to_simple, RootVec};
use crate::spinreps::{kernel_witness, kernel_witness_pair, transport, transport_all, SpinRep, SpinorSpace};
use crate::weylmod::{Carrier, Level, Sign, VOptions};

use checks::{run_check, Check, CheckOptions, Fault};

#[derive(Parser, Debug)]
#[command(
    name = "kacspin",
    version,
    about = "Exact higher spin representations of k(A) for simply-laced Kac-Moody algebras",
    after_help = "Exit codes: 0 ok, 1 verification failure, 2 parse/usage error, 3 unsupported.\n\
                  KACSPIN_THREADS caps the number of worker threads."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a diagram and print its Cartan matrix.
    Parse(Common),
    /// List positive real roots with their descent words.
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_height: i64,
    },
    /// Build a representation and summarize it.
    Rep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        /// Include dense generator matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Level; all levels when omitted.
        #[arg(long, value_parser = parse_level)]
        level: Option<Level>,
        #[command(flatten)]
        space: SpaceArgs,
        /// Comma-separated suites or `all`: axioms, gamma, cocycle, berman, skew,
        /// master, f-square, split, mu-quartic, lift, wspin, transport, isotropic.
        /// `all` leaves out mu-quartic.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Negative control: flip one sign, `i` or `i:k` (generator i, basis index k).
        #[arg(long, value_parser = parse_fault)]
        inject_sign_flip: Option<Fault>,
        /// Dimension from which Berman relations are checked in factored form only.
        #[arg(long, default_value_t = crate::spinreps::DEFAULT_DENSE_THRESHOLD)]
        dense_threshold: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Root height bound for root-indexed suites.
        #[arg(long)]
        max_height: Option<i64>,
        #[arg(long, default_value_t = crate::analysis::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Commutant, invariant subspaces, S_{5/2} splitting and form signature.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = crate::analysis::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Representation matrices of real roots by Weyl transport.
    Transport {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        /// A single root in simple-root coordinates, e.g. `1,1,0`.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_height: i64,
    },
    /// Closed-form exp(phi X_i).
    Exp {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        /// Generator index, 1-based.
        #[arg(long = "i")]
        index: usize,
        /// Angle: `2pi`, `3/2pi`, `pi/2` or radians.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Also compare with a numerical matrix exponential.
        #[arg(long)]
        numeric: bool,
    },
    /// Relations of the spin-extended Weyl group in the image.
    Wspin {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Two real roots whose rho-images agree up to sign but whose images differ at a higher level.
    Witness {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_height: i64,
    },
    /// Dump matrices.
    Export {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = What::Generators)]
        what: What,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Preset (A3, D4, E10, cycle3, K4, ...), inline DSL
    /// ("rank = 3; edges = 1-2, 2-3") or a path to a DSL file.
    #[arg(long, short)]
    pub diagram: String,
    /// Human-readable summary instead of JSON.
    #[arg(long, conflicts_with = "format")]
    pub pretty: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to a file.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Use the irreducible S_{1/2} instead of the 2^n-dimensional spinor space.
    #[arg(long)]
    pub restricted: bool,
    /// Carrier of the symmetric powers on singular diagrams.
    #[arg(long, value_enum, default_value_t = CarrierArg::FullDual)]
    pub carrier: CarrierArg,
    /// Branch of the level-7/2 constants.
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub branch: SignArg,
    /// Sign of q relative to p at level 7/2.
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub eps: SignArg,
}

#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    #[arg(long, value_parser = parse_level, default_value = "1/2")]
    pub level: Level,
    #[command(flatten)]
    pub space: SpaceArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarrierArg {
    FullDual,
    RootSpan,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    Generators,
    Form,
    Gamma,
    Cartan,
}

fn parse_level(s: &str) -> std::result::Result<Level, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_fault(s: &str) -> std::result::Result<Fault, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl SpaceArgs {
    fn options(&self) -> VOptions {
        let sign = |s: SignArg| if s == SignArg::Plus { Sign::Plus } else { Sign::Minus };
        VOptions {
            carrier: if self.carrier == CarrierArg::FullDual { Carrier::FullDual } else { Carrier::RootSpan },
            branch: sign(self.branch),
            eps: sign(self.eps),
        }
    }

    fn spinor(&self, g: &Gcm) -> Result<SpinorSpace> {
        if self.restricted {
            SpinorSpace::restricted(g)
        } else {
            SpinorSpace::full(g)
        }
    }
}

impl RepArgs {
    fn build(&self, g: &Gcm) -> Result<SpinRep> {
        g.require_simply_laced()?;
        SpinRep::build(g, self.level, self.space.options(), self.space.spinor(g)?)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Validation(_)
        | Error::IndexOutOfRange { .. }
        | Error::Dimension(_)
        | Error::NotPositiveRealRoot(_) => 2,
        Error::Unsupported(_) | Error::Budget { .. } => 3,
        _ => 1,
    }
}

/// Result of one command before formatting.
pub struct Output {
    pub json: Value,
    /// Named matrices for CSV output.
    pub matrices: Vec<(String, DenseMatrix)>,
    pub failed: bool,
}

impl Output {
    fn ok(json: Value) -> Self {
        Output { json, matrices: Vec::new(), failed: false }
    }
}

fn load_diagram(spec: &str) -> Result<(Gcm, String)> {
    let path = std::path::Path::new(spec);
    if !spec.contains('=') && path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return Ok((parse_gcm(&text)?, path.file_stem().map_or("custom".into(), |s| s.to_string_lossy().into_owned())));
    }
    let g = parse_gcm(spec)?;
    let name = if spec.contains('=') { "custom".to_string() } else { spec.trim().to_string() };
    Ok((g, name))
}

fn header(command: &str, diagram: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("diagram".into(), json!(diagram));
    m
}

fn with(mut m: serde_json::Map<String, Value>, v: Value) -> Value {
    if let Value::Object(o) = v {
        m.extend(o);
    }
    Value::Object(m)
}

fn dense(m: &DenseMatrix) -> Value {
    serde_json::to_value(m.to_json()).expect("scalar json")
}

fn parse_root(s: &str, g: &Gcm) -> Result<RootVec> {
    let a: RootVec = s.parse()?;
    if a.len() != g.rank() {
        return Err(Error::Dimension(format!("root {a} has {} coordinates, rank is {}", a.len(), g.rank())));
    }
    Ok(a)
}

fn cmd_parse(c: &Common) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let rz = realization(&g).ok();
    let body = json!({
        "rank": g.rank(),
        "matrix": g.matrix(),
        "simply_laced": g.is_simply_laced(),
        "regular": g.is_regular(),
        "realization_dim": rz.map(|r| r.dim),
        "dsl": g.render().ok(),
        "validation": validate(&g),
    });
    Ok(Output {
        json: with(header("parse", &name), body),
        matrices: vec![("cartan".into(), g.cartan())],
        failed: false,
    })
}

fn cmd_roots(c: &Common, max_height: i64) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    g.require_simply_laced()?;
    let roots: Vec<Value> = real_roots(&g, max_height)
        .iter()
        .map(|a| {
            let (w, i) = word_to_simple(&g, a)?;
            Ok(json!({"root": a.to_string(), "height": a.height(), "word": w.to_string(), "simple": i + 1}))
        })
        .collect::<Result<_>>()?;
    Ok(Output::ok(with(header("roots", &name), json!({"max_height": max_height, "count": roots.len(), "roots": roots}))))
}

fn rep_header(command: &str, name: &str, r: &SpinRep) -> serde_json::Map<String, Value> {
    let mut h = header(command, name);
    h.insert("level".into(), json!(r.level()));
    if r.is_experimental() {
        h.insert("experimental".into(), json!(true));
    }
    h
}

/// Largest dimension printed as dense matrices.
const DENSE_OUTPUT_LIMIT: usize = 4096;

fn check_dense_output(dim: usize) -> Result<()> {
    if dim > DENSE_OUTPUT_LIMIT {
        return Err(Error::Budget { dim, budget: DENSE_OUTPUT_LIMIT });
    }
    Ok(())
}

fn cmd_rep(c: &Common, ra: &RepArgs, matrices: bool) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let r = ra.build(&g)?;
    let mut body = json!({"summary": r.summary()});
    let mut named = Vec::new();
    if matrices || c.format == Some(Format::Csv) {
        check_dense_output(r.dim())?;
        let gens = r.dense_generators();
        if matrices {
            body["generators"] = Value::Array(gens.iter().map(dense).collect());
        }
        named = gens.into_iter().enumerate().map(|(i, m)| (format!("X_{}", i + 1), m)).collect();
    }
    Ok(Output { json: with(rep_header("rep", &name, &r), body), matrices: named, failed: false })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    c: &Common,
    level: Option<Level>,
    space: &SpaceArgs,
    checks: &str,
    fault: Option<Fault>,
    opts: CheckOptions,
) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    g.require_simply_laced()?;
    let explicit = checks.trim() != "all";
    let list: Vec<Check> = if explicit {
        checks.split(',').map(str::parse).collect::<Result<_>>()?
    } else {
        Check::ALL.into_iter().filter(|c| c.in_all()).collect()
    };
    if let Some(f) = fault {
        g.check_index(f.generator)?;
    }
    if level == Some(Level::SevenHalves) && !g.is_regular() {
        return Err(Error::Unsupported("level 7/2 needs a regular Cartan matrix".into()));
    }
    let levels: Vec<Level> = level.map_or(Level::ALL.to_vec(), |l| vec![l]);
    let mut jobs: Vec<(Check, Level)> = Vec::new();
    for &ch in &list {
        if ch.is_levelless() {
            jobs.push((ch, Level::Half));
            continue;
        }
        let ls: Vec<Level> = levels.iter().copied().filter(|&l| ch.applies(&g, l)).collect();
        if explicit && (ls.is_empty() || (level.is_some() && ls.len() < levels.len())) {
            let at = level.map_or("any level".to_string(), |l| format!("level {l}"));
            return Err(Error::Unsupported(format!("check '{ch}' does not apply at {at} on {name}")));
        }
        jobs.extend(ls.into_iter().map(|l| (ch, l)));
    }
    let opts = CheckOptions { restricted: space.restricted, v: space.options(), fault, ..opts };
    let reports = jobs
        .par_iter()
        .map(|&(ch, l)| run_check(&g, &name, ch, l, &opts))
        .collect::<Result<Vec<_>>>()?;
    let failed = reports.iter().any(|r| !r.passed());
    let body = json!({
        "status": if failed { "fail" } else { "pass" },
        "fault_injected": fault.is_some(),
        "reports": reports,
    });
    Ok(Output { json: with(header("verify", &name), body), matrices: Vec::new(), failed })
}

fn cmd_decompose(c: &Common, ra: &RepArgs, budget: usize) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let r = ra.build(&g)?;
    let mut body = json!({"dim": r.dim(), "restricted": r.spinor().is_restricted()});
    let mut failed = false;
    match form_signature(&r, budget) {
        Ok(s) => {
            failed |= !s.agree;
            body["signature"] = json!(s);
        }
        Err(Error::Budget { .. }) => body["signature"] = json!({"skipped": "budget"}),
        Err(e) => return Err(e),
    }
    if r.level() == Level::FiveHalves {
        let s = s52_decompose(&r)?;
        failed |= !s.certified();
        body["s52"] = json!({"certified": s.certified(), "report": s});
    }
    if r.dim() <= budget {
        body["search"] = json!(invariant_subspace_search(&Module::from_rep(&r), budget)?);
    } else {
        body["search"] = json!({"skipped": "budget", "dim": r.dim(), "budget": budget});
    }
    Ok(Output { json: with(rep_header("decompose", &name, &r), body), matrices: Vec::new(), failed })
}

fn cmd_transport(c: &Common, ra: &RepArgs, root: Option<&str>, max_height: i64) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let r = ra.build(&g)?;
    let h = rep_header("transport", &name, &r);
    if let Some(s) = root {
        let a = parse_root(s, &g)?;
        let t = transport(&r, &a)?;
        let m = t.operator.materialize();
        let body = json!({
            "root": a.to_string(),
            "word": t.word.to_string(),
            "simple": t.index + 1,
            "sign": t.sign,
            "matches": t.matches,
            "operator": t.operator.to_json(),
        });
        return Ok(Output { json: with(h, body), matrices: vec![(format!("X_{a}"), m)], failed: !t.matches });
    }
    let ts = transport_all(&r, max_height)?;
    let failed = ts.iter().any(|t| !t.matches);
    let list: Vec<Value> = ts
        .iter()
        .map(|t| json!({"root": t.root.to_string(), "word": t.word.to_string(), "simple": t.index + 1, "sign": t.sign, "matches": t.matches}))
        .collect();
    Ok(Output { json: with(h, json!({"max_height": max_height, "count": list.len(), "roots": list})), matrices: Vec::new(), failed })
}

/// `Id`, `−Id` or `s·Id` (U+2212 for the minus sign).
pub fn describe_scalar_identity(s: &crate::exactnum::Scalar) -> String {
    if s.is_one() {
        "Id".into()
    } else if (-s).is_one() {
        "\u{2212}Id".into()
    } else {
        format!("{s}\u{b7}Id")
    }
}

fn cmd_exp(c: &Common, ra: &RepArgs, index: usize, phi: &str, numeric: bool) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let r = ra.build(&g)?;
    if index == 0 {
        return Err(Error::IndexOutOfRange { index, n: g.rank() });
    }
    g.check_index(index - 1)?;
    let angle: Angle = phi.parse()?;
    let e = closed_form_exp(&r, index - 1, &angle)?;
    let result = e.as_scalar_identity().map_or_else(|| "matrix".to_string(), |s| describe_scalar_identity(&s));
    let mut body = json!({"generator": index, "phi": angle.to_string(), "exact": e.exact.is_some(), "result": result});
    let mut matrices = Vec::new();
    if let Some(k) = &e.exact {
        if e.as_scalar_identity().is_none() {
            body["matrix"] = k.to_json();
        }
        if c.format == Some(Format::Csv) {
            check_dense_output(r.dim())?;
            matrices.push(("exp".to_string(), k.materialize()));
        }
    } else {
        check_dense_output(r.dim())?;
        let f = e.to_f64();
        body["float"] = json!(f.row_iter().map(|row| row.iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>());
    }
    if numeric {
        if r.dim() > crate::analysis::DEFAULT_BUDGET {
            return Err(Error::Budget { dim: r.dim(), budget: crate::analysis::DEFAULT_BUDGET });
        }
        let n = numeric_expm(&scaled_generator_f64(&r, index - 1, angle.radians())?)?;
        body["expm_max_diff"] = json!(max_abs_diff(&e.to_f64(), &n));
    }
    Ok(Output { json: with(rep_header("exp", &name, &r), body), matrices, failed: false })
}

fn cmd_wspin(c: &Common, ra: &RepArgs) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let r = ra.build(&g)?;
    let w = wspin_relations_check(&r)?;
    let failed = !w.failures.is_empty();
    let body = json!({"status": if failed { "fail" } else { "pass" }, "report": w});
    Ok(Output { json: with(rep_header("wspin", &name, &r), body), matrices: Vec::new(), failed })
}

fn cmd_witness(c: &Common, ra: &RepArgs, alpha: Option<&str>, beta: Option<&str>, max_height: i64) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let r = ra.build(&g)?;
    let w = match (alpha, beta) {
        (Some(a), Some(b)) => kernel_witness_pair(&r, &parse_root(a, &g)?, &parse_root(b, &g)?)?,
        (None, None) => kernel_witness(&r, max_height)?,
        _ => return Err(Error::Parse("--alpha and --beta go together".into())),
    };
    let body = json!({
        "alpha": w.alpha.to_string(),
        "beta": w.beta.to_string(),
        "sign": w.sign,
        "rho_agree": w.rho_agree,
        "sigma_differs": !w.sigma_difference.is_zero(),
        "valid": w.is_valid(),
        "sigma_difference": w.sigma_difference.to_json(),
    });
    Ok(Output { json: with(rep_header("witness", &name, &r), body), matrices: Vec::new(), failed: !w.is_valid() })
}

fn cmd_export(c: &Common, ra: &RepArgs, what: What) -> Result<Output> {
    let (g, name) = load_diagram(&c.diagram)?;
    let mats: Vec<(String, DenseMatrix)> = match what {
        What::Cartan => vec![("cartan".into(), g.cartan())],
        What::Gamma => {
            let t = CocycleTable::new(&g)?;
            (0..g.rank()).map(|i| (format!("Gamma_{}", i + 1), t.gamma_simple(i).materialize())).collect()
        }
        What::Generators => {
            let r = ra.build(&g)?;
            check_dense_output(r.dim())?;
            r.dense_generators().into_iter().enumerate().map(|(i, m)| (format!("X_{}", i + 1), m)).collect()
        }
        What::Form => {
            let r = ra.build(&g)?;
            check_dense_output(r.dim())?;
            vec![("form".into(), r.form().materialize())]
        }
    };
    let what_s = format!("{what:?}").to_lowercase();
    let list: Vec<Value> = mats.iter().map(|(n, m)| json!({"name": n, "rows": dense(m)})).collect();
    let mut h = header("export", &name);
    if matches!(what, What::Generators | What::Form) {
        h.insert("level".into(), json!(ra.level));
    }
    Ok(Output { json: with(h, json!({"what": what_s, "matrices": list})), matrices: mats, failed: false })
}

fn csv_field(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

pub fn to_csv(mats: &[(String, DenseMatrix)]) -> String {
    let mut out = String::new();
    for (k, (name, m)) in mats.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# {name} {}x{}\n", m.rows(), m.cols()));
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(|x| csv_field(x.to_string())).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 160 {
        let head: String = s.chars().take(157).collect();
        format!("{head}...")
    } else {
        s
    }
}

/// Short text rendering: one `key: value` line per top-level field, and one
/// line per report for `verify`.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(m) = v else { return compact(v) + "\n" };
    if let Some(r) = m.get("result").and_then(Value::as_str) {
        out.push_str(r);
        out.push('\n');
    }
    for (k, x) in m {
        match (k.as_str(), x) {
            ("schema" | "result", _) => {}
            ("reports", Value::Array(rs)) => {
                for r in rs {
                    let level = r.get("level").and_then(Value::as_str).map_or(String::new(), |l| format!(" @ {l}"));
                    let status = r["status"].as_str().unwrap_or("?").to_uppercase();
                    out.push_str(&format!("  [{status}] {}{level}\n", r["check"].as_str().unwrap_or("?")));
                    if let Some(Value::Array(cs)) = r.get("counterexample") {
                        for c in cs.iter().take(3) {
                            out.push_str(&format!("      {} {}\n", c["identity"].as_str().unwrap_or(""), compact(&c["operands"])));
                        }
                    }
                }
            }
            _ => out.push_str(&format!("{k}: {}\n", compact(x))),
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<(Output, Common)> {
    let out = match &cli.command {
        Command::Parse(c) => (cmd_parse(c)?, c.clone()),
        Command::Roots { common, max_height } => (cmd_roots(common, *max_height)?, common.clone()),
        Command::Rep { common, rep, matrices } => (cmd_rep(common, rep, *matrices)?, common.clone()),
        Command::Verify { common, level, space, checks, inject_sign_flip, dense_threshold, samples, seed, max_height, budget } => {
            let opts = CheckOptions {
                dense_threshold: *dense_threshold,
                samples: *samples,
                seed: *seed,
                max_height: *max_height,
                budget: *budget,
                ..CheckOptions::default()
            };
            (cmd_verify(common, *level, space, checks, *inject_sign_flip, opts)?, common.clone())
        }
        Command::Decompose { common, rep, budget } => (cmd_decompose(common, rep, *budget)?, common.clone()),
        Command::Transport { common, rep, root, max_height } => {
            (cmd_transport(common, rep, root.as_deref(), *max_height)?, common.clone())
        }
        Command::Exp { common, rep, index, phi, numeric } => (cmd_exp(common, rep, *index, phi, *numeric)?, common.clone()),
        Command::Wspin { common, rep } => (cmd_wspin(common, rep)?, common.clone()),
        Command::Witness { common, rep, alpha, beta, max_height } => {
            (cmd_witness(common, rep, alpha.as_deref(), beta.as_deref(), *max_height)?, common.clone())
        }
        Command::Export { common, rep, what } => (cmd_export(common, rep, *what)?, common.clone()),
    };
    Ok(out)
}

fn render(o: &Output, c: &Common) -> Result<String> {
    if c.pretty {
        return Ok(to_pretty(&o.json));
    }
    match c.format.unwrap_or(Format::Json) {
        Format::Json => Ok(serde_json::to_string(&o.json).expect("json") + "\n"),
        Format::Csv if o.matrices.is_empty() => Err(Error::Parse("this command has no matrix output for --format csv".into())),
        Format::Csv => Ok(to_csv(&o.matrices)),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("KACSPIN_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        // a second call in the same process (tests) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the CLI on `argv`, writing normal output to `stdout` and
/// diagnostics to `stderr`; returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    let (code, text, target) = match execute(&cli) {
        Ok((o, c)) => match render(&o, &c) {
            Ok(t) => (if o.failed { 1 } else { 0 }, t, c.out),
            Err(e) => (exit_code(&e), error_json(&e), None),
        },
        Err(e) => {
            let _ = writeln!(stderr, "kacspin: {e}");
            (exit_code(&e), error_json(&e), None)
        }
    };
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                let _ = writeln!(stderr, "kacspin: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

fn error_json(e: &Error) -> String {
    let kind = match exit_code(e) {
        2 => "usage",
        3 => "unsupported",
        _ => "failure",
    };
    serde_json::to_string(&json!({"schema": SCHEMA, "error": {"kind": kind, "message": e.to_string()}})).expect("json") + "\n"
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
