//! Argument parsing and dispatch for the `supercoh` binary.
//!
//! [`run`] never touches the process: it returns the text for standard
//! output and standard error together with the exit status, so the binary
//! and the tests share one code path.

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use supercoh_core::brauer::{
    commutativity_certificate, element_order, BrauerElement, BrauerGroup, Variant, DEFAULT_ORDER_CAP,
};
use supercoh_core::dsv::{swap_map, Dsv};
use supercoh_core::ops::{bockstein, cup, cup_i, reduce_mod, sq};
use supercoh_core::simplicial::{cohomology, Cochain, CohomologyClass, SimplicialComplex};
use supercoh_core::stable2type::{catalog, enumerate_symmetric_structures, equivalent, ALIASES};
use supercoh_core::superline::{classification_data, iso_class_group, Flavor, SuperLine};
use supercoh_core::DEFAULT_SEARCH_CAP;

use crate::error::{CliError, CliResult};
use crate::formats::*;
use crate::verify;

pub const CAP_ENV: &str = "SUPERCOH_CAP";

#[derive(Debug, Parser)]
#[command(name = "supercoh", version, about = "Exact cochain-level cohomology and graded Brauer groups")]
pub struct Cli {
    /// Print a JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology group H^deg(X; Z/mod) with representatives (mod 0 is Z).
    Cohomology(CohomologyArgs),
    /// Cochain operations: cup, cup-i, Steenrod squares, Bockstein, reduction.
    Operations(OperationsArgs),
    /// Brauer group computations for the ku or ko variant.
    Brauer(BrauerArgs),
    /// Order of a Brauer group element.
    Order(OrderArgs),
    /// Abstract group structure of the Brauer group.
    Group(GroupArgs),
    /// Subgroup generated by twist terms.
    Twist(GroupArgs),
    /// Differential super vector spaces and their maps.
    Dsv(DsvArgs),
    /// Superline bundles.
    Superline(SuperlineArgs),
    /// Symmetric structures on (pi0, pi1) data.
    Classify(ClassifyArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ComplexArg {
    /// Complex as a JSON file, inline JSON, or `@name` from the built-in corpus.
    #[arg(long)]
    pub complex: String,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub complex: ComplexArg,
    #[arg(long)]
    pub deg: usize,
    #[arg(long = "mod", default_value_t = 0)]
    pub modulus: u64,
    /// Also print the generator representatives.
    #[arg(long)]
    pub generators: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CochainOp {
    Cup,
    CupI,
    Sq,
    Bockstein,
    Reduce,
    Coboundary,
    Class,
}

#[derive(Debug, Args)]
pub struct OperationsArgs {
    #[command(flatten)]
    pub complex: ComplexArg,
    #[arg(long, value_enum)]
    pub op: CochainOp,
    /// Cochain: JSON file, inline JSON, or `gen:DEG:MOD:INDEX`.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: Option<String>,
    /// Index of cup-i, or the square Sq^k.
    #[arg(long, short)]
    pub k: Option<usize>,
    /// Target modulus of `reduce`.
    #[arg(long)]
    pub to: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BrauerOp {
    Group,
    Twist,
    Components,
    Add,
    Negate,
    Equal,
    Commute,
}

#[derive(Debug, Args)]
pub struct BrauerArgs {
    #[command(flatten)]
    pub complex: ComplexArg,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Variant,
    #[arg(long, value_enum)]
    pub op: BrauerOp,
    /// Element: JSON file or inline JSON with `a`, `b`, `c` values or `coords`.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub complex: ComplexArg,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Variant,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[command(flatten)]
    pub complex: ComplexArg,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Variant,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DsvOp {
    Homology,
    Euler,
    Invertible,
    Sum,
    Tensor,
    Swap,
    QuasiIso,
    Inverse,
    Epsilon,
}

#[derive(Debug, Args)]
pub struct DsvArgs {
    #[arg(long, value_enum)]
    pub op: DsvOp,
    /// DSV: JSON file or inline JSON `{field, dim0, dim1, d0, d1}`.
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    /// Map: JSON `{source, target, f0, f1}`.
    #[arg(long)]
    pub map: Option<String>,
    /// Bounded chain complex: JSON `{field, lowest, dims, boundaries}`.
    #[arg(long)]
    pub chain: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuperlineOp {
    Group,
    Classification,
    Tensor,
    Inverse,
    Sign,
    Iso,
}

#[derive(Debug, Args)]
pub struct SuperlineArgs {
    #[arg(long)]
    pub complex: Option<String>,
    #[arg(long, value_parser = parse_flavor, default_value = "real")]
    pub flavor: Flavor,
    #[arg(long, value_enum)]
    pub op: SuperlineOp,
    /// Superline: JSON `{flavor, parity, line_class}`, or `odd` / `trivial`.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub component: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ClassifyOp {
    Enumerate,
    Catalog,
    Equivalent,
    Compatible,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_enum, default_value = "enumerate")]
    pub op: ClassifyOp,
    #[arg(long)]
    pub pi0: Option<String>,
    #[arg(long)]
    pub pi1: Option<String>,
    /// Data: JSON `{pi0, pi1, q}` or a catalog name.
    #[arg(long)]
    pub d1: Option<String>,
    #[arg(long)]
    pub d2: Option<String>,
    /// Map on pi0 generators as a JSON matrix.
    #[arg(long)]
    pub phi0: Option<String>,
    #[arg(long)]
    pub phi1: Option<String>,
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = verify::Config::default().seed)]
    pub seed: u64,
    /// Sample count for the randomized suites.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub cap: Option<u64>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: supercoh_core::Error| e.to_string())
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: supercoh_core::Error| e.to_string())
}

/// Text and JSON forms of one report.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Domain-level failure that still produces a report (failed suites).
    pub failed: bool,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json, failed: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("serializable")
            } else {
                report.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: if report.failed { 1 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Flag, then `SUPERCOH_CAP`, then the default.
pub fn resolve_cap(flag: Option<u64>, default: u64) -> CliResult<u64> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("{CAP_ENV} must be an integer, got `{s}`"))),
        Err(_) => Ok(default),
    }
}

/// Inline JSON when the argument starts with `{` or `[`, a file otherwise.
pub fn load_json(arg: &str) -> CliResult<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("cannot read `{arg}`: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn load_complex(arg: &str) -> CliResult<Arc<SimplicialComplex>> {
    match arg.strip_prefix('@') {
        Some(name) => corpus_complex(name),
        None => complex_from_value(&load_json(arg)?),
    }
}

fn load_cochain(x: &Arc<SimplicialComplex>, arg: &str) -> CliResult<Cochain> {
    if let Some(spec) = arg.strip_prefix("gen:") {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || CliError::Parse(format!("expected gen:DEG:MOD:INDEX, got `{arg}`"));
        let [deg, modulus, index] = parts.as_slice() else { return Err(bad()) };
        let deg: usize = deg.parse().map_err(|_| bad())?;
        let modulus: u64 = modulus.parse().map_err(|_| bad())?;
        let index: usize = index.parse().map_err(|_| bad())?;
        let h = cohomology(x, deg, modulus)?;
        return h
            .generators()
            .get(index)
            .map(|g| g.cochain().clone())
            .ok_or_else(|| CliError::Domain(format!("H^{deg} has {} generators", h.generators().len())));
    }
    cochain_from_json(x, &load_json(arg)?)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Parse(format!("missing --{flag}")))
}

fn execute(command: &Command) -> CliResult<Report> {
    match command {
        Command::Cohomology(a) => run_cohomology(a),
        Command::Operations(a) => run_operations(a),
        Command::Brauer(a) => run_brauer(a),
        Command::Order(a) => run_order(a),
        Command::Group(a) => run_group(a, false),
        Command::Twist(a) => run_group(a, true),
        Command::Dsv(a) => run_dsv(a),
        Command::Superline(a) => run_superline(a),
        Command::Classify(a) => run_classify(a),
        Command::Verify(a) => run_verify(a),
    }
}

fn values_text(xs: &[BigInt]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn run_cohomology(a: &CohomologyArgs) -> CliResult<Report> {
    let x = load_complex(&a.complex.complex)?;
    let h = cohomology(&x, a.deg, a.modulus)?;
    let mut text = h.presentation().to_string();
    if a.generators {
        for (i, g) in h.generators().iter().enumerate() {
            text.push_str(&format!("\ng{i} (order {}): {}", h.orders()[i], values_text(g.cochain().values())));
        }
    }
    let json = json!({
        "degree": a.deg,
        "modulus": a.modulus,
        "group": h.presentation().to_string(),
        "orders": ints_to_json(h.orders()),
        "generators": h.generators().iter().map(|g| ints_to_json(g.cochain().values())).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json))
}

/// Cochain plus its class coordinates when it is a cocycle.
fn cochain_report(label: &str, c: &Cochain) -> CliResult<Report> {
    let mut text = format!("{label}: degree {} mod {} values {}", c.degree(), c.modulus(), values_text(c.values()));
    let mut json = json!({ "result": cochain_to_json(c) });
    if c.is_cocycle() {
        let h = cohomology(c.complex(), c.degree(), c.modulus())?;
        let coords = h.coordinates(c)?;
        text.push_str(&format!("\nclass: {} in {}", values_text(&coords), h.presentation()));
        json["class"] = json!({
            "group": h.presentation().to_string(),
            "coordinates": ints_to_json(&coords),
        });
    } else {
        text.push_str("\nclass: not a cocycle");
    }
    Ok(Report::new(text, json))
}

fn run_operations(a: &OperationsArgs) -> CliResult<Report> {
    let x = load_complex(&a.complex.complex)?;
    let c = load_cochain(&x, &a.x)?;
    let other = || -> CliResult<Cochain> { load_cochain(&x, required(&a.y, "y")?) };
    let k = || a.k.ok_or_else(|| CliError::Parse("missing --k".into()));
    let (label, result) = match a.op {
        CochainOp::Cup => ("x ∪ y", cup(&c, &other()?)?),
        CochainOp::CupI => ("x ∪_k y", cup_i(k()?, &c, &other()?)?),
        CochainOp::Sq => ("Sq^k x", sq(k()?, &CohomologyClass::new(c)?)?.into_cochain()),
        CochainOp::Bockstein => ("β x", bockstein(&CohomologyClass::new(c)?)?.into_cochain()),
        CochainOp::Reduce => {
            let n = a.to.ok_or_else(|| CliError::Parse("missing --to".into()))?;
            ("ρ x", reduce_mod(&c, n)?)
        }
        CochainOp::Coboundary => ("δ x", c.coboundary()),
        CochainOp::Class => ("x", c),
    };
    cochain_report(label, &result)
}

fn element_report(label: &str, g: &BrauerGroup, e: &BrauerElement) -> CliResult<Report> {
    let (a, b) = g.quotient_coordinates(e)?;
    let text = format!(
        "{label}: a {} b {} c {}\nclasses: a {} b {}",
        values_text(e.a().values()),
        values_text(e.b().values()),
        values_text(e.c().values()),
        values_text(&a),
        values_text(&b)
    );
    let json = json!({
        "element": brauer_to_json(e),
        "a_coordinates": ints_to_json(&a),
        "b_coordinates": ints_to_json(&b),
    });
    Ok(Report::new(text, json))
}

fn run_brauer(a: &BrauerArgs) -> CliResult<Report> {
    let x = load_complex(&a.complex.complex)?;
    let g = BrauerGroup::new(&x, a.variant)?;
    let elem = |arg: &Option<String>, flag: &str| -> CliResult<BrauerElement> {
        brauer_from_json(&g, &load_json(required(arg, flag)?)?)
    };
    match a.op {
        BrauerOp::Group => group_report(&g, false),
        BrauerOp::Twist => group_report(&g, true),
        BrauerOp::Components => {
            let names = ["a", "b", "c"];
            let parts: Vec<(String, String)> = g
                .components()
                .iter()
                .zip(names)
                .map(|(h, n)| (n.to_string(), format!("H^{}(X; {})", h.degree(), modulus_name(h.modulus()))))
                .collect();
            let groups: Vec<String> = g.components().iter().map(|h| h.presentation().to_string()).collect();
            let text = parts
                .iter()
                .zip(&groups)
                .map(|((n, slot), grp)| format!("{n}: {slot} = {grp}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "variant": a.variant.to_string(),
                "components": parts.iter().zip(&groups).map(|((n, slot), grp)| json!({"slot": n, "group": slot, "value": grp})).collect::<Vec<_>>(),
            });
            Ok(Report::new(text, json))
        }
        BrauerOp::Add => element_report("x ⊞ y", &g, &elem(&a.x, "x")?.add(&elem(&a.y, "y")?)?),
        BrauerOp::Negate => element_report("⊟ x", &g, &elem(&a.x, "x")?.negate()),
        BrauerOp::Equal => {
            let same = elem(&a.x, "x")?.equals(&elem(&a.y, "y")?)?;
            Ok(Report::new(same.to_string(), json!({ "equal": same })))
        }
        BrauerOp::Commute => {
            let (p, q) = (elem(&a.x, "x")?, elem(&a.y, "y")?);
            let cert = commutativity_certificate(&p, &q)?;
            let ok = cert.verify(&p, &q)?;
            let text = format!("witness: {}\nverified: {ok}", values_text(cert.witness.values()));
            Ok(Report { failed: !ok, ..Report::new(text, json!({ "witness": cochain_to_json(&cert.witness), "verified": ok })) })
        }
    }
}

fn modulus_name(n: u64) -> String {
    if n == 0 { "Z".into() } else { format!("Z/{n}") }
}

fn group_report(g: &BrauerGroup, twist: bool) -> CliResult<Report> {
    let group = if twist { g.twist_subgroup()? } else { g.abstract_group()? };
    let json = json!({
        "variant": g.variant().to_string(),
        "kind": if twist { "twist" } else { "group" },
        "group": group.to_string(),
        "free_rank": group.free_rank(),
        "invariant_factors": ints_to_json(group.invariant_factors()),
    });
    Ok(Report::new(group.to_string(), json))
}

fn run_group(a: &GroupArgs, twist: bool) -> CliResult<Report> {
    let x = load_complex(&a.complex.complex)?;
    group_report(&BrauerGroup::new(&x, a.variant)?, twist)
}

fn run_order(a: &OrderArgs) -> CliResult<Report> {
    let cap = resolve_cap(a.cap, DEFAULT_ORDER_CAP)?;
    let x = load_complex(&a.complex.complex)?;
    let g = BrauerGroup::new(&x, a.variant)?;
    let e = brauer_from_json(&g, &load_json(&a.x)?)?;
    let order = element_order(&e, cap)?;
    let json = json!({ "order": order.to_string(), "cap": cap });
    Ok(Report::new(order.to_string(), json))
}

fn load_dsv(arg: &Option<String>, flag: &str) -> CliResult<Dsv> {
    dsv_from_json(&load_json(required(arg, flag)?)?)
}

fn dsv_summary(v: &Dsv) -> (String, Value) {
    let (h0, h1) = v.homology();
    let text = format!("dims ({}, {}) homology ({h0}, {h1})", v.dim0(), v.dim1());
    (text, json!({ "dsv": dsv_to_json(v), "homology": [h0, h1] }))
}

fn run_dsv(a: &DsvArgs) -> CliResult<Report> {
    let report = match a.op {
        DsvOp::Homology => {
            let (text, json) = dsv_summary(&load_dsv(&a.v, "v")?);
            Report::new(text, json)
        }
        DsvOp::Euler => {
            let chi = load_dsv(&a.v, "v")?.euler_char();
            Report::new(chi.to_string(), json!({ "euler_char": chi }))
        }
        DsvOp::Invertible => {
            let v = load_dsv(&a.v, "v")?;
            let inv = v.is_invertible();
            Report::new(inv.to_string(), json!({ "invertible": inv, "unit_virtual_dim": v.unit_virtual_dim() }))
        }
        DsvOp::Sum | DsvOp::Tensor => {
            let (v, w) = (load_dsv(&a.v, "v")?, load_dsv(&a.w, "w")?);
            let out = if matches!(a.op, DsvOp::Sum) { v.direct_sum(&w)? } else { v.tensor(&w)? };
            let (text, json) = dsv_summary(&out);
            Report::new(text, json)
        }
        DsvOp::Swap => {
            let (v, w) = (load_dsv(&a.v, "v")?, load_dsv(&a.w, "w")?);
            let s = swap_map(&v, &w)?;
            let scalar = s.as_scalar();
            let text = match &scalar {
                Some(c) => format!("swap is multiplication by {c}"),
                None => format!("swap: f0 {}x{}, f1 {}x{}", s.f0().rows(), s.f0().cols(), s.f1().rows(), s.f1().cols()),
            };
            Report::new(text, json!({ "map": dsv_map_to_json(&s), "scalar": scalar.as_ref().map(rational_to_json) }))
        }
        DsvOp::QuasiIso => {
            let m = dsv_map_from_json(&load_json(required(&a.map, "map")?)?)?;
            let q = m.is_quasi_iso();
            Report::new(q.to_string(), json!({ "quasi_iso": q }))
        }
        DsvOp::Inverse => {
            let m = dsv_map_from_json(&load_json(required(&a.map, "map")?)?)?;
            match m.homotopy_inverse() {
                Some(eq) => Report::new(
                    "homotopy inverse found",
                    json!({
                        "inverse": dsv_map_to_json(&eq.inverse),
                        "homotopy_on_target": [matrix_to_json(&eq.on_target.k0), matrix_to_json(&eq.on_target.k1)],
                        "homotopy_on_source": [matrix_to_json(&eq.on_source.k0), matrix_to_json(&eq.on_source.k1)],
                    }),
                ),
                None => Report::new("no homotopy inverse", json!({ "inverse": null })),
            }
        }
        DsvOp::Epsilon => {
            let e = chain_from_json(&load_json(required(&a.chain, "chain")?)?)?;
            let v = e.epsilon();
            let (text, mut json) = dsv_summary(&v);
            json["euler_char"] = json!(e.euler_char());
            json["chain_homology"] = json!(e.homology());
            Report::new(format!("{text} euler {}", e.euler_char()), json)
        }
    };
    Ok(report)
}

fn load_superline(arg: &str, flavor: Flavor, base: Option<&Arc<SimplicialComplex>>) -> CliResult<SuperLine> {
    match (arg, base) {
        ("odd", Some(x)) => Ok(SuperLine::odd(flavor, x.clone())),
        ("trivial", Some(x)) => Ok(SuperLine::trivial(flavor, x.clone())),
        ("odd" | "trivial", None) => Err(CliError::Parse(format!("`{arg}` needs --complex"))),
        _ => superline_from_json(base, &load_json(arg)?),
    }
}

fn run_superline(a: &SuperlineArgs) -> CliResult<Report> {
    let base = a.complex.as_deref().map(load_complex).transpose()?;
    let line = |arg: &Option<String>, flag: &str| load_superline(required(arg, flag)?, a.flavor, base.as_ref());
    match a.op {
        SuperlineOp::Group => {
            let x = base.as_ref().ok_or_else(|| CliError::Parse("missing --complex".into()))?;
            let g = iso_class_group(x, a.flavor)?;
            Ok(Report::new(g.to_string(), json!({ "flavor": a.flavor.to_string(), "group": g.to_string() })))
        }
        SuperlineOp::Classification => {
            let d = classification_data(a.flavor);
            let text = format!("pi0 {} pi1 {} q {:?}", d.pi0(), d.pi1(), d.q());
            Ok(Report::new(text, stable2type_to_json(&d)))
        }
        SuperlineOp::Tensor => {
            let t = line(&a.x, "x")?.tensor(&line(&a.y, "y")?)?;
            Ok(Report::new(superline_text(&t), superline_to_json(&t)))
        }
        SuperlineOp::Inverse => {
            let t = line(&a.x, "x")?.inverse();
            Ok(Report::new(superline_text(&t), superline_to_json(&t)))
        }
        SuperlineOp::Sign => {
            let s = line(&a.x, "x")?.symmetry_sign(&line(&a.y, "y")?, a.component)?;
            Ok(Report::new(s.to_string(), json!({ "sign": s, "component": a.component })))
        }
        SuperlineOp::Iso => {
            let same = line(&a.x, "x")?.is_isomorphic(&line(&a.y, "y")?)?;
            Ok(Report::new(same.to_string(), json!({ "isomorphic": same })))
        }
    }
}

fn superline_text(l: &SuperLine) -> String {
    let parity: Vec<&str> = l.parity().iter().map(|&p| if p { "odd" } else { "even" }).collect();
    format!("{} superline, parity [{}], class {}", l.flavor(), parity.join(", "), values_text(l.line_class().cochain().values()))
}

fn load_data(arg: &str) -> CliResult<supercoh_core::stable2type::Stable2TypeData> {
    let name = ALIASES.iter().find(|(alias, _)| *alias == arg).map_or(arg, |(_, n)| n);
    if let Some((_, d)) = catalog().into_iter().find(|(n, _)| *n == name) {
        return Ok(d);
    }
    stable2type_from_json(&load_json(arg)?)
}

fn int_matrix(arg: &Option<String>, flag: &str) -> CliResult<Vec<Vec<i64>>> {
    let v = load_json(required(arg, flag)?)?;
    serde_json::from_value(v).map_err(|e| CliError::Parse(format!("--{flag}: {e}")))
}

fn run_classify(a: &ClassifyArgs) -> CliResult<Report> {
    let cap = resolve_cap(a.cap, DEFAULT_SEARCH_CAP)?;
    match a.op {
        ClassifyOp::Enumerate => {
            let pi0 = group_from_json(&Value::String(required(&a.pi0, "pi0")?.into()))?;
            let pi1 = group_from_json(&Value::String(required(&a.pi1, "pi1")?.into()))?;
            let all = enumerate_symmetric_structures(&pi0, &pi1, cap)?;
            let mut text = format!("{} structures on ({pi0}, {pi1})", all.len());
            for d in &all {
                text.push_str(&format!("\nq {:?}{}", d.q(), if d.is_trivial() { " (split)" } else { "" }));
            }
            let json = json!({
                "pi0": pi0.to_string(),
                "pi1": pi1.to_string(),
                "count": all.len(),
                "structures": all.iter().map(stable2type_to_json).collect::<Vec<_>>(),
            });
            Ok(Report::new(text, json))
        }
        ClassifyOp::Catalog => {
            let entries = catalog();
            let text = entries
                .iter()
                .map(|(n, d)| format!("{n}: pi0 {} pi1 {} q {:?}", d.pi0(), d.pi1(), d.q()))
                .collect::<Vec<_>>()
                .join("\n");
            let json = Value::Array(
                entries.iter().map(|(n, d)| json!({ "name": n, "data": stable2type_to_json(d) })).collect(),
            );
            Ok(Report::new(text, json))
        }
        ClassifyOp::Equivalent => {
            let (d1, d2) = (load_data(required(&a.d1, "d1")?)?, load_data(required(&a.d2, "d2")?)?);
            let same = equivalent(&d1, &d2, cap)?;
            Ok(Report::new(same.to_string(), json!({ "equivalent": same })))
        }
        ClassifyOp::Compatible => {
            let (d1, d2) = (load_data(required(&a.d1, "d1")?)?, load_data(required(&a.d2, "d2")?)?);
            let ok = d1.is_compatible(&d2, &int_matrix(&a.phi0, "phi0")?, &int_matrix(&a.phi1, "phi1")?)?;
            Ok(Report::new(ok.to_string(), json!({ "compatible": ok })))
        }
    }
}

fn run_verify(a: &VerifyArgs) -> CliResult<Report> {
    let config = verify::Config { seed: a.seed, samples: a.samples, cap: resolve_cap(a.cap, DEFAULT_SEARCH_CAP)? };
    let reports = if a.suite == "all" {
        verify::run_all(&config)
    } else {
        let r = verify::run_suite(&a.suite, &config).ok_or_else(|| {
            CliError::Parse(format!("unknown suite `{}` (known: all, {})", a.suite, verify::SUITES.join(", ")))
        })?;
        vec![r]
    };
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
    let mut text = format!("{:<width$}  {:>7}  result", "suite", "checks");
    for r in &reports {
        text.push_str(&format!("\n{:<width$}  {:>7}  {}", r.name, r.checks, if r.passed() { "pass" } else { "FAIL" }));
        for f in &r.failures {
            text.push_str(&format!("\n    {f}"));
        }
    }
    let failed = reports.iter().any(|r| !r.passed());
    let json = Value::Array(
        reports
            .iter()
            .map(|r| json!({ "suite": r.name, "checks": r.checks, "passed": r.passed(), "failures": r.failures }))
            .collect(),
    );
    Ok(Report { failed, ..Report::new(text, json) })
}
