use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperknot::dahajones::{compute_jd_with_word, gamma_word, gamma_word_alt, jones_specialize};
use hyperknot::golden::{self, JdSource, SuiteReport, SUITES};
use hyperknot::hyperlift::{
    constraints_from_json, convention_change, e6_differentials, emit_diagram, hyper_evaluations, lift_with, Direction,
    HyperPoly, LiftOptions,
};
use hyperknot::qtcoeff::Weight;
use hyperknot::rootsys::{CartanType, RootSystem};
use hyperknot::singularity::{
    milnor_number, miniversal_monomials, parse_germ_with, spectra_adjacent, spectrum, verify_adjacency_tree,
    AdjacencyTree, SpectrumTable,
};
use hyperknot::{Error, Result};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hyperknot", version, about = "DAHA-Jones polynomials, E6 hyperpolynomials and singularity spectra")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// DAHA-Jones polynomial of a torus knot.
    Jd(JdArgs),
    /// Positive E6 hyperpolynomial lift.
    Hyper(HyperArgs),
    /// Spectrum and Milnor number of a plane-curve germ.
    Spectrum(SpectrumArgs),
    /// Spectral semicontinuity over an adjacency tree, or for one pair.
    Adjacency(AdjacencyArgs),
    /// Compare computations with the bundled golden data.
    VerifyGolden(VerifyArgs),
    /// Differential diagram of an E6 hyperpolynomial in QG grading.
    EmitDiagram(DiagramArgs),
    /// Root system data, or the bundled data files with checksums.
    Describe(DescribeArgs),
}

#[derive(Args)]
struct JdArgs {
    /// Cartan type: A, D or E6.
    #[arg(long = "type")]
    ty: String,
    /// Rank (defaults to 6 for E6).
    #[arg(long)]
    rank: Option<usize>,
    /// Index of the fundamental weight.
    #[arg(long, default_value_t = 1)]
    weight: usize,
    /// Knot `r,s`.
    #[arg(long, value_parser = parse_knot)]
    knot: (i64, i64),
    /// Use the second tau-word realization.
    #[arg(long)]
    alt_word: bool,
    /// Print the `t = q` specialization.
    #[arg(long)]
    jones: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Daha,
    Qg,
    Dgr,
}

#[derive(Args)]
struct SourceArgs {
    /// Take the DAHA-Jones inputs from the bundled golden data (default).
    #[arg(long, conflicts_with = "from_engine")]
    from_golden: bool,
    /// Compute the DAHA-Jones inputs.
    #[arg(long)]
    from_engine: bool,
}

impl SourceArgs {
    fn source(&self) -> JdSource {
        if self.from_engine {
            JdSource::Engine
        } else {
            JdSource::Golden
        }
    }
}

#[derive(Args)]
struct HyperArgs {
    /// Knot `r,s`.
    #[arg(long, value_parser = parse_knot)]
    knot: (i64, i64),
    #[arg(long, value_enum, default_value_t = ConventionArg::Daha)]
    convention: ConventionArg,
    #[command(flatten)]
    source: SourceArgs,
    /// Constraint table (JSON); defaults to the bundled E6 table.
    #[arg(long)]
    constraints: Option<String>,
    /// Write the QG differential diagram to this file (`.tsv` for TSV, DOT otherwise).
    #[arg(long)]
    emit_diagram: Option<String>,
    /// Upper bound on added `(1 + q^i t^j a)` factors.
    #[arg(long, default_value_t = LiftOptions::default().max_pairs)]
    max_pairs: usize,
    /// Node budget of the completion search.
    #[arg(long, default_value_t = LiftOptions::default().node_budget)]
    node_budget: usize,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Germ, e.g. "x^3*y + y^13".
    #[arg(long)]
    germ: String,
    /// Variable names.
    #[arg(long, default_value = "x,y")]
    vars: String,
    /// Print only the Milnor number.
    #[arg(long)]
    mu: bool,
    /// Also print a monomial basis of the local algebra.
    #[arg(long)]
    basis: bool,
}

#[derive(Args)]
struct AdjacencyArgs {
    /// Tree file; defaults to the bundled Z_{3,0} tree.
    #[arg(long)]
    tree: Option<String>,
    /// Spectrum table; defaults to the bundled table.
    #[arg(long)]
    table: Option<String>,
    /// Test a single pair `L,K` from the table instead.
    #[arg(long, num_args = 2, value_names = ["L", "K"])]
    pair: Option<Vec<String>>,
}

#[derive(Args)]
struct VerifyArgs {
    /// jd, hyper, spectrum or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    source: SourceArgs,
    /// Count documented deviations as failures.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Dot,
    Tsv,
}

#[derive(Args)]
struct DiagramArgs {
    /// Knot `r,s`.
    #[arg(long, value_parser = parse_knot)]
    knot: (i64, i64),
    #[arg(long, value_enum, default_value_t = DiagramFormat::Dot)]
    diagram: DiagramFormat,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Args)]
struct DescribeArgs {
    /// Cartan type: A, D or E6; without it the data files are listed.
    #[arg(long = "type")]
    ty: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
}

fn parse_knot(s: &str) -> std::result::Result<(i64, i64), String> {
    let (r, t) = s.split_once(',').ok_or("expected r,s")?;
    Ok((r.trim().parse().map_err(|_| "bad r")?, t.trim().parse().map_err(|_| "bad s")?))
}

/// Output plus whether a comparison failed.
struct Out {
    text: String,
    json: Value,
    mismatch: bool,
}

impl Out {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, mismatch: false }
    }
}

fn root_system(ty: &str, rank: Option<usize>) -> Result<RootSystem> {
    let t: CartanType = ty.parse()?;
    let n = match (t, rank) {
        (CartanType::E6, None) => 6,
        (_, Some(n)) => n,
        _ => return Err(Error::Precondition("--rank is required for types A and D".into())),
    };
    RootSystem::new(t, n)
}

fn run_jd(a: &JdArgs) -> Result<Out> {
    let rs = root_system(&a.ty, a.rank)?;
    let w = if a.alt_word { gamma_word_alt(a.knot.0, a.knot.1)? } else { gamma_word(a.knot.0, a.knot.1)? };
    let res = compute_jd_with_word(&rs, &Weight::fundamental(rs.rank, a.weight), &w)?;
    let mut json = res.to_json();
    let text = if a.jones {
        let j = jones_specialize(&res.tilde);
        json["jones"] = json!(j.to_string());
        j.to_string()
    } else {
        res.tilde.to_string()
    };
    Ok(Out::ok(text, json))
}

fn load_lift(knot: (i64, i64), source: JdSource, table: Option<&str>, opts: &LiftOptions) -> Result<(HyperPoly, Value)> {
    let [e6, d5, a6] = golden::lift_inputs(knot, source)?;
    let table: Value = match table {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| Error::Data(format!("{path}: {e}")))?)
            .map_err(|e| Error::Data(format!("{path}: {e}")))?,
        None => serde_json::from_str(&golden::data_text("e6_constraints.json")?).map_err(|e| Error::Data(e.to_string()))?,
    };
    let resolve = |name: &str| match name {
        "E6" => Ok(e6.clone()),
        "D5" => Ok(d5.clone()),
        "A6" => Ok(a6.clone()),
        _ => Err(Error::Data(format!("unknown reference {name}"))),
    };
    let cs = constraints_from_json(&table, &resolve)?;
    let o = lift_with(&e6, &cs, opts)?;
    let json = o.to_json(&cs);
    Ok((o.hyper, json))
}

fn run_hyper(a: &HyperArgs) -> Result<Out> {
    let opts = LiftOptions { max_pairs: a.max_pairs, node_budget: a.node_budget, ..LiftOptions::default() };
    let (hd, mut json) = load_lift(a.knot, a.source.source(), a.constraints.as_deref(), &opts)?;
    let shown = match a.convention {
        ConventionArg::Daha => hd.clone(),
        ConventionArg::Qg => convention_change(&hd, Direction::DahaToQg)?,
        ConventionArg::Dgr => convention_change(&hd, Direction::DahaToDgr)?,
    };
    json["hyperpolynomial"] = shown.to_json();
    json["evaluations"] = hyper_evaluations(&hd, None)?.to_json();
    if let Some(path) = &a.emit_diagram {
        let d = emit_diagram(&convention_change(&hd, Direction::DahaToQg)?, &e6_differentials())?;
        let body = if path.ends_with(".tsv") { d.to_tsv() } else { d.to_dot() };
        std::fs::write(path, body).map_err(|e| Error::Data(format!("{path}: {e}")))?;
        json["diagram"] = json!(path);
    }
    Ok(Out::ok(shown.to_string(), json))
}

fn run_spectrum(a: &SpectrumArgs) -> Result<Out> {
    let (x, y) = a.vars.split_once(',').ok_or_else(|| Error::Precondition("--vars expects two names, e.g. x,y".into()))?;
    let g = parse_germ_with(&a.germ, [x.trim(), y.trim()])?;
    let mu = milnor_number(&g)?;
    if a.mu {
        return Ok(Out::ok(mu.to_string(), json!({"germ": g.to_string(), "mu": mu})));
    }
    let s = spectrum(&g)?;
    let mut json = json!({"germ": g.to_string(), "mu": mu, "spectrum": s.to_json()["values"]});
    let mut text = s.to_string();
    if a.basis {
        let b = miniversal_monomials(&g)?;
        let names: Vec<String> = b.iter().map(|&(i, j)| monomial_text(&g.vars, i, j)).collect();
        text.push_str(&format!("\nbasis: {}", names.join(", ")));
        json["basis"] = json!(names);
    }
    Ok(Out::ok(text, json))
}

fn monomial_text(vars: &[String; 2], i: i64, j: i64) -> String {
    let p = |v: &str, e: i64| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [p(&vars[0], i), p(&vars[1], j)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn read_or_bundled(path: Option<&str>, file: &str) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Data(format!("{p}: {e}"))),
        None => golden::data_text(file),
    }
}

fn run_adjacency(a: &AdjacencyArgs) -> Result<Out> {
    let table = SpectrumTable::from_json(&read_or_bundled(a.table.as_deref(), "z30_spectra.json")?)?;
    if let Some(p) = &a.pair {
        let get = |n: &str| table.get(n).ok_or_else(|| Error::Data(format!("no table row {n}")));
        let (l, k) = (get(&p[0])?, get(&p[1])?);
        let ok = spectra_adjacent(&l.spectrum, &k.spectrum)?;
        return Ok(Out::ok(
            format!("{} -> {}: {}", p[0], p[1], if ok { "spectra adjacent" } else { "spectra not adjacent" }),
            json!({"from": p[0], "to": p[1], "adjacent": ok}),
        ));
    }
    let tree = AdjacencyTree::from_json(&read_or_bundled(a.tree.as_deref(), "z30_tree.json")?)?;
    let rep = verify_adjacency_tree(&tree, &table);
    let mut text = String::new();
    for c in &rep.checks {
        text.push_str(&format!("{} {}", if c.passed { "pass" } else { "FAIL" }, c.name));
        if !c.passed {
            text.push_str(&format!("  {}", c.detail));
        }
        text.push('\n');
    }
    text.push_str(&format!("{} checks, {} failed", rep.checks.len(), rep.failures().len()));
    Ok(Out { text, json: rep.to_json(), mismatch: !rep.passed() })
}

fn run_verify(a: &VerifyArgs) -> Result<Out> {
    let suites: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let reports: Vec<SuiteReport> =
        suites.iter().map(|s| golden::verify_suite(s, a.source.source())).collect::<Result<_>>()?;
    let mismatch = reports
        .iter()
        .any(|r| !r.passed() || (a.strict && r.count(golden::Status::Deviation) > 0));
    let text = reports.iter().map(SuiteReport::to_text).collect::<Vec<_>>().join("");
    let json = json!({"passed": !mismatch, "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>()});
    Ok(Out { text: text.trim_end().to_string(), json, mismatch })
}

fn run_diagram(a: &DiagramArgs) -> Result<Out> {
    let hd = golden::lift_knot(a.knot, a.source.source())?;
    let d = emit_diagram(&convention_change(&hd, Direction::DahaToQg)?, &e6_differentials())?;
    let body = match a.diagram {
        DiagramFormat::Dot => d.to_dot(),
        DiagramFormat::Tsv => d.to_tsv(),
    };
    Ok(Out::ok(body.trim_end().to_string(), json!({"knot": [a.knot.0, a.knot.1], "body": body})))
}

fn run_describe(a: &DescribeArgs) -> Result<Out> {
    if let Some(ty) = &a.ty {
        let rs = root_system(ty, a.rank)?;
        let text = rs.describe();
        return Ok(Out::ok(text.trim_end().to_string(), json!({"describe": text})));
    }
    let mut text = format!("data directory override: ${}\n", golden::DATA_DIR_VAR);
    let mut files = vec![];
    for f in ["jd.json", "hyper.json", "e6_constraints.json", "z30_spectra.json", "z30_tree.json"] {
        let sum = golden::sha256_hex(&golden::data_text(f)?);
        text.push_str(&format!("{f}  sha256 {sum}\n"));
        files.push(json!({"file": f, "sha256": sum}));
    }
    Ok(Out::ok(text.trim_end().to_string(), json!({"files": files, "env": golden::DATA_DIR_VAR})))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Jd(a) => run_jd(a),
        Cmd::Hyper(a) => run_hyper(a),
        Cmd::Spectrum(a) => run_spectrum(a),
        Cmd::Adjacency(a) => run_adjacency(a),
        Cmd::VerifyGolden(a) => run_verify(a),
        Cmd::EmitDiagram(a) => run_diagram(a),
        Cmd::Describe(a) => run_describe(a),
    };
    match r {
        Ok(out) => {
            let body = match if cli.json { Format::Json } else { cli.format } {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).unwrap(),
            };
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ (Error::Precondition(_) | Error::Parse { .. } | Error::UnsupportedRootSystem(_) | Error::TorusLink(..))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
