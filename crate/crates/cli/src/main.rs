use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use evoternary::catalog::{self, EntryName, Params};
use evoternary::io::{self, DecompositionFile, TautTripleFile, TderSolutionJson};
use evoternary::oracle::{compare_tder, oracle_tder};
use evoternary::taut::{decompose_taut, make_taut, sample_taut, verify_taut};
use evoternary::tder::tder_basis;
use evoternary::{Error, EvolutionAlgebra, FieldElement, FieldSpec, SeededRng};

#[derive(Parser)]
#[command(name = "evoternary", version, about = "Ternary derivations and automorphisms of evolution algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, field, rank and square dependencies of an algebra.
    Info { path: PathBuf },
    /// Basis and parametrization of the ternary derivations.
    Tder {
        path: PathBuf,
        /// Also solve the full linear system.
        #[arg(long)]
        oracle: bool,
        /// Cross-check the structured basis against the full linear system.
        #[arg(long)]
        compare: bool,
    },
    /// Ternary automorphisms of perfect algebras.
    #[command(subcommand)]
    Taut(TautCommand),
    /// Run every catalogue row through the solver, its fixture and the oracle.
    Catalog(CatalogArgs),
}

#[derive(Subcommand)]
enum TautCommand {
    /// Write a random ternary automorphism as JSON.
    Sample {
        path: PathBuf,
        /// Fix the permutation, 1-based, e.g. `2,1`.
        #[arg(long)]
        sigma: Option<String>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check f1(xy) = f2(x) f3(y); exits 4 when it fails.
    Verify { path: PathBuf, triple: PathBuf },
    /// Recover sigma, lambda, mu from a triple.
    Decompose { path: PathBuf, triple: PathBuf },
}

#[derive(Args)]
struct CatalogArgs {
    /// `alpha=<x>` or `beta=<x>`; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// `rational` or `prime:<p>`.
    #[arg(long, default_value = "rational")]
    field: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_parse() => 2,
            Error::BoundExceeded { .. } | Error::EnumerationTooLarge { .. } => 5,
            Error::NotPerfect => 6,
            Error::F2NotMonomial | Error::F3NotMonomial | Error::PermutationMismatch | Error::F1Mismatch => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

/// Text to print and the exit code to return with it.
struct Report {
    text: String,
    code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load_algebra(path: &Path) -> Result<EvolutionAlgebra, Failure> {
    Ok(io::parse_algebra(&read(path)?)?)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn cmd_info(path: &Path, json: bool) -> Result<Report, Failure> {
    let a = load_algebra(path)?;
    let sq = a.square_analysis();
    let deps = sq.describe();
    if json {
        return Ok(Report::ok(pretty(&json!({
            "dimension": a.dim(),
            "field": a.spec(),
            "rank": sq.rank,
            "perfect": a.is_perfect(),
            "dependencies": deps,
        }))));
    }
    let mut line = format!("rank {}, {}", sq.rank, if a.is_perfect() { "perfect" } else { "not perfect" });
    for d in &deps {
        write!(line, ", {d}").unwrap();
    }
    Ok(Report::ok(format!("n = {}\nfield = {}\n{line}\n", a.dim(), a.spec())))
}

fn cmd_tder(path: &Path, oracle: bool, compare: bool, json: bool) -> Result<Report, Failure> {
    let a = load_algebra(path)?;
    let sol = tder_basis(&a)?;
    let oracle_dim = if oracle { Some(oracle_tder(&a)?.dimension) } else { None };
    let conformance = if compare { Some(compare_tder(&a)?) } else { None };
    let code = if conformance.as_ref().is_some_and(|c| !c.pass) { 4 } else { 0 };
    if json {
        let mut v = serde_json::to_value(TderSolutionJson::from_solution(a.spec(), &sol)).expect("serializable");
        if let Some(d) = oracle_dim {
            v["oracle_dimension"] = json!(d);
        }
        if let Some(c) = &conformance {
            v["conformance"] = serde_json::to_value(c).expect("serializable");
        }
        return Ok(Report { text: pretty(&v), code });
    }
    let mut text = format!("dimension {}", sol.dimension);
    if let Some(c) = &conformance {
        write!(text, ", conformance {}", if c.pass { "PASS" } else { "FAIL" }).unwrap();
    }
    text.push('\n');
    if let Some(d) = oracle_dim {
        writeln!(text, "oracle dimension {d}").unwrap();
    }
    if let Some(c) = conformance.as_ref().filter(|c| !c.pass) {
        writeln!(
            text,
            "structured {} vs oracle {}; in oracle space: {}; oracle meets constraints: {}; formula matches: {}",
            c.structured_dimension,
            c.oracle_dimension,
            c.structured_in_oracle_space,
            c.oracle_satisfies_structured_constraints,
            c.formula_matches
        )
        .unwrap();
    }
    for line in sol.render_parametrization().lines() {
        writeln!(text, "  {line}").unwrap();
    }
    Ok(Report { text, code })
}

fn vector(xs: &[FieldElement]) -> String {
    let parts: Vec<String> = xs.iter().map(FieldElement::pretty).collect();
    format!("({})", parts.join(", "))
}

fn cmd_taut(cmd: &TautCommand, json: bool, seed: u64) -> Result<Report, Failure> {
    match cmd {
        TautCommand::Sample { path, sigma, out } => {
            let a = load_algebra(path)?;
            if !a.is_perfect() {
                return Err(Error::NotPerfect.into());
            }
            let mut rng = SeededRng::new(seed);
            let triple = match sigma {
                None => sample_taut(&a, &mut rng)?.1,
                Some(s) => {
                    let sigma = io::parse_sigma(s)?;
                    let mut draw = || -> Vec<FieldElement> {
                        (0..a.dim()).map(|_| FieldElement::sample(&mut rng, a.spec(), true)).collect()
                    };
                    let (lambda, mu) = (draw(), draw());
                    make_taut(&a, &sigma, &lambda, &mu)?
                }
            };
            let text = serde_json::to_string_pretty(&TautTripleFile::from_triple(&triple)).expect("serializable") + "\n";
            match out {
                Some(p) => {
                    std::fs::write(p, &text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", p.display()) })?;
                    Ok(Report::ok(String::new()))
                }
                None => Ok(Report::ok(text)),
            }
        }
        TautCommand::Verify { path, triple } => {
            let a = load_algebra(path)?;
            let t = io::parse_taut_triple(&read(triple)?, a.spec())?;
            let ok = verify_taut(&a, &t)?;
            let text = if json { pretty(&json!({ "valid": ok })) } else { format!("{ok}\n") };
            Ok(Report { text, code: if ok { 0 } else { 4 } })
        }
        TautCommand::Decompose { path, triple } => {
            let a = load_algebra(path)?;
            if !a.is_perfect() {
                return Err(Error::NotPerfect.into());
            }
            let t = io::parse_taut_triple(&read(triple)?, a.spec())?;
            let d = decompose_taut(&a, &t)?;
            if json {
                let file = DecompositionFile::from_decomposition(&d);
                return Ok(Report::ok(pretty(&serde_json::to_value(file).expect("serializable"))));
            }
            let sigma: Vec<String> = d.sigma.iter().map(|s| (s + 1).to_string()).collect();
            Ok(Report::ok(format!(
                "sigma = ({})\nlambda = {}\nmu = {}\n",
                sigma.join(", "),
                vector(&d.lambda),
                vector(&d.mu)
            )))
        }
    }
}

fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    let bad = || Failure { code: 2, message: format!("bad field {text:?}; expected rational or prime:<p>") };
    if text == "rational" {
        return Ok(FieldSpec::Rational);
    }
    let p = text.strip_prefix("prime:").and_then(|p| p.parse::<u64>().ok()).ok_or_else(bad)?;
    Ok(FieldSpec::prime(p)?)
}

fn parse_params(spec: FieldSpec, args: &[String]) -> Result<Params, Failure> {
    let mut params = Params::default_for(spec);
    for arg in args {
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| Failure { code: 2, message: format!("bad parameter {arg:?}; expected name=value") })?;
        let value = spec.parse(value.trim())?;
        match key.trim() {
            "alpha" | "α" => params.alpha = value,
            "beta" | "β" => params.beta = value,
            other => return Err(Failure { code: 2, message: format!("unknown parameter {other:?}") }),
        }
    }
    Ok(params)
}

struct CatalogRow {
    name: EntryName,
    structure: Vec<Vec<String>>,
    expected: usize,
    dimension: usize,
    oracle_dimension: usize,
    fixture: bool,
    conformance: bool,
    note: Option<&'static str>,
}

fn catalog_row(name: EntryName, params: &Params) -> evoternary::Result<CatalogRow> {
    let a = catalog::instantiate(name, params)?;
    let sol = tder_basis(&a)?;
    let expected = catalog::expected_tder(name, params)?;
    let report = compare_tder(&a)?;
    Ok(CatalogRow {
        name,
        structure: a.structure().to_strings(),
        expected: expected.dimension,
        dimension: sol.dimension,
        oracle_dimension: report.oracle_dimension,
        fixture: expected.check(&sol).pass(),
        conformance: report.pass,
        note: expected.note,
    })
}

fn cmd_catalog(args: &CatalogArgs, json: bool) -> Result<Report, Failure> {
    let spec = parse_field(&args.field)?;
    let params = parse_params(spec, &args.params)?;
    let rows = std::thread::scope(|s| {
        let handles: Vec<_> = EntryName::ALL.into_iter().map(|name| {
            let params = &params;
            s.spawn(move || catalog_row(name, params))
        }).collect();
        handles.into_iter().map(|h| h.join().expect("catalog worker panicked")).collect::<evoternary::Result<Vec<_>>>()
    })?;
    let passed = rows.iter().filter(|r| r.fixture && r.conformance).count();
    let code = if passed == rows.len() { 0 } else { 4 };
    if json {
        let entries: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "name": r.name.as_str(),
                    "structure_matrix": r.structure,
                    "expected_dimension": r.expected,
                    "dimension": r.dimension,
                    "oracle_dimension": r.oracle_dimension,
                    "fixture_pass": r.fixture,
                    "conformance_pass": r.conformance,
                    "note": r.note,
                })
            })
            .collect();
        return Ok(Report { text: pretty(&json!(entries)), code });
    }
    let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
    let mut text = format!("field {spec}, alpha = {}, beta = {}\n", params.alpha.pretty(), params.beta.pretty());
    for r in &rows {
        writeln!(
            text,
            "{:<5} dimension {:>2} (expected {:>2}, oracle {:>2})  fixture {}  conformance {}",
            r.name.as_str(),
            r.dimension,
            r.expected,
            r.oracle_dimension,
            verdict(r.fixture),
            verdict(r.conformance)
        )
        .unwrap();
    }
    writeln!(text, "{passed}/{} {}", rows.len(), verdict(code == 0)).unwrap();
    Ok(Report { text, code })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Info { path } => cmd_info(path, cli.json),
        Command::Tder { path, oracle, compare } => cmd_tder(path, *oracle, *compare, cli.json),
        Command::Taut(cmd) => cmd_taut(cmd, cli.json, cli.seed),
        Command::Catalog(args) => cmd_catalog(args, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
