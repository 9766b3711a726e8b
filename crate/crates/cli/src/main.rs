//! `deltarig` command-line front end.
//!
//! Exit codes: 0 success, 1 domain or input error, 2 usage error,
//! 3 a verification command found a failing property.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltarig::invariants::{
    beta, check_brylawski, is_series_parallel, profile_from_polynomial, ribbon_polynomial, tutte_subset_sum,
    TutteProfile, TuttePoly,
};
use deltarig::verify::{
    excluded_minor_witness, named, networks_from_ops, parse_ops, series_parallel_classes, verify_ribbon,
    verify_series_parallel, verify_theorem, VerificationReport,
};
use deltarig::{factor_bivariate, is_irreducible, BiPoly, DeltaMatroid, RibbonGraph};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] deltarig::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "deltarig", version, about = "Tutte polynomials of delta-matroids and ribbon graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker thread cap.
    #[arg(long, global = true, env = "DELTARIG_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Delta-matroid invariants.
    #[command(subcommand)]
    Dm(DmCommand),
    /// Ribbon graph invariants and gluing.
    #[command(subcommand)]
    Rg(RgCommand),
    /// Polynomials over the integers in x and y.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Property verification runs.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

/// A JSON file path, or the JSON text itself.
#[derive(Args)]
struct Input {
    input: String,
}

#[derive(Subcommand)]
enum DmCommand {
    /// Tutte polynomial.
    Tutte(Input),
    /// Coefficient of x in the Tutte polynomial.
    Beta(Input),
    /// Brylawski coefficient sums.
    Brylawski(Input),
    /// Parameters recovered from a Tutte polynomial.
    Profile {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Connectivity and the connected components.
    Connected(Input),
    /// Dual delta-matroid.
    Dual(Input),
    /// Twist by a set of elements.
    Twist {
        #[command(flatten)]
        input: Input,
        /// Comma-separated element labels.
        #[arg(long, value_delimiter = ',', default_value = "")]
        set: Vec<String>,
    },
    /// Series-parallel test by the sign of the beta invariant.
    Seriesparallel(Input),
}

#[derive(Subcommand)]
enum RgCommand {
    /// Components, rank, boundary components and Euler genus of a spanning subgraph.
    Metrics {
        #[command(flatten)]
        input: Input,
        /// Comma-separated edge labels; all edges when omitted.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<String>>,
    },
    /// Edge sets of the spanning quasi-trees.
    Quasitrees(Input),
    /// Delta-matroid of spanning quasi-trees.
    Dm(Input),
    /// Ribbon graph polynomial.
    Poly(Input),
    /// One-vertex join of two ribbon graphs.
    Join {
        first: String,
        second: String,
        #[arg(long, default_value_t = 0)]
        v1: usize,
        /// Gap in the first rotation where the second is inserted.
        #[arg(long, default_value_t = 0)]
        pos1: usize,
        #[arg(long, default_value_t = 0)]
        v2: usize,
        /// Dart of the second rotation placed first.
        #[arg(long, default_value_t = 0)]
        pos2: usize,
    },
    /// Disjoint union of two ribbon graphs.
    Union { first: String, second: String },
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Factorization over the integers.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Irreducibility over the integers.
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Value at an integer point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Connectivity against irreducibility, with the identity suite.
    Theorem {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Ribbon graph identities over enumerated maps.
    Ribbon {
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
    },
    /// Series-parallel characterization.
    Serpar {
        /// JSON file of operation sequences; enumerates all networks when omitted.
        #[arg(long)]
        ops: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_ops: usize,
    },
}

/// Rendered result: text for people, a JSON value for tools.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, failed: false }
    }

    fn structure(json: Value) -> Self {
        Output { text: serde_json::to_string_pretty(&json).expect("json values serialize"), json, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        deltarig::exec::configure_threads(n);
    }
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize")),
            }
            ExitCode::from(if out.failed { 3 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Dm(c) => run_dm(c),
        Command::Rg(c) => run_rg(c),
        Command::Poly(c) => run_poly(c),
        Command::Verify(c) => run_verify(c),
    }
}

fn read_source(input: &str) -> Result<String> {
    if Path::new(input).is_file() {
        return std::fs::read_to_string(input).map_err(|source| CliError::Io { path: input.to_string(), source });
    }
    if input.trim_start().starts_with(['{', '[']) {
        return Ok(input.to_string());
    }
    Err(CliError::Input(format!("{input}: no such file")))
}

fn load_dm(input: &str) -> Result<DeltaMatroid> {
    Ok(DeltaMatroid::from_json(&read_source(input)?)?)
}

fn load_rg(input: &str) -> Result<RibbonGraph> {
    Ok(RibbonGraph::from_json(&read_source(input)?)?)
}

fn parse_poly(s: &str) -> Result<BiPoly> {
    Ok(s.parse::<BiPoly>()?)
}

fn sets_json(d: &DeltaMatroid, masks: &[deltarig::Mask]) -> Value {
    let named = |m: deltarig::Mask| -> Vec<&str> {
        (0..d.len()).filter(|i| m >> i & 1 == 1).map(|i| d.ground()[i].as_str()).collect()
    };
    Value::from(masks.iter().map(|&m| json!(named(m))).collect::<Vec<_>>())
}

fn tutte_output(t: &TuttePoly) -> Output {
    let lattice = if t.is_integral() { "integral" } else { "half-integral" };
    Output::new(t.to_string(), json!({ "polynomial": t.to_string(), "lattice": lattice }))
}

fn profile_output(p: &TutteProfile) -> Output {
    let sizes: Vec<String> = p.feasible_size_counts.iter().map(|(k, c)| format!("{k}:{c}")).collect();
    let text = format!(
        "elements {}\nsigma2 {}\nwidth {}\nfeasible sizes {}\neven {}\nmatroid {}",
        p.n_elements,
        p.sigma2,
        p.width,
        sizes.join(" "),
        p.is_even,
        p.is_matroid
    );
    Output::new(text, serde_json::to_value(p).expect("profile serializes"))
}

fn run_dm(command: DmCommand) -> Result<Output> {
    Ok(match command {
        DmCommand::Tutte(i) => tutte_output(&tutte_subset_sum(&load_dm(&i.input)?)),
        DmCommand::Beta(i) => {
            let b = beta(&load_dm(&i.input)?)?;
            Output::new(b.to_string(), json!({ "beta": b.to_string() }))
        }
        DmCommand::Brylawski(i) => {
            let rows = check_brylawski(&load_dm(&i.input)?)?;
            let text = rows
                .iter()
                .map(|r| format!("k={} sum={} expected={} {}", r.k, r.lhs, r.expected, if r.pass { "ok" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            let json = rows
                .iter()
                .map(|r| json!({ "k": r.k, "sum": r.lhs.to_string(), "expected": r.expected.to_string(), "pass": r.pass }))
                .collect();
            Output::new(text, Value::Array(json))
        }
        DmCommand::Profile { poly } => {
            let source = if Path::new(&poly).is_file() { read_source(&poly)? } else { poly };
            profile_output(&profile_from_polynomial(&parse_poly(source.trim())?)?)
        }
        DmCommand::Connected(i) => {
            let d = load_dm(&i.input)?;
            let parts = d.components();
            let text = format!(
                "{}\n{}",
                d.is_connected(),
                parts.iter().map(|&m| d.format_set(m)).collect::<Vec<_>>().join(" ")
            );
            Output::new(text, json!({ "connected": d.is_connected(), "components": sets_json(&d, &parts) }))
        }
        DmCommand::Dual(i) => Output::structure(load_dm(&i.input)?.dual().to_json_value_checked()),
        DmCommand::Twist { input, set } => {
            let d = load_dm(&input.input)?;
            let labels: Vec<&String> = set.iter().filter(|s| !s.is_empty()).collect();
            let a = d.mask_of(&labels)?;
            Output::structure(d.twist(a).to_json_value_checked())
        }
        DmCommand::Seriesparallel(i) => {
            let d = load_dm(&i.input)?;
            let sp = is_series_parallel(&d)?;
            let witness = excluded_minor_witness(&d).map(|w| {
                format!(
                    "delete {} contract {} gives a twist of {}",
                    d.format_set(w.delete),
                    d.format_set(w.contract),
                    named::EXCLUDED_MINOR_NAMES[w.target]
                )
            });
            let text = match &witness {
                Some(w) => format!("{sp}\n{w}"),
                None => sp.to_string(),
            };
            Output::new(text, json!({ "series_parallel": sp, "excluded_minor": witness }))
        }
    })
}

/// JSON value of a structure through its serde form.
trait ToJsonValue {
    fn to_json_value_checked(&self) -> Value;
}

impl ToJsonValue for DeltaMatroid {
    fn to_json_value_checked(&self) -> Value {
        serde_json::to_value(self.to_json_value()).expect("plain data serializes")
    }
}

impl ToJsonValue for RibbonGraph {
    fn to_json_value_checked(&self) -> Value {
        serde_json::to_value(self.to_json_value()).expect("plain data serializes")
    }
}

fn run_rg(command: RgCommand) -> Result<Output> {
    Ok(match command {
        RgCommand::Metrics { input, subset } => {
            let g = load_rg(&input.input)?;
            let a = match subset {
                Some(labels) => g.edge_mask(&labels.iter().filter(|s| !s.is_empty()).collect::<Vec<_>>())?,
                None => g.full(),
            };
            let m = g.metrics(a);
            let text = format!(
                "components {}\nrank {}\nboundary {}\neuler genus {}\nsigma2 {}",
                m.components, m.rank, m.boundary, m.euler_genus, m.sigma2
            );
            Output::new(text, serde_json::to_value(m).expect("metrics serialize"))
        }
        RgCommand::Quasitrees(i) => {
            let g = load_rg(&i.input)?;
            let sets = g.quasi_tree_sets();
            let named: Vec<Vec<String>> = sets.iter().map(|&a| g.format_edges(a)).collect();
            let text = named.iter().map(|s| format!("{{{}}}", s.join(","))).collect::<Vec<_>>().join("\n");
            Output::new(text, json!(named))
        }
        RgCommand::Dm(i) => Output::structure(load_rg(&i.input)?.delta_matroid()?.to_json_value_checked()),
        RgCommand::Poly(i) => tutte_output(&ribbon_polynomial(&load_rg(&i.input)?)),
        RgCommand::Join { first, second, v1, pos1, v2, pos2 } => {
            let joined = load_rg(&first)?.join(v1, pos1, &load_rg(&second)?, v2, pos2)?;
            Output::structure(joined.to_json_value_checked())
        }
        RgCommand::Union { first, second } => {
            Output::structure(load_rg(&first)?.disjoint_union(&load_rg(&second)?).to_json_value_checked())
        }
    })
}

fn run_poly(command: PolyCommand) -> Result<Output> {
    Ok(match command {
        PolyCommand::Factor { poly } => {
            let f = factor_bivariate(&parse_poly(&poly)?)?;
            let factors: Vec<Value> =
                f.factors.iter().map(|(p, m)| json!({ "factor": p.to_string(), "multiplicity": m })).collect();
            Output::new(f.to_string(), json!({ "content": f.content.to_string(), "factors": factors }))
        }
        PolyCommand::Irreducible { poly } => {
            let irr = is_irreducible(&parse_poly(&poly)?)?;
            Output::new(irr.to_string(), json!({ "irreducible": irr }))
        }
        PolyCommand::Eval { poly, x, y } => {
            let p = parse_poly(&poly)?;
            let int = |s: &str| s.parse().map_err(|_| CliError::Input(format!("{s}: not an integer")));
            let v = p.eval(&int(&x)?, &int(&y)?);
            Output::new(v.to_string(), json!({ "value": v.to_string() }))
        }
    })
}

fn report_output(report: VerificationReport) -> Output {
    let mut text = format!("{} instances, {} failures", report.instance_count, report.failures.len());
    for (phase, n) in &report.phases {
        text.push_str(&format!("\n  {phase}: {n} instances in {:.3}s", report.timing.get(phase).copied().unwrap_or(0.0)));
    }
    for f in &report.failures {
        text.push_str(&format!("\nFAIL {} [{}] {}", f.property, f.instance, f.witness));
    }
    let failed = !report.passed();
    let mut out = Output::structure(serde_json::to_value(&report).expect("report serializes"));
    out.text = text;
    out.failed = failed;
    out
}

fn run_verify(command: VerifyCommand) -> Result<Output> {
    let report = match command {
        VerifyCommand::Theorem { max_n } => verify_theorem(max_n)?,
        VerifyCommand::Ribbon { max_edges } => verify_ribbon(max_edges)?,
        VerifyCommand::Serpar { ops, max_ops } => {
            let networks = match ops {
                Some(path) => networks_from_ops(&parse_ops(&read_source(&path)?)?)?,
                None => series_parallel_classes(max_ops),
            };
            verify_series_parallel(&networks)
        }
    };
    Ok(report_output(report))
}
