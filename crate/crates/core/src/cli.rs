//! Command line front end. `main.rs` only parses arguments and calls [`execute`].

use std::path::Path;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{classify, Claim, Predicate};
use crate::enumerate::{enumerate_structured, find_counterexample, EnumSpec};
use crate::fixtures;
use crate::generalized::{
    direct_adjointness, reduction_adjointness, verify_generalized, Caps, Domain, Method, DEFAULT_PAIR_CAP,
    DEFAULT_TRIPLE_CAP,
};
use crate::poset::StructuredPoset;
use crate::report::{self, RunReport};
use crate::residuation::{
    build_operators, verify_axioms, verify_divisibility_lemma, verify_mutual_definability, Scheme,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "residua", version, about = "Operator residuation checks for finite posets with a unary operation")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for the exhaustive searches (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Include per-phase wall times in the output.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide every structural predicate on a poset.
    Classify(InputArg),
    /// Check the operator pair M, R against the residuation axioms.
    Residuate(SchemeArgs),
    /// Print the operator tables M(x,y) and R(x,y).
    Tables(SchemeArgs),
    /// Check the subset-level operators and conditions (11), (12), (15), (16).
    Generalized(GeneralizedArgs),
    /// Enumerate small structures up to isomorphism.
    Enumerate(EnumerateArgs),
    /// List the bundled example posets.
    Fixtures,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// JSON file, or the name of a bundled fixture.
    pub input: String,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    pub input: String,
    #[arg(long, default_value = "cone")]
    pub scheme: Scheme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    #[value(name = "15")]
    Fifteen,
    #[value(name = "16")]
    Sixteen,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Reduction,
    Both,
}

#[derive(Debug, Args)]
pub struct GeneralizedArgs {
    pub input: String,
    #[arg(long, value_enum, default_value = "both")]
    pub direction: DirectionArg,
    #[arg(long, value_enum, default_value = "reduction")]
    pub method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
    pub pair_cap: usize,
    #[arg(long, default_value_t = DEFAULT_TRIPLE_CAP)]
    pub triple_cap: usize,
    #[arg(long, default_value = "nonempty")]
    pub domain: Domain,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub size: usize,
    /// Comma-separated predicates every emitted structure must satisfy.
    #[arg(long, value_delimiter = ',', value_parser = Predicate::from_str)]
    pub require: Vec<Predicate>,
    /// Search sizes 1..=size for a counterexample to `premise+...=>conclusion`.
    #[arg(long, value_parser = Claim::from_str)]
    pub claim: Option<Claim>,
    /// Print the names of the structures, not just the count.
    #[arg(long)]
    pub list: bool,
}

/// A failure before any check could run.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn load_input(arg: &str) -> Result<StructuredPoset, InputError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(text) = fixtures::source(arg) {
            return StructuredPoset::from_json(text).map_err(|e| InputError(format!("fixture {arg}: {e}")));
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{arg}: {e}")))?;
    StructuredPoset::from_json(&text).map_err(|e| InputError(format!("{arg}: {e}")))
}

/// Runs the command, honouring `--threads`, and returns the finished report.
pub fn execute(cli: &Cli) -> Result<RunReport, InputError> {
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| InputError(format!("thread pool: {e}")))?
            .install(|| dispatch(&cli.command)),
        None => dispatch(&cli.command),
    }
}

/// Text or JSON rendering plus the process exit code.
pub fn render(cli: &Cli, report: &RunReport) -> (String, i32) {
    let out = if cli.json { report.render_json(cli.timings) } else { report.render_text(cli.timings) };
    (out, if report.passed { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn dispatch(cmd: &Command) -> Result<RunReport, InputError> {
    match cmd {
        Command::Classify(a) => run_classify(&a.input),
        Command::Residuate(a) => run_residuate(a),
        Command::Tables(a) => run_tables(a),
        Command::Generalized(a) => run_generalized(a),
        Command::Enumerate(a) => run_enumerate(a),
        Command::Fixtures => {
            let mut out = RunReport::new("fixtures", None);
            let names: Vec<&str> = fixtures::names().collect();
            for n in &names {
                out.line(n);
            }
            out.insert("fixtures", json!(names));
            Ok(out)
        }
    }
}

fn run_classify(input: &str) -> Result<RunReport, InputError> {
    let sp = load_input(input)?;
    let mut out = RunReport::new("classify", Some(sp.name.clone()));
    let r = out.timed("classify", || classify(&sp));
    report::classify_report(&sp, &r, &mut out);
    Ok(out)
}

fn run_residuate(a: &SchemeArgs) -> Result<RunReport, InputError> {
    let sp = load_input(&a.input)?;
    let err = |e: crate::Error| InputError(format!("{}: {e}", a.input));
    let mut out = RunReport::new("residuate", Some(sp.name.clone()));
    out.insert("scheme", json!(a.scheme.to_string()));
    let t = out.timed("tables", || build_operators(&sp, a.scheme)).map_err(err)?;
    let d = out.timed("axioms", || verify_axioms(&sp, &t)).map_err(err)?;
    let lemma = out.timed("lemma", || verify_divisibility_lemma(&sp, &t));
    let prop = out.timed("mutual_definability", || verify_mutual_definability(&sp, a.scheme)).map_err(err)?;
    out.line(format!("{} ({} elements), {} scheme", sp.name, sp.len(), a.scheme));
    report::axiom_report(&sp, &d, &lemma, &prop, &mut out);
    out.insert("tables", report::table_json(&sp.poset, &t));
    out.passed = d.left_residuated() && lemma.holds && (!prop.hypothesis_met || prop.holds());
    Ok(out)
}

fn run_tables(a: &SchemeArgs) -> Result<RunReport, InputError> {
    let sp = load_input(&a.input)?;
    let mut out = RunReport::new("tables", Some(sp.name.clone()));
    let t = build_operators(&sp, a.scheme).map_err(|e| InputError(format!("{}: {e}", a.input)))?;
    out.insert("scheme", json!(a.scheme.to_string()));
    out.insert("tables", report::table_json(&sp.poset, &t));
    out.text.push_str(&report::table_text(&sp.poset, &t));
    Ok(out)
}

fn run_generalized(a: &GeneralizedArgs) -> Result<RunReport, InputError> {
    let sp = load_input(&a.input)?;
    let err = |e: crate::Error| InputError(format!("{}: {e}", a.input));
    let caps = Caps { pair: a.pair_cap, triple: a.triple_cap };
    let (want15, want16) = match a.direction {
        DirectionArg::Fifteen => (true, false),
        DirectionArg::Sixteen => (false, true),
        DirectionArg::Both => (true, true),
    };
    let mut out = RunReport::new("generalized", Some(sp.name.clone()));
    out.insert("domain", json!(a.domain.to_string()));
    out.line(format!("{} ({} elements), subsets: {}", sp.name, sp.len(), a.domain));

    let mut reports = Vec::new();
    if matches!(a.method, MethodArg::Reduction | MethodArg::Both) {
        reports.push(out.timed("reduction", || reduction_adjointness(&sp, a.domain, caps)).map_err(err)?);
    }
    if matches!(a.method, MethodArg::Direct | MethodArg::Both) {
        reports.push(out.timed("direct", || direct_adjointness(&sp, a.domain, caps)).map_err(err)?);
    }
    let mut methods = serde_json::Map::new();
    for r in &reports {
        methods.insert(r.method.to_string(), report::adjointness_json(&sp.poset, r, want15, want16));
        out.text.push_str(&report::adjointness_text(&sp.poset, r, want15, want16));
    }
    out.insert("methods", serde_json::Value::Object(methods));

    let agree = reports.windows(2).all(|w| {
        (!want15 || w[0].fifteen.holds == w[1].fifteen.holds) && (!want16 || w[0].sixteen.holds == w[1].sixteen.holds)
    });
    if reports.len() > 1 {
        out.insert("methods_agree", json!(agree));
        out.line(format!("methods agree: {}", if agree { "yes" } else { "no" }));
    }

    let first = &reports[0];
    let c2 = out.timed("residuation", || verify_generalized(&sp, Method::Reduction, a.domain, caps)).map_err(err)?;
    out.insert("residuation", report::generalized_json(&sp.poset, &c2));
    out.text.push_str(&report::generalized_text(&sp.poset, &c2));

    out.passed =
        agree && (!want15 || first.fifteen.holds) && (!want16 || first.sixteen.holds) && c2.biconditional_holds();
    Ok(out)
}

fn run_enumerate(a: &EnumerateArgs) -> Result<RunReport, InputError> {
    let err = |e: crate::Error| InputError(e.to_string());
    let mut spec = EnumSpec::new(a.size);
    spec.require = a.require.clone();
    let mut out = RunReport::new("enumerate", None);
    out.insert("size", json!(a.size));
    out.insert("require", json!(a.require.iter().map(Predicate::to_string).collect::<Vec<_>>()));

    let names: Vec<String> =
        out.timed("enumerate", || enumerate_structured(&spec).map(|it| it.map(|sp| sp.name).collect())).map_err(err)?;
    out.insert("count", json!(names.len()));
    out.line(format!("size {}: {} structures", a.size, names.len()));
    if a.list {
        for n in &names {
            out.line(n);
        }
        out.insert("structures", json!(names));
    }

    if let Some(claim) = &a.claim {
        let found = out.timed("claim", || find_counterexample(&spec, claim, &[])).map_err(err)?;
        let cx = found.as_ref().map(|sp| json!({ "name": sp.name, "structure": sp.to_doc() }));
        out.insert("claim", json!({ "claim": claim.to_string(), "counterexample": cx }));
        match &found {
            Some(sp) => out.line(format!("{claim}: counterexample {}", sp.name)),
            None => out.line(format!("{claim}: no counterexample up to size {}", a.size)),
        }
        out.passed = found.is_none();
    }
    Ok(out)
}
