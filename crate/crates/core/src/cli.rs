//! Command-line front end over space-definition files.
//!
//! Exit codes: `0` success, `1` negative finding, `2` input error,
//! `3` search budget exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::contraction::{
    analyze, search_certificate, t_kannan_lambda, AnalysisReport, ExcludedPairs, LambdaVerdict,
    SearchSpace, TheoremVerdict, DEFAULT_SEARCH_BUDGET,
};
use crate::document::{DocumentError, LoadedSpace, SpaceDocument};
use crate::error::Error;
use crate::iteration::{fixed_points_exhaustive, picard, verify_bounds, DEFAULT_TAIL_WINDOW};
use crate::maps::{check_injective, AuxMap, MapProperties};
use crate::rational::Rational;
use crate::report::{
    CandidateCheck, InputEcho, ReportDocument, SearchSection, SolveSection, ValidationSection,
};
use crate::space::validate_declared;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kannan",
    version,
    about = "Exact Kannan-type contraction analysis on finite spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the file's distances against its declared kind.
    Validate(ValidateArgs),
    /// Compute both contraction constants and theorem applicability.
    Analyze(AnalyzeArgs),
    /// Run Picard iteration and optionally verify the convergence bounds.
    Solve(SolveArgs),
    /// Search for an injective auxiliary map certifying the extended condition.
    #[command(name = "search-t")]
    SearchT(SearchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Space-definition file (JSON).
    pub file: PathBuf,
    /// Write the machine-readable report here.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "S")]
    pub map: String,
    /// Auxiliary map; the identity when omitted.
    #[arg(long)]
    pub aux: Option<String>,
    /// Leave out pairs touching a truncated family's boundary point.
    #[arg(long)]
    pub exclude_clamp: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "S")]
    pub map: String,
    #[arg(long)]
    pub aux: Option<String>,
    /// Label of the starting point.
    #[arg(long)]
    pub start: String,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
    /// Verify the convergence bounds at this λ (e.g. `1/3`).
    #[arg(long, value_name = "LAMBDA")]
    pub check_bounds: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchSpaceArg {
    Permutations,
    Injections,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "S")]
    pub map: String,
    #[arg(long, value_name = "LAMBDA")]
    pub lambda_cap: String,
    #[arg(long, value_enum, default_value_t = SearchSpaceArg::Permutations)]
    pub search: SearchSpaceArg,
    /// Largest number of points to search exhaustively.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub budget: usize,
}

/// Result of one command: exit code, human-readable text and, unless the
/// input could not be read, the machine-readable report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub human: String,
    pub report: Option<ReportDocument>,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            exit_code: EXIT_INPUT,
            human: format!("error: {message}\n"),
            report: None,
        }
    }
}

struct Input {
    path: PathBuf,
    doc: SpaceDocument,
    loaded: LoadedSpace,
}

fn load(path: &Path) -> Result<Input, DocumentError> {
    let doc = SpaceDocument::load(path)?;
    let loaded = doc.build()?;
    Ok(Input {
        path: path.to_path_buf(),
        doc,
        loaded,
    })
}

fn report_for(
    cmd: &str,
    input: &Input,
    options: BTreeMap<String, String>,
    exit_code: i32,
) -> ReportDocument {
    ReportDocument {
        command: cmd.to_string(),
        input: InputEcho {
            path: input.path.display().to_string(),
            document: input.doc.clone(),
            options,
        },
        exit_code,
        validation: None,
        analysis: None,
        solve: None,
        search: None,
    }
}

fn parse_lambda(flag: &str, text: &str) -> Result<Rational, String> {
    text.parse::<Rational>()
        .map_err(|e| format!("--{flag}: {e}"))
}

macro_rules! try_input {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::input_error(e),
        }
    };
}

pub fn cmd_validate(args: &ValidateArgs) -> Outcome {
    let input = try_input!(load(&args.input.file));
    let space = &input.loaded.space;
    let violations = validate_declared(space);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "space: {} points, declared {}",
        space.len(),
        space.kind()
    );
    if violations.is_empty() {
        let _ = writeln!(out, "{} axioms: ok", space.kind());
    } else {
        let _ = writeln!(
            out,
            "{} axioms: {} violation(s)",
            space.kind(),
            violations.len()
        );
        for v in &violations {
            let _ = writeln!(out, "  {v}");
        }
    }
    let exit_code = if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let mut report = report_for("validate", &input, BTreeMap::new(), exit_code);
    report.validation = Some(ValidationSection {
        declared_kind: space.kind(),
        violations,
    });
    Outcome {
        exit_code,
        human: out,
        report: Some(report),
    }
}

fn verdict_line(v: &LambdaVerdict) -> String {
    let at = match v.argmax_labels() {
        Some((a, b)) => format!(" at {{{a},{b}}}"),
        None => String::new(),
    };
    let feasible = if v.feasible_below_half {
        "below 1/2"
    } else {
        "not below 1/2"
    };
    format!("{}{at} ({feasible})", v.lambda_min)
}

fn theorem_line(name: &str, v: &TheoremVerdict) -> String {
    if v.applies {
        format!("{name}: applies")
    } else {
        let why: Vec<String> = v.obstructions.iter().map(|o| o.to_string()).collect();
        format!("{name}: does not apply ({})", why.join("; "))
    }
}

fn properties_line(p: &MapProperties) -> String {
    let inj = match &p.injectivity.collision {
        None => "yes".to_string(),
        Some((a, b)) => format!("no ({a} and {b} collide)"),
    };
    format!(
        "T: injective {inj}, continuous {}, subsequentially convergent {} ({:?}), sequentially convergent {} ({:?})",
        p.continuous.decision,
        p.subsequentially_convergent.decision,
        p.subsequentially_convergent.rationale,
        p.sequentially_convergent.decision,
        p.sequentially_convergent.rationale,
    )
}

fn render_analysis(out: &mut String, a: &AnalysisReport, excluded: usize) {
    let axioms = |n: usize| {
        if n == 0 {
            "ok".to_string()
        } else {
            format!("{n} violation(s)")
        }
    };
    let _ = writeln!(out, "metric axioms: {}", axioms(a.metric_violations.len()));
    for v in &a.metric_violations {
        let _ = writeln!(out, "  {v}");
    }
    let _ = writeln!(
        out,
        "generalized axioms: {}",
        axioms(a.generalized_violations.len())
    );
    for v in &a.generalized_violations {
        let _ = writeln!(out, "  {v}");
    }
    if excluded > 0 {
        let _ = writeln!(out, "excluded pairs: {excluded}");
    }
    let _ = writeln!(out, "lambda (classical): {}", verdict_line(&a.kannan));
    let through = if a.aux_is_identity {
        "identity T"
    } else {
        "through T"
    };
    let _ = writeln!(out, "lambda ({through}): {}", verdict_line(&a.extended));
    let _ = writeln!(out, "{}", properties_line(&a.properties));
    let _ = writeln!(
        out,
        "{}",
        theorem_line("metric fixed-point theorem", &a.metric_theorem)
    );
    let _ = writeln!(
        out,
        "{}",
        theorem_line(
            "generalized-metric fixed-point theorem",
            &a.generalized_theorem
        )
    );
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Outcome {
    let input = try_input!(load(&args.input.file));
    let loaded = &input.loaded;
    let s = try_input!(loaded.self_map(&args.map));
    let t = match &args.aux {
        Some(name) => Some(try_input!(loaded.map(name))),
        None => None,
    };
    let excluded = if args.exclude_clamp {
        match &loaded.realization {
            Some(r) => r.clamp_pairs(),
            None => return Outcome::input_error("--exclude-clamp needs a family document"),
        }
    } else {
        ExcludedPairs::none()
    };
    let family = match (&args.aux, &loaded.realization) {
        (Some(name), Some(r)) if loaded.is_family_aux(name) => Some(r.family),
        _ => None,
    };
    let analysis = try_input!(analyze(&loaded.space, s, t, &excluded, family));

    let mut out = String::new();
    let _ = writeln!(
        out,
        "space: {} points, declared {}",
        loaded.space.len(),
        loaded.space.kind()
    );
    render_analysis(&mut out, &analysis, excluded.len());
    let exit_code = if analysis.any_theorem_applies() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };

    let mut options = BTreeMap::from([("map".to_string(), args.map.clone())]);
    if let Some(a) = &args.aux {
        options.insert("aux".into(), a.clone());
    }
    if args.exclude_clamp {
        options.insert("exclude-clamp".into(), "true".into());
    }
    let mut report = report_for("analyze", &input, options, exit_code);
    report.analysis = Some(analysis);
    Outcome {
        exit_code,
        human: out,
        report: Some(report),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Outcome {
    let input = try_input!(load(&args.input.file));
    let loaded = &input.loaded;
    let space = &loaded.space;
    let s = try_input!(loaded.self_map(&args.map));
    let t = match &args.aux {
        Some(name) => Some(try_input!(loaded.map(name))),
        None => None,
    };
    let Some(start) = space.index_of(&args.start) else {
        return Outcome::input_error(format!("--start: unknown point `{}`", args.start));
    };
    let lambda = match &args.check_bounds {
        Some(text) => {
            let l = try_input!(parse_lambda("check-bounds", text));
            if l.is_negative() || l >= Rational::half() {
                return Outcome::input_error(Error::LambdaOutOfRange(l));
            }
            Some(l)
        }
        None => None,
    };
    let traj = try_input!(picard(space, s, t, start, args.max_iter));
    let fixed_points = try_input!(fixed_points_exhaustive(space, s));
    let at_clamp = match (&loaded.realization, traj.fixed_point()) {
        (Some(r), Some(p)) => p.index == r.clamp,
        _ => false,
    };

    let mut out = String::new();
    let _ = writeln!(out, "trajectory: {traj}");
    let _ = writeln!(out, "iterations: {}", traj.iterations());
    if at_clamp {
        let _ = writeln!(
            out,
            "note: stopped at the truncation boundary, which S fixes only because of truncation"
        );
    }
    let fps: Vec<&str> = fixed_points
        .iter()
        .map(|c| c.point.label.as_str())
        .collect();
    let _ = writeln!(out, "fixed points of S: [{}]", fps.join(", "));

    let mut bounds_ok = true;
    let mut bounds = None;
    if let Some(l) = &lambda {
        let identity = AuxMap::identity(space.len());
        let aux = t.unwrap_or(&identity);
        if traj.steps.len() < 2 {
            let _ = writeln!(
                out,
                "bounds at lambda = {l}: vacuous (start point is fixed)"
            );
        } else {
            let rep = try_input!(verify_bounds(space, &traj, aux, l, DEFAULT_TAIL_WINDOW));
            bounds_ok = rep.all_hold;
            let status = if rep.all_hold {
                "all hold".to_string()
            } else {
                format!("FAILED, {}", rep.first_failure().unwrap_or_default())
            };
            let _ = writeln!(
                out,
                "bounds at lambda = {l} (factor {}): {} step checks, {} tail checks, {status}",
                rep.factor,
                rep.steps.len(),
                rep.tails.len()
            );
            bounds = Some(rep);
        }
    }
    let exit_code = if traj.fixed_point().is_some() && bounds_ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };

    let mut options = BTreeMap::from([
        ("map".to_string(), args.map.clone()),
        ("start".to_string(), args.start.clone()),
        ("max-iter".to_string(), args.max_iter.to_string()),
    ]);
    if let Some(a) = &args.aux {
        options.insert("aux".into(), a.clone());
    }
    if let Some(c) = &args.check_bounds {
        options.insert("check-bounds".into(), c.clone());
    }
    let mut report = report_for("solve", &input, options, exit_code);
    report.solve = Some(SolveSection {
        trajectory: traj,
        at_clamp,
        fixed_points,
        bounds,
    });
    Outcome {
        exit_code,
        human: out,
        report: Some(report),
    }
}

pub fn cmd_search_t(args: &SearchArgs) -> Outcome {
    let input = try_input!(load(&args.input.file));
    let loaded = &input.loaded;
    let space = &loaded.space;
    let s = try_input!(loaded.self_map(&args.map));
    let cap = try_input!(parse_lambda("lambda-cap", &args.lambda_cap));
    let search_space = match args.search {
        SearchSpaceArg::Permutations => SearchSpace::Permutations,
        SearchSpaceArg::Injections => SearchSpace::Injections,
    };
    let found = match search_certificate(space, s, &cap, search_space, args.budget) {
        Ok(found) => found,
        Err(e @ Error::SearchSpaceTooLarge { .. }) => {
            return Outcome {
                exit_code: EXIT_BUDGET,
                human: format!("error: {e}\n"),
                report: None,
            };
        }
        Err(e) => return Outcome::input_error(e),
    };

    let mut out = String::new();
    match &found {
        Some(c) => {
            let _ = writeln!(out, "certificate: T = {}", c.t.describe(space));
            let _ = writeln!(out, "lambda: {} (cap {cap})", c.lambda);
        }
        None => {
            let _ = writeln!(out, "no injective T reaches lambda <= {cap}");
        }
    }
    let mut candidates = Vec::new();
    for (name, map) in loaded.maps.iter().filter(|(name, _)| **name != args.map) {
        let injective = check_injective(space, map).injective;
        let verdict = try_input!(t_kannan_lambda(space, s, map, &ExcludedPairs::none()));
        let valid = injective && verdict.lambda_min.finite().is_some_and(|l| l <= cap);
        let _ = writeln!(
            out,
            "candidate {name}: injective {}, lambda {}, {}",
            if injective { "yes" } else { "no" },
            verdict.lambda_min,
            if valid {
                "valid certificate"
            } else {
                "not a certificate"
            }
        );
        candidates.push(CandidateCheck {
            name: name.clone(),
            injective,
            lambda: verdict.lambda_min,
            valid,
        });
    }
    let exit_code = if found.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };

    let options = BTreeMap::from([
        ("map".to_string(), args.map.clone()),
        ("lambda-cap".to_string(), args.lambda_cap.clone()),
        ("budget".to_string(), args.budget.to_string()),
    ]);
    let mut report = report_for("search-t", &input, options, exit_code);
    report.search = Some(SearchSection {
        lambda_cap: cap,
        certificate: found,
        candidates,
    });
    Outcome {
        exit_code,
        human: out,
        report: Some(report),
    }
}

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::Validate(a) => cmd_validate(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Solve(a) => cmd_solve(a),
        Command::SearchT(a) => cmd_search_t(a),
    }
}

fn report_path(command: &Command) -> Option<&Path> {
    let input = match command {
        Command::Validate(a) => &a.input,
        Command::Analyze(a) => &a.input,
        Command::Solve(a) => &a.input,
        Command::SearchT(a) => &a.input,
    };
    input.report.as_deref()
}

/// Runs a parsed command line: prints the human report to stdout, writes
/// the machine report if `--report` was given, and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = execute(&cli.command);
    if outcome.exit_code == EXIT_INPUT || outcome.exit_code == EXIT_BUDGET {
        eprint!("{}", outcome.human);
    } else {
        print!("{}", outcome.human);
    }
    if let (Some(path), Some(report)) = (report_path(&cli.command), &outcome.report) {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    outcome.exit_code
}
