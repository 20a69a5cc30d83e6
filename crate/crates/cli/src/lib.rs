//! Batch driver for the jumpfree toolkit.
//!
//! Every subcommand produces one JSON (or flat CSV) report. Exit status:
//! `0` when the property holds or a result was produced, `2` when the report
//! carries a `violation` object, `1` on usage or capacity errors.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use jumpfree::families::{
    build_universe, find_regressively_regular_witness, gen_family, FamilyKind, UniverseSpec,
};
use jumpfree::intsets::{build_fh, GammaTriple, Semantics};
use jumpfree::predicates::{is_full_over, is_jump_free_family, regressive_regularity};
use jumpfree::subsetsum::{run_corollary_experiment, solve_subset_sum, ExperimentOutcome, Method};
use jumpfree::tuples::enumerate_order_types;
use jumpfree::{IntFhSets, IntMultiset, NatCube, NatDomain, NatFamily, NatFunction};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "jumpfree",
    version,
    about = "Jump-free families, regressive regularity and target-zero subset sum"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: RunOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a rule family over the configured universe.
    Gen,
    /// Check every ordered pair of a family for a jump-free violation.
    CheckJumpfree,
    /// Check that a family covers every domain of the configured universe.
    CheckFull,
    /// Classify one function over one cube (`--input {"function":..,"cube":..}`).
    CheckRr,
    /// Search a family for a regressively regular (f, E) with |E| = p.
    Search,
    /// Build F and H for a found witness or an input function and cube.
    Sets,
    /// Solve target-zero subset sum on an input multiset.
    Solve,
    /// Witness search, F/H construction and subset-sum solves end to end.
    Experiment,
    /// List the order types of k-tuples.
    OrderTypes,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::CheckJumpfree => "check-jumpfree",
            Command::CheckFull => "check-full",
            Command::CheckRr => "check-rr",
            Command::Search => "search",
            Command::Sets => "sets",
            Command::Solve => "solve",
            Command::Experiment => "experiment",
            Command::OrderTypes => "order-types",
        }
    }

    fn theorem_level(self) -> bool {
        matches!(
            self,
            Command::CheckRr | Command::Search | Command::Sets | Command::Experiment
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunOptions {
    /// Tuple arity.
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,
    /// Cube length |E|.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: usize,
    /// Coordinates range over 0..grid.
    #[arg(long = "grid", global = true, default_value_t = 4)]
    pub grid: usize,
    /// Largest generated domain.
    #[arg(long = "max-domain", global = true, default_value_t = 8)]
    pub max_domain: usize,
    /// Number of seeded random domains.
    #[arg(long, global = true, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include every cube over the grid in the universe (default).
    #[arg(long = "cubes", global = true, overrides_with = "no_cubes")]
    #[serde(skip)]
    pub cubes: bool,
    #[arg(long = "no-cubes", global = true, overrides_with = "cubes")]
    #[serde(skip)]
    pub no_cubes: bool,
    #[arg(long, global = true, default_value = "max")]
    pub family: FamilyKind,
    /// Bijections for intervals 0, 1, 2 as `g0,g1,g2` (zigzag, zigzagNeg, shifted:<o>).
    #[arg(long, global = true, default_value = "zigzag,zigzag,zigzag")]
    pub gamma: GammaTriple,
    #[arg(long, global = true, default_value = "multiset")]
    pub semantics: Semantics,
    #[arg(long, global = true, default_value = "dp")]
    pub method: Method,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Family, universe, function+cube or multiset JSON, depending on the command.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
}

impl RunOptions {
    pub fn universe_spec(&self) -> UniverseSpec {
        UniverseSpec {
            k: self.k,
            grid_bound: self.grid,
            max_domain_size: self.max_domain,
            sample_count: self.samples,
            seed: self.seed,
            include_all_cubes: !self.no_cubes,
        }
    }

    fn config_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("options serialize");
        v["include_all_cubes"] = json!(!self.no_cubes);
        v
    }
}

/// A finished command: the report and the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    if opts.k < 1 {
        bail!("--k must be at least 1");
    }
    if cli.command.theorem_level() && (opts.k < 2 || opts.p < 2) {
        bail!(
            "{} requires --k >= 2 and --p >= 2 (got k = {}, p = {})",
            cli.command.name(),
            opts.k,
            opts.p
        );
    }
    let mut body = match cli.command {
        Command::Gen => cmd_gen(opts)?,
        Command::CheckJumpfree => cmd_check_jumpfree(opts)?,
        Command::CheckFull => cmd_check_full(opts)?,
        Command::CheckRr => cmd_check_rr(opts)?,
        Command::Search => cmd_search(opts)?,
        Command::Sets => cmd_sets(opts)?,
        Command::Solve => cmd_solve(opts)?,
        Command::Experiment => cmd_experiment(opts)?,
        Command::OrderTypes => cmd_order_types(opts),
    };
    body.entry("violation").or_insert(Value::Null);
    body.insert("command".into(), json!(cli.command.name()));
    body.insert("config".into(), opts.config_json());
    let exit_code = if body["violation"].is_null() { 0 } else { 2 };
    Ok(Outcome {
        report: Value::Object(body),
        exit_code,
    })
}

/// Renders a report in the requested format, newline terminated.
pub fn render(report: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => render_csv(report),
    }
}

/// Header and value rows of the top-level scalar fields; nested values are JSON-only.
fn render_csv(report: &Value) -> String {
    let Some(obj) = report.as_object() else {
        return String::new();
    };
    let scalars: Vec<(&String, String)> = obj
        .iter()
        .filter_map(|(k, v)| {
            let cell = match v {
                Value::Bool(b) => b.to_string(),
                Value::Number(n) => n.to_string(),
                Value::String(s) => csv_escape(s),
                Value::Null => String::new(),
                Value::Array(_) | Value::Object(_) => return None,
            };
            Some((k, cell))
        })
        .collect();
    let header: Vec<&str> = scalars.iter().map(|(k, _)| k.as_str()).collect();
    let row: Vec<&str> = scalars.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn require_input(opts: &RunOptions) -> Result<&Path> {
    opts.input
        .as_deref()
        .context("this command needs --input <file>")
}

/// Where a family came from, for the report.
fn family_source(opts: &RunOptions) -> Value {
    match &opts.input {
        Some(p) => json!(format!("input:{}", p.display())),
        None => json!("generated"),
    }
}

/// Loads the working family: a Family JSON (`{"k":..,"members":[..]}`), a
/// report holding one under `family`, or a list of domains to which the
/// `--family` rule is applied. Without `--input` the configured universe is used.
fn load_family(opts: &RunOptions) -> Result<NatFamily> {
    let universe = match &opts.input {
        None => build_universe::<u64>(&opts.universe_spec())?,
        Some(path) => {
            let value = read_json(path)?;
            if let Some(fam) = value.get("family") {
                return Ok(serde_json::from_value(fam.clone())?);
            }
            if value.get("members").is_some() {
                return Ok(serde_json::from_value(value)?);
            }
            serde_json::from_value::<Vec<NatDomain>>(value)
                .context("input is neither a family nor a list of domains")?
        }
    };
    Ok(gen_family(opts.family, &universe)?)
}

fn load_function_and_cube(opts: &RunOptions) -> Result<(NatFunction, NatCube)> {
    let value = read_json(require_input(opts)?)?;
    let f: NatFunction = serde_json::from_value(
        value
            .get("function")
            .cloned()
            .context("input needs a `function` field")?,
    )?;
    let cube: NatCube = serde_json::from_value(
        value
            .get("cube")
            .cloned()
            .context("input needs a `cube` field")?,
    )?;
    Ok((f, cube))
}

type Body = Map<String, Value>;

fn cmd_gen(opts: &RunOptions) -> Result<Body> {
    let fam = load_family(opts)?;
    let mut body = Body::new();
    body.insert("family_size".into(), json!(fam.len()));
    body.insert("family".into(), to_value(&fam));
    Ok(body)
}

fn cmd_check_jumpfree(opts: &RunOptions) -> Result<Body> {
    let fam = load_family(opts)?;
    let witness = is_jump_free_family(&fam);
    let mut body = Body::new();
    body.insert("family_source".into(), family_source(opts));
    body.insert("family_size".into(), json!(fam.len()));
    body.insert("jump_free".into(), json!(witness.is_none()));
    body.insert("violation".into(), to_value(&witness));
    Ok(body)
}

fn cmd_check_full(opts: &RunOptions) -> Result<Body> {
    let fam = load_family(opts)?;
    let spec = opts.universe_spec();
    let universe = build_universe::<u64>(&spec)?;
    let missing = is_full_over(&fam, &universe);
    let mut body = Body::new();
    body.insert("family_source".into(), family_source(opts));
    body.insert("family_size".into(), json!(fam.len()));
    body.insert(
        "universe".into(),
        json!({ "spec": spec, "size": universe.len() }),
    );
    body.insert("full".into(), json!(missing.is_none()));
    body.insert(
        "violation".into(),
        missing.map_or(Value::Null, |d| json!({ "missing_domain": d })),
    );
    Ok(body)
}

fn cmd_check_rr(opts: &RunOptions) -> Result<Body> {
    let (f, cube) = load_function_and_cube(opts)?;
    let report = regressive_regularity(&f, &cube)?;
    let violation = report.first_violation().map_or(
        Value::Null,
        |(ot, verdict)| json!({ "order_type": ot, "verdict": verdict }),
    );
    let mut body = Body::new();
    body.insert("function_id".into(), json!(f.id()));
    body.insert("cube".into(), to_value(&cube));
    body.insert("regular".into(), json!(report.overall));
    body.insert("report".into(), to_value(&report));
    body.insert("violation".into(), violation);
    Ok(body)
}

fn cmd_search(opts: &RunOptions) -> Result<Body> {
    let fam = load_family(opts)?;
    let (witness, stats) = find_regressively_regular_witness(&fam, opts.p)?;
    let mut body = Body::new();
    body.insert("family_source".into(), family_source(opts));
    body.insert("family_size".into(), json!(fam.len()));
    body.insert(
        "outcome".into(),
        json!(if witness.is_some() {
            "found"
        } else {
            "no_witness"
        }),
    );
    body.insert("witness".into(), to_value(&witness));
    body.insert("search_stats".into(), to_value(&stats));
    Ok(body)
}

fn cmd_sets(opts: &RunOptions) -> Result<Body> {
    let mut body = Body::new();
    let (f, cube) = match &opts.input {
        Some(_) => load_function_and_cube(opts)?,
        None => {
            let fam = load_family(opts)?;
            let (witness, stats) = find_regressively_regular_witness(&fam, opts.p)?;
            let Some(w) = witness else {
                body.insert("outcome".into(), json!("no_witness"));
                body.insert("search_stats".into(), to_value(&stats));
                return Ok(body);
            };
            let f = fam
                .get(&w.function_id)
                .expect("witness from family")
                .clone();
            (f, w.cube)
        }
    };
    let sets: IntFhSets = build_fh(&f, &cube, &opts.gamma, opts.semantics)?;
    body.insert("outcome".into(), json!("built"));
    body.insert("function_id".into(), json!(f.id()));
    body.insert("cube".into(), to_value(&cube));
    body.insert("fh_equal".into(), json!(sets.equal()));
    body.insert("size_F".into(), json!(sets.f.total_size()));
    body.insert("size_H".into(), json!(sets.h.total_size()));
    body.insert("interval_counts".into(), json!(sets.interval_counts));
    body.insert("F".into(), to_value(&sets.f));
    body.insert("H".into(), to_value(&sets.h));
    Ok(body)
}

fn cmd_solve(opts: &RunOptions) -> Result<Body> {
    let ms: IntMultiset = serde_json::from_value(read_json(require_input(opts)?)?)
        .context("input must be a multiset [[value, multiplicity], ...]")?;
    let cert = solve_subset_sum(&ms, opts.method)?;
    let mut body = Body::new();
    body.insert("size".into(), json!(ms.total_size()));
    body.insert("solvable".into(), json!(cert.is_some()));
    body.insert("certificate".into(), to_value(&cert));
    Ok(body)
}

fn cmd_experiment(opts: &RunOptions) -> Result<Body> {
    let fam = load_family(opts)?;
    let outcome: ExperimentOutcome<u64, i64> =
        run_corollary_experiment(&fam, opts.p, &opts.gamma, opts.method)?;
    let violation = match &outcome {
        ExperimentOutcome::Completed(rep)
            if !(rep.fh_equal && rep.agreement && rep.cardinality_ok) =>
        {
            json!({
                "fh_equal": rep.fh_equal,
                "agreement": rep.agreement,
                "cardinality_ok": rep.cardinality_ok,
            })
        }
        _ => Value::Null,
    };
    let Value::Object(mut body) = to_value(&outcome) else {
        unreachable!("experiment outcome serializes as an object")
    };
    body.insert("family_source".into(), family_source(opts));
    body.insert("family_size".into(), json!(fam.len()));
    body.insert("violation".into(), violation);
    Ok(body)
}

fn cmd_order_types(opts: &RunOptions) -> Body {
    let types = enumerate_order_types(opts.k);
    let mut body = Body::new();
    body.insert("k".into(), json!(opts.k));
    body.insert("count".into(), json!(types.len()));
    body.insert(
        "bound".into(),
        json!(u32::try_from(opts.k)
            .ok()
            .and_then(|k| opts.k.checked_pow(k))),
    );
    body.insert("order_types".into(), to_value(&types));
    body
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        let mut full = vec!["jumpfree"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap()
    }

    #[test]
    fn search_max_family_small_grid() {
        let out = run(&cli(&[
            "search", "--family", "max", "--k", "2", "--p", "2", "--grid", "3",
        ]))
        .unwrap();
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report["outcome"], "found");
        assert_eq!(out.report["witness"]["function_id"], "f0");
        assert_eq!(out.report["witness"]["cube"]["elements"], json!([0, 1]));
    }

    #[test]
    fn theorem_commands_need_k_and_p() {
        assert!(run(&cli(&["search", "--k", "1"])).is_err());
        assert!(run(&cli(&["experiment", "--p", "1"])).is_err());
        assert!(run(&cli(&["order-types", "--k", "1"])).is_ok());
        assert!(run(&cli(&["gen", "--k", "1"])).is_ok());
    }

    #[test]
    fn cubes_flags_toggle() {
        assert!(!cli(&["gen"]).opts.no_cubes);
        assert!(cli(&["gen", "--no-cubes"]).opts.no_cubes);
        assert!(!cli(&["gen", "--no-cubes", "--cubes"]).opts.no_cubes);
        let out = run(&cli(&["gen", "--no-cubes", "--samples", "3"])).unwrap();
        assert_eq!(out.report["family_size"], 3);
        assert_eq!(out.report["config"]["include_all_cubes"], false);
    }

    #[test]
    fn csv_flattens_scalars_only() {
        let out = run(&cli(&["order-types", "--k", "3", "--format", "csv"])).unwrap();
        let text = render(&out.report, OutputFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "bound,command,count,k,violation");
        assert_eq!(lines[1], "27,order-types,13,3,");
    }

    #[test]
    fn bad_gamma_rejected_by_parser() {
        let parsed = Cli::try_parse_from(["jumpfree", "sets", "--gamma", "zigzag,identity,zigzag"]);
        assert!(parsed.is_err());
    }
}
