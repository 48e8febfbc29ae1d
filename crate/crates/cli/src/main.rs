//! Command-line front end: instance generation, solving, mechanism runs,
//! truthfulness audits, and benchmark sweeps.
//!
//! Exit codes: 0 on success, 1 when an audit finds a violation, 2 on usage
//! or input errors.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pruneprice_core::audit::{
    acceptance_probabilities, audit_truthfulness, check_budget_feasibility,
    check_individual_rationality, monte_carlo, AuditReport,
};
use pruneprice_core::knapsack::{
    fractional_opt, integral_opt_with_limit, DEFAULT_ORACLE_LIMIT,
};
use pruneprice_core::mechanisms::{run_with_prune, MechanismKind};
use pruneprice_core::model::{
    gen_lower_bound, gen_random, parse_instance_with_bids, serialize_instance, RandomParams,
};
use pruneprice_core::pruning::prune;
use pruneprice_core::scalar::{format_decimal, format_scalar, int, parse_scalar, rat, Scalar};
use pruneprice_core::{BidProfile, Error, Instance};

/// Environment variable overriding the exact-knapsack size cap.
const ORACLE_LIMIT_VAR: &str = "PRUNEPRICE_ORACLE_LIMIT";

#[derive(Parser)]
#[command(name = "pruneprice", version, about = "Budget-feasible procurement auction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance (random or the tight lower-bound family)
    Gen(GenArgs),
    /// Print the fractional and exact knapsack optima of an instance
    Solve(SolveArgs),
    /// Run the pruning stage and print the surviving items
    Prune(PruneArgs),
    /// Run a mechanism and print winners, payments, and the ratio vs fopt
    Run(RunArgs),
    /// Audit truthfulness, individual rationality, and budget feasibility
    Audit(AuditArgs),
    /// Sweep instances and mechanisms into a CSV or JSON report
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of items to draw at random
    #[arg(long, conflicts_with = "lower_bound")]
    random: Option<usize>,
    /// Emit the three-item family with deterministic ratio 3 - eps/2
    #[arg(long)]
    lower_bound: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Budget, as a rational like 4 or 599/200
    #[arg(long, default_value = "1")]
    budget: String,
    /// Lower-bound parameter, strictly between 0 and 2
    #[arg(long, default_value = "1/100")]
    epsilon: String,
    /// Value range lo..hi for the random generator
    #[arg(long, default_value = "1/2..10")]
    values: String,
    /// Cost range lo..hi for the random generator (costs clamp to budget)
    #[arg(long, default_value = "0..5")]
    costs: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct PruneArgs {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    mechanism: MechanismKind,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON object of bids by item id, e.g. {"0": "1/2"}; defaults to the
    /// instance's bids field, then to truthful bids
    #[arg(long)]
    bids: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    mechanism: MechanismKind,
    #[arg(long)]
    instance: PathBuf,
    /// "all" or a comma-separated id list
    #[arg(long, default_value = "all")]
    agents: String,
    /// Comma-separated seed list; defaults to 0..16 for the randomized
    /// mechanism and to 0 otherwise
    #[arg(long)]
    seeds: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON config file; flags below override nothing when present
    #[arg(long, conflicts_with_all = ["instances", "files"])]
    config: Option<PathBuf>,
    /// Number of random instances to generate
    #[arg(long)]
    instances: Option<u64>,
    /// Instance files to load instead of generating
    #[arg(long, num_args = 1..)]
    files: Vec<PathBuf>,
    /// Maximum item count for generated instances
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "4")]
    budget: String,
    /// Comma-separated mechanism kinds
    #[arg(long, default_value = "first-warmup,second-warmup,deterministic,randomized")]
    kinds: String,
    /// Monte-Carlo trials per randomized row (0 disables the column)
    #[arg(long, default_value_t = 0)]
    trials: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    /// Add k-digit decimal columns next to the exact rationals
    #[arg(long)]
    decimal: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Prune(args) => cmd_prune(args),
        Command::Run(args) => cmd_run(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn oracle_limit() -> Result<usize, String> {
    match std::env::var(ORACLE_LIMIT_VAR) {
        Ok(text) => text
            .parse()
            .map_err(|_| format!("{ORACLE_LIMIT_VAR} must be an integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn parse_range(text: &str) -> Result<(Scalar, Scalar), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("range must look like lo..hi, got {text:?}"))?;
    Ok((
        parse_scalar(lo).map_err(|e| e.to_string())?,
        parse_scalar(hi).map_err(|e| e.to_string())?,
    ))
}

fn load_instance(path: &Path) -> Result<(Instance, Option<BidProfile>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let (instance, bids) = parse_instance_with_bids(&text).map_err(|e| e.to_string())?;
    let instance = instance.normalize().map_err(|e| e.to_string())?;
    Ok((instance, bids))
}

fn write_output(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            std::io::stdout().flush().map_err(|e| e.to_string())
        }
    }
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let budget = parse_scalar(&args.budget).map_err(|e| e.to_string())?;
    let (instance, bids) = if args.lower_bound {
        let epsilon = parse_scalar(&args.epsilon).map_err(|e| e.to_string())?;
        let (instance, _) = gen_lower_bound(&epsilon, &budget).map_err(|e| e.to_string())?;
        (instance, None)
    } else if let Some(n) = args.random {
        let params = RandomParams::new(
            n,
            args.seed,
            parse_range(&args.values)?,
            parse_range(&args.costs)?,
            budget,
        );
        (gen_random(&params).map_err(|e| e.to_string())?, None)
    } else {
        return Err("pass either --random <N> or --lower-bound".into());
    };
    let mut text = serialize_instance(&instance, bids.as_ref());
    text.push('\n');
    write_output(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let (instance, _) = load_instance(&args.instance)?;
    let fopt = fractional_opt(&instance).fopt;
    println!("fopt = {}", format_scalar(&fopt));
    match integral_opt_with_limit(&instance, oracle_limit()?) {
        Ok(sol) => {
            println!("opt = {}", format_scalar(&sol.opt));
            let chosen: Vec<String> = sol.chosen.iter().map(|id| id.to_string()).collect();
            println!("chosen = {}", chosen.join(" "));
        }
        Err(Error::OracleLimit { n, limit }) => {
            println!("opt = skipped ({n} items exceed the oracle limit {limit})");
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(ExitCode::SUCCESS)
}

fn effective_bids(instance: &Instance, from_file: Option<BidProfile>) -> BidProfile {
    from_file.unwrap_or_else(|| BidProfile::truthful(instance))
}

fn cmd_prune(args: PruneArgs) -> CmdResult {
    let (instance, file_bids) = load_instance(&args.instance)?;
    let bids = effective_bids(&instance, file_bids);
    let p = prune(&instance, &bids, &instance.budget).map_err(|e| e.to_string())?;
    println!("r = {}", format_scalar(&p.r));
    let kept: Vec<String> = p.kept.iter().map(|id| id.to_string()).collect();
    println!("kept = {}", kept.join(" "));
    println!("star = {}", p.star);
    let rest: Vec<String> = p.rest.iter().map(|id| id.to_string()).collect();
    println!("rest = {}", rest.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn read_bid_file(path: &Path) -> Result<BidProfile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| format!("malformed bid file: {e}"))?;
    let mut bids = BTreeMap::new();
    for (id, bid) in raw {
        let id: usize = id
            .parse()
            .map_err(|_| format!("bid key {id:?} is not an item id"))?;
        bids.insert(id, parse_scalar(&bid).map_err(|e| e.to_string())?);
    }
    BidProfile::new(bids).map_err(|e| e.to_string())
}

fn cmd_run(args: RunArgs) -> CmdResult {
    let (instance, file_bids) = load_instance(&args.instance)?;
    let bids = match args.bids {
        Some(path) => read_bid_file(&path)?,
        None => effective_bids(&instance, file_bids),
    };
    bids.check_covers(&instance).map_err(|e| e.to_string())?;
    let (_, outcome) = match run_with_prune(args.mechanism, &instance, &bids, args.seed) {
        Ok(pair) => pair,
        Err(Error::NoEligibleItems) => {
            println!("winners =");
            println!("alg = 0");
            println!("ratio_fopt = inf");
            return Ok(ExitCode::SUCCESS);
        }
        Err(e) => return Err(e.to_string()),
    };
    let winners: Vec<String> = outcome.winners.iter().map(|id| id.to_string()).collect();
    println!("winners = {}", winners.join(" "));
    for (id, payment) in &outcome.payments {
        println!("payment[{id}] = {}", format_scalar(payment));
    }
    println!("spent = {}", format_scalar(&outcome.total_payment()));
    println!("alg = {}", format_scalar(&outcome.value));
    let fopt = fractional_opt(&instance).fopt;
    if outcome.value == int(0) {
        println!("ratio_fopt = inf");
    } else {
        println!("ratio_fopt = {}", format_scalar(&(&fopt / &outcome.value)));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_id_list(text: &str, instance: &Instance) -> Result<Vec<usize>, String> {
    if text == "all" {
        return Ok(instance.items.iter().map(|it| it.id).collect());
    }
    text.split(',')
        .map(|part| {
            let id: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("bad agent id {part:?}"))?;
            if instance.item(id).is_none() {
                return Err(format!("agent {id} is not in the instance"));
            }
            Ok(id)
        })
        .collect()
}

fn parse_seed_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|part| part.trim().parse().map_err(|_| format!("bad seed {part:?}")))
        .collect()
}

fn cmd_audit(args: AuditArgs) -> CmdResult {
    let (instance, _) = load_instance(&args.instance)?;
    let agents = parse_id_list(&args.agents, &instance)?;
    let seeds = match args.seeds {
        Some(text) => parse_seed_list(&text)?,
        None if args.mechanism.is_randomized() => (0..16).collect(),
        None => vec![0],
    };

    let mut report = AuditReport::default();
    let truthful = BidProfile::truthful(&instance);
    for &seed in &seeds {
        let (_, outcome) = run_with_prune(args.mechanism, &instance, &truthful, seed)
            .map_err(|e| e.to_string())?;
        report.merge(check_individual_rationality(&outcome, &truthful));
        report.merge(check_budget_feasibility(&outcome, &instance.budget));
    }
    for &agent in &agents {
        let (agent_report, _) = audit_truthfulness(args.mechanism, &instance, agent, &[], &seeds)
            .map_err(|e| e.to_string())?;
        let status = if agent_report.passed() { "ok" } else { "FAIL" };
        println!("agent {agent}: {status} ({} checks)", agent_report.checked_points);
        report.merge(agent_report);
    }
    if report.passed() {
        println!("audit passed ({} checks)", report.checked_points);
        Ok(ExitCode::SUCCESS)
    } else {
        for v in &report.violations {
            match v.item {
                Some(id) => println!("violation [{}] item {id}: {}", v.check, v.witness),
                None => println!("violation [{}]: {}", v.check, v.witness),
            }
        }
        println!("audit failed ({} violations)", report.violations.len());
        Ok(ExitCode::from(1))
    }
}

#[derive(Clone, Serialize)]
struct ReportRow {
    instance: String,
    kind: String,
    fopt: String,
    /// Empty above the oracle size limit.
    opt: String,
    /// Outcome value, or the analytic expected value for randomized rows.
    alg: String,
    /// Monte-Carlo mean for randomized rows when trials > 0.
    mc_alg: String,
    ratio_fopt: String,
    ratio_opt: String,
    /// Total payment; empty for randomized rows (their spend is a random
    /// variable).
    spent: String,
    seed: String,
    note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    fopt_dec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alg_dec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_fopt_dec: Option<String>,
}

struct BenchPlan {
    instances: Vec<(String, Instance, u64)>,
    kinds: Vec<MechanismKind>,
    trials: u64,
    decimal: Option<usize>,
}

#[derive(serde::Deserialize)]
struct BenchConfigDoc {
    #[serde(default)]
    files: Vec<PathBuf>,
    #[serde(default)]
    instances: Option<u64>,
    #[serde(default = "default_n")]
    n: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_budget")]
    budget: String,
    kinds: Vec<String>,
    #[serde(default)]
    trials: u64,
    #[serde(default)]
    decimal: Option<usize>,
}

fn default_n() -> usize {
    8
}

fn default_budget() -> String {
    "4".into()
}

fn parse_kinds(parts: &[String]) -> Result<Vec<MechanismKind>, String> {
    if parts.is_empty() {
        return Err("at least one mechanism kind is required".into());
    }
    parts.iter().map(|p| p.trim().parse()).collect()
}

fn generated_instances(
    count: u64,
    n_max: usize,
    seed: u64,
    budget: &Scalar,
) -> Result<Vec<(String, Instance, u64)>, String> {
    (0..count)
        .map(|k| {
            let instance_seed = seed.wrapping_add(k);
            let params = RandomParams {
                n: 1 + (instance_seed % n_max.max(1) as u64) as usize,
                seed: instance_seed,
                value_range: (rat(1, 2), int(10)),
                cost_range: (int(0), int(5)),
                budget: budget.clone(),
                grid: 1000,
            };
            let instance = gen_random(&params)
                .and_then(|i| i.normalize())
                .map_err(|e| e.to_string())?;
            Ok((format!("gen-{instance_seed}"), instance, instance_seed))
        })
        .collect()
}

fn bench_plan(args: &BenchArgs) -> Result<BenchPlan, String> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let doc: BenchConfigDoc =
            serde_json::from_str(&text).map_err(|e| format!("malformed config: {e}"))?;
        let kinds = parse_kinds(&doc.kinds)?;
        let instances = if !doc.files.is_empty() {
            load_instance_files(&doc.files, doc.seed)?
        } else {
            let budget = parse_scalar(&doc.budget).map_err(|e| e.to_string())?;
            generated_instances(doc.instances.unwrap_or(0), doc.n, doc.seed, &budget)?
        };
        return Ok(BenchPlan { instances, kinds, trials: doc.trials, decimal: doc.decimal });
    }

    let kind_names: Vec<String> = args.kinds.split(',').map(|s| s.to_string()).collect();
    let kinds = parse_kinds(&kind_names)?;
    let instances = if !args.files.is_empty() {
        load_instance_files(&args.files, args.seed)?
    } else {
        let budget = parse_scalar(&args.budget).map_err(|e| e.to_string())?;
        generated_instances(args.instances.unwrap_or(0), args.n, args.seed, &budget)?
    };
    Ok(BenchPlan { instances, kinds, trials: args.trials, decimal: args.decimal })
}

fn load_instance_files(
    files: &[PathBuf],
    seed: u64,
) -> Result<Vec<(String, Instance, u64)>, String> {
    files
        .iter()
        .map(|path| {
            let (instance, _) = load_instance(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            Ok((name, instance, seed))
        })
        .collect()
}

fn bench_row(
    name: &str,
    instance: &Instance,
    kind: MechanismKind,
    seed: u64,
    trials: u64,
    limit: usize,
    decimal: Option<usize>,
) -> ReportRow {
    let mut row = ReportRow {
        instance: name.to_string(),
        kind: kind.name().to_string(),
        fopt: String::new(),
        opt: String::new(),
        alg: String::new(),
        mc_alg: String::new(),
        ratio_fopt: String::new(),
        ratio_opt: String::new(),
        spent: String::new(),
        seed: seed.to_string(),
        note: String::new(),
        fopt_dec: None,
        alg_dec: None,
        ratio_fopt_dec: None,
    };
    let fopt = fractional_opt(instance).fopt;
    row.fopt = format_scalar(&fopt);

    let opt = match integral_opt_with_limit(instance, limit) {
        Ok(sol) => {
            row.opt = format_scalar(&sol.opt);
            Some(sol.opt)
        }
        Err(Error::OracleLimit { .. }) => None,
        Err(e) => {
            row.note = e.to_string();
            None
        }
    };

    let bids = BidProfile::truthful(instance);
    let alg = if kind.is_randomized() {
        prune(instance, &bids, &instance.budget)
            .and_then(|p| acceptance_probabilities(&p, &bids, &instance.budget))
            .map(|probs| probs.expected_value)
    } else {
        run_with_prune(kind, instance, &bids, seed).map(|(_, outcome)| {
            row.spent = format_scalar(&outcome.total_payment());
            outcome.value
        })
    };
    let alg = match alg {
        Ok(alg) => alg,
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    };
    row.alg = format_scalar(&alg);

    if kind.is_randomized() && trials > 0 {
        match monte_carlo(kind, instance, trials, seed) {
            Ok(stats) => row.mc_alg = format_scalar(&stats.mean_value),
            Err(e) => row.note = e.to_string(),
        }
    }

    if alg == int(0) {
        row.ratio_fopt = "inf".into();
    } else {
        let ratio = &fopt / &alg;
        row.ratio_fopt = format_scalar(&ratio);
        if let Some(digits) = decimal {
            row.ratio_fopt_dec = Some(format_decimal(&ratio, digits));
        }
        if let Some(opt) = &opt {
            row.ratio_opt = format_scalar(&(opt / &alg));
        }
    }
    if let Some(digits) = decimal {
        row.fopt_dec = Some(format_decimal(&fopt, digits));
        if !row.alg.is_empty() {
            row.alg_dec = Some(format_decimal(&alg, digits));
        }
    }
    row
}

/// Maximum finite ratio per kind over the rows, as exact rationals.
fn max_ratios(rows: &[ReportRow], kinds: &[MechanismKind]) -> Vec<(String, String)> {
    kinds
        .iter()
        .map(|kind| {
            let mut max: Option<Scalar> = None;
            let mut infinite = false;
            for row in rows.iter().filter(|r| r.kind == kind.name()) {
                if row.ratio_fopt == "inf" {
                    infinite = true;
                } else if let Ok(value) = parse_scalar(&row.ratio_fopt) {
                    if max.as_ref().map_or(true, |m| value > *m) {
                        max = Some(value);
                    }
                }
            }
            let text = if infinite {
                "inf".to_string()
            } else {
                max.map(|m| format_scalar(&m)).unwrap_or_default()
            };
            (kind.name().to_string(), text)
        })
        .collect()
}

fn render_csv(rows: &[ReportRow], summary: &[(String, String)]) -> Result<String, String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let decimals = rows.first().map_or(false, |r| r.fopt_dec.is_some());
    let mut header = vec![
        "instance", "kind", "fopt", "opt", "alg", "mc_alg", "ratio_fopt", "ratio_opt",
        "spent", "seed", "note",
    ];
    if decimals {
        header.extend(["fopt_dec", "alg_dec", "ratio_fopt_dec"]);
    }
    writer.write_record(&header).map_err(|e| e.to_string())?;
    for row in rows {
        let mut record = vec![
            row.instance.clone(),
            row.kind.clone(),
            row.fopt.clone(),
            row.opt.clone(),
            row.alg.clone(),
            row.mc_alg.clone(),
            row.ratio_fopt.clone(),
            row.ratio_opt.clone(),
            row.spent.clone(),
            row.seed.clone(),
            row.note.clone(),
        ];
        if decimals {
            record.push(row.fopt_dec.clone().unwrap_or_default());
            record.push(row.alg_dec.clone().unwrap_or_default());
            record.push(row.ratio_fopt_dec.clone().unwrap_or_default());
        }
        writer.write_record(&record).map_err(|e| e.to_string())?;
    }
    for (kind, ratio) in summary {
        let mut record = vec![
            "max-ratio".to_string(),
            kind.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            ratio.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ];
        if decimals {
            record.extend([String::new(), String::new(), String::new()]);
        }
        writer.write_record(&record).map_err(|e| e.to_string())?;
    }
    String::from_utf8(writer.into_inner().map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())
}

fn render_json(rows: &[ReportRow], summary: &[(String, String)]) -> Result<String, String> {
    #[derive(Serialize)]
    struct Report<'a> {
        rows: &'a [ReportRow],
        max_ratio_fopt: BTreeMap<&'a str, &'a str>,
    }
    let max_ratio_fopt = summary
        .iter()
        .map(|(k, v)| (k.as_str(), v.as_str()))
        .collect();
    let mut text = serde_json::to_string_pretty(&Report { rows, max_ratio_fopt })
        .map_err(|e| e.to_string())?;
    text.push('\n');
    Ok(text)
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let plan = bench_plan(&args)?;
    let limit = oracle_limit()?;
    let mut rows = Vec::new();
    for (name, instance, seed) in &plan.instances {
        for &kind in &plan.kinds {
            rows.push(bench_row(name, instance, kind, *seed, plan.trials, limit, plan.decimal));
        }
    }
    let summary = max_ratios(&rows, &plan.kinds);
    let text = match args.format {
        ReportFormat::Csv => render_csv(&rows, &summary)?,
        ReportFormat::Json => render_json(&rows, &summary)?,
    };
    write_output(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
