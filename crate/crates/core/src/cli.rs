//! The `bcricket` command line: argument definitions, the four commands and
//! their table/json reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 verification
//! failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytical::moment_summary;
use crate::error::{Error, Result};
use crate::ingest::read_players;
use crate::metrics::{
    evaluate_player, rank_players, round_half_even, Evaluation, ReplacementConstants,
};
use crate::model::{BernoulliParams, InningsSpec, PlayerRecord, Role};
use crate::simulate::{run_ensemble_with_workers, DiePmf, Model, SimulationResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const TOOL: &str = "bcricket";

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Evaluate cricketers with the Bernoulli-trial innings model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean, sd and reward-to-risk ratio for every player in a CSV file, in file order.
    Evaluate(EvaluateArgs),
    /// Players from a CSV file ordered by reward-to-risk ratio.
    Rank(RankArgs),
    /// Monte Carlo ensemble for one player or a per-ball die.
    Simulate(SimulateArgs),
    /// Compare the exact mean with a Monte Carlo estimate.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct InningsArgs {
    /// Maximum deliveries per innings.
    #[arg(long, default_value_t = 300)]
    pub balls: u32,
    /// Wickets that end an innings.
    #[arg(long, default_value_t = 10)]
    pub wickets: u32,
}

impl InningsArgs {
    fn spec(&self) -> Result<InningsSpec> {
        InningsSpec::new(self.balls, self.wickets).map_err(|e| Error::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    /// Average ODI score the replacement baselines are scaled from.
    #[arg(long, default_value_t = ReplacementConstants::DL_AVERAGE)]
    pub dl_average: f64,
    /// How much worse than international level a replacement player is.
    #[arg(long, default_value_t = ReplacementConstants::SCALE)]
    pub scale: f64,
}

impl ConstantsArgs {
    fn constants(&self) -> ReplacementConstants {
        ReplacementConstants::from_dl_average(self.dl_average, self.scale)
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    /// CSV file with header `name,role,avg,rate`.
    pub path: PathBuf,
    #[command(flatten)]
    pub innings: InningsArgs,
    #[command(flatten)]
    pub constants: ConstantsArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub table: EvaluateArgs,
    /// Only rank players with this role.
    #[arg(long, value_parser = parse_role)]
    pub role: Option<Role>,
}

#[derive(Debug, Clone, Args)]
pub struct PlayerArgs {
    /// Career average.
    #[arg(long)]
    pub avg: Option<f64>,
    /// Strike rate (batsman) or economy rate (bowler).
    #[arg(long)]
    pub rate: Option<f64>,
    #[arg(long, value_parser = parse_role)]
    pub role: Option<Role>,
}

impl PlayerArgs {
    fn any(&self) -> bool {
        self.avg.is_some() || self.rate.is_some() || self.role.is_some()
    }

    fn record(&self) -> Result<PlayerRecord> {
        match (self.avg, self.rate, self.role) {
            (Some(avg), Some(rate), Some(role)) => PlayerRecord::new("player", role, avg, rate),
            _ => Err(Error::Usage(
                "--avg, --rate and --role must be given together".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub player: PlayerArgs,
    /// Inline die, e.g. `out:0.2,1:0.2,2:0.2,4:0.2,6:0.2`.
    #[arg(long)]
    pub pmf: Option<String>,
    /// File of `label = prob` lines describing the die.
    #[arg(long)]
    pub pmf_file: Option<PathBuf>,
    /// Number of innings.
    #[arg(long, default_value_t = 100_000)]
    pub n: u64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub innings: InningsArgs,
    /// Worker threads; 0 picks one per core. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub player: PlayerArgs,
    #[arg(long, default_value_t = 200_000)]
    pub n: u64,
    #[arg(long)]
    pub seed: u64,
    /// Allowed |simulated - exact| mean gap, in standard errors.
    #[arg(long, default_value_t = 4.0)]
    pub tolerance_sigmas: f64,
    #[command(flatten)]
    pub innings: InningsArgs,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn parse_role(s: &str) -> std::result::Result<Role, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub spec: InningsSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ReplacementConstants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Metadata {
    fn new(command: &'static str, spec: InningsSpec) -> Self {
        Metadata {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            spec,
            constants: None,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayerRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub name: String,
    pub role: Role,
    pub avg: f64,
    pub rate: f64,
    pub r: f64,
    pub q: f64,
    pub mean: f64,
    pub sd: f64,
    pub rrr: f64,
    pub expected_wickets: f64,
}

impl PlayerRow {
    fn new(eval: &Evaluation, rank: Option<usize>) -> Self {
        PlayerRow {
            rank,
            name: eval.player.name().to_string(),
            role: eval.player.role(),
            avg: eval.player.avg(),
            rate: eval.player.rate(),
            r: eval.params.r(),
            q: eval.params.q(),
            mean: eval.summary.mean,
            sd: eval.summary.sd,
            rrr: eval.rrr,
            expected_wickets: eval.expected_wickets,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationRow {
    pub model: String,
    #[serde(flatten)]
    pub result: SimulationResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRow {
    pub analytical_mean: f64,
    pub analytical_sd: f64,
    pub simulated_mean: f64,
    pub simulated_sd: f64,
    pub n: u64,
    pub seed: u64,
    /// Analytical sd over sqrt(n).
    pub standard_error: f64,
    pub tolerance_sigmas: f64,
    pub allowed_deviation: f64,
    pub mean_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Rows {
    Players(Vec<PlayerRow>),
    Simulations(Vec<SimulationRow>),
    Verification(Vec<VerificationRow>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Problem {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputReport {
    #[serde(skip)]
    pub format: Format,
    pub metadata: Metadata,
    pub rows: Rows,
    pub problems: Vec<Problem>,
}

impl OutputReport {
    pub fn exit_code(&self) -> i32 {
        match &self.rows {
            Rows::Verification(rows) if rows.iter().any(|r| !r.pass) => EXIT_VERIFY_FAILED,
            _ if !self.problems.is_empty() => EXIT_DATA,
            _ => EXIT_OK,
        }
    }

    pub fn render(&self) -> String {
        match self.format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("report serializes");
                out.push('\n');
                out
            }
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        match &self.rows {
            Rows::Players(rows) => players_table(&mut out, rows),
            Rows::Simulations(rows) => {
                for row in rows {
                    simulation_table(&mut out, row);
                }
            }
            Rows::Verification(rows) => {
                for row in rows {
                    verification_table(&mut out, row);
                }
            }
        }
        for p in &self.problems {
            match (&p.line, &p.name) {
                (Some(line), _) => writeln!(out, "warning: line {line}: {}", p.message),
                (None, Some(name)) => writeln!(out, "error: {name}: {}", p.message),
                (None, None) => writeln!(out, "error: {}", p.message),
            }
            .unwrap();
        }
        out
    }
}

fn d2(x: f64) -> String {
    format!("{:.2}", round_half_even(x, 2))
}

fn players_table(out: &mut String, rows: &[PlayerRow]) {
    let ranked = rows.iter().any(|r| r.rank.is_some());
    let width = rows
        .iter()
        .map(|r| r.name.chars().count())
        .max()
        .unwrap_or(0)
        .max(4);
    if ranked {
        write!(out, "{:>4}  ", "rank").unwrap();
    }
    writeln!(
        out,
        "{:<width$}  {:<7}  {:>7}  {:>7}  {:>7}  {:>6}  {:>6}",
        "name", "role", "avg", "rate", "mean", "sd", "rrr"
    )
    .unwrap();
    for r in rows {
        if let Some(rank) = r.rank {
            write!(out, "{rank:>4}  ").unwrap();
        }
        writeln!(
            out,
            "{:<width$}  {:<7}  {:>7}  {:>7}  {:>7}  {:>6}  {:>6}",
            r.name,
            r.role.as_str(),
            d2(r.avg),
            d2(r.rate),
            d2(r.mean),
            d2(r.sd),
            d2(r.rrr)
        )
        .unwrap();
    }
}

fn simulation_table(out: &mut String, row: &SimulationRow) {
    let r = &row.result;
    writeln!(out, "model         {}", row.model).unwrap();
    writeln!(out, "innings       {}", r.n_innings).unwrap();
    writeln!(out, "seed          {}", r.seed).unwrap();
    writeln!(out, "mean          {}", d2(r.mean)).unwrap();
    writeln!(out, "sd            {}", d2(r.sd)).unwrap();
    writeln!(out, "min           {}", d2(r.min)).unwrap();
    writeln!(out, "max           {}", d2(r.max)).unwrap();
    writeln!(out, "wickets mean  {}", d2(r.wickets_mean)).unwrap();
}

fn verification_table(out: &mut String, v: &VerificationRow) {
    writeln!(out, "{:<11}  {:>10}  {:>10}", "", "mean", "sd").unwrap();
    writeln!(
        out,
        "{:<11}  {:>10.4}  {:>10.4}",
        "analytical", v.analytical_mean, v.analytical_sd
    )
    .unwrap();
    writeln!(
        out,
        "{:<11}  {:>10.4}  {:>10.4}",
        "simulated", v.simulated_mean, v.simulated_sd
    )
    .unwrap();
    writeln!(
        out,
        "n = {}, seed = {}, standard error = {:.4}",
        v.n, v.seed, v.standard_error
    )
    .unwrap();
    writeln!(
        out,
        "|mean gap| = {:.4}, allowed = {} x {:.4} = {:.4}",
        v.mean_deviation, v.tolerance_sigmas, v.standard_error, v.allowed_deviation
    )
    .unwrap();
    writeln!(out, "{}", if v.pass { "PASS" } else { "FAIL" }).unwrap();
}

fn evaluation_problems(file: &crate::ingest::PlayerFile) -> Vec<Problem> {
    file.warnings
        .iter()
        .map(|w| Problem {
            line: Some(w.line),
            name: None,
            message: w.message.clone(),
        })
        .collect()
}

/// Every player in file order.
pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<OutputReport> {
    let spec = args.innings.spec()?;
    let constants = args.constants.constants();
    let file = read_players(&args.path)?;
    let mut problems = evaluation_problems(&file);
    let mut rows = Vec::with_capacity(file.records.len());
    for record in &file.records {
        match evaluate_player(record, &spec, &constants) {
            Ok(eval) => rows.push(PlayerRow::new(&eval, None)),
            Err(e) => problems.push(Problem {
                line: None,
                name: Some(record.name().to_string()),
                message: e.to_string(),
            }),
        }
    }
    let mut metadata = Metadata::new("evaluate", spec);
    metadata.constants = Some(constants);
    Ok(OutputReport {
        format: args.format,
        metadata,
        rows: Rows::Players(rows),
        problems,
    })
}

/// Players best first; `--role` keeps one role.
pub fn cmd_rank(args: &RankArgs) -> Result<OutputReport> {
    let table = &args.table;
    let spec = table.innings.spec()?;
    let constants = table.constants.constants();
    let file = read_players(&table.path)?;
    let records: Vec<_> = file
        .records
        .iter()
        .filter(|r| args.role.is_none_or(|role| r.role() == role))
        .cloned()
        .collect();
    let ranking = rank_players(&records, &spec, &constants)?;
    let mut problems = evaluation_problems(&file);
    problems.extend(ranking.skipped.iter().map(|s| Problem {
        line: None,
        name: Some(s.name.clone()),
        message: s.error.to_string(),
    }));
    let rows = ranking
        .evaluations
        .iter()
        .enumerate()
        .map(|(i, e)| PlayerRow::new(e, Some(i + 1)))
        .collect();
    let mut metadata = Metadata::new("rank", spec);
    metadata.constants = Some(constants);
    Ok(OutputReport {
        format: table.format,
        metadata,
        rows: Rows::Players(rows),
        problems,
    })
}

fn simulation_model(args: &SimulateArgs) -> Result<(Model, String)> {
    let given = [
        args.player.any(),
        args.pmf.is_some(),
        args.pmf_file.is_some(),
    ];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err(Error::Usage(
            "give exactly one of --avg/--rate/--role, --pmf or --pmf-file".into(),
        ));
    }
    if args.player.any() {
        let record = args.player.record()?;
        let params = record.bernoulli_params()?;
        let label = format!("bernoulli r={} q={}", params.r(), params.q());
        return Ok((Model::Bernoulli(params), label));
    }
    let pmf = match (&args.pmf, &args.pmf_file) {
        (Some(inline), _) => DiePmf::parse_inline(inline)?,
        (None, Some(path)) => {
            DiePmf::parse_block(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)?
        }
        (None, None) => unreachable!("checked above"),
    };
    let label = format!("die {pmf}");
    Ok((Model::Die(pmf), label))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<OutputReport> {
    let spec = args.innings.spec()?;
    let (model, label) = simulation_model(args)?;
    let result = run_ensemble_with_workers(&model, &spec, args.n, args.seed, args.workers)?;
    let mut metadata = Metadata::new("simulate", spec);
    metadata.seed = Some(args.seed);
    Ok(OutputReport {
        format: args.format,
        metadata,
        rows: Rows::Simulations(vec![SimulationRow {
            model: label,
            result,
        }]),
        problems: Vec::new(),
    })
}

/// Exact mean and sd against an `n`-innings ensemble. Passes iff the mean
/// gap is within `tolerance_sigmas` standard errors (`sd / sqrt(n)`).
pub fn cmd_verify(args: &VerifyArgs) -> Result<OutputReport> {
    let spec = args.innings.spec()?;
    if args.tolerance_sigmas.is_nan() || args.tolerance_sigmas < 0.0 {
        return Err(Error::Usage(
            "--tolerance-sigmas must be nonnegative".into(),
        ));
    }
    let params: BernoulliParams = args.player.record()?.bernoulli_params()?;
    let exact = moment_summary(&params, &spec)?;
    let sim = run_ensemble_with_workers(&params.into(), &spec, args.n, args.seed, args.workers)?;
    let standard_error = exact.sd / (args.n as f64).sqrt();
    let allowed_deviation = args.tolerance_sigmas * standard_error;
    let mean_deviation = (sim.mean - exact.mean).abs();
    let row = VerificationRow {
        analytical_mean: exact.mean,
        analytical_sd: exact.sd,
        simulated_mean: sim.mean,
        simulated_sd: sim.sd,
        n: args.n,
        seed: args.seed,
        standard_error,
        tolerance_sigmas: args.tolerance_sigmas,
        allowed_deviation,
        mean_deviation,
        pass: mean_deviation <= allowed_deviation,
    };
    let mut metadata = Metadata::new("verify", spec);
    metadata.seed = Some(args.seed);
    Ok(OutputReport {
        format: args.format,
        metadata,
        rows: Rows::Verification(vec![row]),
        problems: Vec::new(),
    })
}

pub fn run_command(command: &Command) -> Result<OutputReport> {
    match command {
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Rank(args) => cmd_rank(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::InvalidSpec(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

/// What a process running the CLI prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Invocation {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    match run_command(&cli.command) {
        Ok(report) => Invocation {
            stdout: report.render(),
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => Invocation {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: error_exit_code(&e),
        },
    }
}
