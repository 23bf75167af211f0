//! Command-line arguments and subcommand dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use sylow2_core::perm::{expand, ScaleGuard};
use sylow2_core::rigid::Expr;
use sylow2_core::saturated::normal_closure;
use sylow2_core::{ChainOptions, Factorizer};

use crate::config::{parse_jobs, parse_range, resolve_jobs, RunConfig, DEFAULT_CHAIN_LIMIT};
use crate::error::{CliError, CliResult};
use crate::format::{self, OutputFormat};
use crate::parallel::Workers;
use crate::verify::{run_checks, VerifyOptions};
use crate::{bench, serial};

/// Default step budget for a range of ranks.
pub const DEFAULT_RANGE_STEPS: u32 = 14;

#[derive(Debug, Parser)]
#[command(name = "sylow2", version, about = "Normalizer chains in the Sylow 2-subgroup of Sym(2^n)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Worker threads for normalizer scans (0 = one per core); overrides
    /// the SYLOW2_JOBS environment variable.
    #[arg(long, global = true, value_parser = parse_jobs)]
    pub jobs: Option<usize>,
    /// Largest rank for permutation expansions and factorization.
    #[arg(long, global = true, default_value_t = ScaleGuard::default().oracle_rank)]
    pub oracle_limit: u32,
    /// Largest rank for chain computations.
    #[arg(long, global = true, default_value_t = DEFAULT_CHAIN_LIMIT)]
    pub chain_limit: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the normalizer chain for one rank or the index matrix for a range.
    Chain(ChainArgs),
    /// Check the rigid calculus against permutations and the closed form.
    Verify(VerifyArgs),
    /// Evaluate a commutator expression such as "[[6,5,4,3],[2,1]]" or "6^{2,1}".
    Eval(EvalArgs),
    /// Print the partition counts b_j and their partial sums a_j.
    Euler(EulerArgs),
    /// Normal closure of one saturated set in another.
    Closure(ClosureArgs),
    /// Factor a permutation over the rigid commutators.
    Factorize(FactorizeArgs),
    /// Time each normalizer step of a chain.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("ranks").required(true).args(["n", "n_range"])))]
pub struct ChainArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Inclusive range of ranks, e.g. "3..15".
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<(u32, u32)>,
    /// Largest step to compute (14 by default for a range).
    #[arg(long)]
    pub steps: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: u32,
    /// Also compare with an exhaustive scan of Sym(2^n) (n <= 3).
    #[arg(long)]
    pub sym_brute: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub expr: String,
    /// Rank; defaults to the largest index in the expression.
    #[arg(long)]
    pub n: Option<u32>,
    /// Also print the permutation in cycle notation.
    #[arg(long)]
    pub perm: bool,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    #[arg(long, default_value_t = 14)]
    pub max_j: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Saturated set to close.
    #[arg(long)]
    pub set: PathBuf,
    /// Saturated set containing it.
    #[arg(long)]
    pub within: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    /// Permutation file: JSON images or cycle notation.
    #[arg(long)]
    pub input: PathBuf,
    /// Rank, required for cycle notation.
    #[arg(long)]
    pub n: Option<u32>,
    /// Saturated set to test membership against.
    #[arg(long)]
    pub set: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub steps: Option<u32>,
}

impl GlobalArgs {
    fn guard(&self) -> ScaleGuard {
        ScaleGuard { oracle_rank: self.oracle_limit, ..ScaleGuard::default() }
    }

    fn config(&self, n: u32) -> CliResult<RunConfig> {
        let mut config = RunConfig::new(n)?;
        config.guard = self.guard();
        config.chain_limit = self.chain_limit;
        config.jobs = resolve_jobs(self.jobs)?;
        Ok(config)
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(path) => serial::write(path, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn line(out: &mut dyn Write, text: &str) -> CliResult<()> {
    emit(out, None, &format!("{text}\n"))
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let global = &cli.global;
    match &cli.command {
        Command::Chain(args) => chain(global, args, out),
        Command::Verify(args) => {
            let config = global.config(args.n)?;
            config.check_chain_scale()?;
            let workers = Workers::new(config.jobs)?;
            let options = VerifyOptions { n: args.n, sym_brute: args.sym_brute, guard: config.guard };
            let checks = run_checks(&options, &workers)?;
            for check in &checks {
                line(out, &check.to_string())?;
            }
            match checks.iter().find(|c| !c.passed) {
                Some(failed) => Err(CliError::VerifyFailed(format!("{}: {}", failed.name, failed.detail))),
                None => Ok(()),
            }
        }
        Command::Eval(args) => {
            let expr: Expr = args.expr.parse().map_err(|e| CliError::Parse(format!("{:?}: {e}", args.expr)))?;
            let n = args.n.unwrap_or(expr.max_index().max(1));
            let value = expr.eval(n).map_err(|e| match CliError::from(e) {
                CliError::Core(e) => CliError::Usage(e.to_string()),
                other => other,
            })?;
            line(out, &value.to_string())?;
            if args.perm {
                line(out, &expand(value, &global.guard())?.to_string())?;
            }
            Ok(())
        }
        Command::Euler(args) => {
            let table = sylow2_core::euler_table(args.max_j);
            emit(out, args.out.as_ref(), &format::euler_table(&table, args.format))
        }
        Command::Closure(args) => {
            let a = serial::read_saturated(&args.set)?;
            let b = serial::read_saturated(&args.within)?;
            if a.rank() != b.rank() {
                return Err(CliError::Usage(format!("rank mismatch: {} vs {}", a.rank(), b.rank())));
            }
            let closure = normal_closure(&a, &b).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(out, args.out.as_ref(), &serial::set_to_json(closure.as_set()))
        }
        Command::Factorize(args) => {
            let g = serial::parse_permutation(&serial::read(&args.input)?, args.n)?;
            let factorizer = Factorizer::new(g.rank(), &global.guard())?;
            let f = factorizer.factorize(&g)?;
            line(out, &f.to_string())?;
            if let Some(path) = &args.set {
                let m = serial::read_saturated(path)?;
                let (_, member) = factorizer.factorize_in(&g, &m)?;
                line(out, &format!("member: {member}"))?;
            }
            Ok(())
        }
        Command::Bench(args) => {
            let config = global.config(args.n)?;
            config.check_chain_scale()?;
            let workers = Workers::new(config.jobs)?;
            let timings = bench::time_chain(args.n, args.steps, &workers)?;
            emit(out, None, &bench::render(args.n, workers.threads(), &timings))
        }
    }
}

fn chain(global: &GlobalArgs, args: &ChainArgs, out: &mut dyn Write) -> CliResult<()> {
    let workers = Workers::new(resolve_jobs(global.jobs)?)?;
    if let Some(n) = args.n {
        let mut config = global.config(n)?;
        config.max_steps = args.steps;
        config.format = args.format;
        config.out = args.out.clone();
        config.check_chain_scale()?;
        let options = ChainOptions { max_steps: config.max_steps, stop_at_full: true };
        let report = workers.run_chain(n, options)?;
        return emit(out, config.out.as_ref(), &format::chain_table(&report, config.format));
    }
    let (lo, hi) = args.n_range.expect("clap requires --n or --n-range");
    let steps = args.steps.unwrap_or(DEFAULT_RANGE_STEPS);
    for n in lo..=hi {
        global.config(n)?.check_chain_scale()?;
    }
    let rows = (lo..=hi)
        .map(|n| Ok((n, workers.run_chain(n, ChainOptions::steps(steps))?.index_row(steps))))
        .collect::<CliResult<Vec<_>>>()?;
    emit(out, args.out.as_ref(), &format::index_matrix(&rows, steps, args.format))
}
