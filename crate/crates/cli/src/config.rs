use std::path::PathBuf;

use sylow2_core::perm::ScaleGuard;

use crate::error::{CliError, CliResult};
use crate::format::OutputFormat;

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "SYLOW2_JOBS";

/// Largest rank accepted by `chain` unless overridden.
pub const DEFAULT_CHAIN_LIMIT: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: u32,
    pub max_steps: Option<u32>,
    pub format: OutputFormat,
    pub guard: ScaleGuard,
    pub chain_limit: u32,
    /// Worker threads; `0` lets the pool pick.
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(n: u32) -> CliResult<Self> {
        if n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        Ok(Self {
            n,
            max_steps: None,
            format: OutputFormat::default(),
            guard: ScaleGuard::default(),
            chain_limit: DEFAULT_CHAIN_LIMIT,
            jobs: 0,
            out: None,
        })
    }

    pub fn check_chain_scale(&self) -> CliResult<()> {
        let limit = self.chain_limit.min(sylow2_core::saturated::MAX_SET_RANK);
        if self.n > limit {
            return Err(CliError::Scale(sylow2_core::Error::ScaleGuard {
                operation: "chain",
                rank: self.n,
                limit,
            }));
        }
        Ok(())
    }
}

/// Parses a worker count as given on the command line or in the environment.
pub fn parse_jobs(text: &str) -> Result<usize, String> {
    text.trim().parse::<usize>().map_err(|_| format!("invalid worker count {text:?}"))
}

/// The `--jobs` flag if given, else the environment variable, else `0`.
pub fn resolve_jobs(flag: Option<usize>) -> CliResult<usize> {
    if let Some(jobs) = flag {
        return Ok(jobs);
    }
    match std::env::var(JOBS_ENV) {
        Ok(text) => parse_jobs(&text).map_err(|e| CliError::Usage(format!("{JOBS_ENV}: {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(CliError::Usage(format!("{JOBS_ENV}: {e}"))),
    }
}

/// Parses `"a..b"` (inclusive) or a single rank.
pub fn parse_range(text: &str) -> Result<(u32, u32), String> {
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("invalid rank {s:?} in range {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (parse(lo)?, parse(hi)?)
        }
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("empty or invalid rank range {text:?}"));
    }
    Ok((lo, hi))
}
