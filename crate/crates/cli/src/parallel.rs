use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use sylow2_core::saturated::NormalizerOutcome;
use sylow2_core::{run_chain_with, ChainOptions, ChainReport, RigidCommutator, RigidSet, SaturatedSet};

use crate::error::{CliError, CliResult};

/// Candidates per work item in the normalizer scan.
const CHUNK: u64 = 1 << 10;

pub struct Workers {
    pool: ThreadPool,
}

impl Workers {
    /// `jobs = 0` uses one thread per available core.
    pub fn new(jobs: usize) -> CliResult<Self> {
        let pool = ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
        Ok(Self { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Same result as `saturated::normalizing_step`, scanning `R*` in parallel.
    pub fn normalizing_step(&self, m: &SaturatedSet) -> NormalizerOutcome {
        let n = m.rank();
        let members: Vec<RigidCommutator> = m.iter().collect();
        let set = m.as_set();
        let total = 1u64 << n;
        let accepted: Vec<RigidCommutator> = self.pool.install(|| {
            (0..total.div_ceil(CHUNK))
                .into_par_iter()
                .flat_map_iter(|chunk| {
                    let lo = (chunk * CHUNK).max(1);
                    let hi = ((chunk + 1) * CHUNK).min(total);
                    (lo..hi)
                        .map(move |mask| RigidCommutator::new(mask, n).expect("mask below 2^n"))
                        .filter(|&c| members.iter().all(|&x| set.contains_or_identity(c.commutator(x))))
                })
                .collect()
        });
        NormalizerOutcome::new(RigidSet::from_members(n, accepted).expect("rank already validated"))
    }

    pub fn run_chain(&self, n: u32, options: ChainOptions) -> CliResult<ChainReport> {
        Ok(run_chain_with(n, options, |m| self.normalizing_step(m))?)
    }
}
