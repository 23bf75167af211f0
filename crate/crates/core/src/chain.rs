//! The normalizer chain `N^0 = U_n`, `N^i = N_{Σ_n}(N^{i-1})`.
//!
//! Each term is computed with the generic saturated normalizer step; the
//! closed form from [`crate::partitions`] is only used to check the result.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partitions::theoretical_n;
use crate::rigid::RigidCommutator;
use crate::saturated::{normalizing_step, NormalizerOutcome, RigidSet, SaturatedSet};

/// `{t_1, ..., t_n}` with `t_i = [i, i-1, ..., 1]`.
pub fn translation_set(rank: u32) -> Result<SaturatedSet> {
    let members = (1..=rank).map(|i| RigidCommutator::translation(i, rank)).collect::<Result<Vec<_>>>()?;
    SaturatedSet::new(RigidSet::from_members(rank, members)?)
}

/// `𝒰_n`: the `t_i` together with every `u_{ij}`, `1 <= j < i <= n`.
pub fn u_set(rank: u32) -> Result<SaturatedSet> {
    let mut set = translation_set(rank)?.into_set();
    for i in 2..=rank {
        for j in 1..i {
            set.insert(RigidCommutator::u(i, j, rank)?);
        }
    }
    SaturatedSet::new(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainOptions {
    /// Largest step index `i` to compute; `None` means `2^n`.
    pub max_steps: Option<u32>,
    /// Stop as soon as a term equals `Σ_n`.
    pub stop_at_full: bool,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self { max_steps: None, stop_at_full: true }
    }
}

impl ChainOptions {
    pub fn steps(max_steps: u32) -> Self {
        Self { max_steps: Some(max_steps), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub i: u32,
    pub log2_order: u32,
    /// `log₂|N^i : N^{i-1}|`; for `i = 0` this is `log₂|N^0 : T|`.
    pub index_log2: u32,
    /// `dim(N^i ∩ S_j)` for `j = 1..=n` (index `j - 1`).
    pub level_dims: Vec<u32>,
    /// Members of `N^i` not in `N^{i-1}` (not in `T` for `i = 0`), in proper order.
    pub new_members: Vec<RigidCommutator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// `N^step = Σ_n`.
    FullGroup { step: u32 },
    /// The step budget ran out first.
    Budget { step: u32 },
    /// A proper term normalized only itself; cannot happen in a finite
    /// 2-group but is reported rather than looped on.
    Stalled { step: u32 },
}

impl Termination {
    pub fn step(&self) -> u32 {
        match *self {
            Termination::FullGroup { step } | Termination::Budget { step } | Termination::Stalled { step } => step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub n: u32,
    pub steps: Vec<ChainStep>,
    pub terminated_at: Termination,
}

impl ChainReport {
    /// The member set of `N^i`, rebuilt from the recorded increments.
    pub fn members_at(&self, i: u32) -> Option<RigidSet> {
        if i as usize >= self.steps.len() {
            return None;
        }
        let mut set = translation_set(self.n).ok()?.into_set();
        for step in &self.steps[..=i as usize] {
            for &c in &step.new_members {
                set.insert(c);
            }
        }
        Some(set)
    }

    /// `log₂|N^i : N^{i-1}|` for `i = 1..=steps`, zero past the end of the chain.
    pub fn index_row(&self, steps: u32) -> Vec<u32> {
        (1..=steps)
            .map(|i| self.steps.get(i as usize).map_or(0, |s| s.index_log2))
            .collect()
    }
}

/// Runs the chain with [`normalizing_step`].
pub fn run_chain(n: u32, options: ChainOptions) -> Result<ChainReport> {
    run_chain_with(n, options, normalizing_step)
}

/// Runs the chain with a caller-supplied normalizer step, e.g. a parallel one.
pub fn run_chain_with<F>(n: u32, options: ChainOptions, mut step: F) -> Result<ChainReport>
where
    F: FnMut(&SaturatedSet) -> NormalizerOutcome,
{
    let t = translation_set(n)?;
    let mut current = u_set(n)?;
    let max_steps = options.max_steps.unwrap_or_else(|| 1u32.checked_shl(n).unwrap_or(u32::MAX));
    let mut steps = alloc::vec![record(0, &current, &t)];

    let terminated_at = loop {
        let i = steps.len() as u32 - 1;
        if options.stop_at_full && current.as_set().is_full() {
            break Termination::FullGroup { step: i };
        }
        if i >= max_steps {
            break Termination::Budget { step: i };
        }
        let next = step(&current).into_saturated()?;
        if !current.is_subset_of(&next) {
            return Err(Error::NotASubset);
        }
        if next == current && !next.as_set().is_full() {
            break Termination::Stalled { step: i };
        }
        steps.push(record(i + 1, &next, &current));
        current = next;
    };
    Ok(ChainReport { n, steps, terminated_at })
}

fn record(i: u32, term: &SaturatedSet, previous: &SaturatedSet) -> ChainStep {
    ChainStep {
        i,
        log2_order: term.log2_order(),
        index_log2: term.log2_order() - previous.log2_order(),
        level_dims: term.level_dims(),
        new_members: term.as_set().difference(previous.as_set()).collect(),
    }
}

/// Per-step comparison with the closed-form generator sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepVerdict {
    pub i: u32,
    pub matches: bool,
    /// Computed but not predicted.
    pub unexpected: Vec<RigidCommutator>,
    /// Predicted but not computed.
    pub missing: Vec<RigidCommutator>,
}

/// Compares every computed term `0 <= i <= n - 2` with [`theoretical_n`].
pub fn verify_theoretical(report: &ChainReport) -> Result<Vec<StepVerdict>> {
    let n = report.n;
    let last = n.saturating_sub(2).min(report.steps.len() as u32 - 1);
    if n < 2 {
        return Ok(Vec::new());
    }
    (0..=last)
        .map(|i| {
            let computed = report.members_at(i).ok_or(Error::OutOfTheoremRange { n, i })?;
            let predicted = theoretical_n(n, i)?;
            let unexpected: Vec<_> = computed.difference(predicted.as_set()).collect();
            let missing: Vec<_> = predicted.as_set().difference(&computed).collect();
            Ok(StepVerdict { i, matches: unexpected.is_empty() && missing.is_empty(), unexpected, missing })
        })
        .collect()
}
