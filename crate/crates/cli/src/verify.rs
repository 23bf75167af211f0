//! The `verify` check suite: mask commutators against permutations, the
//! translation group, the computed chain against the closed form, and an
//! optional exhaustive normalizer scan at `n = 3`.

use std::collections::BTreeSet;
use std::fmt;

use sylow2_core::chain::verify_theoretical;
use sylow2_core::perm::{brute_normalizer_in_sym, expand, group_elements, translation_checks, ScaleGuard};
use sylow2_core::saturated::normalizing_step;
use sylow2_core::{euler_table, u_set, ChainOptions, RigidCommutator, SaturatedSet, TreePermutation};

use crate::error::CliResult;
use crate::parallel::Workers;

/// Largest rank for the exhaustive commutator comparison.
pub const ORACLE_PAIR_RANK: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, outcome: Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        Self { name: name.into(), passed, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n: u32,
    pub sym_brute: bool,
    pub guard: ScaleGuard,
}

/// Every pair of rigid commutators at `rank`: the mask commutator expands
/// to the permutation commutator.
pub fn oracle_pairs(rank: u32, guard: &ScaleGuard) -> CliResult<Result<String, String>> {
    let all: Vec<RigidCommutator> = RigidCommutator::all(rank).chain([RigidCommutator::identity(rank)?]).collect();
    let perms = all.iter().map(|&c| expand(c, guard)).collect::<Result<Vec<_>, _>>()?;
    let index = |c: RigidCommutator| if c.is_identity() { all.len() - 1 } else { c.mask() as usize - 1 };
    for (x, px) in all.iter().zip(&perms) {
        for (y, py) in all.iter().zip(&perms) {
            let c = x.commutator(*y);
            if perms[index(c)] != px.commutator(py) {
                return Ok(Err(format!("[{x}, {y}] = {c} disagrees with the permutation commutator")));
            }
        }
    }
    Ok(Ok(format!("{} pairs at n = {rank}", all.len() * all.len())))
}

/// The subgroup generated by the expansions of `set`.
pub fn subgroup(set: &SaturatedSet, guard: &ScaleGuard) -> CliResult<BTreeSet<TreePermutation>> {
    let gens = set.iter().map(|c| expand(c, guard)).collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Ok([TreePermutation::identity(set.rank())?].into());
    }
    Ok(group_elements(&gens)?)
}

/// At `n = 3`: for each chain term `M`, `⟨normalizing_step(M)⟩` equals the
/// normalizer of `⟨M⟩` in `Sym(8)`, found by scanning all of `Sym(8)`.
pub fn sym_brute(terms: &[SaturatedSet], guard: &ScaleGuard) -> CliResult<Result<String, String>> {
    for (i, m) in terms.iter().enumerate() {
        guard.check_brute("exhaustive Sym(2^n) scan", m.rank())?;
        let brute: BTreeSet<_> = brute_normalizer_in_sym(&subgroup(m, guard)?, m.rank(), guard)?.into_iter().collect();
        let step = normalizing_step(m).into_saturated()?;
        let rigid = subgroup(&step, guard)?;
        if rigid != brute {
            return Ok(Err(format!(
                "term {i}: rigid normalizer has order {}, exhaustive scan found {}",
                rigid.len(),
                brute.len()
            )));
        }
    }
    Ok(Ok(format!("{} chain terms", terms.len())))
}

pub fn run_checks(options: &VerifyOptions, workers: &Workers) -> CliResult<Vec<Check>> {
    let VerifyOptions { n, sym_brute: brute, guard } = *options;
    let mut checks = Vec::new();

    let rank = n.min(ORACLE_PAIR_RANK);
    checks.push(Check::new("oracle equivalence", oracle_pairs(rank, &guard)?));

    let t = translation_checks(n, &guard)?;
    checks.push(Check::new(
        "translation group",
        if t.passed() {
            Ok(format!("regular elementary abelian of order 2^{n}"))
        } else {
            Err(format!("{t:?}"))
        },
    ));

    let u = u_set(n)?;
    let expected = n * (n + 1) / 2;
    checks.push(Check::new(
        "normalizer of T",
        if u.len() as u32 == expected {
            Ok(format!("|U_n| = {expected}"))
        } else {
            Err(format!("|U_n| = {}, expected {expected}", u.len()))
        },
    ));

    let report = workers.run_chain(n, ChainOptions::steps(n.saturating_sub(2)))?;
    let verdicts = verify_theoretical(&report)?;
    let mismatch = verdicts.iter().find(|v| !v.matches);
    checks.push(Check::new(
        "chain against closed form",
        match mismatch {
            None => Ok(format!("{} terms", verdicts.len())),
            Some(v) => {
                let show = |cs: &[RigidCommutator]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                Err(format!("term {}: unexpected {{{}}}, missing {{{}}}", v.i, show(&v.unexpected), show(&v.missing)))
            }
        },
    ));

    let a = euler_table(n + 2).a;
    let bad = report.steps.iter().skip(1).find(|s| u64::from(s.index_log2) != a[s.i as usize + 2]);
    checks.push(Check::new(
        "indices follow a_(i+2)",
        match bad {
            None => Ok(format!("{} indices", report.steps.len().saturating_sub(1))),
            Some(s) => Err(format!("log2 |N^{} : N^{}| = {}, expected {}", s.i, s.i - 1, s.index_log2, a[s.i as usize + 2])),
        },
    ));

    if brute {
        guard.check_brute("exhaustive Sym(2^n) scan", n)?;
        let full = workers.run_chain(n, ChainOptions::default())?;
        let terms = (0..full.steps.len() as u32)
            .map(|i| SaturatedSet::new(full.members_at(i).expect("recorded step")))
            .collect::<Result<Vec<_>, _>>()?;
        checks.push(Check::new("exhaustive normalizers", sym_brute(&terms, &guard)?));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_for_small_ranks() {
        let workers = Workers::new(1).unwrap();
        for n in 1..=5 {
            let options = VerifyOptions { n, sym_brute: false, guard: ScaleGuard::default() };
            let checks = run_checks(&options, &workers).unwrap();
            assert_eq!(checks.len(), 5);
            assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        }
    }

    #[test]
    fn brute_scan_at_rank_three() {
        let workers = Workers::new(1).unwrap();
        let options = VerifyOptions { n: 3, sym_brute: true, guard: ScaleGuard::default() };
        let checks = run_checks(&options, &workers).unwrap();
        let last = checks.last().unwrap();
        assert_eq!(last.name, "exhaustive normalizers");
        assert!(last.passed, "{last}");
    }

    #[test]
    fn brute_scan_is_refused_above_rank_three() {
        let workers = Workers::new(1).unwrap();
        let options = VerifyOptions { n: 4, sym_brute: true, guard: ScaleGuard::default() };
        assert_eq!(run_checks(&options, &workers).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn check_display() {
        let c = Check::new("x", Err("bad".into()));
        assert_eq!(c.to_string(), "FAIL x: bad");
    }
}
