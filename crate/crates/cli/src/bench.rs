use std::fmt::Write as _;
use std::time::Instant;

use sylow2_core::{run_chain_with, ChainOptions};

use crate::error::CliResult;
use crate::parallel::Workers;

#[derive(Clone, Debug, PartialEq)]
pub struct StepTiming {
    pub i: u32,
    pub log2_order: u32,
    pub millis: f64,
}

/// Runs the chain once, timing every normalizer step; step 0 is `U_n`
/// and costs nothing.
pub fn time_chain(n: u32, steps: Option<u32>, workers: &Workers) -> CliResult<Vec<StepTiming>> {
    let mut millis = vec![0.0];
    let options = ChainOptions { max_steps: steps, stop_at_full: true };
    let report = run_chain_with(n, options, |m| {
        let start = Instant::now();
        let outcome = workers.normalizing_step(m);
        millis.push(start.elapsed().as_secs_f64() * 1e3);
        outcome
    })?;
    Ok(report
        .steps
        .iter()
        .zip(millis)
        .map(|(s, millis)| StepTiming { i: s.i, log2_order: s.log2_order, millis })
        .collect())
}

pub fn render(n: u32, threads: usize, timings: &[StepTiming]) -> String {
    let mut out = format!("# n = {n}, workers = {threads}\ni,log2_order,millis\n");
    for t in timings {
        writeln!(out, "{},{},{:.3}", t.i, t.log2_order, t.millis).unwrap();
    }
    let total: f64 = timings.iter().map(|t| t.millis).sum();
    writeln!(out, "total,,{total:.3}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn times_every_step() {
        let workers = Workers::new(1).unwrap();
        let timings = time_chain(4, None, &workers).unwrap();
        assert_eq!(timings.iter().map(|t| t.i).collect::<Vec<_>>(), (0..timings.len() as u32).collect::<Vec<_>>());
        assert_eq!(timings.last().unwrap().log2_order, 15);
        let budget = time_chain(6, Some(2), &workers).unwrap();
        assert_eq!(budget.len(), 3);
        assert!(render(6, 1, &budget).starts_with("# n = 6, workers = 1\ni,log2_order,millis\n0,21,"));
    }
}
