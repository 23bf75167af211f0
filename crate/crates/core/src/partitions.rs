//! Partitions into at least two distinct parts and the generator sets of
//! the normalizer chain they describe.
//!
//! `b_j` counts partitions of `j` into at least two distinct parts and
//! `a_j = b_0 + ... + b_j`. For `1 <= i <= n - 2` the chain index
//! `log₂|N^i : N^{i-1}|` equals `a_{i+2}`.

use alloc::vec::Vec;

use crate::chain::u_set;
use crate::error::{Error, Result};
use crate::rigid::{PuncturedForm, RigidCommutator};
use crate::saturated::{RigidSet, SaturatedSet};

/// Strictly decreasing partitions of `total` with every part `<= max_part`,
/// largest part descending.
fn distinct_partitions_bounded(total: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        // parts below `largest` are distinct and < largest, so they sum to at
        // most largest * (largest - 1) / 2
        for largest in (1..=max_part.min(rest)).rev() {
            let tail = rest - largest;
            if u64::from(tail) > u64::from(largest) * u64::from(largest - 1) / 2 {
                break;
            }
            prefix.push(largest);
            go(tail, largest - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `j` into at least two distinct parts, each a strictly
/// decreasing list.
pub fn distinct_partitions_ge2(j: u32) -> Vec<Vec<u32>> {
    distinct_partitions_bounded(j, j.saturating_sub(1))
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect()
}

/// Counts of partitions into distinct parts (any number of parts, the empty
/// partition of 0 included) for `0..=max_j`, by the 0/1 knapsack recurrence.
fn distinct_partition_counts(max_j: usize) -> Vec<u64> {
    let mut q = alloc::vec![0u64; max_j + 1];
    q[0] = 1;
    for part in 1..=max_j {
        for total in (part..=max_j).rev() {
            q[total] += q[total - part];
        }
    }
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    /// `b_j` for `j = 0..=max_j`.
    pub b: Vec<u64>,
    /// `a_j = Σ_{k <= j} b_k`.
    pub a: Vec<u64>,
}

impl PartitionTable {
    pub fn max_j(&self) -> usize {
        self.b.len() - 1
    }
}

pub fn euler_table(max_j: u32) -> PartitionTable {
    let q = distinct_partition_counts(max_j as usize);
    // drop the single-part partition (and the empty one at j = 0)
    let b: Vec<u64> = q.iter().map(|&c| c.saturating_sub(1)).collect();
    let a = b
        .iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    PartitionTable { b, a }
}

/// `W_{i,j}`: the punctured commutators `i↑I` with `I ⊆ {1, ..., i-1}`,
/// `|I| >= 2` and `ΣI = j`, in proper order.
pub fn w_family(i: u32, j: u32, n: u32) -> Result<Vec<RigidCommutator>> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let mut out = distinct_partitions_bounded(j, i - 1)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .map(|p| RigidCommutator::from_punctured(PuncturedForm::from_indices(i, &p)?, n))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn check_theorem_range(n: u32, i: u32) -> Result<()> {
    if i > 0 && i + 2 > n {
        return Err(Error::OutOfTheoremRange { n, i });
    }
    Ok(())
}

/// `𝒩_n^i` by the recursion `𝒩^i = 𝒩^{i-1} ∪ ⋃_{j=1}^{i} W_{n+j-i, j+2}`,
/// starting from `𝒩^0 = 𝒰_n`. Defined for `0 <= i <= n - 2`.
pub fn theoretical_n(n: u32, i: u32) -> Result<SaturatedSet> {
    check_theorem_range(n, i)?;
    let mut set = u_set(n)?.into_set();
    for step in 1..=i {
        for j in 1..=step {
            for c in w_family(n + j - step, j + 2, n)? {
                set.insert(c);
            }
        }
    }
    SaturatedSet::new(set)
}

/// `𝒩_n^i` by direct membership: `a↑J` belongs when `|J| <= 1`, or when
/// `|J| >= 2` and `ΣJ <= i + 2 - (n - a)`.
pub fn theoretical_n_closed_form(n: u32, i: u32) -> Result<SaturatedSet> {
    check_theorem_range(n, i)?;
    let bound = i64::from(i) + 2 - i64::from(n);
    let members = RigidCommutator::all(n).filter(|c| {
        let p = c.to_punctured().expect("non-trivial");
        p.punctures().count_ones() <= 1 || i64::from(p.puncture_sum()) <= bound + i64::from(p.base())
    });
    SaturatedSet::new(RigidSet::from_members(n, members)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partitions() {
        assert_eq!(distinct_partitions_ge2(5), [[4, 1], [3, 2]]);
        assert!(distinct_partitions_ge2(2).is_empty());
        assert!(distinct_partitions_ge2(0).is_empty());
        assert_eq!(distinct_partitions_ge2(9).len(), 7);
        assert_eq!(distinct_partitions_ge2(6), alloc::vec![alloc::vec![5, 1], alloc::vec![4, 2], alloc::vec![3, 2, 1]]);
    }

    #[test]
    fn euler_table_values() {
        let t = euler_table(14);
        assert_eq!(t.b, [0, 0, 0, 1, 1, 2, 3, 4, 5, 7, 9, 11, 14, 17, 21]);
        assert_eq!(t.a, [0, 0, 0, 1, 2, 4, 7, 11, 16, 23, 32, 43, 57, 74, 95]);
        assert_eq!(t.max_j(), 14);
        assert_eq!(euler_table(0).b, [0]);
    }

    #[test]
    fn counts_match_enumeration() {
        let t = euler_table(40);
        for j in 0..=40 {
            assert_eq!(t.b[j] as usize, distinct_partitions_ge2(j as u32).len(), "j = {j}");
        }
    }

    #[test]
    fn w_examples() {
        let p = |b, i: &[u32]| RigidCommutator::from_punctured(PuncturedForm::from_indices(b, i).unwrap(), 6).unwrap();
        let w = w_family(6, 5, 6).unwrap();
        let mut expected = alloc::vec![p(6, &[4, 1]), p(6, &[3, 2])];
        expected.sort();
        assert_eq!(w, expected);
        for i in 1..=6 {
            assert!(w_family(i, 2, 6).unwrap().is_empty());
        }
        // parts are capped at i - 1
        assert_eq!(w_family(3, 3, 6).unwrap(), [p(3, &[2, 1])]);
        assert!(w_family(3, 4, 6).unwrap().is_empty());
        assert!(w_family(7, 3, 6).is_err());
    }

    #[test]
    fn w_sizes_match_b_below_the_diagonal() {
        let t = euler_table(20);
        for i in 1..=12u32 {
            for j in 0..=i.saturating_sub(2) {
                assert_eq!(w_family(i, j, 12).unwrap().len() as u64, t.b[j as usize], "i = {i}, j = {j}");
            }
        }
    }

    #[test]
    fn theoretical_examples() {
        let p = |b, i: &[u32]| RigidCommutator::from_punctured(PuncturedForm::from_indices(b, i).unwrap(), 6).unwrap();
        let n0 = theoretical_n(6, 0).unwrap();
        assert_eq!(n0, u_set(6).unwrap());
        let n1 = theoretical_n(6, 1).unwrap();
        assert_eq!(n1.as_set().difference(n0.as_set()).collect::<Vec<_>>(), [p(6, &[2, 1])]);
        let n2 = theoretical_n(6, 2).unwrap();
        assert_eq!(n2.as_set().difference(n1.as_set()).collect::<Vec<_>>(), [p(5, &[2, 1]), p(6, &[3, 1])]);
        assert_eq!(theoretical_n(6, 5), Err(Error::OutOfTheoremRange { n: 6, i: 5 }));
        assert_eq!(theoretical_n(1, 0).unwrap(), u_set(1).unwrap());
    }

    #[test]
    fn recursion_and_closed_form_agree() {
        for n in 2..=10 {
            for i in 0..=n - 2 {
                assert_eq!(theoretical_n(n, i).unwrap(), theoretical_n_closed_form(n, i).unwrap(), "n = {n}, i = {i}");
            }
        }
    }
}
