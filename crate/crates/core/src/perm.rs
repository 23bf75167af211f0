//! Explicit permutations of the `2^n` leaves, the ground truth for the rigid
//! calculus.
//!
//! Points are `1..=2^n` at the interface and `0..2^n` internally. The word
//! `w_1 ... w_n` is the point `1 + Σ 2^(n-i) w_i`, so letter `i` sits at bit
//! `n - i` of the internal index. Permutations act on the right: in
//! `p.compose(&q)` the permutation `p` is applied first.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rigid::RigidCommutator;

/// Hard cap on the rank of an explicit permutation (`2^24` points).
pub const MAX_PERM_RANK: u32 = 24;

/// Desk-scale limits for oracle computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleGuard {
    /// Largest rank for expansions, exhaustive checks and factorization.
    pub oracle_rank: u32,
    /// Largest rank for scans of the whole of `Sym(2^n)`.
    pub brute_rank: u32,
}

impl Default for ScaleGuard {
    fn default() -> Self {
        Self { oracle_rank: 12, brute_rank: 3 }
    }
}

impl ScaleGuard {
    pub fn check_oracle(&self, operation: &'static str, rank: u32) -> Result<()> {
        if rank > self.oracle_rank.min(MAX_PERM_RANK) {
            return Err(Error::ScaleGuard { operation, rank, limit: self.oracle_rank });
        }
        Ok(())
    }

    pub fn check_brute(&self, operation: &'static str, rank: u32) -> Result<()> {
        if rank > self.brute_rank {
            return Err(Error::ScaleGuard { operation, rank, limit: self.brute_rank });
        }
        Ok(())
    }
}

/// A bijection of `{1, ..., 2^n}` stored as a dense image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePermutation {
    rank: u32,
    images: Vec<u32>,
}

fn check_perm_rank(rank: u32) -> Result<()> {
    if rank == 0 || rank > MAX_PERM_RANK {
        return Err(Error::RankOutOfRange { rank, max: MAX_PERM_RANK });
    }
    Ok(())
}

impl TreePermutation {
    pub fn identity(rank: u32) -> Result<Self> {
        check_perm_rank(rank)?;
        Ok(Self { rank, images: (0..1u32 << rank).collect() })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(rank: u32, images: &[u32]) -> Result<Self> {
        check_perm_rank(rank)?;
        let size = 1usize << rank;
        if images.len() != size {
            return Err(Error::NotABijection);
        }
        let mut seen = alloc::vec![false; size];
        let mut out = Vec::with_capacity(size);
        for &img in images {
            let z = img.wrapping_sub(1) as usize;
            if z >= size || seen[z] {
                return Err(Error::NotABijection);
            }
            seen[z] = true;
            out.push(z as u32);
        }
        Ok(Self { rank, images: out })
    }

    /// Builds a permutation from disjoint 1-based cycles.
    pub fn from_cycles(rank: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=1u32 << rank.min(MAX_PERM_RANK)).collect();
        let mut touched = BTreeSet::new();
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                let next = cycle[(pos + 1) % cycle.len()];
                if p == 0 || p as usize > images.len() || !touched.insert(p) {
                    return Err(Error::NotABijection);
                }
                images[p as usize - 1] = next;
            }
        }
        Self::from_images(rank, &images)
    }

    /// The generator `s_i = ∏_{j=1}^{2^(n-i)} (j, j + 2^(n-i))`.
    pub fn generator(i: u32, rank: u32) -> Result<Self> {
        check_perm_rank(rank)?;
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let half = 1u32 << (rank - i);
        let images = (0..1u32 << rank).map(|x| if x < 2 * half { x ^ half } else { x }).collect();
        Ok(Self { rank, images })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of a 1-based point.
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize - 1] + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// `self` followed by `other`.
    ///
    /// # Panics
    ///
    /// Panics if the ranks differ.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "permutations of different rank");
        let images = self.images.iter().map(|&x| other.images[x as usize]).collect();
        Self { rank: self.rank, images }
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Self {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Self { rank: self.rank, images }
    }

    /// `[p, q] = p⁻¹ q⁻¹ p q`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    pub fn try_commutator(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.commutator(other))
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().compose(self).compose(g)
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| self.images[y as usize] as usize == x)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Moved points, 1-based and ascending.
    pub fn support(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x as u32 != y)
            .map(|(x, _)| x as u32 + 1)
            .collect()
    }

    /// Non-trivial cycles, each starting at its smallest point, 1-based.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = alloc::vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// The flip pattern on level `level`, assuming `self` fixes every vertex
    /// above that level.
    pub fn level_flips(&self, level: u32) -> Result<LevelFlipPattern> {
        if level == 0 || level > self.rank {
            return Err(Error::IndexOutOfRange { index: level, rank: self.rank });
        }
        let shift = self.rank - level + 1;
        let mut pattern = LevelFlipPattern::empty(level);
        for prefix in 0..1usize << (level - 1) {
            let point = (prefix as u32) << shift;
            let image = self.images[point as usize];
            if image >> shift != prefix as u32 {
                return Err(Error::ResidualNotIdentity { level: level - 1 });
            }
            if (image >> (shift - 1)) & 1 == 1 {
                pattern.set(prefix);
            }
        }
        Ok(pattern)
    }
}

impl fmt::Debug for TreePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreePermutation(n={}, {self})", self.rank)
    }
}

/// Cycle notation in the style `(1, 33)(2, 34)`; the identity prints as `()`.
impl fmt::Display for TreePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (pos, p) in cycle.iter().enumerate() {
                if pos > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An element of the elementary abelian group `S_i`: letter `i` is flipped
/// exactly on the listed `(i-1)`-letter prefixes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LevelFlipPattern {
    level: u32,
    words: Vec<u64>,
}

impl LevelFlipPattern {
    pub fn empty(level: u32) -> Self {
        let bits = 1usize << (level.max(1) - 1);
        Self { level, words: alloc::vec![0; bits.div_ceil(64)] }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        1usize << (self.level - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, prefix: usize) -> bool {
        self.words[prefix / 64] >> (prefix % 64) & 1 == 1
    }

    pub fn set(&mut self, prefix: usize) {
        self.words[prefix / 64] |= 1u64 << (prefix % 64);
    }

    pub fn prefixes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&p| self.get(p))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_permutation(&self, rank: u32) -> Result<TreePermutation> {
        check_perm_rank(rank)?;
        if self.level == 0 || self.level > rank {
            return Err(Error::IndexOutOfRange { index: self.level, rank });
        }
        let shift = rank - self.level + 1;
        let flip = 1u32 << (shift - 1);
        let images = (0..1u32 << rank)
            .map(|x| if self.get((x >> shift) as usize) { x ^ flip } else { x })
            .collect();
        Ok(TreePermutation { rank, images })
    }
}

/// The left-normed commutator of generators `[s_{w_1}, ..., s_{w_k}]`.
pub fn expand_word(word: &[u32], rank: u32, guard: &ScaleGuard) -> Result<TreePermutation> {
    guard.check_oracle("expand", rank)?;
    let Some((&first, rest)) = word.split_first() else {
        return TreePermutation::identity(rank);
    };
    let mut acc = TreePermutation::generator(first, rank)?;
    for &k in rest {
        acc = acc.commutator(&TreePermutation::generator(k, rank)?);
    }
    Ok(acc)
}

/// Expands a rigid commutator into its permutation; `[∅]` is the identity.
pub fn expand(c: RigidCommutator, guard: &ScaleGuard) -> Result<TreePermutation> {
    let word: Vec<u32> = c.indices_desc().collect();
    expand_word(&word, c.rank(), guard)
}

/// Result of checking that `T = ⟨t_1, ..., t_n⟩` is a regular elementary
/// abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub rank: u32,
    pub involutions: bool,
    pub commuting: bool,
    pub orbit_size: usize,
    pub stabilizer_size: usize,
}

impl TranslationReport {
    pub fn transitive(&self) -> bool {
        self.orbit_size == 1usize << self.rank
    }

    pub fn trivial_stabilizer(&self) -> bool {
        self.stabilizer_size == 1
    }

    pub fn passed(&self) -> bool {
        self.involutions && self.commuting && self.transitive() && self.trivial_stabilizer()
    }
}

pub fn translation_checks(rank: u32, guard: &ScaleGuard) -> Result<TranslationReport> {
    guard.check_oracle("translation checks", rank)?;
    let gens = (1..=rank)
        .map(|i| expand(RigidCommutator::translation(i, rank)?, guard))
        .collect::<Result<Vec<_>>>()?;
    let involutions = gens.iter().all(|g| !g.is_identity() && g.compose(g).is_identity());
    let commuting = gens.iter().enumerate().all(|(a, g)| gens[a + 1..].iter().all(|h| g.commutes_with(h)));

    let degree = 1usize << rank;
    let mut seen = alloc::vec![false; degree];
    let mut stack = alloc::vec![0usize];
    seen[0] = true;
    let mut orbit_size = 1;
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = g.raw()[x] as usize;
            if !seen[y] {
                seen[y] = true;
                orbit_size += 1;
                stack.push(y);
            }
        }
    }

    let stabilizer_size = group_elements(&gens)?.iter().filter(|g| g.raw()[0] == 0).count();
    Ok(TranslationReport { rank, involutions, commuting, orbit_size, stabilizer_size })
}

/// Order of the group generated by pairwise commuting involutions, computed
/// by incremental closure.
pub fn elementary_abelian_order(generators: &[TreePermutation]) -> Result<usize> {
    for (a, g) in generators.iter().enumerate() {
        if !g.compose(g).is_identity() {
            return Err(Error::NotCommutingInvolutions);
        }
        for h in &generators[a + 1..] {
            if g.rank != h.rank {
                return Err(Error::RankMismatch { left: g.rank, right: h.rank });
            }
            if !g.commutes_with(h) {
                return Err(Error::NotCommutingInvolutions);
            }
        }
    }
    let Some(first) = generators.first() else {
        return Ok(1);
    };
    let mut elements: BTreeSet<TreePermutation> = BTreeSet::new();
    elements.insert(TreePermutation::identity(first.rank)?);
    for g in generators {
        if elements.contains(g) {
            continue;
        }
        let shifted: Vec<_> = elements.iter().map(|e| e.compose(g)).collect();
        elements.extend(shifted);
    }
    Ok(elements.len())
}

/// All elements of the group generated by `generators`.
pub fn group_elements(generators: &[TreePermutation]) -> Result<BTreeSet<TreePermutation>> {
    let Some(first) = generators.first() else {
        return Ok(BTreeSet::new());
    };
    for g in generators {
        first.check_rank(g)?;
    }
    let identity = TreePermutation::identity(first.rank)?;
    let mut elements = BTreeSet::new();
    elements.insert(identity.clone());
    let mut frontier = alloc::vec![identity];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = x.compose(g);
            if !elements.contains(&y) {
                elements.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(elements)
}

/// The normalizer of a subgroup of `Sym(2^n)` by exhaustive scan of
/// `Sym(2^n)`. Refused above `guard.brute_rank`.
pub fn brute_normalizer_in_sym(
    group: &BTreeSet<TreePermutation>,
    rank: u32,
    guard: &ScaleGuard,
) -> Result<Vec<TreePermutation>> {
    guard.check_brute("exhaustive Sym(2^n) scan", rank)?;
    check_perm_rank(rank)?;
    if let Some(g) = group.iter().find(|g| g.rank != rank) {
        return Err(Error::RankMismatch { left: g.rank, right: rank });
    }
    let generators = generating_subset(group)?;
    let degree = 1usize << rank;
    let mut current: Vec<u32> = (0..degree as u32).collect();
    let mut inverse = alloc::vec![0u32; degree];
    let mut conj = alloc::vec![0u32; degree];
    let mut out = Vec::new();
    loop {
        for (x, &y) in current.iter().enumerate() {
            inverse[y as usize] = x as u32;
        }
        let normalizes = generators.iter().all(|h| {
            // g⁻¹ h g under right actions: x ↦ g(h(g⁻¹(x)))
            for (x, slot) in conj.iter_mut().enumerate() {
                *slot = current[h.images[inverse[x] as usize] as usize];
            }
            group.contains(&TreePermutation { rank, images: conj.clone() })
        });
        if normalizes {
            out.push(TreePermutation { rank, images: current.clone() });
        }
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// A small generating set of a finite group given by its elements.
fn generating_subset(group: &BTreeSet<TreePermutation>) -> Result<Vec<TreePermutation>> {
    let mut generators = Vec::new();
    let mut span: BTreeSet<TreePermutation> = BTreeSet::new();
    for g in group {
        if g.is_identity() || span.contains(g) {
            continue;
        }
        generators.push(g.clone());
        span = group_elements(&generators)?;
        if span.len() == group.len() {
            break;
        }
    }
    Ok(generators)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycles_of(p: &TreePermutation) -> Vec<(u32, u32)> {
        p.cycles().into_iter().map(|c| (c[0], c[1])).collect()
    }

    #[test]
    fn generator_cycle_forms() {
        let s1 = TreePermutation::generator(1, 2).unwrap();
        assert_eq!(s1.cycles(), [[1, 3], [2, 4]]);
        let s6 = TreePermutation::generator(6, 6).unwrap();
        assert_eq!(s6.to_string(), "(1, 2)");
        let s1 = TreePermutation::generator(1, 6).unwrap();
        let pairs = cycles_of(&s1);
        assert_eq!(pairs.len(), 32);
        assert_eq!(pairs[0], (1, 33));
        assert_eq!(pairs[31], (32, 64));
    }

    #[test]
    fn translations_in_cycle_notation() {
        let g = ScaleGuard::default();
        let t6 = expand(RigidCommutator::translation(6, 6).unwrap(), &g).unwrap();
        let pairs = cycles_of(&t6);
        assert_eq!(pairs.len(), 32);
        assert!(pairs.iter().enumerate().all(|(k, &(a, b))| a == 2 * k as u32 + 1 && b == a + 1));
        let t5 = expand(RigidCommutator::translation(5, 6).unwrap(), &g).unwrap();
        let pairs = cycles_of(&t5);
        assert_eq!(&pairs[..3], &[(1, 3), (2, 4), (5, 7)]);
        assert_eq!(pairs.last(), Some(&(62, 64)));
        let t1 = expand(RigidCommutator::translation(1, 6).unwrap(), &g).unwrap();
        assert_eq!(t1, TreePermutation::generator(1, 6).unwrap());
    }

    #[test]
    fn generators_are_involutions_with_nested_support() {
        for n in 1..=6 {
            for i in 1..=n {
                let s = TreePermutation::generator(i, n).unwrap();
                assert!(s.is_involution());
                assert_eq!(s.support(), (1..=1u32 << (n - i + 1)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn commutator_basics() {
        let p = TreePermutation::generator(2, 3).unwrap();
        assert!(p.commutator(&p).is_identity());
        let s1 = TreePermutation::generator(1, 2).unwrap();
        let s2 = TreePermutation::generator(2, 2).unwrap();
        let c = s2.commutator(&s1);
        // s2 = (1,2), s1 = (1,3)(2,4): the commutator is (1,2)(3,4)
        assert_eq!(c.cycles(), [[1, 2], [3, 4]]);
        let g = ScaleGuard::default();
        assert_eq!(c, expand(RigidCommutator::from_indices(&[2, 1], 2).unwrap(), &g).unwrap());
        assert!(expand(RigidCommutator::identity(3).unwrap(), &g).unwrap().is_identity());
        let q = TreePermutation::generator(1, 3).unwrap();
        assert!(matches!(p.try_commutator(&s1), Err(Error::RankMismatch { .. })));
        assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
    }

    #[test]
    fn construction_validation() {
        assert!(TreePermutation::from_images(2, &[1, 2, 3, 3]).is_err());
        assert!(TreePermutation::from_images(2, &[1, 2, 3]).is_err());
        assert!(TreePermutation::from_images(2, &[0, 1, 2, 3]).is_err());
        let p = TreePermutation::from_cycles(2, &[alloc::vec![1, 3], alloc::vec![2, 4]]).unwrap();
        assert_eq!(p, TreePermutation::generator(1, 2).unwrap());
        assert_eq!(p.images(), [3, 4, 1, 2]);
        assert_eq!(p.apply(1), 3);
        assert!(TreePermutation::from_cycles(2, &[alloc::vec![1, 3], alloc::vec![3, 4]]).is_err());
        assert!(TreePermutation::generator(3, 2).is_err());
    }

    #[test]
    fn translation_group_is_regular() {
        let g = ScaleGuard::default();
        for n in 1..=6 {
            let report = translation_checks(n, &g).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        assert_eq!(translation_checks(6, &g).unwrap().orbit_size, 64);
        assert!(translation_checks(13, &g).is_err());
    }

    #[test]
    fn elementary_abelian_orders() {
        let g = ScaleGuard::default();
        let base3: Vec<_> = RigidCommutator::with_base(3, 3).map(|c| expand(c, &g).unwrap()).collect();
        assert_eq!(elementary_abelian_order(&base3).unwrap(), 16);
        let t1 = expand(RigidCommutator::translation(1, 1).unwrap(), &g).unwrap();
        assert_eq!(elementary_abelian_order(&[t1]).unwrap(), 2);
        let s1 = TreePermutation::generator(1, 2).unwrap();
        let s2 = TreePermutation::generator(2, 2).unwrap();
        assert_eq!(elementary_abelian_order(&[s1, s2]), Err(Error::NotCommutingInvolutions));
    }

    #[test]
    fn level_flip_patterns_round_trip() {
        let mut pattern = LevelFlipPattern::empty(3);
        pattern.set(1);
        pattern.set(2);
        let p = pattern.to_permutation(4).unwrap();
        assert_eq!(p.level_flips(3).unwrap(), pattern);
        assert!(p.level_flips(2).unwrap().is_empty());
        // a level-1 flip moves level-2 vertices
        let s1 = TreePermutation::generator(1, 4).unwrap();
        assert!(s1.level_flips(2).is_err());
    }

    #[test]
    fn brute_scan_guards_and_trivial_cases() {
        let g = ScaleGuard::default();
        let s4: BTreeSet<_> = group_elements(&[TreePermutation::generator(1, 4).unwrap()]).unwrap();
        assert!(matches!(brute_normalizer_in_sym(&s4, 4, &g), Err(Error::ScaleGuard { .. })));
        // the whole of Sym(4) normalizes itself
        let gens = [
            TreePermutation::from_cycles(2, &[alloc::vec![1, 2]]).unwrap(),
            TreePermutation::from_cycles(2, &[alloc::vec![1, 2, 3, 4]]).unwrap(),
        ];
        let sym4 = group_elements(&gens).unwrap();
        assert_eq!(sym4.len(), 24);
        assert_eq!(brute_normalizer_in_sym(&sym4, 2, &g).unwrap().len(), 24);
    }

    #[test]
    fn next_permutation_counts() {
        let mut v = [0u32, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
