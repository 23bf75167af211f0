//! Saturated sets of rigid commutators and the subgroups they generate.
//!
//! A set `𝒢 ⊆ R*` is saturated when `𝒢 ∪ {[∅]}` is closed under
//! commutation. The generated subgroup then has order `2^|𝒢|`, every element
//! factors uniquely over `𝒢` in any proper order, and normalizers of such
//! subgroups (when they contain the translation group `T`) are saturated
//! again. All of that reduces subgroup computations to set computations on
//! masks.
//!
//! `[∅]` is never stored: every closure predicate here treats it as present.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf2::Gf2Basis;
use crate::perm::{expand, ScaleGuard, TreePermutation};
use crate::rigid::{commutator_mask, RigidCommutator};

/// Largest rank for which sets keep a `2^n`-bit membership bitmap.
pub const MAX_SET_RANK: u32 = 24;

/// A set of non-trivial rigid commutators of one rank, with O(1) membership.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RigidSet {
    rank: u32,
    len: usize,
    bits: Vec<u64>,
}

impl RigidSet {
    pub fn empty(rank: u32) -> Result<Self> {
        if rank == 0 || rank > MAX_SET_RANK {
            return Err(Error::RankOutOfRange { rank, max: MAX_SET_RANK });
        }
        let words = ((1usize << rank) / 64).max(1);
        Ok(Self { rank, len: 0, bits: alloc::vec![0; words] })
    }

    /// All of `R*`.
    pub fn full(rank: u32) -> Result<Self> {
        let mut set = Self::empty(rank)?;
        for c in RigidCommutator::all(rank) {
            set.insert(c);
        }
        Ok(set)
    }

    pub fn from_members<I>(rank: u32, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = RigidCommutator>,
    {
        let mut set = Self::empty(rank)?;
        for c in members {
            if c.rank() != rank {
                return Err(Error::RankMismatch { left: c.rank(), right: rank });
            }
            set.insert(c);
        }
        Ok(set)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn has_mask(&self, mask: u64) -> bool {
        let m = mask as usize;
        self.bits[m / 64] >> (m % 64) & 1 == 1
    }

    /// Membership; `[∅]` is never a stored member.
    #[inline]
    pub fn contains(&self, c: RigidCommutator) -> bool {
        c.rank() == self.rank && !c.is_identity() && self.has_mask(c.mask())
    }

    /// Membership in `self ∪ {[∅]}`.
    #[inline]
    pub fn contains_or_identity(&self, c: RigidCommutator) -> bool {
        c.is_identity() || self.contains(c)
    }

    /// Inserts `c`, ignoring `[∅]`. Returns whether the set grew.
    pub fn insert(&mut self, c: RigidCommutator) -> bool {
        assert_eq!(c.rank(), self.rank, "rigid commutator of different rank");
        if c.is_identity() || self.has_mask(c.mask()) {
            return false;
        }
        let m = c.mask() as usize;
        self.bits[m / 64] |= 1u64 << (m % 64);
        self.len += 1;
        true
    }

    pub fn remove(&mut self, c: RigidCommutator) -> bool {
        if !self.contains(c) {
            return false;
        }
        let m = c.mask() as usize;
        self.bits[m / 64] &= !(1u64 << (m % 64));
        self.len -= 1;
        true
    }

    /// Members in proper order (ascending base, then mask).
    pub fn iter(&self) -> impl Iterator<Item = RigidCommutator> + '_ {
        let rank = self.rank;
        self.bits.iter().enumerate().flat_map(move |(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(RigidCommutator::from_raw((w as u64) * 64 + u64::from(b), rank))
            })
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.rank == other.rank && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len == (1usize << self.rank) - 1
    }

    /// Members of `self` not in `other`, in proper order.
    pub fn difference<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = RigidCommutator> + 'a {
        self.iter().filter(move |c| !other.contains(*c))
    }

    /// Number of members based at `j`, for `j = 1..=n` (index `j - 1`).
    pub fn level_dims(&self) -> Vec<u32> {
        (1..=self.rank)
            .map(|j| {
                let (lo, hi) = (1usize << (j - 1), 1usize << j);
                if hi <= 64 {
                    let word = self.bits[0];
                    let range = if hi == 64 { u64::MAX } else { (1u64 << hi) - 1 } & !((1u64 << lo) - 1);
                    (word & range).count_ones()
                } else {
                    self.bits[lo / 64..hi / 64].iter().map(|w| w.count_ones()).sum()
                }
            })
            .collect()
    }

    /// Whether `t_1, ..., t_n` are all members.
    pub fn contains_translations(&self) -> bool {
        (1..=self.rank).all(|i| self.has_mask((1u64 << i) - 1))
    }

    /// Whether `c` normalizes the set: `[c, m] ∈ self ∪ {[∅]}` for every member.
    pub fn is_normalized_by(&self, c: RigidCommutator) -> bool {
        c.rank() == self.rank && self.iter().all(|m| {
            let p = commutator_mask(c.mask(), m.mask());
            p == 0 || self.has_mask(p)
        })
    }

    /// First pair whose commutator escapes the set, if any.
    pub fn closure_violation(&self) -> Option<(RigidCommutator, RigidCommutator, RigidCommutator)> {
        let members: Vec<_> = self.iter().collect();
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                let p = x.commutator(y);
                if !self.contains_or_identity(p) {
                    return Some((x, y, p));
                }
            }
        }
        None
    }
}

impl fmt::Debug for RigidSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| alloc::format!("{c}"))).finish()
    }
}

/// A commutation-closed set of rigid commutators; stands for the saturated
/// subgroup it generates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SaturatedSet(RigidSet);

impl SaturatedSet {
    /// Validates closure and wraps the set.
    pub fn new(set: RigidSet) -> Result<Self> {
        if let Some((left, right, product)) = set.closure_violation() {
            return Err(Error::NotSaturated { left, right, product });
        }
        Ok(Self(set))
    }

    /// Wraps a set that is closed by construction; checked in debug builds.
    pub(crate) fn new_unchecked(set: RigidSet) -> Self {
        debug_assert!(set.closure_violation().is_none(), "set is not saturated: {set:?}");
        Self(set)
    }

    pub fn empty(rank: u32) -> Result<Self> {
        Ok(Self(RigidSet::empty(rank)?))
    }

    /// `R*`, generating the whole of `Σ_n`.
    pub fn full(rank: u32) -> Result<Self> {
        Ok(Self(RigidSet::full(rank)?))
    }

    pub fn as_set(&self) -> &RigidSet {
        &self.0
    }

    pub fn into_set(self) -> RigidSet {
        self.0
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn len(&self) -> usize {
        self.0.len
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: RigidCommutator) -> bool {
        self.0.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = RigidCommutator> + '_ {
        self.0.iter()
    }

    /// `log₂` of the order of the generated subgroup, i.e. the set size.
    pub fn log2_order(&self) -> u32 {
        self.0.len as u32
    }

    /// `dim(⟨self⟩ ∩ S_j)` for `j = 1..=n` (index `j - 1`).
    pub fn level_dims(&self) -> Vec<u32> {
        self.0.level_dims()
    }

    pub fn contains_translations(&self) -> bool {
        self.0.contains_translations()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0.is_subset_of(&other.0)
    }
}

/// The least saturated superset of `seeds`.
pub fn saturate<I>(rank: u32, seeds: I) -> Result<SaturatedSet>
where
    I: IntoIterator<Item = RigidCommutator>,
{
    let mut set = RigidSet::empty(rank)?;
    let mut members: Vec<RigidCommutator> = Vec::new();
    let mut queue: Vec<RigidCommutator> = Vec::new();
    for c in seeds {
        if c.rank() != rank {
            return Err(Error::RankMismatch { left: c.rank(), right: rank });
        }
        if set.insert(c) {
            queue.push(c);
        }
    }
    // every pair is examined once: when the later of the two is processed
    while let Some(x) = queue.pop() {
        for &m in members.iter().chain(core::iter::once(&x)) {
            let p = x.commutator(m);
            if set.insert(p) {
                queue.push(p);
            }
        }
        members.push(x);
    }
    Ok(SaturatedSet::new_unchecked(set))
}

/// Result of one normalizer step. The candidate set is only guaranteed to
/// be saturated when it contains `t_1, ..., t_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerOutcome {
    pub members: RigidSet,
    pub contains_translations: bool,
}

impl NormalizerOutcome {
    pub fn new(members: RigidSet) -> Self {
        let contains_translations = members.contains_translations();
        Self { members, contains_translations }
    }

    pub fn into_saturated(self) -> Result<SaturatedSet> {
        if !self.contains_translations {
            return Err(Error::MissingTranslations);
        }
        Ok(SaturatedSet::new_unchecked(self.members))
    }
}

/// How candidates are tested in [`normalizing_step_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepStrategy {
    /// Test every candidate against every member.
    #[default]
    Literal,
    /// Accept members of the (closed) input without testing them.
    SkipMembers,
}

/// `{c ∈ R* : [c, m] ∈ M ∪ {[∅]} for all m ∈ M}`: the rigid commutators of
/// the normalizer of `⟨M⟩` in `Σ_n`.
pub fn normalizing_step(m: &SaturatedSet) -> NormalizerOutcome {
    normalizing_step_with(m, StepStrategy::Literal)
}

pub fn normalizing_step_with(m: &SaturatedSet, strategy: StepStrategy) -> NormalizerOutcome {
    let rank = m.rank();
    let mut out = RigidSet::empty(rank).expect("rank already validated");
    for c in RigidCommutator::all(rank) {
        let accept = match strategy {
            StepStrategy::SkipMembers if m.contains(c) => true,
            _ => m.0.is_normalized_by(c),
        };
        if accept {
            out.insert(c);
        }
    }
    NormalizerOutcome::new(out)
}

/// `N_B(A)` for saturated `T ⊆ A ⊆ B`: the members of `B` normalizing `A`.
pub fn normalizer_in(b: &SaturatedSet, a: &SaturatedSet) -> Result<SaturatedSet> {
    if !a.is_subset_of(b) {
        return Err(Error::NotASubset);
    }
    if !a.contains_translations() {
        return Err(Error::MissingTranslations);
    }
    let members = RigidSet::from_members(b.rank(), b.iter().filter(|&c| a.0.is_normalized_by(c)))?;
    Ok(SaturatedSet::new_unchecked(members))
}

/// The normal closure `A^B`: the least `C` with `A ⊆ C ⊆ B` and
/// `[C, B] ⊆ C ∪ {[∅]}`.
pub fn normal_closure(a: &SaturatedSet, b: &SaturatedSet) -> Result<SaturatedSet> {
    if !a.is_subset_of(b) {
        return Err(Error::NotASubset);
    }
    let mut closure = a.0.clone();
    let mut queue: Vec<RigidCommutator> = a.iter().collect();
    while let Some(c) = queue.pop() {
        for y in b.iter() {
            let p = c.commutator(y);
            if closure.insert(p) {
                queue.push(p);
            }
        }
    }
    Ok(SaturatedSet::new_unchecked(closure))
}

/// The unique factorization `g = ∏ [Y]^{e(Y)}` over `R*` in proper order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Factorization {
    rank: u32,
    /// Commutators with exponent 1, ascending in the proper order.
    factors: Vec<RigidCommutator>,
}

impl Factorization {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn factors(&self) -> &[RigidCommutator] {
        &self.factors
    }

    /// Every non-trivial rigid commutator with its exponent, in proper order.
    pub fn exponents(&self) -> impl Iterator<Item = (RigidCommutator, u8)> + '_ {
        let mut next = self.factors.iter().peekable();
        RigidCommutator::all(self.rank).map(move |c| {
            if next.peek() == Some(&&c) {
                next.next();
                (c, 1)
            } else {
                (c, 0)
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Whether the factored element lies in `⟨M⟩`: every factor is in `M`.
    pub fn is_member_of(&self, m: &SaturatedSet) -> bool {
        self.factors.iter().all(|&c| m.contains(c))
    }

    /// Multiplies the factors back together in proper order.
    pub fn to_permutation(&self, guard: &ScaleGuard) -> Result<TreePermutation> {
        let mut acc = TreePermutation::identity(self.rank)?;
        for &c in &self.factors {
            acc = acc.compose(&expand(c, guard)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("[]");
        }
        for (pos, c) in self.factors.iter().enumerate() {
            if pos > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct LevelBasis {
    solver: Gf2Basis,
    /// Rigid commutators based at this level, in proper order.
    commutators: Vec<RigidCommutator>,
}

/// Peels elements of `Σ_n` level by level over the rigid bases of the
/// `S_i`. Holds the expanded basis patterns for one rank.
#[derive(Clone, Debug)]
pub struct Factorizer {
    rank: u32,
    levels: Vec<LevelBasis>,
}

impl Factorizer {
    pub fn new(rank: u32, guard: &ScaleGuard) -> Result<Self> {
        guard.check_oracle("factorize", rank)?;
        let mut levels = Vec::with_capacity(rank as usize);
        for level in 1..=rank {
            let commutators: Vec<_> = RigidCommutator::with_base(level, rank).collect();
            let patterns = commutators
                .iter()
                .map(|&c| Ok(expand(c, guard)?.level_flips(level)?.words().to_vec()))
                .collect::<Result<Vec<_>>>()?;
            let solver = Gf2Basis::new(&patterns, 1usize << (level - 1)).ok_or(Error::SingularBasis { level })?;
            levels.push(LevelBasis { solver, commutators });
        }
        Ok(Self { rank, levels })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn factorize(&self, g: &TreePermutation) -> Result<Factorization> {
        if g.rank() != self.rank {
            return Err(Error::RankMismatch { left: g.rank(), right: self.rank });
        }
        let mut residual = g.clone();
        let mut factors = Vec::new();
        for (idx, basis) in self.levels.iter().enumerate() {
            let level = idx as u32 + 1;
            let pattern = residual.level_flips(level)?;
            if pattern.is_empty() {
                continue;
            }
            let coeffs = basis.solver.solve(pattern.words()).ok_or(Error::SingularBasis { level })?;
            factors.extend(
                basis
                    .commutators
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| coeffs[k / 64] >> (k % 64) & 1 == 1)
                    .map(|(_, &c)| c),
            );
            // the level component is an involution
            residual = pattern.to_permutation(self.rank)?.compose(&residual);
        }
        if !residual.is_identity() {
            return Err(Error::ResidualNotIdentity { level: self.rank });
        }
        Ok(Factorization { rank: self.rank, factors })
    }

    /// Factorizes `g` and reports whether it lies in `⟨m⟩`.
    pub fn factorize_in(&self, g: &TreePermutation, m: &SaturatedSet) -> Result<(Factorization, bool)> {
        if m.rank() != self.rank {
            return Err(Error::RankMismatch { left: m.rank(), right: self.rank });
        }
        let f = self.factorize(g)?;
        let member = f.is_member_of(m);
        Ok((f, member))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{translation_set, u_set};

    fn rc(indices: &[u32], n: u32) -> RigidCommutator {
        RigidCommutator::from_indices(indices, n).unwrap()
    }

    fn punct(base: u32, punctures: &[u32], n: u32) -> RigidCommutator {
        let p = crate::rigid::PuncturedForm::from_indices(base, punctures).unwrap();
        RigidCommutator::from_punctured(p, n).unwrap()
    }

    #[test]
    fn saturate_examples() {
        let t = translation_set(6).unwrap();
        assert_eq!(saturate(6, t.iter()).unwrap(), t);
        assert!(saturate(4, core::iter::empty()).unwrap().is_empty());
        let s = saturate(3, [rc(&[3, 1], 3), rc(&[2], 3)]).unwrap();
        let got: Vec<_> = s.iter().collect();
        assert_eq!(got, [rc(&[2], 3), rc(&[3, 1], 3), rc(&[3, 2], 3)]);
        assert!(saturate(3, [rc(&[2], 4)]).is_err());
    }

    #[test]
    fn closure_is_validated() {
        let set = RigidSet::from_members(3, [rc(&[3, 1], 3), rc(&[2], 3)]).unwrap();
        assert!(matches!(SaturatedSet::new(set), Err(Error::NotSaturated { .. })));
    }

    #[test]
    fn u6_steps_to_n1() {
        let u = u_set(6).unwrap();
        let step = normalizing_step(&u);
        assert!(step.contains_translations);
        let n1 = step.into_saturated().unwrap();
        let new: Vec<_> = n1.as_set().difference(u.as_set()).collect();
        assert_eq!(new, [RigidCommutator::eta(6).unwrap()]);

        let n2 = normalizing_step(&n1).into_saturated().unwrap();
        let new: Vec<_> = n2.as_set().difference(n1.as_set()).collect();
        assert_eq!(new, [punct(5, &[2, 1], 6), punct(6, &[3, 1], 6)]);

        let n3 = normalizer_in(&SaturatedSet::full(6).unwrap(), &n2).unwrap();
        let new: Vec<_> = n3.as_set().difference(n2.as_set()).collect();
        assert_eq!(
            new,
            [punct(4, &[2, 1], 6), punct(5, &[3, 1], 6), punct(6, &[4, 1], 6), punct(6, &[3, 2], 6)]
        );
    }

    #[test]
    fn full_group_is_a_fixpoint() {
        let full = SaturatedSet::full(5).unwrap();
        assert_eq!(normalizing_step(&full).into_saturated().unwrap(), full);
        assert_eq!(normalizer_in(&full, &full).unwrap(), full);
        assert_eq!(normal_closure(&full, &full).unwrap(), full);
    }

    #[test]
    fn normalizer_in_preconditions() {
        let u = u_set(4).unwrap();
        let t = translation_set(4).unwrap();
        assert_eq!(normalizer_in(&t, &u), Err(Error::NotASubset));
        let no_t = saturate(4, [rc(&[4, 3], 4)]).unwrap();
        assert_eq!(normalizer_in(&u, &no_t), Err(Error::NotASubset));
        let small = saturate(4, [rc(&[4], 4)]).unwrap();
        let full = SaturatedSet::full(4).unwrap();
        assert_eq!(normalizer_in(&full, &small), Err(Error::MissingTranslations));
    }

    #[test]
    fn missing_translations_are_flagged() {
        // G = ⟨[n, ..., 3]⟩ is normalized by neither [2] nor [2,1]
        let g = saturate(4, [RigidCommutator::eta(4).unwrap()]).unwrap();
        let step = normalizing_step(&g);
        assert!(!step.contains_translations);
        assert!(!step.members.contains(rc(&[2], 4)));
        assert!(!step.members.contains(rc(&[2, 1], 4)));
        assert_eq!(step.into_saturated(), Err(Error::MissingTranslations));
    }

    #[test]
    fn sizes_and_level_dims() {
        let u = u_set(6).unwrap();
        assert_eq!(u.log2_order(), 21);
        assert_eq!(u.level_dims(), [1, 2, 3, 4, 5, 6]);
        let e = SaturatedSet::empty(6).unwrap();
        assert_eq!((e.log2_order(), e.level_dims()), (0, alloc::vec![0; 6]));
        let full = SaturatedSet::full(8).unwrap();
        assert_eq!(full.level_dims(), [1, 2, 4, 8, 16, 32, 64, 128]);
    }

    #[test]
    fn skip_members_strategy_agrees() {
        let mut m = u_set(5).unwrap();
        for _ in 0..6 {
            let a = normalizing_step_with(&m, StepStrategy::Literal);
            let b = normalizing_step_with(&m, StepStrategy::SkipMembers);
            assert_eq!(a, b);
            m = a.into_saturated().unwrap();
        }
    }

    #[test]
    fn central_translation_closure() {
        let n = 5;
        let tn = saturate(n, [RigidCommutator::translation(n, n).unwrap()]).unwrap();
        let full = SaturatedSet::full(n).unwrap();
        assert_eq!(normal_closure(&tn, &full).unwrap(), tn);
        assert_eq!(normal_closure(&full, &tn), Err(Error::NotASubset));
    }

    #[test]
    fn factorization_of_products() {
        let g = ScaleGuard::default();
        let n = 3;
        let f = Factorizer::new(n, &g).unwrap();
        let t3 = RigidCommutator::translation(3, n).unwrap();
        let u31 = RigidCommutator::u(3, 1, n).unwrap();
        let elem = expand(t3, &g).unwrap().compose(&expand(u31, &g).unwrap());
        let fac = f.factorize(&elem).unwrap();
        let mut expected = alloc::vec![t3, u31];
        expected.sort();
        assert_eq!(fac.factors(), expected.as_slice());
        assert_eq!(fac.to_permutation(&g).unwrap(), elem);
        assert_eq!(fac.exponents().filter(|(_, e)| *e == 1).count(), 2);
        assert_eq!(fac.exponents().count(), 7);

        let id = f.factorize(&TreePermutation::identity(n).unwrap()).unwrap();
        assert!(id.is_identity());
        assert!(id.exponents().all(|(_, e)| e == 0));
    }

    #[test]
    fn eta_is_not_in_u6() {
        let g = ScaleGuard::default();
        let f = Factorizer::new(6, &g).unwrap();
        let eta = expand(RigidCommutator::eta(6).unwrap(), &g).unwrap();
        let (fac, member) = f.factorize_in(&eta, &u_set(6).unwrap()).unwrap();
        assert!(!member);
        assert_eq!(fac.factors(), [RigidCommutator::eta(6).unwrap()]);
        let t = expand(RigidCommutator::translation(4, 6).unwrap(), &g).unwrap();
        assert!(f.factorize_in(&t, &u_set(6).unwrap()).unwrap().1);
    }

    #[test]
    fn non_tree_permutations_are_rejected() {
        let g = ScaleGuard::default();
        let f = Factorizer::new(2, &g).unwrap();
        let swap = TreePermutation::from_cycles(2, &[alloc::vec![2, 3]]).unwrap();
        assert!(f.factorize(&swap).is_err());
        assert!(Factorizer::new(13, &g).is_err());
    }
}
