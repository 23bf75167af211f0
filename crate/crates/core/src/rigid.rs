//! Subset-coded rigid commutators.
//!
//! The rigid commutator `[X]` for `X ⊆ {1, ..., n}` is stored as a bitmask with
//! element `k` at bit `k - 1`. The empty mask is the identity `[∅]`.
//!
//! Commutators of rigid commutators are again rigid (or trivial) and are
//! computed in constant time by [`RigidCommutator::commutator`].

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ambient rank: one machine word minus one bit.
pub const MAX_RANK: u32 = 63;

#[inline]
fn low_bits(k: u32) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

#[inline]
fn top_index(mask: u64) -> u32 {
    64 - mask.leading_zeros()
}

/// A rigid commutator `[X]` of `Σ_n`.
///
/// The derived order compares the rank first and then the mask as an
/// integer. Since the highest set bit is the base, this refines the partial
/// order by base and is the proper order used for factorizations.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RigidCommutator {
    rank: u8,
    mask: u64,
}

impl RigidCommutator {
    pub fn new(mask: u64, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        if mask & !low_bits(rank) != 0 {
            return Err(Error::IndexOutOfRange { index: top_index(mask), rank });
        }
        Ok(Self { rank: rank as u8, mask })
    }

    /// `[∅]`, the identity element.
    pub fn identity(rank: u32) -> Result<Self> {
        Self::new(0, rank)
    }

    /// Builds `[X]` from the elements of `X`, in any order. Repeated entries
    /// are rejected.
    pub fn from_indices(indices: &[u32], rank: u32) -> Result<Self> {
        check_rank(rank)?;
        let mut mask = 0u64;
        for &k in indices {
            let bit = index_bit(k, rank)?;
            if mask & bit != 0 {
                return Err(Error::Parse { position: 0, message: "repeated index in rigid commutator" });
            }
            mask |= bit;
        }
        Ok(Self { rank: rank as u8, mask })
    }

    /// The generator `s_k = [k]`.
    pub fn generator(k: u32, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        Ok(Self { rank: rank as u8, mask: index_bit(k, rank)? })
    }

    /// `t_i = [i, i-1, ..., 1]`.
    pub fn translation(i: u32, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        index_bit(i, rank)?;
        Ok(Self { rank: rank as u8, mask: low_bits(i) })
    }

    /// `u_{ij} = [{1, ..., i} \ {j}]` for `1 <= j < i`.
    pub fn u(i: u32, j: u32, rank: u32) -> Result<Self> {
        let t = Self::translation(i, rank)?;
        if j == 0 || j >= i {
            return Err(Error::InvalidPunctures { base: i });
        }
        Ok(Self { mask: t.mask & !(1u64 << (j - 1)), ..t })
    }

    /// `η_n = [n, n-1, ..., 3]`, defined for `n >= 3`.
    pub fn eta(rank: u32) -> Result<Self> {
        if rank < 3 {
            return Err(Error::IndexOutOfRange { index: 3, rank });
        }
        check_rank(rank)?;
        Ok(Self { rank: rank as u8, mask: low_bits(rank) & !0b11 })
    }

    /// Unchecked constructor for masks already known to fit the rank.
    #[inline]
    pub(crate) fn from_raw(mask: u64, rank: u32) -> Self {
        debug_assert!((1..=MAX_RANK).contains(&rank) && mask & !low_bits(rank) == 0);
        Self { rank: rank as u8, mask }
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn rank(self) -> u32 {
        u32::from(self.rank)
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.mask == 0
    }

    /// The largest index, `None` for `[∅]`.
    #[inline]
    pub fn base(self) -> Option<u32> {
        (self.mask != 0).then(|| top_index(self.mask))
    }

    /// The smallest index, `None` for `[∅]`.
    #[inline]
    pub fn hang(self) -> Option<u32> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() + 1)
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.mask.count_ones()
    }

    /// Same as [`Self::is_identity`].
    #[inline]
    pub fn is_empty(self) -> bool {
        self.is_identity()
    }

    #[inline]
    pub fn contains(self, k: u32) -> bool {
        (1..=64).contains(&k) && self.mask & (1u64 << (k - 1)) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// Indices in descending order, i.e. the left-normed word.
    pub fn indices_desc(self) -> impl Iterator<Item = u32> {
        let mut rest = self.mask;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let k = top_index(rest);
            rest &= !(1u64 << (k - 1));
            Some(k)
        })
    }

    /// The commutator `[self, other]`, itself rigid or `[∅]`.
    ///
    /// With `a > b` the two bases and `X` the mask based at `a`, the result
    /// is `[∅]` when `b ∈ X`, and otherwise
    /// `{b} ∪ (X ∩ Y) ∪ {x ∈ X : x > b}`.
    ///
    /// # Panics
    ///
    /// Panics if the ranks differ.
    #[inline]
    pub fn commutator(self, other: Self) -> Self {
        assert_eq!(self.rank, other.rank, "rigid commutators of different rank");
        Self { rank: self.rank, mask: commutator_mask(self.mask, other.mask) }
    }

    pub fn try_commutator(self, other: Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(self.commutator(other))
    }

    /// The star product of the Jordan view, with `[∅]` playing zero.
    /// Identical to [`commutator`](Self::commutator).
    #[inline]
    pub fn star(self, other: Self) -> Self {
        self.commutator(other)
    }

    pub fn to_punctured(self) -> Result<PuncturedForm> {
        let base = self.base().ok_or(Error::IdentityHasNoPuncturedForm)?;
        Ok(PuncturedForm { base, punctures: low_bits(base) & !self.mask })
    }

    pub fn from_punctured(form: PuncturedForm, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        if form.base > rank {
            return Err(Error::IndexOutOfRange { index: form.base, rank });
        }
        Ok(Self { rank: rank as u8, mask: low_bits(form.base) & !form.punctures })
    }

    /// All non-trivial rigid commutators of rank `rank` in proper order.
    pub fn all(rank: u32) -> impl Iterator<Item = Self> {
        let rank = rank.min(MAX_RANK);
        (1..=low_bits(rank)).map(move |mask| Self::from_raw(mask, rank))
    }

    /// The `2^(base-1)` rigid commutators based at `base`, in proper order.
    pub fn with_base(base: u32, rank: u32) -> impl Iterator<Item = Self> {
        let (lo, hi) = if base == 0 || base > rank.min(MAX_RANK) {
            (1, 0)
        } else {
            (1u64 << (base - 1), low_bits(base))
        };
        (lo..=hi).map(move |mask| Self::from_raw(mask, rank))
    }

    /// Parses the canonical bracket form `[6,5,4,3]` (strictly descending)
    /// or the punctured form `6^{2,1}`. `[]` is the identity.
    pub fn parse(text: &str, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let value = if cur.peek() == Some(b'[') {
            cur.bump();
            let list = cur.int_list(b']')?;
            if list.windows(2).any(|w| w[0] <= w[1]) {
                return Err(cur.error("rigid commutator indices must be strictly descending"));
            }
            Self::from_indices(&list, rank)?
        } else {
            let base = cur.int()?;
            let form = cur.punctures(base)?;
            Self::from_punctured(form, rank)?
        };
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(value)
    }
}

/// Bitmask transcription of the commutator of two rigid commutators.
#[inline]
pub(crate) fn commutator_mask(x: u64, y: u64) -> u64 {
    if x == 0 || y == 0 {
        return 0;
    }
    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
    let lo_base = 1u64 << (63 - lo.leading_zeros());
    let hi_base = 1u64 << (63 - hi.leading_zeros());
    if hi_base == lo_base || hi & lo_base != 0 {
        return 0;
    }
    let above = !((lo_base << 1) - 1);
    lo_base | (hi & lo) | (hi & above)
}

fn check_rank(rank: u32) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::RankOutOfRange { rank, max: MAX_RANK });
    }
    Ok(())
}

fn index_bit(k: u32, rank: u32) -> Result<u64> {
    if k == 0 || k > rank {
        return Err(Error::IndexOutOfRange { index: k, rank });
    }
    Ok(1u64 << (k - 1))
}

impl PartialOrd for RigidCommutator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RigidCommutator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then(self.mask.cmp(&other.mask))
    }
}

impl fmt::Display for RigidCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (pos, k) in self.indices_desc().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RigidCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.rank)
    }
}

/// The punctured form `b↑I = [{1, ..., b} \ I]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PuncturedForm {
    base: u32,
    punctures: u64,
}

impl PuncturedForm {
    pub fn new(base: u32, punctures: u64) -> Result<Self> {
        if base == 0 || base > MAX_RANK || punctures & !low_bits(base - 1) != 0 {
            return Err(Error::InvalidPunctures { base });
        }
        Ok(Self { base, punctures })
    }

    pub fn from_indices(base: u32, punctures: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &k in punctures {
            if k == 0 || k >= base {
                return Err(Error::InvalidPunctures { base });
            }
            mask |= 1u64 << (k - 1);
        }
        Self::new(base, mask)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// The puncture set `I` as a bitmask (element `k` at bit `k - 1`).
    pub fn punctures(&self) -> u64 {
        self.punctures
    }

    pub fn punctures_desc(&self) -> Vec<u32> {
        (1..self.base).rev().filter(|k| self.punctures & (1u64 << (k - 1)) != 0).collect()
    }

    pub fn puncture_sum(&self) -> u32 {
        (1..self.base).filter(|k| self.punctures & (1u64 << (k - 1)) != 0).sum()
    }
}

impl fmt::Display for PuncturedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{{", self.base)?;
        for (pos, k) in self.punctures_desc().into_iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for PuncturedForm {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let base = cur.int()?;
        let form = cur.punctures(base)?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(form)
    }
}

/// Folds a left-normed word `[i_1, ..., i_k]` of generators into the rigid
/// commutator it equals. The indices need not be decreasing or distinct.
pub fn reduce_left_normed(word: &[u32], rank: u32) -> Result<RigidCommutator> {
    let (&first, rest) = word.split_first().ok_or(Error::EmptyWord)?;
    let mut acc = RigidCommutator::generator(first, rank)?;
    for &k in rest {
        acc = acc.commutator(RigidCommutator::generator(k, rank)?);
    }
    Ok(acc)
}

/// A nested commutator expression such as `[[6,5,4,3],[2,1]]` or `6^{2,1}`.
///
/// A bare integer `k` stands for the generator `s_k`; a bracket list is the
/// left-normed commutator of its items; `[]` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Generator(u32),
    Punctured(PuncturedForm),
    Bracket(Vec<Expr>),
}

impl Expr {
    pub fn max_index(&self) -> u32 {
        match self {
            Expr::Generator(k) => *k,
            Expr::Punctured(p) => p.base(),
            Expr::Bracket(items) => items.iter().map(Expr::max_index).max().unwrap_or(0),
        }
    }

    pub fn eval(&self, rank: u32) -> Result<RigidCommutator> {
        match self {
            Expr::Generator(k) => RigidCommutator::generator(*k, rank),
            Expr::Punctured(p) => RigidCommutator::from_punctured(*p, rank),
            Expr::Bracket(items) => {
                let mut acc = RigidCommutator::identity(rank)?;
                for (pos, item) in items.iter().enumerate() {
                    let value = item.eval(rank)?;
                    acc = if pos == 0 { value } else { acc.commutator(value) };
                }
                Ok(acc)
            }
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let expr = cur.expr()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(expr)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { bytes: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: &'static str) -> Error {
        Error::Parse { position: self.pos, message }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8, message: &'static str) -> Result<()> {
        self.skip_ws();
        if self.peek() != Some(byte) {
            return Err(self.error(message));
        }
        self.bump();
        Ok(())
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u32::from(d - b'0')))
                .ok_or_else(|| self.error("integer too large"))?;
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        Ok(value)
    }

    /// Comma-separated integers up to `close`; the opening bracket is consumed.
    fn int_list(&mut self, close: u8) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.bump(),
                Some(c) if c == close => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.error("expected ',' or closing bracket")),
            }
        }
    }

    /// Parses `^{...}` after a base.
    fn punctures(&mut self, base: u32) -> Result<PuncturedForm> {
        self.expect(b'^', "expected '^'")?;
        self.expect(b'{', "expected '{'")?;
        let list = self.int_list(b'}')?;
        if list.windows(2).any(|w| w[0] <= w[1]) {
            return Err(self.error("punctures must be strictly descending"));
        }
        PuncturedForm::from_indices(base, &list)
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some(b'[') => {
                self.bump();
                let mut items = Vec::new();
                self.skip_ws();
                if self.peek() == Some(b']') {
                    self.bump();
                    return Ok(Expr::Bracket(items));
                }
                loop {
                    items.push(self.expr()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => self.bump(),
                        Some(b']') => {
                            self.bump();
                            return Ok(Expr::Bracket(items));
                        }
                        _ => return Err(self.error("expected ',' or ']'")),
                    }
                }
            }
            Some(b'0'..=b'9') => {
                let k = self.int()?;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    Ok(Expr::Punctured(self.punctures(k)?))
                } else {
                    Ok(Expr::Generator(k))
                }
            }
            _ => Err(self.error("expected '[' or an integer")),
        }
    }
}
