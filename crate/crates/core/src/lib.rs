//! Rigid commutators in the Sylow 2-subgroup `Σ_n` of `Sym(2^n)`.
//!
//! `Σ_n` is the iterated wreath product of `n` copies of `C_2`, acting on the
//! `2^n` leaves of a binary tree. It is generated by `s_1, ..., s_n`, where
//! `s_i` flips the `i`-th letter of words whose first `i - 1` letters are zero.
//! A left-normed commutator `[s_{i_1}, ..., s_{i_k}]` with strictly decreasing
//! indices is *rigid* and is identified with the subset `{i_1, ..., i_k}`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as:
//!
//! * [`rigid`]: the subset-coded commutator algebra and its text forms.
//! * [`perm`]: explicit permutations of `{1, ..., 2^n}`, used as ground truth.
//! * [`saturated`]: commutation-closed sets, normalizers, normal closures and
//!   unique factorization of group elements.
//! * [`chain`]: the normalizer chain starting at the translation group.
//! * [`partitions`]: partitions into distinct parts and the closed-form
//!   generator sets of the chain.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chain;
mod error;
mod gf2;
pub mod partitions;
pub mod perm;
pub mod rigid;
pub mod saturated;

pub use chain::{run_chain, run_chain_with, translation_set, u_set, ChainOptions, ChainReport, ChainStep, Termination};
pub use error::{Error, Result};
pub use partitions::{distinct_partitions_ge2, euler_table, theoretical_n, w_family, PartitionTable};
pub use perm::{ScaleGuard, TreePermutation};
pub use rigid::{PuncturedForm, RigidCommutator};
pub use saturated::{Factorization, Factorizer, RigidSet, SaturatedSet};
