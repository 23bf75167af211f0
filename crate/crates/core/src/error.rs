use core::fmt;

use crate::rigid::RigidCommutator;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The ambient rank is zero or too large for the requested structure.
    RankOutOfRange { rank: u32, max: u32 },
    /// A generator index outside `1..=rank`.
    IndexOutOfRange { index: u32, rank: u32 },
    RankMismatch { left: u32, right: u32 },
    EmptyWord,
    /// `[∅]` has no base, hence no punctured form.
    IdentityHasNoPuncturedForm,
    /// Punctures must be drawn from `1..base`.
    InvalidPunctures { base: u32 },
    Parse { position: usize, message: &'static str },
    /// A desk-scale guard refused the computation.
    ScaleGuard { operation: &'static str, rank: u32, limit: u32 },
    NotABijection,
    NotCommutingInvolutions,
    /// A set claimed to be saturated is not closed under commutation.
    NotSaturated { left: RigidCommutator, right: RigidCommutator, product: RigidCommutator },
    NotASubset,
    MissingTranslations,
    OutOfTheoremRange { n: u32, i: u32 },
    /// Peeling an element left a non-trivial residual.
    ResidualNotIdentity { level: u32 },
    SingularBasis { level: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankOutOfRange { rank, max } => {
                write!(f, "rank {rank} out of range (expected 1..={max})")
            }
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "index {index} out of range for rank {rank}")
            }
            Error::RankMismatch { left, right } => write!(f, "rank mismatch: {left} vs {right}"),
            Error::EmptyWord => f.write_str("empty commutator word"),
            Error::IdentityHasNoPuncturedForm => f.write_str("[] has no punctured form"),
            Error::InvalidPunctures { base } => {
                write!(f, "punctures must lie in 1..{base}")
            }
            Error::Parse { position, message } => write!(f, "parse error at {position}: {message}"),
            Error::ScaleGuard { operation, rank, limit } => {
                write!(f, "{operation} refused at n = {rank} (scale limit {limit})")
            }
            Error::NotABijection => f.write_str("image array is not a bijection"),
            Error::NotCommutingInvolutions => {
                f.write_str("generators must be pairwise commuting involutions")
            }
            Error::NotSaturated { left, right, product } => write!(
                f,
                "set is not closed under commutation: [{left}, {right}] = {product} is missing"
            ),
            Error::NotASubset => f.write_str("first set is not contained in the second"),
            Error::MissingTranslations => f.write_str("set does not contain t_1, ..., t_n"),
            Error::OutOfTheoremRange { n, i } => {
                write!(f, "closed form only covers 0 <= i <= n - 2 (got n = {n}, i = {i})")
            }
            Error::ResidualNotIdentity { level } => {
                write!(f, "non-identity residual after peeling level {level}")
            }
            Error::SingularBasis { level } => write!(f, "singular rigid basis at level {level}"),
        }
    }
}

impl core::error::Error for Error {}
