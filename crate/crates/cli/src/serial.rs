//! JSON file formats.
//!
//! A set file is `{"n": 6, "members": [[6,5,4,3], "0x3c", ...]}`: each member
//! is a descending index list or a hexadecimal mask with bit `k - 1` standing
//! for index `k`. Lists are written; both forms are read.
//!
//! A permutation file is either `{"n": 3, "images": [...]}` with 1-based
//! images or cycle notation such as `(1, 5)(2, 6)`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sylow2_core::{ChainReport, RigidCommutator, RigidSet, SaturatedSet, Termination, TreePermutation};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MemberDto {
    Indices(Vec<u32>),
    Hex(String),
}

impl MemberDto {
    fn to_commutator(&self, n: u32) -> CliResult<RigidCommutator> {
        let c = match self {
            MemberDto::Indices(indices) => {
                if indices.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(CliError::Parse(format!("member {indices:?} is not strictly descending")));
                }
                RigidCommutator::from_indices(indices, n)?
            }
            MemberDto::Hex(text) => {
                let digits = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")).unwrap_or(text);
                let mask = u64::from_str_radix(digits, 16)
                    .map_err(|_| CliError::Parse(format!("invalid hexadecimal mask {text:?}")))?;
                RigidCommutator::new(mask, n)?
            }
        };
        if c.is_identity() {
            return Err(CliError::Parse("[] cannot be listed as a member".into()));
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDto {
    pub n: u32,
    pub members: Vec<MemberDto>,
}

impl SetDto {
    pub fn from_set(set: &RigidSet) -> Self {
        let members = set.iter().map(|c| MemberDto::Indices(c.indices_desc().collect())).collect();
        Self { n: set.rank(), members }
    }

    pub fn to_set(&self) -> CliResult<RigidSet> {
        let members = self.members.iter().map(|m| m.to_commutator(self.n)).collect::<CliResult<Vec<_>>>()?;
        Ok(RigidSet::from_members(self.n, members)?)
    }
}

pub fn set_to_json(set: &RigidSet) -> String {
    let mut text = serde_json::to_string_pretty(&SetDto::from_set(set)).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn set_from_json(text: &str) -> CliResult<RigidSet> {
    let dto: SetDto = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("set file: {e}")))?;
    dto.to_set()
}

/// Reads a set file and checks that it is closed under commutation.
pub fn read_saturated(path: &Path) -> CliResult<SaturatedSet> {
    let set = set_from_json(&read(path)?)?;
    SaturatedSet::new(set).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TerminationDto {
    FullGroup { step: u32 },
    Budget { step: u32 },
    Stalled { step: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDto {
    pub i: u32,
    pub log2_order: u32,
    pub index_log2: u32,
    /// `dim(N^i ∩ S_j)` for `j = 1..=n`.
    pub level_dims: Vec<u32>,
    pub new_members: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDto {
    pub n: u32,
    pub terminated_at: TerminationDto,
    pub steps: Vec<StepDto>,
}

impl From<&ChainReport> for ReportDto {
    fn from(report: &ChainReport) -> Self {
        let terminated_at = match report.terminated_at {
            Termination::FullGroup { step } => TerminationDto::FullGroup { step },
            Termination::Budget { step } => TerminationDto::Budget { step },
            Termination::Stalled { step } => TerminationDto::Stalled { step },
        };
        let steps = report
            .steps
            .iter()
            .map(|s| StepDto {
                i: s.i,
                log2_order: s.log2_order,
                index_log2: s.index_log2,
                level_dims: s.level_dims.clone(),
                new_members: s.new_members.iter().map(|c| c.indices_desc().collect()).collect(),
            })
            .collect();
        Self { n: report.n, terminated_at, steps }
    }
}

#[derive(Deserialize)]
struct PermDto {
    n: u32,
    images: Vec<u32>,
}

/// Parses `(1, 5)(2, 6)`; `()` is the identity.
pub fn parse_cycles(text: &str) -> CliResult<Vec<Vec<u32>>> {
    let bad = |msg: &str| CliError::Parse(format!("cycle notation: {msg}"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
        let inner = body[..close].trim();
        if !inner.is_empty() {
            let cycle = inner
                .split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| bad(&format!("invalid point {s:?}"))))
                .collect::<CliResult<Vec<_>>>()?;
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Reads a permutation from JSON or cycle notation; cycle notation needs `n`.
pub fn parse_permutation(text: &str, n: Option<u32>) -> CliResult<TreePermutation> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let dto: PermDto = serde_json::from_str(trimmed).map_err(|e| CliError::Parse(format!("permutation file: {e}")))?;
        if n.is_some_and(|n| n != dto.n) {
            return Err(CliError::Usage(format!("--n {} disagrees with the file's n = {}", n.unwrap(), dto.n)));
        }
        return Ok(TreePermutation::from_images(dto.n, &dto.images)?);
    }
    let n = n.ok_or_else(|| CliError::Usage("cycle notation needs --n".into()))?;
    Ok(TreePermutation::from_cycles(n, &parse_cycles(trimmed)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sylow2_core::{run_chain, u_set, ChainOptions};

    #[test]
    fn set_round_trip() {
        let u = u_set(4).unwrap();
        let json = set_to_json(u.as_set());
        assert!(json.contains("\"n\": 4"));
        assert_eq!(&set_from_json(&json).unwrap(), u.as_set());
    }

    #[test]
    fn hex_and_lists_are_both_read() {
        let set = set_from_json(r#"{"n": 6, "members": [[6,5,4,3], "0x3", "1"]}"#).unwrap();
        let got: Vec<String> = set.iter().map(|c| c.to_string()).collect();
        assert_eq!(got, ["[1]", "[2,1]", "[6,5,4,3]"]);
    }

    #[test]
    fn malformed_sets_are_rejected() {
        assert!(set_from_json(r#"{"n": 6, "members": [[3,4]]}"#).is_err());
        assert!(set_from_json(r#"{"n": 6, "members": ["0x0"]}"#).is_err());
        assert!(set_from_json(r#"{"n": 6, "members": ["zz"]}"#).is_err());
        assert!(set_from_json(r#"{"n": 3, "members": [[4]]}"#).is_err());
        assert!(set_from_json(r#"{"members": []}"#).is_err());
    }

    #[test]
    fn report_dto() {
        let report = run_chain(3, ChainOptions::default()).unwrap();
        let dto = ReportDto::from(&report);
        assert_eq!(dto.terminated_at, TerminationDto::FullGroup { step: 1 });
        assert_eq!(dto.steps[1].new_members, [vec![3]]);
        let json = serde_json::to_value(&dto).unwrap();
        assert_eq!(json["terminated_at"]["kind"], "full_group");
        let back: ReportDto = serde_json::from_value(json).unwrap();
        assert_eq!(back, dto);
    }

    #[test]
    fn permutations() {
        let p = parse_permutation("(1, 5)(2, 6)(3, 7)(4, 8)", Some(3)).unwrap();
        assert_eq!(p, TreePermutation::generator(1, 3).unwrap());
        let q = parse_permutation(r#"{"n": 1, "images": [2, 1]}"#, None).unwrap();
        assert_eq!(q, TreePermutation::generator(1, 1).unwrap());
        assert!(parse_permutation("()", Some(2)).unwrap().is_identity());
        assert!(parse_permutation("(1, 2", Some(2)).is_err());
        assert!(parse_permutation("(1, 2)", None).is_err());
        assert!(parse_permutation(r#"{"n": 1, "images": [1, 1]}"#, None).is_err());
        assert!(parse_permutation(r#"{"n": 1, "images": [2, 1]}"#, Some(2)).is_err());
    }
}
