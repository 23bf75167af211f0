//! Deterministic CSV, Markdown and JSON renderings of chain reports and
//! partition tables. Every renderer returns text ending in a newline.

use std::fmt::Write as _;

use serde::Serialize;
use sylow2_core::{ChainReport, PartitionTable};

use crate::serial::ReportDto;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Md,
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn md_row<T: ToString>(cells: impl IntoIterator<Item = T>) -> String {
    format!("| {} |\n", join(cells, " | "))
}

fn md_rule(columns: usize) -> String {
    format!("|{}\n", "---|".repeat(columns))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

/// One chain as a table: step, level dimensions for `j = n, ..., 1`,
/// `log₂|N^i|` and `log₂|N^i : N^{i-1}|`.
pub fn chain_table(report: &ChainReport, format: OutputFormat) -> String {
    let n = report.n;
    let dims_desc = |dims: &[u32]| dims.iter().rev().copied().collect::<Vec<_>>();
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            let levels = join((1..=n).rev().map(|j| format!("S{j}")), ",");
            writeln!(out, "i,{levels},log2_order,log2_index").unwrap();
            for s in &report.steps {
                let dims = join(dims_desc(&s.level_dims), ",");
                writeln!(out, "{},{dims},{},{}", s.i, s.log2_order, s.index_log2).unwrap();
            }
        }
        OutputFormat::Md => {
            let levels = join((1..=n).rev(), ",");
            out += &md_row(["i".to_string(), format!("dim(N^i ∩ S_j), j={levels}"), "log2 |N^i|".into(), "log2 |N^i : N^(i-1)|".into()]);
            out += &md_rule(4);
            for s in &report.steps {
                let dims = join(dims_desc(&s.level_dims), ", ");
                out += &md_row([s.i.to_string(), dims, s.log2_order.to_string(), s.index_log2.to_string()]);
            }
        }
        OutputFormat::Json => out = to_json(&ReportDto::from(report)),
    }
    out
}

#[derive(Serialize)]
struct IndexMatrix<'a> {
    steps: u32,
    rows: Vec<IndexRow<'a>>,
}

#[derive(Serialize)]
struct IndexRow<'a> {
    n: u32,
    indices: &'a [u32],
}

/// `log₂|N_n^i : N_n^{i-1}|` for `i = 1..=steps`, one row per rank,
/// zero once the chain has reached the full group.
pub fn index_matrix(rows: &[(u32, Vec<u32>)], steps: u32, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            writeln!(out, "n,{}", join((1..=steps).map(|i| format!("i{i}")), ",")).unwrap();
            for (n, row) in rows {
                writeln!(out, "{n},{}", join(row, ",")).unwrap();
            }
        }
        OutputFormat::Md => {
            out += &md_row(std::iter::once("n\\i".to_string()).chain((1..=steps).map(|i| i.to_string())));
            out += &md_rule(steps as usize + 1);
            for (n, row) in rows {
                out += &md_row(std::iter::once(n.to_string()).chain(row.iter().map(|x| x.to_string())));
            }
        }
        OutputFormat::Json => {
            let rows = rows.iter().map(|(n, row)| IndexRow { n: *n, indices: row }).collect();
            out = to_json(&IndexMatrix { steps, rows });
        }
    }
    out
}

#[derive(Serialize)]
struct EulerDto<'a> {
    b: &'a [u64],
    a: &'a [u64],
}

/// The sequences `b_j` and `a_j` laid out horizontally.
pub fn euler_table(table: &PartitionTable, format: OutputFormat) -> String {
    let header = (0..=table.max_j()).map(|j| j.to_string());
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            writeln!(out, "i,{}", join(header, ",")).unwrap();
            writeln!(out, "b,{}", join(&table.b, ",")).unwrap();
            writeln!(out, "a,{}", join(&table.a, ",")).unwrap();
        }
        OutputFormat::Md => {
            out += &md_row(std::iter::once("i".to_string()).chain(header));
            out += &md_rule(table.b.len() + 1);
            out += &md_row(std::iter::once("b".to_string()).chain(table.b.iter().map(|x| x.to_string())));
            out += &md_row(std::iter::once("a".to_string()).chain(table.a.iter().map(|x| x.to_string())));
        }
        OutputFormat::Json => out = to_json(&EulerDto { b: &table.b, a: &table.a }),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sylow2_core::{run_chain, ChainOptions};

    #[test]
    fn chain_csv_layout() {
        let report = run_chain(3, ChainOptions::default()).unwrap();
        let csv = chain_table(&report, OutputFormat::Csv);
        assert_eq!(csv, "i,S3,S2,S1,log2_order,log2_index\n0,3,2,1,6,3\n1,4,2,1,7,1\n");
    }

    #[test]
    fn chain_md_layout() {
        let report = run_chain(3, ChainOptions::default()).unwrap();
        let md = chain_table(&report, OutputFormat::Md);
        let lines: Vec<_> = md.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "|---|---|---|---|");
        assert_eq!(lines[2], "| 0 | 3, 2, 1 | 6 | 3 |");
    }

    #[test]
    fn matrix_layouts() {
        let rows = vec![(3, vec![1, 0]), (4, vec![1, 2])];
        assert_eq!(index_matrix(&rows, 2, OutputFormat::Csv), "n,i1,i2\n3,1,0\n4,1,2\n");
        assert!(index_matrix(&rows, 2, OutputFormat::Md).contains("| 4 | 1 | 2 |"));
        let json: serde_json::Value = serde_json::from_str(&index_matrix(&rows, 2, OutputFormat::Json)).unwrap();
        assert_eq!(json["rows"][1]["indices"], serde_json::json!([1, 2]));
    }

    #[test]
    fn euler_layouts() {
        let t = sylow2_core::euler_table(5);
        assert_eq!(euler_table(&t, OutputFormat::Csv), "i,0,1,2,3,4,5\nb,0,0,0,1,1,2\na,0,0,0,1,2,4\n");
        assert!(euler_table(&t, OutputFormat::Md).contains("| a | 0 | 0 | 0 | 1 | 2 | 4 |"));
        let json: serde_json::Value = serde_json::from_str(&euler_table(&t, OutputFormat::Json)).unwrap();
        assert_eq!(json["a"], serde_json::json!([0, 0, 0, 1, 2, 4]));
    }
}
