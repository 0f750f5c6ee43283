//! Plain-text rendering for terminal output.

use std::fmt::Write;

use crate::exact::{format_rational, RatMatrix};
use crate::realize::{describe_chain, RealizationCertificate};
use crate::verify::Verdicts;

/// Rows of right-aligned entries, one space-padded column per matrix column.
pub fn format_matrix(m: &RatMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "  [ {} ]", line.join("  ")).expect("write to string");
    }
    out
}

pub fn format_verdicts(v: &Verdicts) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    writeln!(out, "  spectrum match   {}", yes(v.spectrum_match)).ok();
    writeln!(out, "  jordan form      {}", yes(v.jcf_match)).ok();
    writeln!(out, "  nonnegative      {}", yes(v.nonnegative)).ok();
    writeln!(out, "  irreducible      {}", yes(v.irreducible)).ok();
    match v.positive_column {
        Some(j) => writeln!(out, "  positive column  {}", j + 1).ok(),
        None => writeln!(out, "  positive column  none").ok(),
    };
    match &v.cs_value {
        Some(s) => writeln!(out, "  row sums         {}", format_rational(s)).ok(),
        None => writeln!(out, "  row sums         not constant").ok(),
    };
    out
}

pub fn format_certificate(c: &RealizationCertificate) -> String {
    let mut out = String::new();
    writeln!(out, "spectrum  {}", c.spectrum).ok();
    writeln!(out, "jordan    {}", c.jcf).ok();
    if let Some(d) = &c.decomposition {
        writeln!(out, "chain").ok();
        for line in describe_chain(d) {
            writeln!(out, "  {line}").ok();
        }
    }
    writeln!(out, "matrix ({}x{})", c.matrix.rows(), c.matrix.cols()).ok();
    out.push_str(&format_matrix(&c.matrix));
    writeln!(out, "verdicts").ok();
    out.push_str(&format_verdicts(&c.verdicts));
    out
}
