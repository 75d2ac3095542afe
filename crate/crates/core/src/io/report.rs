use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use super::IoError;
use crate::pyramid::CandidateArea;

pub const REPORT_HEADER: &str =
    "id\telong\ttext\tlt-bound\trt-bound\tbel_a\tv-sibl\th-sibl\tbel_b\tnon-window\tbel_c";

/// One report line: feature beliefs and the three staged window beliefs.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub id: String,
    pub elong: f64,
    pub text: f64,
    pub lt_bound: f64,
    pub rt_bound: f64,
    pub bel_a: f64,
    pub v_sibl: f64,
    pub h_sibl: f64,
    pub bel_b: f64,
    pub non_window: f64,
    pub bel_c: f64,
}

impl ReportRow {
    pub fn from_candidate(c: &CandidateArea) -> Self {
        Self {
            id: c.id.to_string(),
            elong: c.beliefs.elong,
            text: c.beliefs.text,
            lt_bound: c.beliefs.left,
            rt_bound: c.beliefs.right,
            bel_a: c.bel_a,
            v_sibl: c.siblings.v,
            h_sibl: c.siblings.h,
            bel_b: c.bel_b,
            non_window: c.non_window,
            bel_c: c.bel_c,
        }
    }

    fn values(&self) -> [f64; 10] {
        [
            self.elong,
            self.text,
            self.lt_bound,
            self.rt_bound,
            self.bel_a,
            self.v_sibl,
            self.h_sibl,
            self.bel_b,
            self.non_window,
            self.bel_c,
        ]
    }
}

/// Orders ids with embedded numbers by value: `W2` < `W10`, `4` < `15`.
pub fn compare_ids(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(cb.iter()) {
        let ord = match (x, y) {
            ((true, dx), (true, dy)) => {
                let (tx, ty) = (dx.trim_start_matches('0'), dy.trim_start_matches('0'));
                tx.len()
                    .cmp(&ty.len())
                    .then(tx.cmp(ty))
                    .then(dx.len().cmp(&dy.len()))
            }
            ((_, sx), (_, sy)) => sx.cmp(sy),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

/// Header plus one tab-separated line per row, 3 decimals, sorted by
/// `bel_c` descending and then by id.
pub fn render_report(rows: &[ReportRow]) -> Result<String, IoError> {
    for row in rows {
        if let Some(&value) = row.values().iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(IoError::ValueOutOfRange {
                id: row.id.clone(),
                value,
            });
        }
    }
    let mut sorted: Vec<&ReportRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        b.bel_c
            .total_cmp(&a.bel_c)
            .then_with(|| compare_ids(&a.id, &b.id))
    });

    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for row in sorted {
        out.push_str(&row.id);
        for v in row.values() {
            out.push_str(&format!("\t{v:.3}"));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_report(rows: &[ReportRow], path: impl AsRef<Path>) -> Result<(), IoError> {
    fs::write(path, render_report(rows)?)?;
    Ok(())
}
