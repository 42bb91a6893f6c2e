//! Machine- and human-readable report forms.
//!
//! The JSON form round-trips losslessly; the text form prints utilities and
//! distances to five decimals. Rendering depends only on the report contents,
//! so a report re-read from JSON reproduces the text output byte for byte.

use serde::{Deserialize, Serialize};

use crate::compare::ComparisonReport;
use crate::model::TraceSet;
use crate::utility::UtilityVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub systems: Vec<String>,
    /// Unique-trace count per system; None when vectors were supplied
    /// directly and no enumeration happened.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_count: Option<Vec<Option<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub good_counts: Option<Vec<Option<Vec<u64>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub utilities: Option<Vec<Vec<f64>>>,
    /// ℓ2-distance of each full utility vector to the all-ones ideal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<ReportRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<ReportSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Stakeholder indices, 1-based.
    pub subset: Vec<usize>,
    pub h: Vec<f64>,
    pub winner: String,
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub all: ReportStratum,
    pub almostall: ReportStratum,
    pub morethanhalf: ReportStratum,
    pub any: ReportStratum,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportStratum {
    pub winner: String,
    pub freq_num: u64,
    pub freq_den: u64,
    pub tie: bool,
}

impl Report {
    /// Report for a single system's utilities.
    pub fn from_utilities(label: String, vector: &UtilityVector, enumerated: bool) -> Report {
        Report {
            systems: vec![label],
            trace_count: Some(vec![enumerated.then_some(vector.total_count)]),
            good_counts: Some(vec![Some(vector.good_counts.clone())]),
            utilities: Some(vec![vector.values.clone()]),
            h: None,
            rows: None,
            summary: None,
        }
    }

    /// Full comparison report. `trace_counts[i]` is None for systems whose
    /// vectors were supplied rather than enumerated.
    pub fn from_comparison(cmp: &ComparisonReport, enumerated: &[bool]) -> Report {
        let label = |i: usize| cmp.systems[i].clone();
        let rows = cmp
            .rows
            .iter()
            .map(|r| ReportRow {
                subset: r.subset.iter().map(|&i| i + 1).collect(),
                h: r.h.clone(),
                winner: label(r.winner),
                tie: r.tie,
            })
            .collect();
        let stratum = |s: &crate::compare::StratumSummary| ReportStratum {
            winner: label(s.winner),
            freq_num: s.freq_num,
            freq_den: s.freq_den,
            tie: s.tie,
        };
        Report {
            systems: cmp.systems.clone(),
            trace_count: Some(
                cmp.vectors
                    .iter()
                    .zip(enumerated)
                    .map(|(v, &e)| e.then_some(v.total_count))
                    .collect(),
            ),
            good_counts: Some(
                cmp.vectors
                    .iter()
                    .zip(enumerated)
                    .map(|(v, &e)| e.then(|| v.good_counts.clone()))
                    .collect(),
            ),
            utilities: Some(cmp.vectors.iter().map(|v| v.values.clone()).collect()),
            h: Some(cmp.overall_h.clone()),
            rows: Some(rows),
            summary: Some(ReportSummary {
                all: stratum(&cmp.summary.all),
                almostall: stratum(&cmp.summary.almostall),
                morethanhalf: stratum(&cmp.summary.morethanhalf),
                any: stratum(&cmp.summary.any),
                notes: cmp.summary.notes.iter().map(|n| n.code().to_string()).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn fmt5(x: f64) -> String {
    format!("{:.5}", x)
}

fn subset_label(subset: &[usize]) -> String {
    let inner: Vec<String> = subset.iter().map(|i| format!("S{}", i)).collect();
    format!("{{{}}}", inner.join(","))
}

/// Prints rows with columns left-aligned to the widest cell.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                let pad = widths[i].saturating_sub(cell.chars().count());
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Aligned-text rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let n = report.systems.len();

    let mut head = vec!["system".to_string()];
    if report.trace_count.is_some() {
        head.push("traces".into());
    }
    if report.utilities.is_some() {
        head.push("utilities".into());
    }
    if report.h.is_some() {
        head.push("H".into());
    }
    let mut table = vec![head];
    for i in 0..n {
        let mut row = vec![report.systems[i].clone()];
        if let Some(tc) = &report.trace_count {
            row.push(match tc[i] {
                Some(c) => c.to_string(),
                None => "-".into(),
            });
        }
        if let Some(us) = &report.utilities {
            let cells: Vec<String> = us[i].iter().map(|&u| fmt5(u)).collect();
            row.push(format!("({})", cells.join(", ")));
        }
        if let Some(h) = &report.h {
            row.push(fmt5(h[i]));
        }
        table.push(row);
    }
    out.push_str(&aligned(&table));

    if let Some(gc) = &report.good_counts {
        if gc.iter().any(|g| g.is_some()) {
            out.push('\n');
            out.push_str("good counts\n");
            let mut table = Vec::new();
            for (i, g) in gc.iter().enumerate() {
                if let Some(counts) = g {
                    let cells: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                    table.push(vec![report.systems[i].clone(), format!("({})", cells.join(", "))]);
                }
            }
            out.push_str(&aligned(&table));
        }
    }

    if let Some(rows) = &report.rows {
        out.push('\n');
        out.push_str("subset scan\n");
        let mut head = vec!["subset".to_string()];
        head.extend(report.systems.iter().cloned());
        head.push("optimal".into());
        let mut table = vec![head];
        for row in rows {
            let mut cells = vec![subset_label(&row.subset)];
            cells.extend(row.h.iter().map(|&h| fmt5(h)));
            let mut winner = row.winner.clone();
            if row.tie {
                winner.push_str(" (tie)");
            }
            cells.push(winner);
            table.push(cells);
        }
        out.push_str(&aligned(&table));
    }

    if let Some(summary) = &report.summary {
        out.push('\n');
        out.push_str("robustness summary\n");
        let mut table = Vec::new();
        for (name, s) in [
            ("all", &summary.all),
            ("almostall", &summary.almostall),
            ("morethanhalf", &summary.morethanhalf),
            ("any", &summary.any),
        ] {
            let mut winner = s.winner.clone();
            if s.tie {
                winner.push_str(" (tie)");
            }
            table.push(vec![
                name.to_string(),
                winner,
                format!("{}/{}", s.freq_num, s.freq_den),
            ]);
        }
        out.push_str(&aligned(&table));
        if !summary.notes.is_empty() {
            out.push_str(&format!("notes: {}\n", summary.notes.join(", ")));
        }
    }
    out
}

/// Tab-separated rendering: one line per system, then one per subset row.
pub fn render_tsv(report: &Report) -> String {
    let mut out = String::new();
    for (i, label) in report.systems.iter().enumerate() {
        let mut cells = vec!["system".to_string(), label.clone()];
        if let Some(tc) = &report.trace_count {
            cells.push(tc[i].map_or("-".into(), |c| c.to_string()));
        }
        if let Some(us) = &report.utilities {
            cells.extend(us[i].iter().map(|&u| fmt5(u)));
        }
        if let Some(h) = &report.h {
            cells.push(fmt5(h[i]));
        }
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    if let Some(rows) = &report.rows {
        for row in rows {
            let mut cells = vec!["row".to_string(), subset_label(&row.subset)];
            cells.extend(row.h.iter().map(|&h| fmt5(h)));
            cells.push(row.winner.clone());
            cells.push(row.tie.to_string());
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
    }
    if let Some(summary) = &report.summary {
        for (name, s) in [
            ("all", &summary.all),
            ("almostall", &summary.almostall),
            ("morethanhalf", &summary.morethanhalf),
            ("any", &summary.any),
        ] {
            out.push_str(&format!(
                "summary\t{}\t{}\t{}/{}\t{}\n",
                name, s.winner, s.freq_num, s.freq_den, s.tie
            ));
        }
    }
    out
}

/// Length histogram and per-activity occurrence counts of a trace set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStats {
    pub total: u64,
    /// (length, count), ascending by length.
    pub lengths: Vec<(usize, u64)>,
    /// (activity id, number of traces containing it), ascending by id.
    pub activity_counts: Vec<(u32, u64)>,
}

impl TraceStats {
    pub fn of(traces: &TraceSet, alphabet: &[u32]) -> TraceStats {
        use std::collections::BTreeMap;
        let mut lengths: BTreeMap<usize, u64> = BTreeMap::new();
        for t in traces {
            *lengths.entry(t.len()).or_default() += 1;
        }
        let activity_counts = alphabet
            .iter()
            .map(|&a| (a, traces.iter().filter(|t| t.contains(a)).count() as u64))
            .collect();
        TraceStats {
            total: traces.len() as u64,
            lengths: lengths.into_iter().collect(),
            activity_counts,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("total {}\n", self.total));
        out.push_str("lengths\n");
        for (len, count) in &self.lengths {
            out.push_str(&format!("  {}: {}\n", len, count));
        }
        out.push_str("activities\n");
        for (a, count) in &self.activity_counts {
            out.push_str(&format!("  {}: {}\n", a, count));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::{compare, DEFAULT_TIE_TOLERANCE};
    use crate::utility::utility_vector_from_counts;

    fn sample_report() -> Report {
        let vectors = vec![
            utility_vector_from_counts(vec![3, 9], 12).unwrap(),
            utility_vector_from_counts(vec![7, 2], 12).unwrap(),
        ];
        let cmp = compare(
            vec!["a".into(), "b".into()],
            vectors,
            vec![],
            DEFAULT_TIE_TOLERANCE,
        )
        .unwrap();
        Report::from_comparison(&cmp, &[true, true])
    }

    #[test]
    fn json_round_trip_preserves_text_rendering() {
        let report = sample_report();
        let json = report.to_json();
        let back = Report::from_json(&json).unwrap();
        assert_eq!(report, back);
        assert_eq!(render_text(&report), render_text(&back));
    }

    #[test]
    fn text_contains_sections() {
        let text = render_text(&sample_report());
        assert!(text.contains("subset scan"));
        assert!(text.contains("robustness summary"));
        assert!(text.contains("{S1,S2}"));
    }

    #[test]
    fn stats_histogram() {
        use crate::model::{Trace, TraceSet};
        let ts = TraceSet::canonicalize(vec![
            Trace::empty(),
            Trace::new(vec![1]),
            Trace::new(vec![1, 2]),
        ]);
        let stats = TraceStats::of(&ts, &[1, 2]);
        assert_eq!(stats.total, 3);
        assert_eq!(stats.lengths, vec![(0, 1), (1, 1), (2, 1)]);
        assert_eq!(stats.activity_counts, vec![(1, 2), (2, 1)]);
    }
}
