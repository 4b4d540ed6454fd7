//! Evaluation against weighted gold annotation.
//!
//! Gold corpora carry a weight in the seventh column of every complement
//! token: the degree to which annotators considered that dependent an
//! argument (1 clear argument, 0 clear adjunct, fractions in between). A
//! suggestion earns `w` credit for calling the dependent an argument and
//! `1-w` for calling it an adjunct, so hard decisions are scored against
//! soft truth:
//!
//! * precision = correct credit / complements of known verbs,
//! * recall    = correct credit / all complements,
//! * unknown   = share of complements whose verb the labeler did not know.
//!
//! The human-readable table derives its percentage block (including F1 and
//! unknown) from the rounded integer precision and recall, so the printed
//! summary is internally consistent; the TSV view carries full-precision
//! values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::{CorpusError, Sentence};
use crate::labeling::{Decision, SentenceLabels};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{0}")]
    Corpus(#[from] CorpusError),
    #[error("have {labels} labeled sentences but {sentences} gold sentences")]
    LengthMismatch { labels: usize, sentences: usize },
    #[error("sentence {sentence}, token {token}: no such token in the gold sentence")]
    TokenOutOfRange { sentence: usize, token: usize },
    #[error("sentence {sentence}, token {token}: decision on a token without a gold weight")]
    MissingWeight { sentence: usize, token: usize },
    #[error("counts file line {line}: {message}")]
    CountsParse { line: usize, message: String },
}

/// Aggregated evaluation counts for one labeling system.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    pub total_verb_nodes: u64,
    pub known_verb_nodes: u64,
    pub total_complements: u64,
    /// Complements whose verb the labeler knew.
    pub known_complements: u64,
    /// Credit earned: `w` per argument call, `1-w` per adjunct call.
    pub correct_suggestions: f64,
    /// Gold argument mass among known complements.
    pub true_arguments: f64,
    /// Argument calls made (known verbs only).
    pub suggested_arguments: u64,
    /// Credit missed on argument calls: `1-w` each.
    pub incorrect_arg_suggestions: f64,
    /// Credit missed on adjunct calls: `w` each.
    pub incorrect_adj_suggestions: f64,
}

/// Integer percentages as printed in the report table.
///
/// F1 and unknown are derived from the already-rounded precision and
/// recall, not from the exact ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrintedPercentages {
    pub precision: i64,
    pub recall: i64,
    pub f1: i64,
    pub unknown: i64,
}

impl EvalReport {
    pub fn precision(&self) -> f64 {
        if self.known_complements == 0 {
            0.0
        } else {
            self.correct_suggestions / self.known_complements as f64
        }
    }

    pub fn recall(&self) -> f64 {
        if self.total_complements == 0 {
            0.0
        } else {
            self.correct_suggestions / self.total_complements as f64
        }
    }

    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }

    /// Fraction of complements whose verb was unknown.
    pub fn pct_unknown(&self) -> f64 {
        if self.total_complements == 0 {
            0.0
        } else {
            (self.total_complements - self.known_complements) as f64
                / self.total_complements as f64
        }
    }

    pub fn printed_percentages(&self) -> PrintedPercentages {
        let precision = (100.0 * self.precision()).round() as i64;
        let recall = (100.0 * self.recall()).round() as i64;
        let f1 = if precision + recall == 0 {
            0
        } else {
            (2.0 * precision as f64 * recall as f64 / (precision + recall) as f64).round() as i64
        };
        let unknown = if precision == 0 {
            (100.0 * self.pct_unknown()).round() as i64
        } else {
            (100.0 * (1.0 - recall as f64 / precision as f64)).round() as i64
        };
        PrintedPercentages {
            precision,
            recall,
            f1,
            unknown,
        }
    }
}

/// Scores labeling output against gold sentences.
///
/// Every labeled dependent must carry a gold weight; a decision on an
/// unweighted token is an error naming the sentence and token. Exact for
/// the usual dyadic weights (0, 0.5, 1, ...), so the result does not depend
/// on decision enumeration order.
pub fn score(labels: &[SentenceLabels], gold: &[Sentence]) -> Result<EvalReport, EvalError> {
    if labels.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            labels: labels.len(),
            sentences: gold.len(),
        });
    }
    let mut report = EvalReport::default();
    for (index, (sentence_labels, sentence)) in labels.iter().zip(gold).enumerate() {
        report.total_verb_nodes += sentence_labels.verb_nodes.len() as u64;
        report.known_verb_nodes +=
            sentence_labels.verb_nodes.iter().filter(|v| v.known).count() as u64;
        for decision in &sentence_labels.decisions {
            let token = sentence.token(decision.token_id).ok_or(EvalError::TokenOutOfRange {
                sentence: index,
                token: decision.token_id,
            })?;
            let weight = token.gold_weight()?.ok_or(EvalError::MissingWeight {
                sentence: index,
                token: decision.token_id,
            })?;
            report.total_complements += 1;
            if !decision.verb_known {
                continue;
            }
            report.known_complements += 1;
            report.true_arguments += weight;
            match decision.decision {
                Decision::Argument => {
                    report.suggested_arguments += 1;
                    report.correct_suggestions += weight;
                    report.incorrect_arg_suggestions += 1.0 - weight;
                }
                Decision::Adjunct => {
                    report.correct_suggestions += 1.0 - weight;
                    report.incorrect_adj_suggestions += weight;
                }
            }
        }
    }
    Ok(report)
}

const COUNT_ROWS: [&str; 9] = [
    "total_verb_nodes",
    "known_verb_nodes",
    "total_complements",
    "known_complements",
    "correct_suggestions",
    "true_arguments",
    "suggested_arguments",
    "incorrect_arg_suggestions",
    "incorrect_adj_suggestions",
];

fn count_cell(report: &EvalReport, row: &str) -> String {
    match row {
        "total_verb_nodes" => report.total_verb_nodes.to_string(),
        "known_verb_nodes" => report.known_verb_nodes.to_string(),
        "total_complements" => report.total_complements.to_string(),
        "known_complements" => report.known_complements.to_string(),
        "correct_suggestions" => report.correct_suggestions.to_string(),
        "true_arguments" => report.true_arguments.to_string(),
        "suggested_arguments" => report.suggested_arguments.to_string(),
        "incorrect_arg_suggestions" => report.incorrect_arg_suggestions.to_string(),
        "incorrect_adj_suggestions" => report.incorrect_adj_suggestions.to_string(),
        _ => unreachable!("unknown count row {row}"),
    }
}

/// Renders reports side by side as a human-readable table.
pub fn format_table(reports: &[(String, EvalReport)]) -> String {
    type Row = (&'static str, fn(&PrintedPercentages) -> i64);
    let percentage_rows: [Row; 4] = [
        ("precision (%)", |p| p.precision),
        ("recall (%)", |p| p.recall),
        ("f1 (%)", |p| p.f1),
        ("unknown (%)", |p| p.unknown),
    ];

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["metric".to_string()];
    header.extend(reports.iter().map(|(name, _)| name.clone()));
    rows.push(header);
    for (label, pick) in percentage_rows {
        let mut row = vec![label.to_string()];
        row.extend(
            reports
                .iter()
                .map(|(_, r)| pick(&r.printed_percentages()).to_string()),
        );
        rows.push(row);
    }
    for key in COUNT_ROWS {
        let mut row = vec![key.replace('_', " ")];
        row.extend(reports.iter().map(|(_, r)| count_cell(r, key)));
        rows.push(row);
    }

    let columns = rows[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        for (c, cell) in row.iter().enumerate() {
            if c == 0 {
                write!(out, "{cell:<width$}", width = widths[0]).unwrap();
            } else {
                write!(out, "  {cell:>width$}", width = widths[c]).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

/// Renders reports as full-precision TSV.
pub fn format_tsv(reports: &[(String, EvalReport)]) -> String {
    let mut out = String::new();
    out.push_str("metric");
    for (name, _) in reports {
        out.push('\t');
        out.push_str(name);
    }
    out.push('\n');
    type Row = (&'static str, fn(&EvalReport) -> f64);
    let ratio_rows: [Row; 4] = [
        ("precision", EvalReport::precision),
        ("recall", EvalReport::recall),
        ("f1", EvalReport::f1),
        ("pct_unknown", EvalReport::pct_unknown),
    ];
    for (label, pick) in ratio_rows {
        out.push_str(label);
        for (_, report) in reports {
            out.push('\t');
            out.push_str(&crate::induction::format_score(pick(report)));
        }
        out.push('\n');
    }
    for key in COUNT_ROWS {
        out.push_str(key);
        for (_, report) in reports {
            out.push('\t');
            out.push_str(&count_cell(report, key));
        }
        out.push('\n');
    }
    out
}

/// Parses a counts file: pre-aggregated reports, one column per labeler.
///
/// First line is `metric` plus one name per column; the other lines carry
/// the nine count rows (any order, `#` comments allowed).
pub fn parse_counts_file(text: &str) -> Result<Vec<(String, EvalReport)>, EvalError> {
    let fail = |line: usize, message: String| EvalError::CountsParse { line, message };

    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| fail(1, "empty counts file".to_string()))?;
    let header_cols: Vec<&str> = header.split('\t').collect();
    if header_cols.len() < 2 || header_cols[0] != "metric" {
        return Err(fail(
            1,
            "header must be `metric` followed by one name per column".to_string(),
        ));
    }
    let names: Vec<String> = header_cols[1..].iter().map(|s| s.to_string()).collect();

    let mut values: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (index, line) in lines {
        let lineno = index + 1;
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != names.len() + 1 {
            return Err(fail(
                lineno,
                format!("expected {} columns, found {}", names.len() + 1, cols.len()),
            ));
        }
        if !COUNT_ROWS.contains(&cols[0]) {
            return Err(fail(lineno, format!("unknown count row {:?}", cols[0])));
        }
        let row: Vec<f64> = cols[1..]
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| fail(lineno, e.to_string()))?;
        values.insert(cols[0].to_string(), row);
    }
    for key in COUNT_ROWS {
        if !values.contains_key(key) {
            return Err(fail(1, format!("missing count row {key:?}")));
        }
    }

    let integer = |key: &str, column: usize| -> Result<u64, EvalError> {
        let v = values[key][column];
        if v.fract() != 0.0 || v < 0.0 {
            return Err(fail(1, format!("{key} must be a non-negative integer, got {v}")));
        }
        Ok(v as u64)
    };
    let mut reports = Vec::new();
    for (column, name) in names.into_iter().enumerate() {
        reports.push((
            name,
            EvalReport {
                total_verb_nodes: integer("total_verb_nodes", column)?,
                known_verb_nodes: integer("known_verb_nodes", column)?,
                total_complements: integer("total_complements", column)?,
                known_complements: integer("known_complements", column)?,
                correct_suggestions: values["correct_suggestions"][column],
                true_arguments: values["true_arguments"][column],
                suggested_arguments: integer("suggested_arguments", column)?,
                incorrect_arg_suggestions: values["incorrect_arg_suggestions"][column],
                incorrect_adj_suggestions: values["incorrect_adj_suggestions"][column],
            },
        ));
    }
    Ok(reports)
}
