//! Corpus model: tokens, sentences, parsing and frame extraction.
//!
//! The corpus format is line-oriented UTF-8 TSV, one token per line with six
//! columns `ID FORM LEMMA TAG HEAD FUNC` and an optional seventh `ARG` column
//! carrying gold annotation (a decimal weight) or labeler output (a decision
//! letter). Sentences are separated by blank lines; lines starting with `#`
//! are comments. Token ids are 1-based and contiguous within a sentence;
//! `HEAD` is the id of the governing token, `0` for the root.
//!
//! Parsing is lenient at the sentence level: a malformed sentence is dropped
//! and reported, and the rest of the stream is still used.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::frame::{DependentLabel, Frame, LabelParseError};

/// Errors attached to rejected sentences or raised during extraction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("line {line}: expected 6 or 7 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: expected {expected} columns like the rest of the file, found {found}")]
    MixedColumns {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid token id {text:?}")]
    BadId { line: usize, text: String },
    #[error("line {line}: token id {found} out of order (expected {expected})")]
    IdOrder {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}: invalid head {text:?}")]
    BadHead { line: usize, text: String },
    #[error("line {line}: head {head} points outside the sentence ({len} tokens)")]
    DanglingHead { line: usize, head: usize, len: usize },
    #[error("line {line}: token {id} is its own head")]
    SelfHead { line: usize, id: usize },
    #[error("line {line}: head cycle through token {id}")]
    HeadCycle { line: usize, id: usize },
    #[error("sentence {sentence}, token {token}: {source}")]
    BadLabel {
        sentence: usize,
        token: usize,
        source: LabelParseError,
    },
    #[error("token {token}: invalid gold weight {text:?} (expected a decimal in [0,1] or `_`)")]
    BadWeight { token: usize, text: String },
}

/// One token line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// 1-based position within the sentence.
    pub id: usize,
    pub form: String,
    pub lemma: String,
    /// Simplified morphological tag (`N4`, `R2`, `VPP3A`, ...).
    pub tag: String,
    /// Id of the governing token, 0 for the root.
    pub head: usize,
    /// Analytical function as given by the treebank (may be empty).
    pub func: String,
    /// Raw seventh column, if the file has one. Preserved verbatim.
    pub arg: Option<String>,
}

impl Token {
    /// Interprets the `ARG` column as a gold argument weight.
    ///
    /// `_` (or a missing column) means unannotated; otherwise the value must
    /// parse as a decimal in `[0,1]`.
    pub fn gold_weight(&self) -> Result<Option<f64>, CorpusError> {
        let text = match self.arg.as_deref() {
            None | Some("_") => return Ok(None),
            Some(t) => t,
        };
        match text.parse::<f64>() {
            Ok(w) if (0.0..=1.0).contains(&w) => Ok(Some(w)),
            _ => Err(CorpusError::BadWeight {
                token: self.id,
                text: text.to_string(),
            }),
        }
    }
}

/// One dependency tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Tokens whose head is `head_id`, in surface order.
    pub fn daughters(&self, head_id: usize) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(move |t| t.head == head_id)
    }

    /// Token by 1-based id.
    pub fn token(&self, id: usize) -> Option<&Token> {
        self.tokens.get(id.checked_sub(1)?)
    }
}

/// Result of parsing a corpus stream.
#[derive(Debug, Clone, Default)]
pub struct ParsedCorpus {
    pub sentences: Vec<Sentence>,
    /// One entry per dropped sentence, with the offending line.
    pub rejects: Vec<CorpusError>,
    /// Whether the file carried the seventh `ARG` column.
    pub has_arg: bool,
}

/// Parses a corpus stream, dropping malformed sentences individually.
pub fn parse_corpus(input: &str) -> ParsedCorpus {
    let mut parsed = ParsedCorpus::default();
    let mut columns: Option<usize> = None;
    let mut pending: Vec<(usize, &str)> = Vec::new();

    let mut flush = |pending: &mut Vec<(usize, &str)>, parsed: &mut ParsedCorpus| {
        if pending.is_empty() {
            return;
        }
        match parse_sentence(pending, &mut columns) {
            Ok(sentence) => parsed.sentences.push(sentence),
            Err(e) => parsed.rejects.push(e),
        }
        pending.clear();
    };

    for (i, line) in input.lines().enumerate() {
        if line.starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            flush(&mut pending, &mut parsed);
        } else {
            pending.push((i + 1, line));
        }
    }
    flush(&mut pending, &mut parsed);
    parsed.has_arg = columns == Some(7);
    parsed
}

fn parse_sentence(
    lines: &[(usize, &str)],
    columns: &mut Option<usize>,
) -> Result<Sentence, CorpusError> {
    let mut tokens = Vec::with_capacity(lines.len());
    for (position, (line, raw)) in lines.iter().enumerate() {
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() != 6 && cols.len() != 7 {
            return Err(CorpusError::ColumnCount {
                line: *line,
                found: cols.len(),
            });
        }
        match *columns {
            None => *columns = Some(cols.len()),
            Some(expected) if expected != cols.len() => {
                return Err(CorpusError::MixedColumns {
                    line: *line,
                    expected,
                    found: cols.len(),
                })
            }
            Some(_) => {}
        }
        let id: usize = cols[0].parse().map_err(|_| CorpusError::BadId {
            line: *line,
            text: cols[0].to_string(),
        })?;
        if id != position + 1 {
            return Err(CorpusError::IdOrder {
                line: *line,
                found: id,
                expected: position + 1,
            });
        }
        let head: usize = cols[4].parse().map_err(|_| CorpusError::BadHead {
            line: *line,
            text: cols[4].to_string(),
        })?;
        tokens.push(Token {
            id,
            form: cols[1].to_string(),
            lemma: cols[2].to_string(),
            tag: cols[3].to_string(),
            head,
            func: cols[5].to_string(),
            arg: cols.get(6).map(|s| s.to_string()),
        });
    }

    let len = tokens.len();
    for (position, t) in tokens.iter().enumerate() {
        let line = lines[position].0;
        if t.head > len {
            return Err(CorpusError::DanglingHead {
                line,
                head: t.head,
                len,
            });
        }
        if t.head == t.id {
            return Err(CorpusError::SelfHead { line, id: t.id });
        }
    }
    // every token must reach the root; a chain longer than the sentence is a cycle
    for (position, t) in tokens.iter().enumerate() {
        let mut current = t.head;
        let mut steps = 0;
        while current != 0 {
            current = tokens[current - 1].head;
            steps += 1;
            if steps > len {
                return Err(CorpusError::HeadCycle {
                    line: lines[position].0,
                    id: t.id,
                });
            }
        }
    }
    Ok(Sentence { tokens })
}

/// Serializes sentences back to the corpus format.
///
/// With `with_arg`, the seventh column is written (`_` for tokens without
/// one). Output contains no comment lines; sentences are separated by one
/// blank line.
pub fn write_corpus(sentences: &[Sentence], with_arg: bool) -> String {
    let mut out = String::new();
    for (i, sentence) in sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for t in &sentence.tokens {
            write!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                t.id, t.form, t.lemma, t.tag, t.head, t.func
            )
            .unwrap();
            if with_arg {
                out.push('\t');
                out.push_str(t.arg.as_deref().unwrap_or("_"));
            }
            out.push('\n');
        }
    }
    out
}

/// Which tags count as predicate (verb) nodes.
///
/// Defaults to every `V`-prefixed tag except the dependent-only verb forms
/// `VINF` and `VPAS`.
#[derive(Debug, Clone)]
pub struct PredicatePolicy {
    pub prefix: String,
    pub exclude: Vec<String>,
}

impl Default for PredicatePolicy {
    fn default() -> Self {
        PredicatePolicy {
            prefix: "V".to_string(),
            exclude: vec!["VINF".to_string(), "VPAS".to_string()],
        }
    }
}

impl PredicatePolicy {
    pub fn is_predicate(&self, tag: &str) -> bool {
        tag.starts_with(&self.prefix) && !self.exclude.iter().any(|e| e == tag)
    }
}

/// Maps a token to its dependent label, if it bears one.
///
/// The label is derived from the simplified tag (case from the tag's digit,
/// as parsers resolve to a single reading) plus the lemma for prepositions
/// and complementizers. Tags outside the inventory (punctuation,
/// coordinating conjunctions, finite verbs, ...) yield `None`; a known
/// prefix with a bad case digit is an error.
pub fn label_of(token: &Token) -> Result<Option<DependentLabel>, LabelParseError> {
    let tag = token.tag.as_str();
    match tag {
        "S" => return Ok(Some(DependentLabel::Clause)),
        "JS" => {
            return Ok(Some(DependentLabel::Complementizer(token.lemma.clone())));
        }
        "VINF" => return Ok(Some(DependentLabel::Infinitive)),
        "VPAS" => return Ok(Some(DependentLabel::PassiveParticiple)),
        "DB" => return Ok(Some(DependentLabel::Adverb)),
        _ => {}
    }
    if let Some(rest) = tag.strip_prefix("PR") {
        return Ok(Some(DependentLabel::Reflexive(tag_case(rest, tag)?)));
    }
    if let Some(rest) = tag.strip_prefix('N') {
        return Ok(Some(DependentLabel::NounCase(tag_case(rest, tag)?)));
    }
    if let Some(rest) = tag.strip_prefix('R') {
        return Ok(Some(DependentLabel::Prep(
            tag_case(rest, tag)?,
            token.lemma.clone(),
        )));
    }
    Ok(None)
}

fn tag_case(digits: &str, tag: &str) -> Result<u8, LabelParseError> {
    match digits.parse::<u8>() {
        Ok(c) if (1..=7).contains(&c) && digits.len() == 1 => Ok(c),
        _ => Err(LabelParseError::BadCase(tag.to_string())),
    }
}

/// One verb node together with its observed frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbObservation {
    /// Token id of the verb node.
    pub verb_id: usize,
    pub verb_lemma: String,
    /// The observed frame over the verb's labeled dependents.
    pub frame: Frame,
    pub sentence_index: usize,
    /// Token ids realizing each frame member, parallel to `frame.members()`.
    /// A member may be realized by several tokens (duplicate labels).
    pub member_tokens: Vec<Vec<usize>>,
}

/// Extracts one observation per predicate node of the sentence.
///
/// Dependents whose tag is outside the label inventory are skipped; a verb
/// with no labeled dependents yields the empty frame.
pub fn extract_observations(
    sentence: &Sentence,
    sentence_index: usize,
    policy: &PredicatePolicy,
) -> Result<Vec<VerbObservation>, CorpusError> {
    let mut observations = Vec::new();
    for verb in sentence.tokens.iter().filter(|t| policy.is_predicate(&t.tag)) {
        let mut labeled: Vec<(DependentLabel, usize)> = Vec::new();
        for dep in sentence.daughters(verb.id) {
            let label = label_of(dep).map_err(|source| CorpusError::BadLabel {
                sentence: sentence_index,
                token: dep.id,
                source,
            })?;
            if let Some(label) = label {
                labeled.push((label, dep.id));
            }
        }
        let frame = Frame::new(labeled.iter().map(|(l, _)| l.clone()));
        let member_tokens = frame
            .members()
            .iter()
            .map(|m| {
                labeled
                    .iter()
                    .filter(|(l, _)| l == m)
                    .map(|&(_, id)| id)
                    .collect()
            })
            .collect();
        observations.push(VerbObservation {
            verb_id: verb.id,
            verb_lemma: verb.lemma.clone(),
            frame,
            sentence_index,
            member_tokens,
        });
    }
    Ok(observations)
}

/// Extracts observations for a whole corpus, sentence-parallel.
pub fn extract_corpus_observations(
    sentences: &[Sentence],
    policy: &PredicatePolicy,
) -> Result<Vec<VerbObservation>, CorpusError> {
    use rayon::prelude::*;
    let per_sentence: Result<Vec<Vec<VerbObservation>>, CorpusError> = sentences
        .par_iter()
        .enumerate()
        .map(|(i, s)| extract_observations(s, i, policy))
        .collect();
    Ok(per_sentence?.into_iter().flatten().collect())
}

/// Parses a rendered dependent label (`N4`, `R2(bez)`, ...).
///
/// Convenience re-export of the `FromStr` impl for callers that work with
/// rendered labels in files.
pub fn parse_label(s: &str) -> Result<DependentLabel, LabelParseError> {
    DependentLabel::from_str(s)
}
