//! Dependent labels and canonical frames.
//!
//! A *dependent label* classifies one dependent of a verb node: a bare noun
//! in one of the seven morphological cases, a preposition fused with the case
//! it governs and its lemma, a reflexive particle, a subordinate clause with
//! or without an overt complementizer, an infinitive, a passive participle,
//! or an adverb. A *frame* is a set of such labels with no record of surface
//! order or multiplicity; both observed frames (OFs, read directly off a
//! tree) and subcategorization frames (SFs, the learned result) share this
//! representation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Rendered form of the empty frame.
pub const EMPTY_FRAME: &str = "∅";

/// Error raised when a rendered label cannot be parsed back.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelParseError {
    #[error("unrecognized dependent label {0:?}")]
    Unrecognized(String),
    #[error("case digit out of range in label {0:?} (must be 1-7)")]
    BadCase(String),
    #[error("missing lemma in label {0:?}")]
    MissingLemma(String),
}

/// One classified dependent of a verb node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DependentLabel {
    /// Bare noun phrase in morphological case 1-7 (`N4`).
    NounCase(u8),
    /// Preposition with the case it governs and its lemma (`R2(bez)`).
    Prep(u8, String),
    /// Reflexive particle *se*/*si* with its case (`PR4`, `PR3`).
    Reflexive(u8),
    /// Subordinate clause without an overt complementizer (`S`).
    Clause,
    /// Subordinate clause introduced by a complementizer lemma (`JS(že)`).
    Complementizer(String),
    /// Infinitival complement (`VINF`).
    Infinitive,
    /// Passive participle (`VPAS`).
    PassiveParticiple,
    /// Adverbial dependent (`DB`).
    Adverb,
}

impl DependentLabel {
    /// Morphological case carried by the label, when there is one.
    pub fn case(&self) -> Option<u8> {
        match self {
            DependentLabel::NounCase(c)
            | DependentLabel::Prep(c, _)
            | DependentLabel::Reflexive(c) => Some(*c),
            _ => None,
        }
    }

    /// Lexical material carried by the label, when there is any.
    pub fn lemma(&self) -> Option<&str> {
        match self {
            DependentLabel::Prep(_, l) | DependentLabel::Complementizer(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for DependentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DependentLabel::NounCase(c) => write!(f, "N{c}"),
            DependentLabel::Prep(c, l) => write!(f, "R{c}({l})"),
            DependentLabel::Reflexive(c) => write!(f, "PR{c}"),
            DependentLabel::Clause => write!(f, "S"),
            DependentLabel::Complementizer(l) => write!(f, "JS({l})"),
            DependentLabel::Infinitive => write!(f, "VINF"),
            DependentLabel::PassiveParticiple => write!(f, "VPAS"),
            DependentLabel::Adverb => write!(f, "DB"),
        }
    }
}

fn case_digit(digits: &str, whole: &str) -> Result<u8, LabelParseError> {
    match digits.parse::<u8>() {
        Ok(c) if (1..=7).contains(&c) && digits.len() == 1 => Ok(c),
        _ => Err(LabelParseError::BadCase(whole.to_string())),
    }
}

fn bracketed<'a>(s: &'a str, whole: &str) -> Result<&'a str, LabelParseError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| LabelParseError::MissingLemma(whole.to_string()))?;
    if inner.is_empty() || inner.contains(['(', ')']) {
        return Err(LabelParseError::MissingLemma(whole.to_string()));
    }
    Ok(inner)
}

impl FromStr for DependentLabel {
    type Err = LabelParseError;

    /// Parses the rendered form produced by `Display` (`N4`, `R2(bez)`, ...).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" => return Ok(DependentLabel::Clause),
            "VINF" => return Ok(DependentLabel::Infinitive),
            "VPAS" => return Ok(DependentLabel::PassiveParticiple),
            "DB" => return Ok(DependentLabel::Adverb),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("JS") {
            return Ok(DependentLabel::Complementizer(bracketed(rest, s)?.to_string()));
        }
        if let Some(rest) = s.strip_prefix("PR") {
            return Ok(DependentLabel::Reflexive(case_digit(rest, s)?));
        }
        if let Some(rest) = s.strip_prefix('N') {
            return Ok(DependentLabel::NounCase(case_digit(rest, s)?));
        }
        if let Some(rest) = s.strip_prefix('R') {
            // one case digit, then the parenthesized lemma
            let (digit, lemma_part) = rest.split_at(rest.len().min(1));
            let case = case_digit(digit, s)?;
            return Ok(DependentLabel::Prep(case, bracketed(lemma_part, s)?.to_string()));
        }
        Err(LabelParseError::Unrecognized(s.to_string()))
    }
}

impl PartialOrd for DependentLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DependentLabel {
    /// Orders by rendered form, which is also the order inside a frame key.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

/// A canonical, order-free set of dependent labels.
///
/// Construction sorts and deduplicates, so two frames built from the same
/// labels in any order and multiplicity compare equal and hash identically.
/// Equality, hashing and ordering all go through the cached rendered key
/// (members joined by `+`, or [`EMPTY_FRAME`] for the empty frame).
#[derive(Debug, Clone)]
pub struct Frame {
    members: Vec<DependentLabel>,
    key: String,
}

impl Frame {
    /// Builds the canonical frame over `labels` (order and duplicates ignored).
    pub fn new<I>(labels: I) -> Frame
    where
        I: IntoIterator<Item = DependentLabel>,
    {
        let set: BTreeSet<DependentLabel> = labels.into_iter().collect();
        let members: Vec<DependentLabel> = set.into_iter().collect();
        let key = if members.is_empty() {
            EMPTY_FRAME.to_string()
        } else {
            members
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join("+")
        };
        Frame { members, key }
    }

    /// The empty frame (a verb node with no classified dependents).
    pub fn empty() -> Frame {
        Frame::new([])
    }

    /// Members in canonical (rendered) order.
    pub fn members(&self) -> &[DependentLabel] {
        &self.members
    }

    /// Number of distinct labels.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Canonical rendered form, e.g. `N1+N4` or `∅`.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn contains(&self, label: &DependentLabel) -> bool {
        self.members.binary_search_by(|m| m.cmp(label)).is_ok()
    }

    pub fn is_subset_of(&self, other: &Frame) -> bool {
        self.members.iter().all(|l| other.contains(l))
    }

    /// Labels present in both frames, as a canonical frame.
    pub fn intersect(&self, other: &Frame) -> Frame {
        Frame::new(
            self.members
                .iter()
                .filter(|l| other.contains(l))
                .cloned(),
        )
    }

    /// The frame with the member at `index` removed.
    pub fn without_member(&self, index: usize) -> Frame {
        let mut members = self.members.clone();
        members.remove(index);
        Frame::new(members)
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Frame {}

impl std::hash::Hash for Frame {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Frame {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frame {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl FromStr for Frame {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s == EMPTY_FRAME {
            return Ok(Frame::empty());
        }
        let labels = s
            .split('+')
            .map(DependentLabel::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Frame::new(labels))
    }
}
