//! Labeling verb dependents as arguments or adjuncts.
//!
//! Three modes:
//!
//! * **Learned** — look the verb up in a trained [`SFLexicon`], select the
//!   best SF compatible with the observed frame, mark dependents inside the
//!   SF as arguments and the rest as adjuncts;
//! * **Baseline 1** — every dependent is an adjunct (the majority class);
//! * **Baseline 2** — no induction: match the verb's raw observed frames
//!   from a training corpus against the test dependents, preferring the
//!   largest (then most frequent) OF fully contained in them, falling back
//!   to the OF with the largest intersection.
//!
//! Decisions can be written into the corpus' seventh column as letters
//! (`A` argument, `J` adjunct, `U` dependent of an unknown verb, `_`
//! untouched; unknown verb nodes themselves also carry `U`) and read back
//! for evaluation.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::{label_of, write_corpus, CorpusError, PredicatePolicy, Sentence};
use crate::frame::{DependentLabel, Frame};
use crate::induction::{SFEntry, SFLexicon};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabelingError {
    #[error("{0}")]
    Corpus(#[from] CorpusError),
    #[error("have {labels} labeled sentences but {sentences} corpus sentences")]
    LengthMismatch { labels: usize, sentences: usize },
    #[error("sentence {sentence}, token {token}: labeled dependent carries {text:?}, expected A, J or U")]
    BadLetter {
        sentence: usize,
        token: usize,
        text: String,
    },
    #[error("sentence {sentence}, token {token}: dependent letter disagrees with its verb's known status")]
    Inconsistent { sentence: usize, token: usize },
}

/// Argument-or-adjunct call for one dependent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Argument,
    Adjunct,
}

/// One labeled dependent token.
#[derive(Debug, Clone, PartialEq)]
pub struct DependentDecision {
    /// Token id of the governing verb.
    pub verb_id: usize,
    /// Token id of the dependent.
    pub token_id: usize,
    pub label: DependentLabel,
    /// Meaningful only when `verb_known`; dependents of unknown verbs are
    /// reported but not decided.
    pub decision: Decision,
    pub verb_known: bool,
}

/// One predicate occurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct VerbNode {
    pub token_id: usize,
    pub lemma: String,
    /// Whether the labeler had usable knowledge of this verb.
    pub known: bool,
}

/// Labeling output for one sentence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SentenceLabels {
    pub verb_nodes: Vec<VerbNode>,
    pub decisions: Vec<DependentDecision>,
}

/// Selects the verb's best SF compatible with the observed frame.
///
/// Candidates are the verb's accepted frames that are subsets of `of`; the
/// winner maximizes (frame length, final count, score, rendered key). A
/// known verb with no compatible candidate falls back to the empty frame
/// (all dependents adjuncts). Returns `None` only for unknown verbs.
pub fn select_sf(verb: &str, of: &Frame, lexicon: &SFLexicon) -> Option<Frame> {
    let entries = lexicon.entries_for(verb)?;
    let mut best: Option<&SFEntry> = None;
    for entry in entries.values() {
        if !entry.frame.is_subset_of(of) {
            continue;
        }
        let beats = match best {
            None => true,
            Some(current) => {
                entry
                    .frame
                    .len()
                    .cmp(&current.frame.len())
                    .then_with(|| entry.final_count.cmp(&current.final_count))
                    .then_with(|| cmp_scores(entry.score, current.score))
                    .then_with(|| entry.frame.key().cmp(current.frame.key()))
                    == std::cmp::Ordering::Greater
            }
        };
        if beats {
            best = Some(entry);
        }
    }
    Some(best.map_or_else(Frame::empty, |e| e.frame.clone()))
}

/// `None` sorts below any defined score.
fn cmp_scores(a: Option<f64>, b: Option<f64>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.total_cmp(&y),
    }
}

/// Raw observed-frame table for baseline 2.
///
/// Per verb, each distinct set of dependent slots seen in training with its
/// frequency. Slots are rendered labels, optionally extended with the
/// token's analytical function (`N4|Obj`) when `use_func` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct OfTable {
    map: BTreeMap<String, BTreeMap<BTreeSet<String>, u64>>,
    use_func: bool,
}

impl OfTable {
    /// Collects observed frames from a training corpus. Verbs seen fewer
    /// than `min_verb_freq` times are left out (treated as unknown).
    pub fn build(
        sentences: &[Sentence],
        policy: &PredicatePolicy,
        min_verb_freq: u64,
        use_func: bool,
    ) -> Result<OfTable, CorpusError> {
        let mut verb_totals: BTreeMap<&str, u64> = BTreeMap::new();
        for sentence in sentences {
            for verb in sentence.tokens.iter().filter(|t| policy.is_predicate(&t.tag)) {
                *verb_totals.entry(verb.lemma.as_str()).or_insert(0) += 1;
            }
        }
        let mut map: BTreeMap<String, BTreeMap<BTreeSet<String>, u64>> = BTreeMap::new();
        for (index, sentence) in sentences.iter().enumerate() {
            for verb in sentence.tokens.iter().filter(|t| policy.is_predicate(&t.tag)) {
                if verb_totals[verb.lemma.as_str()] < min_verb_freq {
                    continue;
                }
                let mut slots = BTreeSet::new();
                for dep in sentence.daughters(verb.id) {
                    let label = label_of(dep).map_err(|source| CorpusError::BadLabel {
                        sentence: index,
                        token: dep.id,
                        source,
                    })?;
                    if let Some(label) = label {
                        slots.insert(slot_key(&label, &dep.func, use_func));
                    }
                }
                *map.entry(verb.lemma.clone()).or_default().entry(slots).or_insert(0) += 1;
            }
        }
        Ok(OfTable { map, use_func })
    }

    /// Builds a table from pre-counted slot sets (mainly for tests).
    pub fn from_raw(
        map: BTreeMap<String, BTreeMap<BTreeSet<String>, u64>>,
        use_func: bool,
    ) -> OfTable {
        OfTable { map, use_func }
    }

    pub fn is_known(&self, verb: &str) -> bool {
        self.map.contains_key(verb)
    }

    pub fn use_func(&self) -> bool {
        self.use_func
    }

    /// The matched slot set for this verb given the test slots, if the verb
    /// is known: the largest (then most frequent) training OF contained in
    /// `slots`, else the training OF with the largest intersection,
    /// intersected down to `slots`.
    fn match_slots(&self, verb: &str, slots: &BTreeSet<String>) -> Option<BTreeSet<String>> {
        let candidates = self.map.get(verb)?;
        let mut best_subset: Option<(&BTreeSet<String>, u64)> = None;
        for (of, &freq) in candidates {
            if !of.is_subset(slots) {
                continue;
            }
            let beats = match best_subset {
                None => true,
                Some((current, current_freq)) => {
                    of.len()
                        .cmp(&current.len())
                        .then_with(|| freq.cmp(&current_freq))
                        .then_with(|| of.cmp(current))
                        == std::cmp::Ordering::Greater
                }
            };
            if beats {
                best_subset = Some((of, freq));
            }
        }
        if let Some((of, _)) = best_subset {
            return Some(of.clone());
        }
        // no training OF fits inside the test set: fall back to overlap
        let mut best_overlap: Option<(&BTreeSet<String>, usize, u64)> = None;
        for (of, &freq) in candidates {
            let overlap = of.intersection(slots).count();
            let beats = match best_overlap {
                None => true,
                Some((current, current_overlap, current_freq)) => {
                    overlap
                        .cmp(&current_overlap)
                        .then_with(|| freq.cmp(&current_freq))
                        .then_with(|| of.cmp(current))
                        == std::cmp::Ordering::Greater
                }
            };
            if beats {
                best_overlap = Some((of, overlap, freq));
            }
        }
        best_overlap.map(|(of, _, _)| of.intersection(slots).cloned().collect())
    }
}

fn slot_key(label: &DependentLabel, func: &str, use_func: bool) -> String {
    if use_func && !func.is_empty() {
        format!("{label}|{func}")
    } else {
        label.to_string()
    }
}

/// Labeling mode with whatever knowledge it needs.
#[derive(Debug, Clone, Copy)]
pub enum LabelMode<'a> {
    Learned(&'a SFLexicon),
    Baseline1,
    Baseline2(&'a OfTable),
}

/// One labelable dependent: token id, label, syntactic function.
type LabeledDependent<'a> = (usize, DependentLabel, &'a str);

/// Decides whether a dependent belongs to the chosen frame.
type ArgumentTest<'a> = Box<dyn Fn(&LabeledDependent<'_>) -> bool + 'a>;

/// Labels every dependent of every predicate in one sentence.
pub fn label_sentence(
    sentence: &Sentence,
    sentence_index: usize,
    mode: &LabelMode<'_>,
    policy: &PredicatePolicy,
) -> Result<SentenceLabels, LabelingError> {
    let mut out = SentenceLabels::default();
    for verb in sentence.tokens.iter().filter(|t| policy.is_predicate(&t.tag)) {
        let mut labeled: Vec<LabeledDependent<'_>> = Vec::new();
        for dep in sentence.daughters(verb.id) {
            let label = label_of(dep).map_err(|source| CorpusError::BadLabel {
                sentence: sentence_index,
                token: dep.id,
                source,
            })?;
            if let Some(label) = label {
                labeled.push((dep.id, label, dep.func.as_str()));
            }
        }

        let (known, argument_test): (bool, ArgumentTest<'_>) =
            match mode {
                LabelMode::Baseline1 => (true, Box::new(|_| false)),
                LabelMode::Learned(lexicon) => {
                    let of = Frame::new(labeled.iter().map(|(_, l, _)| l.clone()));
                    match select_sf(&verb.lemma, &of, lexicon) {
                        Some(sf) => (true, Box::new(move |(_, l, _)| sf.contains(l))),
                        None => (false, Box::new(|_| false)),
                    }
                }
                LabelMode::Baseline2(table) => {
                    let slots: BTreeSet<String> = labeled
                        .iter()
                        .map(|(_, l, func)| slot_key(l, func, table.use_func))
                        .collect();
                    match table.match_slots(&verb.lemma, &slots) {
                        Some(matched) => {
                            let use_func = table.use_func;
                            (
                                true,
                                Box::new(move |(_, l, func): &LabeledDependent<'_>| {
                                    matched.contains(&slot_key(l, func, use_func))
                                }),
                            )
                        }
                        None => (false, Box::new(|_| false)),
                    }
                }
            };

        out.verb_nodes.push(VerbNode {
            token_id: verb.id,
            lemma: verb.lemma.clone(),
            known,
        });
        for item in &labeled {
            let decision = if known && argument_test(item) {
                Decision::Argument
            } else {
                Decision::Adjunct
            };
            out.decisions.push(DependentDecision {
                verb_id: verb.id,
                token_id: item.0,
                label: item.1.clone(),
                decision,
                verb_known: known,
            });
        }
    }
    Ok(out)
}

/// Labels a whole corpus, sentence-parallel, in input order.
pub fn label_corpus(
    sentences: &[Sentence],
    mode: &LabelMode<'_>,
    policy: &PredicatePolicy,
) -> Result<Vec<SentenceLabels>, LabelingError> {
    sentences
        .par_iter()
        .enumerate()
        .map(|(i, s)| label_sentence(s, i, mode, policy))
        .collect()
}

/// Writes decisions into the seventh column.
///
/// `A`/`J` on decided dependents, `U` on unknown verb nodes and their
/// dependents, `_` everywhere else.
pub fn annotate_corpus(
    sentences: &[Sentence],
    labels: &[SentenceLabels],
) -> Result<String, LabelingError> {
    if sentences.len() != labels.len() {
        return Err(LabelingError::LengthMismatch {
            labels: labels.len(),
            sentences: sentences.len(),
        });
    }
    let mut annotated = Vec::with_capacity(sentences.len());
    for (sentence, sentence_labels) in sentences.iter().zip(labels) {
        let mut letters: BTreeMap<usize, &str> = BTreeMap::new();
        for vn in &sentence_labels.verb_nodes {
            if !vn.known {
                letters.insert(vn.token_id, "U");
            }
        }
        for d in &sentence_labels.decisions {
            let letter = if !d.verb_known {
                "U"
            } else if d.decision == Decision::Argument {
                "A"
            } else {
                "J"
            };
            letters.insert(d.token_id, letter);
        }
        let mut s = sentence.clone();
        for t in &mut s.tokens {
            t.arg = Some(letters.get(&t.id).copied().unwrap_or("_").to_string());
        }
        annotated.push(s);
    }
    Ok(write_corpus(&annotated, true))
}

/// Reconstructs labeling output from an annotated corpus.
///
/// The inverse of [`annotate_corpus`]: verb nodes come from the predicate
/// policy (`U` marks an unknown verb), decisions from the letters on their
/// labeled dependents.
pub fn labels_from_annotated(
    sentences: &[Sentence],
    policy: &PredicatePolicy,
) -> Result<Vec<SentenceLabels>, LabelingError> {
    let mut out = Vec::with_capacity(sentences.len());
    for (index, sentence) in sentences.iter().enumerate() {
        let mut labels = SentenceLabels::default();
        for verb in sentence.tokens.iter().filter(|t| policy.is_predicate(&t.tag)) {
            let known = verb.arg.as_deref() != Some("U");
            labels.verb_nodes.push(VerbNode {
                token_id: verb.id,
                lemma: verb.lemma.clone(),
                known,
            });
            for dep in sentence.daughters(verb.id) {
                let label = label_of(dep).map_err(|source| CorpusError::BadLabel {
                    sentence: index,
                    token: dep.id,
                    source,
                })?;
                let Some(label) = label else { continue };
                let letter = dep.arg.as_deref().unwrap_or("_");
                let (decision, dep_known) = match letter {
                    "A" => (Decision::Argument, true),
                    "J" => (Decision::Adjunct, true),
                    "U" => (Decision::Adjunct, false),
                    other => {
                        return Err(LabelingError::BadLetter {
                            sentence: index,
                            token: dep.id,
                            text: other.to_string(),
                        })
                    }
                };
                if dep_known != known {
                    return Err(LabelingError::Inconsistent {
                        sentence: index,
                        token: dep.id,
                    });
                }
                labels.decisions.push(DependentDecision {
                    verb_id: verb.id,
                    token_id: dep.id,
                    label,
                    decision,
                    verb_known: known,
                });
            }
        }
        out.push(labels);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_corpus, Token};
    use crate::induction::SFEntry;
    use crate::stats::Method;

    fn n(c: u8) -> DependentLabel {
        DependentLabel::NounCase(c)
    }

    fn tok(id: usize, lemma: &str, tag: &str, head: usize) -> Token {
        Token {
            id,
            form: lemma.to_string(),
            lemma: lemma.to_string(),
            tag: tag.to_string(),
            head,
            func: String::new(),
            arg: None,
        }
    }

    fn lexicon_with(entries: &[(&str, Frame, u64, f64)]) -> SFLexicon {
        let mut lexicon = SFLexicon::new(
            crate::stats::MethodParams::default(),
            crate::induction::SuccessorStrategy::Random,
            7,
        );
        for (verb, frame, count, score) in entries {
            lexicon.insert(SFEntry {
                verb: verb.to_string(),
                frame: frame.clone(),
                final_count: *count,
                score: Some(*score),
                method: Method::Miscue,
            });
        }
        lexicon
    }

    #[test]
    fn select_sf_picks_compatible_subset() {
        let lexicon = lexicon_with(&[("mít", Frame::new([n(4)]), 10, 1e-6)]);
        let of = Frame::new([n(4), DependentLabel::Prep(6, "v".to_string())]);
        assert_eq!(select_sf("mít", &of, &lexicon), Some(Frame::new([n(4)])));
        // unknown verb
        assert_eq!(select_sf("spát", &of, &lexicon), None);
        // known verb, nothing compatible: empty frame
        assert_eq!(
            select_sf("mít", &Frame::new([n(7)]), &lexicon),
            Some(Frame::empty())
        );
        // empty OF
        assert_eq!(select_sf("mít", &Frame::empty(), &lexicon), Some(Frame::empty()));
    }

    #[test]
    fn select_sf_prefers_longer_then_heavier_frames() {
        let lexicon = lexicon_with(&[
            ("dát", Frame::new([n(1)]), 50, 1e-9),
            ("dát", Frame::new([n(1), n(4)]), 10, 1e-3),
            ("dát", Frame::new([n(3)]), 60, 1e-9),
        ]);
        let of = Frame::new([n(1), n(3), n(4)]);
        // length beats count
        assert_eq!(
            select_sf("dát", &of, &lexicon),
            Some(Frame::new([n(1), n(4)]))
        );
        // among equal lengths, count decides
        let of = Frame::new([n(1), n(3)]);
        assert_eq!(select_sf("dát", &of, &lexicon), Some(Frame::new([n(3)])));
    }

    fn simple_sentence() -> Sentence {
        // verb with one N4 and one R6 dependent
        Sentence {
            tokens: vec![
                tok(1, "mít", "VPP3A", 0),
                tok(2, "zájem", "N4", 1),
                tok(3, "v", "R6", 1),
            ],
        }
    }

    #[test]
    fn learned_mode_splits_sf_from_rest() {
        let lexicon = lexicon_with(&[("mít", Frame::new([n(4)]), 10, 1e-6)]);
        let labels = label_sentence(
            &simple_sentence(),
            0,
            &LabelMode::Learned(&lexicon),
            &PredicatePolicy::default(),
        )
        .unwrap();
        assert_eq!(labels.verb_nodes.len(), 1);
        assert!(labels.verb_nodes[0].known);
        assert_eq!(labels.decisions.len(), 2);
        assert_eq!(labels.decisions[0].token_id, 2);
        assert_eq!(labels.decisions[0].decision, Decision::Argument);
        assert_eq!(labels.decisions[1].token_id, 3);
        assert_eq!(labels.decisions[1].decision, Decision::Adjunct);
    }

    #[test]
    fn baseline1_calls_everything_adjunct() {
        let labels = label_sentence(
            &simple_sentence(),
            0,
            &LabelMode::Baseline1,
            &PredicatePolicy::default(),
        )
        .unwrap();
        assert!(labels.verb_nodes[0].known);
        assert!(labels
            .decisions
            .iter()
            .all(|d| d.decision == Decision::Adjunct && d.verb_known));
    }

    #[test]
    fn unknown_verbs_are_flagged_not_decided() {
        let lexicon = lexicon_with(&[("jiný", Frame::new([n(4)]), 10, 1e-6)]);
        let labels = label_sentence(
            &simple_sentence(),
            0,
            &LabelMode::Learned(&lexicon),
            &PredicatePolicy::default(),
        )
        .unwrap();
        assert!(!labels.verb_nodes[0].known);
        assert!(labels.decisions.iter().all(|d| !d.verb_known));
    }

    fn of_set(keys: &[&str]) -> BTreeSet<String> {
        keys.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn baseline2_prefers_contained_ofs() {
        // training: {N1,N4} three times, {N1} five times
        let mut map = BTreeMap::new();
        let mut v = BTreeMap::new();
        v.insert(of_set(&["N1", "N4"]), 3);
        v.insert(of_set(&["N1"]), 5);
        map.insert("mít".to_string(), v);
        let table = OfTable::from_raw(map, false);

        let sentence = Sentence {
            tokens: vec![
                tok(1, "mít", "VPP3A", 0),
                tok(2, "student", "N1", 1),
                tok(3, "zájem", "N4", 1),
                tok(4, "dnes", "DB", 1),
            ],
        };
        let labels = label_sentence(
            &sentence,
            0,
            &LabelMode::Baseline2(&table),
            &PredicatePolicy::default(),
        )
        .unwrap();
        let by_token: BTreeMap<usize, Decision> = labels
            .decisions
            .iter()
            .map(|d| (d.token_id, d.decision))
            .collect();
        assert_eq!(by_token[&2], Decision::Argument);
        assert_eq!(by_token[&3], Decision::Argument);
        assert_eq!(by_token[&4], Decision::Adjunct);
    }

    #[test]
    fn baseline2_falls_back_to_largest_overlap() {
        let mut map = BTreeMap::new();
        let mut v = BTreeMap::new();
        v.insert(of_set(&["N1", "N3"]), 4);
        map.insert("věřit".to_string(), v);
        let table = OfTable::from_raw(map, false);

        let sentence = Sentence {
            tokens: vec![
                tok(1, "věřit", "VPP3A", 0),
                tok(2, "bratr", "N3", 1),
                tok(3, "slovo", "N4", 1),
            ],
        };
        let labels = label_sentence(
            &sentence,
            0,
            &LabelMode::Baseline2(&table),
            &PredicatePolicy::default(),
        )
        .unwrap();
        let by_token: BTreeMap<usize, Decision> = labels
            .decisions
            .iter()
            .map(|d| (d.token_id, d.decision))
            .collect();
        // N3 is in the overlap with the only training OF, N4 is not
        assert_eq!(by_token[&2], Decision::Argument);
        assert_eq!(by_token[&3], Decision::Adjunct);
    }

    #[test]
    fn duplicate_labels_share_one_decision() {
        let lexicon = lexicon_with(&[("mít", Frame::new([n(4)]), 10, 1e-6)]);
        let sentence = Sentence {
            tokens: vec![
                tok(1, "mít", "VPP3A", 0),
                tok(2, "chléb", "N4", 1),
                tok(3, "sůl", "N4", 1),
            ],
        };
        let labels = label_sentence(
            &sentence,
            0,
            &LabelMode::Learned(&lexicon),
            &PredicatePolicy::default(),
        )
        .unwrap();
        assert_eq!(labels.decisions.len(), 2);
        assert!(labels.decisions.iter().all(|d| d.decision == Decision::Argument));
    }

    #[test]
    fn extra_adjunct_does_not_change_argument_calls() {
        let lexicon = lexicon_with(&[("mít", Frame::new([n(4)]), 10, 1e-6)]);
        let policy = PredicatePolicy::default();
        let without = simple_sentence();
        let mut with = simple_sentence();
        with.tokens.push(tok(4, "dnes", "DB", 1));

        let mode = LabelMode::Learned(&lexicon);
        let a = label_sentence(&without, 0, &mode, &policy).unwrap();
        let b = label_sentence(&with, 0, &mode, &policy).unwrap();
        let args = |labels: &SentenceLabels| {
            labels
                .decisions
                .iter()
                .filter(|d| d.decision == Decision::Argument)
                .map(|d| d.token_id)
                .collect::<Vec<_>>()
        };
        assert_eq!(args(&a), args(&b));
    }

    #[test]
    fn annotation_round_trips() {
        let lexicon = lexicon_with(&[("mít", Frame::new([n(4)]), 10, 1e-6)]);
        let policy = PredicatePolicy::default();
        let sentences = vec![
            simple_sentence(),
            // unknown verb
            Sentence {
                tokens: vec![tok(1, "spát", "VPP3A", 0), tok(2, "dnes", "DB", 1)],
            },
            // no predicate
            Sentence {
                tokens: vec![tok(1, "ano", "DB", 0)],
            },
        ];
        let labels = label_corpus(&sentences, &LabelMode::Learned(&lexicon), &policy).unwrap();
        let annotated = annotate_corpus(&sentences, &labels).unwrap();

        let lines: Vec<&str> = annotated.lines().collect();
        assert_eq!(lines[0], "1\tmít\tmít\tVPP3A\t0\t\t_");
        assert_eq!(lines[1], "2\tzájem\tzájem\tN4\t1\t\tA");
        assert_eq!(lines[2], "3\tv\tv\tR6\t1\t\tJ");
        // unknown verb and its dependent both carry U
        assert_eq!(lines[4], "1\tspát\tspát\tVPP3A\t0\t\tU");
        assert_eq!(lines[5], "2\tdnes\tdnes\tDB\t1\t\tU");

        let reparsed = parse_corpus(&annotated);
        assert!(reparsed.rejects.is_empty());
        let recovered = labels_from_annotated(&reparsed.sentences, &policy).unwrap();
        assert_eq!(recovered, labels);
    }

    #[test]
    fn annotated_reader_rejects_bad_letters() {
        let text = "1\tmít\tmít\tVPP3A\t0\t\t_\n2\tzájem\tzájem\tN4\t1\t\tX\n";
        let parsed = parse_corpus(text);
        let err = labels_from_annotated(&parsed.sentences, &PredicatePolicy::default()).unwrap_err();
        assert!(matches!(err, LabelingError::BadLetter { token: 2, .. }));

        // U on a dependent of a known verb is inconsistent
        let text = "1\tmít\tmít\tVPP3A\t0\t\t_\n2\tzájem\tzájem\tN4\t1\t\tU\n";
        let parsed = parse_corpus(text);
        let err = labels_from_annotated(&parsed.sentences, &PredicatePolicy::default()).unwrap_err();
        assert!(matches!(err, LabelingError::Inconsistent { token: 2, .. }));
    }
}
