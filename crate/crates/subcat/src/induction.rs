//! SF induction: co-occurrence counting and subset refinement.
//!
//! Counting tallies (verb, observed frame) pairs. Refinement then walks the
//! frame-subset lattice level by level, from the longest frames down to the
//! empty frame. At each level every live (verb, frame, count) pair is scored
//! with the configured filter; accepted pairs are frozen into the lexicon,
//! rejected pairs hand their *entire* count down to exactly one frame with
//! one fewer member, where it merges with whatever count that frame already
//! has (its own observations, other inheritances). The empty frame is always
//! accepted, so every observation ends in the lexicon and total mass is
//! conserved exactly.
//!
//! Which one-shorter frame inherits is chosen by [`SuccessorStrategy`]:
//! uniformly at random, or greedily minimizing the entropy of the global
//! frame distribution (which concentrates mass on frames that are already
//! frequent).

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::VerbObservation;
use crate::frame::Frame;
use crate::stats::{evaluate_association, Association, ContingencyCounts, Method, MethodParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InductionError {
    #[error("the empty frame has no successors")]
    NoSuccessors,
    #[error("lexicon line {line}: {message}")]
    LexiconParse { line: usize, message: String },
}

/// Verb-frame co-occurrence counts over a corpus.
///
/// Verbs observed fewer than `min_verb_freq` times are set aside as
/// *unknown* and take no part in induction.
#[derive(Debug, Clone, Default)]
pub struct CooccurrenceTable {
    counts: BTreeMap<String, BTreeMap<Frame, u64>>,
    verb_totals: BTreeMap<String, u64>,
    frame_totals: BTreeMap<Frame, u64>,
    total: u64,
    unknown: BTreeMap<String, u64>,
    min_verb_freq: u64,
}

impl CooccurrenceTable {
    pub fn verbs(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(|s| s.as_str())
    }

    pub fn frames_of(&self, verb: &str) -> Option<&BTreeMap<Frame, u64>> {
        self.counts.get(verb)
    }

    pub fn count(&self, verb: &str, frame: &Frame) -> u64 {
        self.counts
            .get(verb)
            .and_then(|m| m.get(frame))
            .copied()
            .unwrap_or(0)
    }

    /// c(v): observations of the verb.
    pub fn verb_total(&self, verb: &str) -> u64 {
        self.verb_totals.get(verb).copied().unwrap_or(0)
    }

    /// c(f): occurrences of the frame across all counted verbs.
    pub fn frame_total(&self, frame: &Frame) -> u64 {
        self.frame_totals.get(frame).copied().unwrap_or(0)
    }

    /// N: all counted observations.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Verbs set aside for falling under the frequency floor, with counts.
    pub fn unknown_verbs(&self) -> &BTreeMap<String, u64> {
        &self.unknown
    }

    pub fn min_verb_freq(&self) -> u64 {
        self.min_verb_freq
    }

    /// Distinct non-empty observed frame types.
    pub fn observed_frame_types(&self) -> usize {
        self.frame_totals.keys().filter(|f| !f.is_empty()).count()
    }
}

/// Tallies observations into a table, applying the verb frequency floor.
pub fn count_cooccurrences(
    observations: &[VerbObservation],
    min_verb_freq: u64,
) -> CooccurrenceTable {
    let mut all_totals: BTreeMap<String, u64> = BTreeMap::new();
    for obs in observations {
        *all_totals.entry(obs.verb_lemma.clone()).or_insert(0) += 1;
    }

    let mut table = CooccurrenceTable {
        min_verb_freq,
        ..CooccurrenceTable::default()
    };
    for (verb, total) in all_totals {
        if total < min_verb_freq {
            table.unknown.insert(verb, total);
        } else {
            table.verb_totals.insert(verb, total);
        }
    }
    for obs in observations {
        if !table.verb_totals.contains_key(&obs.verb_lemma) {
            continue;
        }
        *table
            .counts
            .entry(obs.verb_lemma.clone())
            .or_default()
            .entry(obs.frame.clone())
            .or_insert(0) += 1;
        *table.frame_totals.entry(obs.frame.clone()).or_insert(0) += 1;
        table.total += 1;
    }
    table
}

/// All frames one member shorter, in canonical order.
pub fn successors(frame: &Frame) -> Result<Vec<Frame>, InductionError> {
    if frame.is_empty() {
        return Err(InductionError::NoSuccessors);
    }
    let mut out: Vec<Frame> = (0..frame.len()).map(|i| frame.without_member(i)).collect();
    out.sort();
    Ok(out)
}

/// How a rejected frame picks the successor that inherits its count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuccessorStrategy {
    /// Uniform choice among the one-shorter frames.
    #[default]
    Random,
    /// The successor whose inheritance minimizes the entropy of the global
    /// frame distribution.
    MinEntropy,
}

impl SuccessorStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuccessorStrategy::Random => "random",
            SuccessorStrategy::MinEntropy => "minentropy",
        }
    }
}

impl std::fmt::Display for SuccessorStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SuccessorStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(SuccessorStrategy::Random),
            "minentropy" => Ok(SuccessorStrategy::MinEntropy),
            other => Err(format!("unknown successor strategy {other:?}")),
        }
    }
}

/// One accepted lexicon entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SFEntry {
    pub verb: String,
    pub frame: Frame,
    /// Count at freezing time: own observations plus inherited mass.
    pub final_count: u64,
    /// Score the filter assigned, `None` when it was undefined.
    pub score: Option<f64>,
    pub method: Method,
}

/// The learned subcategorization lexicon.
#[derive(Debug, Clone, PartialEq)]
pub struct SFLexicon {
    entries: BTreeMap<String, BTreeMap<Frame, SFEntry>>,
    pub params: MethodParams,
    pub strategy: SuccessorStrategy,
    pub seed: u64,
    pub min_verb_freq: u64,
    /// Distinct non-empty OF types in the training corpus.
    pub observed_frame_types: usize,
}

impl SFLexicon {
    pub fn new(params: MethodParams, strategy: SuccessorStrategy, seed: u64) -> SFLexicon {
        SFLexicon {
            entries: BTreeMap::new(),
            params,
            strategy,
            seed,
            min_verb_freq: 0,
            observed_frame_types: 0,
        }
    }

    pub fn insert(&mut self, entry: SFEntry) {
        self.entries
            .entry(entry.verb.clone())
            .or_default()
            .insert(entry.frame.clone(), entry);
    }

    pub fn verbs(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    pub fn verb_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_known(&self, verb: &str) -> bool {
        self.entries.contains_key(verb)
    }

    pub fn entries_for(&self, verb: &str) -> Option<&BTreeMap<Frame, SFEntry>> {
        self.entries.get(verb)
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = &SFEntry> {
        self.entries.values().flat_map(|m| m.values())
    }

    pub fn entry_count(&self) -> usize {
        self.entries.values().map(|m| m.len()).sum()
    }

    /// Total frozen mass for one verb.
    pub fn verb_mass(&self, verb: &str) -> u64 {
        self.entries_for(verb)
            .map(|m| m.values().map(|e| e.final_count).sum())
            .unwrap_or(0)
    }

    /// Total frozen mass over the lexicon.
    pub fn total_mass(&self) -> u64 {
        self.iter_entries().map(|e| e.final_count).sum()
    }

    /// The distinct non-empty frames the lexicon ended up with.
    ///
    /// Always a subset of the observed frame types, since refinement only
    /// moves counts downward in the subset lattice.
    pub fn discovered_frames(&self) -> std::collections::BTreeSet<Frame> {
        self.iter_entries()
            .filter(|e| !e.frame.is_empty())
            .map(|e| e.frame.clone())
            .collect()
    }
}

/// Runs subset refinement over a counted corpus.
///
/// Deterministic for a fixed table, parameters, strategy and seed: levels
/// are processed from the longest frames down, pairs within a level in
/// (count desc, verb, frame) order, and the only randomness is the seeded
/// generator used for successor choice.
pub fn refine_subsets(
    table: &CooccurrenceTable,
    params: &MethodParams,
    strategy: SuccessorStrategy,
    seed: u64,
) -> SFLexicon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut working: BTreeMap<String, BTreeMap<Frame, u64>> = table.counts.clone();
    // current location of every observation, frozen or still moving
    let mut frame_mass: BTreeMap<Frame, u64> = table.frame_totals.clone();

    let mut lexicon = SFLexicon::new(*params, strategy, seed);
    lexicon.min_verb_freq = table.min_verb_freq;
    lexicon.observed_frame_types = table.observed_frame_types();

    let max_len = working
        .values()
        .flat_map(|frames| frames.keys())
        .map(|f| f.len())
        .max()
        .unwrap_or(0);

    for level in (0..=max_len).rev() {
        let mut pairs: Vec<(String, Frame, u64)> = Vec::new();
        for (verb, frames) in &working {
            for (frame, &count) in frames {
                if frame.len() == level && count > 0 {
                    pairs.push((verb.clone(), frame.clone(), count));
                }
            }
        }
        // most frequent first; ties resolved lexicographically
        pairs.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1)));

        // score against the state at level entry; freezing moves no mass,
        // so evaluation order within the level cannot matter
        let scored: Vec<Association> = pairs
            .par_iter()
            .map(|(verb, frame, count)| {
                let n1 = table.verb_total(verb);
                let c = ContingencyCounts {
                    k1: *count,
                    n1,
                    k2: frame_mass.get(frame).copied().unwrap_or(0) - count,
                    n2: table.total() - n1,
                };
                evaluate_association(c, params)
            })
            .collect();

        let mut rejected: Vec<(String, Frame, u64)> = Vec::new();
        for ((verb, frame, count), association) in pairs.into_iter().zip(scored) {
            // the empty frame is the lattice bottom and is always accepted
            if level == 0 || association.accepted {
                working.get_mut(&verb).unwrap().remove(&frame);
                lexicon.insert(SFEntry {
                    verb,
                    frame,
                    final_count: count,
                    score: association.score,
                    method: params.method,
                });
            } else {
                rejected.push((verb, frame, count));
            }
        }

        if level > 0 && !rejected.is_empty() {
            let targets = choose_successors(&rejected, &frame_mass, table.total(), strategy, &mut rng);
            for ((verb, frame, count), target) in rejected.into_iter().zip(targets) {
                let verb_frames = working.get_mut(&verb).unwrap();
                verb_frames.remove(&frame);
                *verb_frames.entry(target.clone()).or_insert(0) += count;

                let remaining = frame_mass.get_mut(&frame).unwrap();
                *remaining -= count;
                if *remaining == 0 {
                    frame_mass.remove(&frame);
                }
                *frame_mass.entry(target).or_insert(0) += count;
            }
        }
    }

    debug_assert!(working.values().all(|frames| frames.is_empty()));
    lexicon
}

/// Picks the successor frame that inherits each rejected pair's count.
///
/// The returned frames are parallel to `rejected`. `frame_mass` is the
/// current global location of all counts and `total_mass` their sum
/// (constant across refinement).
pub fn choose_successors(
    rejected: &[(String, Frame, u64)],
    frame_mass: &BTreeMap<Frame, u64>,
    total_mass: u64,
    strategy: SuccessorStrategy,
    rng: &mut ChaCha8Rng,
) -> Vec<Frame> {
    match strategy {
        SuccessorStrategy::Random => rejected
            .iter()
            .map(|(_, frame, _)| {
                let options = successors(frame).expect("rejected frames are non-empty");
                options[rng.gen_range(0..options.len())].clone()
            })
            .collect(),
        SuccessorStrategy::MinEntropy => min_entropy_successors(rejected, frame_mass, total_mass),
    }
}

/// Greedy minimum-entropy assignment.
///
/// Repeatedly applies, among all still-unassigned rejected pairs and all
/// their successor options, the single transfer that most lowers the
/// entropy of the global frame distribution; each applied transfer updates
/// the simulated distribution before the next choice. Entropy deltas are
/// computed incrementally from the two affected frames only, so the result
/// does not depend on any floating-point summation order.
fn min_entropy_successors(
    rejected: &[(String, Frame, u64)],
    frame_mass: &BTreeMap<Frame, u64>,
    total_mass: u64,
) -> Vec<Frame> {
    let t = total_mass as f64;
    // -q ln q term of one frame's mass; the all-mass total T is constant
    let h = |count: u64| -> f64 {
        if count == 0 {
            return 0.0;
        }
        let q = count as f64 / t;
        -q * q.ln()
    };

    type Pending<'a> = Vec<(usize, &'a (String, Frame, u64), Vec<Frame>)>;
    let mut sim: BTreeMap<Frame, u64> = frame_mass.clone();
    let mut pending: Pending<'_> = rejected
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let options = successors(&pair.1).expect("rejected frames are non-empty");
            (i, pair, options)
        })
        .collect();
    let mut out: Vec<Option<Frame>> = vec![None; rejected.len()];

    while !pending.is_empty() {
        let mut best: Option<(f64, usize, usize)> = None;
        for (position, (_, (verb, frame, count), options)) in pending.iter().enumerate() {
            let from = sim.get(frame).copied().unwrap_or(0);
            for (option_index, option) in options.iter().enumerate() {
                let to = sim.get(option).copied().unwrap_or(0);
                let delta = h(from - count) - h(from) + h(to + count) - h(to);
                let better = match &best {
                    None => true,
                    Some((best_delta, best_position, best_option)) => {
                        let (bp, bo) = (&pending[*best_position], *best_option);
                        let best_key = (&bp.1 .0, bp.1 .1.key(), bp.2[bo].key());
                        delta < *best_delta
                            || (delta == *best_delta
                                && (verb, frame.key(), option.key()) < best_key)
                    }
                };
                if better {
                    best = Some((delta, position, option_index));
                }
            }
        }
        let (_, position, option_index) = best.expect("pending is non-empty");
        let (original_index, (_, frame, count), options) = pending.remove(position);
        let target = options[option_index].clone();

        let from = sim.get_mut(frame).unwrap();
        *from -= count;
        if *from == 0 {
            sim.remove(frame);
        }
        *sim.entry(target.clone()).or_insert(0) += count;
        out[original_index] = Some(target);
    }

    out.into_iter().map(|f| f.unwrap()).collect()
}

/// Serializes a lexicon to its TSV format.
///
/// One header comment line with the training parameters, then one line per
/// entry: `VERB FRAME FINAL_COUNT SCORE METHOD`, sorted by verb and frame.
pub fn write_lexicon(lexicon: &SFLexicon) -> String {
    use std::fmt::Write as _;

    let mut out = String::new();
    writeln!(
        out,
        "# subcat-lexicon v1 method={} threshold={} miscue_prob={} tscore_mode={} \
         strategy={} seed={} min_verb_freq={} rng=chacha8 observed_frame_types={}",
        lexicon.params.method,
        format_score(lexicon.params.threshold),
        format_score(lexicon.params.miscue_prob),
        lexicon.params.tscore_mode,
        lexicon.strategy,
        lexicon.seed,
        lexicon.min_verb_freq,
        lexicon.observed_frame_types,
    )
    .unwrap();
    for entry in lexicon.iter_entries() {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            entry.verb,
            entry.frame,
            entry.final_count,
            entry.score.map_or_else(|| "NA".to_string(), format_score),
            entry.method,
        )
        .unwrap();
    }
    out
}

/// Formats a score so that it parses back to the identical f64.
pub fn format_score(value: f64) -> String {
    let abs = value.abs();
    if value == 0.0 || (1e-4..1e9).contains(&abs) {
        format!("{value}")
    } else {
        format!("{value:e}")
    }
}

/// Parses the TSV produced by [`write_lexicon`].
pub fn read_lexicon(text: &str) -> Result<SFLexicon, InductionError> {
    let fail = |line: usize, message: String| InductionError::LexiconParse { line, message };

    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| fail(1, "empty lexicon file".to_string()))?;
    let header = header
        .strip_prefix("# subcat-lexicon v1")
        .ok_or_else(|| fail(1, "missing `# subcat-lexicon v1` header".to_string()))?;

    let mut params = MethodParams::default();
    let mut strategy = SuccessorStrategy::default();
    let mut seed = 0u64;
    let mut min_verb_freq = 0u64;
    let mut observed_frame_types = 0usize;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| fail(1, format!("malformed header field {field:?}")))?;
        let bad = |e: String| fail(1, format!("header field {key}: {e}"));
        match key {
            "method" => params.method = value.parse().map_err(bad)?,
            "threshold" => params.threshold = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "miscue_prob" => params.miscue_prob = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "tscore_mode" => params.tscore_mode = value.parse().map_err(bad)?,
            "strategy" => strategy = value.parse().map_err(bad)?,
            "seed" => seed = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "min_verb_freq" => min_verb_freq = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "observed_frame_types" => observed_frame_types = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "rng" => {
                if value != "chacha8" {
                    return Err(fail(1, format!("unsupported rng {value:?}")));
                }
            }
            other => return Err(fail(1, format!("unknown header field {other:?}"))),
        }
    }

    let mut lexicon = SFLexicon::new(params, strategy, seed);
    lexicon.min_verb_freq = min_verb_freq;
    lexicon.observed_frame_types = observed_frame_types;

    for (index, line) in lines {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = index + 1;
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(fail(lineno, format!("expected 5 columns, found {}", cols.len())));
        }
        let frame: Frame = cols[1]
            .parse()
            .map_err(|e: crate::frame::LabelParseError| fail(lineno, e.to_string()))?;
        let final_count: u64 = cols[2]
            .parse()
            .map_err(|e: std::num::ParseIntError| fail(lineno, e.to_string()))?;
        if final_count == 0 {
            return Err(fail(lineno, "final count must be positive".to_string()));
        }
        let score = match cols[3] {
            "NA" => None,
            s => Some(
                s.parse::<f64>()
                    .map_err(|e| fail(lineno, e.to_string()))?,
            ),
        };
        let method: Method = cols[4].parse().map_err(|e: String| fail(lineno, e))?;
        lexicon.insert(SFEntry {
            verb: cols[0].to_string(),
            frame,
            final_count,
            score,
            method,
        });
    }
    Ok(lexicon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::DependentLabel;
    use crate::stats::TScoreMode;

    fn n(c: u8) -> DependentLabel {
        DependentLabel::NounCase(c)
    }

    fn r(c: u8, l: &str) -> DependentLabel {
        DependentLabel::Prep(c, l.to_string())
    }

    fn observation(verb: &str, frame: Frame) -> VerbObservation {
        VerbObservation {
            verb_id: 1,
            verb_lemma: verb.to_string(),
            frame,
            sentence_index: 0,
            member_tokens: Vec::new(),
        }
    }

    fn miscue_params() -> MethodParams {
        MethodParams::default()
    }

    #[test]
    fn counting_tallies_verbs_and_frames() {
        let f = Frame::new([n(4), r(2, "od"), r(6, "v")]);
        let obs: Vec<_> = (0..10).map(|_| observation("absolvovat", f.clone())).collect();
        let table = count_cooccurrences(&obs, 5);
        assert_eq!(table.count("absolvovat", &f), 10);
        assert_eq!(table.verb_total("absolvovat"), 10);
        assert_eq!(table.frame_total(&f), 10);
        assert_eq!(table.total(), 10);
        assert_eq!(table.observed_frame_types(), 1);
        // no subset bookkeeping at counting time
        assert_eq!(table.count("absolvovat", &Frame::new([n(4)])), 0);
    }

    #[test]
    fn counting_with_no_observations_is_empty() {
        let table = count_cooccurrences(&[], 5);
        assert_eq!(table.total(), 0);
        assert_eq!(table.verbs().count(), 0);
        assert_eq!(table.observed_frame_types(), 0);
    }

    #[test]
    fn rare_verbs_are_set_aside_as_unknown() {
        let f = Frame::new([n(1)]);
        let mut obs: Vec<_> = (0..4).map(|_| observation("vzácný", f.clone())).collect();
        obs.extend((0..5).map(|_| observation("běžný", f.clone())));
        let table = count_cooccurrences(&obs, 5);
        assert_eq!(table.verb_total("běžný"), 5);
        assert_eq!(table.verb_total("vzácný"), 0);
        assert_eq!(table.unknown_verbs().get("vzácný"), Some(&4));
        // unknown observations do not enter N or c(f)
        assert_eq!(table.total(), 5);
        assert_eq!(table.frame_total(&f), 5);
    }

    #[test]
    fn successors_drop_exactly_one_member() {
        let f = Frame::new([n(4), r(2, "od"), r(6, "v")]);
        let succ = successors(&f).unwrap();
        assert_eq!(succ.len(), 3);
        assert!(succ.contains(&Frame::new([n(4), r(2, "od")])));
        assert!(succ.contains(&Frame::new([n(4), r(6, "v")])));
        assert!(succ.contains(&Frame::new([r(2, "od"), r(6, "v")])));

        assert_eq!(successors(&Frame::new([n(4)])).unwrap(), vec![Frame::empty()]);
        assert!(matches!(
            successors(&Frame::empty()),
            Err(InductionError::NoSuccessors)
        ));
    }

    #[test]
    fn single_strong_of_is_accepted_as_is() {
        // one verb, one OF seen 20 times: H*(0.05; 20, 20) is far below 0.05
        let f = Frame::new([n(1), n(4)]);
        let obs: Vec<_> = (0..20).map(|_| observation("mít", f.clone())).collect();
        let table = count_cooccurrences(&obs, 5);
        let lexicon = refine_subsets(&table, &miscue_params(), SuccessorStrategy::Random, 7);

        let entries = lexicon.entries_for("mít").unwrap();
        assert_eq!(entries.len(), 1);
        let entry = &entries[&f];
        assert_eq!(entry.final_count, 20);
        assert!(entry.score.unwrap() < 0.05);
    }

    #[test]
    fn rejected_frame_hands_its_count_to_one_subset() {
        // {N1,DB} seen once cannot beat the miscue rate; its count must end
        // up under {N1}, which then totals 10 and passes easily
        let noisy = Frame::new([n(1), DependentLabel::Adverb]);
        let clean = Frame::new([n(1)]);
        let mut obs = vec![observation("spát", noisy)];
        obs.extend((0..9).map(|_| observation("spát", clean.clone())));
        let table = count_cooccurrences(&obs, 5);
        let lexicon = refine_subsets(&table, &miscue_params(), SuccessorStrategy::MinEntropy, 7);

        let entries = lexicon.entries_for("spát").unwrap();
        assert_eq!(entries.len(), 1);
        let entry = &entries[&clean];
        assert_eq!(entry.final_count, 10);
        assert_eq!(lexicon.verb_mass("spát"), 10);
    }

    #[test]
    fn inherited_mass_merges_with_other_verbs_counts() {
        // the long OF of "absolvovat" is rare for that verb and gets pushed
        // down; minimum-entropy inheritance steers it toward the subset that
        // other verbs already make heavy
        let long = Frame::new([n(4), r(2, "od"), r(6, "v")]);
        let heavy = Frame::new([n(4), r(2, "od")]);
        let light = Frame::new([n(4)]);
        let mut obs = vec![observation("absolvovat", long)];
        obs.extend((0..30).map(|_| observation("absolvovat", light.clone())));
        obs.extend((0..8).map(|_| observation("dostat", heavy.clone())));
        let table = count_cooccurrences(&obs, 5);

        let lexicon = refine_subsets(&table, &miscue_params(), SuccessorStrategy::MinEntropy, 7);
        // the stray observation went long -> {N4,R2(od)} -> merged downward
        // until some level accepted it; nothing of it was lost
        assert_eq!(lexicon.verb_mass("absolvovat"), 31);
        assert_eq!(lexicon.verb_mass("dostat"), 8);
        assert_eq!(lexicon.total_mass(), table.total());
    }

    #[test]
    fn min_entropy_prefers_the_heavy_successor() {
        let rejected = vec![(
            "v".to_string(),
            Frame::new([n(1), n(4)]),
            3u64,
        )];
        let mut mass: BTreeMap<Frame, u64> = BTreeMap::new();
        mass.insert(Frame::new([n(1), n(4)]), 3);
        mass.insert(Frame::new([n(1)]), 100);
        mass.insert(Frame::new([n(4)]), 1);
        let total = 104;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let picks = choose_successors(&rejected, &mass, total, SuccessorStrategy::MinEntropy, &mut rng);
        assert_eq!(picks, vec![Frame::new([n(1)])]);
    }

    #[test]
    fn random_choice_is_reproducible_for_a_seed() {
        let rejected: Vec<(String, Frame, u64)> = (0..20)
            .map(|i| {
                (
                    format!("v{i}"),
                    Frame::new([n(1), n(4), DependentLabel::Adverb]),
                    1u64,
                )
            })
            .collect();
        let mass: BTreeMap<Frame, u64> = BTreeMap::new();
        let first = {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            choose_successors(&rejected, &mass, 20, SuccessorStrategy::Random, &mut rng)
        };
        let second = {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            choose_successors(&rejected, &mass, 20, SuccessorStrategy::Random, &mut rng)
        };
        assert_eq!(first, second);
        // and the choice actually varies across pairs
        let distinct: std::collections::BTreeSet<_> = first.iter().map(|f| f.key()).collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn singleton_rejection_migrates_to_the_empty_frame() {
        // 5 observations of a frame that is pure miscue noise at p = 0.5
        let f = Frame::new([DependentLabel::Adverb]);
        let obs: Vec<_> = (0..5).map(|_| observation("pršet", f.clone())).collect();
        let table = count_cooccurrences(&obs, 5);
        let params = MethodParams {
            miscue_prob: 0.9,
            ..MethodParams::default()
        };
        for strategy in [SuccessorStrategy::Random, SuccessorStrategy::MinEntropy] {
            let lexicon = refine_subsets(&table, &params, strategy, 7);
            let entries = lexicon.entries_for("pršet").unwrap();
            assert_eq!(entries.len(), 1);
            let entry = &entries[&Frame::empty()];
            assert_eq!(entry.final_count, 5);
            // the empty frame never counts as a discovery
            assert!(lexicon.discovered_frames().is_empty());
        }
    }

    #[test]
    fn refinement_conserves_mass_and_stays_inside_observed_subsets() {
        // a small mixed corpus exercising all levels
        let frames = [
            Frame::new([n(1), n(4), DependentLabel::Adverb]),
            Frame::new([n(1), n(4)]),
            Frame::new([n(1), DependentLabel::Adverb]),
            Frame::new([n(1)]),
            Frame::empty(),
        ];
        let mut obs = Vec::new();
        for (i, f) in frames.iter().enumerate() {
            for _ in 0..(2 * i + 3) {
                obs.push(observation("dát", f.clone()));
                obs.push(observation("vzít", f.clone()));
            }
        }
        let table = count_cooccurrences(&obs, 5);
        for strategy in [SuccessorStrategy::Random, SuccessorStrategy::MinEntropy] {
            let lexicon = refine_subsets(&table, &miscue_params(), strategy, 11);
            assert_eq!(lexicon.total_mass(), table.total());
            for entry in lexicon.iter_entries() {
                assert!(
                    frames.iter().any(|of| entry.frame.is_subset_of(of)),
                    "{} is not a subset of any observed frame",
                    entry.frame
                );
                assert!(entry.final_count > 0);
            }
        }
    }

    #[test]
    fn every_acceptable_of_keeps_its_own_count() {
        // two verbs, clearly distinct strong frames: no migration happens
        let fa = Frame::new([n(1), n(4)]);
        let fb = Frame::new([n(1), r(3, "k")]);
        let mut obs: Vec<_> = (0..20).map(|_| observation("mít", fa.clone())).collect();
        obs.extend((0..20).map(|_| observation("jít", fb.clone())));
        let table = count_cooccurrences(&obs, 5);
        let lexicon = refine_subsets(&table, &miscue_params(), SuccessorStrategy::Random, 7);
        assert_eq!(lexicon.entries_for("mít").unwrap()[&fa].final_count, 20);
        assert_eq!(lexicon.entries_for("jít").unwrap()[&fb].final_count, 20);
        assert_eq!(lexicon.entry_count(), 2);
    }

    #[test]
    fn lexicon_tsv_round_trips() {
        let fa = Frame::new([n(1), n(4)]);
        let fb = Frame::new([n(1), r(3, "k")]);
        let mut obs: Vec<_> = (0..20).map(|_| observation("mít", fa.clone())).collect();
        obs.extend((0..20).map(|_| observation("jít", fb.clone())));
        let table = count_cooccurrences(&obs, 5);
        let params = MethodParams {
            method: Method::Llr,
            threshold: 3.841,
            miscue_prob: 0.05,
            tscore_mode: TScoreMode::Default,
        };
        let lexicon = refine_subsets(&table, &params, SuccessorStrategy::MinEntropy, 99);
        assert!(lexicon.iter_entries().any(|e| e.score.is_some()));

        let text = write_lexicon(&lexicon);
        let back = read_lexicon(&text).unwrap();
        assert_eq!(back, lexicon);
        // serialization is canonical
        assert_eq!(write_lexicon(&back), text);
    }

    #[test]
    fn lexicon_parse_reports_bad_lines() {
        assert!(matches!(
            read_lexicon(""),
            Err(InductionError::LexiconParse { line: 1, .. })
        ));
        assert!(matches!(
            read_lexicon("not a lexicon\n"),
            Err(InductionError::LexiconParse { line: 1, .. })
        ));
        let text = "# subcat-lexicon v1 method=miscue threshold=0.05 miscue_prob=0.05 \
                    tscore_mode=default strategy=random seed=7 min_verb_freq=5 rng=chacha8 \
                    observed_frame_types=1\n\
                    mít\tN1+N4\t0\t1e-5\tmiscue\n";
        assert!(matches!(
            read_lexicon(text),
            Err(InductionError::LexiconParse { line: 2, .. })
        ));
    }

    #[test]
    fn format_score_round_trips_extremes() {
        for v in [
            0.0,
            1.0,
            0.05,
            3.841,
            0.4012630607616211,
            9.5e-27,
            1.7e300,
            -2.5,
            31.628501260157903,
        ] {
            let s = format_score(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "through {s:?}");
            assert!(!s.contains(' '));
        }
    }
}
