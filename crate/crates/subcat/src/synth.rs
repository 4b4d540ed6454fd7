//! Synthetic treebank generator with planted ground truth.
//!
//! Each generated sentence realizes one verb (drawn from a Zipf
//! distribution over the verb inventory) with one of its planted SFs plus a
//! sampled number of adjuncts, all as flat dependents of the verb;
//! prepositional dependents get the two-level preposition→noun shape. Gold
//! weights are `1` on planted-SF members and `0` on sampled adjuncts, so
//! corpora come with their own evaluation truth and per-sentence records.
//!
//! A sampled adjunct whose label collides with a planted member of the
//! sentence's frame is redrawn (the collapsed observed frame would
//! otherwise leave that token's gold weight ambiguous); duplicates among
//! adjuncts themselves are allowed. All randomness flows from one seeded
//! ChaCha8 stream, so a fixed spec yields byte-identical output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{write_corpus, Sentence, Token};
use crate::frame::{DependentLabel, Frame};
use crate::induction::{SFEntry, SFLexicon};
use crate::stats::MethodParams;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("verb count must be positive")]
    NoVerbs,
    #[error("invalid range {lo}..={hi} for {what}")]
    BadRange { what: &'static str, lo: usize, hi: usize },
    #[error("argument pool has {pool} labels but planted frames of length {need} are requested")]
    ArgumentPoolTooSmall { pool: usize, need: usize },
    #[error("not enough distinct frames available: {available} possible, {need} per verb requested")]
    FrameSpaceTooSmall { available: usize, need: usize },
    #[error("adjunct weights must be non-negative, finite, and sum to a positive value")]
    BadAdjunctWeights,
    #[error("adjunct pool has nothing to offer next to planted frame {frame} (pool exhausted by deduplication)")]
    AdjunctPoolExhausted { frame: String },
    #[error("zipf exponent must be finite")]
    BadZipf,
    #[error("gave up drawing distinct planted frames after {attempts} attempts")]
    FrameDrawStalled { attempts: usize },
}

/// Configuration of the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub verb_count: usize,
    /// Planted frames per verb, inclusive range.
    pub frames_per_verb: (usize, usize),
    /// Members per planted frame, inclusive range.
    pub frame_length: (usize, usize),
    /// Labels planted frames are built from.
    pub argument_pool: Vec<DependentLabel>,
    /// Labels adjunct noise is sampled from (overlap with the argument pool
    /// is allowed and realistic).
    pub adjunct_pool: Vec<DependentLabel>,
    /// Relative weights for 0, 1, 2, 3 adjuncts in a sentence.
    pub adjunct_weights: [f64; 4],
    /// Sentences produced by the one-shot [`generate`].
    pub sentences: usize,
    /// Zipf exponent of the verb frequency distribution (0 = uniform).
    pub zipf_exponent: f64,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        use DependentLabel::*;
        let prep = |c, l: &str| Prep(c, l.to_string());
        GeneratorSpec {
            verb_count: 50,
            frames_per_verb: (1, 3),
            frame_length: (1, 3),
            // The four core bare-case slots. The pool is deliberately small:
            // 50 verbs share 14 possible frames, so each planted frame is
            // realized by several verbs and 5000 sentences give the learner
            // a fair shot at recovering all of them. Pass a larger pool for
            // a harder corpus.
            argument_pool: vec![NounCase(1), NounCase(4), NounCase(3), NounCase(2)],
            // Adjunct variety matters more than adjunct realism: each label
            // must stay individually rare or frame+adjunct combinations
            // start looking like frames themselves. N2/N7 overlap with
            // argument-pool labels on purpose (bare-case adverbials exist).
            adjunct_pool: vec![
                Adverb,
                prep(2, "do"),
                prep(2, "od"),
                prep(2, "u"),
                prep(2, "kolem"),
                prep(2, "vedle"),
                prep(2, "během"),
                prep(2, "podle"),
                prep(3, "kvůli"),
                prep(3, "proti"),
                prep(3, "díky"),
                prep(4, "pro"),
                prep(4, "přes"),
                prep(4, "za"),
                prep(4, "na"),
                prep(6, "v"),
                prep(6, "na"),
                prep(6, "po"),
                prep(6, "při"),
                prep(6, "o"),
                prep(7, "s"),
                prep(7, "za"),
                prep(7, "před"),
                prep(7, "nad"),
                prep(7, "pod"),
                prep(7, "mezi"),
                NounCase(7),
                NounCase(2),
                Complementizer("když".to_string()),
                Complementizer("protože".to_string()),
                Complementizer("aby".to_string()),
                Complementizer("až".to_string()),
                Complementizer("než".to_string()),
            ],
            adjunct_weights: [0.0, 1.0, 1.0, 1.0],
            sentences: 5000,
            zipf_exponent: 1.0,
            seed: 7,
        }
    }
}

impl GeneratorSpec {
    /// Uniform adjunct-count weights over an inclusive subrange of 0..=3.
    pub fn adjunct_weights_for_range(lo: usize, hi: usize) -> Result<[f64; 4], SynthError> {
        if lo > hi || hi > 3 {
            return Err(SynthError::BadRange {
                what: "adjuncts per sentence",
                lo,
                hi,
            });
        }
        let mut weights = [0.0; 4];
        for w in weights.iter_mut().take(hi + 1).skip(lo) {
            *w = 1.0;
        }
        Ok(weights)
    }
}

/// One verb of the inventory with its planted frames.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedVerb {
    pub lemma: String,
    pub frames: Vec<Frame>,
}

/// Ground truth for one generated sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceTruth {
    pub verb: String,
    pub frame: Frame,
    /// Sampled adjunct labels, duplicates possible.
    pub adjuncts: Vec<DependentLabel>,
}

/// One generated batch of sentences.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    pub sentences: Vec<Sentence>,
    pub truths: Vec<SentenceTruth>,
}

impl Batch {
    /// Six-column corpus text.
    pub fn corpus_text(&self) -> String {
        write_corpus(&self.sentences, false)
    }

    /// Seven-column gold text with argument weights.
    pub fn gold_text(&self) -> String {
        write_corpus(&self.sentences, true)
    }
}

/// Seeded generator; batches drawn from it continue one random stream.
#[derive(Debug, Clone)]
pub struct Generator {
    spec: GeneratorSpec,
    verbs: Vec<PlantedVerb>,
    zipf_cdf: Vec<f64>,
    rng: ChaCha8Rng,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut result = 1usize;
    for i in 0..k {
        result = result.saturating_mul(n - i) / (i + 1);
    }
    result
}

impl Generator {
    /// Validates the settings and builds the verb inventory.
    pub fn new(spec: GeneratorSpec) -> Result<Generator, SynthError> {
        if spec.verb_count == 0 {
            return Err(SynthError::NoVerbs);
        }
        for (what, (lo, hi), floor) in [
            ("frames per verb", spec.frames_per_verb, 1),
            ("frame length", spec.frame_length, 1),
        ] {
            if lo > hi || lo < floor {
                return Err(SynthError::BadRange { what, lo, hi });
            }
        }
        if spec.argument_pool.len() < spec.frame_length.1 {
            return Err(SynthError::ArgumentPoolTooSmall {
                pool: spec.argument_pool.len(),
                need: spec.frame_length.1,
            });
        }
        let frame_space: usize = (spec.frame_length.0..=spec.frame_length.1)
            .map(|len| binomial(spec.argument_pool.len(), len))
            .sum();
        if frame_space < spec.frames_per_verb.1 {
            return Err(SynthError::FrameSpaceTooSmall {
                available: frame_space,
                need: spec.frames_per_verb.1,
            });
        }
        if spec
            .adjunct_weights
            .iter()
            .any(|w| !w.is_finite() || *w < 0.0)
            || spec.adjunct_weights.iter().sum::<f64>() <= 0.0
        {
            return Err(SynthError::BadAdjunctWeights);
        }
        if !spec.zipf_exponent.is_finite() {
            return Err(SynthError::BadZipf);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let width = spec.verb_count.to_string().len();
        let mut verbs = Vec::with_capacity(spec.verb_count);
        let adjuncts_possible = spec.adjunct_weights[1..].iter().any(|w| *w > 0.0);
        for index in 0..spec.verb_count {
            let lemma = format!("v{:0width$}", index + 1, width = width);
            let frame_count = rng.gen_range(spec.frames_per_verb.0..=spec.frames_per_verb.1);
            let mut frames: Vec<Frame> = Vec::with_capacity(frame_count);
            let mut attempts = 0;
            while frames.len() < frame_count {
                attempts += 1;
                if attempts > 10_000 {
                    return Err(SynthError::FrameDrawStalled { attempts });
                }
                let len = rng.gen_range(spec.frame_length.0..=spec.frame_length.1);
                let members = spec
                    .argument_pool
                    .choose_multiple(&mut rng, len)
                    .cloned()
                    .collect::<Vec<_>>();
                let frame = Frame::new(members);
                if frame.len() == len && !frames.contains(&frame) {
                    frames.push(frame);
                }
            }
            for frame in &frames {
                let free = spec
                    .adjunct_pool
                    .iter()
                    .filter(|l| !frame.contains(l))
                    .count();
                if adjuncts_possible && free == 0 {
                    return Err(SynthError::AdjunctPoolExhausted {
                        frame: frame.key().to_string(),
                    });
                }
            }
            verbs.push(PlantedVerb { lemma, frames });
        }

        let mut zipf_cdf = Vec::with_capacity(spec.verb_count);
        let mut acc = 0.0;
        for rank in 1..=spec.verb_count {
            acc += (rank as f64).powf(-spec.zipf_exponent);
            zipf_cdf.push(acc);
        }
        for c in &mut zipf_cdf {
            *c /= acc;
        }

        Ok(Generator {
            spec,
            verbs,
            zipf_cdf,
            rng,
        })
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    /// The verb inventory with its planted frames.
    pub fn planted(&self) -> &[PlantedVerb] {
        &self.verbs
    }

    fn draw_cdf(rng: &mut ChaCha8Rng, cdf: &[f64]) -> usize {
        let u: f64 = rng.gen();
        cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
    }

    /// Generates the next `count` sentences of the stream.
    pub fn generate(&mut self, count: usize) -> Batch {
        let mut adjunct_cdf = [0.0; 4];
        let mut acc = 0.0;
        for (slot, w) in self.spec.adjunct_weights.iter().enumerate() {
            acc += w;
            adjunct_cdf[slot] = acc;
        }
        for c in &mut adjunct_cdf {
            *c /= acc;
        }

        let mut batch = Batch {
            sentences: Vec::with_capacity(count),
            truths: Vec::with_capacity(count),
        };
        for _ in 0..count {
            let verb_index = Self::draw_cdf(&mut self.rng, &self.zipf_cdf);
            let verb = &self.verbs[verb_index];
            let frame_index = self.rng.gen_range(0..verb.frames.len());
            let lemma = verb.lemma.clone();
            let frame = verb.frames[frame_index].clone();

            let adjunct_count = Self::draw_cdf(&mut self.rng, &adjunct_cdf);
            let free_pool: Vec<&DependentLabel> = self
                .spec
                .adjunct_pool
                .iter()
                .filter(|l| !frame.contains(l))
                .collect();
            let mut adjuncts = Vec::with_capacity(adjunct_count);
            for _ in 0..adjunct_count {
                adjuncts.push(free_pool[self.rng.gen_range(0..free_pool.len())].clone());
            }

            // planted members carry weight 1, adjuncts weight 0
            let mut items: Vec<(DependentLabel, &'static str)> = frame
                .members()
                .iter()
                .map(|l| (l.clone(), "1"))
                .chain(adjuncts.iter().map(|l| (l.clone(), "0")))
                .collect();
            items.shuffle(&mut self.rng);
            let verb_slot = self.rng.gen_range(0..=items.len());

            batch
                .sentences
                .push(realize_sentence(&lemma, &items, verb_slot));
            batch.truths.push(SentenceTruth {
                verb: lemma,
                frame,
                adjuncts,
            });
        }
        batch
    }
}

/// Lays out the tokens of one sentence.
fn realize_sentence(verb: &str, items: &[(DependentLabel, &'static str)], verb_slot: usize) -> Sentence {
    let mut tokens: Vec<Token> = Vec::new();
    let mut verb_id = 0;
    let mut pending_heads: Vec<usize> = Vec::new(); // token indices pointing at the verb

    let push = |tokens: &mut Vec<Token>, form: &str, lemma: &str, tag: String| -> usize {
        tokens.push(Token {
            id: tokens.len() + 1,
            form: form.to_string(),
            lemma: lemma.to_string(),
            tag,
            head: 0,
            func: String::new(),
            arg: None,
        });
        tokens.len() - 1
    };

    for (position, (label, weight)) in items.iter().enumerate() {
        if position == verb_slot {
            verb_id = push(&mut tokens, verb, verb, "VPP3A".to_string()) + 1;
        }
        let index = match label {
            DependentLabel::NounCase(c) => {
                let noun = format!("n{c}");
                push(&mut tokens, &noun, &noun, format!("N{c}"))
            }
            DependentLabel::Prep(c, lemma) => {
                let prep = push(&mut tokens, lemma, lemma, format!("R{c}"));
                // the governed noun hangs under the preposition
                let noun = format!("n{c}");
                let child = push(&mut tokens, &noun, &noun, format!("N{c}"));
                tokens[child].head = prep + 1;
                prep
            }
            DependentLabel::Reflexive(c) => {
                let form = if *c == 3 { "si" } else { "se" };
                push(&mut tokens, form, form, format!("PR{c}"))
            }
            DependentLabel::Clause => push(&mut tokens, "cl", "cl", "S".to_string()),
            DependentLabel::Complementizer(lemma) => {
                push(&mut tokens, lemma, lemma, "JS".to_string())
            }
            DependentLabel::Infinitive => push(&mut tokens, "inf", "inf", "VINF".to_string()),
            DependentLabel::PassiveParticiple => {
                push(&mut tokens, "pas", "pas", "VPAS".to_string())
            }
            DependentLabel::Adverb => push(&mut tokens, "adv", "adv", "DB".to_string()),
        };
        tokens[index].arg = Some(weight.to_string());
        pending_heads.push(index);
    }
    if verb_id == 0 {
        verb_id = push(&mut tokens, verb, verb, "VPP3A".to_string()) + 1;
    }
    for index in pending_heads {
        tokens[index].head = verb_id;
    }
    Sentence { tokens }
}

/// One-shot generation from a [`GeneratorSpec`]: corpus text, gold text,
/// planted lexicon TSV (with counts as realized in this corpus).
pub fn generate(spec: GeneratorSpec) -> Result<(String, String, String), SynthError> {
    let count = spec.sentences;
    let mut generator = Generator::new(spec)?;
    let batch = generator.generate(count);
    let lexicon = planted_lexicon(&generator, &batch);
    Ok((
        batch.corpus_text(),
        batch.gold_text(),
        crate::induction::write_lexicon(&lexicon),
    ))
}

/// The planted inventory as a lexicon, with counts as realized in `batch`.
///
/// Frames the batch never realized are omitted (the format requires
/// positive counts); scores are `NA` since no filter produced them.
pub fn planted_lexicon(generator: &Generator, batch: &Batch) -> SFLexicon {
    let mut counts: std::collections::BTreeMap<(String, Frame), u64> =
        std::collections::BTreeMap::new();
    for truth in &batch.truths {
        *counts
            .entry((truth.verb.clone(), truth.frame.clone()))
            .or_insert(0) += 1;
    }
    let mut lexicon = SFLexicon::new(
        MethodParams::default(),
        crate::induction::SuccessorStrategy::Random,
        generator.spec.seed,
    );
    let planted_types: std::collections::BTreeSet<&Frame> = generator
        .verbs
        .iter()
        .flat_map(|v| v.frames.iter())
        .collect();
    lexicon.observed_frame_types = planted_types.len();
    for ((verb, frame), final_count) in counts {
        lexicon.insert(SFEntry {
            verb,
            frame,
            final_count,
            score: None,
            method: MethodParams::default().method,
        });
    }
    lexicon
}
