//! End-to-end runs of the library pipeline: generate a corpus with planted
//! frames, learn a lexicon, label fresh text, and score the decisions.

use subcat::corpus::{extract_corpus_observations, parse_corpus, PredicatePolicy};
use subcat::evaluation::score;
use subcat::frame::Frame;
use subcat::induction::{count_cooccurrences, refine_subsets, SuccessorStrategy};
use subcat::labeling::{label_corpus, LabelMode, OfTable};
use subcat::stats::MethodParams;
use subcat::synth::{Generator, GeneratorSpec, SentenceTruth};

use std::collections::BTreeSet;

/// Train on 5000 synthetic sentences, label the next 500, score them.
#[test]
fn learned_lexicon_beats_the_all_adjunct_baseline() {
    let spec = GeneratorSpec::default();
    let policy = PredicatePolicy::default();
    let mut generator = Generator::new(spec).unwrap();
    let train = generator.generate(5000);
    let test = generator.generate(500);

    // through the textual format, as the command-line tools would
    let parsed = parse_corpus(&train.corpus_text());
    assert!(parsed.rejects.is_empty());
    let observations = extract_corpus_observations(&parsed.sentences, &policy).unwrap();
    let table = count_cooccurrences(&observations, 5);
    let lexicon = refine_subsets(&table, &MethodParams::default(), SuccessorStrategy::Random, 7);

    let test_parsed = parse_corpus(&test.gold_text());
    assert!(test_parsed.rejects.is_empty());

    let learned = label_corpus(&test_parsed.sentences, &LabelMode::Learned(&lexicon), &policy).unwrap();
    let baseline1 =
        label_corpus(&test_parsed.sentences, &LabelMode::Baseline1, &policy).unwrap();
    let of_table = OfTable::build(&parsed.sentences, &policy, 5, false).unwrap();
    let baseline2 =
        label_corpus(&test_parsed.sentences, &LabelMode::Baseline2(&of_table), &policy).unwrap();

    let learned_report = score(&learned, &test_parsed.sentences).unwrap();
    let b1_report = score(&baseline1, &test_parsed.sentences).unwrap();
    let b2_report = score(&baseline2, &test_parsed.sentences).unwrap();

    for (name, report) in [
        ("learned", &learned_report),
        ("baseline1", &b1_report),
        ("baseline2", &b2_report),
    ] {
        println!(
            "{name:9} precision={:.4} recall={:.4} f1={:.4} unknown={:.4}",
            report.precision(),
            report.recall(),
            report.f1(),
            report.pct_unknown()
        );
    }

    assert!(learned_report.precision() > b1_report.precision());
    assert!(learned_report.precision() >= 0.85);

    // the all-adjunct baseline scores exactly the gold adjunct mass share
    let adjunct_mass: f64 = test_parsed
        .sentences
        .iter()
        .flat_map(|s| &s.tokens)
        .filter_map(|t| t.gold_weight().unwrap())
        .map(|w| 1.0 - w)
        .sum();
    assert_eq!(
        b1_report.precision(),
        adjunct_mass / b1_report.total_complements as f64
    );
}

/// The refinement recovers most planted frames and invents nothing that
/// the corpus cannot support.
#[test]
fn refinement_recovers_planted_frames() {
    let spec = GeneratorSpec::default();
    let policy = PredicatePolicy::default();
    let mut generator = Generator::new(spec).unwrap();
    let train = generator.generate(5000);

    let parsed = parse_corpus(&train.corpus_text());
    let observations = extract_corpus_observations(&parsed.sentences, &policy).unwrap();
    let table = count_cooccurrences(&observations, 5);
    let lexicon = refine_subsets(&table, &MethodParams::default(), SuccessorStrategy::Random, 7);

    let planted: BTreeSet<Frame> = generator
        .planted()
        .iter()
        .flat_map(|v| v.frames.iter().cloned())
        .collect();
    let discovered = lexicon.discovered_frames();
    let hit = planted.intersection(&discovered).count();
    println!(
        "planted={} discovered={} hit={} coverage={:.3}",
        planted.len(),
        discovered.len(),
        hit,
        hit as f64 / planted.len() as f64
    );
    assert!(hit as f64 >= 0.8 * planted.len() as f64);

    // every discovered frame fits inside an observed frame of its verb
    for verb in lexicon.verbs() {
        let observed = table.frames_of(verb).unwrap();
        for entry in lexicon.entries_for(verb).unwrap().values() {
            if entry.frame.is_empty() {
                continue;
            }
            assert!(
                observed.keys().any(|of| entry.frame.is_subset_of(of)),
                "{verb}: {} fits no observed frame",
                entry.frame
            );
        }
    }
}

/// Three verbs, one planted frame each, no adjuncts: the learner has
/// nothing to filter out and must return the planted lexicon verbatim.
#[test]
fn noise_free_corpus_reproduces_the_planted_record() {
    use subcat::frame::DependentLabel::*;
    let spec = GeneratorSpec {
        verb_count: 3,
        frames_per_verb: (1, 1),
        frame_length: (1, 2),
        argument_pool: vec![
            NounCase(1),
            NounCase(4),
            Prep(3, "k".to_string()),
            Infinitive,
        ],
        adjunct_pool: vec![Adverb],
        adjunct_weights: [1.0, 0.0, 0.0, 0.0],
        sentences: 90,
        zipf_exponent: 0.0,
        seed: 11,
    };
    let policy = PredicatePolicy::default();
    let mut generator = Generator::new(spec).unwrap();
    let batch = generator.generate(90);

    let parsed = parse_corpus(&batch.corpus_text());
    let observations = extract_corpus_observations(&parsed.sentences, &policy).unwrap();
    let table = count_cooccurrences(&observations, 5);
    let lexicon = refine_subsets(&table, &MethodParams::default(), SuccessorStrategy::Random, 7);

    for verb in generator.planted() {
        let entries = lexicon.entries_for(&verb.lemma).unwrap();
        assert_eq!(entries.len(), 1, "{} should keep exactly one frame", verb.lemma);
        assert_eq!(entries.values().next().unwrap().frame, verb.frames[0]);
    }
    assert_eq!(lexicon.total_mass(), 90);

    // and the realized observations match the per-sentence truths
    for (obs, truth) in observations.iter().zip(&batch.truths) {
        let SentenceTruth { verb, frame, adjuncts } = truth;
        assert_eq!(&obs.verb_lemma, verb);
        assert_eq!(&obs.frame, frame);
        assert!(adjuncts.is_empty());
    }
}

/// MinEntropy and Random migration both conserve mass on the same corpus;
/// their lexicons may differ, their totals may not.
#[test]
fn both_strategies_conserve_the_same_mass() {
    let spec = GeneratorSpec {
        verb_count: 12,
        sentences: 600,
        seed: 3,
        ..GeneratorSpec::default()
    };
    let policy = PredicatePolicy::default();
    let mut generator = Generator::new(spec).unwrap();
    let batch = generator.generate(600);
    let parsed = parse_corpus(&batch.corpus_text());
    let observations = extract_corpus_observations(&parsed.sentences, &policy).unwrap();
    let table = count_cooccurrences(&observations, 5);

    let params = MethodParams::default();
    let random = refine_subsets(&table, &params, SuccessorStrategy::Random, 7);
    let min_entropy = refine_subsets(&table, &params, SuccessorStrategy::MinEntropy, 7);
    assert_eq!(random.total_mass(), table.total());
    assert_eq!(min_entropy.total_mass(), table.total());
    for verb in table.verbs() {
        assert_eq!(random.verb_mass(verb), table.verb_total(verb));
        assert_eq!(min_entropy.verb_mass(verb), table.verb_total(verb));
    }
}
