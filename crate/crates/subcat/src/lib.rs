//! Verb subcategorization frame learning from dependency treebanks.
//!
//! The crate takes a dependency-parsed corpus, collects the observed frame
//! (the set of dependent labels) of every finite verb occurrence, and
//! decides which label combinations are genuine subcategorization frames
//! and which only arise because adjuncts tag along. Three statistical
//! filters are available — a log-likelihood ratio, a t-score, and a
//! binomial miscue test — each driving the same iterative refinement:
//! observed frames that fail the filter hand their counts down to subframes
//! one member smaller, until every occurrence is explained by an accepted
//! frame.
//!
//! The learned lexicon labels verb dependents in fresh text as arguments
//! or adjuncts ([`labeling`]), and [`evaluation`] scores those decisions
//! against weighted gold annotations. [`synth`] generates corpora with
//! planted frames so the whole pipeline can be exercised against a known
//! truth.
//!
//! ```
//! use subcat::corpus::{extract_corpus_observations, parse_corpus, PredicatePolicy};
//! use subcat::induction::{count_cooccurrences, refine_subsets, SuccessorStrategy};
//! use subcat::stats::MethodParams;
//!
//! let text = "1\tvidím\tvidět\tVPP1A\t0\tPred\n2\tdům\tdům\tN4\t1\tObj\n";
//! let parsed = parse_corpus(text);
//! let observations =
//!     extract_corpus_observations(&parsed.sentences, &PredicatePolicy::default()).unwrap();
//! let table = count_cooccurrences(&observations, 1);
//! let lexicon = refine_subsets(&table, &MethodParams::default(), SuccessorStrategy::Random, 7);
//! assert_eq!(lexicon.total_mass(), 1);
//! ```

pub mod corpus;
pub mod evaluation;
pub mod frame;
pub mod induction;
pub mod labeling;
pub mod stats;
pub mod synth;

pub use corpus::{parse_corpus, write_corpus, ParsedCorpus, PredicatePolicy, Sentence, Token};
pub use evaluation::EvalReport;
pub use frame::{DependentLabel, Frame};
pub use induction::{
    count_cooccurrences, read_lexicon, refine_subsets, write_lexicon, CooccurrenceTable, SFEntry,
    SFLexicon, SuccessorStrategy,
};
pub use labeling::{label_corpus, Decision, LabelMode, OfTable};
pub use stats::{Method, MethodParams, TScoreMode};
pub use synth::{Generator, GeneratorSpec};
