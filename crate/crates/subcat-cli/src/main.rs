//! Command-line front end for the subcat library: generate synthetic
//! corpora, train SF lexicons, label corpora, evaluate, and dump the raw
//! association statistics.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use subcat::corpus::{
    extract_corpus_observations, parse_corpus, ParsedCorpus, PredicatePolicy,
};
use subcat::evaluation::{format_table, format_tsv, parse_counts_file, score, EvalReport};
use subcat::induction::{
    count_cooccurrences, read_lexicon, refine_subsets, write_lexicon, SuccessorStrategy,
};
use subcat::labeling::{annotate_corpus, label_corpus, labels_from_annotated, LabelMode, OfTable};
use subcat::stats::{evaluate_association, ContingencyCounts, Method, MethodParams, TScoreMode};
use subcat::synth::{planted_lexicon, Generator, GeneratorSpec};

/// Learn verb subcategorization frames from dependency treebanks.
#[derive(Debug, Parser)]
#[command(name = "subcat", version, about)]
struct Cli {
    /// Worker threads (0 = one per CPU). Never changes output bytes.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic corpus with a planted SF lexicon.
    Gen(GenArgs),
    /// Learn an SF lexicon from a dependency corpus.
    Train(TrainArgs),
    /// Label verb dependents of a corpus as arguments or adjuncts.
    Label(LabelArgs),
    /// Score labeled corpora against weighted gold annotations.
    Eval(EvalArgs),
    /// Dump per-(verb, frame) association statistics.
    StatsDump(StatsDumpArgs),
}

/// An inclusive `lo:hi` range; a bare number means `n:n`.
#[derive(Debug, Clone, Copy)]
struct RangeArg {
    lo: usize,
    hi: usize,
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            part.parse::<usize>()
                .map_err(|_| format!("`{part}` is not a count"))
        };
        let (lo, hi) = match s.split_once(':') {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("range `{s}` is empty"));
        }
        Ok(RangeArg { lo, hi })
    }
}

impl fmt::Display for RangeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Directory for train.tsv, train.gold.tsv, test.tsv, test.gold.tsv,
    /// planted.tsv (created if missing).
    #[arg(long)]
    out: PathBuf,
    /// Training sentences.
    #[arg(long, default_value_t = 5000)]
    sentences: usize,
    /// Held-out test sentences (drawn from the same stream).
    #[arg(long, default_value_t = 500)]
    test_sentences: usize,
    /// Verb inventory size.
    #[arg(long, default_value_t = 50)]
    verbs: usize,
    /// Planted frames per verb.
    #[arg(long, default_value = "1:3")]
    frames_per_verb: RangeArg,
    /// Members per planted frame.
    #[arg(long, default_value = "1:3")]
    frame_len: RangeArg,
    /// Adjuncts per sentence (within 0:3).
    #[arg(long, default_value = "1:3")]
    adjuncts: RangeArg,
    /// Zipf exponent of the verb frequency distribution.
    #[arg(long, default_value_t = 1.0)]
    zipf: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Dependency corpus to learn from.
    #[arg(long)]
    corpus: PathBuf,
    /// Where to write the lexicon TSV.
    #[arg(long)]
    out: PathBuf,
    /// Filter: llr, tscore, or miscue.
    #[arg(long, default_value_t = Method::Miscue)]
    method: Method,
    /// Accept threshold. Defaults per method: miscue 0.05, llr 10.828,
    /// tscore 2.326.
    #[arg(long)]
    threshold: Option<f64>,
    /// Assumed miscue probability (miscue method only).
    #[arg(long)]
    miscue_prob: Option<f64>,
    /// Successor choice for rejected frames: random or minentropy.
    #[arg(long, default_value_t = SuccessorStrategy::Random)]
    successor: SuccessorStrategy,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Verbs seen fewer times than this are left unknown.
    #[arg(long, default_value_t = 5)]
    min_verb_freq: u64,
    /// t-score variance estimate: default or paper (tscore method only).
    #[arg(long)]
    tscore_mode: Option<TScoreMode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Use a trained lexicon.
    Learned,
    /// Call every dependent an adjunct.
    Baseline1,
    /// Match against raw observed frames from a training corpus.
    Baseline2,
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Corpus to label.
    #[arg(long)]
    corpus: PathBuf,
    /// Where to write the annotated corpus.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Learned)]
    mode: ModeArg,
    /// Trained lexicon (learned mode).
    #[arg(long, required_if_eq("mode", "learned"))]
    lexicon: Option<PathBuf>,
    /// Training corpus to take observed frames from (baseline2 mode).
    #[arg(long, required_if_eq("mode", "baseline2"))]
    train_corpus: Option<PathBuf>,
    /// Verb frequency floor for baseline2's frame table.
    #[arg(long, default_value_t = 5)]
    min_verb_freq: u64,
    /// Distinguish baseline2 slots by syntactic function as well.
    #[arg(long)]
    use_func: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Gold corpus with argument weights.
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Labeled corpora to score, as NAME=PATH.
    #[arg(value_name = "NAME=PATH")]
    labeled: Vec<String>,
    /// Score precomputed aggregates instead of corpora.
    #[arg(long, conflicts_with_all = ["gold", "labeled"])]
    counts: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportArg::Table)]
    report: ReportArg,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportArg {
    Table,
    Tsv,
}

#[derive(Debug, Args)]
struct StatsDumpArgs {
    /// Dependency corpus to tabulate.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value_t = Method::Miscue)]
    method: Method,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    miscue_prob: Option<f64>,
    #[arg(long)]
    tscore_mode: Option<TScoreMode>,
    #[arg(long, default_value_t = 5)]
    min_verb_freq: u64,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .context("setting up the thread pool")?;
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Train(args) => train(args),
        Command::Label(args) => label(args),
        Command::Eval(args) => eval(args),
        Command::StatsDump(args) => stats_dump(args),
    }
}

/// Resolves method parameters shared by `train` and `stats-dump`, warning
/// about flags the chosen method ignores.
fn resolve_params(
    method: Method,
    threshold: Option<f64>,
    miscue_prob: Option<f64>,
    tscore_mode: Option<TScoreMode>,
) -> MethodParams {
    if miscue_prob.is_some() && method != Method::Miscue {
        eprintln!("warning: --miscue-prob is ignored by method {method}");
    }
    if tscore_mode.is_some() && method != Method::TScore {
        eprintln!("warning: --tscore-mode is ignored by method {method}");
    }
    let threshold = threshold.unwrap_or(match method {
        Method::Miscue => 0.05,
        Method::Llr => 10.828,
        Method::TScore => 2.326,
    });
    MethodParams {
        method,
        threshold,
        miscue_prob: miscue_prob.unwrap_or(0.05),
        tscore_mode: tscore_mode.unwrap_or(TScoreMode::Default),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_string(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Parses a corpus file, reporting rejected sentences on stderr.
fn parse_corpus_file(path: &Path) -> Result<ParsedCorpus> {
    let parsed = parse_corpus(&read_to_string(path)?);
    if !parsed.rejects.is_empty() {
        eprintln!(
            "warning: {}: skipped {} malformed sentence(s), first: {}",
            path.display(),
            parsed.rejects.len(),
            parsed.rejects[0]
        );
    }
    Ok(parsed)
}

fn gen(args: GenArgs) -> Result<()> {
    if args.adjuncts.hi > 3 {
        bail!("--adjuncts must lie within 0:3");
    }
    let spec = GeneratorSpec {
        verb_count: args.verbs,
        frames_per_verb: (args.frames_per_verb.lo, args.frames_per_verb.hi),
        frame_length: (args.frame_len.lo, args.frame_len.hi),
        adjunct_weights: GeneratorSpec::adjunct_weights_for_range(
            args.adjuncts.lo,
            args.adjuncts.hi,
        )?,
        sentences: args.sentences,
        zipf_exponent: args.zipf,
        seed: args.seed,
        ..GeneratorSpec::default()
    };
    let mut generator = Generator::new(spec)?;
    let train = generator.generate(args.sentences);
    let test = generator.generate(args.test_sentences);
    let planted = planted_lexicon(&generator, &train);

    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let file = |name: &str| args.out.join(name);
    write_string(&file("train.tsv"), &train.corpus_text())?;
    write_string(&file("train.gold.tsv"), &train.gold_text())?;
    write_string(&file("test.tsv"), &test.corpus_text())?;
    write_string(&file("test.gold.tsv"), &test.gold_text())?;
    write_string(&file("planted.tsv"), &write_lexicon(&planted))?;

    let frames: std::collections::BTreeSet<_> = generator
        .planted()
        .iter()
        .flat_map(|v| v.frames.iter())
        .collect();
    eprintln!(
        "wrote {} train + {} test sentences ({} verbs, {} distinct planted frames) to {}",
        args.sentences,
        args.test_sentences,
        generator.planted().len(),
        frames.len(),
        args.out.display()
    );
    Ok(())
}

fn train(args: TrainArgs) -> Result<()> {
    let params = resolve_params(args.method, args.threshold, args.miscue_prob, args.tscore_mode);
    let parsed = parse_corpus_file(&args.corpus)?;
    let observations = extract_corpus_observations(&parsed.sentences, &PredicatePolicy::default())
        .with_context(|| format!("extracting frames from {}", args.corpus.display()))?;
    if observations.is_empty() {
        eprintln!(
            "warning: {} contains no verb occurrences; writing an empty lexicon",
            args.corpus.display()
        );
    }
    let table = count_cooccurrences(&observations, args.min_verb_freq);
    let lexicon = refine_subsets(&table, &params, args.successor, args.seed);
    write_string(&args.out, &write_lexicon(&lexicon))?;
    eprintln!(
        "trained on {} observations: {} verbs ({} below --min-verb-freq), {} entries, {} frames, wrote {}",
        observations.len(),
        lexicon.verb_count(),
        table.unknown_verbs().len(),
        lexicon.entry_count(),
        lexicon.discovered_frames().len(),
        args.out.display()
    );
    Ok(())
}

fn label(args: LabelArgs) -> Result<()> {
    let policy = PredicatePolicy::default();
    let parsed = parse_corpus_file(&args.corpus)?;

    // the borrowed mode keeps whichever backing store it needs alive
    let lexicon;
    let of_table;
    let mode = match args.mode {
        ModeArg::Learned => {
            let path = args.lexicon.as_ref().expect("clap enforces --lexicon");
            lexicon = read_lexicon(&read_to_string(path)?)
                .with_context(|| format!("parsing lexicon {}", path.display()))?;
            LabelMode::Learned(&lexicon)
        }
        ModeArg::Baseline1 => LabelMode::Baseline1,
        ModeArg::Baseline2 => {
            let path = args.train_corpus.as_ref().expect("clap enforces --train-corpus");
            let train_parsed = parse_corpus_file(path)?;
            of_table = OfTable::build(
                &train_parsed.sentences,
                &policy,
                args.min_verb_freq,
                args.use_func,
            )?;
            LabelMode::Baseline2(&of_table)
        }
    };

    let labels = label_corpus(&parsed.sentences, &mode, &policy)?;
    write_string(&args.out, &annotate_corpus(&parsed.sentences, &labels)?)?;

    let decisions: usize = labels.iter().map(|l| l.decisions.len()).sum();
    let unknown: usize = labels
        .iter()
        .flat_map(|l| &l.verb_nodes)
        .filter(|v| !v.known)
        .count();
    eprintln!(
        "labeled {} sentences ({decisions} dependent decisions, {unknown} unknown verb occurrences), wrote {}",
        parsed.sentences.len(),
        args.out.display()
    );
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let reports: Vec<(String, EvalReport)> = if let Some(counts) = &args.counts {
        parse_counts_file(&read_to_string(counts)?)
            .with_context(|| format!("parsing counts file {}", counts.display()))?
    } else {
        let gold = args
            .gold
            .as_ref()
            .context("either --gold with NAME=PATH corpora or --counts is required")?;
        if args.labeled.is_empty() {
            bail!("nothing to score: pass labeled corpora as NAME=PATH");
        }
        let gold_parsed = parse_corpus_file(gold)?;
        let policy = PredicatePolicy::default();
        let mut reports = Vec::new();
        for pair in &args.labeled {
            let (name, path) = pair
                .split_once('=')
                .with_context(|| format!("`{pair}` is not NAME=PATH"))?;
            let labeled = parse_corpus_file(Path::new(path))?;
            let labels = labels_from_annotated(&labeled.sentences, &policy)
                .with_context(|| format!("reading annotations of {path}"))?;
            let report = score(&labels, &gold_parsed.sentences)
                .with_context(|| format!("scoring {name}"))?;
            reports.push((name.to_string(), report));
        }
        reports
    };

    let text = match args.report {
        ReportArg::Table => format_table(&reports),
        ReportArg::Tsv => format_tsv(&reports),
    };
    match &args.out {
        Some(path) => write_string(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn stats_dump(args: StatsDumpArgs) -> Result<()> {
    let params = resolve_params(args.method, args.threshold, args.miscue_prob, args.tscore_mode);
    let parsed = parse_corpus_file(&args.corpus)?;
    let observations = extract_corpus_observations(&parsed.sentences, &PredicatePolicy::default())
        .with_context(|| format!("extracting frames from {}", args.corpus.display()))?;
    let table = count_cooccurrences(&observations, args.min_verb_freq);

    let mut text = String::from("verb\tframe\tk1\tn1\tk2\tn2\tscore\taccepted\n");
    for verb in table.verbs() {
        let n1 = table.verb_total(verb);
        for (frame, &k1) in table.frames_of(verb).into_iter().flatten() {
            let k2 = table.frame_total(frame) - k1;
            let n2 = table.total() - n1;
            let counts = ContingencyCounts { k1, n1, k2, n2 };
            let association = evaluate_association(counts, &params);
            let score = association
                .score
                .map(subcat::induction::format_score)
                .unwrap_or_else(|| "NA".to_string());
            text.push_str(&format!(
                "{verb}\t{frame}\t{k1}\t{n1}\t{k2}\t{n2}\t{score}\t{}\n",
                association.accepted
            ));
        }
    }
    match &args.out {
        Some(path) => write_string(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}
