//! `morphseg` — morphological and subword segmentation toolkit.
//!
//! Subcommands: `learn-bpe`, `segment`, `desegment`, `stats`, `sweep`,
//! `score`. All corpus I/O is line-oriented UTF-8 over files or standard
//! streams (`-`); diagnostics go to stderr as `input:line: message`. The
//! exit code is 0 exactly when no errors occurred (lenient mode downgrades
//! desegmentation problems to warnings).

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use morphseg::{
    apply_bpe, bleu, build_stem_dictionary, chrf3, compute_morph_stats,
    desegment, desegment_lenient, learn_bpe, parse_analyzed_line, render_tokens, sweep_merges,
    AnalyzedSentence, BpeModel, CorpusStats, FrequencyDictionary, MarkerSet, MorphStats,
    RawSentence, Segmenter, StatsAccumulator, StrategyKind, SweepInput, SweepRow,
    DEFAULT_DELIMITER,
};

const DEFAULT_MIN_PAIR_FREQUENCY: u64 = 2;

#[derive(Parser)]
#[command(
    name = "morphseg",
    version,
    about = "Morphological and subword segmentation for agglutinative languages",
    after_help = "Input and output paths accept \"-\" for the standard streams."
)]
struct Cli {
    /// TOML file supplying defaults for strategy, delimiter, merges,
    /// min_frequency, lenient, and [markers] stem/suffix/bpe; command-line
    /// flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a BPE merge list from a corpus and write it as a model file.
    LearnBpe(LearnBpeArgs),
    /// Segment a corpus under one of the six strategies.
    Segment(SegmentArgs),
    /// Re-assemble surface text from segmented, marker-carrying tokens.
    Desegment(DesegmentArgs),
    /// Report corpus statistics (and morphological type counts for
    /// analyzed corpora).
    Stats(StatsArgs),
    /// Measure emitted vocabulary size across a series of merge counts.
    Sweep(SweepArgs),
    /// Score a hypothesis corpus against a reference corpus.
    Score(ScoreArgs),
}

#[derive(Args)]
struct LearnBpeArgs {
    /// Corpus to learn from: raw token lines, or an analyzed corpus with
    /// --on-stems.
    #[arg(long, default_value = "-", value_name = "FILE")]
    input: String,
    /// Model file to write.
    #[arg(long, default_value = "-", value_name = "FILE")]
    output: String,
    /// Number of merge operations to learn.
    #[arg(long, value_name = "N")]
    merges: Option<usize>,
    /// Stop merging when the best pair occurs fewer than this many times
    /// [default: 2].
    #[arg(long, value_name = "N")]
    min_frequency: Option<u64>,
    /// Parse the input as an analyzed corpus and learn from stems only.
    #[arg(long)]
    on_stems: bool,
    /// Morpheme delimiter of the analyzed input [default: +].
    #[arg(long, value_name = "CHAR")]
    delimiter: Option<char>,
}

#[derive(Args)]
struct SegmentArgs {
    /// Corpus to segment: analyzed lines for scs/sss/bpe-scs/bpe-sss, raw
    /// token lines for raw/bpe.
    #[arg(long, default_value = "-", value_name = "FILE")]
    input: String,
    #[arg(long, default_value = "-", value_name = "FILE")]
    output: String,
    /// Segmentation strategy: raw, scs, sss, bpe, bpe-scs, or bpe-sss.
    #[arg(long)]
    strategy: Option<StrategyKind>,
    /// BPE model file (required for bpe, bpe-scs, bpe-sss).
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Morpheme delimiter of the analyzed input [default: +].
    #[arg(long, value_name = "CHAR")]
    delimiter: Option<char>,
    #[command(flatten)]
    markers: MarkerArgs,
    /// Abort at the first faulty line instead of reporting it, emitting an
    /// empty placeholder line, and continuing.
    #[arg(long)]
    fail_fast: bool,
    /// Drop sentences with more than this many input tokens (a corpus
    /// filter; output then has fewer lines than input).
    #[arg(long, value_name = "TOKENS")]
    max_len: Option<usize>,
}

#[derive(Args)]
struct DesegmentArgs {
    #[arg(long, default_value = "-", value_name = "FILE")]
    input: String,
    #[arg(long, default_value = "-", value_name = "FILE")]
    output: String,
    /// Recover from structural marker problems (dangling joins), reporting
    /// them as warnings instead of errors.
    #[arg(long)]
    lenient: bool,
    #[command(flatten)]
    markers: MarkerArgs,
    /// Abort at the first faulty line instead of reporting it, emitting an
    /// empty placeholder line, and continuing.
    #[arg(long)]
    fail_fast: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long, default_value = "-", value_name = "FILE")]
    input: String,
    /// Parse lines as an analyzed corpus and additionally report
    /// morphological type counts.
    #[arg(long)]
    analyzed: bool,
    /// Morpheme delimiter of the analyzed input [default: +].
    #[arg(long, value_name = "CHAR")]
    delimiter: Option<char>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Corpus to sweep over: raw lines for bpe, analyzed lines for
    /// bpe-scs/bpe-sss.
    #[arg(long, default_value = "-", value_name = "FILE")]
    input: String,
    /// Model-bearing strategy: bpe, bpe-scs, or bpe-sss.
    #[arg(long)]
    strategy: Option<StrategyKind>,
    /// Ascending merge counts to measure, comma-separated (e.g.
    /// 10000,20000,30000).
    #[arg(long, value_delimiter = ',', required = true, value_name = "N,N,...")]
    merges: Vec<usize>,
    /// Stop merging when the best pair occurs fewer than this many times
    /// [default: 2].
    #[arg(long, value_name = "N")]
    min_frequency: Option<u64>,
    /// Morpheme delimiter of the analyzed input [default: +].
    #[arg(long, value_name = "CHAR")]
    delimiter: Option<char>,
    #[command(flatten)]
    markers: MarkerArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Args)]
struct ScoreArgs {
    /// Metric to compute.
    #[arg(long, value_enum)]
    metric: Metric,
    /// Hypothesis corpus, one line per reference line.
    #[arg(long = "hyp", value_name = "FILE")]
    hypotheses: String,
    /// Reference corpus.
    #[arg(long = "ref", value_name = "FILE")]
    references: String,
}

#[derive(Args)]
struct MarkerArgs {
    /// Glyph appended to a stem that its suffixes re-attach to
    /// [default: ##].
    #[arg(long, value_name = "GLYPH")]
    marker_stem: Option<String>,
    /// Glyph appended to a suffix unit [default: $$].
    #[arg(long, value_name = "GLYPH")]
    marker_suffix: Option<String>,
    /// Glyph appended to a non-final BPE subword [default: @@].
    #[arg(long, value_name = "GLYPH")]
    marker_bpe: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Aligned, human-readable columns.
    Table,
    /// Line-delimited JSON records.
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Bleu,
    Chrf3,
}

/// Defaults loaded from `--config`; every field is optional and any
/// matching command-line flag wins.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    strategy: Option<String>,
    delimiter: Option<char>,
    merges: Option<usize>,
    min_frequency: Option<u64>,
    lenient: Option<bool>,
    markers: Option<MarkerConfig>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkerConfig {
    stem: Option<String>,
    suffix: Option<String>,
    bpe: Option<String>,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config file {}", path.display()))
    }

    fn strategy(&self, flag: Option<StrategyKind>) -> Result<StrategyKind> {
        if let Some(kind) = flag {
            return Ok(kind);
        }
        match &self.strategy {
            Some(name) => Ok(name.parse()?),
            None => bail!("no strategy given (pass --strategy or set it in the config file)"),
        }
    }

    fn delimiter(&self, flag: Option<char>) -> char {
        flag.or(self.delimiter).unwrap_or(DEFAULT_DELIMITER)
    }

    fn merges(&self, flag: Option<usize>) -> Result<usize> {
        flag.or(self.merges)
            .ok_or_else(|| anyhow!("no merge count given (pass --merges or set it in the config file)"))
    }

    fn min_frequency(&self, flag: Option<u64>) -> u64 {
        flag.or(self.min_frequency)
            .unwrap_or(DEFAULT_MIN_PAIR_FREQUENCY)
    }

    fn lenient(&self, flag: bool) -> bool {
        flag || self.lenient.unwrap_or(false)
    }

    fn markers(&self, flags: &MarkerArgs) -> Result<MarkerSet> {
        let defaults = MarkerSet::default();
        let config = self.markers.as_ref();
        let stem = flags
            .marker_stem
            .clone()
            .or_else(|| config.and_then(|m| m.stem.clone()))
            .unwrap_or_else(|| defaults.stem_join().to_string());
        let suffix = flags
            .marker_suffix
            .clone()
            .or_else(|| config.and_then(|m| m.suffix.clone()))
            .unwrap_or_else(|| defaults.suffix_unit().to_string());
        let bpe = flags
            .marker_bpe
            .clone()
            .or_else(|| config.and_then(|m| m.bpe.clone()))
            .unwrap_or_else(|| defaults.bpe_continuation().to_string());
        Ok(MarkerSet::new(&stem, &suffix, &bpe)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(error) => {
            eprintln!("morphseg: {error:#}");
            ExitCode::FAILURE
        }
    }
}

/// Returns whether the run finished without errors.
fn run(cli: Cli) -> Result<bool> {
    let config = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::LearnBpe(args) => cmd_learn_bpe(&config, args),
        Command::Segment(args) => cmd_segment(&config, args),
        Command::Desegment(args) => cmd_desegment(&config, args),
        Command::Stats(args) => cmd_stats(&config, args),
        Command::Sweep(args) => cmd_sweep(&config, args),
        Command::Score(args) => cmd_score(args),
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>> {
    if path == "-" {
        return Ok(Box::new(io::stdin().lock()));
    }
    let file = File::open(path).with_context(|| format!("cannot open {path}"))?;
    Ok(Box::new(BufReader::new(file)))
}

fn open_output(path: &str) -> Result<Box<dyn Write>> {
    if path == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    let file = File::create(path).with_context(|| format!("cannot create {path}"))?;
    Ok(Box::new(BufWriter::new(file)))
}

/// The name diagnostics cite for an input path.
fn input_name(path: &str) -> &str {
    if path == "-" {
        "stdin"
    } else {
        path
    }
}

fn read_lines(path: &str) -> Result<Vec<String>> {
    let reader = open_input(path)?;
    let mut lines = Vec::new();
    for line in reader.lines() {
        lines.push(line.with_context(|| format!("error reading {}", input_name(path)))?);
    }
    Ok(lines)
}

fn load_model(path: &Path) -> Result<BpeModel> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    BpeModel::load(BufReader::new(file))
        .with_context(|| format!("invalid model file {}", path.display()))
}

/// Counts distinct subword symbols the model leaves over the dictionary.
fn count_symbol_types(model: &BpeModel, dictionary: &FrequencyDictionary) -> usize {
    let mut types = HashSet::new();
    for (word, _) in dictionary.iter() {
        for symbol in apply_bpe(model, word).into_symbols() {
            types.insert(symbol);
        }
    }
    types.len()
}

fn cmd_learn_bpe(config: &FileConfig, args: LearnBpeArgs) -> Result<bool> {
    let merges = config.merges(args.merges)?;
    let min_frequency = config.min_frequency(args.min_frequency);
    let delimiter = config.delimiter(args.delimiter);
    let name = input_name(&args.input).to_string();

    let reader = open_input(&args.input)?;
    let mut dictionary = FrequencyDictionary::new();
    if args.on_stems {
        let mut stems = Vec::new();
        for (index, line) in reader.lines().enumerate() {
            let line = line.with_context(|| format!("error reading {name}"))?;
            let sentence = parse_analyzed_line(&line, delimiter)
                .map_err(|e| anyhow!("{name}:{}: {e}", index + 1))?;
            stems.push(sentence);
        }
        dictionary = build_stem_dictionary(&stems);
    } else {
        for line in reader.lines() {
            let line = line.with_context(|| format!("error reading {name}"))?;
            dictionary.add_sentence(&RawSentence::parse(&line));
        }
    }

    let model = learn_bpe(&dictionary, merges, min_frequency);
    let symbol_types = count_symbol_types(&model, &dictionary);

    let mut writer = open_output(&args.output)?;
    model.save(&mut writer)?;
    writer.flush()?;
    eprintln!(
        "learned {} merges ({} symbol types over {} dictionary entries)",
        model.len(),
        symbol_types,
        dictionary.len()
    );
    Ok(true)
}

fn cmd_segment(config: &FileConfig, args: SegmentArgs) -> Result<bool> {
    let strategy = config.strategy(args.strategy)?;
    let delimiter = config.delimiter(args.delimiter);
    let markers = config.markers(&args.markers)?;
    let model = match (&args.model, strategy.uses_model()) {
        (Some(path), true) => Some(load_model(path)?),
        (None, true) => bail!("strategy {strategy} requires --model"),
        (Some(_), false) => bail!("strategy {strategy} does not use a model"),
        (None, false) => None,
    };
    let segmenter = Segmenter::new(strategy, model, markers.clone())?;
    let name = input_name(&args.input).to_string();

    let reader = open_input(&args.input)?;
    let mut writer = open_output(&args.output)?;
    let mut clean = true;
    for (index, line) in reader.lines().enumerate() {
        let line = line.with_context(|| format!("error reading {name}"))?;
        if let Some(max_len) = args.max_len {
            if line.split_whitespace().count() > max_len {
                continue;
            }
        }
        let tokens = if strategy.takes_analyzed() {
            parse_analyzed_line(&line, delimiter)
                .map_err(anyhow::Error::from)
                .and_then(|sentence| Ok(segmenter.segment_analyzed(&sentence)?))
        } else {
            segmenter
                .segment_raw(&RawSentence::parse(&line))
                .map_err(anyhow::Error::from)
        };
        match tokens {
            Ok(tokens) => writeln!(writer, "{}", render_tokens(&tokens, &markers))?,
            Err(error) => {
                if args.fail_fast {
                    writer.flush()?;
                    bail!("{name}:{}: {error}", index + 1);
                }
                eprintln!("{name}:{}: {error}", index + 1);
                writeln!(writer)?;
                clean = false;
            }
        }
    }
    writer.flush()?;
    Ok(clean)
}

fn cmd_desegment(config: &FileConfig, args: DesegmentArgs) -> Result<bool> {
    let markers = config.markers(&args.markers)?;
    let lenient = config.lenient(args.lenient);
    let name = input_name(&args.input).to_string();

    let reader = open_input(&args.input)?;
    let mut writer = open_output(&args.output)?;
    let mut clean = true;
    for (index, line) in reader.lines().enumerate() {
        let line = line.with_context(|| format!("error reading {name}"))?;
        if lenient {
            let (sentence, warnings) = desegment_lenient(&line, &markers);
            for warning in warnings {
                eprintln!("{name}:{}: warning: {warning}", index + 1);
            }
            writeln!(writer, "{}", sentence.render())?;
        } else {
            match desegment(&line, &markers) {
                Ok(sentence) => writeln!(writer, "{}", sentence.render())?,
                Err(error) => {
                    if args.fail_fast {
                        writer.flush()?;
                        bail!("{name}:{}: {error}", index + 1);
                    }
                    eprintln!("{name}:{}: {error}", index + 1);
                    writeln!(writer)?;
                    clean = false;
                }
            }
        }
    }
    writer.flush()?;
    Ok(clean)
}

fn cmd_stats(config: &FileConfig, args: StatsArgs) -> Result<bool> {
    let delimiter = config.delimiter(args.delimiter);
    let name = input_name(&args.input).to_string();

    let reader = open_input(&args.input)?;
    let mut corpus_acc = StatsAccumulator::new();
    let mut analyzed: Vec<AnalyzedSentence> = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line.with_context(|| format!("error reading {name}"))?;
        corpus_acc.add_line(&line);
        if args.analyzed {
            let sentence = parse_analyzed_line(&line, delimiter)
                .map_err(|e| anyhow!("{name}:{}: {e}", index + 1))?;
            analyzed.push(sentence);
        }
    }
    let corpus = corpus_acc.finish();
    let morph = args.analyzed.then(|| compute_morph_stats(&analyzed));

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match args.format {
        OutputFormat::Table => {
            write_corpus_stats_table(&mut out, &corpus)?;
            if let Some(morph) = morph {
                writeln!(out)?;
                write_morph_stats_table(&mut out, &morph)?;
            }
        }
        OutputFormat::Jsonl => {
            writeln!(out, "{}", corpus_stats_record(&corpus))?;
            if let Some(morph) = morph {
                writeln!(out, "{}", morph_stats_record(&morph))?;
            }
        }
    }
    out.flush()?;
    Ok(true)
}

fn cmd_sweep(config: &FileConfig, args: SweepArgs) -> Result<bool> {
    let strategy = config.strategy(args.strategy)?;
    let delimiter = config.delimiter(args.delimiter);
    let markers = config.markers(&args.markers)?;
    let min_frequency = config.min_frequency(args.min_frequency);
    let name = input_name(&args.input).to_string();

    let rows = if strategy.takes_analyzed() {
        let mut corpus = Vec::new();
        for (index, line) in open_input(&args.input)?.lines().enumerate() {
            let line = line.with_context(|| format!("error reading {name}"))?;
            corpus.push(
                parse_analyzed_line(&line, delimiter)
                    .map_err(|e| anyhow!("{name}:{}: {e}", index + 1))?,
            );
        }
        sweep_merges(
            SweepInput::Analyzed(&corpus),
            strategy,
            &markers,
            &args.merges,
            min_frequency,
        )?
    } else {
        let corpus: Vec<RawSentence> = read_lines(&args.input)?
            .iter()
            .map(|line| RawSentence::parse(line))
            .collect();
        sweep_merges(
            SweepInput::Raw(&corpus),
            strategy,
            &markers,
            &args.merges,
            min_frequency,
        )?
    };

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match args.format {
        OutputFormat::Table => write_sweep_table(&mut out, &rows)?,
        OutputFormat::Jsonl => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row)?)?;
            }
        }
    }
    out.flush()?;
    Ok(true)
}

fn cmd_score(args: ScoreArgs) -> Result<bool> {
    let hypotheses = read_lines(&args.hypotheses)?;
    let references = read_lines(&args.references)?;
    let score = match args.metric {
        Metric::Bleu => bleu(&hypotheses, &references)?,
        Metric::Chrf3 => chrf3(&hypotheses, &references)?,
    };
    println!("{score:.1}");
    Ok(true)
}

/// Renders `1234567` as `1,234,567`.
fn group_digits(value: u64) -> String {
    let digits = value.to_string();
    let mut grouped = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            grouped.push(',');
        }
        grouped.push(c);
    }
    grouped
}

/// Writes rows as aligned columns: first column left-aligned, the rest
/// right-aligned, two spaces between columns.
fn write_table(out: &mut impl Write, headers: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let write_row = |cells: Vec<String>, out: &mut dyn Write| -> io::Result<()> {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = widths[i] - cell.chars().count();
            if i == 0 {
                line.push_str(cell);
                if i < cells.len() - 1 {
                    line.push_str(&" ".repeat(pad));
                }
            } else {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        writeln!(out, "{}", line.trim_end())
    };
    write_row(headers.iter().map(|h| h.to_string()).collect(), out)?;
    for row in rows {
        write_row(row.clone(), out)?;
    }
    Ok(())
}

fn write_corpus_stats_table(out: &mut impl Write, stats: &CorpusStats) -> io::Result<()> {
    let average = stats
        .average_length_one_decimal()
        .unwrap_or_else(|| "0.0".to_string());
    let rounded = stats.average_length_rounded().unwrap_or(0);
    let mut rounded_cell = group_digits(rounded);
    if stats.sentences == 0 {
        rounded_cell.push_str(" (no sentences)");
    }
    write_table(
        out,
        &["Sentences", "Tokens", "Vocabulary", "Average Length", "Rounded"],
        &[vec![
            group_digits(stats.sentences),
            group_digits(stats.tokens),
            group_digits(stats.vocabulary),
            average,
            rounded_cell,
        ]],
    )
}

fn write_morph_stats_table(out: &mut impl Write, stats: &MorphStats) -> io::Result<()> {
    write_table(
        out,
        &["Type", "Count"],
        &[
            vec!["Stem".to_string(), group_digits(stats.stem_types)],
            vec![
                "Combined Suffix".to_string(),
                group_digits(stats.combined_suffix_types),
            ],
            vec![
                "Singular Suffix".to_string(),
                group_digits(stats.singular_suffix_types),
            ],
        ],
    )
}

fn write_sweep_table(out: &mut impl Write, rows: &[SweepRow]) -> io::Result<()> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            vec![
                group_digits(row.merge_count as u64),
                group_digits(row.vocabulary),
            ]
        })
        .collect();
    write_table(out, &["Merge Operations", "Vocabulary"], &cells)
}

fn corpus_stats_record(stats: &CorpusStats) -> String {
    serde_json::json!({
        "kind": "corpus",
        "sentences": stats.sentences,
        "tokens": stats.tokens,
        "vocabulary": stats.vocabulary,
        "average_length": stats.average_length().unwrap_or(0.0),
        "average_length_one_decimal": stats
            .average_length_one_decimal()
            .unwrap_or_else(|| "0.0".to_string()),
        "average_length_rounded": stats.average_length_rounded().unwrap_or(0),
        "average_length_defined": stats.sentences > 0,
    })
    .to_string()
}

fn morph_stats_record(stats: &MorphStats) -> String {
    serde_json::json!({
        "kind": "morph",
        "stem_types": stats.stem_types,
        "combined_suffix_types": stats.combined_suffix_types,
        "singular_suffix_types": stats.singular_suffix_types,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_group_in_threes() {
        assert_eq!(group_digits(0), "0");
        assert_eq!(group_digits(999), "999");
        assert_eq!(group_digits(1_000), "1,000");
        assert_eq!(group_digits(6_728_346), "6,728,346");
        assert_eq!(group_digits(284_252), "284,252");
    }

    #[test]
    fn tables_align_columns() {
        let mut out = Vec::new();
        write_table(
            &mut out,
            &["Type", "Count"],
            &[
                vec!["Stem".to_string(), "87,770".to_string()],
                vec!["Singular Suffix".to_string(), "364".to_string()],
            ],
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "Type              Count\nStem             87,770\nSingular Suffix     364\n"
        );
    }

    #[test]
    fn stats_records_flag_undefined_averages() {
        let empty = CorpusStats::default();
        let record = corpus_stats_record(&empty);
        assert!(record.contains("\"average_length_defined\":false"));
        assert!(record.contains("\"average_length_rounded\":0"));
        let nonempty = CorpusStats {
            sentences: 2,
            tokens: 3,
            vocabulary: 2,
        };
        assert!(corpus_stats_record(&nonempty).contains("\"average_length\":1.5"));
    }

    #[test]
    fn config_precedence_is_flag_then_file_then_default() {
        let config: FileConfig = toml::from_str(
            r#"
            strategy = "sss"
            delimiter = "-"
            merges = 7
            min_frequency = 3
            lenient = true

            [markers]
            stem = ">>"
            "#,
        )
        .unwrap();
        assert_eq!(config.strategy(None).unwrap(), StrategyKind::Sss);
        assert_eq!(
            config.strategy(Some(StrategyKind::Bpe)).unwrap(),
            StrategyKind::Bpe
        );
        assert_eq!(config.delimiter(None), '-');
        assert_eq!(config.delimiter(Some('+')), '+');
        assert_eq!(config.merges(None).unwrap(), 7);
        assert_eq!(config.merges(Some(9)).unwrap(), 9);
        assert_eq!(config.min_frequency(None), 3);
        assert!(config.lenient(false));

        let markers = config.markers(&MarkerArgs {
            marker_stem: None,
            marker_suffix: None,
            marker_bpe: None,
        })
        .unwrap();
        assert_eq!(markers.stem_join(), ">>");
        assert_eq!(markers.suffix_unit(), "$$");

        let empty = FileConfig::default();
        assert_eq!(empty.delimiter(None), '+');
        assert_eq!(empty.min_frequency(None), 2);
        assert!(empty.strategy(None).is_err());
        assert!(empty.merges(None).is_err());
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("stratgy = \"sss\"").is_err());
    }
}
