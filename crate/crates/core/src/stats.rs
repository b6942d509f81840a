//! Corpus statistics, morphological inventories, and merge-count sweeps.
//!
//! Average sentence lengths are computed with exact integer arithmetic:
//! both the half-up rounded value and the one-decimal rendering are derived
//! from quotients of the raw counts, so no float rounding can nudge a
//! boundary case (an average of 18.73 tokens rounds to 19, never 18).
//!
//! Accumulators support sharding: statistics gathered over pieces of a
//! corpus combine into exactly the statistics of the whole.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::bpe::{build_dictionary, learn_bpe};
use crate::markers::MarkerSet;
use crate::morpho::{AnalyzedSentence, RawSentence};
use crate::strategies::{build_stem_dictionary, SegmentError, Segmenter, StrategyKind};

/// Whole-corpus counts over whitespace tokens. Every input line counts as a
/// sentence, blank lines included; the vocabulary is the number of distinct
/// token strings (marker glyphs, if any, are part of the token).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CorpusStats {
    pub sentences: u64,
    pub tokens: u64,
    pub vocabulary: u64,
}

impl CorpusStats {
    /// Mean tokens per sentence; `None` for an empty corpus.
    pub fn average_length(&self) -> Option<f64> {
        if self.sentences == 0 {
            return None;
        }
        Some(self.tokens as f64 / self.sentences as f64)
    }

    /// Mean tokens per sentence rounded half-up, computed exactly as
    /// `⌊(2·tokens + sentences) / (2·sentences)⌋`.
    pub fn average_length_rounded(&self) -> Option<u64> {
        if self.sentences == 0 {
            return None;
        }
        let t = self.tokens as u128;
        let s = self.sentences as u128;
        Some(((2 * t + s) / (2 * s)) as u64)
    }

    /// Ten times the mean tokens per sentence, rounded half-up — the exact
    /// integer behind the one-decimal rendering.
    pub fn average_length_tenths(&self) -> Option<u64> {
        if self.sentences == 0 {
            return None;
        }
        let t = self.tokens as u128;
        let s = self.sentences as u128;
        Some(((20 * t + s) / (2 * s)) as u64)
    }

    /// Mean tokens per sentence rendered with one decimal place.
    pub fn average_length_one_decimal(&self) -> Option<String> {
        self.average_length_tenths()
            .map(|tenths| format!("{}.{}", tenths / 10, tenths % 10))
    }
}

/// Streaming builder for [`CorpusStats`]; shards combine losslessly.
#[derive(Debug, Clone, Default)]
pub struct StatsAccumulator {
    sentences: u64,
    tokens: u64,
    vocabulary: HashSet<String>,
}

impl StatsAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_line(&mut self, line: &str) {
        self.sentences += 1;
        for token in line.split_whitespace() {
            self.tokens += 1;
            if !self.vocabulary.contains(token) {
                self.vocabulary.insert(token.to_string());
            }
        }
    }

    /// Folds another shard's counts into this one.
    pub fn combine(&mut self, other: StatsAccumulator) {
        self.sentences += other.sentences;
        self.tokens += other.tokens;
        self.vocabulary.extend(other.vocabulary);
    }

    pub fn finish(self) -> CorpusStats {
        CorpusStats {
            sentences: self.sentences,
            tokens: self.tokens,
            vocabulary: self.vocabulary.len() as u64,
        }
    }
}

/// Computes [`CorpusStats`] over an iterator of lines.
pub fn compute_stats<I>(lines: I) -> CorpusStats
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut acc = StatsAccumulator::new();
    for line in lines {
        acc.add_line(line.as_ref());
    }
    acc.finish()
}

/// Type inventories of an analyzed corpus: distinct stems, distinct
/// combined-suffix strings (over words that have suffixes), and distinct
/// individual suffixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MorphStats {
    pub stem_types: u64,
    pub combined_suffix_types: u64,
    pub singular_suffix_types: u64,
}

/// Streaming builder for [`MorphStats`]; shards combine losslessly.
#[derive(Debug, Clone, Default)]
pub struct MorphStatsAccumulator {
    stems: HashSet<String>,
    combined: HashSet<String>,
    singular: HashSet<String>,
}

impl MorphStatsAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sentence(&mut self, sentence: &AnalyzedSentence) {
        for word in &sentence.words {
            if !self.stems.contains(word.stem()) {
                self.stems.insert(word.stem().to_string());
            }
            if word.has_suffixes() {
                self.combined.insert(word.combined_suffix());
            }
            for suffix in word.suffixes() {
                if !self.singular.contains(suffix) {
                    self.singular.insert(suffix.clone());
                }
            }
        }
    }

    pub fn combine(&mut self, other: MorphStatsAccumulator) {
        self.stems.extend(other.stems);
        self.combined.extend(other.combined);
        self.singular.extend(other.singular);
    }

    pub fn finish(self) -> MorphStats {
        MorphStats {
            stem_types: self.stems.len() as u64,
            combined_suffix_types: self.combined.len() as u64,
            singular_suffix_types: self.singular.len() as u64,
        }
    }
}

/// Computes [`MorphStats`] over an iterator of analyzed sentences.
pub fn compute_morph_stats<'a, I>(sentences: I) -> MorphStats
where
    I: IntoIterator<Item = &'a AnalyzedSentence>,
{
    let mut acc = MorphStatsAccumulator::new();
    for sentence in sentences {
        acc.add_sentence(sentence);
    }
    acc.finish()
}

/// One row of a merge-count sweep: the segmented corpus's distinct emitted
/// token count at a given model size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub merge_count: usize,
    pub vocabulary: u64,
}

/// The corpus a sweep runs over; which variant is required depends on the
/// strategy's input kind.
#[derive(Debug, Clone, Copy)]
pub enum SweepInput<'a> {
    Raw(&'a [RawSentence]),
    Analyzed(&'a [AnalyzedSentence]),
}

/// Errors raised by [`sweep_merges`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("strategy {strategy} does not learn a BPE model")]
    NoModelStrategy { strategy: StrategyKind },
    #[error("strategy {strategy} sweeps {expected} corpora")]
    WrongCorpusKind {
        strategy: StrategyKind,
        expected: &'static str,
    },
    #[error("merge counts must be strictly ascending (position {index})")]
    UnorderedMergeCounts { index: usize },
    #[error(transparent)]
    Segment(#[from] SegmentError),
}

/// Measures emitted vocabulary size as a function of merge count.
///
/// The model for the largest requested count is learned once and truncated
/// for the smaller counts, which yields exactly the model that re-learning
/// at each count would: each merge decision depends only on the merges
/// before it.
pub fn sweep_merges(
    input: SweepInput<'_>,
    kind: StrategyKind,
    markers: &MarkerSet,
    merge_counts: &[usize],
    min_pair_frequency: u64,
) -> Result<Vec<SweepRow>, SweepError> {
    if !kind.uses_model() {
        return Err(SweepError::NoModelStrategy { strategy: kind });
    }
    match (&input, kind.takes_analyzed()) {
        (SweepInput::Raw(_), true) => {
            return Err(SweepError::WrongCorpusKind {
                strategy: kind,
                expected: "analyzed",
            })
        }
        (SweepInput::Analyzed(_), false) => {
            return Err(SweepError::WrongCorpusKind {
                strategy: kind,
                expected: "raw",
            })
        }
        _ => {}
    }
    for (index, window) in merge_counts.windows(2).enumerate() {
        if window[0] >= window[1] {
            return Err(SweepError::UnorderedMergeCounts { index: index + 1 });
        }
    }
    let Some(&max_count) = merge_counts.last() else {
        return Ok(Vec::new());
    };

    let dictionary = match input {
        SweepInput::Raw(sentences) => build_dictionary(sentences),
        SweepInput::Analyzed(sentences) => build_stem_dictionary(sentences),
    };
    let maximal = learn_bpe(&dictionary, max_count, min_pair_frequency);

    let mut rows = Vec::with_capacity(merge_counts.len());
    for &count in merge_counts {
        // Learning can stop early at the pair-frequency floor, in which
        // case every count past the stop yields the same (full) model.
        let model = maximal.truncated(count.min(maximal.len()));
        let segmenter = Segmenter::new(kind, Some(model), markers.clone())?;
        let mut vocabulary: HashSet<String> = HashSet::new();
        match input {
            SweepInput::Raw(sentences) => {
                for sentence in sentences {
                    for token in segmenter.segment_raw(sentence)? {
                        let rendered = token.render(markers);
                        if !vocabulary.contains(&rendered) {
                            vocabulary.insert(rendered);
                        }
                    }
                }
            }
            SweepInput::Analyzed(sentences) => {
                for sentence in sentences {
                    for token in segmenter.segment_analyzed(sentence)? {
                        let rendered = token.render(markers);
                        if !vocabulary.contains(&rendered) {
                            vocabulary.insert(rendered);
                        }
                    }
                }
            }
        }
        rows.push(SweepRow {
            merge_count: count,
            vocabulary: vocabulary.len() as u64,
        });
    }
    Ok(rows)
}
