//! Morphological and subword segmentation for agglutinative languages.
//!
//! This crate turns analyzed corpora (one sentence per line, morphemes
//! joined by `+` with the stem first) or raw corpora into segmented token
//! streams under five strategies, and re-assembles surface text from the
//! marked tokens:
//!
//! * `scs` — stem + all suffixes combined into one unit
//! * `sss` — stem + each suffix as its own unit
//! * `bpe` — byte-pair subwords over raw surface tokens
//! * `bpe-scs` / `bpe-sss` — BPE-split stems with suffix units re-attached
//!
//! Supporting pieces: BPE model learning, application, and (de)serialization
//! ([`bpe`]); marker glyph configuration ([`markers`]); desegmentation
//! ([`desegment`]); corpus and morphological statistics plus merge-count
//! sweeps ([`stats`]); and BLEU / chrF3 evaluation ([`metrics`]).
//!
//! ```
//! use morphseg::{
//!     desegment, parse_analyzed_line, segment_word_sss, render_tokens, MarkerSet,
//!     DEFAULT_DELIMITER,
//! };
//!
//! let markers = MarkerSet::default();
//! let sentence = parse_analyzed_line("kasaba+sı+nda+yım", DEFAULT_DELIMITER).unwrap();
//! let tokens = segment_word_sss(&sentence.words[0], &markers).unwrap();
//! let segmented = render_tokens(&tokens, &markers);
//! assert_eq!(segmented, "kasaba## sı$$ nda$$ yım$$");
//! let surface = desegment(&segmented, &markers).unwrap();
//! assert_eq!(surface.render(), "kasabasındayım");
//! ```

pub mod bpe;
pub mod desegment;
pub mod markers;
pub mod metrics;
pub mod morpho;
pub mod stats;
pub mod strategies;

pub use bpe::{
    apply_bpe, build_dictionary, learn_bpe, BpeModel, DictionaryError, FrequencyDictionary,
    MergeRule, ModelError, ModelIoError, Symbol, SymbolSequence,
};
pub use desegment::{desegment, desegment_lenient, DesegmentError};
pub use markers::{render_tokens, MarkedToken, MarkerError, MarkerKind, MarkerSet};
pub use metrics::{bleu, chrf3, MetricsError};
pub use morpho::{
    parse_analyzed_line, serialize_analyzed_line, AnalyzedSentence, MorphError, MorphWord,
    ParseError, ParseErrorKind, RawSentence, DEFAULT_DELIMITER,
};
pub use stats::{
    compute_morph_stats, compute_stats, sweep_merges, CorpusStats, MorphStats,
    MorphStatsAccumulator, StatsAccumulator, SweepError, SweepInput, SweepRow,
};
pub use strategies::{
    build_stem_dictionary, segment_word_bpe, segment_word_bpe_scs, segment_word_bpe_sss,
    segment_word_scs, segment_word_sss, ParseStrategyError, SegmentError, Segmenter, StrategyKind,
};
