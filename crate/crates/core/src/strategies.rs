//! The five segmentation strategies.
//!
//! Morphological strategies consume analyzed sentences; surface strategies
//! consume raw sentences:
//!
//! * `scs` — stem plus all suffixes combined into one unit:
//!   `kasaba## sındayım$$`
//! * `sss` — stem plus each suffix as its own unit:
//!   `kasaba## sı$$ nda$$ yım$$`
//! * `bpe` — plain byte-pair subwords over the surface: `fa@@ ger@@ nes`
//! * `bpe-scs` / `bpe-sss` — like `scs`/`sss`, but the stem is additionally
//!   split by a BPE model learned on stems; an unsplit stem keeps the
//!   stem-join glyph, a split stem renders as continuation subwords with a
//!   bare final subword that following suffix units re-attach to.
//! * `raw` — tokens pass through untouched.
//!
//! A word is emitted with zero markers exactly when it has no suffixes and
//! its stem was not split. Marker glyphs occurring anywhere in a word's text
//! raise a collision error rather than being escaped; configure different
//! glyphs for corpora that legitimately contain them.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bpe::{apply_bpe, BpeModel, FrequencyDictionary};
use crate::markers::{MarkedToken, MarkerKind, MarkerSet};
use crate::morpho::{AnalyzedSentence, MorphWord, RawSentence};

/// The available segmentation strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Pass surface tokens through untouched.
    Raw,
    /// Stem + combined suffixes (two units per suffixed word).
    Scs,
    /// Stem + singular suffixes (one unit per suffix).
    Sss,
    /// BPE subwords over raw surface tokens.
    Bpe,
    /// BPE-split stems + combined suffixes.
    BpeScs,
    /// BPE-split stems + singular suffixes.
    BpeSss,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 6] = [
        StrategyKind::Raw,
        StrategyKind::Scs,
        StrategyKind::Sss,
        StrategyKind::Bpe,
        StrategyKind::BpeScs,
        StrategyKind::BpeSss,
    ];

    /// Whether the strategy needs a BPE model.
    pub fn uses_model(self) -> bool {
        matches!(self, StrategyKind::Bpe | StrategyKind::BpeScs | StrategyKind::BpeSss)
    }

    /// Whether the strategy consumes analyzed sentences (as opposed to raw
    /// surface sentences).
    pub fn takes_analyzed(self) -> bool {
        matches!(
            self,
            StrategyKind::Scs | StrategyKind::Sss | StrategyKind::BpeScs | StrategyKind::BpeSss
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Raw => "raw",
            StrategyKind::Scs => "scs",
            StrategyKind::Sss => "sss",
            StrategyKind::Bpe => "bpe",
            StrategyKind::BpeScs => "bpe-scs",
            StrategyKind::BpeSss => "bpe-sss",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error parsing a strategy name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy {input:?} (expected raw, scs, sss, bpe, bpe-scs, or bpe-sss)")]
pub struct ParseStrategyError {
    pub input: String,
}

impl FromStr for StrategyKind {
    type Err = ParseStrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| ParseStrategyError {
                input: s.to_string(),
            })
    }
}

/// Errors raised while segmenting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    /// A word's text contains a marker glyph; emitting it would corrupt
    /// desegmentation, and glyphs are never silently escaped.
    #[error("word text {text:?} contains marker glyph {glyph:?}")]
    MarkerCollision { text: String, glyph: String },
    #[error("strategy {strategy} requires a BPE model")]
    ModelRequired { strategy: StrategyKind },
    #[error("strategy {strategy} does not use a BPE model")]
    ModelNotUsed { strategy: StrategyKind },
    #[error("strategy {strategy} takes {expected} input")]
    WrongInputKind {
        strategy: StrategyKind,
        expected: &'static str,
    },
    /// A word-level error located within its sentence (0-based index,
    /// displayed 1-based).
    #[error("token {}: {error}", index + 1)]
    AtToken {
        index: usize,
        #[source]
        error: Box<SegmentError>,
    },
}

fn check_no_glyph(text: &str, markers: &MarkerSet) -> Result<(), SegmentError> {
    if let Some(glyph) = markers.glyph_inside(text) {
        return Err(SegmentError::MarkerCollision {
            text: text.to_string(),
            glyph: glyph.to_string(),
        });
    }
    Ok(())
}

/// Checks a word's stem and combined suffix text for marker glyphs. Checking
/// the combined text (rather than each suffix alone) also rejects glyphs
/// that would only appear when adjacent suffixes meet, so `scs` and `sss`
/// accept exactly the same words.
fn check_word(word: &MorphWord, markers: &MarkerSet) -> Result<(), SegmentError> {
    check_no_glyph(word.stem(), markers)?;
    if word.has_suffixes() {
        check_no_glyph(&word.combined_suffix(), markers)?;
    }
    Ok(())
}

/// Stem + combined suffixes: a suffixed word becomes `stem## suffixes$$`,
/// a bare word stays a single plain token.
pub fn segment_word_scs(
    word: &MorphWord,
    markers: &MarkerSet,
) -> Result<Vec<MarkedToken>, SegmentError> {
    check_word(word, markers)?;
    if !word.has_suffixes() {
        return Ok(vec![MarkedToken::new(word.stem(), MarkerKind::Plain)]);
    }
    Ok(vec![
        MarkedToken::new(word.stem(), MarkerKind::StemJoin),
        MarkedToken::new(word.combined_suffix(), MarkerKind::SuffixUnit),
    ])
}

/// Stem + singular suffixes: each suffix becomes its own `suffix$$` unit.
pub fn segment_word_sss(
    word: &MorphWord,
    markers: &MarkerSet,
) -> Result<Vec<MarkedToken>, SegmentError> {
    check_word(word, markers)?;
    if !word.has_suffixes() {
        return Ok(vec![MarkedToken::new(word.stem(), MarkerKind::Plain)]);
    }
    let mut tokens = Vec::with_capacity(1 + word.suffixes().len());
    tokens.push(MarkedToken::new(word.stem(), MarkerKind::StemJoin));
    for suffix in word.suffixes() {
        tokens.push(MarkedToken::new(suffix, MarkerKind::SuffixUnit));
    }
    Ok(tokens)
}

/// Plain BPE over a surface token: non-final subwords carry the
/// continuation glyph, the final subword is bare.
pub fn segment_word_bpe(
    model: &BpeModel,
    surface: &str,
    markers: &MarkerSet,
) -> Result<Vec<MarkedToken>, SegmentError> {
    check_no_glyph(surface, markers)?;
    let symbols = apply_bpe(model, surface).into_symbols();
    let last = symbols.len().saturating_sub(1);
    Ok(symbols
        .into_iter()
        .enumerate()
        .map(|(i, symbol)| {
            let kind = if i == last {
                MarkerKind::Plain
            } else {
                MarkerKind::BpeContinuation
            };
            MarkedToken::new(symbol.text(), kind)
        })
        .collect())
}

/// The stem tokens shared by `bpe-scs` and `bpe-sss`: an unsplit stem keeps
/// the stem-join glyph when suffixes follow, a split stem renders as
/// continuation subwords with a bare final subword.
fn bpe_stem_tokens(model: &BpeModel, word: &MorphWord) -> Vec<MarkedToken> {
    let symbols = apply_bpe(model, word.stem()).into_symbols();
    if symbols.len() == 1 {
        let kind = if word.has_suffixes() {
            MarkerKind::StemJoin
        } else {
            MarkerKind::Plain
        };
        return vec![MarkedToken::new(symbols[0].text(), kind)];
    }
    let last = symbols.len() - 1;
    symbols
        .into_iter()
        .enumerate()
        .map(|(i, symbol)| {
            let kind = if i == last {
                MarkerKind::Plain
            } else {
                MarkerKind::BpeContinuation
            };
            MarkedToken::new(symbol.text(), kind)
        })
        .collect()
}

/// BPE-split stem + combined suffixes.
pub fn segment_word_bpe_scs(
    model: &BpeModel,
    word: &MorphWord,
    markers: &MarkerSet,
) -> Result<Vec<MarkedToken>, SegmentError> {
    check_word(word, markers)?;
    let mut tokens = bpe_stem_tokens(model, word);
    if word.has_suffixes() {
        tokens.push(MarkedToken::new(
            word.combined_suffix(),
            MarkerKind::SuffixUnit,
        ));
    }
    Ok(tokens)
}

/// BPE-split stem + singular suffixes.
pub fn segment_word_bpe_sss(
    model: &BpeModel,
    word: &MorphWord,
    markers: &MarkerSet,
) -> Result<Vec<MarkedToken>, SegmentError> {
    check_word(word, markers)?;
    let mut tokens = bpe_stem_tokens(model, word);
    for suffix in word.suffixes() {
        tokens.push(MarkedToken::new(suffix, MarkerKind::SuffixUnit));
    }
    Ok(tokens)
}

/// A strategy bound to its model and marker configuration.
#[derive(Debug, Clone)]
pub struct Segmenter {
    kind: StrategyKind,
    model: Option<BpeModel>,
    markers: MarkerSet,
}

impl Segmenter {
    /// Binds a strategy, validating that a model is supplied exactly when
    /// the strategy uses one.
    pub fn new(
        kind: StrategyKind,
        model: Option<BpeModel>,
        markers: MarkerSet,
    ) -> Result<Self, SegmentError> {
        match (kind.uses_model(), &model) {
            (true, None) => return Err(SegmentError::ModelRequired { strategy: kind }),
            (false, Some(_)) => return Err(SegmentError::ModelNotUsed { strategy: kind }),
            _ => {}
        }
        Ok(Self {
            kind,
            model,
            markers,
        })
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    pub fn markers(&self) -> &MarkerSet {
        &self.markers
    }

    fn model(&self) -> &BpeModel {
        self.model
            .as_ref()
            .expect("construction validated model presence")
    }

    fn at_token(index: usize, error: SegmentError) -> SegmentError {
        SegmentError::AtToken {
            index,
            error: Box::new(error),
        }
    }

    /// Segments an analyzed sentence under `scs`, `sss`, `bpe-scs`, or
    /// `bpe-sss`. Word-level errors carry the word's token index.
    pub fn segment_analyzed(
        &self,
        sentence: &AnalyzedSentence,
    ) -> Result<Vec<MarkedToken>, SegmentError> {
        if !self.kind.takes_analyzed() {
            return Err(SegmentError::WrongInputKind {
                strategy: self.kind,
                expected: "raw",
            });
        }
        let mut tokens = Vec::with_capacity(sentence.words.len());
        for (index, word) in sentence.words.iter().enumerate() {
            let word_tokens = match self.kind {
                StrategyKind::Scs => segment_word_scs(word, &self.markers),
                StrategyKind::Sss => segment_word_sss(word, &self.markers),
                StrategyKind::BpeScs => segment_word_bpe_scs(self.model(), word, &self.markers),
                StrategyKind::BpeSss => segment_word_bpe_sss(self.model(), word, &self.markers),
                _ => unreachable!("guarded by takes_analyzed"),
            }
            .map_err(|e| Self::at_token(index, e))?;
            tokens.extend(word_tokens);
        }
        Ok(tokens)
    }

    /// Segments a raw sentence under `raw` or `bpe`. Word-level errors carry
    /// the word's token index.
    pub fn segment_raw(&self, sentence: &RawSentence) -> Result<Vec<MarkedToken>, SegmentError> {
        if self.kind.takes_analyzed() {
            return Err(SegmentError::WrongInputKind {
                strategy: self.kind,
                expected: "analyzed",
            });
        }
        match self.kind {
            StrategyKind::Raw => Ok(sentence
                .tokens
                .iter()
                .map(|token| MarkedToken::new(token, MarkerKind::Plain))
                .collect()),
            StrategyKind::Bpe => {
                let mut tokens = Vec::with_capacity(sentence.tokens.len());
                for (index, surface) in sentence.tokens.iter().enumerate() {
                    tokens.extend(
                        segment_word_bpe(self.model(), surface, &self.markers)
                            .map_err(|e| Self::at_token(index, e))?,
                    );
                }
                Ok(tokens)
            }
            _ => unreachable!("guarded by takes_analyzed"),
        }
    }
}

/// Counts each word's stem once per occurrence: the dictionary BPE models
/// for `bpe-scs`/`bpe-sss` are learned from.
pub fn build_stem_dictionary<I>(corpus: I) -> FrequencyDictionary
where
    I: IntoIterator,
    I::Item: Borrow<AnalyzedSentence>,
{
    let mut dict = FrequencyDictionary::new();
    for sentence in corpus {
        for word in &sentence.borrow().words {
            dict.add(word.stem(), 1)
                .expect("stems are non-empty and whitespace-free");
        }
    }
    dict
}
