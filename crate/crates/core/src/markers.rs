//! Marker glyphs that record, on each output token, how desegmentation must
//! reassemble the original words.
//!
//! A token ending in the stem-join or continuation glyph joins with the
//! following token; a token ending in the suffix-unit glyph joins with the
//! preceding one; plain tokens stand alone. The glyphs are configurable but
//! default to `##` (stem join), `$$` (suffix unit), and `@@` (continuation).

use std::fmt;

use thiserror::Error;

/// How a token participates in desegmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkerKind {
    /// No glyph: the token stands alone (or is a split stem's last subword,
    /// which following suffix units re-attach to).
    Plain,
    /// Stem-join glyph: an unsplit stem that joins with what follows.
    StemJoin,
    /// Suffix-unit glyph: a suffix that joins with what precedes.
    SuffixUnit,
    /// Continuation glyph: a non-final subword that joins with what follows.
    BpeContinuation,
}

/// The three marker glyphs, validated to be usable together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerSet {
    stem_join: String,
    suffix_unit: String,
    bpe_continuation: String,
}

/// Error constructing an unusable [`MarkerSet`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkerError {
    #[error("marker glyphs must be non-empty")]
    EmptyGlyph,
    #[error("marker glyph {glyph:?} contains whitespace")]
    WhitespaceInGlyph { glyph: String },
    #[error("marker glyphs must be pairwise distinct, got {glyph:?} twice")]
    DuplicateGlyph { glyph: String },
    #[error("marker glyph {shorter:?} is a suffix of {longer:?}, making token ends ambiguous")]
    OverlappingGlyphs { shorter: String, longer: String },
}

impl MarkerSet {
    /// Validates that the glyphs are non-empty, whitespace-free, pairwise
    /// distinct, and that none is a suffix of another (desegmentation reads
    /// glyphs off token ends, so suffix overlap would be ambiguous).
    pub fn new(
        stem_join: impl Into<String>,
        suffix_unit: impl Into<String>,
        bpe_continuation: impl Into<String>,
    ) -> Result<Self, MarkerError> {
        let glyphs = [stem_join.into(), suffix_unit.into(), bpe_continuation.into()];
        for glyph in &glyphs {
            if glyph.is_empty() {
                return Err(MarkerError::EmptyGlyph);
            }
            if glyph.chars().any(char::is_whitespace) {
                return Err(MarkerError::WhitespaceInGlyph {
                    glyph: glyph.clone(),
                });
            }
        }
        for (i, a) in glyphs.iter().enumerate() {
            for b in glyphs.iter().skip(i + 1) {
                if a == b {
                    return Err(MarkerError::DuplicateGlyph { glyph: a.clone() });
                }
                if a.ends_with(b.as_str()) {
                    return Err(MarkerError::OverlappingGlyphs {
                        shorter: b.clone(),
                        longer: a.clone(),
                    });
                }
                if b.ends_with(a.as_str()) {
                    return Err(MarkerError::OverlappingGlyphs {
                        shorter: a.clone(),
                        longer: b.clone(),
                    });
                }
            }
        }
        let [stem_join, suffix_unit, bpe_continuation] = glyphs;
        Ok(Self {
            stem_join,
            suffix_unit,
            bpe_continuation,
        })
    }

    pub fn stem_join(&self) -> &str {
        &self.stem_join
    }

    pub fn suffix_unit(&self) -> &str {
        &self.suffix_unit
    }

    pub fn bpe_continuation(&self) -> &str {
        &self.bpe_continuation
    }

    /// The glyph rendered for `kind`; empty for plain tokens.
    pub fn glyph(&self, kind: MarkerKind) -> &str {
        match kind {
            MarkerKind::Plain => "",
            MarkerKind::StemJoin => &self.stem_join,
            MarkerKind::SuffixUnit => &self.suffix_unit,
            MarkerKind::BpeContinuation => &self.bpe_continuation,
        }
    }

    /// The first glyph found inside `text`, if any — used to reject token
    /// texts that would corrupt desegmentation.
    pub fn glyph_inside(&self, text: &str) -> Option<&str> {
        [
            self.stem_join.as_str(),
            self.suffix_unit.as_str(),
            self.bpe_continuation.as_str(),
        ]
        .into_iter()
        .find(|glyph| text.contains(glyph))
    }

    /// Splits a rendered token into its content and marker kind by reading
    /// the glyph off its end. Suffix-freedom of the glyphs makes the match
    /// unambiguous.
    pub fn classify<'t>(&self, token: &'t str) -> (&'t str, MarkerKind) {
        for (glyph, kind) in [
            (self.stem_join.as_str(), MarkerKind::StemJoin),
            (self.suffix_unit.as_str(), MarkerKind::SuffixUnit),
            (self.bpe_continuation.as_str(), MarkerKind::BpeContinuation),
        ] {
            if let Some(content) = token.strip_suffix(glyph) {
                return (content, kind);
            }
        }
        (token, MarkerKind::Plain)
    }
}

impl Default for MarkerSet {
    /// The conventional glyphs: `##`, `$$`, `@@`.
    fn default() -> Self {
        Self::new("##", "$$", "@@").expect("default glyphs are valid")
    }
}

/// One output token: its text plus how it joins during desegmentation.
///
/// The text is non-empty, whitespace-free, and contains no marker glyph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedToken {
    pub text: String,
    pub marker: MarkerKind,
}

impl MarkedToken {
    pub fn new(text: impl Into<String>, marker: MarkerKind) -> Self {
        Self {
            text: text.into(),
            marker,
        }
    }

    /// The token as written to segmented output: text plus glyph.
    pub fn render(&self, markers: &MarkerSet) -> String {
        let glyph = markers.glyph(self.marker);
        let mut out = String::with_capacity(self.text.len() + glyph.len());
        out.push_str(&self.text);
        out.push_str(glyph);
        out
    }
}

/// Renders a whole token sequence as one line, tokens joined by single
/// spaces.
pub fn render_tokens(tokens: &[MarkedToken], markers: &MarkerSet) -> String {
    let mut out = String::new();
    for (i, token) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&token.render(markers));
    }
    out
}

impl fmt::Display for MarkerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MarkerKind::Plain => "plain",
            MarkerKind::StemJoin => "stem-join",
            MarkerKind::SuffixUnit => "suffix-unit",
            MarkerKind::BpeContinuation => "continuation",
        };
        f.write_str(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_glyphs() {
        let markers = MarkerSet::default();
        assert_eq!(markers.stem_join(), "##");
        assert_eq!(markers.suffix_unit(), "$$");
        assert_eq!(markers.bpe_continuation(), "@@");
    }

    #[test]
    fn rendering_appends_the_glyph() {
        let markers = MarkerSet::default();
        assert_eq!(
            MarkedToken::new("kasaba", MarkerKind::StemJoin).render(&markers),
            "kasaba##"
        );
        assert_eq!(
            MarkedToken::new("ta", MarkerKind::SuffixUnit).render(&markers),
            "ta$$"
        );
        assert_eq!(
            MarkedToken::new("fa", MarkerKind::BpeContinuation).render(&markers),
            "fa@@"
        );
        assert_eq!(MarkedToken::new("üç", MarkerKind::Plain).render(&markers), "üç");
    }

    #[test]
    fn classification_reads_glyphs_off_token_ends() {
        let markers = MarkerSet::default();
        assert_eq!(markers.classify("kasaba##"), ("kasaba", MarkerKind::StemJoin));
        assert_eq!(markers.classify("ta$$"), ("ta", MarkerKind::SuffixUnit));
        assert_eq!(markers.classify("fa@@"), ("fa", MarkerKind::BpeContinuation));
        assert_eq!(markers.classify("üç"), ("üç", MarkerKind::Plain));
        // A glyph alone classifies as an empty content token.
        assert_eq!(markers.classify("##"), ("", MarkerKind::StemJoin));
    }

    #[test]
    fn classify_then_render_round_trips() {
        let markers = MarkerSet::default();
        for token in ["kasaba##", "ta$$", "fa@@", "üç"] {
            let (content, kind) = markers.classify(token);
            assert_eq!(MarkedToken::new(content, kind).render(&markers), token);
        }
    }

    #[test]
    fn custom_glyphs_are_honored() {
        let markers = MarkerSet::new("»", "«", "~").unwrap();
        assert_eq!(
            MarkedToken::new("ev", MarkerKind::StemJoin).render(&markers),
            "ev»"
        );
        assert_eq!(markers.classify("ler«"), ("ler", MarkerKind::SuffixUnit));
    }

    #[test]
    fn invalid_marker_sets_are_rejected() {
        assert_eq!(MarkerSet::new("", "$$", "@@"), Err(MarkerError::EmptyGlyph));
        assert!(matches!(
            MarkerSet::new("# #", "$$", "@@"),
            Err(MarkerError::WhitespaceInGlyph { .. })
        ));
        assert!(matches!(
            MarkerSet::new("##", "##", "@@"),
            Err(MarkerError::DuplicateGlyph { .. })
        ));
        // "#" is a suffix of "##": reading glyphs off token ends would be
        // ambiguous.
        assert!(matches!(
            MarkerSet::new("##", "#", "@@"),
            Err(MarkerError::OverlappingGlyphs { .. })
        ));
    }

    #[test]
    fn glyph_inside_finds_embedded_glyphs() {
        let markers = MarkerSet::default();
        assert_eq!(markers.glyph_inside("a##b"), Some("##"));
        assert_eq!(markers.glyph_inside("a#b"), None);
        assert_eq!(markers.glyph_inside("x$$"), Some("$$"));
        assert_eq!(markers.glyph_inside("plain"), None);
    }
}
