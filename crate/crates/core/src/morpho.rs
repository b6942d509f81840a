//! Morphologically analyzed text: words as a stem plus suffix morphemes.
//!
//! The analyzed corpus format is line oriented: one sentence per line, tokens
//! separated by whitespace, and the morphemes of each token joined by a
//! single-character delimiter (`+` by default). The first morpheme is the
//! stem; every token has exactly one. A literal delimiter inside a morpheme
//! is escaped with a backslash, and a literal backslash is written as two:
//! `a\+b+c` parses as stem `a+b` with suffix `c`.

use std::fmt;

use thiserror::Error;

/// Default morpheme delimiter for analyzed corpora.
pub const DEFAULT_DELIMITER: char = '+';

/// A word with its morphological analysis: a stem and zero or more suffixes.
///
/// Every morpheme is non-empty and whitespace-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphWord {
    stem: String,
    suffixes: Vec<String>,
}

/// A sentence of analyzed words. May be empty (an empty input line).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnalyzedSentence {
    pub words: Vec<MorphWord>,
}

/// A sentence of plain surface tokens, each non-empty and whitespace-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawSentence {
    pub tokens: Vec<String>,
}

/// Error constructing a [`MorphWord`] from morphemes that violate its
/// invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphError {
    #[error("stem must be non-empty")]
    EmptyStem,
    #[error("suffix {index} must be non-empty")]
    EmptySuffix { index: usize },
    #[error("morpheme {text:?} contains whitespace")]
    WhitespaceInMorpheme { text: String },
}

/// Where and why parsing an analyzed line failed. Columns are 1-based
/// character positions within the line; token indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {}, column {column}: {kind}", token_index + 1)]
pub struct ParseError {
    pub token_index: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty morpheme (leading, trailing, or doubled delimiter)")]
    EmptyMorpheme,
    #[error("token consists only of delimiters")]
    OnlyDelimiters,
}

impl MorphWord {
    /// Builds a word from its stem and suffixes, validating that every
    /// morpheme is non-empty and whitespace-free.
    pub fn new(
        stem: impl Into<String>,
        suffixes: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, MorphError> {
        let stem = stem.into();
        if stem.is_empty() {
            return Err(MorphError::EmptyStem);
        }
        if stem.chars().any(char::is_whitespace) {
            return Err(MorphError::WhitespaceInMorpheme { text: stem });
        }
        let suffixes: Vec<String> = suffixes.into_iter().map(Into::into).collect();
        for (index, suffix) in suffixes.iter().enumerate() {
            if suffix.is_empty() {
                return Err(MorphError::EmptySuffix { index });
            }
            if suffix.chars().any(char::is_whitespace) {
                return Err(MorphError::WhitespaceInMorpheme {
                    text: suffix.clone(),
                });
            }
        }
        Ok(Self { stem, suffixes })
    }

    pub fn stem(&self) -> &str {
        &self.stem
    }

    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }

    pub fn has_suffixes(&self) -> bool {
        !self.suffixes.is_empty()
    }

    /// The original surface form: stem and suffixes concatenated in order.
    pub fn surface(&self) -> String {
        let mut out = String::with_capacity(
            self.stem.len() + self.suffixes.iter().map(String::len).sum::<usize>(),
        );
        out.push_str(&self.stem);
        for suffix in &self.suffixes {
            out.push_str(suffix);
        }
        out
    }

    /// All suffixes concatenated into one combined unit; empty when the word
    /// has no suffixes.
    pub fn combined_suffix(&self) -> String {
        self.suffixes.concat()
    }
}

impl fmt::Display for MorphWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface())
    }
}

impl AnalyzedSentence {
    pub fn new(words: Vec<MorphWord>) -> Self {
        Self { words }
    }

    /// The sentence's canonical surface rendering: one token per word.
    pub fn surface(&self) -> RawSentence {
        RawSentence {
            tokens: self.words.iter().map(MorphWord::surface).collect(),
        }
    }
}

impl RawSentence {
    /// Splits a line on whitespace. Runs of whitespace collapse, so joining
    /// the tokens with single spaces is the canonical form of the line.
    pub fn parse(line: &str) -> Self {
        Self {
            tokens: line.split_whitespace().map(str::to_string).collect(),
        }
    }

    pub fn render(&self) -> String {
        self.tokens.join(" ")
    }
}

impl fmt::Display for RawSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Splits one token into morphemes on `delimiter`, honoring backslash
/// escapes: `\` followed by the delimiter or by another backslash denotes
/// that literal character; any other backslash is kept as-is.
///
/// Returns the morphemes together with the 1-based column (within the line)
/// where each begins, so errors can point at the offending morpheme.
fn split_token(token: &str, delimiter: char) -> Vec<(String, usize)> {
    let mut morphemes = Vec::new();
    let mut current = String::new();
    // Column of the first character of the current morpheme, 0-based for now.
    let mut start = 0usize;
    let mut position = 0usize;
    let mut chars = token.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.peek() {
                Some(&next) if next == delimiter || next == '\\' => {
                    chars.next();
                    current.push(next);
                    position += 2;
                }
                _ => {
                    current.push('\\');
                    position += 1;
                }
            }
        } else if c == delimiter {
            morphemes.push((std::mem::take(&mut current), start));
            position += 1;
            start = position;
        } else {
            current.push(c);
            position += 1;
        }
    }
    morphemes.push((current, start));
    morphemes
}

/// Parses one line of the analyzed corpus format. The delimiter must not be
/// a whitespace character (whitespace already separates tokens).
pub fn parse_analyzed_line(line: &str, delimiter: char) -> Result<AnalyzedSentence, ParseError> {
    debug_assert!(
        !delimiter.is_whitespace(),
        "morpheme delimiter must not be whitespace"
    );
    let mut words = Vec::new();
    for (token_index, (token_start, token)) in tokens_with_offsets(line).enumerate() {
        let token_column = line[..token_start].chars().count();
        let morphemes = split_token(token, delimiter);
        if morphemes.iter().all(|(m, _)| m.is_empty()) {
            return Err(ParseError {
                token_index,
                column: token_column + 1,
                kind: ParseErrorKind::OnlyDelimiters,
            });
        }
        for (morpheme, offset) in &morphemes {
            if morpheme.is_empty() {
                return Err(ParseError {
                    token_index,
                    column: token_column + offset + 1,
                    kind: ParseErrorKind::EmptyMorpheme,
                });
            }
        }
        let mut iter = morphemes.into_iter().map(|(m, _)| m);
        let stem = iter.next().expect("split_token yields at least one morpheme");
        words.push(
            MorphWord::new(stem, iter)
                .expect("whitespace-split tokens produce valid morphemes"),
        );
    }
    Ok(AnalyzedSentence { words })
}

/// Serializes a sentence back into one analyzed line, escaping backslashes
/// and literal delimiters so the result re-parses to the same sentence.
pub fn serialize_analyzed_line(sentence: &AnalyzedSentence, delimiter: char) -> String {
    debug_assert!(
        !delimiter.is_whitespace(),
        "morpheme delimiter must not be whitespace"
    );
    let escape = |morpheme: &str| -> String {
        let mut out = String::with_capacity(morpheme.len());
        for c in morpheme.chars() {
            if c == '\\' || c == delimiter {
                out.push('\\');
            }
            out.push(c);
        }
        out
    };
    let mut tokens = Vec::with_capacity(sentence.words.len());
    for word in &sentence.words {
        let mut token = escape(word.stem());
        for suffix in word.suffixes() {
            token.push(delimiter);
            token.push_str(&escape(suffix));
        }
        tokens.push(token);
    }
    tokens.join(" ")
}

/// Iterates whitespace-separated tokens of a line along with the byte offset
/// where each begins.
pub(crate) fn tokens_with_offsets(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |token| {
        // `split_whitespace` yields subslices of `line`, so offsets can be
        // recovered from pointer arithmetic.
        let offset = token.as_ptr() as usize - line.as_ptr() as usize;
        (offset, token)
    })
}
