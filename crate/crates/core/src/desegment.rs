//! Desegmentation: re-assembling surface text from marked tokens.
//!
//! Tokens are grouped by their marker glyphs and each group's contents are
//! concatenated into one surface word. Stem-join and continuation markers
//! join a token *forward* onto whatever follows; a suffix-unit marker joins
//! a token *backward* onto the word built so far. Joins compose, so
//! `kasaba## sı$$ nda$$ yım$$` and `ka@@ saba sındayım$$` both re-assemble
//! to `kasabasındayım`.
//!
//! Two token arrangements have no consistent reading and are rejected: a
//! forward-joining token at the end of the line, and a backward-joining
//! token with no word to its left. [`desegment`] fails on the first such
//! token; [`desegment_lenient`] instead strips the offending marker, keeps
//! the content, and reports the problem as a warning.
//!
//! A token that is only a glyph contributes no content; a group whose whole
//! content is empty produces no word.

use thiserror::Error;

use crate::markers::{MarkerKind, MarkerSet};
use crate::morpho::RawSentence;

/// A structural problem in a segmented line (0-based index, displayed
/// 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesegmentError {
    /// A stem-join or continuation marker on the last token of the line has
    /// nothing to join onto.
    #[error("token {}: {glyph:?} marker on the last token of the line", index + 1)]
    DanglingForwardJoin { index: usize, glyph: String },
    /// A suffix-unit marker with no word to its left has nothing to join
    /// onto.
    #[error("token {}: {glyph:?} marker with no word to its left", index + 1)]
    DanglingBackwardJoin { index: usize, glyph: String },
}

impl DesegmentError {
    /// The position of the offending token within its line, 0-based.
    pub fn token_index(&self) -> usize {
        match self {
            DesegmentError::DanglingForwardJoin { index, .. }
            | DesegmentError::DanglingBackwardJoin { index, .. } => *index,
        }
    }
}

/// Re-assembles a segmented line, failing on the first structural problem.
pub fn desegment(line: &str, markers: &MarkerSet) -> Result<RawSentence, DesegmentError> {
    desegment_impl(line, markers, None)
}

/// Re-assembles a segmented line, recovering from structural problems by
/// stripping the offending marker and reporting each as a warning.
pub fn desegment_lenient(line: &str, markers: &MarkerSet) -> (RawSentence, Vec<DesegmentError>) {
    let mut warnings = Vec::new();
    let sentence = desegment_impl(line, markers, Some(&mut warnings))
        .expect("lenient desegmentation recovers from every structural problem");
    (sentence, warnings)
}

fn desegment_impl(
    line: &str,
    markers: &MarkerSet,
    mut warnings: Option<&mut Vec<DesegmentError>>,
) -> Result<RawSentence, DesegmentError> {
    let mut words: Vec<String> = Vec::new();
    // The word being built while the previous token joins forward, plus the
    // index of the forward-joining token that opened or extended it (for
    // reporting if the line ends here).
    let mut pending: Option<(String, usize)> = None;

    let report = |error: DesegmentError,
                      warnings: &mut Option<&mut Vec<DesegmentError>>|
     -> Result<(), DesegmentError> {
        match warnings {
            Some(sink) => {
                sink.push(error);
                Ok(())
            }
            None => Err(error),
        }
    };

    let close = |word: String, words: &mut Vec<String>| {
        if !word.is_empty() {
            words.push(word);
        }
    };

    for (index, token) in line.split_whitespace().enumerate() {
        let (content, kind) = markers.classify(token);
        match kind {
            MarkerKind::Plain => match pending.take() {
                Some((mut word, _)) => {
                    word.push_str(content);
                    close(word, &mut words);
                }
                None => close(content.to_string(), &mut words),
            },
            MarkerKind::StemJoin | MarkerKind::BpeContinuation => {
                let word = match pending.take() {
                    Some((mut word, _)) => {
                        word.push_str(content);
                        word
                    }
                    None => content.to_string(),
                };
                pending = Some((word, index));
            }
            MarkerKind::SuffixUnit => match pending.take() {
                Some((mut word, _)) => {
                    word.push_str(content);
                    close(word, &mut words);
                }
                None => match words.last_mut() {
                    Some(previous) => previous.push_str(content),
                    None => {
                        report(
                            DesegmentError::DanglingBackwardJoin {
                                index,
                                glyph: markers.glyph(MarkerKind::SuffixUnit).to_string(),
                            },
                            &mut warnings,
                        )?;
                        close(content.to_string(), &mut words);
                    }
                },
            },
        }
    }

    if let Some((word, index)) = pending.take() {
        // Recover the glyph the dangling token actually carried for the
        // message; both forward-joining kinds end the line the same way.
        let token = line.split_whitespace().nth(index).unwrap_or_default();
        let (_, kind) = markers.classify(token);
        report(
            DesegmentError::DanglingForwardJoin {
                index,
                glyph: markers.glyph(kind).to_string(),
            },
            &mut warnings,
        )?;
        close(word, &mut words);
    }

    Ok(RawSentence { tokens: words })
}
