//! Shared deterministic corpus generators for the morphseg benchmarks.
//!
//! Everything is seeded so successive benchmark runs measure the same work.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use morphseg::{AnalyzedSentence, MorphWord, RawSentence};

/// Letters drawn for synthetic morphemes: a mix of single- and multi-byte
/// characters, none of them part of a marker glyph.
pub const ALPHABET: &[char] = &[
    'a', 'b', 'd', 'e', 'g', 'i', 'k', 'l', 'm', 'n', 'o', 'r', 's', 't', 'u', 'y', 'z', 'ç', 'ğ',
    'ı', 'ö', 'ş', 'ü',
];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_morpheme(rng: &mut StdRng, max_len: usize) -> String {
    let len = rng.random_range(1..=max_len);
    (0..len)
        .map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())])
        .collect()
}

/// Sentences of 3–12 words; each word is a 2–7 character stem with zero to
/// four 1–3 character suffixes, echoing agglutinative corpus shapes.
pub fn analyzed_corpus(rng: &mut StdRng, sentences: usize) -> Vec<AnalyzedSentence> {
    (0..sentences)
        .map(|_| {
            let word_count = rng.random_range(3..=12);
            let words = (0..word_count)
                .map(|_| {
                    let stem = random_morpheme(rng, 7);
                    let suffix_count = rng.random_range(0..=4);
                    let suffixes: Vec<String> = (0..suffix_count)
                        .map(|_| random_morpheme(rng, 3))
                        .collect();
                    MorphWord::new(stem, suffixes).expect("generated morphemes are valid")
                })
                .collect();
            AnalyzedSentence::new(words)
        })
        .collect()
}

/// The canonical surface corpus of an analyzed corpus.
pub fn raw_corpus(corpus: &[AnalyzedSentence]) -> Vec<RawSentence> {
    corpus.iter().map(AnalyzedSentence::surface).collect()
}

/// Hypothesis/reference line pairs with realistic token overlap: the
/// hypothesis restates the reference with one token in ten replaced.
pub fn metric_lines(rng: &mut StdRng, lines: usize) -> (Vec<String>, Vec<String>) {
    let mut hypotheses = Vec::with_capacity(lines);
    let mut references = Vec::with_capacity(lines);
    for _ in 0..lines {
        let tokens: Vec<String> = (0..rng.random_range(5..=25))
            .map(|_| random_morpheme(rng, 8))
            .collect();
        references.push(tokens.join(" "));
        let perturbed: Vec<String> = tokens
            .iter()
            .map(|token| {
                if rng.random_range(0..10) == 0 {
                    random_morpheme(rng, 8)
                } else {
                    token.clone()
                }
            })
            .collect();
        hypotheses.push(perturbed.join(" "));
    }
    (hypotheses, references)
}
