//! Corpus-level translation quality metrics: BLEU and chrF3.
//!
//! Both metrics score a hypothesis corpus against a single reference corpus
//! with one hypothesis line per reference line, aggregate counts over the
//! whole corpus (not per-line averages), and return a percentage in
//! `[0, 100]`.
//!
//! BLEU uses case-sensitive whitespace tokens, clipped n-gram precisions
//! for n = 1..4 combined by geometric mean, and a brevity penalty of
//! `exp(1 − ref_len/hyp_len)` when the hypothesis corpus is shorter than
//! the reference. If any order has no matching n-grams at all, the score
//! is 0.
//!
//! chrF3 uses character n-grams for n = 1..6 with all whitespace removed,
//! averages each order's precision and recall over the six orders (orders
//! absent from either corpus are skipped), and combines them with an
//! F-score that weights recall three times as heavily as precision.

use std::collections::HashMap;

use thiserror::Error;

/// Highest BLEU n-gram order.
const BLEU_ORDERS: usize = 4;
/// Highest chrF character n-gram order.
const CHRF_ORDERS: usize = 6;
/// chrF recall weight β, squared.
const CHRF_BETA_SQUARED: f64 = 9.0;

/// Errors raised by the metric functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("corpus size mismatch: {hypotheses} hypothesis lines vs {references} reference lines")]
    LengthMismatch {
        hypotheses: usize,
        references: usize,
    },
}

fn check_lengths(hypotheses: usize, references: usize) -> Result<(), MetricsError> {
    if hypotheses != references {
        return Err(MetricsError::LengthMismatch {
            hypotheses,
            references,
        });
    }
    Ok(())
}

/// Sums `min(hyp_count, ref_count)` over the hypothesis `n`-gram windows.
fn clipped_matches<T: Eq + std::hash::Hash>(hyp: &[T], reference: &[T], n: usize) -> u64 {
    if hyp.len() < n || reference.len() < n {
        return 0;
    }
    let mut ref_counts: HashMap<&[T], u64> = HashMap::new();
    for window in reference.windows(n) {
        *ref_counts.entry(window).or_insert(0) += 1;
    }
    let mut hyp_counts: HashMap<&[T], u64> = HashMap::new();
    for window in hyp.windows(n) {
        *hyp_counts.entry(window).or_insert(0) += 1;
    }
    hyp_counts
        .iter()
        .map(|(gram, &count)| count.min(ref_counts.get(gram).copied().unwrap_or(0)))
        .sum()
}

fn window_count(len: usize, n: usize) -> u64 {
    if len < n {
        0
    } else {
        (len - n + 1) as u64
    }
}

/// Corpus BLEU (single reference), as a percentage.
pub fn bleu<H, R>(hypotheses: &[H], references: &[R]) -> Result<f64, MetricsError>
where
    H: AsRef<str>,
    R: AsRef<str>,
{
    check_lengths(hypotheses.len(), references.len())?;
    let mut correct = [0u64; BLEU_ORDERS];
    let mut total = [0u64; BLEU_ORDERS];
    let mut hyp_len = 0u64;
    let mut ref_len = 0u64;
    for (hyp, reference) in hypotheses.iter().zip(references) {
        let hyp_tokens: Vec<&str> = hyp.as_ref().split_whitespace().collect();
        let ref_tokens: Vec<&str> = reference.as_ref().split_whitespace().collect();
        hyp_len += hyp_tokens.len() as u64;
        ref_len += ref_tokens.len() as u64;
        for n in 1..=BLEU_ORDERS {
            total[n - 1] += window_count(hyp_tokens.len(), n);
            correct[n - 1] += clipped_matches(&hyp_tokens, &ref_tokens, n);
        }
    }
    if correct.iter().any(|&c| c == 0) {
        return Ok(0.0);
    }
    let mut log_precision_sum = 0.0;
    for n in 0..BLEU_ORDERS {
        log_precision_sum += (correct[n] as f64 / total[n] as f64).ln();
    }
    let geometric_mean = (log_precision_sum / BLEU_ORDERS as f64).exp();
    let brevity_penalty = if hyp_len < ref_len {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    } else {
        1.0
    };
    Ok(100.0 * brevity_penalty * geometric_mean)
}

/// Corpus chrF3 (character n-gram F-score with β = 3), as a percentage.
pub fn chrf3<H, R>(hypotheses: &[H], references: &[R]) -> Result<f64, MetricsError>
where
    H: AsRef<str>,
    R: AsRef<str>,
{
    check_lengths(hypotheses.len(), references.len())?;
    let mut matched = [0u64; CHRF_ORDERS];
    let mut hyp_total = [0u64; CHRF_ORDERS];
    let mut ref_total = [0u64; CHRF_ORDERS];
    for (hyp, reference) in hypotheses.iter().zip(references) {
        let hyp_chars: Vec<char> = hyp.as_ref().chars().filter(|c| !c.is_whitespace()).collect();
        let ref_chars: Vec<char> = reference
            .as_ref()
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        for n in 1..=CHRF_ORDERS {
            hyp_total[n - 1] += window_count(hyp_chars.len(), n);
            ref_total[n - 1] += window_count(ref_chars.len(), n);
            matched[n - 1] += clipped_matches(&hyp_chars, &ref_chars, n);
        }
    }
    let mut precision_sum = 0.0;
    let mut recall_sum = 0.0;
    for n in 0..CHRF_ORDERS {
        if hyp_total[n] == 0 || ref_total[n] == 0 {
            continue;
        }
        precision_sum += matched[n] as f64 / hyp_total[n] as f64;
        recall_sum += matched[n] as f64 / ref_total[n] as f64;
    }
    let precision = precision_sum / CHRF_ORDERS as f64;
    let recall = recall_sum / CHRF_ORDERS as f64;
    if precision + recall == 0.0 {
        return Ok(0.0);
    }
    Ok(100.0 * (1.0 + CHRF_BETA_SQUARED) * precision * recall
        / (CHRF_BETA_SQUARED * precision + recall))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOLERANCE: f64 = 1e-9;

    #[test]
    fn identical_corpora_score_one_hundred() {
        let corpus = ["the small cat sat on the mat .", "a dog barked ."];
        assert_eq!(bleu(&corpus, &corpus).unwrap(), 100.0);
        assert_eq!(chrf3(&corpus, &corpus).unwrap(), 100.0);
    }

    #[test]
    fn bleu_matches_hand_computed_precisions() {
        // 6/7 unigrams, 4/6 bigrams, 2/5 trigrams, 1/4 four-grams, no
        // brevity penalty: 100·(48/840)^(1/4) = 48.8923022435….
        let score = bleu(&["the cat sat on the mat ."], &["the cat sat on a mat ."]).unwrap();
        assert!((score - 48.892_302_243_5).abs() < TOLERANCE);
    }

    #[test]
    fn bleu_aggregates_counts_over_the_corpus() {
        let hyps = [
            "the small cat sat on the mat .",
            "a dog barked loudly at night .",
        ];
        let refs = [
            "the small cat sat on a mat .",
            "the dog barked loudly all night .",
        ];
        let score = bleu(&hyps, &refs).unwrap();
        assert!((score - 44.660_425_196_0).abs() < TOLERANCE);
    }

    #[test]
    fn bleu_is_zero_when_an_order_has_no_matches() {
        // Three-token lines have no 4-grams at all, so even an exact match
        // scores zero under 4-gram BLEU.
        assert_eq!(bleu(&["the cat sat"], &["the cat sat"]).unwrap(), 0.0);
        // And a fully disjoint pair has no matches at any order.
        assert_eq!(bleu(&["a b c d"], &["e f g h"]).unwrap(), 0.0);
    }

    #[test]
    fn bleu_brevity_penalty_scales_short_hypotheses() {
        // Perfect precisions from a one-token-short hypothesis:
        // 100·exp(1 − 5/4) = 77.8800783071….
        let score = bleu(&["a b c d"], &["a b c d e"]).unwrap();
        assert!((score - 77.880_078_307_140_5).abs() < TOLERANCE);
        // No penalty the other way around: the extra token only dilutes
        // precision.
        let longer = bleu(&["a b c d e"], &["a b c d"]).unwrap();
        assert!(longer > 0.0);
        assert!((longer - 100.0 * (0.8_f64 * 0.75 * (2.0 / 3.0) * 0.5).powf(0.25)).abs() < TOLERANCE);
    }

    #[test]
    fn bleu_clips_repeated_ngrams() {
        // "the" appears four times in the hypothesis but is only credited
        // once; with no bigram matches the score collapses to zero.
        assert_eq!(bleu(&["the the the the"], &["the cat"]).unwrap(), 0.0);
    }

    #[test]
    fn chrf_matches_hand_computed_value() {
        // Orders 5 and 6 are absent from four-character lines; the
        // remaining orders give P = R = 23/72.
        let score = chrf3(&["abcd"], &["abce"]).unwrap();
        assert!((score - 100.0 * 23.0 / 72.0).abs() < TOLERANCE);
        assert!((score - 31.944_444_444_4).abs() < 1e-9);
    }

    #[test]
    fn chrf_matches_frozen_sentence_value() {
        let score = chrf3(&["kedi mat üstünde oturdu"], &["kedi mat üzerinde oturdu"]).unwrap();
        assert!((score - 64.038_775_697_6).abs() < TOLERANCE);
    }

    #[test]
    fn chrf_ignores_whitespace_entirely() {
        // Short lines lack orders 5 and 6, so even identical four-character
        // lines score 100·4/6 rather than 100 — but spacing never matters.
        let unspaced = chrf3(&["abcd"], &["abcd"]).unwrap();
        assert!((unspaced - 100.0 * 4.0 / 6.0).abs() < TOLERANCE);
        assert_eq!(chrf3(&["a b c d"], &["abcd"]).unwrap(), unspaced);
        assert_eq!(chrf3(&["ab\tcd"], &["a b c d"]).unwrap(), unspaced);
    }

    #[test]
    fn chrf_weights_recall_over_precision() {
        // The hypothesis covering the whole reference (high recall, low
        // precision) outscores the mirrored pair.
        let recall_heavy = chrf3(&["abcdefgh"], &["abcd"]).unwrap();
        let precision_heavy = chrf3(&["abcd"], &["abcdefgh"]).unwrap();
        assert!(recall_heavy > precision_heavy);
    }

    #[test]
    fn empty_corpora_and_empty_lines_score_zero() {
        let empty: [&str; 0] = [];
        assert_eq!(bleu(&empty, &empty).unwrap(), 0.0);
        assert_eq!(chrf3(&empty, &empty).unwrap(), 0.0);
        assert_eq!(bleu(&[""], &["a b c d"]).unwrap(), 0.0);
        assert_eq!(chrf3(&[""], &["abcd"]).unwrap(), 0.0);
        assert_eq!(chrf3(&[""], &[""]).unwrap(), 0.0);
    }

    #[test]
    fn corpus_scores_are_invariant_under_joint_reordering() {
        let hyps = ["the cat sat on the mat .", "a dog barked loudly ."];
        let refs = ["the cat sat on a mat .", "the dog barked loudly ."];
        let swapped_hyps = [hyps[1], hyps[0]];
        let swapped_refs = [refs[1], refs[0]];
        assert_eq!(
            bleu(&hyps, &refs).unwrap(),
            bleu(&swapped_hyps, &swapped_refs).unwrap()
        );
        assert_eq!(
            chrf3(&hyps, &refs).unwrap(),
            chrf3(&swapped_hyps, &swapped_refs).unwrap()
        );
    }

    #[test]
    fn mismatched_corpus_sizes_are_rejected() {
        let err = bleu(&["a", "b"], &["a"]).unwrap_err();
        assert_eq!(
            err,
            MetricsError::LengthMismatch {
                hypotheses: 2,
                references: 1
            }
        );
        assert!(chrf3(&["a"], &["a", "b"]).is_err());
    }
}
