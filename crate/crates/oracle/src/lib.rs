//! Naive reference implementations used as independent test oracles.
//!
//! Everything in this crate favours transparency over speed: pair statistics
//! are recounted from scratch on every iteration, n-gram clipping is done by
//! scanning vectors with used-flags instead of hash maps, and no state is
//! shared with the main library (this crate depends on nothing). The test
//! suites compare the optimized implementations in `morphseg` against these
//! functions on randomized inputs; expected values frozen into unit tests
//! were computed here first.

/// A subword symbol: its text and whether it carries the end-of-word flag.
///
/// The natural tuple ordering (text by code points, then `false < true`)
/// is exactly the tie-break ordering used for merge selection.
pub type Sym = (String, bool);

/// A merge rule: the adjacent pair that gets fused into one symbol.
pub type Merge = (Sym, Sym);

/// Splits a word into its initial symbol sequence: one symbol per character,
/// with the end-of-word flag on the last one.
pub fn initial_symbols(word: &str) -> Vec<Sym> {
    let chars: Vec<char> = word.chars().collect();
    let last = chars.len().saturating_sub(1);
    chars
        .iter()
        .enumerate()
        .map(|(i, c)| (c.to_string(), i == last))
        .collect()
}

/// One left-to-right merge pass: every non-overlapping occurrence of `pair`
/// is replaced by the fused symbol. "aaa" under (a, a) becomes ["aa", "a"].
pub fn merge_pass(symbols: &[Sym], pair: &Merge) -> Vec<Sym> {
    let fused: Sym = (format!("{}{}", pair.0 .0, pair.1 .0), pair.1 .1);
    let mut out: Vec<Sym> = Vec::with_capacity(symbols.len());
    let mut i = 0;
    while i < symbols.len() {
        if i + 1 < symbols.len() && symbols[i] == pair.0 && symbols[i + 1] == pair.1 {
            out.push(fused.clone());
            i += 2;
        } else {
            out.push(symbols[i].clone());
            i += 1;
        }
    }
    out
}

/// Learns a merge list by brute force: on every iteration the weighted count
/// of every adjacent symbol pair is recomputed from scratch over the whole
/// dictionary, the winner is the highest count with ties broken by the
/// lexicographically smallest (left, right) pair, and learning stops early
/// when the best count falls below `min_pair_frequency` (values below 1
/// behave as 1).
pub fn learn(dict: &[(String, u64)], num_merges: usize, min_pair_frequency: u64) -> Vec<Merge> {
    let threshold = min_pair_frequency.max(1);
    let mut words: Vec<(Vec<Sym>, u64)> = dict
        .iter()
        .map(|(w, c)| (initial_symbols(w), *c))
        .collect();
    let mut merges = Vec::new();
    for _ in 0..num_merges {
        // Recount every adjacent pair, every position, every iteration.
        let mut counts: Vec<(Merge, u64)> = Vec::new();
        for (symbols, count) in &words {
            for window in symbols.windows(2) {
                let pair: Merge = (window[0].clone(), window[1].clone());
                match counts.iter_mut().find(|(p, _)| *p == pair) {
                    Some((_, c)) => *c += count,
                    None => counts.push((pair, *count)),
                }
            }
        }
        let best_count = match counts.iter().map(|(_, c)| *c).max() {
            Some(c) if c >= threshold => c,
            _ => break,
        };
        let best = counts
            .iter()
            .filter(|(_, c)| *c == best_count)
            .map(|(p, _)| p.clone())
            .min()
            .expect("at least one pair has the maximal count");
        for (symbols, _) in &mut words {
            *symbols = merge_pass(symbols, &best);
        }
        merges.push(best);
    }
    merges
}

/// Applies a merge list to one word: each rule in model order gets a single
/// left-to-right pass.
pub fn apply(merges: &[Merge], word: &str) -> Vec<Sym> {
    let mut symbols = initial_symbols(word);
    for merge in merges {
        symbols = merge_pass(&symbols, merge);
    }
    symbols
}

/// Counts sentences, whitespace tokens, and distinct token types over lines.
pub fn corpus_stats<S: AsRef<str>>(lines: &[S]) -> (u64, u64, u64) {
    let sentences = lines.len() as u64;
    let mut tokens = 0u64;
    let mut types: Vec<String> = Vec::new();
    for line in lines {
        for token in line.as_ref().split_whitespace() {
            tokens += 1;
            types.push(token.to_string());
        }
    }
    types.sort();
    types.dedup();
    (sentences, tokens, types.len() as u64)
}

/// Counts distinct stems, distinct combined-suffix strings (one per word that
/// has suffixes), and distinct singular suffixes over an analyzed corpus
/// given as (stem, suffixes) words per sentence.
pub fn morph_stats(corpus: &[Vec<(String, Vec<String>)>]) -> (u64, u64, u64) {
    let mut stems = Vec::new();
    let mut combined = Vec::new();
    let mut singular = Vec::new();
    for sentence in corpus {
        for (stem, suffixes) in sentence {
            stems.push(stem.clone());
            if !suffixes.is_empty() {
                combined.push(suffixes.concat());
            }
            for suffix in suffixes {
                singular.push(suffix.clone());
            }
        }
    }
    for list in [&mut stems, &mut combined, &mut singular] {
        list.sort();
        list.dedup();
    }
    (stems.len() as u64, combined.len() as u64, singular.len() as u64)
}

fn token_ngrams(tokens: &[&str], n: usize) -> Vec<Vec<String>> {
    if tokens.len() < n {
        return Vec::new();
    }
    tokens
        .windows(n)
        .map(|w| w.iter().map(|t| t.to_string()).collect())
        .collect()
}

/// Clipped match count: each hypothesis n-gram greedily consumes one unused
/// matching reference n-gram, which is equivalent to summing
/// min(count_hyp, count_ref) over distinct n-grams.
fn clipped_matches<T: PartialEq>(hyp: &[T], reference: &[T]) -> u64 {
    let mut used = vec![false; reference.len()];
    let mut correct = 0u64;
    for h in hyp {
        for (j, r) in reference.iter().enumerate() {
            if !used[j] && r == h {
                used[j] = true;
                correct += 1;
                break;
            }
        }
    }
    correct
}

/// Corpus-level BLEU over a single reference, the way multi-bleu computes it:
/// case-sensitive whitespace tokens, clipped corpus-level modified precisions
/// for n = 1..4, geometric mean, brevity penalty exp(min(0, 1 - ref/hyp)),
/// no smoothing (any zero precision gives 0), scaled to [0, 100].
pub fn bleu<S: AsRef<str>>(hyps: &[S], refs: &[S]) -> f64 {
    assert_eq!(hyps.len(), refs.len(), "corpora must be parallel");
    let mut correct = [0u64; 4];
    let mut total = [0u64; 4];
    let mut hyp_len = 0u64;
    let mut ref_len = 0u64;
    for (hyp, reference) in hyps.iter().zip(refs) {
        let hyp_tokens: Vec<&str> = hyp.as_ref().split_whitespace().collect();
        let ref_tokens: Vec<&str> = reference.as_ref().split_whitespace().collect();
        hyp_len += hyp_tokens.len() as u64;
        ref_len += ref_tokens.len() as u64;
        for n in 1..=4 {
            let hyp_grams = token_ngrams(&hyp_tokens, n);
            let ref_grams = token_ngrams(&ref_tokens, n);
            correct[n - 1] += clipped_matches(&hyp_grams, &ref_grams);
            total[n - 1] += hyp_grams.len() as u64;
        }
    }
    if hyp_len == 0 {
        return 0.0;
    }
    let mut log_sum = 0.0f64;
    for n in 0..4 {
        if correct[n] == 0 || total[n] == 0 {
            return 0.0;
        }
        log_sum += (correct[n] as f64 / total[n] as f64).ln();
    }
    let brevity = if hyp_len < ref_len {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    } else {
        1.0
    };
    brevity * (log_sum / 4.0).exp() * 100.0
}

fn char_ngrams(chars: &[char], n: usize) -> Vec<String> {
    if chars.len() < n {
        return Vec::new();
    }
    chars.windows(n).map(|w| w.iter().collect()).collect()
}

/// Corpus-level chrF3: character n-grams for n = 1..6 extracted per line with
/// all whitespace removed first, clipped matches aggregated over the corpus,
/// precision and recall each averaged over the six orders (orders with no
/// n-grams on either side are skipped but the divisor stays 6), combined with
/// beta = 3, scaled to [0, 100]. A zero precision-plus-recall gives 0.
pub fn chrf3<S: AsRef<str>>(hyps: &[S], refs: &[S]) -> f64 {
    assert_eq!(hyps.len(), refs.len(), "corpora must be parallel");
    const MAX_N: usize = 6;
    let mut correct = [0u64; MAX_N];
    let mut total_hyp = [0u64; MAX_N];
    let mut total_ref = [0u64; MAX_N];
    for (hyp, reference) in hyps.iter().zip(refs) {
        let hyp_chars: Vec<char> = hyp.as_ref().split_whitespace().collect::<String>().chars().collect();
        let ref_chars: Vec<char> = reference.as_ref().split_whitespace().collect::<String>().chars().collect();
        for n in 1..=MAX_N {
            let hyp_grams = char_ngrams(&hyp_chars, n);
            let ref_grams = char_ngrams(&ref_chars, n);
            correct[n - 1] += clipped_matches(&hyp_grams, &ref_grams);
            total_hyp[n - 1] += hyp_grams.len() as u64;
            total_ref[n - 1] += ref_grams.len() as u64;
        }
    }
    let mut precision = 0.0f64;
    let mut recall = 0.0f64;
    for n in 0..MAX_N {
        if total_hyp[n] > 0 && total_ref[n] > 0 {
            precision += correct[n] as f64 / total_hyp[n] as f64;
            recall += correct[n] as f64 / total_ref[n] as f64;
        }
    }
    precision /= MAX_N as f64;
    recall /= MAX_N as f64;
    let beta_sq = 9.0;
    if precision + recall == 0.0 {
        return 0.0;
    }
    (1.0 + beta_sq) * precision * recall / (beta_sq * precision + recall) * 100.0
}
