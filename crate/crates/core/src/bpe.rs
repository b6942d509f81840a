//! Byte-pair encoding: learning merge rules from a frequency dictionary and
//! applying them to words.
//!
//! Words enter learning as character sequences whose last symbol carries an
//! end-of-word flag; a flagged symbol is a different symbol from the same
//! text mid-word, which is what makes suffix-position merges learnable.
//! Learning repeatedly fuses the adjacent pair with the highest weighted
//! count (ties: lexicographically smallest pair, with flagged symbols
//! ordering after unflagged ones) and stops early when the best count drops
//! below the pair-frequency floor. Application replays the learned rules in
//! model order, each rule getting one left-to-right, non-overlapping pass.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::morpho::RawSentence;

/// Header line identifying the merge-list file format.
const MODEL_HEADER: &str = "#morphseg-bpe v1";
/// Marker appended to a stored symbol that carries the end-of-word flag.
const EOW_MARKER: &str = "</w>";

/// A subword symbol: a non-empty text plus the end-of-word flag.
///
/// The derived ordering (text by code points, then unflagged before flagged)
/// is the tie-break ordering used during learning.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    text: String,
    word_final: bool,
}

impl Symbol {
    pub fn new(text: impl Into<String>, word_final: bool) -> Self {
        Self {
            text: text.into(),
            word_final,
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn is_word_final(&self) -> bool {
        self.word_final
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)?;
        if self.word_final {
            f.write_str(EOW_MARKER)?;
        }
        Ok(())
    }
}

/// One learned merge: the adjacent (left, right) symbol pair that fuses into
/// a single symbol whose text is the concatenation and whose flag is the
/// right side's flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MergeRule {
    left: Symbol,
    right: Symbol,
}

/// Error constructing a [`MergeRule`] or [`BpeModel`] from invalid parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("merge rule symbols must be non-empty")]
    EmptySymbol,
    #[error("merge rule symbol {text:?} contains whitespace")]
    WhitespaceInSymbol { text: String },
    #[error("duplicate merge rule at index {index}")]
    DuplicateRule { index: usize },
}

impl MergeRule {
    /// Validates that both symbol texts are non-empty and whitespace-free
    /// (whitespace would be ambiguous in the model file format).
    pub fn new(left: Symbol, right: Symbol) -> Result<Self, ModelError> {
        for symbol in [&left, &right] {
            if symbol.text.is_empty() {
                return Err(ModelError::EmptySymbol);
            }
            if symbol.text.chars().any(char::is_whitespace) {
                return Err(ModelError::WhitespaceInSymbol {
                    text: symbol.text.clone(),
                });
            }
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> &Symbol {
        &self.left
    }

    pub fn right(&self) -> &Symbol {
        &self.right
    }

    /// The symbol produced by this merge.
    pub fn merged(&self) -> Symbol {
        Symbol {
            text: format!("{}{}", self.left.text, self.right.text),
            word_final: self.right.word_final,
        }
    }
}

impl fmt::Display for MergeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.left, self.right)
    }
}

/// Frequencies of distinct words (types), the input to BPE learning.
///
/// Keys are non-empty and whitespace-free; counts are at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyDictionary {
    counts: BTreeMap<String, u64>,
}

/// Error adding an invalid entry to a [`FrequencyDictionary`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DictionaryError {
    #[error("dictionary words must be non-empty")]
    EmptyWord,
    #[error("dictionary word {word:?} contains whitespace")]
    WhitespaceInWord { word: String },
    #[error("dictionary counts must be at least 1")]
    ZeroCount,
}

impl FrequencyDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` observations of `word`.
    pub fn add(&mut self, word: &str, count: u64) -> Result<(), DictionaryError> {
        if word.is_empty() {
            return Err(DictionaryError::EmptyWord);
        }
        if word.chars().any(char::is_whitespace) {
            return Err(DictionaryError::WhitespaceInWord {
                word: word.to_string(),
            });
        }
        if count == 0 {
            return Err(DictionaryError::ZeroCount);
        }
        *self.counts.entry(word.to_string()).or_insert(0) += count;
        Ok(())
    }

    /// Adds every token of a raw sentence with count 1 each.
    pub fn add_sentence(&mut self, sentence: &RawSentence) {
        for token in &sentence.tokens {
            *self.counts.entry(token.clone()).or_insert(0) += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    /// Iterates (word, count) in lexicographic word order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(w, c)| (w.as_str(), *c))
    }
}

/// Builds a type-frequency dictionary from a token stream: learning weights
/// pairs by type frequency instead of rescanning running text.
pub fn build_dictionary<I>(corpus: I) -> FrequencyDictionary
where
    I: IntoIterator,
    I::Item: std::borrow::Borrow<RawSentence>,
{
    let mut dict = FrequencyDictionary::new();
    for sentence in corpus {
        dict.add_sentence(sentence.borrow());
    }
    dict
}

/// A word split into subword symbols; concatenating the texts restores the
/// word exactly, and only the last symbol may carry the end-of-word flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    symbols: Vec<Symbol>,
}

impl SymbolSequence {
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(Symbol::text)
    }

    /// Re-concatenates the subword texts into the source word.
    pub fn concat(&self) -> String {
        self.symbols.iter().map(Symbol::text).collect()
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }
}

/// An ordered list of merge rules plus lookup tables for fast application.
///
/// Two models compare equal when their merge lists are equal.
#[derive(Debug, Clone)]
pub struct BpeModel {
    merges: Vec<MergeRule>,
    /// Interned symbols: every rule's left, right, and merged symbol.
    table: Vec<Symbol>,
    ids: HashMap<Symbol, u32>,
    /// Per rule: (left id, right id, merged id).
    compiled: Vec<(u32, u32, u32)>,
    /// (left id, right id) -> rule index; also detects duplicate rules.
    pair_rank: HashMap<(u32, u32), u32>,
}

impl PartialEq for BpeModel {
    fn eq(&self, other: &Self) -> bool {
        self.merges == other.merges
    }
}

impl Eq for BpeModel {}

impl BpeModel {
    /// Builds a model from an ordered merge list, rejecting duplicate rules.
    pub fn new(merges: Vec<MergeRule>) -> Result<Self, ModelError> {
        let mut table = Vec::new();
        let mut ids: HashMap<Symbol, u32> = HashMap::new();
        let mut compiled = Vec::with_capacity(merges.len());
        let mut pair_rank = HashMap::with_capacity(merges.len());
        {
            let mut intern = |symbol: &Symbol| -> u32 {
                if let Some(&id) = ids.get(symbol) {
                    return id;
                }
                let id = table.len() as u32;
                table.push(symbol.clone());
                ids.insert(symbol.clone(), id);
                id
            };
            for (index, rule) in merges.iter().enumerate() {
                let left = intern(rule.left());
                let right = intern(rule.right());
                let merged = intern(&rule.merged());
                if pair_rank.insert((left, right), index as u32).is_some() {
                    return Err(ModelError::DuplicateRule { index });
                }
                compiled.push((left, right, merged));
            }
        }
        Ok(Self {
            merges,
            table,
            ids,
            compiled,
            pair_rank,
        })
    }

    /// The empty model: application splits every word into characters.
    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty merge list is valid")
    }

    pub fn merges(&self) -> &[MergeRule] {
        &self.merges
    }

    pub fn len(&self) -> usize {
        self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.merges.is_empty()
    }

    /// A model consisting of the first `count` merges of this one. A model
    /// truncated to `count` equals the model learned from the same
    /// dictionary with `count` requested merges.
    pub fn truncated(&self, count: usize) -> Self {
        Self::new(self.merges.iter().take(count).cloned().collect())
            .expect("a prefix of a valid merge list is valid")
    }

    /// Writes the model in the line-oriented merge-list format.
    pub fn save<W: Write>(&self, mut writer: W) -> io::Result<()> {
        writeln!(writer, "{MODEL_HEADER}")?;
        for rule in &self.merges {
            writeln!(writer, "{} {}", encode_symbol(rule.left()), encode_symbol(rule.right()))?;
        }
        Ok(())
    }

    /// Reads a model saved by [`BpeModel::save`], reporting the offending
    /// line number on malformed input.
    pub fn load<R: BufRead>(reader: R) -> Result<Self, ModelIoError> {
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => return Err(ModelIoError::MissingHeader),
        };
        if header != MODEL_HEADER {
            let Some(version) = header.strip_prefix("#morphseg-bpe ") else {
                return Err(ModelIoError::MalformedHeader { found: header });
            };
            return Err(ModelIoError::UnsupportedVersion {
                found: version.to_string(),
            });
        }
        let mut merges = Vec::new();
        for (offset, line) in lines.enumerate() {
            let line_number = offset + 2;
            let line = line?;
            let mut fields = line.split(' ');
            let (Some(left), Some(right), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(ModelIoError::MalformedMerge {
                    line_number,
                    reason: "expected exactly two space-separated symbols".to_string(),
                });
            };
            let decode = |field: &str| {
                decode_symbol(field).map_err(|reason| ModelIoError::MalformedMerge {
                    line_number,
                    reason,
                })
            };
            let rule = MergeRule::new(decode(left)?, decode(right)?).map_err(|e| {
                ModelIoError::MalformedMerge {
                    line_number,
                    reason: e.to_string(),
                }
            })?;
            merges.push(rule);
        }
        Self::new(merges).map_err(|e| match e {
            ModelError::DuplicateRule { index } => ModelIoError::DuplicateRule {
                line_number: index + 2,
            },
            other => ModelIoError::MalformedMerge {
                line_number: 0,
                reason: other.to_string(),
            },
        })
    }

    fn symbol_id(&self, symbol: &Symbol) -> Option<u32> {
        self.ids.get(symbol).copied()
    }

    fn resolve(&self, id: u32) -> &Symbol {
        &self.table[id as usize]
    }
}

/// Error reading a merge-list file.
#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("model file is empty (missing header)")]
    MissingHeader,
    #[error("line 1: not a merge-list header: {found:?}")]
    MalformedHeader { found: String },
    #[error("line 1: unsupported merge-list version {found:?} (expected v1)")]
    UnsupportedVersion { found: String },
    #[error("line {line_number}: {reason}")]
    MalformedMerge { line_number: usize, reason: String },
    #[error("line {line_number}: duplicate merge rule")]
    DuplicateRule { line_number: usize },
}

/// Escapes a symbol for the model file: backslashes and `<` are
/// backslash-escaped in the text, then a flagged symbol appends a bare
/// end-of-word marker. A bare `<` therefore only ever starts the marker.
fn encode_symbol(symbol: &Symbol) -> String {
    let mut out = String::with_capacity(symbol.text.len() + 4);
    for c in symbol.text.chars() {
        if c == '\\' || c == '<' {
            out.push('\\');
        }
        out.push(c);
    }
    if symbol.word_final {
        out.push_str(EOW_MARKER);
    }
    out
}

fn decode_symbol(field: &str) -> Result<Symbol, String> {
    let mut text = String::with_capacity(field.len());
    let mut word_final = false;
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some(escaped @ ('\\' | '<')) => text.push(escaped),
                Some(other) => return Err(format!("invalid escape sequence \\{other}")),
                None => return Err("dangling backslash".to_string()),
            },
            '<' => {
                let rest: String = chars.by_ref().collect();
                if rest != "/w>" {
                    return Err(format!(
                        "unescaped '<' must begin a terminal {EOW_MARKER} marker"
                    ));
                }
                word_final = true;
            }
            other => text.push(other),
        }
    }
    if text.is_empty() {
        return Err("empty symbol".to_string());
    }
    Ok(Symbol { text, word_final })
}

/// One left-to-right merge pass over a symbol-id sequence: every
/// non-overlapping occurrence of `(left, right)` becomes `merged`, so
/// `a a a` under the rule `(a, a)` becomes `aa a`.
fn merge_pass(ids: &[u32], left: u32, right: u32, merged: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(ids.len());
    let mut i = 0;
    while i < ids.len() {
        if i + 1 < ids.len() && ids[i] == left && ids[i + 1] == right {
            out.push(merged);
            i += 2;
        } else {
            out.push(ids[i]);
            i += 1;
        }
    }
    out
}

/// Splits `word` into subwords by replaying the model's merges in order,
/// one left-to-right pass per rule.
///
/// `word` is expected to be non-empty and whitespace-free (the empty word
/// yields an empty sequence). The concatenation of the returned texts always
/// equals `word`, and exactly the last symbol carries the end-of-word flag.
pub fn apply_bpe(model: &BpeModel, word: &str) -> SymbolSequence {
    debug_assert!(
        !word.chars().any(char::is_whitespace),
        "words must be whitespace-free"
    );
    // Symbols the model has never seen get ids past the model table and can
    // never participate in a merge.
    let mut local: Vec<Symbol> = Vec::new();
    let mut local_ids: HashMap<Symbol, u32> = HashMap::new();
    let base = model.table.len() as u32;
    let chars: Vec<char> = word.chars().collect();
    let last = chars.len().saturating_sub(1);
    let mut ids: Vec<u32> = chars
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let symbol = Symbol::new(c.to_string(), i == last);
            model.symbol_id(&symbol).unwrap_or_else(|| {
                *local_ids.entry(symbol.clone()).or_insert_with(|| {
                    local.push(symbol);
                    base + (local.len() as u32 - 1)
                })
            })
        })
        .collect();

    // Rule indices are processed in strictly increasing order, which is
    // equivalent to trying every rule once in model order: a pair formed by
    // merging rule r can only belong to a rule recorded after r, because the
    // merged symbol did not exist earlier.
    let mut pending = std::collections::BinaryHeap::new();
    let rank_of = |a: u32, b: u32| model.pair_rank.get(&(a, b)).copied();
    for window in ids.windows(2) {
        if let Some(rank) = rank_of(window[0], window[1]) {
            pending.push(std::cmp::Reverse(rank));
        }
    }
    while let Some(std::cmp::Reverse(rank)) = pending.pop() {
        while pending.peek() == Some(&std::cmp::Reverse(rank)) {
            pending.pop();
        }
        let (left, right, merged) = model.compiled[rank as usize];
        let next = merge_pass(&ids, left, right, merged);
        if next.len() == ids.len() {
            continue; // Stale heap entry: the pair is no longer present.
        }
        ids = next;
        for window in ids.windows(2) {
            if let Some(r) = rank_of(window[0], window[1]) {
                if r > rank {
                    pending.push(std::cmp::Reverse(r));
                }
            }
        }
    }

    let symbols = ids
        .into_iter()
        .map(|id| {
            if id < base {
                model.resolve(id).clone()
            } else {
                local[(id - base) as usize].clone()
            }
        })
        .collect();
    SymbolSequence { symbols }
}

/// The BPE learner: incremental pair statistics over the dictionary.
struct Learner {
    /// Interned symbols; ids index into this table.
    table: Vec<Symbol>,
    ids: HashMap<Symbol, u32>,
    /// Each dictionary word as its current symbol ids, plus its frequency.
    words: Vec<(Vec<u32>, u64)>,
    /// Weighted count of every adjacent pair, every position counted.
    pair_counts: HashMap<(u32, u32), u64>,
    /// Which words currently contain each pair.
    pair_words: HashMap<(u32, u32), BTreeSet<usize>>,
}

impl Learner {
    fn new(dict: &FrequencyDictionary) -> Self {
        let mut learner = Self {
            table: Vec::new(),
            ids: HashMap::new(),
            words: Vec::with_capacity(dict.len()),
            pair_counts: HashMap::new(),
            pair_words: HashMap::new(),
        };
        for (word, count) in dict.iter() {
            let chars: Vec<char> = word.chars().collect();
            let last = chars.len().saturating_sub(1);
            let ids: Vec<u32> = chars
                .iter()
                .enumerate()
                .map(|(i, c)| learner.intern(Symbol::new(c.to_string(), i == last)))
                .collect();
            let index = learner.words.len();
            for window in ids.windows(2) {
                let pair = (window[0], window[1]);
                *learner.pair_counts.entry(pair).or_insert(0) += count;
                learner.pair_words.entry(pair).or_default().insert(index);
            }
            learner.words.push((ids, count));
        }
        learner
    }

    fn intern(&mut self, symbol: Symbol) -> u32 {
        if let Some(&id) = self.ids.get(&symbol) {
            return id;
        }
        let id = self.table.len() as u32;
        self.table.push(symbol.clone());
        self.ids.insert(symbol, id);
        id
    }

    /// The pair with the highest weighted count; ties go to the
    /// lexicographically smallest (left, right).
    fn best_pair(&self) -> Option<((u32, u32), u64)> {
        let best_count = self.pair_counts.values().copied().max()?;
        let best = self
            .pair_counts
            .iter()
            .filter(|(_, &count)| count == best_count)
            .map(|(&pair, _)| pair)
            .min_by(|&(l1, r1), &(l2, r2)| {
                (&self.table[l1 as usize], &self.table[r1 as usize])
                    .cmp(&(&self.table[l2 as usize], &self.table[r2 as usize]))
            })?;
        Some((best, best_count))
    }

    /// Fuses `pair` in every word containing it, keeping the pair statistics
    /// exact by diffing each rebuilt word's adjacent pairs.
    fn merge(&mut self, pair: (u32, u32), merged: u32) {
        let affected = self.pair_words.remove(&pair).unwrap_or_default();
        self.pair_counts.remove(&pair);
        for index in affected {
            let (ids, count) = &self.words[index];
            let count = *count;
            let new_ids = merge_pass(ids, pair.0, pair.1, merged);
            let mut delta: HashMap<(u32, u32), i64> = HashMap::new();
            for window in self.words[index].0.windows(2) {
                *delta.entry((window[0], window[1])).or_insert(0) -= 1;
            }
            for window in new_ids.windows(2) {
                *delta.entry((window[0], window[1])).or_insert(0) += 1;
            }
            for (p, d) in delta {
                if p == pair {
                    continue; // Fully accounted for by the removal above.
                }
                match d.cmp(&0) {
                    std::cmp::Ordering::Greater => {
                        *self.pair_counts.entry(p).or_insert(0) += d as u64 * count;
                        self.pair_words.entry(p).or_default().insert(index);
                    }
                    std::cmp::Ordering::Less => {
                        let slot = self
                            .pair_counts
                            .get_mut(&p)
                            .expect("decremented pair was counted");
                        *slot -= (-d) as u64 * count;
                        if *slot == 0 {
                            self.pair_counts.remove(&p);
                        }
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
            // A pair with an unchanged net count may still have vanished from
            // or appeared in this word; recompute membership exactly.
            let old_set: HashSet<(u32, u32)> = self.words[index]
                .0
                .windows(2)
                .map(|w| (w[0], w[1]))
                .collect();
            let new_set: HashSet<(u32, u32)> =
                new_ids.windows(2).map(|w| (w[0], w[1])).collect();
            for gone in old_set.difference(&new_set) {
                if *gone == pair {
                    continue;
                }
                if let Some(set) = self.pair_words.get_mut(gone) {
                    set.remove(&index);
                    if set.is_empty() {
                        self.pair_words.remove(gone);
                    }
                }
            }
            for fresh in new_set.difference(&old_set) {
                self.pair_words.entry(*fresh).or_default().insert(index);
            }
            self.words[index].0 = new_ids;
        }
    }

    /// Distinct symbol ids currently present across all words.
    #[cfg(test)]
    fn symbol_type_count(&self) -> usize {
        let mut seen: HashSet<u32> = HashSet::new();
        for (ids, _) in &self.words {
            seen.extend(ids.iter().copied());
        }
        seen.len()
    }

    fn learn(&mut self, num_merges: usize, min_pair_frequency: u64) -> Vec<MergeRule> {
        let threshold = min_pair_frequency.max(1);
        let mut merges = Vec::new();
        for _ in 0..num_merges {
            let Some((pair, count)) = self.best_pair() else {
                break;
            };
            if count < threshold {
                break;
            }
            let rule = MergeRule::new(
                self.table[pair.0 as usize].clone(),
                self.table[pair.1 as usize].clone(),
            )
            .expect("dictionary symbols are non-empty and whitespace-free");
            let merged = self.intern(rule.merged());
            self.merge(pair, merged);
            merges.push(rule);
        }
        merges
    }
}

/// Learns up to `num_merges` merge rules from the dictionary. Learning stops
/// early when no adjacent pair reaches `min_pair_frequency` (values below 1
/// behave as 1), so rare residue never produces merges.
pub fn learn_bpe(
    dict: &FrequencyDictionary,
    num_merges: usize,
    min_pair_frequency: u64,
) -> BpeModel {
    let merges = Learner::new(dict).learn(num_merges, min_pair_frequency);
    BpeModel::new(merges).expect("the learner never repeats a merge")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(text: &str, word_final: bool) -> Symbol {
        Symbol::new(text, word_final)
    }

    fn rule(left: (&str, bool), right: (&str, bool)) -> MergeRule {
        MergeRule::new(sym(left.0, left.1), sym(right.0, right.1)).unwrap()
    }

    fn dict(entries: &[(&str, u64)]) -> FrequencyDictionary {
        let mut d = FrequencyDictionary::new();
        for (word, count) in entries {
            d.add(word, *count).unwrap();
        }
        d
    }

    #[test]
    fn symbols_order_by_text_then_flag() {
        assert!(sym("a", false) < sym("a", true));
        assert!(sym("a", true) < sym("b", false));
        assert!(sym("b", false) < sym("b", true));
    }

    #[test]
    fn zero_merges_learns_empty_model() {
        let model = learn_bpe(&dict(&[("abc", 4)]), 0, 2);
        assert!(model.is_empty());
    }

    #[test]
    fn empty_dictionary_learns_empty_model() {
        let model = learn_bpe(&FrequencyDictionary::new(), 10, 2);
        assert!(model.is_empty());
    }

    // Reference trace computed with the naive recount learner: the three
    // initial pairs of "abab" all have weighted count 5, the smallest is
    // (a, b) which fuses only position 0 (position 2 pairs with a flagged b),
    // and the second round picks (a, b-final) over (ab, a).
    #[test]
    fn repeated_bigram_word_learns_two_exact_merges() {
        let model = learn_bpe(&dict(&[("abab", 5)]), 2, 2);
        assert_eq!(
            model.merges(),
            &[
                rule(("a", false), ("b", false)),
                rule(("a", false), ("b", true)),
            ]
        );
        let applied = apply_bpe(&model, "abab");
        assert_eq!(
            applied.symbols(),
            &[sym("ab", false), sym("ab", true)]
        );
    }

    #[test]
    fn equal_counts_break_ties_toward_smaller_pair() {
        let model = learn_bpe(&dict(&[("ab", 3), ("cd", 3)]), 1, 2);
        assert_eq!(model.merges(), &[rule(("a", false), ("b", true))]);
    }

    #[test]
    fn learning_stops_below_pair_frequency_floor() {
        // Every pair occurs exactly once, under the default floor of 2.
        let model = learn_bpe(&dict(&[("abc", 1), ("xyz", 1)]), 10, 2);
        assert!(model.is_empty());
        // A floor of 1 lets learning proceed.
        let model = learn_bpe(&dict(&[("abc", 1), ("xyz", 1)]), 10, 1);
        assert!(!model.is_empty());
    }

    #[test]
    fn empty_model_splits_into_flagged_characters() {
        let applied = apply_bpe(&BpeModel::empty(), "ab");
        assert_eq!(applied.symbols(), &[sym("a", false), sym("b", true)]);
        assert_eq!(applied.concat(), "ab");
    }

    #[test]
    fn single_character_word_is_one_flagged_symbol() {
        let applied = apply_bpe(&BpeModel::empty(), "a");
        assert_eq!(applied.symbols(), &[sym("a", true)]);
    }

    #[test]
    fn merge_passes_are_left_to_right_non_overlapping() {
        let model = BpeModel::new(vec![rule(("a", false), ("a", false))]).unwrap();
        let applied = apply_bpe(&model, "aaa");
        assert_eq!(applied.symbols(), &[sym("aa", false), sym("a", true)]);
    }

    #[test]
    fn rules_apply_in_model_order_with_one_pass_each() {
        // The second rule consumes the output of the first; a rule listed
        // before the symbols it needs exist never fires.
        let model = BpeModel::new(vec![
            rule(("x", false), ("ab", true)),
            rule(("a", false), ("b", true)),
        ])
        .unwrap();
        let applied = apply_bpe(&model, "xab");
        // (x, ab-final) is tried before ab-final exists, so only the second
        // rule fires.
        assert_eq!(applied.symbols(), &[sym("x", false), sym("ab", true)]);
    }

    #[test]
    fn later_rules_can_build_on_earlier_ones() {
        let model = BpeModel::new(vec![
            rule(("a", false), ("b", false)),
            rule(("ab", false), ("c", true)),
        ])
        .unwrap();
        let applied = apply_bpe(&model, "abc");
        assert_eq!(applied.symbols(), &[sym("abc", true)]);
    }

    #[test]
    fn unknown_characters_pass_through_unmerged() {
        let model = learn_bpe(&dict(&[("ab", 5)]), 1, 1);
        let applied = apply_bpe(&model, "aqb");
        assert_eq!(applied.concat(), "aqb");
        assert_eq!(applied.len(), 3);
    }

    #[test]
    fn duplicate_rules_are_rejected() {
        let err = BpeModel::new(vec![
            rule(("a", false), ("b", false)),
            rule(("a", false), ("b", false)),
        ])
        .unwrap_err();
        assert_eq!(err, ModelError::DuplicateRule { index: 1 });
    }

    #[test]
    fn replaying_merges_reproduces_learned_word_states() {
        let entries: &[(&str, u64)] = &[
            ("uzakta", 4),
            ("uzak", 7),
            ("kasaba", 3),
            ("kasabalar", 2),
            ("saat", 6),
        ];
        let d = dict(entries);
        let mut learner = Learner::new(&d);
        let merges = learner.learn(8, 1);
        let model = BpeModel::new(merges).unwrap();
        for (index, (word, _)) in d.iter().enumerate() {
            let replayed: Vec<Symbol> = apply_bpe(&model, word).into_symbols();
            let learned: Vec<Symbol> = learner.words[index]
                .0
                .iter()
                .map(|&id| learner.table[id as usize].clone())
                .collect();
            assert_eq!(replayed, learned, "divergence on {word:?}");
        }
    }

    #[test]
    fn symbol_types_never_exceed_initial_types_plus_merges() {
        let entries: &[(&str, u64)] = &[("banana", 3), ("bandana", 2), ("cabana", 5)];
        let d = dict(entries);
        let initial = Learner::new(&d).symbol_type_count();
        for k in 0..12 {
            let mut learner = Learner::new(&d);
            let merges = learner.learn(k, 1);
            assert!(merges.len() <= k);
            assert!(
                learner.symbol_type_count() <= initial + k,
                "bound violated at k={k}"
            );
        }
    }

    #[test]
    fn truncating_equals_relearning() {
        let d = dict(&[("kasabasındayım", 3), ("kasabalar", 4), ("uzaktayım", 2)]);
        let maximal = learn_bpe(&d, 12, 1);
        for k in 0..=12 {
            assert_eq!(maximal.truncated(k), learn_bpe(&d, k, 1), "k={k}");
        }
    }

    #[test]
    fn save_then_load_round_trips() {
        let model = learn_bpe(&dict(&[("abab", 5), ("aba", 2)]), 4, 1);
        let mut buffer = Vec::new();
        model.save(&mut buffer).unwrap();
        let loaded = BpeModel::load(buffer.as_slice()).unwrap();
        assert_eq!(loaded, model);
    }

    #[test]
    fn empty_model_round_trips_as_header_only() {
        let mut buffer = Vec::new();
        BpeModel::empty().save(&mut buffer).unwrap();
        assert_eq!(String::from_utf8(buffer.clone()).unwrap(), "#morphseg-bpe v1\n");
        assert!(BpeModel::load(buffer.as_slice()).unwrap().is_empty());
    }

    #[test]
    fn hostile_symbol_texts_round_trip() {
        // Texts containing the flag marker, backslashes, and '<' must
        // survive save/load exactly.
        let model = BpeModel::new(vec![
            rule(("</w>", false), ("a", true)),
            rule((r"a\b", false), ("<x>", false)),
            rule((r"\", false), ("<", true)),
        ])
        .unwrap();
        let mut buffer = Vec::new();
        model.save(&mut buffer).unwrap();
        let loaded = BpeModel::load(buffer.as_slice()).unwrap();
        assert_eq!(loaded, model);
    }

    #[test]
    fn load_rejects_bad_header() {
        let err = BpeModel::load("not a model\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ModelIoError::MalformedHeader { .. }));
        let err = BpeModel::load("".as_bytes()).unwrap_err();
        assert!(matches!(err, ModelIoError::MissingHeader));
    }

    #[test]
    fn load_rejects_wrong_version() {
        let err = BpeModel::load("#morphseg-bpe v2\n".as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            ModelIoError::UnsupportedVersion { found } if found == "v2"
        ));
    }

    #[test]
    fn load_reports_malformed_merge_lines() {
        let input = "#morphseg-bpe v1\na b\nonly-one-field\n";
        let err = BpeModel::load(input.as_bytes()).unwrap_err();
        assert!(
            matches!(err, ModelIoError::MalformedMerge { line_number: 3, .. }),
            "got {err:?}"
        );
        let input = "#morphseg-bpe v1\na b<oops\n";
        let err = BpeModel::load(input.as_bytes()).unwrap_err();
        assert!(matches!(err, ModelIoError::MalformedMerge { line_number: 2, .. }));
    }

    #[test]
    fn load_reports_duplicate_rules_with_line_number() {
        let input = "#morphseg-bpe v1\na b\na b\n";
        let err = BpeModel::load(input.as_bytes()).unwrap_err();
        assert!(matches!(err, ModelIoError::DuplicateRule { line_number: 3 }));
    }

    #[test]
    fn dictionary_rejects_invalid_entries() {
        let mut d = FrequencyDictionary::new();
        assert_eq!(d.add("", 1), Err(DictionaryError::EmptyWord));
        assert_eq!(d.add("a", 0), Err(DictionaryError::ZeroCount));
        assert!(matches!(
            d.add("a b", 1),
            Err(DictionaryError::WhitespaceInWord { .. })
        ));
    }

    #[test]
    fn dictionary_accumulates_counts_from_sentences() {
        let mut d = FrequencyDictionary::new();
        d.add_sentence(&RawSentence::parse("ev ev yol"));
        d.add_sentence(&RawSentence::parse("ev"));
        assert_eq!(d.count("ev"), 3);
        assert_eq!(d.count("yol"), 1);
        assert_eq!(d.len(), 2);
    }
}
