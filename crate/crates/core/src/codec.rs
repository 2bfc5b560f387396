//! Codewords for a code tree, and encode/decode over symbol sequences.
//!
//! Letters are numbered `1..=r` in order of increasing length. Words are
//! sorted lexicographically and symbol `s` maps to the `s`-th word.

use thiserror::Error;

use crate::engine::CodeTree;
use crate::model::{Cost, Instance};

pub type Letter = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("malformed tree: {0}")]
    MalformedTree(&'static str),
    #[error("word {0} is a prefix of word {1}")]
    NotPrefixFree(usize, usize),
    #[error("expected {expected} words, got {got}")]
    WordCount { expected: usize, got: usize },
    #[error("duplicate word {0}")]
    DuplicateWord(usize),
    #[error("letter {letter} of word {word} is outside 1..={r}")]
    BadLetter {
        word: usize,
        letter: Letter,
        r: usize,
    },
    #[error("symbol {symbol} at position {position} is outside 0..{n}")]
    SymbolOutOfRange {
        symbol: usize,
        position: usize,
        n: usize,
    },
    #[error("dangling suffix at position {position}")]
    DanglingSuffix { position: usize },
    #[error("no codeword continues with letter {letter} at position {position}")]
    UnknownPath { position: usize, letter: Letter },
    #[error("unknown glyph at byte {0}")]
    UnknownGlyph(usize),
    #[error("glyph table must have {expected} distinct non-empty entries")]
    BadGlyphs { expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TrieNode {
    Inner(Vec<(Letter, usize)>),
    Word(usize),
}

/// A prefix code over the instance's alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    words: Vec<Vec<Letter>>,
    lengths: Vec<Cost>,
    instance: Instance,
    trie: Vec<TrieNode>,
}

impl Code {
    /// Builds a code from explicit words, checking letters and
    /// prefix-freeness. Words are put in lexicographic order.
    pub fn from_words(instance: Instance, mut words: Vec<Vec<Letter>>) -> Result<Code, CodecError> {
        let r = instance.r();
        if words.len() != instance.n() {
            return Err(CodecError::WordCount {
                expected: instance.n(),
                got: words.len(),
            });
        }
        for (k, w) in words.iter().enumerate() {
            if let Some(&letter) = w.iter().find(|&&l| l == 0 || l as usize > r) {
                return Err(CodecError::BadLetter { word: k, letter, r });
            }
        }
        words.sort();
        let trie = build_trie(&words)?;
        let lengths = words
            .iter()
            .map(|w| w.iter().map(|&l| instance.letter_cost(l as usize)).sum())
            .collect();
        Ok(Code {
            words,
            lengths,
            instance,
            trie,
        })
    }

    pub fn words(&self) -> &[Vec<Letter>] {
        &self.words
    }

    pub fn lengths(&self) -> &[Cost] {
        &self.lengths
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.words.len()
    }

    pub fn total_length(&self) -> Cost {
        self.lengths.iter().copied().sum()
    }

    /// Concatenates the words of `symbols`.
    pub fn encode(&self, symbols: &[usize]) -> Result<Vec<Letter>, CodecError> {
        let mut out = Vec::new();
        for (position, &symbol) in symbols.iter().enumerate() {
            let word = self.words.get(symbol).ok_or(CodecError::SymbolOutOfRange {
                symbol,
                position,
                n: self.n(),
            })?;
            out.extend_from_slice(word);
        }
        Ok(out)
    }

    /// Splits `letters` back into symbols by walking the code tree.
    ///
    /// A one-word code has the empty word, so only empty input decodes.
    pub fn decode(&self, letters: &[Letter]) -> Result<Vec<usize>, CodecError> {
        let mut out = Vec::new();
        let mut node = 0;
        let mut start = 0;
        if let TrieNode::Word(_) = self.trie[0] {
            return match letters.first() {
                None => Ok(out),
                Some(&letter) => Err(CodecError::UnknownPath {
                    position: 0,
                    letter,
                }),
            };
        }
        for (position, &letter) in letters.iter().enumerate() {
            let TrieNode::Inner(children) = &self.trie[node] else {
                unreachable!("walk resets at every word");
            };
            let next = children
                .binary_search_by_key(&letter, |&(l, _)| l)
                .map(|k| children[k].1)
                .map_err(|_| CodecError::UnknownPath { position, letter })?;
            match self.trie[next] {
                TrieNode::Word(symbol) => {
                    out.push(symbol);
                    node = 0;
                    start = position + 1;
                }
                TrieNode::Inner(_) => node = next,
            }
        }
        if node != 0 {
            return Err(CodecError::DanglingSuffix { position: start });
        }
        Ok(out)
    }
}

fn build_trie(words: &[Vec<Letter>]) -> Result<Vec<TrieNode>, CodecError> {
    if words.len() == 1 && words[0].is_empty() {
        return Ok(vec![TrieNode::Word(0)]);
    }
    let mut trie = vec![TrieNode::Inner(Vec::new())];
    for (k, word) in words.iter().enumerate() {
        if word.is_empty() {
            // the empty word prefixes everything else
            return Err(CodecError::NotPrefixFree(k, (k + 1) % words.len()));
        }
        let mut node = 0;
        for (depth, &letter) in word.iter().enumerate() {
            let last = depth + 1 == word.len();
            let found = match &trie[node] {
                TrieNode::Word(other) => return Err(CodecError::NotPrefixFree(*other, k)),
                TrieNode::Inner(children) => children.binary_search_by_key(&letter, |&(l, _)| l),
            };
            match found {
                Ok(at) => {
                    let TrieNode::Inner(children) = &trie[node] else {
                        unreachable!()
                    };
                    let next = children[at].1;
                    if last {
                        return match trie[next] {
                            TrieNode::Word(_) => Err(CodecError::DuplicateWord(k)),
                            TrieNode::Inner(_) => {
                                Err(CodecError::NotPrefixFree(k, first_word_below(&trie, next)))
                            }
                        };
                    }
                    node = next;
                }
                Err(at) => {
                    let fresh = trie.len();
                    trie.push(if last {
                        TrieNode::Word(k)
                    } else {
                        TrieNode::Inner(Vec::new())
                    });
                    if let TrieNode::Inner(children) = &mut trie[node] {
                        children.insert(at, (letter, fresh));
                    }
                    node = fresh;
                }
            }
        }
    }
    Ok(trie)
}

fn first_word_below(trie: &[TrieNode], mut node: usize) -> usize {
    loop {
        match &trie[node] {
            TrieNode::Word(k) => return *k,
            TrieNode::Inner(children) => node = children[0].1,
        }
    }
}

/// Spells every terminal of `tree` as its root-to-terminal letter path.
pub fn assign_codewords(tree: &CodeTree, instance: &Instance) -> Result<Code, CodecError> {
    let m = tree.non_terminals.len();
    let mut words = Vec::with_capacity(tree.terminals.len());
    for t in &tree.terminals {
        if t.is_root() {
            if m != 0 || tree.terminals.len() != 1 {
                return Err(CodecError::MalformedTree("root is both terminal and inner"));
            }
            words.push(Vec::new());
            continue;
        }
        let mut word = vec![t.child as Letter];
        let mut u = t.parent;
        let mut steps = 0;
        while u > 1 {
            let nt = tree
                .non_terminals
                .get(u - 1)
                .ok_or(CodecError::MalformedTree("dangling parent rank"))?;
            word.push(nt.child as Letter);
            u = nt.parent;
            steps += 1;
            if steps > m {
                return Err(CodecError::MalformedTree("cycle in parent ranks"));
            }
        }
        if u == 0 || m == 0 {
            return Err(CodecError::MalformedTree("path does not reach the root"));
        }
        word.reverse();
        words.push(word);
    }
    Code::from_words(instance.clone(), words)
}

/// Renders letters as text: glyph `i - 1` for letter `i` when a glyph table
/// is given, otherwise space-separated letter numbers.
pub fn render_letters(letters: &[Letter], glyphs: Option<&[String]>) -> String {
    match glyphs {
        Some(g) => letters
            .iter()
            .map(|&l| g[l as usize - 1].as_str())
            .collect(),
        None => letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    }
}

/// Inverse of [`render_letters`]. Glyph strings are split by longest match;
/// without glyphs, letter numbers are separated by whitespace or commas.
pub fn parse_letters(
    text: &str,
    glyphs: Option<&[String]>,
    r: usize,
) -> Result<Vec<Letter>, CodecError> {
    match glyphs {
        Some(g) => {
            check_glyphs(g, r)?;
            let text = text.trim();
            let mut out = Vec::new();
            let mut at = 0;
            while at < text.len() {
                let rest = &text[at..];
                let (idx, glyph) = g
                    .iter()
                    .enumerate()
                    .filter(|(_, gl)| rest.starts_with(gl.as_str()))
                    .max_by_key(|(_, gl)| gl.len())
                    .ok_or(CodecError::UnknownGlyph(at))?;
                out.push(idx as Letter + 1);
                at += glyph.len();
            }
            Ok(out)
        }
        None => text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(k, t)| {
                t.parse::<Letter>()
                    .ok()
                    .filter(|&l| l >= 1 && l as usize <= r)
                    .ok_or(CodecError::BadLetter {
                        word: k,
                        letter: t.parse().unwrap_or(0),
                        r,
                    })
            })
            .collect(),
    }
}

/// A glyph table needs one distinct, non-empty glyph per letter.
pub fn check_glyphs(glyphs: &[String], r: usize) -> Result<(), CodecError> {
    let mut sorted: Vec<&String> = glyphs.iter().collect();
    sorted.sort();
    sorted.dedup();
    if glyphs.len() != r || sorted.len() != r || glyphs.iter().any(|g| g.is_empty()) {
        return Err(CodecError::BadGlyphs { expected: r });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{compute_optimal, NonTerminal, Options};
    use crate::model::NodeRef;
    use proptest::prelude::*;

    fn solve(costs: &[u64], n: usize) -> Code {
        let inst = Instance::from_integers(costs, n).unwrap();
        let sol = compute_optimal(&inst, Options::default()).unwrap();
        assign_codewords(&sol.tree, &inst).unwrap()
    }

    #[test]
    fn two_word_code() {
        let code = solve(&[1, 3], 2);
        assert_eq!(code.words(), &[vec![1], vec![2]]);
        assert_eq!(code.total_length(), Cost(4));
    }

    #[test]
    fn morse_code_lengths() {
        let code = solve(&[1, 2], 6);
        assert_eq!(code.total_length(), Cost(23));
        let mut lengths: Vec<u128> = code.lengths().iter().map(|c| c.get()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![3, 3, 4, 4, 4, 5]);
    }

    #[test]
    fn single_word_code() {
        let code = solve(&[1, 2], 1);
        assert_eq!(code.words(), &[Vec::<Letter>::new()]);
        assert_eq!(code.encode(&[0, 0]).unwrap(), Vec::<Letter>::new());
        assert_eq!(code.decode(&[]).unwrap(), Vec::<usize>::new());
        assert!(matches!(
            code.decode(&[1]),
            Err(CodecError::UnknownPath { position: 0, .. })
        ));
    }

    #[test]
    fn encode_edge_cases() {
        let code = solve(&[2, 2, 5], 10);
        assert_eq!(code.encode(&[]).unwrap(), Vec::<Letter>::new());
        assert_eq!(code.encode(&[4]).unwrap(), code.words()[4]);
        assert_eq!(
            code.encode(&[1, 10]),
            Err(CodecError::SymbolOutOfRange {
                symbol: 10,
                position: 1,
                n: 10
            })
        );
    }

    #[test]
    fn decode_errors_are_distinct() {
        let code = solve(&[1, 2], 6);
        let stream = code.encode(&[0, 3, 5]).unwrap();
        assert_eq!(code.decode(&stream).unwrap(), vec![0, 3, 5]);
        let cut = &stream[..stream.len() - 1];
        assert_eq!(
            code.decode(cut),
            Err(CodecError::DanglingSuffix {
                position: code.words()[0].len() + code.words()[3].len()
            })
        );
        assert!(matches!(
            code.decode(&[3]),
            Err(CodecError::UnknownPath {
                position: 0,
                letter: 3
            })
        ));
    }

    #[test]
    fn incomplete_code_reports_unknown_path() {
        // words 1 and 2 1; the path 2 2 leads nowhere
        let inst = Instance::from_integers(&[1, 2], 2).unwrap();
        let code = Code::from_words(inst, vec![vec![1], vec![2, 1]]).unwrap();
        assert_eq!(
            code.decode(&[2, 2]),
            Err(CodecError::UnknownPath {
                position: 1,
                letter: 2
            })
        );
    }

    #[test]
    fn from_words_rejects_bad_codes() {
        let inst = Instance::from_integers(&[1, 2], 3).unwrap();
        assert!(matches!(
            Code::from_words(inst.clone(), vec![vec![1], vec![1, 2], vec![2]]),
            Err(CodecError::NotPrefixFree(..))
        ));
        assert!(matches!(
            Code::from_words(inst.clone(), vec![vec![1, 2], vec![1], vec![2]]),
            Err(CodecError::NotPrefixFree(..))
        ));
        assert!(matches!(
            Code::from_words(inst.clone(), vec![vec![1], vec![1], vec![2]]),
            Err(CodecError::DuplicateWord(..))
        ));
        assert!(matches!(
            Code::from_words(inst.clone(), vec![vec![1], vec![3], vec![2]]),
            Err(CodecError::BadLetter { .. })
        ));
        assert!(matches!(
            Code::from_words(inst, vec![vec![], vec![1], vec![2]]),
            Err(CodecError::NotPrefixFree(..))
        ));
    }

    #[test]
    fn malformed_tree_is_reported() {
        let inst = Instance::from_integers(&[1, 2], 2).unwrap();
        let tree = CodeTree {
            non_terminals: vec![NonTerminal {
                parent: 0,
                child: 0,
                depth: Cost(0),
            }],
            terminals: vec![NodeRef::new(1, 1, Cost(1)), NodeRef::new(7, 1, Cost(9))],
            cost: Cost(10),
        };
        assert!(matches!(
            assign_codewords(&tree, &inst),
            Err(CodecError::MalformedTree(_))
        ));
    }

    #[test]
    fn glyph_text_round_trip() {
        let glyphs = vec![".".to_string(), "_".to_string()];
        let letters = vec![1, 1, 2, 2, 1];
        let text = render_letters(&letters, Some(&glyphs));
        assert_eq!(text, "..__.");
        assert_eq!(parse_letters(&text, Some(&glyphs), 2).unwrap(), letters);
        assert_eq!(render_letters(&letters, None), "1 1 2 2 1");
        assert_eq!(parse_letters("1 1,2 2 1", None, 2).unwrap(), letters);
        assert!(parse_letters("1 3", None, 2).is_err());
        assert_eq!(
            parse_letters(".x", Some(&glyphs), 2),
            Err(CodecError::UnknownGlyph(1))
        );
        assert!(check_glyphs(&[".".into(), ".".into()], 2).is_err());
        assert!(check_glyphs(&[".".into()], 2).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(
            costs in prop::collection::vec(1u64..6, 2..5),
            n in 2usize..40,
            raw in prop::collection::vec(any::<usize>(), 0..50),
        ) {
            let code = solve(&costs, n);
            let symbols: Vec<usize> = raw.iter().map(|s| s % n).collect();
            let letters = code.encode(&symbols).unwrap();
            let expected: Cost = symbols.iter().map(|&s| code.lengths()[s]).sum();
            let spelled: Cost = letters
                .iter()
                .map(|&l| code.instance().letter_cost(l as usize))
                .sum();
            prop_assert_eq!(spelled, expected);
            prop_assert_eq!(code.decode(&letters).unwrap(), symbols);
        }
    }
}
