//! Labelled signatures and the languages they generate.
//!
//! A labelling pairs an infinite letter sequence with a signature: reading
//! both in lockstep, node k's children receive the next `s[k]` labels as a
//! block. The labelling is valid when every block is strictly increasing in
//! the alphabet's order, which makes the labelled tree a trie: the words
//! read along root-to-node paths enumerate a prefix-closed language in
//! radix order, one word per node.
//!
//! The generation works on the i-tree, where slots and labels line up one
//! to one: the label at slot 0 falls on the root's self-loop and is
//! discarded, so the language never sees it. The minimal labelling gives
//! node k the block `0 1 ... s[k]-1` over a digit alphabet.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::alphabet::{radix_cmp, Alphabet, Letter, Word};
use crate::error::Result;
use crate::morphism::Morphism;
use crate::signature::{LetterSeq, Signature, SignatureParts};
use crate::tree::TreePrefix;

/// A signature together with a labelling of the generated tree's slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledSignature {
    signature: Signature,
    labelling: LetterSeq,
}

/// Result of looking a word up among the first nodes of the labelled tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordLookup {
    /// The word labels the path to this node.
    Found(usize),
    /// Not among the words of the first `horizon` nodes; says nothing about
    /// membership further out.
    NotFound { horizon: usize },
}

impl LabelledSignature {
    /// Pairs a signature with a labelling. No validity requirement is
    /// imposed here; see [`check_labelling`](Self::check_labelling).
    pub fn new(signature: Signature, labelling: LetterSeq) -> Self {
        LabelledSignature {
            signature,
            labelling,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn labelling(&self) -> &LetterSeq {
        &self.labelling
    }

    /// Whether the first `horizon` blocks of the labelling are strictly
    /// increasing (block k has the signature's k-th entry as its length).
    pub fn check_labelling(&self, horizon: usize) -> bool {
        let lengths = self.signature.prefix(horizon);
        let letters = self.labelling.prefix(lengths.iter().sum());
        let mut cursor = 0;
        for &len in &lengths {
            let block = &letters[cursor..cursor + len];
            if !block.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            cursor += len;
        }
        true
    }

    /// Words labelling the paths to nodes `0..count`, in node order. For a
    /// valid labelling this is the language's radix enumeration (the word
    /// of node 0 is the empty word). The labelling is consumed as-is; no
    /// validity check is applied.
    pub fn generate_language(&self, count: usize) -> Result<Vec<Word>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let tree = TreePrefix::generate(&self.signature, count)?;
        let labels = self.labelling.prefix(count);
        let mut words: Vec<Word> = Vec::with_capacity(count);
        words.push(Word::new());
        for (n, &label) in labels.iter().enumerate().skip(1) {
            let father = tree.father(n)?;
            let mut word = words[father].clone();
            word.push(label);
            words.push(word);
        }
        Ok(words)
    }

    /// The word labelling the path from the root to node `n`; with a valid
    /// labelling, the (n+1)-th word of the language in radix order.
    pub fn word_of_node(&self, n: usize) -> Result<Word> {
        Ok(self.generate_language(n + 1)?.pop().unwrap())
    }

    /// Searches the first `horizon` nodes for a node whose path reads
    /// `word`. Absence within the horizon is not absence from the language.
    pub fn node_of_word(&self, word: &[Letter], horizon: usize) -> Result<WordLookup> {
        let words = self.generate_language(horizon)?;
        Ok(match words.iter().position(|w| w == word) {
            Some(n) => WordLookup::Found(n),
            None => WordLookup::NotFound { horizon },
        })
    }

    /// DOT rendering of the labelled tree prefix in plain-tree form: edges
    /// father -> child carry their labels; the root self-loop is omitted.
    pub fn labelled_tree_dot(&self, node_budget: usize) -> Result<String> {
        let tree = TreePrefix::generate(&self.signature, node_budget)?;
        let labels = self.labelling.prefix(tree.node_count());
        let alphabet = self.labelling.alphabet();
        let mut out = String::from("digraph language {\n");
        for n in 0..tree.expanded() {
            for c in tree.child_interval(n) {
                if c == 0 {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "  {n} -> {c} [label=\"{}\"];",
                    alphabet.symbol(labels[c])
                );
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// The labelling whose k-th block is `0 1 ... s[k]-1` over a digit
/// alphabet sized by the largest degree in play.
pub fn minimal_labelling(signature: &Signature) -> Result<LabelledSignature> {
    let labelling = match signature.parts() {
        SignatureParts::Periodic { preperiod, period } => {
            let width = preperiod.iter().chain(period).copied().max().unwrap_or(0);
            let alphabet = Alphabet::digits(width);
            let block = |&d: &usize| (0..d).map(|i| alphabet.nth(i).unwrap());
            LetterSeq::periodic(
                alphabet.clone(),
                preperiod.iter().flat_map(block).collect(),
                period.iter().flat_map(block).collect(),
            )?
        }
        SignatureParts::Substitutive {
            substitution,
            start,
        } => {
            let reachable = substitution.reachable_letters(start);
            let width = reachable
                .iter()
                .map(|&l| substitution.image(l).len())
                .max()
                .unwrap_or(0);
            let alphabet = Alphabet::digits(width);
            // Unreachable letters never contribute labels; their images are
            // clamped into the alphabet to keep the morphism well-formed.
            let images = substitution
                .domain()
                .letters()
                .map(|l| {
                    (0..substitution.image(l).len())
                        .map(|i| alphabet.nth(i.min(width - 1)).unwrap())
                        .collect()
                })
                .collect();
            let emit = Morphism::new(substitution.domain().clone(), alphabet, images)?;
            LetterSeq::morphic(substitution.clone(), start, emit)?
        }
    };
    Ok(LabelledSignature::new(signature.clone(), labelling))
}

/// Whether the words are strictly increasing in radix order.
pub fn is_radix_increasing(words: &[Word]) -> bool {
    words
        .windows(2)
        .all(|w| radix_cmp(&w[0], &w[1]) == std::cmp::Ordering::Less)
}

/// Whether every nonempty word's longest proper prefix appears earlier in
/// the list; with increasing lists this makes the word set prefix-closed.
pub fn is_prefix_closed(words: &[Word]) -> bool {
    let mut seen: HashSet<&[Letter]> = HashSet::new();
    for word in words {
        if !word.is_empty() && !seen.contains(&word[..word.len() - 1]) {
            return false;
        }
        seen.insert(word);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::fibonacci;

    fn rendered(ls: &LabelledSignature, count: usize) -> Vec<String> {
        let alphabet = ls.labelling().alphabet().clone();
        ls.generate_language(count)
            .unwrap()
            .iter()
            .map(|w| alphabet.render_word(w))
            .collect()
    }

    fn sig321() -> Signature {
        Signature::periodic(vec![], vec![3, 2, 1]).unwrap()
    }

    fn labelled321() -> LabelledSignature {
        let alphabet = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let period = alphabet.parse_word("abdbcabcdadd").unwrap();
        LabelledSignature::new(
            sig321(),
            LetterSeq::periodic(alphabet, vec![], period).unwrap(),
        )
    }

    /// Straight replay of the block construction with an explicit slot
    /// cursor, kept deliberately different from the production path.
    fn queue_oracle(entries: &[usize], labels: &Word, count: usize) -> Vec<Word> {
        let mut words: Vec<Word> = vec![Word::new()];
        let mut next_slot = 0usize;
        let mut node = 0usize;
        while words.len() < count {
            for _ in 0..entries[node] {
                let slot = next_slot;
                next_slot += 1;
                if slot == 0 {
                    continue; // the root's own slot: no edge, no word
                }
                let mut w = words[node].clone();
                w.push(labels[slot]);
                words.push(w);
            }
            node += 1;
        }
        words.truncate(count);
        words
    }

    #[test]
    fn fibonacci_words_are_the_lazy_numeration() {
        let ls = fibonacci().labelled_signature();
        assert_eq!(
            rendered(&ls, 8),
            ["ε", "1", "10", "100", "101", "1000", "1001", "1010"]
        );
    }

    #[test]
    fn unary_language_with_constant_labelling() {
        let alphabet = Alphabet::new(["0"]).unwrap();
        let zero = alphabet.letter("0").unwrap();
        let ls = LabelledSignature::new(
            Signature::periodic(vec![2], vec![1]).unwrap(),
            LetterSeq::periodic(alphabet, vec![], vec![zero]).unwrap(),
        );
        assert_eq!(rendered(&ls, 4), ["ε", "0", "00", "000"]);
        // The root block 00 is not strictly increasing, yet generation is
        // still defined; only the check reports the defect.
        assert!(!ls.check_labelling(1));
    }

    #[test]
    fn block_check_follows_the_signature_lengths() {
        assert!(labelled321().check_labelling(6));
        let digits = Alphabet::digits(3);
        let mu = LabelledSignature::new(
            sig321(),
            LetterSeq::periodic(digits.clone(), vec![], digits.parse_word("012010").unwrap())
                .unwrap(),
        );
        assert!(mu.check_labelling(100));
        let aab = Alphabet::new(["a", "b"]).unwrap();
        let bad = LabelledSignature::new(
            sig321(),
            LetterSeq::periodic(aab.clone(), vec![], aab.parse_word("aab").unwrap()).unwrap(),
        );
        assert!(!bad.check_labelling(1));
    }

    #[test]
    fn language_of_the_321_example() {
        let ls = labelled321();
        assert_eq!(rendered(&ls, 7), ["ε", "b", "d", "bb", "bc", "da", "bbb"]);
        let entries = ls.signature().prefix(40);
        let labels = ls.labelling().prefix(40);
        assert_eq!(
            ls.generate_language(12).unwrap(),
            queue_oracle(&entries, &labels, 12)
        );
    }

    #[test]
    fn words_agree_with_nodes() {
        let ls = fibonacci().labelled_signature();
        let alphabet = ls.labelling().alphabet().clone();
        let w = ls.word_of_node(4).unwrap();
        assert_eq!(alphabet.render_word(&w), "101");
        assert_eq!(ls.word_of_node(0).unwrap(), Word::new());
        assert_eq!(
            ls.node_of_word(&alphabet.parse_word("101").unwrap(), 100)
                .unwrap(),
            WordLookup::Found(4)
        );
        assert_eq!(
            ls.node_of_word(&alphabet.parse_word("11").unwrap(), 100)
                .unwrap(),
            WordLookup::NotFound { horizon: 100 }
        );
    }

    #[test]
    fn minimal_labelling_of_periodic_signatures() {
        let mu = minimal_labelling(&sig321()).unwrap();
        let alphabet = mu.labelling().alphabet().clone();
        assert_eq!(alphabet.render_word(&mu.labelling().prefix(9)), "012010012");
        assert!(mu.check_labelling(200));

        let unary = minimal_labelling(&Signature::periodic(vec![2], vec![1]).unwrap()).unwrap();
        let ua = unary.labelling().alphabet().clone();
        assert_eq!(ua.render_word(&unary.labelling().prefix(5)), "01000");
    }

    #[test]
    fn minimal_labelling_of_the_fibonacci_signature_is_its_own_labelling() {
        let fib = fibonacci();
        let mu = minimal_labelling(&fib.signature()).unwrap();
        assert_eq!(
            mu.labelling().prefix(13),
            fib.letter_sequence().prefix(13)
        );
        assert!(mu.check_labelling(500));
    }

    #[test]
    fn valid_languages_are_radix_increasing_and_prefix_closed() {
        let words = fibonacci()
            .labelled_signature()
            .generate_language(200)
            .unwrap();
        assert!(is_radix_increasing(&words));
        assert!(is_prefix_closed(&words));
        assert_eq!(
            words.len(),
            words.iter().collect::<HashSet<_>>().len(),
            "words must be pairwise distinct"
        );
    }

    #[test]
    fn labelled_dot_carries_edge_labels() {
        let dot = labelled321().labelled_tree_dot(6).unwrap();
        assert!(dot.contains("0 -> 1 [label=\"b\"];"));
        assert!(dot.contains("0 -> 2 [label=\"d\"];"));
        assert!(dot.contains("1 -> 3 [label=\"b\"];"));
        assert!(!dot.contains("0 -> 0"));
    }
}
