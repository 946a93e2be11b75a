//! Deterministic all-accepting automata for prefix-closed languages, and
//! the two-way correspondence with substitutive labelled signatures.
//!
//! Every state accepts, so the language of a trim automaton is
//! prefix-closed; breadth-first exploration in alphabet order enumerates it
//! in radix order. Reading the transition table of such an automaton
//! row by row yields a substitution (targets) and label images (letters),
//! once a reserved sentinel letter below the alphabet makes the initial
//! state's row start with itself; conversely a substitutive labelled
//! signature's table can be read back as an automaton, removing the
//! sentinel loop at the start state only.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Letter, Word, SENTINEL};
use crate::error::{Error, Result};
use crate::morphism::{Morphism, SubstitutiveLabelledSignature};

/// A deterministic automaton with every state accepting. The language is
/// prefix-closed by construction; states are named, ordered, and indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    transitions: Vec<BTreeMap<Letter, usize>>,
}

impl Dfa {
    /// Builds an automaton. State names must be nonempty, whitespace- and
    /// comma-free, and distinct; the sentinel `#`, if present in the
    /// alphabet at all, must be its first letter.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        transitions: Vec<BTreeMap<Letter, usize>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Config("an automaton needs at least one state".into()));
        }
        for (i, name) in states.iter().enumerate() {
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == ',') {
                return Err(Error::Config(format!("invalid state name '{name}'")));
            }
            if states[..i].contains(name) {
                return Err(Error::Config(format!("duplicate state name '{name}'")));
            }
        }
        if initial >= states.len() {
            return Err(Error::Config("initial state out of range".into()));
        }
        if transitions.len() != states.len() {
            return Err(Error::Config(
                "one transition row is required per state".into(),
            ));
        }
        for row in &transitions {
            for (&letter, &target) in row {
                if letter.index() >= alphabet.len() {
                    return Err(Error::Config("transition letter out of range".into()));
                }
                if target >= states.len() {
                    return Err(Error::Config("transition target out of range".into()));
                }
            }
        }
        if let Some(l) = alphabet.letter(SENTINEL) {
            if l.index() != 0 {
                return Err(Error::Alphabet(format!(
                    "'{SENTINEL}' must be the first letter of the alphabet"
                )));
            }
        }
        Ok(Dfa {
            alphabet,
            states,
            initial,
            transitions,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn transition(&self, state: usize, letter: Letter) -> Option<usize> {
        self.transitions[state].get(&letter).copied()
    }

    /// The outgoing transitions of a state, in letter order.
    pub fn transitions_from(&self, state: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.transitions[state].iter().map(|(&l, &t)| (l, t))
    }

    pub fn out_degree(&self, state: usize) -> usize {
        self.transitions[state].len()
    }

    /// Parses the text format: `alphabet:` and `initial:` headers, then one
    /// `source letter target` line per transition. States are declared by
    /// use, the initial state first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut initial_name: Option<String> = None;
        let mut names: Vec<String> = Vec::new();
        let mut triples: Vec<(usize, Letter, usize)> = Vec::new();
        let index_of = |names: &mut Vec<String>, name: &str| -> usize {
            match names.iter().position(|n| n == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            }
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                alphabet = Some(Alphabet::parse_csv(rest)?);
            } else if let Some(rest) = line.strip_prefix("initial:") {
                let name = rest.trim().to_string();
                index_of(&mut names, &name);
                initial_name = Some(name);
            } else {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [source, letter, target] = parts.as_slice() else {
                    return Err(at(format!(
                        "expected 'source letter target', got '{line}'"
                    )));
                };
                let alphabet = alphabet
                    .as_ref()
                    .ok_or_else(|| at("transition before the alphabet: header".into()))?;
                let l = alphabet
                    .letter(letter)
                    .ok_or_else(|| at(format!("unknown letter '{letter}'")))?;
                let s = index_of(&mut names, source);
                let t = index_of(&mut names, target);
                triples.push((s, l, t));
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Parse("missing alphabet: line".into()))?;
        let initial_name =
            initial_name.ok_or_else(|| Error::Parse("missing initial: line".into()))?;
        let initial = names
            .iter()
            .position(|n| *n == initial_name)
            .expect("recorded when the header was read");
        let mut transitions = vec![BTreeMap::new(); names.len()];
        for (s, l, t) in triples {
            if transitions[s].insert(l, t).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate transition from '{}' on '{}'",
                    names[s],
                    alphabet.symbol(l)
                )));
            }
        }
        Dfa::new(alphabet, names, initial, transitions)
    }

    /// The inverse of [`parse`](Self::parse): headers, then transitions in
    /// state and letter order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("alphabet: {}\n", self.alphabet));
        out.push_str(&format!("initial: {}\n", self.states[self.initial]));
        for (s, row) in self.transitions.iter().enumerate() {
            for (&l, &t) in row {
                out.push_str(&format!(
                    "{} {} {}\n",
                    self.states[s],
                    self.alphabet.symbol(l),
                    self.states[t]
                ));
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  __start [shape=point];");
        let _ = writeln!(out, "  __start -> \"{}\";", self.states[self.initial]);
        for (s, row) in self.transitions.iter().enumerate() {
            for (&l, &t) in row {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    self.states[s],
                    self.states[t],
                    self.alphabet.symbol(l)
                );
            }
        }
        out.push_str("}\n");
        out
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for (_, t) in self.transitions_from(s) {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Restricts to the states reachable from the initial state, keeping
    /// their relative order. The language is unchanged.
    pub fn trim(&self) -> Dfa {
        let seen = self.reachable();
        let mut remap = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (i, name) in self.states.iter().enumerate() {
            if seen[i] {
                remap[i] = states.len();
                states.push(name.clone());
            }
        }
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .filter(|(i, _)| seen[*i])
            .map(|(_, row)| row.iter().map(|(&l, &t)| (l, remap[t])).collect())
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states,
            initial: remap[self.initial],
            transitions,
        }
    }

    pub fn is_trim(&self) -> bool {
        self.reachable().into_iter().all(|r| r)
    }

    /// Whether the language is infinite: some cycle is reachable from the
    /// initial state (every state accepts, so any cycle pumps).
    pub fn is_language_infinite(&self) -> bool {
        // Iterative three-colour depth-first search for a reachable cycle.
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let mut colour = vec![WHITE; self.states.len()];
        let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
        let successors = |s: usize| -> Vec<usize> {
            self.transitions_from(s).map(|(_, t)| t).collect()
        };
        colour[self.initial] = GREY;
        stack.push((self.initial, successors(self.initial)));
        while let Some((state, rest)) = stack.last_mut() {
            match rest.pop() {
                Some(t) => match colour[t] {
                    GREY => return true,
                    WHITE => {
                        colour[t] = GREY;
                        let succ = successors(t);
                        stack.push((t, succ));
                    }
                    _ => {}
                },
                None => {
                    colour[*state] = BLACK;
                    stack.pop();
                }
            }
        }
        false
    }

    /// The first `n_words` words of the language in radix order (length
    /// first, then letterwise). Exhausts a finite language early.
    pub fn enumerate_radix(&self, n_words: usize) -> Vec<Word> {
        let mut words = Vec::with_capacity(n_words);
        let mut queue: VecDeque<(usize, Word)> = VecDeque::new();
        queue.push_back((self.initial, Word::new()));
        while words.len() < n_words {
            let Some((state, word)) = queue.pop_front() else {
                break;
            };
            for (letter, target) in self.transitions_from(state) {
                let mut next = word.clone();
                next.push(letter);
                queue.push_back((target, next));
            }
            words.push(word);
        }
        words
    }

    /// The enumeration rendered with the automaton's alphabet.
    pub fn enumerate_rendered(&self, n_words: usize) -> Vec<String> {
        self.enumerate_radix(n_words)
            .iter()
            .map(|w| self.alphabet.render_word(w))
            .collect()
    }

    /// Relabels every state's transitions with their rank among its
    /// outgoing letters, over a digit alphabet sized by the largest
    /// out-degree. States, targets, out-degrees and transition order are
    /// preserved; the result is a fixed point of the operation.
    pub fn minimal_label(&self) -> Dfa {
        let width = (0..self.states.len())
            .map(|s| self.out_degree(s))
            .max()
            .unwrap_or(0);
        let alphabet = Alphabet::digits(width);
        let transitions = self
            .transitions
            .iter()
            .map(|row| {
                row.values()
                    .enumerate()
                    .map(|(rank, &t)| (alphabet.nth(rank).unwrap(), t))
                    .collect()
            })
            .collect();
        Dfa {
            alphabet,
            states: self.states.clone(),
            initial: self.initial,
            transitions,
        }
    }

    /// Drops alphabet letters used by no transition, keeping the order of
    /// the rest. Words and their order are unchanged.
    pub fn prune_unused_letters(&self) -> Dfa {
        let mut used = vec![false; self.alphabet.len()];
        for row in &self.transitions {
            for &l in row.keys() {
                used[l.index()] = true;
            }
        }
        let kept: Vec<&str> = self
            .alphabet
            .letters()
            .filter(|l| used[l.index()])
            .map(|l| self.alphabet.symbol(l))
            .collect();
        let alphabet = Alphabet::new(kept).expect("kept symbols stay distinct");
        let remap: Vec<Option<Letter>> = {
            let mut next = 0usize;
            used.iter()
                .map(|&u| {
                    if u {
                        let l = alphabet.nth(next);
                        next += 1;
                        l
                    } else {
                        None
                    }
                })
                .collect()
        };
        let transitions = self
            .transitions
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(&l, &t)| (remap[l.index()].unwrap(), t))
                    .collect()
            })
            .collect();
        Dfa {
            alphabet,
            states: self.states.clone(),
            initial: self.initial,
            transitions,
        }
    }
}

/// An automaton extended with the sentinel: `#` sits strictly below the
/// alphabet and loops on the initial state, and only there. When the
/// original initial state is re-entered by some transition, a fresh start
/// state (copying its outgoing transitions) carries the loop instead, so
/// the sentinel stays unreachable after the first letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentinelDfa {
    dfa: Dfa,
}

impl SentinelDfa {
    pub fn extend(d: &Dfa) -> Result<Self> {
        if d.alphabet.contains(SENTINEL) {
            return Err(Error::Alphabet(format!(
                "'{SENTINEL}' is reserved and cannot appear in the input alphabet"
            )));
        }
        let alphabet = Alphabet::new(
            std::iter::once(SENTINEL).chain(d.alphabet.symbols()),
        )?;
        let sentinel = alphabet.nth(0).unwrap();
        let shift =
            |l: Letter| alphabet.nth(l.index() + 1).expect("shifted letter exists");
        let re_entered = d
            .transitions
            .iter()
            .any(|row| row.values().any(|&t| t == d.initial));

        let mut states = d.states.clone();
        let mut transitions: Vec<BTreeMap<Letter, usize>> = d
            .transitions
            .iter()
            .map(|row| row.iter().map(|(&l, &t)| (shift(l), t)).collect())
            .collect();
        let initial = if re_entered {
            let mut name = format!("{}'", d.states[d.initial]);
            while states.contains(&name) {
                name.push('\'');
            }
            let fresh = states.len();
            let mut row: BTreeMap<Letter, usize> = transitions[d.initial].clone();
            row.insert(sentinel, fresh);
            states.push(name);
            transitions.push(row);
            fresh
        } else {
            transitions[d.initial].insert(sentinel, d.initial);
            d.initial
        };
        Ok(SentinelDfa {
            dfa: Dfa::new(alphabet, states, initial, transitions)?,
        })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }
}

/// Reads the transition table of a trim automaton with an infinite language
/// as a substitutive labelled signature: state p's substitution image lists
/// the targets of its transitions in letter order, and its label image
/// lists the letters themselves. The sentinel extension makes the result
/// prolongable on the initial state; the sentinel letter ends up labelling
/// exactly the root self-loop slot, so generated words never contain it.
pub fn dfa_to_signature(d: &Dfa) -> Result<SubstitutiveLabelledSignature> {
    let d = d.trim();
    if !d.is_language_infinite() {
        return Err(Error::FiniteLanguage);
    }
    let sentinel = SentinelDfa::extend(&d)?;
    let d = sentinel.dfa();
    let domain = Alphabet::new((0..d.state_count()).map(|s| d.state_name(s)))?;
    let as_domain = |state: usize| domain.nth(state).expect("one letter per state");
    let start = as_domain(d.initial());
    let mut substitution_images = Vec::with_capacity(d.state_count());
    let mut label_images = Vec::with_capacity(d.state_count());
    for s in 0..d.state_count() {
        substitution_images.push(d.transitions_from(s).map(|(_, t)| as_domain(t)).collect());
        label_images.push(d.transitions_from(s).map(|(l, _)| l).collect());
    }
    let substitution = Morphism::new(domain.clone(), domain.clone(), substitution_images)?;
    let labels = Morphism::new(domain.clone(), d.alphabet().clone(), label_images)?;
    SubstitutiveLabelledSignature::new(substitution, start, labels)
}

/// Reads a substitutive labelled signature back as an automaton: states are
/// the substitution's letters, and letter b carries a transition on each
/// label of g(b) to the matching letter of its substitution image. The
/// transition labelled by the smallest label of the start letter is its
/// self-loop; a fresh start state omitting that loop replaces it, so the
/// loop label (the sentinel, for extracted signatures) can only occur as a
/// first letter, and unreachable states are trimmed away.
pub fn signature_to_dfa(sls: &SubstitutiveLabelledSignature) -> Result<Dfa> {
    let substitution = sls.substitution();
    let labels = sls.labels();
    let domain = substitution.domain();
    for b in domain.letters() {
        if !labels.image(b).windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NonIncreasingImage {
                letter: domain.symbol(b).to_string(),
            });
        }
    }
    let mut states: Vec<String> = Vec::with_capacity(domain.len() + 1);
    let mut name = format!("{}'", domain.symbol(sls.start()));
    while domain.contains(&name) {
        name.push('\'');
    }
    states.push(name);
    states.extend(domain.symbols().map(str::to_string));
    let state_of = |b: Letter| b.index() + 1;

    let mut transitions: Vec<BTreeMap<Letter, usize>> = vec![BTreeMap::new(); states.len()];
    for b in domain.letters() {
        for (&label, &target) in labels.image(b).iter().zip(substitution.image(b)) {
            transitions[state_of(b)].insert(label, state_of(target));
        }
    }
    // The fresh start carries the start letter's transitions minus the
    // self-loop on its smallest label (slot 0 points back to the start
    // letter by prolongability).
    for (&label, &target) in labels
        .image(sls.start())
        .iter()
        .zip(substitution.image(sls.start()))
        .skip(1)
    {
        transitions[0].insert(label, state_of(target));
    }
    Ok(Dfa::new(labels.target().clone(), states, 0, transitions)?.trim())
}

/// Whether converting an automaton to a substitutive labelled signature and
/// back preserves its first `n_words` words. Words are compared as symbol
/// lists since the two automata may carry different alphabets.
pub fn roundtrip_preserves_words(d: &Dfa, n_words: usize) -> Result<bool> {
    let original = d.trim();
    let rebuilt = signature_to_dfa(&dfa_to_signature(&original)?)?;
    let left: Vec<Vec<String>> = original
        .enumerate_radix(n_words)
        .iter()
        .map(|w| original.alphabet().word_symbols(w))
        .collect();
    let right: Vec<Vec<String>> = rebuilt
        .enumerate_radix(n_words)
        .iter()
        .map(|w| rebuilt.alphabet().word_symbols(w))
        .collect();
    Ok(left == right)
}
