//! Morphisms between free monoids, iteration to infinite fixed points, and
//! the carving construction that turns an ultimately periodic degree
//! sequence into a substitution generating it.
//!
//! A morphism maps every letter of its domain alphabet to a word over its
//! target alphabet and extends letterwise to words. An endomorphism `m` is
//! *prolongable* on a letter `a` when `m(a)` starts with `a` and the iterated
//! images of `a` grow without bound; the words `m^n(a)` then converge to an
//! infinite fixed point `m^ω(a)`.

use crate::alphabet::{Alphabet, Letter, Word, SENTINEL};
use crate::error::{Error, Result};
use crate::labelling::LabelledSignature;
use crate::signature::{growth_ratio, LetterSeq, Signature};

/// A total mapping letter -> word, extended letterwise to words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    domain: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    /// Builds a morphism from `domain` to `target`; `images[i]` is the image
    /// of the i-th domain letter and must use target letters only.
    pub fn new(domain: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::Config(format!(
                "expected {} images, got {}",
                domain.len(),
                images.len()
            )));
        }
        for (i, image) in images.iter().enumerate() {
            if let Some(l) = image.iter().find(|l| l.index() >= target.len()) {
                return Err(Error::Alphabet(format!(
                    "image of '{}' uses letter index {} outside the target alphabet",
                    domain.symbol(domain.nth(i).unwrap()),
                    l.index()
                )));
            }
        }
        Ok(Morphism {
            domain,
            target,
            images,
        })
    }

    /// An endomorphism: domain and target coincide.
    pub fn endomorphism(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        Morphism::new(alphabet.clone(), alphabet, images)
    }

    /// The identity endomorphism on `alphabet`.
    pub fn identity(alphabet: Alphabet) -> Self {
        let images = alphabet.letters().map(|l| vec![l]).collect();
        Morphism {
            domain: alphabet.clone(),
            target: alphabet,
            images,
        }
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.target
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter.index()]
    }

    /// Applies the morphism to a word.
    pub fn apply(&self, word: &[Letter]) -> Word {
        let mut out = Word::new();
        for &l in word {
            out.extend_from_slice(self.image(l));
        }
        out
    }

    /// Image lengths per domain letter: the coding that sends a fixed point
    /// to the degree sequence it generates.
    pub fn image_lengths(&self) -> Vec<usize> {
        self.images.iter().map(Word::len).collect()
    }

    fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter.index() >= self.domain.len() {
            return Err(Error::Argument(format!(
                "letter index {} outside the alphabet",
                letter.index()
            )));
        }
        Ok(())
    }

    /// Whether the iterated images of `start` converge to an infinite word.
    pub fn is_prolongable(&self, start: Letter) -> Result<bool> {
        if !self.is_endomorphism() {
            return Err(Error::Argument(
                "prolongability is defined for endomorphisms only".into(),
            ));
        }
        self.check_letter(start)?;
        let image = self.image(start);
        Ok(image.first() == Some(&start) && self.growing_letters()[start.index()])
    }

    /// The infinite fixed point `m^ω(start)` as a restartable sequence.
    pub fn fixed_point(&self, start: Letter) -> Result<LetterSeq> {
        if !self.is_prolongable(start)? {
            return Err(Error::NotProlongable {
                letter: self.domain.symbol(start).to_string(),
            });
        }
        LetterSeq::morphic(
            self.clone(),
            start,
            Morphism::identity(self.domain.clone()),
        )
    }

    /// Letters whose image eventually erases to the empty word.
    fn mortal_letters(&self) -> Vec<bool> {
        let n = self.domain.len();
        let mut mortal = vec![false; n];
        loop {
            let mut changed = false;
            for i in 0..n {
                if !mortal[i] && self.images[i].iter().all(|l| mortal[l.index()]) {
                    mortal[i] = true;
                    changed = true;
                }
            }
            if !changed {
                return mortal;
            }
        }
    }

    /// Letters whose iterated images grow without bound. A letter grows
    /// exactly when, inside the graph of non-erasing occurrences, it reaches
    /// a letter that lies on a cycle and whose image carries at least two
    /// surviving occurrences.
    pub(crate) fn growing_letters(&self) -> Vec<bool> {
        let n = self.domain.len();
        let mortal = self.mortal_letters();
        let vital = |l: Letter| !mortal[l.index()];

        // reach[i][j]: letter j occurs in some m^k(i), k >= 1, both surviving.
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            if mortal[i] {
                continue;
            }
            for l in &self.images[i] {
                if vital(*l) {
                    reach[i][l.index()] = true;
                }
            }
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut() {
                if row[k] {
                    for (cell, &step) in row.iter_mut().zip(&via) {
                        if step {
                            *cell = true;
                        }
                    }
                }
            }
        }

        let expanding: Vec<bool> = (0..n)
            .map(|i| {
                !mortal[i] && self.images[i].iter().filter(|l| vital(**l)).count() >= 2
            })
            .collect();

        (0..n)
            .map(|i| {
                !mortal[i]
                    && (0..n).any(|e| expanding[e] && reach[e][e] && (i == e || reach[i][e]))
            })
            .collect()
    }

    /// Letters occurring in some iterated image of `start` (including
    /// `start` itself): exactly the letters of the fixed point when the
    /// morphism is prolongable on `start`.
    pub(crate) fn reachable_letters(&self, start: Letter) -> Vec<Letter> {
        let mut seen = vec![false; self.domain.len()];
        let mut stack = vec![start];
        seen[start.index()] = true;
        while let Some(l) = stack.pop() {
            for &m in self.image(l) {
                if !seen[m.index()] {
                    seen[m.index()] = true;
                    stack.push(m);
                }
            }
        }
        self.domain
            .letters()
            .filter(|l| seen[l.index()])
            .collect()
    }
}

/// Streams the letters of `m^ω(start)`. The growing buffer always equals the
/// image of the part already expanded, so it stays a prefix of the fixed
/// point; prolongability guarantees it outruns every demand.
pub(crate) struct FixedPointExpansion<'a> {
    morphism: &'a Morphism,
    out: Word,
    expand_next: usize,
    pos: usize,
}

impl<'a> FixedPointExpansion<'a> {
    /// Callers must have checked prolongability on `start`.
    pub(crate) fn new(morphism: &'a Morphism, start: Letter) -> Self {
        FixedPointExpansion {
            morphism,
            out: vec![start],
            expand_next: 0,
            pos: 0,
        }
    }
}

impl Iterator for FixedPointExpansion<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        while self.pos >= self.out.len() {
            if self.expand_next >= self.out.len() {
                // Fully expanded finite fixed point; unreachable when the
                // morphism is prolongable on the start letter.
                return None;
            }
            let letter = self.out[self.expand_next];
            let image = self.morphism.image(letter);
            let skip = usize::from(self.expand_next == 0);
            self.out.extend_from_slice(&image[skip.min(image.len())..]);
            self.expand_next += 1;
        }
        let l = self.out[self.pos];
        self.pos += 1;
        Some(l)
    }
}

/// A substitution paired with label images of matching lengths: applying the
/// length coding to the fixed point yields the degree sequence, applying the
/// label images yields the letter sequence labelling it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutiveLabelledSignature {
    substitution: Morphism,
    start: Letter,
    labels: Morphism,
}

impl SubstitutiveLabelledSignature {
    pub fn new(substitution: Morphism, start: Letter, labels: Morphism) -> Result<Self> {
        if !substitution.is_endomorphism() {
            return Err(Error::Config(
                "the substitution must be an endomorphism".into(),
            ));
        }
        if labels.domain() != substitution.domain() {
            return Err(Error::Config(
                "label images must be defined on the substitution's alphabet".into(),
            ));
        }
        for letter in substitution.domain().letters() {
            if labels.image(letter).len() != substitution.image(letter).len() {
                return Err(Error::LengthMismatch {
                    letter: substitution.domain().symbol(letter).to_string(),
                });
            }
        }
        if !substitution.is_prolongable(start)? {
            return Err(Error::NotProlongable {
                letter: substitution.domain().symbol(start).to_string(),
            });
        }
        Ok(SubstitutiveLabelledSignature {
            substitution,
            start,
            labels,
        })
    }

    pub fn substitution(&self) -> &Morphism {
        &self.substitution
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn labels(&self) -> &Morphism {
        &self.labels
    }

    /// The degree sequence: image lengths read along the fixed point.
    pub fn signature(&self) -> Signature {
        Signature::substitutive(self.substitution.clone(), self.start)
            .expect("validated at construction")
    }

    /// The labelling: label images read along the fixed point.
    pub fn letter_sequence(&self) -> LetterSeq {
        LetterSeq::morphic(self.substitution.clone(), self.start, self.labels.clone())
            .expect("validated at construction")
    }

    pub fn labelled_signature(&self) -> LabelledSignature {
        LabelledSignature::new(self.signature(), self.letter_sequence())
    }
}

/// Builds a substitution whose fixed point, read through the length coding,
/// is exactly `preperiod · period^ω`.
///
/// The period letters stand for positions of the periodic part and their
/// images carve `(0 1 ... k-1)^ω` into blocks of the prescribed lengths; a
/// nonempty preperiod adds one letter per preperiod position, carving the
/// combined stream instead. Requires the sequence to be valid forever and
/// the mean of `period` to be an integer.
pub fn periodic_to_substitution(
    preperiod: &[usize],
    period: &[usize],
) -> Result<(Morphism, Letter)> {
    if period.is_empty() {
        return Err(Error::Argument("period must be nonempty".into()));
    }
    if let Some(position) = preperiod.iter().position(|&d| d == 0) {
        return Err(Error::ZeroInPreperiod { position });
    }
    let report = Signature::periodic(preperiod.to_vec(), period.to_vec())?
        .check_valid(preperiod.len() + period.len());
    if !report.proven_forever {
        return Err(Error::InvalidSignature {
            index: report.first_violation.unwrap_or(preperiod.len() + period.len()),
        });
    }
    let ratio = growth_ratio(period)?;
    if !ratio.is_integer() {
        return Err(Error::NonIntegerGrowthRatio(ratio));
    }

    let k = period.len();
    let n = preperiod.len();
    if n == 0 {
        // Letters are the positions 0..k-1 of the period; images tile
        // (0 1 ... k-1)^ω left to right.
        let alphabet = Alphabet::digits(k);
        let letter = |i: usize| alphabet.nth(i % k).unwrap();
        let mut images = Vec::with_capacity(k);
        let mut cursor = 0usize; // position after the last letter carved
        for &len in period {
            images.push((cursor..cursor + len).map(letter).collect());
            cursor += len;
        }
        let start = alphabet.nth(0).unwrap();
        return Ok((Morphism::endomorphism(alphabet, images)?, start));
    }

    // Preperiod letters b0..b_{n-1} followed by period letters a0..a_{k-1};
    // the b-images carve (b0 ... b_{n-1})(a0 ... a_{k-1})^ω into blocks of
    // the preperiod lengths, then the a-images cycle through the a-letters.
    let symbols: Vec<String> = (0..n)
        .map(|i| format!("b{i}"))
        .chain((0..k).map(|i| format!("a{i}")))
        .collect();
    let alphabet = Alphabet::new(symbols)?;
    let stream_letter = |p: usize| {
        if p < n {
            alphabet.nth(p).unwrap()
        } else {
            alphabet.nth(n + (p - n) % k).unwrap()
        }
    };
    let mut images = Vec::with_capacity(n + k);
    let mut pos = 0usize;
    for &len in preperiod {
        images.push((pos..pos + len).map(stream_letter).collect());
        pos += len;
    }
    // Validity puts the last carved letter strictly past the b-zone.
    debug_assert!(pos > n);
    let mut cursor = (pos - 1 - n) % k;
    for &len in period {
        images.push(
            (1..=len)
                .map(|t| alphabet.nth(n + (cursor + t) % k).unwrap())
                .collect(),
        );
        cursor = (cursor + len) % k;
    }
    let start = alphabet.nth(0).unwrap();
    Ok((Morphism::endomorphism(alphabet, images)?, start))
}

/// Text form of a substitution with optional label images:
///
/// ```text
/// alphabet: 0,1
/// start: 0
/// 0 -> 0 1
/// 1 -> 0
/// label-alphabet: 0,1
/// label-images:
/// 0 -> 0 1
/// 1 -> 0
/// ```
///
/// `label-alphabet` defaults to the main alphabet. The reserved `#` may
/// appear only as the first letter of the label alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFile {
    pub substitution: Morphism,
    pub start: Letter,
    pub labels: Option<Morphism>,
}

impl MorphismFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut start_symbol: Option<String> = None;
        let mut label_alphabet: Option<Alphabet> = None;
        let mut rules: Vec<(String, Vec<String>)> = Vec::new();
        let mut label_rules: Vec<(String, Vec<String>)> = Vec::new();
        let mut in_labels = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                alphabet = Some(Alphabet::parse_csv(rest)?);
            } else if let Some(rest) = line.strip_prefix("label-alphabet:") {
                label_alphabet = Some(Alphabet::parse_csv(rest)?);
            } else if let Some(rest) = line.strip_prefix("start:") {
                start_symbol = Some(rest.trim().to_string());
            } else if line == "label-images:" {
                in_labels = true;
            } else if let Some((lhs, rhs)) = line.split_once("->") {
                let lhs = lhs.trim().to_string();
                if lhs.is_empty() {
                    return Err(at("rule without a left-hand letter".into()));
                }
                let rhs: Vec<String> = rhs.split_whitespace().map(str::to_string).collect();
                if in_labels {
                    label_rules.push((lhs, rhs));
                } else {
                    rules.push((lhs, rhs));
                }
            } else {
                return Err(at(format!("unrecognised line '{line}'")));
            }
        }

        let alphabet = alphabet.ok_or_else(|| Error::Parse("missing alphabet: line".into()))?;
        if alphabet.contains(SENTINEL) {
            return Err(Error::Alphabet(format!(
                "'{SENTINEL}' is reserved and cannot appear in a morphism alphabet"
            )));
        }
        let start_symbol =
            start_symbol.ok_or_else(|| Error::Parse("missing start: line".into()))?;
        let start = alphabet.letter(&start_symbol).ok_or_else(|| {
            Error::Parse(format!("start letter '{start_symbol}' not in the alphabet"))
        })?;

        let substitution = Morphism::endomorphism(
            alphabet.clone(),
            collect_images(&alphabet, &alphabet, &rules)?,
        )?;
        let labels = if label_rules.is_empty() {
            if label_alphabet.is_some() {
                return Err(Error::Parse(
                    "label-alphabet given but no label-images section".into(),
                ));
            }
            None
        } else {
            let target = label_alphabet.unwrap_or_else(|| alphabet.clone());
            if let Some(l) = target.letter(SENTINEL) {
                if l.index() != 0 {
                    return Err(Error::Alphabet(format!(
                        "'{SENTINEL}' must be the first letter of a label alphabet"
                    )));
                }
            }
            Some(Morphism::new(
                alphabet.clone(),
                target.clone(),
                collect_images(&alphabet, &target, &label_rules)?,
            )?)
        };

        Ok(MorphismFile {
            substitution,
            start,
            labels,
        })
    }

    pub fn to_text(&self) -> String {
        let alphabet = self.substitution.domain();
        let mut out = String::new();
        out.push_str(&format!("alphabet: {alphabet}\n"));
        out.push_str(&format!("start: {}\n", alphabet.symbol(self.start)));
        for letter in alphabet.letters() {
            out.push_str(&rule_line(alphabet, alphabet, letter, self.substitution.image(letter)));
        }
        if let Some(labels) = &self.labels {
            if labels.target() != alphabet {
                out.push_str(&format!("label-alphabet: {}\n", labels.target()));
            }
            out.push_str("label-images:\n");
            for letter in alphabet.letters() {
                out.push_str(&rule_line(alphabet, labels.target(), letter, labels.image(letter)));
            }
        }
        out
    }
}

fn rule_line(domain: &Alphabet, target: &Alphabet, letter: Letter, image: &[Letter]) -> String {
    let rhs: Vec<&str> = image.iter().map(|&l| target.symbol(l)).collect();
    if rhs.is_empty() {
        format!("{} ->\n", domain.symbol(letter))
    } else {
        format!("{} -> {}\n", domain.symbol(letter), rhs.join(" "))
    }
}

fn collect_images(
    domain: &Alphabet,
    target: &Alphabet,
    rules: &[(String, Vec<String>)],
) -> Result<Vec<Word>> {
    let mut images: Vec<Option<Word>> = vec![None; domain.len()];
    for (lhs, rhs) in rules {
        let letter = domain
            .letter(lhs)
            .ok_or_else(|| Error::Parse(format!("rule for unknown letter '{lhs}'")))?;
        if images[letter.index()].is_some() {
            return Err(Error::Parse(format!("duplicate rule for letter '{lhs}'")));
        }
        let image = rhs
            .iter()
            .map(|t| {
                target
                    .letter(t)
                    .ok_or_else(|| Error::Parse(format!("unknown letter '{t}' in an image")))
            })
            .collect::<Result<Word>>()?;
        images[letter.index()] = Some(image);
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                Error::Parse(format!(
                    "no image for letter '{}'",
                    domain.symbol(domain.nth(i).unwrap())
                ))
            })
        })
        .collect()
}

/// The Fibonacci substitution 0 -> 01, 1 -> 0 together with itself as label
/// images; its fixed point labels the lazy numeration tree.
pub fn fibonacci() -> SubstitutiveLabelledSignature {
    let alphabet = Alphabet::new(["0", "1"]).unwrap();
    let zero = alphabet.letter("0").unwrap();
    let one = alphabet.letter("1").unwrap();
    let substitution =
        Morphism::endomorphism(alphabet, vec![vec![zero, one], vec![zero]]).unwrap();
    SubstitutiveLabelledSignature::new(substitution.clone(), zero, substitution).unwrap()
}
