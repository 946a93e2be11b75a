//! Finitely described infinite sequences and signature validity.
//!
//! A *signature* is an infinite sequence of nonnegative integers, read as
//! the breadth-first degree sequence of an ordered tree. It generates a tree
//! exactly when every prefix carries a strict surplus of children:
//!
//! ```text
//! for all j:  s[0] + s[1] + ... + s[j] > j + 1
//! ```
//!
//! Two descriptor families are supported: ultimately periodic sequences
//! `u · v^ω`, and substitutive sequences obtained by reading image lengths
//! (or label images) along the fixed point of a prolongable morphism. Both
//! are immutable values; `prefix` may be called repeatedly and always
//! replays the same sequence.

use num_rational::Ratio;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::morphism::{FixedPointExpansion, Morphism};

/// An infinite sequence of nonnegative integers given by a finite
/// descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    repr: SignatureRepr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SignatureRepr {
    Periodic {
        preperiod: Vec<usize>,
        period: Vec<usize>,
    },
    Substitutive {
        substitution: Morphism,
        start: Letter,
    },
}

/// Borrowed view of a signature's descriptor.
pub enum SignatureParts<'a> {
    Periodic {
        preperiod: &'a [usize],
        period: &'a [usize],
    },
    Substitutive {
        substitution: &'a Morphism,
        start: Letter,
    },
}

/// Outcome of a validity check. `valid_on_prefix` covers the inspected
/// prefix only; `proven_forever` is set when the descriptor admits an exact
/// argument covering every index. `first_violation` is the smallest
/// violating index encountered by the checks performed, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid_on_prefix: bool,
    pub proven_forever: bool,
    pub first_violation: Option<usize>,
}

impl Signature {
    /// The sequence `preperiod · period^ω`. The period must be nonempty.
    pub fn periodic(preperiod: Vec<usize>, period: Vec<usize>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Argument("period must be nonempty".into()));
        }
        Ok(Signature {
            repr: SignatureRepr::Periodic { preperiod, period },
        })
    }

    /// The image lengths of `substitution` read along its fixed point on
    /// `start`; requires the morphism to be prolongable on `start`.
    pub fn substitutive(substitution: Morphism, start: Letter) -> Result<Self> {
        if !substitution.is_prolongable(start)? {
            return Err(Error::NotProlongable {
                letter: substitution.domain().symbol(start).to_string(),
            });
        }
        Ok(Signature {
            repr: SignatureRepr::Substitutive {
                substitution,
                start,
            },
        })
    }

    pub fn parts(&self) -> SignatureParts<'_> {
        match &self.repr {
            SignatureRepr::Periodic { preperiod, period } => SignatureParts::Periodic {
                preperiod,
                period,
            },
            SignatureRepr::Substitutive {
                substitution,
                start,
            } => SignatureParts::Substitutive {
                substitution,
                start: *start,
            },
        }
    }

    /// The first `n` terms. Restartable: equal calls yield equal prefixes.
    pub fn prefix(&self, n: usize) -> Vec<usize> {
        match &self.repr {
            SignatureRepr::Periodic { preperiod, period } => (0..n)
                .map(|j| {
                    if j < preperiod.len() {
                        preperiod[j]
                    } else {
                        period[(j - preperiod.len()) % period.len()]
                    }
                })
                .collect(),
            SignatureRepr::Substitutive {
                substitution,
                start,
            } => FixedPointExpansion::new(substitution, *start)
                .take(n)
                .map(|l| substitution.image(l).len())
                .collect(),
        }
    }

    /// Checks the surplus condition on the first `horizon` terms, and
    /// decides whether it holds at every index.
    ///
    /// Ultimately periodic sequences are decided by checking one full period
    /// past the preperiod together with a nonnegative per-period surplus.
    /// Substitutive sequences always satisfy the condition: the sum of the
    /// first j+1 image lengths is the length of the image of a prefix of the
    /// fixed point, which strictly outgrows the prefix itself.
    pub fn check_valid(&self, horizon: usize) -> ValidityReport {
        let scanned = self.prefix(horizon);
        let mut first_violation = first_deficit(&scanned);
        let valid_on_prefix = first_violation.is_none();
        let proven_forever = match &self.repr {
            SignatureRepr::Periodic { preperiod, period } => {
                let window = preperiod.len() + period.len();
                let window_violation = first_deficit(&self.prefix(window));
                if let Some(j) = window_violation {
                    first_violation = Some(first_violation.map_or(j, |h| h.min(j)));
                }
                window_violation.is_none() && period.iter().sum::<usize>() >= period.len()
            }
            SignatureRepr::Substitutive { .. } => valid_on_prefix,
        };
        ValidityReport {
            valid_on_prefix,
            proven_forever,
            first_violation,
        }
    }
}

/// Smallest j with `s[0] + ... + s[j] <= j + 1`, if any.
fn first_deficit(entries: &[usize]) -> Option<usize> {
    let mut sum = 0usize;
    for (j, &s) in entries.iter().enumerate() {
        sum += s;
        if sum <= j + 1 {
            return Some(j);
        }
    }
    None
}

/// An infinite sequence of letters given by a finite descriptor: either
/// ultimately periodic, or the image of a morphism's fixed point under a
/// second morphism (the identity recovers the fixed point itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterSeq {
    repr: LetterSeqRepr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum LetterSeqRepr {
    Periodic {
        alphabet: Alphabet,
        preperiod: Word,
        period: Word,
    },
    Morphic {
        substitution: Morphism,
        start: Letter,
        emit: Morphism,
    },
}

impl LetterSeq {
    /// The sequence `preperiod · period^ω` over `alphabet`.
    pub fn periodic(alphabet: Alphabet, preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Argument("period must be nonempty".into()));
        }
        for l in preperiod.iter().chain(&period) {
            if l.index() >= alphabet.len() {
                return Err(Error::Alphabet(format!(
                    "letter index {} outside the alphabet",
                    l.index()
                )));
            }
        }
        Ok(LetterSeq {
            repr: LetterSeqRepr::Periodic {
                alphabet,
                preperiod,
                period,
            },
        })
    }

    /// The sequence `emit(fixed point of substitution on start)`. `emit`
    /// must be defined on the substitution's alphabet and either be
    /// letter-to-letter or match the substitution's image lengths; both
    /// guarantee the emitted sequence is infinite.
    pub fn morphic(substitution: Morphism, start: Letter, emit: Morphism) -> Result<Self> {
        if !substitution.is_prolongable(start)? {
            return Err(Error::NotProlongable {
                letter: substitution.domain().symbol(start).to_string(),
            });
        }
        if emit.domain() != substitution.domain() {
            return Err(Error::Config(
                "emitting morphism must be defined on the substitution's alphabet".into(),
            ));
        }
        let letter_to_letter = substitution
            .domain()
            .letters()
            .all(|l| emit.image(l).len() == 1);
        let length_matched = substitution
            .domain()
            .letters()
            .all(|l| emit.image(l).len() == substitution.image(l).len());
        if !letter_to_letter && !length_matched {
            return Err(Error::Config(
                "emitting morphism must be letter-to-letter or match the substitution's image lengths"
                    .into(),
            ));
        }
        Ok(LetterSeq {
            repr: LetterSeqRepr::Morphic {
                substitution,
                start,
                emit,
            },
        })
    }

    /// The alphabet the emitted letters live in.
    pub fn alphabet(&self) -> &Alphabet {
        match &self.repr {
            LetterSeqRepr::Periodic { alphabet, .. } => alphabet,
            LetterSeqRepr::Morphic { emit, .. } => emit.target(),
        }
    }

    /// The first `n` letters. Restartable: equal calls yield equal prefixes.
    pub fn prefix(&self, n: usize) -> Word {
        match &self.repr {
            LetterSeqRepr::Periodic {
                preperiod, period, ..
            } => (0..n)
                .map(|j| {
                    if j < preperiod.len() {
                        preperiod[j]
                    } else {
                        period[(j - preperiod.len()) % period.len()]
                    }
                })
                .collect(),
            LetterSeqRepr::Morphic {
                substitution,
                start,
                emit,
            } => {
                let mut out = Word::new();
                let mut source = FixedPointExpansion::new(substitution, *start);
                while out.len() < n {
                    match source.next() {
                        Some(l) => out.extend_from_slice(emit.image(l)),
                        None => break,
                    }
                }
                out.truncate(n);
                out
            }
        }
    }
}

/// The arithmetic mean of the entries as an exact rational.
pub fn growth_ratio(entries: &[usize]) -> Result<Ratio<u64>> {
    if entries.is_empty() {
        return Err(Error::Argument(
            "growth ratio of an empty list is undefined".into(),
        ));
    }
    let sum: u64 = entries.iter().map(|&d| d as u64).sum();
    Ok(Ratio::new(sum, entries.len() as u64))
}

/// Parses the textual descriptor `periodic:u=2;v=1` or `periodic:v=3,2,1`
/// into its preperiod and period lists (`u=` may be omitted or empty).
pub fn parse_periodic_descriptor(text: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let body = text
        .strip_prefix("periodic:")
        .ok_or_else(|| Error::Parse(format!("expected a periodic:... descriptor, got '{text}'")))?;
    let mut preperiod: Option<Vec<usize>> = None;
    let mut period: Option<Vec<usize>> = None;
    for part in body.split(';') {
        let part = part.trim();
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected u=... or v=..., got '{part}'")))?;
        let list = parse_int_list(value)?;
        match key.trim() {
            "u" if preperiod.is_none() => preperiod = Some(list),
            "v" if period.is_none() => period = Some(list),
            "u" | "v" => {
                return Err(Error::Parse(format!("duplicate '{}=' part", key.trim())));
            }
            other => {
                return Err(Error::Parse(format!("unknown descriptor part '{other}='")));
            }
        }
    }
    let period = period.ok_or_else(|| Error::Parse("descriptor lacks a v=... part".into()))?;
    if period.is_empty() {
        return Err(Error::Parse("period v must be nonempty".into()));
    }
    Ok((preperiod.unwrap_or_default(), period))
}

fn parse_int_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("expected a nonnegative integer, got '{t}'")))
        })
        .collect()
}
