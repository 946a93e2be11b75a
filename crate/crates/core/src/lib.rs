//! Breadth-first serialisation of infinite trees and prefix-closed
//! rational languages.
//!
//! An ordered tree of infinite height can be serialised breadth-first into
//! the sequence of its node degrees, called its *signature*. Labelling
//! each edge and reading words from the root turns the tree into a
//! language; with the canonical minimal labelling the language is exactly
//! the representations of the natural numbers in an abstract numeration
//! system. This crate provides the objects on both sides of that
//! correspondence and the conversions between them:
//!
//! * [`Signature`]: eventually periodic or substitutive degree sequences,
//!   with validity checking ([`Signature::check_valid`]).
//! * [`TreePrefix`]: finite breadth-first tree prefixes generated from a
//!   signature, with father/child navigation and DOT output.
//! * [`LabelledSignature`]: a signature paired with a labelling sequence,
//!   generating words in radix order ([`minimal_labelling`] picks the
//!   canonical one).
//! * [`Morphism`] and [`SubstitutiveLabelledSignature`]: substitutions,
//!   fixed points, and [`periodic_to_substitution`] turning any valid
//!   eventually periodic signature into a substitutive presentation.
//! * [`Dfa`] with [`dfa_to_signature`] and [`signature_to_dfa`]: the
//!   correspondence between prefix-closed rational languages and
//!   substitutive labelled signatures.
//!
//! ```
//! use sigtree_core::{fibonacci, LabelledSignature};
//!
//! // The Fibonacci substitution's signature generates the Zeckendorf
//! // representations of the natural numbers, in order.
//! let lang = fibonacci().labelled_signature();
//! let alphabet = lang.labelling().alphabet().clone();
//! let words: Vec<String> = lang
//!     .generate_language(6)
//!     .unwrap()
//!     .iter()
//!     .map(|w| alphabet.render_word(w))
//!     .collect();
//! assert_eq!(words, ["ε", "1", "10", "100", "101", "1000"]);
//! ```

pub mod alphabet;
pub mod automata;
pub mod error;
pub mod labelling;
pub mod morphism;
pub mod signature;
pub mod tree;

pub use alphabet::{radix_cmp, Alphabet, Letter, Word, SENTINEL};
pub use automata::{
    dfa_to_signature, roundtrip_preserves_words, signature_to_dfa, Dfa, SentinelDfa,
};
pub use error::{Error, Result};
pub use labelling::{
    is_prefix_closed, is_radix_increasing, minimal_labelling, LabelledSignature, WordLookup,
};
pub use morphism::{
    fibonacci, periodic_to_substitution, Morphism, MorphismFile, SubstitutiveLabelledSignature,
};
pub use signature::{
    growth_ratio, parse_periodic_descriptor, LetterSeq, Signature, SignatureParts, ValidityReport,
};
pub use tree::TreePrefix;
