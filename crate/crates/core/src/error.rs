use num_rational::Ratio;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A descriptor is self-contradictory (empty period, morphism that cannot
    /// be iterated from its start letter, mismatched alphabets, ...).
    #[error("invalid descriptor: {0}")]
    Config(String),

    /// A caller broke an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The degree sequence fails the surplus condition: the sum of its first
    /// `index + 1` entries does not exceed `index + 1`, so breadth-first
    /// generation runs out of parents at that point.
    #[error("invalid signature at index {index}: prefix sum does not exceed {}", index + 1)]
    InvalidSignature { index: usize },

    /// A hand-built tree prefix is not one the generation procedure could
    /// have produced.
    #[error("inconsistent tree prefix: {0}")]
    Structure(String),

    /// A letter or symbol does not belong to the alphabet in play.
    #[error("alphabet error: {0}")]
    Alphabet(String),

    /// The morphism does not admit an infinite iteration from this letter.
    #[error("morphism is not prolongable on letter '{letter}'")]
    NotProlongable { letter: String },

    /// A label image disagrees in length with the corresponding image of the
    /// substitution.
    #[error("label image for letter '{letter}' does not match the substitution image length")]
    LengthMismatch { letter: String },

    /// Periodic-to-substitution conversion needs an integer mean degree.
    #[error("growth ratio {0} is not an integer")]
    NonIntegerGrowthRatio(Ratio<u64>),

    /// Preperiod entries of zero admit no substitutive carving of the
    /// preperiod; rejected rather than guessed around.
    #[error("preperiod contains a zero entry at position {position}")]
    ZeroInPreperiod { position: usize },

    /// A label image is not strictly increasing, so the produced automaton
    /// would not be deterministic in radix order.
    #[error("label image for letter '{letter}' is not strictly increasing")]
    NonIncreasingImage { letter: String },

    /// The automaton accepts only finitely many words; there is no infinite
    /// tree, hence no signature, to extract.
    #[error("automaton accepts a finite language; it has no signature")]
    FiniteLanguage,

    /// Text input (descriptor, morphism file, automaton file) is malformed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
