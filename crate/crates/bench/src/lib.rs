//! Shared fixtures for the benchmark suite.

use sigtree_core::{Dfa, Signature};

/// The three-state automaton of the Zeckendorf representations.
pub fn zeckendorf_automaton() -> Dfa {
    Dfa::parse("alphabet: 0,1\ninitial: i\ni 1 p\np 0 q\nq 0 q\nq 1 p\n")
        .expect("fixture parses")
}

/// The running eventually periodic example with period 3, 2, 1.
pub fn periodic_321() -> Signature {
    Signature::periodic(vec![], vec![3, 2, 1]).expect("fixture is well formed")
}

/// The Fibonacci substitution's signature.
pub fn fibonacci_signature() -> Signature {
    sigtree_core::fibonacci().signature()
}
