//! Monomials under deglex and disjoint-term trinomials.

mod monomial;
mod trinomial;

pub use monomial::{box_code, box_decode, deglex_cmp_slices, DeglexDescending, Monomial};
pub use trinomial::{Term, TermLabel, Trinomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("monomials have different variable counts ({0} vs {1})")]
    VariableCountMismatch(usize, usize),
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Polynomial input rejected by the trinomial parser.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expected exactly 3 terms, found {0}")]
    TermCount(usize),
    #[error("term {term} is a constant; every term needs a variable")]
    ConstantTerm { term: usize },
    #[error("terms {first} and {second} share x{var}; the terms must have pairwise GCD 1")]
    SharedVariable {
        first: usize,
        second: usize,
        var: usize,
    },
    #[error("coefficient {coefficient} of term {term} vanishes mod {p}")]
    ZeroCoefficient { term: usize, coefficient: u64, p: u32 },
    #[error("variable indices start at 1 (found x0)")]
    VariableIndexZero,
    #[error("exponent too large")]
    ExponentOverflow,
}
