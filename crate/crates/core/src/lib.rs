//! Single-qubit gate identities over the 35-gate set Λ.
//!
//! The crate mines every word over Λ of a given length whose product is again
//! a member of Λ, canonicalizes the resulting identities with a small rewrite
//! system, and uses the surviving list to shorten gate words.
//!
//! ```
//! use qci_core::{io::parse_word, default_simplifier};
//!
//! let s = default_simplifier();
//! let (w, _) = s.simplify(&parse_word("H X H").unwrap());
//! assert_eq!(w.to_string(), "Z");
//! ```

pub mod cyclo;
pub mod filter;
pub mod io;
pub mod matrix;
pub mod miner;
pub mod rules;
pub mod simplify;
pub mod token;
pub mod word;

use std::sync::OnceLock;

pub use cyclo::CycloNum;
pub use filter::{filter, FilterConfig, FilteredEntry, FilteredIdentitySet};
pub use matrix::{approx_equal, eval_word, eval_word_float, exact_equal, token_matrix, ExactUnitary, FloatMatrix};
pub use miner::{mine, RawIdentitySet, DEFAULT_TOLERANCE};
pub use simplify::{SimplifyTrace, Simplifier};
pub use token::{Kind, Token, LAMBDA};
pub use word::{Identity, Sign, SignedWord};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid token {0:?}")]
    Token(String),
    #[error("line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Argument(String),
    #[error("{0}")]
    Apply(String),
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub fn at_line(self, n: usize) -> Error {
        match self {
            Error::Parse { column, msg, .. } => Error::Parse { line: n, column, msg },
            e => e,
        }
    }
}

/// The identity list used when no database is given: lengths up to three with
/// rotations kept and no grouping.
pub fn default_database() -> &'static FilteredIdentitySet {
    static DB: OnceLock<FilteredIdentitySet> = OnceLock::new();
    DB.get_or_init(|| {
        let raw = mine(3, DEFAULT_TOLERANCE).expect("valid arguments");
        filter(&raw, FilterConfig::KEEP_ROTATIONS).expect("raw set has every length")
    })
}

pub fn default_simplifier() -> &'static Simplifier {
    static S: OnceLock<Simplifier> = OnceLock::new();
    S.get_or_init(|| Simplifier::new(default_database().identities()))
}
