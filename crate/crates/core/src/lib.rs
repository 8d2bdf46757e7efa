//! Fully dynamic pattern matching with wildcards.
//!
//! Both the text and the pattern change under single-symbol substitutions
//! and every query answers whether the pattern currently occurs in the text,
//! with `?` matching any symbol on either side.
//!
//! * [`general::GeneralMatcher`]: up to `k` wildcards in pattern and text
//!   together.
//! * [`two::TwoMatcher`]: patterns with at most two non-wildcard symbols,
//!   backed by the [`range_pair::RangePair`] counter; also reports counts
//!   and supports pattern insert/delete.
//! * [`sparse::SparseMatcher`]: wildcard positions of the pattern fixed in
//!   advance.
//! * [`hardness`]: the Orthogonal Vectors reduction as a driver over any
//!   matcher.
//!
//! Positions are 0-based throughout the library.

pub mod convolution;
pub mod error;
pub mod general;
pub mod gray;
pub mod hardness;
pub mod hashing;
pub mod oracle;
pub mod ordered_set;
pub mod range_pair;
pub mod sparse;
pub mod text_index;
pub mod two;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use general::{default_tau, GeneralConfig, GeneralMatcher};
pub use hashing::{HashContext, RangeHashTree};
pub use range_pair::{RangePair, RangePairConfig};
pub use sparse::SparseMatcher;
pub use two::{PatternEdit, TwoConfig, TwoMatcher};

/// The wildcard symbol.
pub const WILDCARD: u8 = b'?';
/// Placeholder standing for any rare symbol in the masked text.
pub const PLACEHOLDER: u8 = b'#';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MatchVerdict {
    pub matched: bool,
    /// Number of occurrences, where the matcher can count them.
    pub count: Option<u64>,
    /// Start of some occurrence, where the matcher can report one.
    pub witness: Option<usize>,
}

impl MatchVerdict {
    pub fn no_match() -> Self {
        Self::default()
    }

    pub fn matched() -> Self {
        Self {
            matched: true,
            ..Self::default()
        }
    }

    pub fn found(start: usize) -> Self {
        Self {
            matched: true,
            count: None,
            witness: Some(start),
        }
    }

    pub fn counted(count: u64) -> Self {
        Self {
            matched: count > 0,
            count: Some(count),
            witness: None,
        }
    }
}
