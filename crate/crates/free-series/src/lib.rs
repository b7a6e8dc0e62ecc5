//! Words in `e_0, ..., e_M`, truncated noncommutative series over `Z_q`,
//! shuffles, and completion of group-like series from canonical coefficients.

pub mod complete;
pub mod series;
pub mod word;

use thiserror::Error;

pub use complete::{shuffle_complete, Completion};
pub use series::{is_grouplike, GroupLikeReport, NCSeries};
pub use word::{shuffle, words_up_to, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse word {0:?}: expected tokens like `e2` or `e0^3`")]
    Parse(String),
    #[error("letter e{letter} out of range for M = {m}")]
    Letter { letter: u32, m: u64 },
}
