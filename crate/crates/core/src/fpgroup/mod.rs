//! Words, finite presentations, and the group operations the fiber-sum
//! engine consumes.

mod abelianization;
mod parse;
mod presentation;
mod snf;
mod tietze;
mod word;

use alloc::string::String;

pub use abelianization::{abelianization, is_abelian_trivial, relation_matrix, AbelianInvariants};
pub use parse::{parse_word, ParseError};
pub use presentation::{free_product, quotient_by_normal_closure, GroupHom, Presentation, Renaming};
pub use snf::{smith_normal_form, IntMatrix};
pub use tietze::{is_presentation_trivial, tietze_simplify, tietze_step, TietzeMove, TietzeOutcome, Triviality, Witness};
pub use word::{free_reduce, Letter, Word, WordDisplay};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("generator index {index} out of range for {generator_count} generators")]
    UnknownGenerator { index: usize, generator_count: usize },
    #[error("no generator named '{0}'")]
    UnknownName(String),
    #[error("duplicate generator name '{0}'")]
    DuplicateGenerator(String),
    #[error("empty generator name")]
    EmptyGeneratorName,
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
}
