//! File formats, reports and command implementations for the `fibersum`
//! command-line tool.

pub mod catalog_json;
pub mod dsl;
pub mod eval;
pub mod family;
pub mod groups;
pub mod report;

pub use dsl::{parse, ConstructionFile, DslError};
pub use eval::{evaluate, EvalError, Evaluator};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const INPUT_ERROR: u8 = 2;
}
