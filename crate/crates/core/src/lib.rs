//! Simon's algorithm from function tables to measurement-based patterns.

pub mod binary;
pub mod circuit;
pub mod error;
pub mod mbqc;
pub mod oracle;
pub mod protocol;
pub mod verify;
pub mod zx;

pub use binary::{BitString, FunctionTable, Gate};
pub use error::{Error, Result};
pub use oracle::{synthesize_oracle, GateList};
