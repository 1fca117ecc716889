//! Minimal-weight digit expansions in Pisot bases.

pub mod algebra;
pub mod analysis;
pub mod automata;
pub mod cli;
pub mod error;
pub mod expand;
pub mod intsys;
pub mod minweight;
pub mod words;

pub use algebra::{Base, BetaField, FieldElem, QElem, Ratio};
pub use error::{Error, Result};
pub use words::DigitWord;
