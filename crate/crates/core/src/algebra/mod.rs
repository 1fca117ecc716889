//! Exact arithmetic in Z[β, β⁻¹] with certified comparisons.

mod conjugate;
mod field;
mod poly;
mod qelem;

use std::fmt;
use std::str::FromStr;

pub use field::{BetaField, FieldElem, Ratio};
pub use qelem::QElem;

use crate::error::Error;

/// The three bases with hand-derived normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Golden,
    Tribonacci,
    SmallestPisot,
}

impl Base {
    pub const ALL: [Base; 3] = [Base::Golden, Base::Tribonacci, Base::SmallestPisot];

    pub fn field(self) -> BetaField {
        match self {
            Base::Golden => BetaField::golden(),
            Base::Tribonacci => BetaField::tribonacci(),
            Base::SmallestPisot => BetaField::smallest_pisot(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::Golden => "golden",
            Base::Tribonacci => "tribonacci",
            Base::SmallestPisot => "smallest-pisot",
        }
    }

    /// Whether `f` is this base's field.
    pub fn matches(self, f: &BetaField) -> bool {
        let p: &[i64] = match self {
            Base::Golden => &[1, -1, -1],
            Base::Tribonacci => &[1, -1, -1, -1],
            Base::SmallestPisot => &[1, 0, -1, -1],
        };
        f.min_poly() == p
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Base, Error> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "golden" | "fibonacci" => Ok(Base::Golden),
            "tribonacci" => Ok(Base::Tribonacci),
            "smallest-pisot" | "smallestpisot" | "plastic" => Ok(Base::SmallestPisot),
            _ => Err(Error::Parse { text: s.to_string(), reason: "unknown base".into() }),
        }
    }
}
