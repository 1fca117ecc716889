//! Digit words, their weights and values, and the relation ∼_β.
//!
//! Text form: `0`–`9` are digits 0..9, `T U V W X` are −1..−5, `[n]` is any
//! other integer, and a single `.` marks the radix point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{BetaField, FieldElem};
use crate::error::{Error, Result};

/// A finite digit word, most significant digit first.
///
/// Without a point the word is read as an integer, Σ x_j β^(n−j). With
/// point k it is x_1…x_k . x_(k+1)…x_n.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitWord {
    pub digits: Vec<i32>,
    pub point: Option<usize>,
}

impl DigitWord {
    pub fn new(digits: Vec<i32>) -> DigitWord {
        DigitWord { digits, point: None }
    }

    pub fn with_point(digits: Vec<i32>, point: usize) -> DigitWord {
        assert!(point <= digits.len(), "point beyond the end of the word");
        DigitWord { digits, point: Some(point) }
    }

    pub fn parse(text: &str) -> Result<DigitWord> {
        text.parse()
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn weight(&self) -> u64 {
        weight(&self.digits)
    }

    /// Number of digits after the point.
    pub fn frac_len(&self) -> usize {
        self.point.map_or(0, |k| self.digits.len() - k)
    }

    /// The digits without leading and trailing zeros, read as an integer.
    pub fn strip(&self) -> DigitWord {
        DigitWord::new(strip(&self.digits).to_vec())
    }

    /// Number of trailing zeros.
    pub fn trailing_zeros(&self) -> usize {
        self.digits.iter().rev().take_while(|&&d| d == 0).count()
    }

    pub fn negate(&self) -> DigitWord {
        DigitWord { digits: self.digits.iter().map(|d| -d).collect(), point: self.point }
    }

    pub fn max_abs_digit(&self) -> i32 {
        self.digits.iter().map(|d| d.abs()).max().unwrap_or(0)
    }
}

/// Absolute digit sum.
pub fn weight(digits: &[i32]) -> u64 {
    digits.iter().map(|d| d.unsigned_abs() as u64).sum()
}

/// The sub-slice without leading and trailing zeros.
pub fn strip(digits: &[i32]) -> &[i32] {
    let start = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
    let end = digits.iter().rposition(|&d| d != 0).map_or(start, |i| i + 1);
    &digits[start..end]
}

fn digit_char(d: i32) -> Option<char> {
    match d {
        0..=9 => Some((b'0' + d as u8) as char),
        -1 => Some('T'),
        -2 => Some('U'),
        -3 => Some('V'),
        -4 => Some('W'),
        -5 => Some('X'),
        _ => None,
    }
}

/// Renders digits without a point.
pub fn render_digits(digits: &[i32]) -> String {
    DigitWord::new(digits.to_vec()).to_string()
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &d) in self.digits.iter().enumerate() {
            if self.point == Some(i) {
                f.write_str(".")?;
            }
            match digit_char(d) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "[{d}]")?,
            }
        }
        if self.point == Some(self.digits.len()) {
            f.write_str(".")?;
        }
        Ok(())
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<DigitWord> {
        let bad = |why: String| Error::Parse { text: text.to_string(), reason: why };
        let mut digits = Vec::new();
        let mut point = None;
        let mut chars = text.trim().chars();
        while let Some(c) = chars.next() {
            let d = match c {
                '0'..='9' => c as i32 - '0' as i32,
                'T' => -1,
                'U' => -2,
                'V' => -3,
                'W' => -4,
                'X' => -5,
                '.' => {
                    if point.is_some() {
                        return Err(bad("more than one radix point".into()));
                    }
                    point = Some(digits.len());
                    continue;
                }
                '[' => {
                    let mut body = String::new();
                    loop {
                        match chars.next() {
                            Some(']') => break,
                            Some('−') => body.push('-'),
                            Some(c) => body.push(c),
                            None => return Err(bad("unterminated '['".into())),
                        }
                    }
                    let v: i64 = body
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad bracketed digit {body:?}")))?;
                    i32::try_from(v).map_err(|_| bad(format!("digit {v} out of range")))?
                }
                other => return Err(bad(format!("unexpected character {other:?}"))),
            };
            digits.push(d);
        }
        Ok(DigitWord { digits, point })
    }
}

impl Serialize for DigitWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DigitWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<DigitWord, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact value of the word in Z[β, β⁻¹].
pub fn value_beta(w: &DigitWord, f: &BetaField) -> FieldElem {
    let digits: Vec<i64> = w.digits.iter().map(|&d| d as i64).collect();
    let v = f.horner(&digits);
    f.mul_beta_pow(&v, -(w.frac_len() as i32))
}

/// The representative β^k·v of the ∼_β class of v ≠ 0 with 1 ≤ |β^k v| < β,
/// together with k.
pub fn class_key(v: &FieldElem, f: &BetaField) -> Option<(FieldElem, i32)> {
    if v.is_zero() {
        return None;
    }
    let a = if f.sign(v) < 0 { f.neg(v) } else { v.clone() };
    let approx = f.to_f64(&a);
    let mut k = if approx.is_finite() && approx > 0.0 {
        -(approx.ln() / f.approx().ln()).floor() as i32
    } else {
        0
    };
    let one = f.one();
    let beta = f.beta();
    loop {
        let x = f.mul_beta_pow(&a, k);
        if f.cmp(&x, &one).is_lt() {
            k += 1;
        } else if f.cmp(&x, &beta).is_ge() {
            k -= 1;
        } else {
            let key = if f.sign(v) < 0 { f.neg(&x) } else { x };
            return Some((key, k));
        }
    }
}

/// The k in [−max_shift, max_shift] with value(x) = β^k · value(y), if any.
pub fn equivalent_beta(
    x: &DigitWord,
    y: &DigitWord,
    f: &BetaField,
    max_shift: i32,
) -> Option<i32> {
    let vx = value_beta(x, f);
    let vy = value_beta(y, f);
    match (class_key(&vx, f), class_key(&vy, f)) {
        (None, None) => Some(0),
        (Some((kx, ex)), Some((ky, ey))) if kx == ky => {
            let k = ey - ex;
            (k.abs() <= max_shift).then_some(k)
        }
        _ => None,
    }
}
