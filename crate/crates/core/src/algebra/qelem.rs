//! Elements of Q(β) with rational coefficients, for exact linear algebra.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, QPoly};
use super::{BetaField, FieldElem};

/// Σ c_i β^i for i below the degree, lowest power first, trailing zeros
/// removed. The representation is canonical, so equality is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QElem {
    coeffs: QPoly,
}

impl QElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value as a rational number, when it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "β".to_string(),
                _ => format!("β^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{power}")?;
            } else if a.is_integer() {
                write!(f, "{a}{power}")?;
            } else {
                write!(f, "({a}){power}")?;
            }
        }
        Ok(())
    }
}

impl BetaField {
    fn q_modulus(&self) -> QPoly {
        poly::from_ints(&self.min_poly().iter().rev().copied().collect::<Vec<_>>())
    }

    fn q_wrap(&self, p: &[BigRational]) -> QElem {
        QElem { coeffs: poly::reduce(p, &self.q_modulus()) }
    }

    pub fn q_zero(&self) -> QElem {
        QElem { coeffs: Vec::new() }
    }

    pub fn q_one(&self) -> QElem {
        self.q_int(1)
    }

    pub fn q_int(&self, n: i64) -> QElem {
        self.q_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn q_rational(&self, r: BigRational) -> QElem {
        self.q_wrap(&[r])
    }

    /// β^k for any integer k.
    pub fn q_beta_pow(&self, k: i32) -> QElem {
        let beta = self.q_wrap(&poly::from_ints(&[0, 1]));
        let base = if k < 0 { self.q_inv(&beta).expect("β ≠ 0") } else { beta };
        (0..k.unsigned_abs()).fold(self.q_one(), |acc, _| self.q_mul(&acc, &base))
    }

    pub fn q_from_elem(&self, x: &FieldElem) -> QElem {
        let p = self.q_wrap(&poly::from_ints(x.coeffs()));
        self.q_mul(&p, &self.q_beta_pow(x.shift()))
    }

    pub fn q_add(&self, a: &QElem, b: &QElem) -> QElem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = BigRational::zero();
        let sum: QPoly = (0..n)
            .map(|i| a.coeffs.get(i).unwrap_or(&zero) + b.coeffs.get(i).unwrap_or(&zero))
            .collect();
        self.q_wrap(&sum)
    }

    pub fn q_neg(&self, a: &QElem) -> QElem {
        QElem { coeffs: a.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn q_sub(&self, a: &QElem, b: &QElem) -> QElem {
        self.q_add(a, &self.q_neg(b))
    }

    pub fn q_mul(&self, a: &QElem, b: &QElem) -> QElem {
        self.q_wrap(&poly::mul(&a.coeffs, &b.coeffs))
    }

    /// None for zero, and for non-invertible elements when the polynomial
    /// is not irreducible.
    pub fn q_inv(&self, a: &QElem) -> Option<QElem> {
        if a.is_zero() {
            return None;
        }
        poly::inverse_mod(&a.coeffs, &self.q_modulus()).map(|c| QElem { coeffs: c })
    }

    pub fn q_div(&self, a: &QElem, b: &QElem) -> Option<QElem> {
        self.q_inv(b).map(|i| self.q_mul(a, &i))
    }

    pub fn q_to_f64(&self, a: &QElem) -> f64 {
        let b = self.approx();
        a.coeffs.iter().rev().fold(0.0, |acc, c| acc * b + c.to_f64().unwrap_or(f64::NAN))
    }
}
