//! Rational polynomials, lowest power first. Only what root isolation needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn from_ints(low: &[i64]) -> QPoly {
    low.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn derivative(p: &[BigRational]) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("division by zero polynomial").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let q = r.last().unwrap() / &lead;
        let off = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[off + i] = &r[off + i] - &q * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Sturm chain p, p', -rem(p, p'), ...
pub(crate) fn sturm_chain(p: &[BigRational]) -> Vec<QPoly> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(chain: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval (a, b].
pub(crate) fn count_roots(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    variations(chain, a).saturating_sub(variations(chain, b))
}

/// Whether the polynomial shares a factor with its derivative.
pub(crate) fn has_repeated_root(p: &[BigRational]) -> bool {
    let chain = sturm_chain(p);
    chain.last().is_some_and(|g| g.len() > 1)
}

pub(crate) fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn reduce(a: &[BigRational], m: &[BigRational]) -> QPoly {
    rem(a, m)
}

fn divmod(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("division by zero polynomial").clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(b.len() - 1).max(1)];
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / &lead;
        let off = r.len() - b.len();
        for (i, x) in b.iter().enumerate() {
            r[off + i] = &r[off + i] - &c * x;
        }
        q[off] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of a modulo m by the extended Euclidean algorithm, if coprime.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let (mut r0, mut r1) = (m.to_vec(), reduce(a, m));
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(reduce(&s0.iter().map(|x| x / &c).collect::<QPoly>(), m))
}
