use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::conjugate::{self, ConjugateDisk};
use super::poly;
use crate::error::{Error, Result};

/// Bits of the fixed-point enclosure used before falling back to big integers.
const FAST_PREC: u32 = 62;

/// An element β^shift · Σ coeffs[i] β^i of Z[β, β⁻¹].
///
/// Elements are only meaningful together with the [`BetaField`] that created
/// them; all arithmetic goes through the field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub(crate) shift: i32,
    pub(crate) coeffs: Vec<i64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shift:{} coeffs:[", self.shift)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A quotient num/den of field elements with den > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: FieldElem,
    pub den: FieldElem,
}

/// Enclosures of β^i · 2^prec for i < degree.
#[derive(Clone, Debug)]
struct Enclosure {
    prec: u32,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

#[derive(Clone, Debug)]
struct FastEnclosure {
    lo: Vec<i128>,
    hi: Vec<i128>,
}

/// Dyadic isolating interval (lo/2^scale, hi/2^scale).
#[derive(Clone, Debug)]
struct Interval {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

#[derive(Debug, Default)]
struct RefineCache {
    interval: Option<Interval>,
    enclosures: Vec<Enclosure>,
}

/// The real field Q(β) for a real algebraic integer β > 1, with exact
/// arithmetic on Z[β, β⁻¹].
pub struct BetaField {
    min_poly: Vec<i64>,
    low: Vec<i64>,
    reduce: Vec<i64>,
    degree: usize,
    unit: bool,
    approx: f64,
    lo: BigRational,
    hi: BigRational,
    fast: Option<FastEnclosure>,
    cache: Mutex<RefineCache>,
    conjugates: Option<Vec<ConjugateDisk>>,
    pisot: bool,
}

impl fmt::Debug for BetaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BetaField")
            .field("min_poly", &self.min_poly)
            .field("beta", &self.approx)
            .field("pisot", &self.pisot)
            .finish()
    }
}

impl BetaField {
    /// Builds the field of the largest real root of `min_poly`, given highest
    /// degree first. The polynomial must be monic; irreducibility is assumed.
    pub fn new(min_poly: &[i64]) -> Result<BetaField> {
        let mut hp: Vec<i64> = min_poly.to_vec();
        while hp.first() == Some(&0) {
            hp.remove(0);
        }
        if hp.len() < 2 {
            return Err(Error::InvalidPolynomial("constant polynomial".into()));
        }
        if hp[0] != 1 {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient must be 1, got {}",
                hp[0]
            )));
        }
        let degree = hp.len() - 1;
        if degree < 2 {
            return Err(Error::InvalidPolynomial(
                "degree 1 gives an integer base; use a polynomial of degree at least 2".into(),
            ));
        }
        let low: Vec<i64> = hp.iter().rev().copied().collect();
        if low[0] == 0 {
            return Err(Error::InvalidPolynomial("constant term is zero".into()));
        }
        let reduce: Vec<i64> = low[..degree].iter().map(|&a| -a).collect();
        if has_integer_root(&low) {
            return Err(Error::InvalidPolynomial("polynomial has a rational root".into()));
        }
        let qp = poly::from_ints(&low);
        if poly::has_repeated_root(&qp) {
            return Err(Error::InvalidPolynomial("polynomial has a repeated root".into()));
        }

        let interval = isolate_largest_root(&low, &qp)?;
        let scale_den = BigInt::one() << interval.scale;
        let lo = BigRational::new(interval.lo.clone(), scale_den.clone());
        let hi = BigRational::new(interval.hi.clone(), scale_den);
        let approx = ((lo.to_f64().unwrap() + hi.to_f64().unwrap()) / 2.0).max(1.0);

        let mut field = BetaField {
            min_poly: hp,
            low,
            reduce,
            degree,
            unit: false,
            approx,
            lo,
            hi,
            fast: None,
            cache: Mutex::new(RefineCache { interval: Some(interval), enclosures: Vec::new() }),
            conjugates: None,
            pisot: false,
        };
        field.unit = field.low[0].abs() == 1;
        let enc = field.enclosure(FAST_PREC);
        field.fast = to_fast(&enc);
        field.approx = field.refined_approx();
        if let Some(disks) = conjugate::certify(&field.low, &field) {
            field.pisot = disks.iter().all(|d| d.modulus_upper() < BigRational::one());
            field.conjugates = Some(disks);
        }
        Ok(field)
    }

    /// Golden ratio field, x² − x − 1.
    pub fn golden() -> BetaField {
        BetaField::new(&[1, -1, -1]).expect("golden ratio polynomial")
    }

    /// Tribonacci field, x³ − x² − x − 1.
    pub fn tribonacci() -> BetaField {
        BetaField::new(&[1, -1, -1, -1]).expect("tribonacci polynomial")
    }

    /// Field of the smallest Pisot number, x³ − x − 1.
    pub fn smallest_pisot() -> BetaField {
        BetaField::new(&[1, 0, -1, -1]).expect("smallest Pisot polynomial")
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_pisot(&self) -> bool {
        self.pisot
    }

    /// Whether β is a unit, i.e. β⁻¹ lies in Z[β].
    pub fn is_unit(&self) -> bool {
        self.unit
    }

    /// Floating-point value of β, for display and heuristics only.
    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// The isolating interval found at construction.
    pub fn isolating_interval(&self) -> (BigRational, BigRational) {
        (self.lo.clone(), self.hi.clone())
    }

    /// Certified upper bounds on the moduli of the conjugates other than β.
    pub fn conjugate_moduli_bounds(&self) -> Vec<BigRational> {
        self.conjugates
            .as_ref()
            .map(|ds| ds.iter().map(|d| d.modulus_upper()).collect())
            .unwrap_or_default()
    }

    /// Floating-point approximations of the conjugates other than β.
    pub fn conjugates_approx(&self) -> Vec<num_complex::Complex64> {
        self.conjugates
            .as_ref()
            .map(|ds| ds.iter().map(|d| d.approx()).collect())
            .unwrap_or_default()
    }

    // ----- construction of elements -----

    pub fn zero(&self) -> FieldElem {
        FieldElem { shift: 0, coeffs: vec![0; self.degree] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        let mut c = vec![0; self.degree];
        c[0] = n;
        self.normalize(c, 0)
    }

    /// β^shift · Σ coeffs[i] β^i, with coeffs of any length.
    pub fn from_coeffs(&self, coeffs: &[i64], shift: i32) -> FieldElem {
        let mut wide = coeffs.to_vec();
        if wide.len() < self.degree {
            wide.resize(self.degree, 0);
        }
        let c = self.reduce_poly(wide);
        self.normalize(c, shift)
    }

    pub fn beta(&self) -> FieldElem {
        self.beta_pow(1)
    }

    pub fn beta_pow(&self, k: i32) -> FieldElem {
        self.mul_beta_pow(&self.one(), k)
    }

    /// Parses the text form `shift:e coeffs:[c0,c1,...]`.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let bad = |why: &str| Error::Parse { text: text.to_string(), reason: why.to_string() };
        let rest = text.trim().strip_prefix("shift:").ok_or_else(|| bad("expected shift:"))?;
        let (sh, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| bad("missing coeffs"))?;
        let shift: i32 = sh.parse().map_err(|_| bad("bad shift"))?;
        let body = rest
            .trim()
            .strip_prefix("coeffs:[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected coeffs:[...]"))?;
        let coeffs = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| bad("bad coefficient")))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(self.from_coeffs(&coeffs, shift))
    }

    // ----- arithmetic -----

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.combine(a, b, 1)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.combine(a, b, -1)
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem { shift: a.shift, coeffs: a.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, a: &FieldElem, k: i64) -> FieldElem {
        if k == 0 {
            return self.zero();
        }
        let c = a.coeffs.iter().map(|c| c.checked_mul(k).expect("coefficient overflow")).collect();
        self.normalize(c, a.shift)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let d = self.degree;
        let mut prod = vec![0i64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j]
                    .checked_add(x.checked_mul(y).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        let c = self.reduce_poly(prod);
        self.normalize(c, a.shift + b.shift)
    }

    /// a · β^k.
    pub fn mul_beta_pow(&self, a: &FieldElem, k: i32) -> FieldElem {
        if a.is_zero() {
            return self.zero();
        }
        if !self.unit {
            return FieldElem { shift: a.shift + k, coeffs: a.coeffs.clone() };
        }
        let mut c = a.coeffs.clone();
        if k >= 0 {
            for _ in 0..k {
                c = self.times_beta(&c);
            }
        } else {
            for _ in 0..(-k) {
                c = self.div_beta(&c).expect("β is a unit");
            }
        }
        FieldElem { shift: 0, coeffs: c }
    }

    /// Evaluates Σ digits[i] β^(n-1-i) (most significant first) by Horner's rule.
    pub fn horner(&self, digits: &[i64]) -> FieldElem {
        let mut c = vec![0i64; self.degree];
        for &x in digits {
            c = self.times_beta(&c);
            c[0] = c[0].checked_add(x).expect("coefficient overflow");
        }
        self.normalize(c, 0)
    }

    fn combine(&self, a: &FieldElem, b: &FieldElem, sign: i64) -> FieldElem {
        let e = a.shift.min(b.shift);
        let ca = self.raise(&a.coeffs, (a.shift - e) as u32);
        let cb = self.raise(&b.coeffs, (b.shift - e) as u32);
        let c = ca
            .iter()
            .zip(&cb)
            .map(|(x, y)| x.checked_add(sign * y).expect("coefficient overflow"))
            .collect();
        self.normalize(c, e)
    }

    fn raise(&self, c: &[i64], k: u32) -> Vec<i64> {
        let mut c = c.to_vec();
        for _ in 0..k {
            c = self.times_beta(&c);
        }
        c
    }

    fn times_beta(&self, c: &[i64]) -> Vec<i64> {
        let d = self.degree;
        let top = c[d - 1];
        let mut out = vec![0i64; d];
        for i in 0..d {
            let below = if i == 0 { 0 } else { c[i - 1] };
            out[i] = below
                .checked_add(top.checked_mul(self.reduce[i]).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
        out
    }

    /// c / β when the quotient lies in Z[β].
    fn div_beta(&self, c: &[i64]) -> Option<Vec<i64>> {
        let d = self.degree;
        let r0 = self.reduce[0];
        if c[0] % r0 != 0 {
            return None;
        }
        let top = c[0] / r0;
        let mut out = vec![0i64; d];
        out[d - 1] = top;
        for i in 1..d {
            out[i - 1] = c[i]
                .checked_sub(top.checked_mul(self.reduce[i]).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
        Some(out)
    }

    /// Reduces a polynomial in β (lowest first) to length `degree`.
    fn reduce_poly(&self, mut p: Vec<i64>) -> Vec<i64> {
        let d = self.degree;
        while p.len() > d {
            let t = p.pop().unwrap();
            if t == 0 {
                continue;
            }
            let k = p.len() - d;
            for i in 0..d {
                p[k + i] = p[k + i]
                    .checked_add(t.checked_mul(self.reduce[i]).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        p.resize(d, 0);
        p
    }

    /// Brings (coeffs, shift) into canonical form.
    fn normalize(&self, coeffs: Vec<i64>, shift: i32) -> FieldElem {
        if coeffs.iter().all(|&c| c == 0) {
            return self.zero();
        }
        if self.unit {
            let mut c = coeffs;
            if shift >= 0 {
                for _ in 0..shift {
                    c = self.times_beta(&c);
                }
            } else {
                for _ in 0..(-shift) {
                    c = self.div_beta(&c).expect("β is a unit");
                }
            }
            return FieldElem { shift: 0, coeffs: c };
        }
        let mut c = coeffs;
        let mut e = shift;
        while let Some(q) = self.div_beta(&c) {
            c = q;
            e += 1;
        }
        FieldElem { shift: e, coeffs: c }
    }

    // ----- certified sign and floor -----

    /// Exact sign of the real embedding of `x`.
    pub fn sign(&self, x: &FieldElem) -> i32 {
        if x.is_zero() {
            return 0;
        }
        // β^shift > 0, so only the coefficient polynomial matters.
        if let Some(fast) = &self.fast {
            if let Some(s) = fast_sign(fast, &x.coeffs) {
                return s;
            }
        }
        let mut prec = 2 * FAST_PREC;
        loop {
            let enc = self.enclosure(prec);
            if let Some(s) = big_sign(&enc, &x.coeffs) {
                return s;
            }
            prec *= 2;
        }
    }

    pub fn cmp(&self, a: &FieldElem, b: &FieldElem) -> std::cmp::Ordering {
        self.sign(&self.sub(a, b)).cmp(&0)
    }

    /// The integer n with n ≤ x < n + 1.
    pub fn floor_of(&self, x: &FieldElem) -> i64 {
        self.floor_ratio(x, &self.one())
    }

    /// floor(num / den) for den > 0.
    pub fn floor_ratio(&self, num: &FieldElem, den: &FieldElem) -> i64 {
        debug_assert!(self.sign(den) > 0, "denominator must be positive");
        let guess = self.to_f64(num) / self.to_f64(den);
        let mut n = if guess.is_finite() { guess.floor() as i64 } else { 0 };
        // n ≤ num/den  iff  num − n·den ≥ 0
        let test = |n: i64| self.sign(&self.sub(num, &self.scale(den, n)));
        while test(n) < 0 {
            n -= 1;
        }
        while test(n + 1) >= 0 {
            n += 1;
        }
        n
    }

    /// floor(r · x + 1/2), the rounding used by the symmetric expansions.
    pub fn round_half_down(&self, r: &Ratio, x: &FieldElem) -> i64 {
        let num = self.add(&self.scale(&self.mul(&r.num, x), 2), &r.den);
        let den = self.scale(&r.den, 2);
        self.floor_ratio(&num, &den)
    }

    /// Sign of num/den − other for positive denominators.
    pub fn cmp_ratio(&self, a: &Ratio, b: &Ratio) -> std::cmp::Ordering {
        let l = self.mul(&a.num, &b.den);
        let r = self.mul(&b.num, &a.den);
        self.cmp(&l, &r)
    }

    /// Whether |x| < bound, where bound is a positive ratio.
    pub fn abs_lt_ratio(&self, x: &FieldElem, bound: &Ratio) -> bool {
        let ax = if self.sign(x) < 0 { self.neg(x) } else { x.clone() };
        let lhs = self.mul(&ax, &bound.den);
        self.sign(&self.sub(&bound.num, &lhs)) > 0
    }

    pub fn ratio(&self, num: FieldElem, den: FieldElem) -> Ratio {
        assert!(self.sign(&den) > 0, "ratio denominator must be positive");
        Ratio { num, den }
    }

    pub fn ratio_to_f64(&self, r: &Ratio) -> f64 {
        self.to_f64(&r.num) / self.to_f64(&r.den)
    }

    /// Floating-point value, for display and heuristics only.
    pub fn to_f64(&self, x: &FieldElem) -> f64 {
        let mut acc = 0.0;
        for c in x.coeffs.iter().rev() {
            acc = acc * self.approx + *c as f64;
        }
        acc * self.approx.powi(x.shift)
    }

    /// Certified upper bound on |x^(j)| for the j-th conjugate other than β.
    pub fn conjugate_abs_bound(&self, x: &FieldElem, j: usize) -> Result<BigRational> {
        let disks = self
            .conjugates
            .as_ref()
            .ok_or_else(|| Error::NotPisot("conjugates could not be certified".into()))?;
        let disk = disks
            .get(j)
            .ok_or_else(|| Error::Domain(format!("conjugate index {j} out of range")))?;
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        disk.abs_bound(&x.coeffs, x.shift)
            .ok_or_else(|| Error::Invariant("conjugate disk contains 0".into()))
    }

    // ----- enclosures -----

    fn refined_approx(&self) -> f64 {
        let enc = self.enclosure(FAST_PREC);
        let v: BigInt = (&enc.lo[1] + &enc.hi[1]) / 2;
        v.to_f64().unwrap() / 2f64.powi(FAST_PREC as i32)
    }

    /// Enclosure of β^i · 2^prec, refining the cached interval if needed.
    fn enclosure(&self, prec: u32) -> Enclosure {
        let mut cache = self.cache.lock().expect("refinement cache poisoned");
        if let Some(e) = cache.enclosures.iter().find(|e| e.prec >= prec) {
            return e.clone();
        }
        let d = self.degree as u32;
        let width_bits = prec + 8 + 2 * d;
        let mut iv = cache.interval.take().expect("interval present");
        refine(&self.low, &mut iv, width_bits);
        let (l, h) = (dyadic_floor(&iv.lo, iv.scale, prec), dyadic_ceil(&iv.hi, iv.scale, prec));
        cache.interval = Some(iv);
        let mut lo = Vec::with_capacity(self.degree);
        let mut hi = Vec::with_capacity(self.degree);
        let mut pl = BigInt::one() << prec;
        let mut ph = pl.clone();
        for _ in 0..self.degree {
            lo.push(pl.clone());
            hi.push(ph.clone());
            pl = (&pl * &l) >> prec;
            ph = ceil_shift(&(&ph * &h), prec);
        }
        let e = Enclosure { prec, lo, hi };
        cache.enclosures.push(e.clone());
        cache.enclosures.sort_by_key(|e| e.prec);
        e
    }

    /// Enclosure of β as rationals at roughly `bits` bits of precision.
    pub(crate) fn beta_bounds(&self, bits: u32) -> (BigRational, BigRational) {
        let enc = self.enclosure(bits);
        let den = BigInt::one() << enc.prec;
        let lo = if self.degree > 1 { enc.lo[1].clone() } else { enc.lo[0].clone() };
        let hi = if self.degree > 1 { enc.hi[1].clone() } else { enc.hi[0].clone() };
        (BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }
}

fn to_fast(enc: &Enclosure) -> Option<FastEnclosure> {
    let lo = enc.lo.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>()?;
    let hi = enc.hi.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>()?;
    Some(FastEnclosure { lo, hi })
}

fn fast_sign(enc: &FastEnclosure, c: &[i64]) -> Option<i32> {
    let mut lo: i128 = 0;
    let mut hi: i128 = 0;
    for (i, &ci) in c.iter().enumerate() {
        let ci = ci as i128;
        let (a, b) = if ci >= 0 {
            (ci.checked_mul(enc.lo[i])?, ci.checked_mul(enc.hi[i])?)
        } else {
            (ci.checked_mul(enc.hi[i])?, ci.checked_mul(enc.lo[i])?)
        };
        lo = lo.checked_add(a)?;
        hi = hi.checked_add(b)?;
    }
    if lo > 0 {
        Some(1)
    } else if hi < 0 {
        Some(-1)
    } else {
        None
    }
}

fn big_sign(enc: &Enclosure, c: &[i64]) -> Option<i32> {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (i, &ci) in c.iter().enumerate() {
        let b = BigInt::from(ci);
        if ci >= 0 {
            lo += &b * &enc.lo[i];
            hi += &b * &enc.hi[i];
        } else {
            lo += &b * &enc.hi[i];
            hi += &b * &enc.lo[i];
        }
    }
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}

fn ceil_shift(v: &BigInt, k: u32) -> BigInt {
    let den = BigInt::one() << k;
    v.div_ceil(&den)
}

fn dyadic_floor(num: &BigInt, scale: u32, prec: u32) -> BigInt {
    if scale >= prec {
        num >> (scale - prec)
    } else {
        num << (prec - scale)
    }
}

fn dyadic_ceil(num: &BigInt, scale: u32, prec: u32) -> BigInt {
    if scale >= prec {
        ceil_shift(num, scale - prec)
    } else {
        num << (prec - scale)
    }
}

/// Sign of p(m / 2^scale), p with integer coefficients lowest first.
fn sign_at_dyadic(low: &[i64], m: &BigInt, scale: u32) -> i32 {
    // 2^{scale d} p(m / 2^scale) = Σ a_i m^i 2^{scale (d - i)}
    let d = low.len() - 1;
    let mut acc = BigInt::zero();
    for (i, &a) in low.iter().enumerate().rev() {
        acc = acc * m + (BigInt::from(a) << (scale as usize * (d - i)));
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

/// Bisects until the interval is at scale ≥ `bits` with numerator width 1.
fn refine(low: &[i64], iv: &mut Interval, bits: u32) {
    let s_lo = sign_at_dyadic(low, &iv.lo, iv.scale);
    debug_assert!(s_lo != 0);
    loop {
        let width = &iv.hi - &iv.lo;
        if width <= BigInt::one() {
            if iv.scale >= bits {
                break;
            }
            iv.lo <<= 1;
            iv.hi <<= 1;
            iv.scale += 1;
            continue;
        }
        let mid = (&iv.lo + &iv.hi) >> 1;
        let s = sign_at_dyadic(low, &mid, iv.scale);
        assert!(s != 0, "irrational root hit exactly");
        if s == s_lo {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
}

fn has_integer_root(low: &[i64]) -> bool {
    let a0 = low[0].unsigned_abs();
    let eval = |k: i64| {
        let mut acc = BigInt::zero();
        for &a in low.iter().rev() {
            acc = acc * k + a;
        }
        acc.is_zero()
    };
    let mut k: u64 = 1;
    while k * k <= a0 {
        if a0 % k == 0 {
            for c in [k, a0 / k] {
                let c = c as i64;
                if eval(c) || eval(-c) {
                    return true;
                }
            }
        }
        k += 1;
    }
    false
}

/// Isolates the largest real root, which must exceed 1.
fn isolate_largest_root(low: &[i64], qp: &[BigRational]) -> Result<Interval> {
    let chain = poly::sturm_chain(qp);
    let bound: i64 = 1 + low.iter().map(|a| a.abs()).max().unwrap();
    let one = BigRational::one();
    let mut lo = one.clone();
    let mut hi = BigRational::from_integer(BigInt::from(bound));
    if poly::count_roots(&chain, &lo, &hi) == 0 {
        return Err(Error::NoRootAboveOne);
    }
    // Keep (lo, hi] containing the largest root and shrink until it is the only one.
    loop {
        let n = poly::count_roots(&chain, &lo, &hi);
        let mid = (&lo + &hi) * poly::half();
        if n == 1 {
            let plo = poly::eval(qp, &lo);
            let phi = poly::eval(qp, &hi);
            if !plo.is_zero() && !phi.is_zero() && plo.signum() != phi.signum() {
                break;
            }
        }
        if poly::count_roots(&chain, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Endpoints are dyadic: bring them over a common power of two.
    let scale = dyadic_scale(&lo).max(dyadic_scale(&hi));
    let to_num = |x: &BigRational| x.numer() * (BigInt::one() << scale) / x.denom();
    let lo_n = to_num(&lo);
    let hi_n = to_num(&hi);
    let mut iv = Interval { lo: lo_n, hi: hi_n, scale };
    refine(low, &mut iv, 40);
    Ok(iv)
}

fn dyadic_scale(x: &BigRational) -> u32 {
    let d = x.denom();
    let mut k = 0u32;
    while (BigInt::one() << k) < *d {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fields_are_pisot() {
        for (f, approx) in [
            (BetaField::golden(), 1.618033988749895),
            (BetaField::tribonacci(), 1.839286755214161),
            (BetaField::smallest_pisot(), 1.324717957244746),
        ] {
            assert!(f.is_pisot(), "{f:?}");
            assert!((f.approx() - approx).abs() < 1e-12);
            let (lo, hi) = f.isolating_interval();
            assert!(lo > BigRational::one() && lo < hi);
        }
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert!(matches!(BetaField::new(&[1, -3]), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(BetaField::new(&[2, -1, -1]), Err(Error::InvalidPolynomial(_))));
        assert!(matches!(BetaField::new(&[1, 0, 1]), Err(Error::NoRootAboveOne)));
        assert!(matches!(BetaField::new(&[1, 1, -1]), Err(Error::NoRootAboveOne)));
    }

    #[test]
    fn non_pisot_field() {
        // x² − 2x − 1 has roots 1 ± √2; the conjugate has modulus 0.414, so Pisot.
        assert!(BetaField::new(&[1, -2, -1]).unwrap().is_pisot());
        // x² − 3 has roots ±√3.
        assert!(!BetaField::new(&[1, 0, -3]).unwrap().is_pisot());
    }

    #[test]
    fn golden_arithmetic() {
        let f = BetaField::golden();
        let b = f.beta();
        assert_eq!(f.mul(&b, &b).coeffs(), &[1, 1]);
        let bm1 = f.sub(&b, &f.one());
        assert_eq!(f.mul(&bm1, &b), f.one());
        assert_eq!(f.beta_pow(-1), bm1);
    }

    #[test]
    fn tribonacci_cube() {
        let f = BetaField::tribonacci();
        let b = f.beta();
        assert_eq!(f.mul(&f.mul(&b, &b), &b).coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn non_unit_shift_mechanics() {
        // β = 1 + √2 ... constant term −1 is a unit; use x² − 2x − 2 (β = 1 + √3).
        let f = BetaField::new(&[1, -2, -2]).unwrap();
        assert!(!f.is_unit());
        let b = f.beta();
        let inv = f.beta_pow(-1);
        assert_eq!(f.mul(&b, &inv), f.one());
        assert_eq!(inv.shift(), -1);
        let half_b2 = f.mul(&inv, &f.from_int(2));
        // 2/β = β − 2 since β² = 2β + 2
        assert_eq!(half_b2, f.sub(&b, &f.from_int(2)));
    }

    #[test]
    fn sign_and_floor_examples() {
        let f = BetaField::golden();
        let b2 = f.mul(&f.beta(), &f.beta());
        assert_eq!(f.sign(&f.zero()), 0);
        assert_eq!(f.sign(&f.sub(&b2, &f.from_int(2))), 1);
        assert_eq!(f.sign(&f.sub(&f.from_int(2), &b2)), -1);
        assert_eq!(f.floor_of(&f.beta()), 1);
        assert_eq!(f.floor_of(&b2), 2);
        assert_eq!(f.floor_of(&f.from_int(3)), 3);
        assert_eq!(f.floor_of(&f.from_int(-3)), -3);
        assert_eq!(f.floor_of(&f.neg(&f.beta())), -2);
    }

    #[test]
    fn slow_path_sign() {
        // F_41 − F_40 β = (−1)^40 β^{-40}·... tiny positive value, beyond the fast enclosure.
        let f = BetaField::golden();
        let x = f.beta_pow(-40);
        assert!(x.coeffs()[0].abs() > 1 << 26);
        assert_eq!(f.sign(&x), 1);
        assert_eq!(f.sign(&f.neg(&x)), -1);
        let y = f.beta_pow(-41);
        assert_eq!(f.sign(&y), 1);
    }

    #[test]
    fn text_form_round_trip() {
        let f = BetaField::tribonacci();
        let x = f.from_coeffs(&[3, -1, 2], 0);
        let s = x.to_string();
        assert_eq!(s, "shift:0 coeffs:[3,-1,2]");
        assert_eq!(f.parse_elem(&s).unwrap(), x);
    }

    #[test]
    fn conjugate_bounds() {
        let f = BetaField::golden();
        assert_eq!(f.conjugate_abs_bound(&f.zero(), 0).unwrap(), BigRational::zero());
        let one = f.conjugate_abs_bound(&f.one(), 0).unwrap().to_f64().unwrap();
        assert!((1.0..1.0 + 1e-9).contains(&one));
        let b = f.conjugate_abs_bound(&f.beta(), 0).unwrap().to_f64().unwrap();
        assert!((0.61..=0.63).contains(&b), "{b}");
        let inv = f.conjugate_abs_bound(&f.beta_pow(-3), 0).unwrap().to_f64().unwrap();
        assert!((inv - 1.618f64.powi(3)).abs() < 0.01, "{inv}");
    }
}
