//! Certified disks around the complex conjugates of β.
//!
//! Every approximate root z of a degree-n polynomial p has a true root within
//! n·|p(z)/p'(z)|, since p'/p(z) = Σ 1/(z − ζ_k). If the n disks obtained this
//! way are pairwise disjoint, each holds exactly one root. The arithmetic on
//! the disk centers is exact over Q(i).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::field::BetaField;

#[derive(Clone, Debug, PartialEq)]
struct Cq {
    re: BigRational,
    im: BigRational,
}

impl Cq {
    fn zero() -> Cq {
        Cq { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn from_f64(z: Complex64) -> Cq {
        Cq {
            re: BigRational::from_f64(z.re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_f64(z.im).unwrap_or_else(BigRational::zero),
        }
    }

    fn sub(&self, o: &Cq) -> Cq {
        Cq { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Cq) -> Cq {
        Cq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational u ≥ √s.
fn sqrt_upper(s: &BigRational) -> BigRational {
    if s.is_zero() {
        return BigRational::zero();
    }
    let f = s.to_f64().unwrap_or(f64::MAX).sqrt();
    let mut margin = 1e-12;
    loop {
        let u = BigRational::from_f64(f * (1.0 + margin) + f64::MIN_POSITIVE).unwrap();
        if &(&u * &u) >= s {
            return u;
        }
        margin *= 16.0;
    }
}

/// Rational l ≤ √s, l ≥ 0.
fn sqrt_lower(s: &BigRational) -> BigRational {
    if !s.is_positive() {
        return BigRational::zero();
    }
    let f = s.to_f64().unwrap_or(0.0).sqrt();
    let mut margin = 1e-12;
    while margin < 1.0 {
        let l = BigRational::from_f64(f * (1.0 - margin)).unwrap_or_else(BigRational::zero);
        if &(&l * &l) <= s {
            return l;
        }
        margin *= 16.0;
    }
    BigRational::zero()
}

fn eval_c(coeffs: &[BigRational], z: &Cq) -> Cq {
    let mut acc = Cq::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// A disk known to contain exactly one conjugate of β.
#[derive(Clone, Debug)]
pub(crate) struct ConjugateDisk {
    center: Cq,
    radius: BigRational,
    approx: Complex64,
}

impl ConjugateDisk {
    pub(crate) fn approx(&self) -> Complex64 {
        self.approx
    }

    /// Upper bound on the modulus of the conjugate.
    pub(crate) fn modulus_upper(&self) -> BigRational {
        sqrt_upper(&self.center.norm_sqr()) + &self.radius
    }

    fn modulus_lower(&self) -> BigRational {
        sqrt_lower(&self.center.norm_sqr()) - &self.radius
    }

    /// Upper bound on |β'^shift · Σ c_i β'^i| over the disk.
    pub(crate) fn abs_bound(&self, coeffs: &[i64], shift: i32) -> Option<BigRational> {
        let d = coeffs.len();
        // Taylor coefficients of c around the center.
        let mut total = BigRational::zero();
        let mut rk = BigRational::one();
        for k in 0..d {
            let mut t: Vec<BigRational> = Vec::with_capacity(d - k);
            let mut binom = BigInt::one();
            for (i, &c) in coeffs.iter().enumerate().skip(k) {
                if i > k {
                    binom = binom * BigInt::from(i) / BigInt::from(i - k);
                }
                t.push(BigRational::from_integer(&binom * c));
            }
            let v = eval_c(&t, &self.center);
            total += sqrt_upper(&v.norm_sqr()) * &rk;
            rk = &rk * &self.radius;
        }
        let m = if shift >= 0 {
            self.modulus_upper()
        } else {
            let l = self.modulus_lower();
            if !l.is_positive() {
                return None;
            }
            l
        };
        let mut pw = BigRational::one();
        for _ in 0..shift.unsigned_abs() {
            pw = &pw * &m;
        }
        Some(if shift >= 0 { total * pw } else { total / pw })
    }
}

fn horner_f(low: &[f64], z: Complex64) -> Complex64 {
    low.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// All complex roots, by simultaneous Weierstrass iteration and Newton polish.
fn durand_kerner(low: &[i64]) -> Vec<Complex64> {
    let n = low.len() - 1;
    let p: Vec<f64> = low.iter().map(|&c| c as f64).collect();
    let dp: Vec<f64> = p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = horner_f(&p, z[i]) / den;
            if step.is_finite() {
                z[i] -= step;
                delta = delta.max(step.norm());
            }
        }
        if delta < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let d = horner_f(&dp, *zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner_f(&p, *zi) / d;
            if step.is_finite() {
                *zi -= step;
            }
        }
        if zi.im.abs() < 1e-300 {
            zi.im = 0.0;
        }
    }
    z
}

/// Disks for every conjugate other than β, ordered by decreasing modulus.
/// Returns None if the disks could not be separated.
pub(crate) fn certify(low: &[i64], field: &BetaField) -> Option<Vec<ConjugateDisk>> {
    let n = low.len() - 1;
    let roots = durand_kerner(low);
    let qp: Vec<BigRational> = low.iter().map(|&c| int(c)).collect();
    let qdp: Vec<BigRational> =
        qp.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect();
    let mut disks = Vec::with_capacity(n);
    for &z in &roots {
        let zc = Cq::from_f64(z);
        let pv = eval_c(&qp, &zc);
        let dv = eval_c(&qdp, &zc);
        let dl = sqrt_lower(&dv.norm_sqr());
        if !dl.is_positive() {
            return None;
        }
        let radius = int(n as i64) * sqrt_upper(&pv.norm_sqr()) / dl;
        disks.push(ConjugateDisk { center: zc, radius, approx: z });
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = sqrt_lower(&disks[i].center.sub(&disks[j].center).norm_sqr());
            if gap <= &disks[i].radius + &disks[j].radius {
                return None;
            }
        }
    }
    // The disk of β: nearest center, and it must contain the real enclosure.
    let beta = field.approx();
    let bi = (0..n)
        .min_by(|&a, &b| {
            let da = (roots[a] - beta).norm();
            let db = (roots[b] - beta).norm();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let (bl, bh) = field.beta_bounds(160);
    let r2 = &disks[bi].radius * &disks[bi].radius;
    for e in [bl, bh] {
        let off = Cq { re: e, im: BigRational::zero() }.sub(&disks[bi].center);
        if off.norm_sqr() > r2 {
            return None;
        }
    }
    let mut rest: Vec<ConjugateDisk> =
        disks.into_iter().enumerate().filter(|(i, _)| *i != bi).map(|(_, d)| d).collect();
    rest.sort_by(|a, b| {
        b.approx
            .norm()
            .partial_cmp(&a.approx.norm())
            .unwrap()
            .then(b.approx.im.partial_cmp(&a.approx.im).unwrap())
    });
    Some(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_bounds_bracket() {
        for s in [2i64, 3, 10, 1_000_003] {
            let q = int(s);
            let u = sqrt_upper(&q);
            let l = sqrt_lower(&q);
            assert!(&u * &u >= q && &l * &l <= q && l < u);
        }
    }

    #[test]
    fn roots_of_cubic() {
        let r = durand_kerner(&[-1, -1, 0, 1]);
        assert_eq!(r.len(), 3);
        for z in r {
            assert!(horner_f(&[-1.0, -1.0, 0.0, 1.0], z).norm() < 1e-12);
        }
    }
}
