//! Weight statistics: Markov models of the digit windows of minimal
//! expansions, their exact stationary vectors, averaging experiments and the
//! scalar-multiplication cost table.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{Base, BetaField, QElem};
use crate::error::{Error, Result};
use crate::intsys::{big_g, System};

/// Transition probabilities between digit windows, exact in Q(β).
pub struct MarkovModel {
    pub base: Base,
    pub field: BetaField,
    pub state_labels: Vec<String>,
    pub matrix: Vec<Vec<QElem>>,
}

impl MarkovModel {
    pub fn size(&self) -> usize {
        self.state_labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.state_labels.iter().position(|l| l == label)
    }

    pub fn entry(&self, from: &str, to: &str) -> Option<&QElem> {
        Some(&self.matrix[self.index_of(from)?][self.index_of(to)?])
    }

    pub fn row_sum(&self, i: usize) -> QElem {
        self.matrix[i].iter().fold(self.field.q_zero(), |acc, x| self.field.q_add(&acc, x))
    }

    /// Windows whose first digit is nonzero.
    pub fn leading_nonzero(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| !self.state_labels[i].starts_with('0')).collect()
    }
}

fn window(len: usize, at: usize, digit: char) -> String {
    (0..len).map(|i| if i == at { digit } else { '0' }).collect()
}

/// The window chain of one base: a nonzero digit followed by a run of
/// zeros, with transition probabilities
///   1 0^k → 0^(k+1) with `p_zero`, 1 0^k → 0^k T with `p_flip`,
///   0^(k+1) → 0^(k+1) with `p_stay`, 0^(k+1) → 0^k ±1 with `p_start` each.
/// States are 1 0^k, 0 1 0^(k−1), …, 0^k 1, 0^(k+1), 0^k T, …, T 0^k.
fn window_chain(f: &BetaField, k: usize, p_zero: QElem, p_flip: QElem, p_stay: QElem, p_start: QElem) -> (Vec<String>, Vec<Vec<QElem>>) {
    let len = k + 1;
    let mut labels: Vec<String> = (0..len).map(|i| window(len, i, '1')).collect();
    labels.push("0".repeat(len));
    labels.extend((0..len).rev().map(|i| window(len, i, 'T')));
    let n = labels.len();
    let zero_state = len;
    let mut m = vec![vec![f.q_zero(); n]; n];
    // 0^i 1 0^(k−i) moves to 0^(i−1) 1 0^(k−i+1), and the mirror image.
    for i in 1..len {
        m[i][i - 1] = f.q_one();
        m[n - 1 - i][n - i] = f.q_one();
    }
    m[0][zero_state] = p_zero.clone();
    m[0][zero_state + 1] = p_flip.clone();
    m[n - 1][zero_state] = p_zero;
    m[n - 1][zero_state - 1] = p_flip;
    m[zero_state][zero_state - 1] = p_start.clone();
    m[zero_state][zero_state] = p_stay;
    m[zero_state][zero_state + 1] = p_start;
    (labels, m)
}

/// The limiting window chain of the minimal-weight expansions in `base`.
pub fn markov_model(base: Base) -> MarkovModel {
    let f = base.field();
    let inv = |k: i32| f.q_beta_pow(-k);
    let half = |x: QElem| f.q_mul(&x, &f.q_rational(BigRational::new(1.into(), 2.into())));
    let (labels, matrix) = match base {
        Base::Golden => {
            let p_zero = f.q_mul(&f.q_int(2), &inv(2));
            window_chain(&f, 2, p_zero, inv(3), inv(1), half(inv(2)))
        }
        Base::Tribonacci => {
            let b2 = f.q_beta_pow(2);
            let p_zero = f.q_mul(&f.q_sub(&b2, &f.q_one()), &inv(2));
            let p_start = half(f.q_mul(&f.q_sub(&f.q_beta_pow(1), &f.q_one()), &inv(1)));
            window_chain(&f, 1, p_zero, inv(2), inv(1), p_start)
        }
        Base::SmallestPisot => {
            let p_zero = f.q_mul(&f.q_int(2), &inv(3));
            window_chain(&f, 6, p_zero, inv(7), inv(1), half(inv(5)))
        }
    };
    MarkovModel { base, field: f, state_labels: labels, matrix }
}

/// Solves a·x = b over Q(β) by Gaussian elimination. None if singular.
fn solve(f: &BetaField, mut a: Vec<Vec<QElem>>, mut b: Vec<QElem>) -> Option<Vec<QElem>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = f.q_inv(&a[col][col])?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = f.q_mul(&a[r][col], &inv);
            for c in col..n {
                let t = f.q_mul(&factor, &a[col][c]);
                a[r][c] = f.q_sub(&a[r][c], &t);
            }
            let t = f.q_mul(&factor, &b[col]);
            b[r] = f.q_sub(&b[r], &t);
        }
    }
    Some((0..n).map(|i| f.q_div(&b[i], &a[i][i]).unwrap()).collect())
}

/// The left fixed vector π·P = π with Σπ = 1, exact in Q(β).
pub fn stationary(m: &MarkovModel) -> Result<Vec<QElem>> {
    let f = &m.field;
    let n = m.size();
    for i in 0..n {
        if m.row_sum(i) != f.q_one() {
            return Err(Error::Invariant(format!("row {} does not sum to 1", m.state_labels[i])));
        }
    }
    // (Pᵀ − I)π = 0 with the last equation replaced by Σπ = 1.
    let mut a: Vec<Vec<QElem>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let p = m.matrix[c][r].clone();
                    if r == c { f.q_sub(&p, &f.q_one()) } else { p }
                })
                .collect()
        })
        .collect();
    a[n - 1] = vec![f.q_one(); n];
    let mut b = vec![f.q_zero(); n];
    b[n - 1] = f.q_one();
    solve(f, a, b).ok_or_else(|| Error::Invariant("stationary vector is not unique".into()))
}

/// det(P − λI), exact.
pub fn char_poly_at(m: &MarkovModel, lambda: &QElem) -> QElem {
    let f = &m.field;
    let n = m.size();
    let mut a: Vec<Vec<QElem>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { f.q_sub(&m.matrix[r][c], lambda) } else { m.matrix[r][c].clone() }).collect())
        .collect();
    let mut det = f.q_one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else { return f.q_zero() };
        if piv != col {
            a.swap(col, piv);
            det = f.q_neg(&det);
        }
        det = f.q_mul(&det, &a[col][col]);
        let inv = f.q_inv(&a[col][col]).unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = f.q_mul(&a[r][col], &inv);
            for c in col..n {
                let t = f.q_mul(&factor, &a[col][c]);
                a[r][c] = f.q_sub(&a[r][c], &t);
            }
        }
    }
    det
}

/// det(P − λI) in floating point, for complex λ.
pub fn char_poly_at_approx(m: &MarkovModel, lambda: Complex64) -> Complex64 {
    let n = m.size();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let p = Complex64::new(m.field.q_to_f64(&m.matrix[r][c]), 0.0);
                    if r == c { p - lambda } else { p }
                })
                .collect()
        })
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).unwrap();
        if a[piv][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                let t = factor * a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Limiting frequency of nonzero digits: the stationary mass of the windows
/// that start with a nonzero digit.
pub fn nonzero_frequency(base: Base) -> Result<QElem> {
    let m = markov_model(base);
    let pi = stationary(&m)?;
    let f = &m.field;
    Ok(m.leading_nonzero().into_iter().fold(f.q_zero(), |acc, i| f.q_add(&acc, &pi[i])))
}

/// Least n with G_n ≥ m: every |N| ≤ m has a minimal expansion of length n.
pub fn length_for(sys: System, m: u64) -> usize {
    (0..).find(|&n| big_g(n, sys) >= m as i128).unwrap()
}

/// Minimal weights ‖N‖_U for N = 0..=m, by a dynamic program over the
/// leading digit: the least weight of a length-L word of value v is the
/// least over d of |d| plus that of a length-(L−1) word of value v − d·U_(L−1).
pub fn min_weights(sys: System, m: u64) -> Vec<u64> {
    let n = length_for(sys, m);
    let terms: Vec<i64> = (0..n).map(|i| sys.term(i) as i64).collect();
    let r: i64 = terms.iter().sum();
    let size = (2 * r + 1) as usize;
    let mut w = vec![u8::MAX; size];
    w[r as usize] = 0;
    for &u in &terms {
        let u = u as usize;
        let mut next = w.clone();
        for v in 0..size {
            let mut best = w[v];
            if v >= u && w[v - u] != u8::MAX {
                best = best.min(w[v - u] + 1);
            }
            if v + u < size && w[v + u] != u8::MAX {
                best = best.min(w[v + u] + 1);
            }
            next[v] = best;
        }
        w = next;
    }
    (0..=m).map(|k| w[r as usize + k as usize] as u64).collect()
}

/// Exact average of ‖N‖_U over −M ≤ N ≤ M.
pub fn average_weight_experiment(sys: System, m: u64) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::Domain("M must be at least 1".into()));
    }
    Ok(average_of(&min_weights(sys, m), m))
}

/// Average over −M ≤ N ≤ M of a weight that is even in N.
fn average_of(w: &[u64], m: u64) -> BigRational {
    let total: u64 = 2 * w[1..=m as usize].iter().sum::<u64>() + w[0];
    BigRational::new(BigInt::from(total), BigInt::from(2 * m + 1))
}

/// Empirical frequency of nonzero digits up to M: with G_n ≤ M < G_(n+1)
/// and k = ⌊n/2⌋, the growth (avg over |N| ≤ G_n − avg over |N| ≤ G_(n−k))/k
/// of the average weight per digit position. Differencing removes the
/// bounded boundary term that a plain average / log_β M still carries.
pub fn empirical_frequency(sys: System, m: u64) -> Result<f64> {
    let n = (1..).take_while(|&n| big_g(n, sys) <= m as i128).last().ok_or_else(|| Error::Domain("M below G_1".into()))?;
    let k = n / 2;
    if k == 0 {
        return Err(Error::Domain("M too small for a frequency estimate".into()));
    }
    let hi = big_g(n, sys) as u64;
    let lo = big_g(n - k, sys) as u64;
    let w = min_weights(sys, hi);
    let d = average_of(&w, hi) - average_of(&w, lo.max(1));
    Ok(d.to_f64().unwrap() / k as f64)
}

/// Weight of the binary non-adjacent form of n.
pub fn naf2_weight(n: i64) -> u64 {
    let mut n = n as i128;
    let mut w = 0;
    while n != 0 {
        if n & 1 != 0 {
            // Digit ±1 chosen so that the next bit becomes 0.
            let d = 2 - n.rem_euclid(4);
            n -= d;
            w += 1;
        }
        n /= 2;
    }
    w
}

/// Exact average of the binary NAF weight over −M ≤ N ≤ M.
pub fn naf2_average(m: u64) -> BigRational {
    let w: Vec<u64> = (0..=m as i64).map(naf2_weight).collect();
    average_of(&w, m)
}

/// Empirical average NAF weight per binary digit: (avg up to 2^n − avg up
/// to 2^(n−k))/k with 2^n ≤ M and k = ⌊n/2⌋.
pub fn naf2_frequency(m: u64) -> f64 {
    let n = 63 - m.max(2).leading_zeros() as u64;
    let k = (n / 2).max(1);
    let w: Vec<u64> = (0..=(1i64 << n)).map(naf2_weight).collect();
    let d = average_of(&w, 1 << n) - average_of(&w, 1 << (n - k));
    d.to_f64().unwrap() / k as f64
}

/// One numeration system in the cost comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CostRow {
    pub system: String,
    pub digits: String,
    pub beta: f64,
    /// Average weight as a multiple of log_β M, exact.
    pub weight_coefficient: String,
    /// Average weight as a multiple of log₂ M.
    pub weight_per_log2: f64,
    /// Length n ≈ log_β M as a multiple of log₂ M.
    pub length_per_log2: f64,
    /// n + r·(average weight), as a multiple of log₂ M.
    pub cost_per_log2: f64,
}

impl CostRow {
    /// Estimated number of additions for r multiples with scalars up to M.
    pub fn estimate(&self, m: f64) -> f64 {
        self.cost_per_log2 * m.log2()
    }
}

fn cost_row(system: &str, digits: &str, beta: f64, coefficient: String, c: f64, r: u32) -> CostRow {
    let length = 1.0 / beta.log2();
    CostRow {
        system: system.into(),
        digits: digits.into(),
        beta,
        weight_coefficient: coefficient,
        weight_per_log2: c * length,
        length_per_log2: length,
        cost_per_log2: (1.0 + r as f64 * c) * length,
    }
}

/// Costs of computing r multiples N·P with |N| ≤ M: the U_j·P are computed
/// once (n additions), then ‖N‖_U additions per multiple.
pub fn cost_table(r: u32) -> Result<Vec<CostRow>> {
    let mut rows = vec![
        cost_row("2^n", "{0,1}", 2.0, "1/2".into(), 0.5, r),
        cost_row("2^n", "{-1,0,1}", 2.0, "1/3".into(), 1.0 / 3.0, r),
    ];
    let g = BetaField::golden();
    let zeck = g.q_inv(&g.q_add(&g.q_beta_pow(2), &g.q_one())).unwrap();
    rows.push(cost_row("F", "{0,1}", g.approx(), format!("1/(β²+1) = {zeck}"), g.q_to_f64(&zeck), r));
    for sys in System::ALL {
        let c = nonzero_frequency(sys.base())?;
        let f = sys.field();
        rows.push(cost_row(&sys.to_string(), "{-1,0,1}", f.approx(), c.to_string(), f.q_to_f64(&c), r));
    }
    Ok(rows)
}

/// The row of a system with signed digits.
pub fn signed_row<'a>(rows: &'a [CostRow], system: &str) -> Option<&'a CostRow> {
    rows.iter().find(|row| row.system == system && row.digits == "{-1,0,1}")
}
