//! Linear numeration systems F (Fibonacci), T (Tribonacci) and S (a
//! companion of the smallest Pisot number): values, greedy and unique
//! minimal forms, the g/G bounds and recognizers of minimal-weight words.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::{Base, BetaField, FieldElem};
use crate::automata::{self, Dfa, LetterTransducer};
use crate::error::{Error, Result};
use crate::minweight::{self, state_weight};
use crate::words::{value_beta, DigitWord};

/// One of the three integer numeration systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    F,
    T,
    S,
}

const TERM_LIMIT: usize = 160;

impl System {
    pub const ALL: [System; 3] = [System::F, System::T, System::S];

    pub fn base(self) -> Base {
        match self {
            System::F => Base::Golden,
            System::T => Base::Tribonacci,
            System::S => Base::SmallestPisot,
        }
    }

    pub fn field(self) -> BetaField {
        self.base().field()
    }

    pub fn initial_terms(self) -> &'static [i128] {
        match self {
            System::F => &[1, 2],
            System::T => &[1, 2, 4],
            System::S => &[1, 2, 3, 4],
        }
    }

    /// Coefficients c_k of U_n = Σ c_k U_(n−k), k = 1, 2, …
    pub fn recurrence(self) -> &'static [i128] {
        match self {
            System::F => &[1, 1],
            System::T => &[1, 1, 1],
            System::S => &[0, 1, 1],
        }
    }

    /// U_n.
    pub fn term(self, n: usize) -> i128 {
        assert!(n < TERM_LIMIT, "term index {n} too large");
        let init = self.initial_terms();
        if n < init.len() {
            return init[n];
        }
        let rec = self.recurrence();
        let mut u: Vec<i128> = init.to_vec();
        while u.len() <= n {
            let m = u.len();
            let v = rec.iter().enumerate().map(|(k, &c)| c * u[m - 1 - k]).sum();
            u.push(v);
        }
        u[n]
    }

    /// Digits that may not occur, and the subset of them allowed as a suffix.
    pub fn forbidden(self) -> (Vec<DigitWord>, Vec<DigitWord>) {
        let spec = crate::expand::TauSpec::builtin(self.base(), false);
        let exceptions = match self {
            System::S => ["10000001", "1000001", "100000T", "10000T"]
                .iter()
                .flat_map(|s| {
                    let w = DigitWord::parse(s).unwrap();
                    [w.negate(), w]
                })
                .collect(),
            _ => Vec::new(),
        };
        (spec.forbidden, exceptions)
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<System> {
        match s {
            "F" | "f" => Ok(System::F),
            "T" | "t" => Ok(System::T),
            "S" | "s" => Ok(System::S),
            _ => Err(Error::Parse { text: s.to_string(), reason: "system must be F, T or S".into() }),
        }
    }
}

/// U_n for n = 0..count.
pub fn u_terms(sys: System, count: usize) -> Vec<i128> {
    (0..count).map(|n| sys.term(n)).collect()
}

/// Σ x_j U_(n−j) for a word without radix point.
pub fn value_u(w: &DigitWord, sys: System) -> Result<i128> {
    if w.point.is_some() {
        return Err(Error::PointInIntegerWord);
    }
    let n = w.len();
    let mut acc: i128 = 0;
    for (j, &d) in w.digits.iter().enumerate() {
        let t = (d as i128)
            .checked_mul(sys.term(n - 1 - j))
            .and_then(|x| acc.checked_add(x))
            .ok_or_else(|| Error::Invariant("coefficient overflow".into()))?;
        acc = t;
    }
    Ok(acc)
}

/// Greedy representation of N ≥ 0 over {0, 1}.
pub fn greedy_int(n: i128, sys: System) -> Result<DigitWord> {
    if n < 0 {
        return Err(Error::Domain(format!("greedy form needs N ≥ 0, got {n}")));
    }
    let mut len = 0;
    while sys.term(len) <= n {
        len += 1;
    }
    let mut r = n;
    let mut digits = Vec::with_capacity(len);
    for j in (0..len).rev() {
        let d = r / sys.term(j);
        r -= d * sys.term(j);
        digits.push(d as i32);
    }
    debug_assert_eq!(r, 0);
    Ok(DigitWord::new(digits))
}

/// (y_1…y_k)^(j/k): ⌊j/k⌋ copies followed by a prefix, j letters in all.
fn frac_pow(w: &str, j: usize) -> String {
    w.chars().cycle().take(j).collect()
}

/// g_(n+1) and G_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundPair {
    pub n: usize,
    /// Smallest positive integer with a compliant form of length n + 1.
    pub g_next: i128,
    /// Largest integer with a compliant form of length n.
    pub big_g: i128,
}

/// The words whose values are g_(n+1) and G_n.
pub fn bound_words(n: usize, sys: System) -> (DigitWord, DigitWord) {
    assert!(n >= 1);
    let (g, big) = match sys {
        System::F => (format!("1{}", frac_pow("00T0", n)), frac_pow("1000", n)),
        System::T => (format!("1{}", frac_pow("0T0", n)), frac_pow("100", n)),
        System::S => {
            let q = |k: usize| frac_pow("000000T0", 8 * ((n - k) / 8));
            let p = |k: usize| frac_pow("10000000", 8 * ((n - k) / 8));
            match n % 8 {
                1..=4 => (format!("1{}", frac_pow("000000T0", n)), frac_pow("10000000", n)),
                5 => (format!("1{}0000T", q(5)), format!("{}10000", p(5))),
                6 => (format!("1{}00000T", q(6)), format!("{}100000", p(6))),
                7 => (format!("1{}000000T", q(7)), format!("{}1000001", p(7))),
                _ => (format!("1{}", q(0)), format!("{}10000001", frac_pow("10000000", n - 8))),
            }
        }
    };
    (DigitWord::parse(&g).unwrap(), DigitWord::parse(&big).unwrap())
}

pub fn bounds_gg(n: usize, sys: System) -> BoundPair {
    let (g, big) = bound_words(n, sys);
    BoundPair { n, g_next: value_u(&g, sys).unwrap(), big_g: value_u(&big, sys).unwrap() }
}

/// G_n, with G_0 = 0.
pub fn big_g(n: usize, sys: System) -> i128 {
    if n == 0 {
        0
    } else {
        bounds_gg(n, sys).big_g
    }
}

/// Automaton of the words avoiding the system's forbidden factors, where the
/// exceptional factors may only end at the last letter.
pub struct Compliance {
    pub dfa: Dfa,
    /// Per remaining length L and state: least and largest value of a
    /// compliant continuation of length L, weighted by U_(L−1), …, U_0.
    ranges: Vec<Vec<Option<(i128, i128)>>>,
    sys: System,
}

impl Compliance {
    pub fn new(sys: System) -> Compliance {
        let (forbidden, exceptions) = sys.forbidden();
        let alphabet = [-1, 0, 1];
        let mut d = Dfa::empty(&alphabet);
        // States are the longest suffix of the input that is a proper prefix
        // of a pattern; `ended` is reached on an exceptional factor.
        let mut ids: HashMap<Vec<i32>, usize> = HashMap::new();
        let mut states: Vec<Vec<i32>> = vec![Vec::new()];
        ids.insert(Vec::new(), d.add_state("ε", true));
        let ended = d.add_state("end", true);
        let is_prefix = |w: &[i32]| forbidden.iter().any(|p| p.len() > w.len() && p.digits.starts_with(w));
        let mut i = 0;
        while i < states.len() {
            let cur = states[i].clone();
            let from = ids[&cur];
            for &a in &alphabet {
                let mut w = cur.clone();
                w.push(a);
                let hit = forbidden.iter().find(|p| w.ends_with(&p.digits));
                if let Some(p) = hit {
                    if exceptions.contains(p) {
                        d.set_edge(from, a, ended);
                    }
                    continue;
                }
                let k = (0..=w.len()).find(|&k| is_prefix(&w[k..])).unwrap();
                let next = w[k..].to_vec();
                let to = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = d.add_state(crate::words::render_digits(&next), true);
                        ids.insert(next.clone(), t);
                        states.push(next);
                        t
                    }
                };
                d.set_edge(from, a, to);
            }
            i += 1;
        }
        let n = d.num_states();
        Compliance { dfa: d, ranges: vec![vec![Some((0, 0)); n]], sys }
    }

    pub fn accepts(&self, w: &[i32]) -> bool {
        self.dfa.accepts(w)
    }

    fn range(&mut self, len: usize, q: usize) -> Option<(i128, i128)> {
        while self.ranges.len() <= len {
            let l = self.ranges.len();
            let u = self.sys.term(l - 1);
            let row: Vec<Option<(i128, i128)>> = (0..self.dfa.num_states())
                .map(|q| {
                    let mut best: Option<(i128, i128)> = None;
                    for a in [-1, 0, 1] {
                        let Some(q2) = self.dfa.step(q, a) else { continue };
                        let Some((lo, hi)) = self.ranges[l - 1][q2] else { continue };
                        let c = a as i128 * u;
                        best = Some(match best {
                            None => (lo + c, hi + c),
                            Some((x, y)) => (x.min(lo + c), y.max(hi + c)),
                        });
                    }
                    best
                })
                .collect();
            self.ranges.push(row);
        }
        self.ranges[len][q]
    }

    /// Extremal values of compliant length-n words starting with 1.
    pub fn extremes(&mut self, n: usize) -> Option<(i128, i128)> {
        let q = self.dfa.step(self.dfa.initial()?, 1)?;
        let u = self.sys.term(n - 1);
        self.range(n - 1, q).map(|(lo, hi)| (lo + u, hi + u))
    }

    /// Digits completing `prefix` to a compliant word of total length
    /// `len` and value `target`, where `rest` is the value still missing.
    fn complete(&mut self, q: usize, len: usize, rest: i128, out: &mut Vec<i32>) -> bool {
        if len == 0 {
            return rest == 0;
        }
        let u = self.sys.term(len - 1);
        for a in [0, 1, -1] {
            let Some(q2) = self.dfa.step(q, a) else { continue };
            let r2 = rest - a as i128 * u;
            match self.range(len - 1, q2) {
                Some((lo, hi)) if lo <= r2 && r2 <= hi => {}
                _ => continue,
            }
            out.push(a);
            if self.complete(q2, len - 1, r2, out) {
                return true;
            }
            out.pop();
        }
        false
    }

    /// The unique compliant word with nonzero leading digit and value n.
    pub fn minform(&mut self, n: i128) -> Result<DigitWord> {
        if n == 0 {
            return Ok(DigitWord::new(Vec::new()));
        }
        let mut len = 1;
        while big_g(len, self.sys) < n.abs() {
            len += 1;
        }
        let s = n.signum() as i32;
        let q0 = self.dfa.initial().unwrap();
        let q = self.dfa.step(q0, s).unwrap();
        let mut out = vec![s];
        if !self.complete(q, len - 1, n - s as i128 * self.sys.term(len - 1), &mut out) {
            return Err(Error::Invariant(format!("no compliant form of {n} with length {len}")));
        }
        Ok(DigitWord::new(out))
    }
}

/// The unique compliant minimal-weight representation of N.
pub fn unique_minform(n: i128, sys: System) -> Result<DigitWord> {
    Compliance::new(sys).minform(n)
}

/// ‖N‖_U, the weight of the unique minimal form.
pub fn int_min_weight(n: i128, sys: System) -> Result<u64> {
    Ok(unique_minform(n, sys)?.weight())
}

/// Exact minimum weight over {−1, 0, 1}-words of each length ≤ L, per value.
pub struct IntOracle {
    sys: System,
    /// levels[l][N] = (least weight, leading digit) over words of length l.
    levels: Vec<HashMap<i128, (u64, i32)>>,
}

impl IntOracle {
    pub fn new(sys: System) -> IntOracle {
        IntOracle { sys, levels: vec![HashMap::from([(0, (0, 0))])] }
    }

    fn grow(&mut self, len: usize) {
        while self.levels.len() <= len {
            let l = self.levels.len();
            let u = self.sys.term(l - 1);
            let mut next: HashMap<i128, (u64, i32)> = HashMap::new();
            for (&v, &(w, _)) in &self.levels[l - 1] {
                for d in [0i32, 1, -1] {
                    let key = v + d as i128 * u;
                    let cand = (w + d.unsigned_abs() as u64, d);
                    next.entry(key).and_modify(|e| {
                        if cand.0 < e.0 {
                            *e = cand
                        }
                    })
                    .or_insert(cand);
                }
            }
            self.levels.push(next);
        }
    }

    /// Least weight of a word of length ≤ len with value n.
    pub fn min_weight(&mut self, n: i128, len: usize) -> Option<u64> {
        self.grow(len);
        self.levels[len].get(&n).map(|e| e.0)
    }

    /// A lightest word of length ≤ len and value n.
    pub fn lightest(&mut self, n: i128, len: usize) -> Option<DigitWord> {
        self.grow(len);
        self.levels[len].get(&n)?;
        let mut digits = Vec::with_capacity(len);
        let mut v = n;
        for l in (1..=len).rev() {
            let (_, d) = self.levels[l][&v];
            digits.push(d);
            v -= d as i128 * self.sys.term(l - 1);
        }
        let lead = digits.iter().take_while(|&&d| d == 0).count();
        Some(DigitWord::new(digits[lead..].to_vec()))
    }

    /// A strictly lighter word of length ≤ len(x) + slack with the same value.
    pub fn lighter(&mut self, x: &DigitWord, slack: usize) -> Result<Option<DigitWord>> {
        let n = value_u(x, self.sys)?;
        let len = x.len() + slack;
        match self.min_weight(n, len) {
            Some(w) if w < x.weight() => Ok(self.lightest(n, len)),
            _ => Ok(None),
        }
    }
}

/// A lighter word with the same U-value, searching lengths ≤ len(x) + slack.
pub fn int_heavy_oracle(x: &DigitWord, sys: System, slack: usize) -> Result<Option<DigitWord>> {
    IntOracle::new(sys).lighter(x, slack)
}

/// φ(β^i) = U_i for i ≥ 1, extended linearly to Z[β]; returns the values
/// φ(1), φ(β), …, φ(β^(d−1)).
fn phi_basis(sys: System, f: &BetaField) -> Vec<i128> {
    let d = f.degree();
    // β^d = Σ r_i β^i with r the negated low coefficients of the polynomial.
    let p = f.min_poly();
    let r: Vec<i128> = (0..d).map(|i| -(p[d - i] as i128)).collect();
    let mut basis: Vec<i128> = (0..d).map(|i| if i == 0 { 0 } else { sys.term(i) }).collect();
    let rest: i128 = (1..d).map(|i| r[i] * sys.term(i)).sum();
    assert!(r[0].abs() == 1, "unit base expected");
    basis[0] = (sys.term(d) - rest) * r[0];
    basis
}

/// U-value of a word from its β-value and last letter:
/// N = φ(value) + (U_0 − φ(1))·last.
pub fn int_value_from_beta(s: &FieldElem, last: i32, sys: System, f: &BetaField) -> i128 {
    let basis = phi_basis(sys, f);
    let coeffs = normalize(s, f);
    let phi: i128 = coeffs.iter().zip(&basis).map(|(&c, &b)| c as i128 * b).sum();
    phi + (sys.term(0) - basis[0]) * last as i128
}

/// Coefficients of s on 1, β, …, β^(d−1).
fn normalize(s: &FieldElem, f: &BetaField) -> Vec<i64> {
    let mut out = vec![0i64; f.degree()];
    if s.shift() == 0 {
        for (o, &c) in out.iter_mut().zip(s.coeffs()) {
            *o = c;
        }
        return out;
    }
    // Rebuild from scratch by Horner on the coefficient list.
    let mut acc = f.zero();
    for &c in s.coeffs().iter().rev() {
        acc = f.add(&f.mul_beta_pow(&acc, 1), &f.from_int(c));
    }
    let acc = f.mul_beta_pow(&acc, s.shift());
    assert_eq!(acc.shift(), 0, "non-unit base");
    for (o, &c) in out.iter_mut().zip(acc.coeffs()) {
        *o = c;
    }
    out
}

/// Carries of x − y reachable from 0 with digit differences in [−2, 2],
/// kept while |s|·(β−1) < 2·bound_scale, with their weights w_s.
struct IntCarries {
    f: BetaField,
    states: Vec<FieldElem>,
    index: HashMap<FieldElem, usize>,
    weights: Vec<i64>,
    big_w: i64,
}

const EMAX: i64 = 2;

impl IntCarries {
    fn new(sys: System, bound_scale: i64) -> Result<IntCarries> {
        let f = sys.field();
        let bound = f.from_int(EMAX * bound_scale);
        let beta_minus_one = f.sub(&f.beta(), &f.one());
        let inside = |s: &FieldElem| {
            let a = if f.sign(s) < 0 { f.neg(s) } else { s.clone() };
            f.cmp(&f.mul(&a, &beta_minus_one), &bound).is_lt()
        };
        let mut states = vec![f.zero()];
        let mut index: HashMap<FieldElem, usize> = HashMap::from([(f.zero(), 0)]);
        let mut i = 0;
        let cap = minweight::max_states();
        while i < states.len() {
            let bs = f.mul_beta_pow(&states[i], 1);
            for e in -EMAX..=EMAX {
                let t = f.add(&bs, &f.from_int(e));
                if inside(&t) && !index.contains_key(&t) {
                    if states.len() >= cap {
                        return Err(Error::StateLimit { what: "carry states", limit: cap });
                    }
                    index.insert(t.clone(), states.len());
                    states.push(t);
                }
            }
            i += 1;
        }
        let weights: Vec<i64> =
            states.iter().map(|s| state_weight(s, &f).map(|w| w as i64)).collect::<Result<_>>()?;
        let big_w = *weights.iter().max().unwrap();
        Ok(IntCarries { f, states, index, weights, big_w })
    }

    fn next(&self, s: usize, e: i64) -> Option<usize> {
        let t = self.f.add(&self.f.mul_beta_pow(&self.states[s], 1), &self.f.from_int(e));
        self.index.get(&t).copied()
    }

    /// Lowest weight difference kept: δ > −W − B with B = 2.
    fn delta_floor(&self) -> i64 {
        -self.big_w - 1
    }
}

/// The transducer whose inputs are the U-heavy words: (s, δ, last) states
/// in the window −W−B < δ ≤ w_s, terminal when δ < 0 and the difference
/// has U-value 0.
pub fn build_int_weight_transducer(sys: System, bound_scale: i64) -> Result<LetterTransducer> {
    let c = IntCarries::new(sys, bound_scale)?;
    let alphabet = minweight::digit_alphabet(2);
    // Only S needs the last letter difference.
    let lasts: Vec<i64> = if sys == System::S { (-EMAX..=EMAX).collect() } else { vec![0] };
    let mut t = LetterTransducer::new(&alphabet, &alphabet);
    let mut ids: HashMap<(usize, i64, i64), usize> = HashMap::new();
    let mut keys = Vec::new();
    for (s, &w) in c.weights.iter().enumerate() {
        for delta in c.delta_floor()..=w {
            for &l in &lasts {
                ids.insert((s, delta, l), keys.len());
                keys.push((s, delta, l));
                t.add_state(format!("({}, {delta}, {l})", c.states[s]));
            }
        }
    }
    for (q, &(s, delta, l)) in keys.iter().enumerate() {
        for &a in &alphabet {
            for &b in &alphabet {
                let e = (a - b) as i64;
                let Some(si) = c.next(s, e) else { continue };
                let d2 = delta + b.abs() as i64 - a.abs() as i64;
                let l2 = if sys == System::S { e } else { 0 };
                if let Some(&q2) = ids.get(&(si, d2, l2)) {
                    t.add_edge(q, a, b, q2);
                }
            }
        }
        if delta < 0 && int_value_from_beta(&c.states[s], l as i32, sys, &c.f) == 0 {
            t.set_terminal(q, true);
        }
    }
    // Left padding of the input with zeros.
    let start = ids[&(0, 0, 0)];
    t.set_initial(start, true);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        let next: Vec<usize> = t.edges_from(q).iter().filter(|e| e.0 == 0).map(|e| e.2).collect();
        for q2 in next {
            if !t.is_initial(q2) {
                t.set_initial(q2, true);
                stack.push(q2);
            }
        }
    }
    Ok(t)
}

/// Subsets of (carry, least δ) for runs of x − y, where y is a lighter
/// candidate on {−1, 0, 1}. δ is clamped at the bottom of its window
/// instead of cut off: every closing run is still a genuine lighter pair,
/// and a smaller δ then closes more, so only the least δ per carry matters.
struct PairSearch {
    succ: Vec<[Option<usize>; 5]>,
    closes: Vec<[bool; 5]>,
    weights: Vec<i64>,
    floor: i64,
    best: Vec<i64>,
    start: Subset,
}

type Subset = Vec<(u32, i8)>;

impl PairSearch {
    /// closes[s][e + 2]: a run that reaches carry s with last digit
    /// difference e and δ < 0 is a lighter pair.
    fn new(c: &IntCarries, closes: Vec<[bool; 5]>) -> PairSearch {
        let n = c.states.len();
        let succ: Vec<[Option<usize>; 5]> =
            (0..n).map(|s| std::array::from_fn(|i| c.next(s, i as i64 - EMAX))).collect();
        let floor = c.delta_floor();
        // Largest δ at a carry from which a lighter pair can still close.
        let mut best = vec![i64::MIN; n];
        loop {
            let mut changed = false;
            for s in 0..n {
                let mut cont = i64::MIN;
                for a in -1i64..=1 {
                    for b in -1i64..=1 {
                        let i = (a - b + EMAX) as usize;
                        let Some(s2) = succ[s][i] else { continue };
                        let mut m = best[s2];
                        if closes[s2][i] {
                            m = m.max(-1);
                        }
                        let m = m.min(c.weights[s2]);
                        if m >= floor {
                            cont = cont.max(m - b.abs() + a.abs());
                        }
                    }
                }
                let cont = cont.min(c.weights[s]);
                if cont > best[s] {
                    best[s] = cont;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut p = PairSearch { succ, closes, weights: c.weights.clone(), floor, best, start: Vec::new() };
        // Left padding: everything reachable from (0, 0) on input 0. Padding
        // alone closes nothing since δ stays ≥ 0.
        let mut start: Subset = vec![(0, 0)];
        loop {
            let (next, _) = p.step(&start, 0);
            let merged = merge(&start, &next);
            if merged == start {
                break;
            }
            start = merged;
        }
        p.start = start;
        p
    }

    /// Successor subset on input a, and whether some run closed.
    fn step(&self, set: &Subset, a: i32) -> (Subset, bool) {
        let mut out: HashMap<u32, i8> = HashMap::new();
        let mut closed = false;
        for &(s, d) in set {
            for b in -1i32..=1 {
                let i = (a - b + 2) as usize;
                let Some(s2) = self.succ[s as usize][i] else { continue };
                let d2 = (d as i64 + b.abs() as i64 - a.abs() as i64).max(self.floor);
                if d2 > self.weights[s2] {
                    continue;
                }
                if d2 < 0 && self.closes[s2][i] {
                    closed = true;
                }
                if d2 <= self.best[s2] {
                    let slot = out.entry(s2 as u32).or_insert(i8::MAX);
                    *slot = (*slot).min(d2 as i8);
                }
            }
        }
        let mut v: Subset = out.into_iter().collect();
        v.sort_unstable();
        (v, closed)
    }
}

fn merge(x: &Subset, y: &Subset) -> Subset {
    let mut m: HashMap<u32, i8> = x.iter().copied().collect();
    for &(s, d) in y {
        let slot = m.entry(s).or_insert(i8::MAX);
        *slot = (*slot).min(d);
    }
    let mut v: Subset = m.into_iter().collect();
    v.sort_unstable();
    v
}

/// Words x such that x without its last letter has no factor w admitting a
/// lighter y on {−1, 0, 1} with the same β-value, aligned so that y ends
/// where w ends. Replacing such a factor leaves the U-value unchanged
/// because the difference is followed by at least one zero, so every
/// minimal-weight U-expansion lies in this language.
pub fn interior_heavy_free(sys: System) -> Result<Dfa> {
    let c = IntCarries::new(sys, 1)?;
    let closes = (0..c.states.len()).map(|s| [s == 0; 5]).collect();
    let p = PairSearch::new(&c, closes);
    let alphabet = minweight::digit_alphabet(2);
    let cap = minweight::max_states();
    let mut d = Dfa::empty(&alphabet);
    let mut index: HashMap<Subset, usize> = HashMap::from([(p.start.clone(), d.add_state("0", true))]);
    let mut queue = std::collections::VecDeque::from([(p.start.clone(), 0)]);
    // C · A ∪ {ε} with C the factor-free words, using that C is prefix-closed.
    let sink = d.add_state("last", true);
    while let Some((set, from)) = queue.pop_front() {
        for &a in &alphabet {
            let (next, closed) = p.step(&set, a);
            if closed {
                d.set_edge(from, a, sink);
                continue;
            }
            let next = merge(&next, &p.start);
            let to = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if d.num_states() >= cap {
                        return Err(Error::StateLimit { what: "factor automaton", limit: cap });
                    }
                    let t = d.add_state(format!("{}", d.num_states()), true);
                    index.insert(next.clone(), t);
                    queue.push_back((next, t));
                    t
                }
            };
            d.set_edge(from, a, to);
        }
    }
    Ok(automata::minimize(&d))
}

/// Minimal-weight U-expansions over {−1, 0, 1}: the words of
/// [`interior_heavy_free`] that are not inputs of a lighter equal-valued
/// pair with U-value difference 0.
pub fn build_int_minweight_automaton(sys: System) -> Result<Dfa> {
    build_int_minweight_automaton_scaled(sys, 1)
}

/// Cached recognizer for one of the three systems.
pub fn builtin_int_minweight_automaton(sys: System) -> &'static Dfa {
    static CELLS: [OnceLock<Dfa>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let i = System::ALL.iter().position(|&x| x == sys).unwrap();
    CELLS[i].get_or_init(|| build_int_minweight_automaton(sys).expect("built-in system"))
}

pub fn build_int_minweight_automaton_scaled(sys: System, bound_scale: i64) -> Result<Dfa> {
    let r = interior_heavy_free(sys)?;
    let c = IntCarries::new(sys, bound_scale)?;
    let closes = (0..c.states.len())
        .map(|s| {
            std::array::from_fn(|i| {
                let last = if sys == System::S { i as i32 - 2 } else { 0 };
                int_value_from_beta(&c.states[s], last, sys, &c.f) == 0
            })
        })
        .collect();
    let p = PairSearch::new(&c, closes);
    let alphabet = minweight::digit_alphabet(2);
    let Some(r0) = r.initial() else { return Ok(Dfa::empty(&alphabet)) };
    let cap = minweight::max_states();
    let mut d = Dfa::empty(&alphabet);
    let mut index: HashMap<(usize, Subset, bool), usize> = HashMap::new();
    let t0 = d.add_state("0", r.is_terminal(r0));
    index.insert((r0, p.start.clone(), false), t0);
    let mut queue = std::collections::VecDeque::from([(r0, p.start.clone(), t0)]);
    while let Some((q, set, from)) = queue.pop_front() {
        for &a in &alphabet {
            let Some(q2) = r.step(q, a) else { continue };
            let (next, closed) = p.step(&set, a);
            let key = (q2, next, closed);
            let to = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if d.num_states() >= cap {
                        return Err(Error::StateLimit { what: "integer recognizer", limit: cap });
                    }
                    let t = d.add_state(format!("{}", d.num_states()), r.is_terminal(q2) && !closed);
                    index.insert(key.clone(), t);
                    queue.push_back((key.0, key.1, t));
                    t
                }
            };
            d.set_edge(from, a, to);
        }
    }
    Ok(automata::minimize(&d))
}

/// The same language through the generic automata: the factor complement of
/// the β transducer's closing inputs, minus the inputs of the windowed
/// integer transducer. Much slower for S.
pub fn build_int_minweight_automaton_generic(sys: System) -> Result<Dfa> {
    let f = sys.field();
    let s = minweight::build_weight_transducer(&f, 2)?;
    let mut h = s.transducer.input_automaton();
    for (q, &(z, delta)) in s.states.iter().enumerate() {
        h.set_terminal(q, z == 0 && delta < 0);
    }
    let c = automata::factor_complement_nfa(&h.trim())?;
    let mut r = c.clone();
    let sink = r.add_state("last", true);
    for q in 0..c.num_states() {
        for &a in c.alphabet() {
            if c.step(q, a).is_none() {
                r.set_edge(q, a, sink);
            }
        }
    }
    let r = automata::minimize(&r);
    let t = build_int_weight_transducer(sys, 1)?;
    automata::difference_nfa(&r, &t.input_automaton().trim())
}

pub fn value_u_via_beta(w: &DigitWord, sys: System) -> Result<i128> {
    if w.point.is_some() {
        return Err(Error::PointInIntegerWord);
    }
    let f = sys.field();
    let last = w.digits.last().copied().unwrap_or(0);
    Ok(int_value_from_beta(&value_beta(w, &f), last, sys, &f))
}

#[cfg(test)]
mod tests;
