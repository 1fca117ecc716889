//! Minimal-weight recognizers for a Pisot base: the (D_B) witness, digit
//! reduction, the zero automaton A_β, the weight transducer S_β and the
//! automaton M of minimal-weight words.

mod oracle;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::OnceLock;

use crate::algebra::{Base, BetaField, FieldElem};
use crate::automata::{self, Dfa, LetterTransducer, Nfa};
use crate::error::{Error, Result};
use crate::expand::greedy_expand;
use crate::words::{class_key, value_beta, DigitWord};

pub use oracle::{class_min_weight, is_heavy_oracle, ClassMinima, MinWeightSearch};

/// Default cap on the states explored by the zero-automaton search.
pub const DEFAULT_MAX_STATES: usize = 100_000;

/// State cap, overridable through MINWEIGHT_MAX_STATES.
pub fn max_states() -> usize {
    std::env::var("MINWEIGHT_MAX_STATES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_STATES)
}

/// Digits {1−B, …, B−1}.
pub fn digit_alphabet(big_b: i32) -> Vec<i32> {
    (1 - big_b..big_b).collect()
}

/// A word b over {1−B, …, B−1} with weight at most B whose value, read with
/// its point, equals B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSetWitness {
    pub big_b: i32,
    pub word: DigitWord,
}

impl DigitSetWitness {
    /// Pairs (j, b_j) with b_j the coefficient of β^(−j).
    fn offsets(&self) -> Vec<(i64, i64)> {
        let p = self.word.point.unwrap_or(self.word.len()) as i64;
        self.word
            .digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (i as i64 + 1 - p, d as i64))
            .collect()
    }
}

/// Shortest word b over {1−B, …, B−1} with b ∼_β B and ‖b‖ ≤ B.
pub fn find_witness(f: &BetaField, big_b: i32, max_len: usize) -> Option<DigitSetWitness> {
    assert!(big_b >= 2, "B must be at least 2");
    let (target, _) = class_key(&f.from_int(big_b as i64), f)?;
    // Non-negative digits first, smaller ones first.
    let mut alphabet = digit_alphabet(big_b);
    alphabet.sort_by_key(|&d| (d < 0, d.abs()));
    let nonzero: Vec<i32> = alphabet.iter().copied().filter(|&d| d != 0).collect();
    for len in 1..=max_len {
        let mut found = None;
        let mut digits = Vec::with_capacity(len);
        witness_dfs(f, big_b, len, &alphabet, &nonzero, &target, &mut digits, 0, &mut found);
        if let Some(word) = found {
            return Some(DigitSetWitness { big_b, word });
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn witness_dfs(
    f: &BetaField,
    big_b: i32,
    len: usize,
    alphabet: &[i32],
    nonzero: &[i32],
    target: &FieldElem,
    digits: &mut Vec<i32>,
    weight: i32,
    found: &mut Option<DigitWord>,
) {
    if found.is_some() {
        return;
    }
    if digits.len() == len {
        let w = DigitWord::new(digits.clone());
        let v = value_beta(&w, f);
        if let Some((key, k)) = class_key(&v, f) {
            if &key == target {
                // value(w) = β^(−k)·key and B = β^(−k_B)·key: put the point so
                // that the value is B exactly.
                let (_, kb) = class_key(&f.from_int(big_b as i64), f).unwrap();
                let frac = kb - k;
                *found = Some(point_from_frac(digits.clone(), frac));
            }
        }
        return;
    }
    let first_or_last = digits.is_empty() || digits.len() + 1 == len;
    let choices = if first_or_last { nonzero } else { alphabet };
    for &d in choices {
        let w = weight + d.abs();
        // Every remaining position after this one needs a nonzero last digit.
        let pending_last = if digits.len() + 1 < len { 1 } else { 0 };
        if w + pending_last > big_b {
            continue;
        }
        digits.push(d);
        witness_dfs(f, big_b, len, alphabet, nonzero, target, digits, w, found);
        digits.pop();
        if found.is_some() {
            return;
        }
    }
}

/// The word `digits` with `frac` digits after the point, padded as needed.
fn point_from_frac(mut digits: Vec<i32>, frac: i32) -> DigitWord {
    if frac <= 0 {
        digits.extend(std::iter::repeat_n(0, (-frac) as usize));
        let n = digits.len();
        return DigitWord::with_point(digits, n);
    }
    let frac = frac as usize;
    if frac > digits.len() {
        let mut w = vec![0; frac - digits.len()];
        w.extend(digits);
        digits = w;
    }
    let n = digits.len();
    DigitWord::with_point(digits, n - frac)
}

/// Rewrites digits of absolute value ≥ B, always at the rightmost offending
/// position, until every digit lies in {1−B, …, B−1}. The result has the
/// same value as `x` and no larger weight.
pub fn reduce_digits(x: &DigitWord, f: &BetaField, w: &DigitSetWitness) -> Result<DigitWord> {
    let big_b = w.big_b as i64;
    if x.digits.iter().all(|&d| (d as i64).abs() < big_b) {
        return Ok(x.clone());
    }
    // Position j carries weight β^(−j); x_1 sits at position 1.
    let mut cells: BTreeMap<i64, i64> = BTreeMap::new();
    for (i, &d) in x.digits.iter().enumerate() {
        if d != 0 {
            cells.insert(i as i64 + 1, d as i64);
        }
    }
    let offsets = w.offsets();
    let limit = 1000 + 100 * x.weight() as usize;
    for _ in 0..limit {
        let Some((&h, &xh)) = cells.iter().rev().find(|(_, &d)| d.abs() >= big_b) else {
            let lo = *cells.keys().next().unwrap_or(&1);
            let hi = *cells.keys().next_back().unwrap_or(&0);
            let digits: Vec<i32> = (lo..=hi).map(|j| *cells.get(&j).unwrap_or(&0) as i32).collect();
            // .x = β^(1−lo)·.y  →  value(x with point p) = β^p·β^(1−lo)·.y
            let p = x.point.unwrap_or(x.len()) as i64;
            let out = place(digits, p + 1 - lo);
            debug_assert_eq!(value_beta(&out, f), value_beta(x, f));
            return Ok(out);
        };
        let s = xh.signum();
        *cells.entry(h).or_insert(0) -= s * big_b;
        for &(j, bj) in &offsets {
            *cells.entry(h + j).or_insert(0) += s * bj;
        }
        cells.retain(|_, d| *d != 0);
    }
    Err(Error::IterationLimit(limit))
}

/// .digits scaled by β^k as a word with a point inside it.
fn place(mut digits: Vec<i32>, k: i64) -> DigitWord {
    if digits.is_empty() {
        return DigitWord::new(digits);
    }
    if k < 0 {
        let mut w = vec![0; (-k) as usize];
        w.extend(digits);
        return DigitWord::with_point(w, 0);
    }
    let k = k as usize;
    if digits.len() < k {
        digits.resize(k, 0);
    }
    DigitWord::with_point(digits, k)
}

/// The automaton A_β of zero-valued difference words over
/// {2(1−B), …, 2(B−1)}; state i is the value `states[i]`.
#[derive(Clone, Debug)]
pub struct ZeroAutomaton {
    pub big_b: i32,
    pub states: Vec<FieldElem>,
    pub dfa: Dfa,
}

impl ZeroAutomaton {
    pub fn index_of(&self, s: &FieldElem) -> Option<usize> {
        self.states.iter().position(|x| x == s)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }
}

/// Breadth-first search of s' = βs + e inside |s| < 2(B−1)/(β−1), trimmed to
/// the states from which 0 is reachable.
pub fn build_zero_automaton(f: &BetaField, big_b: i32) -> Result<ZeroAutomaton> {
    build_zero_automaton_with_cap(f, big_b, max_states())
}

pub fn build_zero_automaton_with_cap(f: &BetaField, big_b: i32, cap: usize) -> Result<ZeroAutomaton> {
    if !f.is_pisot() {
        return Err(Error::NotPisot(format!("{:?}", f.min_poly())));
    }
    let emax = 2 * (big_b as i64 - 1);
    let letters: Vec<i32> = (-emax..=emax).map(|e| e as i32).collect();
    let beta_minus_one = f.sub(&f.beta(), &f.one());
    let bound = f.from_int(emax);
    let inside = |s: &FieldElem| {
        let a = if f.sign(s) < 0 { f.neg(s) } else { s.clone() };
        f.cmp(&f.mul(&a, &beta_minus_one), &bound).is_lt()
    };
    let mut states = vec![f.zero()];
    let mut index: HashMap<FieldElem, usize> = HashMap::from([(f.zero(), 0)]);
    let mut edges: Vec<Vec<(i32, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let bs = f.mul_beta_pow(&states[i], 1);
        for &e in &letters {
            let t = f.add(&bs, &f.from_int(e as i64));
            if !inside(&t) {
                continue;
            }
            let j = match index.get(&t) {
                Some(&j) => j,
                None => {
                    if states.len() >= cap {
                        return Err(Error::StateLimit { what: "zero automaton", limit: cap });
                    }
                    states.push(t.clone());
                    edges.push(Vec::new());
                    index.insert(t, states.len() - 1);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            edges[i].push((e, j));
        }
    }
    // Keep the states that can return to 0.
    let n = states.len();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, es) in edges.iter().enumerate() {
        for &(_, j) in es {
            rev[j].push(i);
        }
    }
    let mut keep = vec![false; n];
    keep[0] = true;
    let mut stack = vec![0];
    while let Some(j) = stack.pop() {
        for &i in &rev[j] {
            if !keep[i] {
                keep[i] = true;
                stack.push(i);
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for i in 0..n {
        if keep[i] {
            new_id[i] = kept.len();
            kept.push(states[i].clone());
        }
    }
    let mut dfa = Dfa::empty(&letters);
    for s in &kept {
        dfa.add_state(f.q_from_elem(s).to_string(), s.is_zero());
    }
    dfa.set_initial(0);
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        for &(e, j) in &edges[i] {
            if keep[j] {
                dfa.set_edge(new_id[i], e, new_id[j]);
            }
        }
    }
    Ok(ZeroAutomaton { big_b, states: kept, dfa })
}

/// w_s: weight of a finite expansion of |s|. Both the greedy expansion of
/// |s| and β^k minus the greedy expansion of β^k − |s| are tried, for the
/// first few k with β^k > |s|, and the lighter one is kept.
pub fn state_weight(s: &FieldElem, f: &BetaField) -> Result<u64> {
    const CAP: usize = 200;
    let a = if f.sign(s) < 0 { f.neg(s) } else { s.clone() };
    let greedy = greedy_expand(&a, f, CAP);
    if !greedy.terminated {
        return Err(Error::NonTerminating(CAP));
    }
    let mut best = greedy.word.weight();
    let mut k = 0;
    while f.cmp(&f.beta_pow(k), &a).is_le() {
        k += 1;
    }
    for k in k..k + 3 {
        let e = greedy_expand(&f.sub(&f.beta_pow(k), &a), f, CAP);
        if e.terminated {
            best = best.min(1 + e.word.weight());
        }
    }
    Ok(best)
}

/// The transducer S_β together with the data it was built from.
#[derive(Clone, Debug)]
pub struct WeightTransducer {
    pub big_b: i32,
    pub zero: ZeroAutomaton,
    /// w_s for each state of the zero automaton.
    pub state_weights: Vec<u64>,
    /// W, the maximum of the w_s.
    pub max_weight: u64,
    /// (zero-automaton state, δ) for each transducer state.
    pub states: Vec<(usize, i64)>,
    pub transducer: LetterTransducer,
}

impl WeightTransducer {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Number of states that lie on some successful path.
    pub fn num_useful_states(&self) -> usize {
        let t = &self.transducer;
        let n = t.num_states();
        let mut fwd = vec![false; n];
        let mut stack: Vec<usize> = t.initial_states().collect();
        for &s in &stack {
            fwd[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &(_, _, q) in t.edges_from(s) {
                if !fwd[q] {
                    fwd[q] = true;
                    stack.push(q);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for &(_, _, q) in t.edges_from(s) {
                rev[q].push(s);
            }
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<usize> = t.terminal_states().collect();
        for &s in &stack {
            bwd[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        (0..n).filter(|&s| fwd[s] && bwd[s]).count()
    }

    /// The input automaton, recognizing the heavy-word set H.
    pub fn heavy_words(&self) -> Nfa {
        self.transducer.input_automaton()
    }
}

/// Builds S_β: the pairs (s, δ) with −W−B < δ ≤ w_s, edges s →(a|b) s' for
/// s' = βs + a − b and δ' = δ + |b| − |a|, with the extra initial and
/// terminal states reached through zero inputs.
pub fn build_weight_transducer(f: &BetaField, big_b: i32) -> Result<WeightTransducer> {
    let zero = build_zero_automaton(f, big_b)?;
    let ws: Vec<u64> = zero.states.iter().map(|s| state_weight(s, f)).collect::<Result<_>>()?;
    let big_w = *ws.iter().max().unwrap_or(&0);
    let lo = -(big_w as i64) - big_b as i64; // exclusive
    let alphabet = digit_alphabet(big_b);

    let mut states = Vec::new();
    let mut id: HashMap<(usize, i64), usize> = HashMap::new();
    let mut t = LetterTransducer::new(&alphabet, &alphabet);
    for (s, &w) in ws.iter().enumerate() {
        for delta in lo + 1..=w as i64 {
            id.insert((s, delta), states.len());
            states.push((s, delta));
            t.add_state(format!("({}, {delta})", zero.dfa.label(s)));
        }
    }
    for (q, &(s, delta)) in states.iter().enumerate() {
        for &a in &alphabet {
            for &b in &alphabet {
                let Some(s2) = zero.dfa.step(s, a - b) else { continue };
                let d2 = delta + b.abs() as i64 - a.abs() as i64;
                if let Some(&q2) = id.get(&(s2, d2)) {
                    t.add_edge(q, a, b, q2);
                }
            }
        }
    }
    let start = id[&(0, 0)];
    // Initial: reachable from (0,0) reading zeros.
    let mut stack = vec![start];
    t.set_initial(start, true);
    while let Some(q) = stack.pop() {
        let next: Vec<usize> =
            t.edges_from(q).iter().filter(|e| e.0 == 0).map(|e| e.2).collect();
        for q2 in next {
            if !t.is_initial(q2) {
                t.set_initial(q2, true);
                stack.push(q2);
            }
        }
    }
    // Terminal: (0, δ<0) and anything reaching one of them reading zeros.
    let mut rev_zero: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
    for q in 0..states.len() {
        for e in t.edges_from(q) {
            if e.0 == 0 {
                rev_zero[e.2].push(q);
            }
        }
    }
    let mut stack: Vec<usize> = (0..states.len())
        .filter(|&q| states[q].0 == 0 && states[q].1 < 0)
        .collect();
    for &q in &stack {
        t.set_terminal(q, true);
    }
    while let Some(q) = stack.pop() {
        for &p in &rev_zero[q] {
            if !t.is_terminal(p) {
                t.set_terminal(p, true);
                stack.push(p);
            }
        }
    }
    Ok(WeightTransducer { big_b, zero, state_weights: ws, max_weight: big_w, states, transducer: t })
}

/// The automaton M of minimal-weight words over {1−B, …, B−1}: the words
/// with no factor in H, where H is recognized by the input automaton of S_β.
pub fn build_minweight_automaton(f: &BetaField, big_b: i32) -> Result<Dfa> {
    let s = build_weight_transducer(f, big_b)?;
    minweight_from_transducer(&s)
}

pub fn minweight_from_transducer(s: &WeightTransducer) -> Result<Dfa> {
    automata::factor_complement_nfa(&s.heavy_words())
}

/// M for one of the built-in bases with B = 2, built once per process.
pub fn builtin_minweight_automaton(base: Base) -> &'static Dfa {
    static CELLS: [OnceLock<Dfa>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let i = Base::ALL.iter().position(|&b| b == base).unwrap();
    CELLS[i].get_or_init(|| build_minweight_automaton(&base.field(), 2).expect("built-in base"))
}

/// NFA for prefix · cycle* · suffix.
fn add_starred(n: &mut Nfa, start: usize, accept: usize, prefix: &[i32], cycle: &[i32], suffix: &[i32]) {
    let mut cur = start;
    for &a in prefix {
        let s = n.add_state(String::new(), false);
        n.add_edge(cur, a, s);
        cur = s;
    }
    let hub = cur;
    let mut c = hub;
    for (i, &a) in cycle.iter().enumerate() {
        let s = if i + 1 == cycle.len() { hub } else { n.add_state(String::new(), false) };
        n.add_edge(c, a, s);
        c = s;
    }
    let mut cur = hub;
    for (i, &a) in suffix.iter().enumerate() {
        let s = if i + 1 == suffix.len() { accept } else { n.add_state(String::new(), false) };
        n.add_edge(cur, a, s);
        cur = s;
    }
}

/// The heavy set H of the golden-ratio case as an explicit union of eight
/// regular expressions.
pub fn golden_explicit_h() -> Dfa {
    let parse = |s: &str| DigitWord::parse(s).expect("pattern").digits;
    let patterns = [
        ("1", "0100", "1"),
        ("1", "0100", "0101"),
        ("1", "00T0", "T"),
        ("1", "00T0", "0T"),
        ("T", "0T00", "T"),
        ("T", "0T00", "0T0T"),
        ("T", "0010", "1"),
        ("T", "0010", "01"),
    ];
    let mut n = Nfa::new(&[-1, 0, 1]);
    let start = n.add_state("start", false);
    let accept = n.add_state("accept", true);
    n.set_initial(start);
    for (p, c, s) in patterns {
        add_starred(&mut n, start, accept, &parse(p), &parse(c), &parse(s));
    }
    automata::minimize(&automata::determinize(&n).expect("small automaton"))
}

/// M for the golden ratio built from the explicit heavy set.
pub fn golden_explicit_m() -> Dfa {
    automata::factor_complement(&golden_explicit_h()).expect("small automaton")
}

/// Value-class key of a word: (β^k·value with 1 ≤ |·| < β), or None for 0.
pub fn word_class(w: &DigitWord, f: &BetaField) -> Option<FieldElem> {
    class_key(&value_beta(w, f), f).map(|(k, _)| k)
}

/// All stripped nonzero words of length ≤ `max_len` over the alphabet.
pub(crate) fn stripped_words(alphabet: &[i32], max_len: usize) -> Vec<Vec<i32>> {
    let nonzero: Vec<i32> = alphabet.iter().copied().filter(|&d| d != 0).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i32>> = nonzero.iter().map(|&d| vec![d]).collect();
    for len in 1..=max_len {
        out.extend(layer.iter().filter(|w| *w.last().unwrap() != 0).cloned());
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        layer = next;
    }
    out
}
