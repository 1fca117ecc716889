//! Reference answers that do not go through the automata.
//!
//! `class_min_weight` runs Dijkstra over the carries of x − y, where y ranges
//! over all words on {1−B, …, B−1} placed anywhere relative to x. A carry
//! with |s|·(β−1) > E, E the largest possible |x_j − y_j|, can never come
//! back to 0, and the conjugate carries stay bounded because β is Pisot, so
//! the search space is finite.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::algebra::{BetaField, FieldElem};
use crate::error::{Error, Result};
use crate::words::{class_key, value_beta, DigitWord};

use super::{digit_alphabet, max_states, stripped_words};

/// Where the search is relative to x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Phase {
    Before,
    At(usize),
    After,
}

/// Exact minimum of ‖y‖ over y ∼_β x, with one minimizer.
pub fn class_min_weight(x: &DigitWord, f: &BetaField, big_b: i32) -> Result<(u64, DigitWord)> {
    let x = x.strip();
    let xs = &x.digits;
    let alphabet = digit_alphabet(big_b);
    let e = xs.iter().map(|d| d.abs()).max().unwrap_or(0) as i64 + big_b as i64 - 1;
    let bound = f.from_int(e);
    let beta_minus_one = f.sub(&f.beta(), &f.one());
    let inside = |s: &FieldElem| {
        let a = if f.sign(s) < 0 { f.neg(s) } else { s.clone() };
        f.cmp(&f.mul(&a, &beta_minus_one), &bound).is_le()
    };
    let cap = max_states();

    type Node = (Phase, usize);
    let mut ids: HashMap<FieldElem, usize> = HashMap::new();
    let mut carries: Vec<FieldElem> = Vec::new();
    let mut intern = |s: FieldElem, carries: &mut Vec<FieldElem>| -> Result<usize> {
        if let Some(&i) = ids.get(&s) {
            return Ok(i);
        }
        if carries.len() >= cap {
            return Err(Error::StateLimit { what: "class minimum search", limit: cap });
        }
        carries.push(s.clone());
        ids.insert(s, carries.len() - 1);
        Ok(carries.len() - 1)
    };
    let zero = intern(f.zero(), &mut carries)?;
    let start: Node = (Phase::Before, zero);
    let mut dist: HashMap<Node, u64> = HashMap::from([(start, 0)]);
    let mut prev: HashMap<Node, (Node, Option<i32>)> = HashMap::new();
    let mut heap = BinaryHeap::from([Reverse((0u64, start))]);
    let mut goal = None;
    while let Some(Reverse((d, node))) = heap.pop() {
        if dist.get(&node).is_some_and(|&best| best < d) {
            continue;
        }
        let (phase, si) = node;
        let at_end = match phase {
            Phase::After => true,
            Phase::At(i) => i == xs.len(),
            Phase::Before => xs.is_empty(),
        };
        if at_end && si == zero {
            goal = Some(node);
            break;
        }
        // Moving on from "before" into x costs nothing and reads nothing.
        let mut moves: Vec<(Node, u64, Option<i32>)> = Vec::new();
        if phase == Phase::Before {
            moves.push(((Phase::At(0), si), 0, None));
        }
        if let Phase::At(i) = phase {
            if i == xs.len() {
                moves.push(((Phase::After, si), 0, None));
            }
        }
        let (xd, next_phase) = match phase {
            Phase::Before => (0, Some(Phase::Before)),
            Phase::At(i) if i < xs.len() => (xs[i], Some(Phase::At(i + 1))),
            Phase::At(_) => (0, None),
            Phase::After => (0, Some(Phase::After)),
        };
        if let Some(np) = next_phase {
            let bs = f.mul_beta_pow(&carries[si], 1);
            for &y in &alphabet {
                let t = f.add(&bs, &f.from_int((xd - y) as i64));
                if !inside(&t) {
                    continue;
                }
                let ti = intern(t, &mut carries)?;
                moves.push(((np, ti), y.unsigned_abs() as u64, Some(y)));
            }
        }
        for (n2, w, y) in moves {
            let nd = d + w;
            if dist.get(&n2).is_none_or(|&old| nd < old) {
                dist.insert(n2, nd);
                prev.insert(n2, (node, y));
                heap.push(Reverse((nd, n2)));
            }
        }
    }
    let goal = goal.ok_or_else(|| Error::Invariant("class minimum search found no path".into()))?;
    let mut ys = Vec::new();
    let mut cur = goal;
    while let Some(&(p, y)) = prev.get(&cur) {
        if let Some(y) = y {
            ys.push(y);
        }
        cur = p;
    }
    ys.reverse();
    let y = DigitWord::new(ys).strip();
    Ok((dist[&goal], y))
}

/// Whether some word on {1−B, …, B−1} in the ∼_β class of x is lighter.
pub fn is_heavy_oracle(x: &DigitWord, f: &BetaField, big_b: i32) -> Result<bool> {
    Ok(class_min_weight(x, f, big_b)?.0 < x.weight())
}

/// Minimum weight of each value class over all words of length ≤ L.
/// The zero class has minimum 0 (the empty word).
pub struct ClassMinima {
    pub max_len: usize,
    minima: BTreeMap<Option<FieldElem>, u64>,
}

impl ClassMinima {
    pub fn new(f: &BetaField, big_b: i32, max_len: usize) -> ClassMinima {
        let mut minima = BTreeMap::from([(None, 0u64)]);
        for w in stripped_words(&digit_alphabet(big_b), max_len) {
            let word = DigitWord::new(w);
            let key = class_key(&value_beta(&word, f), f).map(|(k, _)| k);
            let wt = word.weight();
            minima.entry(key).and_modify(|m| *m = (*m).min(wt)).or_insert(wt);
        }
        ClassMinima { max_len, minima }
    }

    pub fn min_weight(&self, x: &DigitWord, f: &BetaField) -> Option<u64> {
        let key = class_key(&value_beta(x, f), f).map(|(k, _)| k);
        self.minima.get(&key).copied()
    }

    /// True when x is as light as every word of length ≤ L in its class.
    pub fn is_minimal(&self, x: &DigitWord, f: &BetaField) -> bool {
        self.min_weight(x, f).is_none_or(|m| x.weight() <= m)
    }

    pub fn num_classes(&self) -> usize {
        self.minima.len()
    }
}

/// Memoized class-minimum queries for one base and digit bound.
pub struct MinWeightSearch<'a> {
    f: &'a BetaField,
    big_b: i32,
    cache: HashMap<Vec<i32>, u64>,
}

impl<'a> MinWeightSearch<'a> {
    pub fn new(f: &'a BetaField, big_b: i32) -> Self {
        MinWeightSearch { f, big_b, cache: HashMap::new() }
    }

    pub fn min_weight(&mut self, x: &DigitWord) -> Result<u64> {
        let key = x.strip().digits;
        if let Some(&w) = self.cache.get(&key) {
            return Ok(w);
        }
        let (w, _) = class_min_weight(x, self.f, self.big_b)?;
        self.cache.insert(key, w);
        Ok(w)
    }

    pub fn is_minimal(&mut self, x: &DigitWord) -> Result<bool> {
        Ok(self.min_weight(x)? == x.weight())
    }
}
