//! Finite automata over integer digit alphabets and letter-to-letter
//! transducers.
//!
//! Deterministic automata are partial: a missing transition goes to an
//! implicit dead state.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::DigitWord;

const NONE: u32 = u32::MAX;

/// Default bound on the number of states a construction may create.
pub const DEFAULT_STATE_LIMIT: usize = 2_000_000;

fn sorted_alphabet(alphabet: &[i32]) -> Vec<i32> {
    let mut a = alphabet.to_vec();
    a.sort_unstable();
    a.dedup();
    a
}

fn short_label(parts: impl Iterator<Item = String>) -> String {
    let mut s = String::from("{");
    for (i, p) in parts.enumerate() {
        if i > 0 {
            s.push(',');
        }
        if s.len() > 60 {
            s.push('…');
            break;
        }
        s.push_str(&p);
    }
    s.push('}');
    s
}

/// Nondeterministic automaton without ε-moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Vec<i32>,
    edges: Vec<Vec<(i32, usize)>>,
    initial: BTreeSet<usize>,
    terminal: Vec<bool>,
    labels: Vec<String>,
}

impl Nfa {
    pub fn new(alphabet: &[i32]) -> Nfa {
        Nfa {
            alphabet: sorted_alphabet(alphabet),
            edges: Vec::new(),
            initial: BTreeSet::new(),
            terminal: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>, terminal: bool) -> usize {
        self.edges.push(Vec::new());
        self.terminal.push(terminal);
        self.labels.push(label.into());
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, letter: i32, to: usize) {
        debug_assert!(self.alphabet.binary_search(&letter).is_ok(), "letter {letter} not in alphabet");
        self.edges[from].push((letter, to));
    }

    pub fn set_initial(&mut self, s: usize) {
        self.initial.insert(s);
    }

    pub fn set_terminal(&mut self, s: usize, t: bool) {
        self.terminal[s] = t;
    }

    pub fn alphabet(&self) -> &[i32] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn is_initial(&self, s: usize) -> bool {
        self.initial.contains(&s)
    }

    pub fn is_terminal(&self, s: usize) -> bool {
        self.terminal[s]
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn edges_from(&self, s: usize) -> &[(i32, usize)] {
        &self.edges[s]
    }

    /// Restriction to states that are reachable from an initial state and
    /// can reach a terminal one. Accepts the same language.
    pub fn trim(&self) -> Nfa {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack: Vec<usize> = self.initial.iter().copied().collect();
        for &s in &stack {
            fwd[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &(_, t) in &self.edges[s] {
                if !fwd[t] {
                    fwd[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, es) in self.edges.iter().enumerate() {
            for &(_, t) in es {
                rev[t].push(s);
            }
        }
        let mut bwd = self.terminal.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| bwd[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut out = Nfa::new(&self.alphabet);
        for s in 0..n {
            if fwd[s] && bwd[s] {
                map[s] = out.add_state(self.labels[s].clone(), self.terminal[s]);
            }
        }
        for s in 0..n {
            if map[s] == usize::MAX {
                continue;
            }
            if self.initial.contains(&s) {
                out.set_initial(map[s]);
            }
            for &(a, t) in &self.edges[s] {
                if map[t] != usize::MAX {
                    out.add_edge(map[s], a, map[t]);
                }
            }
        }
        out
    }

    pub fn accepts(&self, word: &[i32]) -> bool {
        let mut cur: BTreeSet<usize> = self.initial.clone();
        for &a in word {
            cur = cur
                .iter()
                .flat_map(|&s| self.edges[s].iter().filter(|e| e.0 == a).map(|e| e.1))
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&s| self.terminal[s])
    }
}

/// Partial deterministic automaton. Equality compares structure and ignores
/// state labels.
#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Vec<i32>,
    trans: Vec<Vec<u32>>,
    initial: Option<usize>,
    terminal: Vec<bool>,
    labels: Vec<String>,
}

impl PartialEq for Dfa {
    fn eq(&self, o: &Dfa) -> bool {
        self.alphabet == o.alphabet
            && self.trans == o.trans
            && self.initial == o.initial
            && self.terminal == o.terminal
    }
}

impl Eq for Dfa {}

impl Dfa {
    /// The automaton with no states, recognizing nothing.
    pub fn empty(alphabet: &[i32]) -> Dfa {
        Dfa {
            alphabet: sorted_alphabet(alphabet),
            trans: Vec::new(),
            initial: None,
            terminal: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// One accepting state looping on every letter.
    pub fn universal(alphabet: &[i32]) -> Dfa {
        let mut d = Dfa::empty(alphabet);
        let s = d.add_state("all", true);
        for a in d.alphabet.clone() {
            d.set_edge(s, a, s);
        }
        d.initial = Some(s);
        d
    }

    pub fn add_state(&mut self, label: impl Into<String>, terminal: bool) -> usize {
        self.trans.push(vec![NONE; self.alphabet.len()]);
        self.terminal.push(terminal);
        self.labels.push(label.into());
        if self.initial.is_none() {
            self.initial = Some(0);
        }
        self.trans.len() - 1
    }

    pub fn set_edge(&mut self, from: usize, letter: i32, to: usize) {
        let i = self.letter_index(letter).expect("letter not in alphabet");
        self.trans[from][i] = to as u32;
    }

    pub fn set_initial(&mut self, s: usize) {
        self.initial = Some(s);
    }

    pub fn alphabet(&self) -> &[i32] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn num_edges(&self) -> usize {
        self.trans.iter().map(|r| r.iter().filter(|&&t| t != NONE).count()).sum()
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn is_terminal(&self, s: usize) -> bool {
        self.terminal[s]
    }

    pub fn all_terminal(&self) -> bool {
        self.terminal.iter().all(|&t| t)
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    fn letter_index(&self, a: i32) -> Option<usize> {
        self.alphabet.binary_search(&a).ok()
    }

    pub fn step(&self, s: usize, a: i32) -> Option<usize> {
        let i = self.letter_index(a)?;
        let t = self.trans[s][i];
        (t != NONE).then_some(t as usize)
    }

    /// State reached after reading `word`, if the run does not die.
    pub fn run(&self, word: &[i32]) -> Option<usize> {
        self.run_from(self.initial?, word)
    }

    pub fn run_from(&self, mut s: usize, word: &[i32]) -> Option<usize> {
        for &a in word {
            s = self.step(s, a)?;
        }
        Some(s)
    }

    pub fn accepts(&self, word: &[i32]) -> bool {
        self.run(word).is_some_and(|s| self.terminal[s])
    }

    pub fn accepts_word(&self, w: &DigitWord) -> bool {
        self.accepts(&w.digits)
    }

    /// Accepted words of length ≤ max_len in length-lexicographic order.
    pub fn accepted_words(&self, max_len: usize) -> Vec<Vec<i32>> {
        let mut out = Vec::new();
        let Some(init) = self.initial else { return out };
        let mut layer = vec![(Vec::new(), init)];
        for len in 0..=max_len {
            for (w, s) in &layer {
                if self.terminal[*s] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, s) in &layer {
                for (i, &a) in self.alphabet.iter().enumerate() {
                    let t = self.trans[*s][i];
                    if t != NONE {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, t as usize));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Number of accepted words of each length 0..=max_len.
    pub fn count_accepted(&self, max_len: usize) -> Vec<u128> {
        let mut counts = Vec::with_capacity(max_len + 1);
        let Some(init) = self.initial else { return vec![0; max_len + 1] };
        let mut v = vec![0u128; self.num_states()];
        v[init] = 1;
        for len in 0..=max_len {
            counts.push((0..self.num_states()).filter(|&s| self.terminal[s]).map(|s| v[s]).sum());
            if len == max_len {
                break;
            }
            let mut nv = vec![0u128; self.num_states()];
            for (s, row) in self.trans.iter().enumerate() {
                if v[s] == 0 {
                    continue;
                }
                for &t in row {
                    if t != NONE {
                        nv[t as usize] += v[s];
                    }
                }
            }
            v = nv;
        }
        counts
    }

    /// Copy with every state terminal iff `f` says so.
    pub fn map_terminal(&self, f: impl Fn(usize) -> bool) -> Dfa {
        let mut d = self.clone();
        for s in 0..d.num_states() {
            d.terminal[s] = f(s);
        }
        d
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        if let Some(i) = self.initial {
            let mut stack = vec![i];
            seen[i] = true;
            while let Some(s) = stack.pop() {
                for &t in &self.trans[s] {
                    if t != NONE && !seen[t as usize] {
                        seen[t as usize] = true;
                        stack.push(t as usize);
                    }
                }
            }
        }
        seen
    }

    fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, row) in self.trans.iter().enumerate() {
            for &t in row {
                if t != NONE {
                    rev[t as usize].push(s);
                }
            }
        }
        let mut seen = self.terminal.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| seen[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Renumbers `keep` states in breadth-first order from the initial state,
    /// dropping transitions into removed states.
    fn canonical(&self, keep: &[bool]) -> Dfa {
        let mut out = Dfa::empty(&self.alphabet);
        let Some(init) = self.initial.filter(|&i| keep[i]) else { return out };
        let mut id = vec![NONE; self.num_states()];
        let mut order = vec![init];
        id[init] = 0;
        let mut q = 0;
        while q < order.len() {
            let s = order[q];
            q += 1;
            for &t in &self.trans[s] {
                if t != NONE && keep[t as usize] && id[t as usize] == NONE {
                    id[t as usize] = order.len() as u32;
                    order.push(t as usize);
                }
            }
        }
        for &s in &order {
            out.add_state(self.labels[s].clone(), self.terminal[s]);
        }
        for (new, &s) in order.iter().enumerate() {
            for (i, &t) in self.trans[s].iter().enumerate() {
                if t != NONE && keep[t as usize] {
                    out.trans[new][i] = id[t as usize];
                }
            }
        }
        out.initial = Some(0);
        out
    }

    /// Removes states that are unreachable or cannot reach a terminal state.
    pub fn trim(&self) -> Dfa {
        let r = self.reachable();
        let c = self.coaccessible();
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        self.canonical(&keep)
    }

    /// Adds an explicit dead state so that every transition is defined.
    pub fn totalize(&self) -> Dfa {
        let mut d = if self.initial.is_none() {
            let mut d = Dfa::empty(&self.alphabet);
            d.add_state("dead", false);
            d
        } else {
            self.clone()
        };
        let needs_dead = d.trans.iter().any(|r| r.contains(&NONE));
        if needs_dead {
            let dead = d.add_state("dead", false);
            for row in d.trans.iter_mut() {
                for t in row.iter_mut() {
                    if *t == NONE {
                        *t = dead as u32;
                    }
                }
            }
        }
        d
    }
}

/// Subset construction.
pub fn determinize(n: &Nfa) -> Result<Dfa> {
    determinize_with_limit(n, DEFAULT_STATE_LIMIT)
}

pub fn determinize_with_limit(n: &Nfa, limit: usize) -> Result<Dfa> {
    let mut d = Dfa::empty(&n.alphabet);
    if n.initial.is_empty() {
        return Ok(d);
    }
    let letter_idx: HashMap<i32, usize> =
        n.alphabet.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    let start: Vec<usize> = n.initial.iter().copied().collect();
    let label = |set: &Vec<usize>| short_label(set.iter().map(|&s| n.labels[s].clone()));
    let s0 = d.add_state(label(&start), start.iter().any(|&s| n.terminal[s]));
    index.insert(start.clone(), s0);
    queue.push_back(start);
    let k = n.alphabet.len();
    while let Some(set) = queue.pop_front() {
        let from = index[&set];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
        for &s in &set {
            for &(a, t) in &n.edges[s] {
                succ[letter_idx[&a]].push(t);
            }
        }
        for (i, mut targets) in succ.into_iter().enumerate() {
            if targets.is_empty() {
                continue;
            }
            targets.sort_unstable();
            targets.dedup();
            let to = match index.get(&targets) {
                Some(&t) => t,
                None => {
                    if d.num_states() >= limit {
                        return Err(Error::StateLimit { what: "subset construction", limit });
                    }
                    let t = d.add_state(label(&targets), targets.iter().any(|&s| n.terminal[s]));
                    index.insert(targets.clone(), t);
                    queue.push_back(targets);
                    t
                }
            };
            d.trans[from][i] = to as u32;
        }
    }
    Ok(d)
}

/// Minimal partial automaton, numbered canonically so that equal languages
/// give identical results.
pub fn minimize(d: &Dfa) -> Dfa {
    let t = d.trim();
    let n = t.num_states();
    if n == 0 {
        return t;
    }
    // Moore refinement; missing transitions go to the dead class NONE.
    let mut class: Vec<u32> = t.terminal.iter().map(|&b| b as u32).collect();
    let mut count = {
        let mut c: Vec<u32> = class.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let mut sig_index: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
        let mut next = vec![0u32; n];
        for s in 0..n {
            let sig: Vec<u32> =
                t.trans[s].iter().map(|&x| if x == NONE { NONE } else { class[x as usize] }).collect();
            let len = sig_index.len() as u32;
            next[s] = *sig_index.entry((class[s], sig)).or_insert(len);
        }
        let new_count = sig_index.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut q = Dfa::empty(&t.alphabet);
    let mut rep = vec![usize::MAX; count];
    for s in 0..n {
        let c = class[s] as usize;
        if rep[c] == usize::MAX {
            rep[c] = s;
        }
    }
    for &r in &rep {
        q.add_state(t.labels[r].clone(), t.terminal[r]);
    }
    for (c, &r) in rep.iter().enumerate() {
        for (i, &x) in t.trans[r].iter().enumerate() {
            if x != NONE {
                q.trans[c][i] = class[x as usize];
            }
        }
    }
    q.initial = Some(class[t.initial.unwrap()] as usize);
    let keep = vec![true; q.num_states()];
    q.canonical(&keep)
}

/// Automaton of the complementary language over the same alphabet.
pub fn complement(d: &Dfa) -> Dfa {
    let mut t = d.totalize();
    for x in t.terminal.iter_mut() {
        *x = !*x;
    }
    t
}

fn check_alphabets(a: &Dfa, b: &Dfa) -> Result<()> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch(a.alphabet.clone(), b.alphabet.clone()));
    }
    Ok(())
}

fn product(a: &Dfa, b: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
    check_alphabets(a, b)?;
    let (a, b) = (a.totalize(), b.totalize());
    let mut d = Dfa::empty(&a.alphabet);
    let (ia, ib) = (a.initial.unwrap(), b.initial.unwrap());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let label = |p: usize, q: usize| format!("({},{})", a.labels[p], b.labels[q]);
    index.insert((ia, ib), d.add_state(label(ia, ib), accept(a.terminal[ia], b.terminal[ib])));
    queue.push_back((ia, ib));
    while let Some((p, q)) = queue.pop_front() {
        let from = index[&(p, q)];
        for i in 0..a.alphabet.len() {
            let (p2, q2) = (a.trans[p][i] as usize, b.trans[q][i] as usize);
            let to = *index.entry((p2, q2)).or_insert_with(|| {
                queue.push_back((p2, q2));
                d.add_state(label(p2, q2), accept(a.terminal[p2], b.terminal[q2]))
            });
            d.trans[from][i] = to as u32;
        }
    }
    Ok(d)
}

pub fn intersect(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    product(a, b, |x, y| x && y)
}

pub fn union(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    product(a, b, |x, y| x || y)
}

/// A shortest word accepted by exactly one of the automata, or None if the
/// languages coincide.
pub fn language_difference(a: &Dfa, b: &Dfa) -> Result<Option<Vec<i32>>> {
    check_alphabets(a, b)?;
    let (a, b) = (a.totalize(), b.totalize());
    let start = (a.initial.unwrap(), b.initial.unwrap());
    let mut parent: HashMap<(usize, usize), Option<((usize, usize), i32)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if a.terminal[p] != b.terminal[q] {
            let mut word = Vec::new();
            let mut cur = (p, q);
            while let Some(Some((prev, letter))) = parent.get(&cur) {
                word.push(*letter);
                cur = *prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for (i, &letter) in a.alphabet.iter().enumerate() {
            let next = (a.trans[p][i] as usize, b.trans[q][i] as usize);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some(((p, q), letter)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

pub fn language_equal(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(language_difference(a, b)?.is_none())
}

/// NFA for A*·L(h)·A*.
fn factor_closure_nfa(h: &Dfa) -> Nfa {
    let mut n = Nfa::new(&h.alphabet);
    let before = n.add_state("pre", false);
    let base = n.num_states();
    for s in 0..h.num_states() {
        n.add_state(h.labels[s].clone(), false);
    }
    let after = n.add_state("post", true);
    n.set_initial(before);
    let init = h.initial.unwrap();
    for &a in &h.alphabet {
        n.add_edge(before, a, before);
        n.add_edge(after, a, after);
        if let Some(t) = h.step(init, a) {
            n.add_edge(before, a, base + t);
            if h.terminal[t] {
                n.add_edge(before, a, after);
            }
        }
    }
    for s in 0..h.num_states() {
        for &a in &h.alphabet {
            if let Some(t) = h.step(s, a) {
                n.add_edge(base + s, a, base + t);
                if h.terminal[t] {
                    n.add_edge(base + s, a, after);
                }
            }
        }
    }
    n
}

/// Minimal automaton of the words having no factor in L(h), built as
/// complement(determinize(A* H A*)).
pub fn factor_complement(h: &Dfa) -> Result<Dfa> {
    let Some(init) = h.initial else { return Ok(Dfa::universal(&h.alphabet)) };
    if h.terminal[init] {
        return Ok(Dfa::empty(&h.alphabet));
    }
    let d = determinize(&factor_closure_nfa(h))?;
    Ok(minimize(&complement(&d)))
}

/// The same language as [`factor_complement`], built directly: a state is
/// the set of h-states reached by the suffixes of the input read so far, and
/// the run dies as soon as one of them is terminal.
pub fn factor_complement_direct(h: &Dfa) -> Result<Dfa> {
    let Some(init) = h.initial else { return Ok(Dfa::universal(&h.alphabet)) };
    if h.terminal[init] {
        return Ok(Dfa::empty(&h.alphabet));
    }
    let mut d = Dfa::empty(&h.alphabet);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = vec![init];
    let label = |set: &Vec<usize>| short_label(set.iter().map(|&s| h.labels[s].clone()));
    index.insert(start.clone(), d.add_state(label(&start), true));
    queue.push_back(start);
    while let Some(set) = queue.pop_front() {
        let from = index[&set];
        'letters: for (i, &a) in h.alphabet.iter().enumerate() {
            let mut next = vec![init];
            for &s in &set {
                if let Some(t) = h.step(s, a) {
                    if h.terminal[t] {
                        continue 'letters;
                    }
                    next.push(t);
                }
            }
            next.sort_unstable();
            next.dedup();
            let to = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if d.num_states() >= DEFAULT_STATE_LIMIT {
                        return Err(Error::StateLimit {
                            what: "factor automaton",
                            limit: DEFAULT_STATE_LIMIT,
                        });
                    }
                    let t = d.add_state(label(&next), true);
                    index.insert(next.clone(), t);
                    queue.push_back(next);
                    t
                }
            };
            d.trans[from][i] = to as u32;
        }
    }
    Ok(minimize(&d))
}

/// Words with no factor accepted by the NFA `h`, by one subset construction:
/// a state is the set of h-states reached by the suffixes read so far,
/// together with the initial states, and the run dies on a terminal state.
pub fn factor_complement_nfa(h: &Nfa) -> Result<Dfa> {
    factor_complement_nfa_with_limit(h, DEFAULT_STATE_LIMIT)
}

pub fn factor_complement_nfa_with_limit(h: &Nfa, limit: usize) -> Result<Dfa> {
    let mut start: Vec<usize> = h.initial.iter().copied().collect();
    start.sort_unstable();
    if start.is_empty() {
        return Ok(Dfa::universal(&h.alphabet));
    }
    if start.iter().any(|&s| h.terminal[s]) {
        return Ok(Dfa::empty(&h.alphabet));
    }
    let letter_idx: HashMap<i32, usize> =
        h.alphabet.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let k = h.alphabet.len();
    let mut d = Dfa::empty(&h.alphabet);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    index.insert(start.clone(), d.add_state(format!("{}", 0), true));
    queue.push_back(start.clone());
    while let Some(set) = queue.pop_front() {
        let from = index[&set];
        let mut succ: Vec<Vec<usize>> = vec![start.clone(); k];
        let mut dead = vec![false; k];
        for &s in &set {
            for &(a, t) in &h.edges[s] {
                let i = letter_idx[&a];
                if h.terminal[t] {
                    dead[i] = true;
                } else {
                    succ[i].push(t);
                }
            }
        }
        for (i, mut next) in succ.into_iter().enumerate() {
            if dead[i] {
                continue;
            }
            next.sort_unstable();
            next.dedup();
            let to = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if d.num_states() >= limit {
                        return Err(Error::StateLimit { what: "factor automaton", limit });
                    }
                    let t = d.add_state(format!("{}", d.num_states()), true);
                    index.insert(next.clone(), t);
                    queue.push_back(next);
                    t
                }
            };
            d.trans[from][i] = to as u32;
        }
    }
    Ok(minimize(&d))
}

/// L(m) minus L(h), with the subsets of h only tracked along words of m.
pub fn difference_nfa(m: &Dfa, h: &Nfa) -> Result<Dfa> {
    assert_eq!(m.alphabet, h.alphabet, "alphabets differ");
    let Some(m0) = m.initial else { return Ok(Dfa::empty(&m.alphabet)) };
    let mut start: Vec<usize> = h.initial.iter().copied().collect();
    start.sort_unstable();
    let accepts = |set: &[usize]| set.iter().any(|&s| h.terminal[s]);
    let letter_idx: HashMap<i32, usize> =
        h.alphabet.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut d = Dfa::empty(&m.alphabet);
    let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let key = (m0, start);
    let t0 = d.add_state("0", m.terminal[m0] && !accepts(&key.1));
    index.insert(key.clone(), t0);
    queue.push_back(key);
    while let Some((q, set)) = queue.pop_front() {
        let from = index[&(q, set.clone())];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); h.alphabet.len()];
        for &s in &set {
            for &(a, t) in &h.edges[s] {
                succ[letter_idx[&a]].push(t);
            }
        }
        for (i, mut next) in succ.into_iter().enumerate() {
            let Some(q2) = m.step(q, m.alphabet[i]) else { continue };
            next.sort_unstable();
            next.dedup();
            let key = (q2, next);
            let to = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if d.num_states() >= DEFAULT_STATE_LIMIT {
                        return Err(Error::StateLimit {
                            what: "difference automaton",
                            limit: DEFAULT_STATE_LIMIT,
                        });
                    }
                    let t = d.add_state(format!("{}", d.num_states()), m.terminal[q2] && !accepts(&key.1));
                    index.insert(key.clone(), t);
                    queue.push_back(key);
                    t
                }
            };
            d.trans[from][i] = to as u32;
        }
    }
    Ok(minimize(&d))
}

/// Automaton for a finite set of words over `alphabet` (a trie).
pub fn finite_language(alphabet: &[i32], words: &[Vec<i32>]) -> Dfa {
    let mut d = Dfa::empty(alphabet);
    let root = d.add_state("ε", false);
    for w in words {
        let mut s = root;
        for (k, &a) in w.iter().enumerate() {
            s = match d.step(s, a) {
                Some(t) => t,
                None => {
                    let t = d.add_state(crate::words::render_digits(&w[..=k]), false);
                    d.set_edge(s, a, t);
                    t
                }
            };
        }
        d.terminal[s] = true;
    }
    d
}

/// Letter-to-letter transducer.
#[derive(Clone, Debug)]
pub struct LetterTransducer {
    input_alphabet: Vec<i32>,
    output_alphabet: Vec<i32>,
    edges: Vec<Vec<(i32, i32, usize)>>,
    initial: BTreeSet<usize>,
    terminal: Vec<bool>,
    labels: Vec<String>,
}

impl LetterTransducer {
    pub fn new(input_alphabet: &[i32], output_alphabet: &[i32]) -> LetterTransducer {
        LetterTransducer {
            input_alphabet: sorted_alphabet(input_alphabet),
            output_alphabet: sorted_alphabet(output_alphabet),
            edges: Vec::new(),
            initial: BTreeSet::new(),
            terminal: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> usize {
        self.edges.push(Vec::new());
        self.terminal.push(false);
        self.labels.push(label.into());
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, input: i32, output: i32, to: usize) {
        self.edges[from].push((input, output, to));
    }

    pub fn set_initial(&mut self, s: usize, v: bool) {
        if v {
            self.initial.insert(s);
        } else {
            self.initial.remove(&s);
        }
    }

    pub fn set_terminal(&mut self, s: usize, v: bool) {
        self.terminal[s] = v;
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initial_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.initial.iter().copied()
    }

    pub fn terminal_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&s| self.terminal[s])
    }

    pub fn is_initial(&self, s: usize) -> bool {
        self.initial.contains(&s)
    }

    pub fn is_terminal(&self, s: usize) -> bool {
        self.terminal[s]
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn edges_from(&self, s: usize) -> &[(i32, i32, usize)] {
        &self.edges[s]
    }

    /// Projection on the input letters.
    pub fn input_automaton(&self) -> Nfa {
        let mut n = Nfa::new(&self.input_alphabet);
        for s in 0..self.num_states() {
            n.add_state(self.labels[s].clone(), self.terminal[s]);
        }
        for (s, es) in self.edges.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &(a, _, t) in es {
                if seen.insert((a, t)) {
                    n.add_edge(s, a, t);
                }
            }
        }
        for &s in &self.initial {
            n.set_initial(s);
        }
        n
    }

    /// Whether some successful path reads `input` and writes `output`.
    pub fn relates(&self, input: &[i32], output: &[i32]) -> bool {
        if input.len() != output.len() {
            return false;
        }
        let mut cur: BTreeSet<usize> = self.initial.clone();
        for (&a, &b) in input.iter().zip(output) {
            cur = cur
                .iter()
                .flat_map(|&s| {
                    self.edges[s].iter().filter(|e| e.0 == a && e.1 == b).map(|e| e.2)
                })
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&s| self.terminal[s])
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn letter(a: i32) -> String {
    crate::words::render_digits(&[a])
}

/// Graphviz rendering with states and edges in a fixed order.
pub fn dfa_to_dot(d: &Dfa, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=LR;\n", dot_escape(name));
    for s in 0..d.num_states() {
        let shape = if d.terminal[s] { "doublecircle" } else { "circle" };
        let _ = writeln!(
            out,
            "  q{s} [shape={shape}, label=\"{}\"];",
            dot_escape(&d.labels[s])
        );
    }
    if let Some(i) = d.initial {
        let _ = writeln!(out, "  start [shape=point];\n  start -> q{i};");
    }
    for s in 0..d.num_states() {
        for (i, &t) in d.trans[s].iter().enumerate() {
            if t != NONE {
                let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", letter(d.alphabet[i]));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn transducer_to_dot(t: &LetterTransducer, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=LR;\n", dot_escape(name));
    for s in 0..t.num_states() {
        let shape = if t.terminal[s] { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{s} [shape={shape}, label=\"{}\"];", dot_escape(&t.labels[s]));
    }
    for &i in &t.initial {
        let _ = writeln!(out, "  start{i} [shape=point];\n  start{i} -> q{i};");
    }
    for s in 0..t.num_states() {
        let mut es = t.edges[s].clone();
        es.sort_unstable_by_key(|e| (e.2, e.0, e.1));
        for (a, b, to) in es {
            let _ = writeln!(out, "  q{s} -> q{to} [label=\"{}|{}\"];", letter(a), letter(b));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonState<'a> {
    id: usize,
    label: &'a str,
    initial: bool,
    terminal: bool,
}

#[derive(Serialize)]
struct JsonEdge {
    from: usize,
    input: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<i32>,
    to: usize,
}

#[derive(Serialize)]
struct JsonAutomaton<'a> {
    alphabet: &'a [i32],
    states: Vec<JsonState<'a>>,
    edges: Vec<JsonEdge>,
}

pub fn dfa_to_json(d: &Dfa) -> String {
    let states = (0..d.num_states())
        .map(|s| JsonState {
            id: s,
            label: &d.labels[s],
            initial: d.initial == Some(s),
            terminal: d.terminal[s],
        })
        .collect();
    let mut edges = Vec::new();
    for s in 0..d.num_states() {
        for (i, &t) in d.trans[s].iter().enumerate() {
            if t != NONE {
                edges.push(JsonEdge { from: s, input: d.alphabet[i], output: None, to: t as usize });
            }
        }
    }
    serde_json::to_string_pretty(&JsonAutomaton { alphabet: &d.alphabet, states, edges })
        .expect("automaton serializes")
}

pub fn transducer_to_json(t: &LetterTransducer) -> String {
    let states = (0..t.num_states())
        .map(|s| JsonState {
            id: s,
            label: &t.labels[s],
            initial: t.initial.contains(&s),
            terminal: t.terminal[s],
        })
        .collect();
    let mut edges = Vec::new();
    for s in 0..t.num_states() {
        let mut es = t.edges[s].clone();
        es.sort_unstable_by_key(|e| (e.2, e.0, e.1));
        for (a, b, to) in es {
            edges.push(JsonEdge { from: s, input: a, output: Some(b), to });
        }
    }
    serde_json::to_string_pretty(&JsonAutomaton { alphabet: &t.input_alphabet, states, edges })
        .expect("transducer serializes")
}

impl LetterTransducer {
    pub fn output_alphabet(&self) -> &[i32] {
        &self.output_alphabet
    }

    pub fn input_alphabet(&self) -> &[i32] {
        &self.input_alphabet
    }
}
