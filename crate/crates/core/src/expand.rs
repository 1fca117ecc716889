//! Expansion generators: greedy, the symmetric τ transformations, weight
//! preserving normalization and branching enumeration of minimal expansions.

use std::collections::HashSet;

use crate::algebra::{Base, BetaField, FieldElem, Ratio};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::minweight;
use crate::words::{class_key, equivalent_beta, value_beta, DigitWord};

/// An expansion together with whether it terminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub word: DigitWord,
    pub terminated: bool,
}

/// Builds the word with the given digits after the point shifted by `k`,
/// padding with zeros so that the point lies inside the word.
fn place_point(mut digits: Vec<i32>, k: i32) -> DigitWord {
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

/// Greedy β-expansion of z ≥ 0: z is scaled by the least β^k, k ≥ 0, with
/// z < β^k and digits ⌊β·τ^(j−1)⌋ are produced until the remainder vanishes.
pub fn greedy_expand(z: &FieldElem, f: &BetaField, max_len: usize) -> Expansion {
    assert!(f.sign(z) >= 0, "greedy expansion needs z ≥ 0");
    if z.is_zero() {
        return Expansion { word: DigitWord::new(Vec::new()), terminated: true };
    }
    let mut k = 0i32;
    while f.cmp(z, &f.beta_pow(k)).is_ge() {
        k += 1;
    }
    let mut r = f.mul_beta_pow(z, -k);
    let mut digits = Vec::new();
    while !r.is_zero() && digits.len() < max_len {
        let t = f.mul_beta_pow(&r, 1);
        let d = f.floor_of(&t);
        r = f.sub(&t, &f.from_int(d));
        digits.push(d as i32);
    }
    Expansion { terminated: r.is_zero(), word: place_point(digits, k) }
}

/// Value of the eventually periodic expansion .prefix(period)^ω as a ratio.
pub fn periodic_value(prefix: &[i32], period: &[i32], f: &BetaField) -> Ratio {
    assert!(!period.is_empty(), "empty period");
    let ints = |w: &[i32]| -> Vec<i64> { w.iter().map(|&d| d as i64).collect() };
    let m = period.len() as i32;
    let den = f.sub(&f.beta_pow(m), &f.one());
    let head = f.mul(&f.horner(&ints(prefix)), &den);
    let num = f.add(&head, &f.horner(&ints(period)));
    f.ratio(f.mul_beta_pow(&num, -(prefix.len() as i32)), den)
}

/// A symmetric transformation τ(z) = βz − ⌊slope·z + 1/2⌋ on [−b, b) and
/// the factors its expansions avoid.
#[derive(Clone, Debug)]
pub struct TauSpec {
    pub name: &'static str,
    pub base: Base,
    pub domain_bound: Ratio,
    pub slope: Ratio,
    pub forbidden: Vec<DigitWord>,
}

fn with_opposites(words: &[String]) -> Vec<DigitWord> {
    let mut out: Vec<DigitWord> = words.iter().map(|w| DigitWord::parse(w).expect("pattern")).collect();
    let neg: Vec<DigitWord> = out.iter().map(DigitWord::negate).collect();
    out.extend(neg);
    out
}

impl TauSpec {
    /// The main transformation of a base, or its variant when `variant` is set.
    pub fn builtin(base: Base, variant: bool) -> TauSpec {
        let f = base.field();
        let b = |k| f.beta_pow(k);
        let int = |n| f.from_int(n);
        let one = f.one();
        let strs = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let (name, domain_bound, slope, forbidden) = match (base, variant) {
            (Base::Golden, false) => {
                let b2p1 = f.add(&b(2), &one);
                (
                    "golden",
                    f.ratio(b(2), b2p1.clone()),
                    f.ratio(b2p1, f.scale(&b(1), 2)),
                    strs(&["11", "101", "1001", "1T", "10T"]),
                )
            }
            (Base::Golden, true) => (
                "golden-variant",
                f.ratio(b(1), int(2)),
                f.ratio(one.clone(), one.clone()),
                strs(&["11", "101", "1T", "10T", "100T"]),
            ),
            (Base::Tribonacci, false) => {
                let bp1 = f.add(&b(1), &one);
                (
                    "tribonacci",
                    f.ratio(b(1), bp1.clone()),
                    f.ratio(bp1, int(2)),
                    strs(&["11", "101", "1T"]),
                )
            }
            (Base::Tribonacci, true) => {
                let b2m1 = f.sub(&b(2), &one);
                (
                    "tribonacci-variant",
                    f.ratio(b(1), b2m1.clone()),
                    f.ratio(b2m1, int(2)),
                    strs(&["11", "1T", "10T"]),
                )
            }
            (Base::SmallestPisot, v) => {
                let mut x = Vec::new();
                x.push(if v { "1000000T" } else { "10000001" }.to_string());
                for k in 0..=5 {
                    let zeros = "0".repeat(k);
                    x.push(format!("1{zeros}1"));
                    x.push(format!("1{zeros}T"));
                }
                if v {
                    ("smallest-pisot-variant", f.ratio(b(2), int(2)), f.ratio(b(-1), one.clone()), x)
                } else {
                    let b2p1 = f.add(&b(2), &one);
                    (
                        "smallest-pisot",
                        f.ratio(b(3), b2p1.clone()),
                        f.ratio(b2p1, f.scale(&b(2), 2)),
                        x,
                    )
                }
            }
        };
        TauSpec { name, base, domain_bound, slope, forbidden: with_opposites(&forbidden) }
    }

    /// Whether −b ≤ x < b.
    pub fn in_domain(&self, x: &FieldElem, f: &BetaField) -> bool {
        let t = f.mul(x, &self.domain_bound.den);
        let num = &self.domain_bound.num;
        f.sign(&f.sub(num, &t)) > 0 && f.sign(&f.add(num, &t)) >= 0
    }

    /// Whether the word contains one of the forbidden factors.
    pub fn first_forbidden<'a>(&'a self, w: &[i32]) -> Option<&'a DigitWord> {
        self.forbidden.iter().find(|x| w.windows(x.len()).any(|win| win == x.digits.as_slice()))
    }
}

/// The six built-in specs: main and variant for each base.
pub fn builtin_tau_specs() -> Vec<TauSpec> {
    Base::ALL
        .iter()
        .flat_map(|&b| [TauSpec::builtin(b, false), TauSpec::builtin(b, true)])
        .collect()
}

/// The τ-expansion of z: z is scaled by the least β^(−k), k ≥ 0, landing in
/// the domain, and the orbit is followed until it reaches 0.
pub fn tau_expand(z: &FieldElem, spec: &TauSpec, f: &BetaField, max_len: usize) -> Result<DigitWord> {
    if z.is_zero() {
        return Ok(DigitWord::new(Vec::new()));
    }
    let mut k = 0;
    while !spec.in_domain(&f.mul_beta_pow(z, -k), f) {
        k += 1;
    }
    tau_expand_at(z, k, spec, f, max_len)
}

/// τ-expansion of z starting from β^(−k)·z, which must lie in the domain.
pub fn tau_expand_at(
    z: &FieldElem,
    k: i32,
    spec: &TauSpec,
    f: &BetaField,
    max_len: usize,
) -> Result<DigitWord> {
    assert!(spec.base.matches(f), "spec is for another base");
    let mut r = f.mul_beta_pow(z, -k);
    if !spec.in_domain(&r, f) {
        return Err(Error::Domain(format!("β^-{k}·z is outside the domain of {}", spec.name)));
    }
    let mut seen = HashSet::new();
    let mut digits = Vec::new();
    while !r.is_zero() {
        if digits.len() >= max_len || !seen.insert(r.clone()) {
            return Err(Error::NonTerminating(max_len));
        }
        let y = f.round_half_down(&spec.slope, &r);
        r = f.sub(&f.mul_beta_pow(&r, 1), &f.from_int(y));
        if !spec.in_domain(&r, f) {
            return Err(Error::Invariant(format!("{} left its domain", spec.name)));
        }
        digits.push(y as i32);
    }
    Ok(place_point(digits, k))
}

/// Largest value of a minimal-weight expansion .x over {−1, 0, 1}: the upper
/// end of the interval of the digit 1.
pub fn representable_bound(base: Base, f: &BetaField) -> Ratio {
    let w = |s: &str| DigitWord::parse(s).expect("pattern").digits;
    match base {
        Base::Golden => periodic_value(&w("1"), &w("0100"), f),
        Base::Tribonacci => periodic_value(&w("1"), &w("100"), f),
        Base::SmallestPisot => periodic_value(&w("1"), &w("00000100"), f),
    }
}

/// Rewrites a minimal-weight word into the base's X-avoiding form, which has
/// the same weight and value class.
pub fn normalize_minweight(x: &DigitWord, base: Base, f: &BetaField) -> Result<DigitWord> {
    let m = minweight::builtin_minweight_automaton(base);
    let digits = x.strip().digits;
    if digits.iter().any(|d| d.abs() > 1) || !m.accepts(&digits) {
        return Err(Error::NotMinimal(x.to_string()));
    }
    let spec = TauSpec::builtin(base, false);
    let y = tau_expand(&value_beta(x, f), &spec, f, 4 * x.len() + 64)?;
    if y.weight() != x.weight() || (!x.strip().is_empty() && equivalent_beta(x, &y, f, i32::MAX).is_none()) {
        return Err(Error::Invariant(format!("normal form {y} of {x} is not equivalent")));
    }
    Ok(y)
}

/// Digits allowed by the golden-ratio branching rule at remainder r.
pub fn golden_branch_digits(r: &FieldElem, f: &BetaField) -> Vec<i32> {
    assert!(Base::Golden.matches(f));
    let den = f.add(&f.beta_pow(2), &f.one());
    let th = |n: &FieldElem| f.ratio(n.clone(), den.clone());
    let cut = [th(&f.from_int(2)), th(&f.beta()), th(&f.scale(&f.beta(), 2))];
    let a = if f.sign(r) < 0 { f.neg(r) } else { r.clone() };
    let s = f.sign(r);
    // Position of |r| among β/(β²+1) < 2/(β²+1) < 2β/(β²+1).
    let below = |b: &Ratio| f.cmp(&f.mul(&a, &b.den), &b.num);
    match (below(&cut[1]), below(&cut[0]), below(&cut[2])) {
        (std::cmp::Ordering::Less, _, _) => vec![0],
        (std::cmp::Ordering::Greater, std::cmp::Ordering::Less, _) => {
            let mut v = vec![0, s];
            v.sort();
            v
        }
        (_, std::cmp::Ordering::Greater, std::cmp::Ordering::Less) => vec![s],
        _ => Vec::new(),
    }
}

/// All minimal-weight expansions .x = z over {−1, 0, 1}, leading zeros
/// included, as words with the point in front.
pub fn enumerate_minimal_at(z: &FieldElem, base: Base, f: &BetaField) -> Result<Vec<DigitWord>> {
    let bound = representable_bound(base, f);
    if z.is_zero() {
        return Ok(vec![DigitWord::with_point(Vec::new(), 0)]);
    }
    if !f.abs_lt_ratio(z, &bound) {
        return Err(Error::Domain(format!("{z} is not below the representable bound")));
    }
    let m = minweight::builtin_minweight_automaton(base);
    let mut out = Vec::new();
    let Some(q0) = m.initial() else { return Ok(out) };
    let mut prefix = Vec::new();
    let mut on_path = HashSet::new();
    enumerate_dfs(m, q0, z.clone(), &bound, f, &mut prefix, &mut on_path, &mut out)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_dfs(
    m: &Dfa,
    q: usize,
    r: FieldElem,
    bound: &Ratio,
    f: &BetaField,
    prefix: &mut Vec<i32>,
    on_path: &mut HashSet<(usize, FieldElem)>,
    out: &mut Vec<DigitWord>,
) -> Result<()> {
    if r.is_zero() {
        if m.is_terminal(q) {
            out.push(DigitWord::with_point(prefix.clone(), 0));
        }
        return Ok(());
    }
    if !on_path.insert((q, r.clone())) {
        return Err(Error::Invariant(format!("remainder cycle after {}", DigitWord::new(prefix.clone()))));
    }
    let br = f.mul_beta_pow(&r, 1);
    for d in [-1, 0, 1] {
        let Some(q2) = m.step(q, d) else { continue };
        let r2 = f.sub(&br, &f.from_int(d as i64));
        if !r2.is_zero() && !f.abs_lt_ratio(&r2, bound) {
            continue;
        }
        prefix.push(d);
        enumerate_dfs(m, q2, r2, bound, f, prefix, on_path, out)?;
        prefix.pop();
    }
    on_path.remove(&(q, r));
    Ok(())
}

/// All stripped minimal-weight words in the value class of z.
pub fn enumerate_minimal(z: &FieldElem, base: Base, f: &BetaField) -> Result<Vec<DigitWord>> {
    if z.is_zero() {
        return Ok(vec![DigitWord::new(Vec::new())]);
    }
    // A stripped word starting with ±1 has |.w| ≥ (1 − U)/β, so starting at
    // the least scale above that bound every class member appears, possibly
    // behind leading zeros.
    let u = representable_bound(base, f);
    let low = f.ratio(f.mul_beta_pow(&f.sub(&u.den, &u.num), -1), u.den.clone());
    let mut e = 0;
    while f.abs_lt_ratio(&f.mul_beta_pow(z, e), &low) {
        e += 1;
    }
    while !f.abs_lt_ratio(&f.mul_beta_pow(z, e - 1), &low) {
        e -= 1;
    }
    let start = f.mul_beta_pow(z, e);
    let mut words: Vec<DigitWord> =
        enumerate_minimal_at(&start, base, f)?.iter().map(DigitWord::strip).collect();
    words.sort();
    words.dedup();
    Ok(words)
}

/// The minimal-weight expansions of z itself: the words of
/// `enumerate_minimal` with the point placed so that each has value z.
pub fn enumerate_minimal_placed(z: &FieldElem, base: Base, f: &BetaField) -> Result<Vec<DigitWord>> {
    let words = enumerate_minimal(z, base, f)?;
    if z.is_zero() {
        return Ok(words);
    }
    let (_, ez) = class_key(z, f).expect("nonzero");
    let mut out: Vec<DigitWord> = words
        .into_iter()
        .map(|w| {
            let (_, ew) = class_key(&value_beta(&w, f), f).expect("nonzero");
            // value(w) = β^(ez − ew)·z.
            let n = w.len() as i32;
            place_point(w.digits, n - (ez - ew))
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minweight::class_min_weight;

    fn w(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    #[test]
    fn greedy_examples() {
        let f = BetaField::golden();
        let e = greedy_expand(&f.from_int(2), &f, 50);
        assert!(e.terminated);
        assert_eq!(e.word.to_string(), "10.01");
        assert_eq!(greedy_expand(&f.one(), &f, 50).word.to_string(), "1.");
        assert_eq!(greedy_expand(&f.zero(), &f, 50).word, DigitWord::new(Vec::new()));
        assert_eq!(greedy_expand(&f.beta_pow(-2), &f, 50).word.to_string(), ".01");
        let t = BetaField::tribonacci();
        let e = greedy_expand(&t.from_int(2), &t, 50);
        assert_eq!(e.word.to_string(), "10.001");
    }

    #[test]
    fn greedy_truncates_without_failing() {
        let f = BetaField::golden();
        let e = greedy_expand(&f.from_int(7), &f, 2);
        assert!(!e.terminated);
        assert_eq!(e.word.len(), 5);
    }

    #[test]
    fn periodic_closed_forms() {
        let f = BetaField::golden();
        let b2p1 = f.add(&f.beta_pow(2), &f.one());
        let one_over = f.ratio(f.one(), b2p1.clone());
        let p = periodic_value(&[], &[0, 0, 1, 0], &f);
        assert_eq!(f.cmp_ratio(&p, &one_over), std::cmp::Ordering::Equal);
        let u = representable_bound(Base::Golden, &f);
        let closed = f.ratio(f.scale(&f.beta(), 2), b2p1);
        assert_eq!(f.cmp_ratio(&u, &closed), std::cmp::Ordering::Equal);

        let t = BetaField::tribonacci();
        let bp1 = t.add(&t.beta(), &t.one());
        let closed = t.ratio(t.add(&t.scale(&t.beta(), 2), &t.one()), t.mul(&t.beta(), &bp1));
        let u = representable_bound(Base::Tribonacci, &t);
        assert_eq!(t.cmp_ratio(&u, &closed), std::cmp::Ordering::Equal);
        let low = periodic_value(&[], &[0, 1, 0], &t);
        assert_eq!(t.cmp_ratio(&low, &t.ratio(t.one(), bp1)), std::cmp::Ordering::Equal);

        let s = BetaField::smallest_pisot();
        let b2p1 = s.add(&s.beta_pow(2), &s.one());
        let closed = s.ratio(s.add(&s.beta_pow(2), &s.beta_pow(-1)), b2p1.clone());
        let u = representable_bound(Base::SmallestPisot, &s);
        assert_eq!(s.cmp_ratio(&u, &closed), std::cmp::Ordering::Equal);
        let low = periodic_value(&[], &w("01000000").digits, &s);
        assert_eq!(s.cmp_ratio(&low, &s.ratio(s.beta_pow(2), b2p1)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn builtin_spec_sizes() {
        let specs = builtin_tau_specs();
        assert_eq!(specs.len(), 6);
        let sizes: Vec<usize> = specs.iter().map(|s| s.forbidden.len()).collect();
        assert_eq!(sizes, vec![10, 10, 6, 6, 26, 26]);
    }

    #[test]
    fn tau_examples() {
        let f = BetaField::golden();
        let spec = TauSpec::builtin(Base::Golden, false);
        let y = tau_expand(&f.from_int(2), &spec, &f, 100).unwrap();
        assert_eq!(y.to_string(), "100.T");
        assert_eq!(tau_expand(&f.one(), &spec, &f, 100).unwrap().strip(), w("1"));
        assert!(tau_expand(&f.zero(), &spec, &f, 100).unwrap().is_empty());
        // Larger scalings only add leading zeros.
        let y4 = tau_expand_at(&f.from_int(2), 5, &spec, &f, 100).unwrap();
        assert_eq!(y4.strip(), y.strip());
        assert!(matches!(tau_expand_at(&f.from_int(2), 1, &spec, &f, 100), Err(Error::Domain(_))));

        let t = BetaField::tribonacci();
        let spec = TauSpec::builtin(Base::Tribonacci, false);
        let y = tau_expand(&t.from_int(2), &spec, &t, 100).unwrap();
        assert_eq!(value_beta(&y, &t), t.from_int(2));
        assert_eq!(y.weight(), 2);
        assert!(spec.first_forbidden(&y.digits).is_none());
        assert_eq!(class_min_weight(&y, &t, 2).unwrap().0, 2);
    }

    #[test]
    fn variants_avoid_their_factors() {
        for spec in builtin_tau_specs() {
            let f = spec.base.field();
            for n in -30..=30 {
                let y = tau_expand(&f.from_int(n), &spec, &f, 200).unwrap();
                assert_eq!(value_beta(&y, &f), f.from_int(n), "{} {n}", spec.name);
                assert!(spec.first_forbidden(&y.digits).is_none(), "{} {n} -> {y}", spec.name);
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let f = BetaField::golden();
        let y = normalize_minweight(&w("1001"), Base::Golden, &f).unwrap();
        assert_eq!(y.strip(), w("100T"));
        assert_eq!(normalize_minweight(&w("1"), Base::Golden, &f).unwrap().strip(), w("1"));
        assert_eq!(normalize_minweight(&w("100T"), Base::Golden, &f).unwrap().strip(), w("100T"));
        assert!(matches!(normalize_minweight(&w("11"), Base::Golden, &f), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn golden_enumeration_examples() {
        let f = BetaField::golden();
        let one = enumerate_minimal(&f.one(), Base::Golden, &f).unwrap();
        assert_eq!(one, vec![w("1")]);
        let two = enumerate_minimal(&f.from_int(2), Base::Golden, &f).unwrap();
        assert_eq!(two, vec![w("100T"), w("1001")]);
        let placed = enumerate_minimal_placed(&f.from_int(2), Base::Golden, &f).unwrap();
        assert_eq!(placed, vec![w("100.T"), w("10.01")]);
        assert_eq!(enumerate_minimal(&f.zero(), Base::Golden, &f).unwrap(), vec![w("")]);
        assert!(matches!(
            enumerate_minimal_at(&f.one(), Base::Golden, &f),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn golden_branch_rule() {
        let f = BetaField::golden();
        assert_eq!(golden_branch_digits(&f.zero(), &f), vec![0]);
        // .1 = 0.618 lies between 2/(β²+1) ≈ 0.553 and 2β/(β²+1) ≈ 0.894.
        assert_eq!(golden_branch_digits(&f.beta_pow(-1), &f), vec![1]);
        // .0101 = 0.528 lies between β/(β²+1) ≈ 0.447 and 2/(β²+1).
        let r = value_beta(&w(".0101"), &f);
        assert_eq!(golden_branch_digits(&r, &f), vec![0, 1]);
        assert_eq!(golden_branch_digits(&f.neg(&r), &f), vec![-1, 0]);
        assert!(golden_branch_digits(&f.one(), &f).is_empty());
    }
}
