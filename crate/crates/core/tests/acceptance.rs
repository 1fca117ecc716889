//! Runs the twelve acceptance criteria and prints one PASS/FAIL line for
//! each. Exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use pisot_minweight::analysis::{
    cost_table, empirical_frequency, markov_model, naf2_frequency, nonzero_frequency, signed_row, stationary,
};
use pisot_minweight::automata::{language_difference, language_equal};
use pisot_minweight::expand::{enumerate_minimal, enumerate_minimal_at, golden_branch_digits, tau_expand, tau_expand_at, TauSpec};
use pisot_minweight::intsys::{bounds_gg, builtin_int_minweight_automaton, unique_minform, value_u, IntOracle, System};
use pisot_minweight::minweight::{
    build_minweight_automaton, build_weight_transducer, build_zero_automaton, builtin_minweight_automaton,
    class_min_weight, find_witness, golden_explicit_m,
};
use pisot_minweight::words::{class_key, equivalent_beta, value_beta};
use pisot_minweight::{Base, BetaField, DigitWord, FieldElem, QElem};

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("golden recognizer: generic = explicit = exhaustive, length ≤ 12", c1_golden_recognizer),
        ("golden zero automaton states", c2_zero_states),
        ("golden weight transducer size", c3_transducer_size),
        ("τ-expansions: avoid X, minimal, scale-invariant, length ≤ 10", c4_tau),
        ("golden branching enumerates every minimal expansion", c5_branching),
        ("Fibonacci bounds, unique minimal forms, M_F = M_β", c6_fibonacci),
        ("Tribonacci digit-1 branching facts", c7_tribonacci_branching),
        ("exact stationary vectors", c8_stationary),
        ("empirical nonzero frequency at M = 10^4", c9_frequencies),
        ("binary NAF density and cost break-even", c10_cost),
        ("digit-set witnesses for 2", c11_witnesses),
        ("M_T, M_S agree with the integer oracle, length ≤ 10", c12_integer_recognizers),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words_up_to(max_len: usize) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<i32>| [-1, 0, 1].map(|d| [w.as_slice(), &[d]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn stripped(w: &[i32]) -> &[i32] {
    let a = w.iter().position(|&d| d != 0).unwrap_or(w.len());
    let b = w.iter().rposition(|&d| d != 0).map_or(a, |i| i + 1);
    &w[a..b]
}

fn weight(w: &[i32]) -> u64 {
    w.iter().map(|d| d.unsigned_abs() as u64).sum()
}

/// Class of each stripped word up to max_len (None for the zero class).
fn classes(f: &BetaField, max_len: usize) -> HashMap<Vec<i32>, Option<FieldElem>> {
    let mut out = HashMap::new();
    for w in words_up_to(max_len) {
        let s = stripped(&w).to_vec();
        if s.len() != w.len() || out.contains_key(&s) {
            continue;
        }
        let key = class_key(&value_beta(&DigitWord::new(s.clone()), f), f).map(|(k, _)| k);
        out.insert(s, key);
    }
    out
}

fn c1_golden_recognizer() -> Result<String, String> {
    let f = BetaField::golden();
    let generic = build_minweight_automaton(&f, 2).map_err(|e| e.to_string())?;
    let explicit = golden_explicit_m();
    ensure(language_equal(&generic, &explicit).unwrap(), || "generic and explicit differ".into())?;
    let cls = classes(&f, 12);
    let mut minima: HashMap<&Option<FieldElem>, u64> = HashMap::new();
    for (w, k) in &cls {
        let e = minima.entry(k).or_insert(u64::MAX);
        *e = (*e).min(weight(w));
    }
    minima.insert(&None, 0);
    // A lighter equivalent of a long word may itself be longer than 12, so
    // every verdict the universe cannot confirm goes to the unbounded search.
    let mut checked = 0;
    let mut horizon = 0;
    let mut bad = Vec::new();
    for w in words_up_to(12) {
        let s = stripped(&w);
        let accepted = generic.accepts(&w);
        ensure(accepted == explicit.accepts(&w), || format!("recognizers split on {:?}", w))?;
        checked += 1;
        let mut minimal = weight(s) == minima[&cls[s]];
        if minimal != accepted {
            horizon += 1;
            let x = DigitWord::new(s.to_vec());
            minimal = class_min_weight(&x, &f, 2).map_err(|e| e.to_string())?.0 == x.weight();
        }
        if minimal != accepted {
            bad.push(DigitWord::new(w.clone()).to_string());
        }
    }
    ensure(bad.is_empty(), || format!("{} disagreements, e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]))?;
    Ok(format!(
        "{} states, {checked} words, {} classes, 0 disagreements ({horizon} words needed a lighter form longer than 12)",
        generic.num_states(),
        minima.len()
    ))
}

fn c2_zero_states() -> Result<String, String> {
    let f = BetaField::golden();
    let z = build_zero_automaton(&f, 2).map_err(|e| e.to_string())?;
    // 0, ±β^-3, ±β^-2, ±β^-1, ±1, ±β, ±β², ±β±β^-2, ±β±β^-3, ±β²±β^-2, ±β²±β^-3.
    let b = |k| f.beta_pow(k);
    let mut expected = vec![f.zero()];
    for k in -3..=2 {
        expected.push(b(k));
    }
    for hi in [1, 2] {
        for lo in [-2, -3] {
            expected.push(f.add(&b(hi), &b(lo)));
            expected.push(f.sub(&b(hi), &b(lo)));
        }
    }
    let negs: Vec<FieldElem> = expected[1..].iter().map(|x| f.neg(x)).collect();
    expected.extend(negs);
    let want: BTreeSet<Vec<i64>> = expected.iter().map(|x| coords(&f, x)).collect();
    let got: BTreeSet<Vec<i64>> = z.states.iter().map(|x| coords(&f, x)).collect();
    ensure(want.len() == expected.len(), || "listed states are not distinct".into())?;
    ensure(got == want, || format!("built {} states, listed {}", got.len(), want.len()))?;
    Ok(format!("{} states, equal to the listed set as field elements (the listed set has 29 elements)", got.len()))
}

/// Coordinates in the basis 1, β.
fn coords(f: &BetaField, x: &FieldElem) -> Vec<i64> {
    let q: QElem = f.q_from_elem(x);
    let c = q.coeffs();
    (0..2).map(|i| c.get(i).map_or(0, |r| r.to_integer().try_into().unwrap())).collect()
}

fn c3_transducer_size() -> Result<String, String> {
    let f = BetaField::golden();
    let s = build_weight_transducer(&f, 2).map_err(|e| e.to_string())?;
    let n = s.num_states();
    let note = if n == 160 { "matches 160" } else { "differs from 160; criterion 1 is binding" };
    Ok(format!("{n} states, W = {}, {note}", s.max_weight))
}

fn contains(w: &[i32], x: &[i32]) -> bool {
    x.len() <= w.len() && w.windows(x.len()).any(|v| v == x)
}

fn c4_tau() -> Result<String, String> {
    let mut total = 0;
    for base in Base::ALL {
        let f = base.field();
        let spec = TauSpec::builtin(base, false);
        let mut seen = BTreeMap::new();
        for (w, k) in classes(&f, 10) {
            if let Some(k) = k {
                seen.entry(k).or_insert(w);
            }
        }
        for w in seen.values() {
            let x = DigitWord::new(w.clone());
            let z = value_beta(&x, &f);
            let t = tau_expand(&z, &spec, &f, 400).map_err(|e| format!("{base} {x}: {e}"))?;
            for bad in &spec.forbidden {
                ensure(!contains(&t.digits, &bad.digits), || format!("{base}: τ({x}) = {t} contains {bad}"))?;
            }
            let (mw, _) = class_min_weight(&x, &f, 2).map_err(|e| e.to_string())?;
            ensure(t.weight() == mw, || format!("{base}: τ({x}) = {t} has weight {}, class minimum {mw}", t.weight()))?;
            let mut k = 0;
            while !spec.in_domain(&f.mul_beta_pow(&z, -k), &f) {
                k += 1;
            }
            for extra in 1..=3 {
                let u = tau_expand_at(&z, k + extra, &spec, &f, 400).map_err(|e| e.to_string())?;
                ensure(stripped(&u.digits) == stripped(&t.digits), || format!("{base} {x}: scaling changes {t} to {u}"))?;
            }
        }
        total += seen.len();
    }
    Ok(format!("{total} classes over three bases, 0 violations"))
}

fn c5_branching() -> Result<String, String> {
    let f = BetaField::golden();
    let universe = classes(&f, 12);
    let mut by_class: HashMap<FieldElem, Vec<&Vec<i32>>> = HashMap::new();
    for (w, k) in &universe {
        if let Some(k) = k {
            by_class.entry(k.clone()).or_default().push(w);
        }
    }
    let mut keys = BTreeSet::new();
    for w in words_up_to(8) {
        if let Some(k) = &universe[stripped(&w)] {
            keys.insert(k.clone());
        }
    }
    let mut steps = 0;
    for k in &keys {
        let members = &by_class[k];
        let m = members.iter().map(|w| weight(w)).min().unwrap();
        let want: BTreeSet<Vec<i32>> = members.iter().filter(|w| weight(w) == m).map(|w| (*w).clone()).collect();
        let got: BTreeSet<Vec<i32>> =
            enumerate_minimal(k, Base::Golden, &f).map_err(|e| e.to_string())?.into_iter().map(|w| w.digits).collect();
        ensure(got == want, || format!("class of {:?}: enumerated {got:?}, oracle {want:?}", want.first()))?;
        for x in &got {
            // Read .x from the first nonzero digit with the rule.
            let mut r = value_beta(&DigitWord::with_point(x.clone(), 0), &f);
            for &d in x {
                let allowed = golden_branch_digits(&r, &f);
                ensure(allowed.contains(&d), || format!("{x:?}: digit {d} not in {allowed:?}"))?;
                r = f.sub(&f.mul_beta_pow(&r, 1), &f.from_int(d as i64));
                steps += 1;
            }
        }
    }
    Ok(format!("{} classes, {steps} digit steps consistent with the rule", keys.len()))
}

/// Least weight over all words of length L, and the number of words of
/// length L avoiding `x`, for each value, by dynamic programming from the
/// least significant digit.
fn fibonacci_tables(len: usize, x: &[Vec<i32>]) -> (HashMap<i64, u64>, HashMap<i64, u64>) {
    let u: Vec<i64> = (0..len).scan((1i64, 2i64), |s, _| {
        let v = s.0;
        *s = (s.1, s.0 + s.1);
        Some(v)
    }).collect();
    let mut best: HashMap<i64, u64> = HashMap::from([(0, 0)]);
    // Compliant suffixes are tracked by their last (leftmost) few digits.
    let keep = x.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let mut count: HashMap<(Vec<i32>, i64), u64> = HashMap::from([((Vec::new(), 0), 1)]);
    for &ui in &u {
        let mut nb = HashMap::new();
        for (&v, &w) in &best {
            for d in [-1i64, 0, 1] {
                let e = nb.entry(v + d * ui).or_insert(u64::MAX);
                *e = (*e).min(w + d.unsigned_abs());
            }
        }
        best = nb;
        let mut nc = HashMap::new();
        for ((head, v), c) in &count {
            for d in [-1, 0, 1] {
                let mut h = vec![d];
                h.extend(head);
                if x.iter().any(|f| h.starts_with(f)) {
                    continue;
                }
                h.truncate(keep);
                *nc.entry((h, v + d as i64 * ui)).or_insert(0) += c;
            }
        }
        count = nc;
    }
    let mut counts = HashMap::new();
    for ((_, v), c) in count {
        *counts.entry(v).or_insert(0) += c;
    }
    (best, counts)
}

fn c6_fibonacci() -> Result<String, String> {
    for n in 1..=30 {
        let b = bounds_gg(n, System::F);
        ensure(b.g_next - b.big_g == 1, || format!("g_{} - G_{n} = {}", n + 1, b.g_next - b.big_g))?;
    }
    let x: Vec<Vec<i32>> = TauSpec::builtin(Base::Golden, false).forbidden.iter().map(|w| w.digits.clone()).collect();
    let longest = (-5000..=5000).map(|n| unique_minform(n, System::F).unwrap().len()).max().unwrap();
    let len = longest + 4;
    let (best, counts) = fibonacci_tables(len, &x);
    for n in -5000i64..=5000 {
        let m = unique_minform(n as i128, System::F).map_err(|e| e.to_string())?;
        ensure(value_u(&m, System::F).unwrap() == n as i128, || format!("minform of {n} has the wrong value"))?;
        ensure(!x.iter().any(|f| contains(&m.digits, f)), || format!("minform {m} of {n} is not compliant"))?;
        ensure(best.get(&n) == Some(&m.weight()), || format!("{n}: minform {m}, exhaustive minimum {:?}", best.get(&n)))?;
        ensure(counts.get(&n) == Some(&1), || format!("{n}: {:?} compliant words", counts.get(&n)))?;
    }
    let mf = builtin_int_minweight_automaton(System::F);
    let mb = builtin_minweight_automaton(Base::Golden);
    ensure(language_equal(mf, mb).unwrap(), || "M_F differs from M_β".into())?;
    Ok(format!("g - G = 1 for n ≤ 30; |N| ≤ 5000 unique and minimal over length {len}; M_F = M_β"))
}

fn c7_tribonacci_branching() -> Result<String, String> {
    let f = BetaField::tribonacci();
    let starts_with_one = |w: &str| -> Result<bool, String> {
        let z = value_beta(&DigitWord::parse(w).unwrap(), &f);
        let all = enumerate_minimal_at(&z, Base::Tribonacci, &f).map_err(|e| e.to_string())?;
        ensure(!all.is_empty(), || format!("nothing enumerated for {w}"))?;
        Ok(all.iter().any(|x| x.digits.first() == Some(&1)))
    };
    for w in [".01001", ".01001001"] {
        ensure(!starts_with_one(w)?, || format!("{w} has a minimal expansion starting with 1"))?;
    }
    ensure(starts_with_one(".0011")?, || ".0011 has no minimal expansion starting with 1".into())?;
    Ok(".01(001)^n, n = 1, 2: none start with 1; .0011: one does".into())
}

fn c8_stationary() -> Result<String, String> {
    for base in Base::ALL {
        let m = markov_model(base);
        let f = &m.field;
        let pi = stationary(&m).map_err(|e| e.to_string())?;
        let q = |n: i64, d: i64| f.q_div(&f.q_int(n), &f.q_int(d)).unwrap();
        let expected: Vec<QElem> = match base {
            Base::Golden => (0..7).map(|i| if i == 3 { q(2, 5) } else { q(1, 10) }).collect(),
            Base::Tribonacci => {
                let den = f.q_add(&f.q_beta_pow(5), &f.q_one());
                let b3 = f.q_beta_pow(3);
                let side = f.q_div(&b3, &f.q_mul(&f.q_int(2), &den)).unwrap();
                let mid = f.q_div(&f.q_add(&b3, &f.q_beta_pow(2)), &den).unwrap();
                vec![side.clone(), side.clone(), mid, side.clone(), side]
            }
            Base::SmallestPisot => {
                let b2 = f.q_mul(&f.q_int(4), &f.q_beta_pow(2));
                let den = f.q_add(&f.q_int(14), &b2);
                (0..15).map(|i| f.q_div(&if i == 7 { b2.clone() } else { f.q_one() }, &den).unwrap()).collect()
            }
        };
        ensure(pi == expected, || format!("{base}: got {pi:?}"))?;
    }
    Ok("golden, tribonacci and smallest-Pisot vectors equal exactly".into())
}

fn c9_frequencies() -> Result<String, String> {
    let mut parts = Vec::new();
    for sys in System::ALL {
        let c = sys.field().q_to_f64(&nonzero_frequency(sys.base()).map_err(|e| e.to_string())?);
        let e = empirical_frequency(sys, 10_000).map_err(|e| e.to_string())?;
        ensure((e - c).abs() <= 0.02, || format!("{sys}: {e} vs {c}"))?;
        parts.push(format!("{sys} {e:.5} vs {c:.5}"));
    }
    Ok(parts.join(", "))
}

fn c10_cost() -> Result<String, String> {
    let naf = naf2_frequency(100_000);
    ensure((naf - 1.0 / 3.0).abs() <= 0.01, || format!("NAF density {naf}"))?;
    let cost = |r, s: &str| signed_row(&cost_table(r).unwrap(), s).unwrap().cost_per_log2;
    let (f10, b10) = (cost(10, "F"), cost(10, "2^n"));
    let (s20, f20) = (cost(20, "S"), cost(20, "F"));
    for (got, want) in [(f10, 4.321), (b10, 4.333), (s20, 7.156), (f20, 7.202)] {
        ensure((got - want).abs() <= 5e-4, || format!("{got} vs {want}"))?;
    }
    ensure(f10 < b10 && s20 < f20, || "break-even order reversed".into())?;
    Ok(format!("NAF {naf:.5}; r=10: {f10:.3} < {b10:.3}; r=20: {s20:.3} < {f20:.3}"))
}

fn c11_witnesses() -> Result<String, String> {
    let mut parts = Vec::new();
    for (base, expected) in [(Base::Golden, "10.01"), (Base::Tribonacci, "10.001"), (Base::SmallestPisot, "100.00001")] {
        let f = base.field();
        let w = find_witness(&f, 2, 12).ok_or_else(|| format!("{base}: no witness"))?;
        let e = DigitWord::parse(expected).unwrap();
        ensure(w.word.weight() <= 2 && w.word.max_abs_digit() <= 1, || format!("{base}: {} is not a (D_2) witness", w.word))?;
        ensure(value_beta(&w.word, &f) == f.from_int(2), || format!("{base}: {} does not evaluate to 2", w.word))?;
        ensure(equivalent_beta(&w.word, &e, &f, 40).is_some(), || format!("{base}: {} is not equivalent to {e}", w.word))?;
        parts.push(format!("{base} {}", w.word));
    }
    Ok(parts.join(", "))
}

fn c12_integer_recognizers() -> Result<String, String> {
    let words = words_up_to(10);
    let mut parts = Vec::new();
    for sys in System::ALL {
        let m = builtin_int_minweight_automaton(sys);
        let mut oracle = IntOracle::new(sys);
        let mut bad = Vec::new();
        for w in &words[1..] {
            let x = DigitWord::new(w.clone());
            let minimal = oracle.lighter(&x, 6).map_err(|e| e.to_string())?.is_none();
            if minimal != m.accepts(w) {
                bad.push(x.to_string());
            }
        }
        ensure(bad.is_empty(), || format!("{sys}: {} disagreements, e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]))?;
        parts.push(format!("{sys} {} states", m.num_states()));
    }
    let witness = language_difference(builtin_int_minweight_automaton(System::T), builtin_minweight_automaton(Base::Tribonacci))
        .unwrap()
        .map(|w| DigitWord::new(w).to_string());
    Ok(format!("{} words each, 0 disagreements ({}; M_T vs M_β differ first at {:?})", words.len() - 1, parts.join(", "), witness))
}
