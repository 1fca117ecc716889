use proptest::prelude::*;

use pisot_minweight::analysis::average_weight_experiment;
use pisot_minweight::automata::{factor_complement, finite_language, language_equal, minimize};
use pisot_minweight::expand::{normalize_minweight, tau_expand, TauSpec};
use pisot_minweight::intsys::{unique_minform, value_u, System};
use pisot_minweight::minweight::{builtin_minweight_automaton, find_witness, reduce_digits};
use pisot_minweight::words::{equivalent_beta, value_beta};
use pisot_minweight::{Base, BetaField, DigitWord, FieldElem};

fn base() -> impl Strategy<Value = Base> {
    prop_oneof![Just(Base::Golden), Just(Base::Tribonacci), Just(Base::SmallestPisot)]
}

fn system() -> impl Strategy<Value = System> {
    prop_oneof![Just(System::F), Just(System::T), Just(System::S)]
}

fn elem(f: &BetaField, coeffs: &[i64], shift: i32) -> FieldElem {
    f.from_coeffs(&coeffs[..f.degree()], shift)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..=50, 3)
}

fn signed_word(max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(-1i32..=1, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn zero_test_is_exact(b in base(), x in coeffs(), y in coeffs(), sx in -4i32..4, sy in -4i32..4) {
        let f = b.field();
        let (a, c) = (elem(&f, &x, sx), elem(&f, &y, sy));
        prop_assert_eq!(f.sign(&f.sub(&a, &c)) == 0, a == c);
    }

    #[test]
    fn floor_brackets(b in base(), x in coeffs(), s in -4i32..4) {
        let f = b.field();
        let a = elem(&f, &x, s);
        let n = f.floor_of(&a);
        prop_assert!(f.cmp(&f.from_int(n), &a).is_le());
        prop_assert!(f.cmp(&a, &f.from_int(n + 1)).is_lt());
    }

    #[test]
    fn ring_axioms(b in base(), x in coeffs(), y in coeffs(), z in coeffs(), s in -3i32..3) {
        let f = b.field();
        let (a, c, d) = (elem(&f, &x, s), elem(&f, &y, 0), elem(&f, &z, -s));
        prop_assert_eq!(f.mul(&f.mul(&a, &c), &d), f.mul(&a, &f.mul(&c, &d)));
        prop_assert_eq!(f.add(&f.add(&a, &c), &d), f.add(&a, &f.add(&c, &d)));
        prop_assert_eq!(f.mul(&a, &f.add(&c, &d)), f.add(&f.mul(&a, &c), &f.mul(&a, &d)));
        prop_assert_eq!(f.mul(&f.beta(), &f.beta_pow(-1)), f.one());
    }

    #[test]
    fn exact_field_inverse(b in base(), x in coeffs(), s in -3i32..3) {
        let f = b.field();
        let q = f.q_from_elem(&elem(&f, &x, s));
        match f.q_inv(&q) {
            None => prop_assert!(q.is_zero()),
            Some(inv) => prop_assert_eq!(f.q_mul(&q, &inv), f.q_one()),
        }
    }

    #[test]
    fn strip_scales_value(b in base(), w in signed_word(12)) {
        let f = b.field();
        let x = DigitWord::new(w);
        let s = x.strip();
        prop_assert_eq!(s.weight(), x.weight());
        let j = x.trailing_zeros() as i32;
        if !s.is_empty() {
            prop_assert_eq!(value_beta(&s, &f), f.mul_beta_pow(&value_beta(&x, &f), -j));
        }
    }

    #[test]
    fn equivalence_is_shift_additive(b in base(), w in signed_word(8), i in 0usize..4, j in 0usize..4) {
        let f = b.field();
        let x = DigitWord::new(w.clone());
        prop_assume!(!x.strip().is_empty());
        let pad = |k: usize| DigitWord::new([w.clone(), vec![0; k]].concat());
        let (y, z) = (pad(i), pad(j));
        prop_assert_eq!(equivalent_beta(&x, &x, &f, 10), Some(0));
        let kxy = equivalent_beta(&x, &y, &f, 10).unwrap();
        prop_assert_eq!(equivalent_beta(&y, &x, &f, 10), Some(-kxy));
        let kyz = equivalent_beta(&y, &z, &f, 10).unwrap();
        prop_assert_eq!(equivalent_beta(&x, &z, &f, 10), Some(kxy + kyz));
    }

    #[test]
    fn value_u_is_linear(sys in system(), pair in (1usize..14).prop_flat_map(|n| (prop::collection::vec(-1i32..=1, n), prop::collection::vec(-1i32..=1, n)))) {
        let (a, b) = pair;
        let sum: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let v = |d: Vec<i32>| value_u(&DigitWord::new(d), sys).unwrap();
        prop_assert_eq!(v(sum), v(a) + v(b));
    }

    #[test]
    fn factor_complement_semantics(words in prop::collection::vec(prop::collection::vec(0i32..3, 1..4), 1..4), w in prop::collection::vec(0i32..3, 0..8)) {
        let h = finite_language(&[0, 1, 2], &words);
        let fc = factor_complement(&h).unwrap();
        let has_factor = words.iter().any(|x| w.windows(x.len()).any(|v| v == x.as_slice()));
        prop_assert_eq!(fc.accepts(&w), !has_factor);
        prop_assert!(language_equal(&minimize(&fc), &fc).unwrap());
    }

    #[test]
    fn recognizer_is_symmetric_and_factor_closed(b in base(), w in signed_word(14), cut in (0usize..15, 0usize..15)) {
        let m = builtin_minweight_automaton(b);
        let neg: Vec<i32> = w.iter().map(|d| -d).collect();
        prop_assert_eq!(m.accepts(&w), m.accepts(&neg));
        if m.accepts(&w) {
            let (i, j) = (cut.0.min(w.len()), cut.1.min(w.len()));
            let (i, j) = (i.min(j), i.max(j));
            prop_assert!(m.accepts(&w[i..j]));
        }
    }

    #[test]
    fn tau_avoids_forbidden_factors(b in base(), w in signed_word(10)) {
        let f = b.field();
        let spec = TauSpec::builtin(b, false);
        let t = tau_expand(&value_beta(&DigitWord::new(w), &f), &spec, &f, 400).unwrap();
        for x in &spec.forbidden {
            prop_assert!(!t.digits.windows(x.len()).any(|v| v == x.digits.as_slice()), "{} contains {}", t, x);
        }
    }

    #[test]
    fn normal_form_keeps_weight(b in base(), w in signed_word(10)) {
        let f = b.field();
        prop_assume!(builtin_minweight_automaton(b).accepts(&w));
        let x = DigitWord::new(w);
        let y = normalize_minweight(&x, b, &f).unwrap();
        prop_assert_eq!(y.weight(), x.weight());
    }

    #[test]
    fn minform_round_trips(sys in system(), n in -100_000i128..=100_000) {
        let m = unique_minform(n, sys).unwrap();
        prop_assert_eq!(value_u(&m, sys).unwrap(), n);
        prop_assert_eq!(unique_minform(-n, sys).unwrap(), m.negate());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn reduce_digits_keeps_class(b in base(), w in prop::collection::vec(-6i32..=6, 1..8)) {
        let f = b.field();
        let wit = find_witness(&f, 2, 12).unwrap();
        let x = DigitWord::new(w);
        let y = reduce_digits(&x, &f, &wit).unwrap();
        prop_assert!(y.max_abs_digit() <= 1);
        prop_assert!(y.weight() <= x.weight());
        if !x.strip().is_empty() {
            prop_assert!(equivalent_beta(&x, &y, &f, 200).is_some());
        }
    }

    #[test]
    fn scaled_average_is_monotone(sys in system(), m in 1u64..400) {
        let scaled = |m: u64| average_weight_experiment(sys, m).unwrap() * num_rational::BigRational::from_integer((2 * m + 1).into());
        prop_assert!(scaled(m) <= scaled(m + 1));
    }
}
