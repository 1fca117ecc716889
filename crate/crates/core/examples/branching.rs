//! All minimal-weight expansions of a value, found by walking the
//! recognizer alongside the remainder βz − x.

use pisot_minweight::expand::{enumerate_minimal_placed, golden_branch_digits};
use pisot_minweight::words::value_beta;
use pisot_minweight::{Base, BetaField, DigitWord, Result};

fn main() -> Result<()> {
    let f = BetaField::golden();
    for n in 1..=10 {
        let all = enumerate_minimal_placed(&f.from_int(n), Base::Golden, &f)?;
        let shown: Vec<String> = all.iter().map(|w| w.to_string()).collect();
        println!("{n:>2}: {}", shown.join("  "));
    }
    // The digit rule at a few remainders.
    for r in [".1", ".0101", ".01", ".001"] {
        let z = value_beta(&DigitWord::parse(r)?, &f);
        println!("remainder {r}: next digit in {:?}", golden_branch_digits(&z, &f));
    }
    // Tribonacci: .01(001)^n never starts with a 1, .0011 can.
    let t = BetaField::tribonacci();
    for w in [".01001", ".01001001", ".0011"] {
        let z = value_beta(&DigitWord::parse(w)?, &t);
        let all = enumerate_minimal_placed(&z, Base::Tribonacci, &t)?;
        let shown: Vec<String> = all.iter().map(|w| w.to_string()).collect();
        println!("tribonacci {w}: {}", shown.join("  "));
    }
    Ok(())
}
