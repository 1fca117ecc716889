//! The zero automaton for the golden ratio: its states are the carries
//! reachable from 0 that can return to 0.

use pisot_minweight::minweight::build_zero_automaton;
use pisot_minweight::{BetaField, DigitWord, Result};

fn main() -> Result<()> {
    let f = BetaField::golden();
    let z = build_zero_automaton(&f, 2)?;
    println!("{} states", z.num_states());
    for s in &z.states {
        let q = f.q_from_elem(s);
        println!("  {q:<14} ≈ {:+.4}", f.q_to_f64(&q));
    }
    // 1 0 0 minus 0 1 1 is a difference word of value β² − β − 1 = 0.
    for w in ["1TT", "1T", "2T0T", "1T1T"] {
        let d = DigitWord::parse(w)?;
        println!("{w}: {}", if z.dfa.accepts(&d.digits) { "zero" } else { "not zero" });
    }
    Ok(())
}
