//! Builds the minimal-weight recognizer for a base through the generic
//! pipeline and checks a few words against the exhaustive search.

use pisot_minweight::minweight::{build_minweight_automaton, build_weight_transducer, class_min_weight};
use pisot_minweight::{Base, DigitWord, Result};

fn main() -> Result<()> {
    let base = std::env::args().nth(1).map_or(Ok(Base::Golden), |s| s.parse())?;
    let f = base.field();
    let s = build_weight_transducer(&f, 2)?;
    println!("{base}: weight transducer has {} states, W = {}", s.num_states(), s.max_weight);
    let m = build_minweight_automaton(&f, 2)?;
    println!("minimal-weight recognizer has {} states", m.num_states());
    for w in ["11", "101", "1001", "10T1", "1111", "100T00T"] {
        let x = DigitWord::parse(w)?;
        let (mw, y) = class_min_weight(&x, &f, 2)?;
        let verdict = if m.accepts(&x.digits) { "minimal" } else { "heavy" };
        println!("  {w:<8} {verdict:<8} class minimum {mw} ({y})");
    }
    Ok(())
}
