//! Recognizers of minimal-weight integer representations in F, T and S,
//! compared with the recognizer for the underlying base.

use pisot_minweight::automata::{dfa_to_dot, language_difference};
use pisot_minweight::intsys::{builtin_int_minweight_automaton, value_u, System};
use pisot_minweight::minweight::builtin_minweight_automaton;
use pisot_minweight::{DigitWord, Result};

fn main() -> Result<()> {
    for sys in System::ALL {
        let m = builtin_int_minweight_automaton(sys);
        let mb = builtin_minweight_automaton(sys.base());
        print!("{sys}: {} states, base recognizer {} states, ", m.num_states(), mb.num_states());
        match language_difference(m, mb)? {
            None => println!("same language"),
            Some(w) => {
                let w = DigitWord::new(w);
                let side = if m.accepts(&w.digits) { "integer only" } else { "base only" };
                println!("differ at {w} ({side}, value {})", value_u(&w, sys)?);
            }
        }
    }
    if std::env::args().any(|a| a == "--dot") {
        print!("{}", dfa_to_dot(builtin_int_minweight_automaton(System::F), "M_F"));
    }
    Ok(())
}
