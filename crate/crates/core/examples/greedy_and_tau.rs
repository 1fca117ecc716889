//! Greedy and τ expansions of small integers in the three built-in bases.

use pisot_minweight::expand::{greedy_expand, tau_expand, TauSpec};
use pisot_minweight::{Base, Result};

fn main() -> Result<()> {
    for base in Base::ALL {
        let f = base.field();
        let spec = TauSpec::builtin(base, false);
        println!("{base} (β ≈ {:.6})", f.approx());
        for n in 1..=8 {
            let z = f.from_int(n);
            let g = greedy_expand(&z, &f, 200);
            let t = tau_expand(&z, &spec, &f, 200)?;
            println!("  {n:>2}  greedy {:<16} weight {}   τ {:<16} weight {}", g.word.to_string(), g.word.weight(), t.to_string(), t.weight());
        }
    }
    Ok(())
}
