//! Unique minimal-weight representations of integers in the Fibonacci,
//! Tribonacci and S systems.

use pisot_minweight::intsys::{bounds_gg, greedy_int, u_terms, unique_minform, System};
use pisot_minweight::Result;

fn main() -> Result<()> {
    for sys in System::ALL {
        let terms: Vec<String> = u_terms(sys, 10).iter().map(|t| t.to_string()).collect();
        println!("{sys}: U = {} …", terms.join(", "));
        for n in [1, 2, 3, 7, 12, 20, 33, -12] {
            let m = unique_minform(n, sys)?;
            let g = if n >= 0 { greedy_int(n, sys)?.to_string() } else { "-".into() };
            println!("  {n:>4}  minimal {:<12} weight {}   greedy {g}", m.to_string(), m.weight());
        }
        let b = bounds_gg(6, sys);
        println!("  g_7 = {}, G_6 = {}", b.g_next, b.big_g);
    }
    Ok(())
}
