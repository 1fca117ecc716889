//! Exact window chains of minimal-weight digits and their stationary
//! vectors, which give the asymptotic density of nonzero digits.

use pisot_minweight::analysis::{markov_model, nonzero_frequency, stationary};
use pisot_minweight::{Base, Result};

fn main() -> Result<()> {
    for base in Base::ALL {
        let m = markov_model(base);
        let pi = stationary(&m)?;
        println!("{base}: {} window states", m.size());
        for (label, p) in m.state_labels.iter().zip(&pi) {
            println!("  {label:<8} π = {p}");
        }
        let c = nonzero_frequency(base)?;
        println!("  nonzero density {c} ≈ {:.5}", m.field.q_to_f64(&c));
    }
    Ok(())
}
