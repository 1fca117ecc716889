//! Runs the whole pipeline for a base given by its minimal polynomial,
//! e.g. `cargo run --example custom_base -- 1,-2,-1` for β = 1 + √2.

use pisot_minweight::minweight::{build_minweight_automaton, build_zero_automaton, find_witness, MinWeightSearch};
use pisot_minweight::{BetaField, DigitWord, Error, Result};

fn all_words(max_len: usize) -> Vec<Vec<i32>> {
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

fn main() -> Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1,-1,0,-1".into());
    let coeffs: Vec<i64> = arg
        .split(',')
        .map(|c| c.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse { text: arg.clone(), reason: "expected integers".into() })?;
    let f = BetaField::new(&coeffs)?;
    println!("β ≈ {:.6}, Pisot: {}", f.approx(), f.is_pisot());
    match find_witness(&f, 2, 12) {
        Some(w) => println!("2 is equivalent to {} (weight {})", w.word, w.word.weight()),
        None => println!("no light equivalent of 2 up to length 12"),
    }
    let z = build_zero_automaton(&f, 2)?;
    println!("zero automaton: {} states", z.num_states());
    let m = build_minweight_automaton(&f, 2)?;
    println!("minimal-weight recognizer: {} states", m.num_states());
    // Spot check against the exhaustive search on short words.
    let mut search = MinWeightSearch::new(&f, 2);
    let mut disagreements = 0;
    for w in all_words(6) {
        let x = DigitWord::new(w);
        if m.accepts(&x.digits) != search.is_minimal(&x)? {
            disagreements += 1;
        }
    }
    println!("disagreements with the search on words of length ≤ 6: {disagreements}");
    Ok(())
}
