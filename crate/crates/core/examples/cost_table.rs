//! Additions needed to compute r multiples of a point, per numeration
//! system, in units of log₂ M.

use pisot_minweight::analysis::{cost_table, naf2_frequency};
use pisot_minweight::Result;

fn main() -> Result<()> {
    println!("binary NAF nonzero density up to 10^5: {:.5}", naf2_frequency(100_000));
    for r in [1, 10, 20] {
        println!("r = {r}");
        for row in cost_table(r)? {
            println!("  {:<4} {:<9} weight {:.4}  cost {:.3}", row.system, row.digits, row.weight_per_log2, row.cost_per_log2);
        }
    }
    Ok(())
}
