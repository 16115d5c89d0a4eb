//! beta_n over a parameter grid, one table per grid point in parallel.
//!
//!     cargo run --example sweep

use rayon::prelude::*;
use sextic_freud::moments::Params;
use sextic_freud::numerics::{format_significant, PrecisionContext};
use sextic_freud::orthopoly::RecurrenceTable;

fn main() -> sextic_freud::error::Result<()> {
    let n = 10;
    let ctx = PrecisionContext::for_order(30, n)?;
    let axis = [-1i64, 0, 1];
    let grid: Vec<(i64, i64)> = axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect();

    let values = grid
        .par_iter()
        .map(|&(t1, t2)| RecurrenceTable::compute(&Params::from_ints(t1, t2, &ctx), n, &ctx).map(|t| t.beta()[n].clone()))
        .collect::<Result<Vec<_>, _>>()?;

    println!("t1,t2,beta_{n}");
    for ((t1, t2), beta) in grid.iter().zip(&values) {
        println!("{t1},{t2},{}", format_significant(beta, 30));
    }
    Ok(())
}
