//! The fourth-order difference equation satisfied by beta_n, evaluated on
//! exact recurrence data for a few parameter pairs.
//!
//!     cargo run --example painleve

use sextic_freud::identities::{dpainleve_lhs, run_range, Check};
use sextic_freud::moments::Params;
use sextic_freud::numerics::{format_significant, PrecisionContext};
use sextic_freud::orthopoly::RecurrenceTable;

fn main() -> sextic_freud::error::Result<()> {
    let n_max = 40;
    let ctx = PrecisionContext::for_order(50, n_max)?;
    for (t1, t2) in [(0, 0), (1, 1), (1, -1), (-1, 2)] {
        let table = RecurrenceTable::compute(&Params::from_ints(t1, t2, &ctx), n_max, &ctx)?;
        let report = run_range(&table, Check::Dpi, 1, n_max - 2)?;
        println!(
            "({t1:>2},{t2:>2})  LHS(10) = {}  max |LHS-n|/n = {} at n = {}",
            format_significant(&dpainleve_lhs(&table, 10), 12),
            format_significant(&report.max_rel_residual, 3),
            report.worst_n
        );
    }
    Ok(())
}
