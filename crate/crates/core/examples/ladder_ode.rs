//! Ladder operators, compatibility conditions, the second-order ODE and the
//! p(n) formula, as relative residuals over a table.
//!
//!     cargo run --example ladder_ode

use sextic_freud::identities::{compatibility_terms, ladder_coeffs, run_range, Check, LadderForm};
use sextic_freud::moments::Params;
use sextic_freud::numerics::{format_significant, PrecisionContext};
use sextic_freud::orthopoly::RecurrenceTable;

fn main() -> sextic_freud::error::Result<()> {
    let n_max = 30;
    let ctx = PrecisionContext::for_order(50, n_max)?;
    let table = RecurrenceTable::compute(&Params::from_ints(1, -1, &ctx), n_max, &ctx)?;

    let lc = ladder_coeffs(&table, 5, LadderForm::Beta)?;
    println!("A_5(x) = {:?}", lc.a);
    println!("B_5(x) = {:?}", lc.b);

    for part in compatibility_terms(&table, 5)? {
        println!("compat {:<8} {}", part.check, format_significant(&part.max_rel_residual, 3));
    }
    for check in [Check::Ladder, Check::Compat, Check::Ode, Check::PForm] {
        let r = run_range(&table, check, 1, n_max - 2)?;
        println!("{check:<7} worst {} at n = {}", format_significant(&r.max_rel_residual, 3), r.worst_n);
    }
    Ok(())
}
