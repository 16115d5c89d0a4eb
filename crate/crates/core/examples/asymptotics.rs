//! Exact finite-n values against the truncated large-n expansions, with the
//! fitted decay order of the error between n and 2n.
//!
//!     cargo run --release --example asymptotics -- 1 1

use sextic_freud::asymptotics::{error_decay_report, AsymptoticModel, OrderFit, Quantity};
use sextic_freud::moments::Params;
use sextic_freud::numerics::{format_significant, PrecisionContext};
use sextic_freud::orthopoly::RecurrenceTable;

fn main() -> sextic_freud::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let t1 = args.first().map(String::as_str).unwrap_or("0");
    let t2 = args.get(1).map(String::as_str).unwrap_or("0");
    let n_list = [16, 32, 64];
    let n_top = 66;

    let ctx = PrecisionContext::for_order(50, n_top)?;
    let params = Params::parse(t1, t2, &ctx)?;
    let model = AsymptoticModel::new(&params, &ctx);
    let table = RecurrenceTable::compute(&params, n_top, &ctx)?;
    println!("t1 = {t1}, t2 = {t2}: {}", model.regime().label());

    for q in Quantity::ALL {
        let report = error_decay_report(q, &n_list, Some(&table), &model)?;
        print!("{:<11} expected {}/3:", q.name(), q.remainder_thirds());
        for row in &report.rows {
            match &row.fit {
                OrderFit::Fitted { order, .. } => print!("  e({})={} order {}", row.n, format_significant(&row.error, 3), format_significant(order, 3)),
                OrderFit::ExactMatch => print!("  e({}) exact", row.n),
                OrderFit::NoPartner => print!("  e({})={}", row.n, format_significant(&row.error, 3)),
            }
        }
        println!();
    }
    println!("zeta'(-1) = {}", format_significant(&model.zeta_prime_neg1, 30));
    Ok(())
}
