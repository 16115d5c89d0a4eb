//! Recurrence coefficients, norms and Hankel determinants, with the direct
//! LU determinant as a cross-check.
//!
//!     cargo run --example recurrence -- 1 -1 20

use sextic_freud::moments::{MomentTable, Params};
use sextic_freud::numerics::{format_significant, PrecisionContext};
use sextic_freud::orthopoly::{hankel_direct, RecurrenceTable, HANKEL_DIRECT_MAX};

fn main() -> sextic_freud::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let t1 = args.first().map(String::as_str).unwrap_or("0");
    let t2 = args.get(1).map(String::as_str).unwrap_or("0");
    let n_max: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(16);

    let ctx = PrecisionContext::for_order(50, n_max)?;
    let params = Params::parse(t1, t2, &ctx)?;
    let table = RecurrenceTable::compute(&params, n_max, &ctx)?;

    println!("t1 = {t1}, t2 = {t2}, {} working digits", ctx.working_digits());
    println!("{:>3}  {:<24}  {:<24}  {:<24}", "n", "beta_n", "p(n)", "ln D_n");
    for n in 0..=n_max {
        println!(
            "{n:>3}  {:<24}  {:<24}  {:<24}",
            format_significant(&table.beta()[n], 18),
            format_significant(&table.p()[n], 18),
            format_significant(&table.log_hankel(n)?, 18)
        );
    }

    let moments = MomentTable::compute(&params, 2 * HANKEL_DIRECT_MAX, &ctx)?;
    println!("\nrelative gap to the LU determinant:");
    for n in 1..=HANKEL_DIRECT_MAX.min(n_max) {
        let direct = hankel_direct(&moments, n, &ctx)?;
        let product = table.log_hankel(n)?.exp();
        let rel = ctx.real(&product - &direct).abs() / direct.abs();
        println!("{n:>3}  {}", format_significant(&rel, 3));
    }
    Ok(())
}
