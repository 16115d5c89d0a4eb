//! Moment table of the weight at (t1, t2) = (0, 0), compared with the closed
//! form Gamma((k+1)/6)/3, and the recursion checked against quadrature at
//! (t1, t2) = (1, -1).
//!
//!     cargo run --example moments

use sextic_freud::moments::{moment_cross_check, MomentTable, Params};
use sextic_freud::numerics::{format_significant, PrecisionContext};

fn main() -> sextic_freud::error::Result<()> {
    let ctx = PrecisionContext::default();

    let zero = Params::from_ints(0, 0, &ctx);
    let table = MomentTable::compute(&zero, 12, &ctx)?;
    println!("{:>3}  {:<30}  closed form gap", "k", "mu_k");
    for k in (0..=12).step_by(2) {
        let closed = ctx.real(ctx.ratio(k as i64 + 1, 6).gamma_ref()) / 3u32;
        let gap = ctx.real(&table[k] - &closed).abs();
        println!("{k:>3}  {:<30}  {}", format_significant(&table[k], 25), format_significant(&gap, 3));
    }

    let params = Params::from_ints(1, -1, &ctx);
    let table = MomentTable::compute(&params, 20, &ctx)?;
    let residual = moment_cross_check(&table, 20, &ctx)?;
    println!("\n(1,-1): recursion vs quadrature at order 20: {}", format_significant(&residual, 3));
    Ok(())
}
