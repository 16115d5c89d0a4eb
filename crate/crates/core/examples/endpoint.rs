//! Squared support endpoint u = b^2 and the Lagrange multiplier of the
//! equilibrium problem, across the two root-extraction branches.
//!
//!     cargo run --example endpoint

use sextic_freud::asymptotics::{endpoint_cubic, solve_endpoint};
use sextic_freud::moments::Params;
use sextic_freud::numerics::{format_significant, PrecisionContext};

fn main() -> sextic_freud::error::Result<()> {
    let ctx = PrecisionContext::default();
    let cases = [("0", "0", "10"), ("1", "1", "10"), ("1", "-3", "0.01"), ("-1", "-1", "100")];
    for (t1, t2, n) in cases {
        let params = Params::parse(t1, t2, &ctx)?;
        let n = ctx.parse(n)?;
        let sol = solve_endpoint(&n, &params, &ctx)?;
        let residual = endpoint_cubic(&sol.u, &n, &params).abs() / ctx.real(&n * 16u32);
        println!(
            "t = ({t1:>2},{t2:>2}) n = {:<6} {:?}: b = {}  A = {}  residual {}",
            format_significant(&n, 4),
            sol.method,
            format_significant(&sol.endpoint(), 20),
            format_significant(&sol.multiplier, 20),
            format_significant(&residual, 2)
        );
    }
    Ok(())
}
