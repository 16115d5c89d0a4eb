//! d/dt2 ln D_n three ways: a central difference, minus the sum of R_j, and
//! the closed form in beta_n, r_n and R_n.
//!
//!     cargo run --example hankel_derivative

use sextic_freud::identities::{t2_derivative_closed_form, t2_derivative_sum_form, T2DerivativeProbe};
use sextic_freud::moments::Params;
use sextic_freud::numerics::{format_significant, PrecisionContext};

fn main() -> sextic_freud::error::Result<()> {
    let ctx = PrecisionContext::new(60, 30)?;
    let step = ctx.ten_pow_neg(10);
    for (t1, t2) in [(0, 0), (1, 1)] {
        let probe = T2DerivativeProbe::new(&Params::from_ints(t1, t2, &ctx), 10, &step, &ctx)?;
        println!("(t1, t2) = ({t1}, {t2})");
        for n in [2, 4, 8] {
            let fd = probe.central_difference(n)?;
            let sum = t2_derivative_sum_form(probe.center(), n)?;
            let closed = t2_derivative_closed_form(probe.center(), n)?;
            println!(
                "  n = {n}: fd {}  -sum R {}  closed {}  (fd gap {})",
                format_significant(&fd, 20),
                format_significant(&sum, 20),
                format_significant(&closed, 20),
                format_significant(&probe.report(n)?.max_rel_residual, 2)
            );
        }
    }
    Ok(())
}
