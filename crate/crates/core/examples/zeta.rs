//! zeta'(-1) through the Glaisher-Kinkelin constant at increasing precision.
//!
//!     cargo run --example zeta

use sextic_freud::asymptotics::{glaisher_log, zeta_prime_neg1};
use sextic_freud::numerics::{format_significant, PrecisionContext};

fn main() -> sextic_freud::error::Result<()> {
    for digits in [20, 40, 80] {
        let ctx = PrecisionContext::new(digits, 20)?;
        println!("{digits:>3} digits: A = {}", format_significant(&glaisher_log(&ctx).exp(), digits));
        println!("            zeta'(-1) = {}", format_significant(&zeta_prime_neg1(&ctx), digits));
    }
    Ok(())
}
