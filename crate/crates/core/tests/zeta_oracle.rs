//! zeta'(-1) by a route independent of the Glaisher constant:
//! zeta'(-1) = 1/12 - (gamma + ln 2 pi)/12 + zeta'(2) / (2 pi^2), with
//! zeta'(2) = -sum_{k>=2} ln k / k^2 summed by Euler-Maclaurin. Bernoulli
//! numbers enter only through MPFR's zeta at even integers.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use sextic_freud::asymptotics::zeta_prime_neg1;
use sextic_freud::numerics::{BigReal, PrecisionContext};

fn zeta_prime_two(ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.bits() + 64;
    let big_n = 200u32;
    let n = Float::with_val(prec, big_n);
    let ln_n = Float::with_val(prec, n.ln_ref());

    // sum_{k<N} ln k / k^2
    let mut sum = Float::new(prec);
    for k in 2..big_n {
        let k = Float::with_val(prec, k);
        sum += Float::with_val(prec, k.ln_ref()) / Float::with_val(prec, k.square_ref());
    }
    // tail from N: integral + f(N)/2 - sum_j B_2j/(2j)! f^(2j-1)(N)
    sum += (ln_n.clone() + 1u32) / &n;
    sum += ln_n.clone() / Float::with_val(prec, n.square_ref()) / 2u32;
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let eps = Float::with_val(prec, Float::i_pow_u(10, ctx.working_digits() + 10)).recip();
    let mut harmonic = Float::new(prec); // H_0
    let mut fact = Float::with_val(prec, 1u32); // (2j)!
    for j in 1u32..200 {
        let m = 2 * j;
        harmonic += Float::with_val(prec, m - 1).recip();
        harmonic += Float::with_val(prec, m).recip();
        fact *= (m - 1) * m;
        let zeta = Float::with_val(prec, Float::zeta_u(m));
        // B_2j/(2j)! f^(2j-1)(N) = (-1)^j 2 zeta(2j) (2j)! (ln N - H_2j + 1) / ((2 pi)^2j N^(2j+1))
        let mut term = zeta * 2u32 * &fact * (ln_n.clone() - &harmonic + 1u32);
        term /= Float::with_val(prec, (&two_pi).pow(m));
        term /= Float::with_val(prec, (&n).pow(m + 1));
        if j % 2 == 1 {
            term = -term;
        }
        sum -= &term;
        if term.abs() < eps {
            break;
        }
    }
    ctx.real(-sum)
}

fn series_route(ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.bits();
    let euler = Float::with_val(prec, Constant::Euler);
    let pi = ctx.pi();
    let ln_2pi = ctx.real(&pi * 2u32).ln();
    let pi_sq = ctx.real(pi.square_ref());
    ctx.ratio(1, 12) - (euler + ln_2pi) / 12u32 + zeta_prime_two(ctx) / (pi_sq * 2u32)
}

#[test]
fn zeta_prime_two_value() {
    let ctx = PrecisionContext::new(30, 20).unwrap();
    let z = zeta_prime_two(&ctx);
    assert!(z.to_string_radix(10, Some(20)).starts_with("-9.375482543158437"), "{z}");
}

#[test]
fn glaisher_and_series_routes_agree() {
    for digits in [30, 50, 80] {
        let ctx = PrecisionContext::new(digits, 20).unwrap();
        let a = zeta_prime_neg1(&ctx);
        let b = series_route(&ctx);
        assert!((a.clone() - &b).abs() < ctx.ten_pow_neg(digits as i64 + 5), "{digits} digits: {a} vs {b}");
    }
}

#[test]
fn lower_precision_is_a_rounding_of_higher() {
    let lo = zeta_prime_neg1(&PrecisionContext::new(20, 20).unwrap());
    let hi = zeta_prime_neg1(&PrecisionContext::new(40, 20).unwrap());
    let fmt = |x: &BigReal| x.to_string_radix_round(10, Some(20), rug::float::Round::Nearest);
    assert_eq!(fmt(&lo), fmt(&hi));
}
