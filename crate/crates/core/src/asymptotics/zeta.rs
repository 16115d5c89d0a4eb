//! `zeta'(-1)` through the Glaisher-Kinkelin constant.

use rug::{Integer, Rational};

use crate::numerics::{BigReal, PrecisionContext};

/// Bernoulli numbers `B_0 ..= B_max` (with `B_1 = +1/2`), by the
/// Akiyama-Tanigawa transform.
pub fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(max + 1);
    let mut out = Vec::with_capacity(max + 1);
    for m in 0..=max {
        row.push(Rational::from((1, m as u32 + 1)));
        for j in (1..=m).rev() {
            let diff = Rational::from(&row[j - 1] - &row[j]);
            row[j - 1] = diff * Integer::from(j);
        }
        out.push(row[0].clone());
    }
    out
}

/// `ln A` for the Glaisher-Kinkelin constant `A`.
///
/// Euler-Maclaurin applied to `sum_{k<=N} k ln k` gives
///
/// ```text
/// ln A = sum_{k=1}^N k ln k - (N^2/2 + N/2 + 1/12) ln N + N^2/4
///        + sum_{j>=2} B_{2j} / (2j (2j-1) (2j-2) N^(2j-2))
/// ```
///
/// with `N` equal to the working digit count; the tail is summed until its
/// terms drop below working precision.
pub fn glaisher_log(ctx: &PrecisionContext) -> BigReal {
    let inner = ctx.with_extra_guard(10);
    let n = inner.working_digits().max(20) as u64;
    let big_n = inner.real(n);
    let ln_n = inner.real(big_n.ln_ref());

    let mut acc = inner.zero();
    for k in 2..=n {
        let kk = inner.real(k);
        acc += inner.real(kk.ln_ref()) * k;
    }
    let n_sq = inner.real(big_n.square_ref());
    let poly = inner.real(&n_sq / 2u32) + inner.real(&big_n / 2u32) + inner.ratio(1, 12);
    acc -= poly * &ln_n;
    acc += n_sq.clone() / 4u32;

    let eps = inner.ten_pow_neg(inner.working_digits() as i64 + 5);
    // Terms shrink while 2j < 2 pi N.
    let j_cap = ((2.0 * std::f64::consts::PI * n as f64) as usize / 2).max(2);
    let mut j_max = 16usize;
    loop {
        let bern = bernoulli_numbers(2 * j_max);
        let mut converged = false;
        let mut tail = inner.zero();
        let mut n_pow = n_sq.clone(); // N^(2j-2) for j = 2
        for j in 2..=j_max {
            let jj = 2 * j as u64;
            let denom = Integer::from(jj) * (jj - 1) * (jj - 2);
            let coeff = Rational::from(&bern[2 * j] / denom);
            let term = inner.real(&coeff) / &n_pow;
            tail += &term;
            if term.abs() < eps {
                converged = true;
                break;
            }
            n_pow *= &n_sq;
        }
        if converged || j_max >= j_cap {
            acc += tail;
            break;
        }
        j_max = (2 * j_max).min(j_cap);
    }
    ctx.real(acc)
}

/// `zeta'(-1) = 1/12 - ln A`.
pub fn zeta_prime_neg1(ctx: &PrecisionContext) -> BigReal {
    ctx.ratio(1, 12) - glaisher_log(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bernoulli_numbers() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], 1);
        assert_eq!(b[1], Rational::from((1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[3], 0);
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
    }

    #[test]
    fn glaisher_constant_value() {
        let ctx = PrecisionContext::new(30, 20).unwrap();
        let a = glaisher_log(&ctx).exp();
        assert!(a.to_string_radix(10, Some(12)).starts_with("1.2824271291"));
        let z = zeta_prime_neg1(&ctx);
        assert!(z.to_string_radix(10, Some(28)).starts_with("-1.654211437004509292139196602"), "{z}");
    }
}
