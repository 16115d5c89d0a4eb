//! Even moments of the weight `w(x) = exp(-x^6 - t2 x^4 - t1 x^2)`.
//!
//! Only `mu_0`, `mu_2`, `mu_4` are integrated numerically. Integrating
//! `d/dx [x^(j+1) w(x)]` over the real line gives
//!
//! ```text
//! mu_{j+6} = ((j + 1) mu_j - 2 t1 mu_{j+2} - 4 t2 mu_{j+4}) / 6
//! ```
//!
//! which generates every higher moment exactly at working precision.

use crate::error::{Error, Result};
use crate::numerics::{de_quadrature, BigReal, PrecisionContext};

/// Deformation parameters of the weight: `t1` multiplies `x^2`, `t2` multiplies `x^4`.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub t1: BigReal,
    pub t2: BigReal,
}

impl Params {
    pub fn new(t1: BigReal, t2: BigReal) -> Self {
        Self { t1, t2 }
    }

    /// Parses decimal strings directly at working precision.
    pub fn parse(t1: &str, t2: &str, ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self {
            t1: ctx.parse(t1)?,
            t2: ctx.parse(t2)?,
        })
    }

    pub fn from_ints(t1: i64, t2: i64, ctx: &PrecisionContext) -> Self {
        Self {
            t1: ctx.real(t1),
            t2: ctx.real(t2),
        }
    }

    /// Same parameters re-rounded into another context.
    pub fn in_context(&self, ctx: &PrecisionContext) -> Self {
        Self {
            t1: ctx.real(&self.t1),
            t2: ctx.real(&self.t2),
        }
    }

    /// `v(x) = x^6 + t2 x^4 + t1 x^2` at a point.
    pub fn potential_at(&self, x: &BigReal) -> BigReal {
        let x2 = BigReal::with_val(x.prec(), x.square_ref());
        let inner = BigReal::with_val(x.prec(), &x2 + &self.t2) * &x2 + &self.t1;
        inner * x2
    }

    /// Upper limit beyond which `x^k w(x)` is negligible at working precision:
    /// `(working_digits ln 10 + |t1| + |t2| + 10)^(1/6) + 2`.
    pub fn quadrature_cutoff(&self, ctx: &PrecisionContext) -> BigReal {
        let mut s = ctx.real(ctx.working_digits()) * ctx.real(10).ln();
        s += ctx.real(self.t1.abs_ref());
        s += ctx.real(self.t2.abs_ref());
        s += 10u32;
        s.root(6) + 2u32
    }
}

/// `2 * int_0^inf x^k w(x) dx`, the full-line moment of even order `k`.
pub fn quadrature_moment(params: &Params, order: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if order % 2 == 1 {
        return Ok(ctx.zero());
    }
    let cutoff = params.quadrature_cutoff(ctx);
    let half = de_quadrature(
        |x| {
            let w = (-params.potential_at(x)).exp();
            if order == 0 {
                w
            } else {
                BigReal::with_val(x.prec(), rug::ops::Pow::pow(x, order)) * w
            }
        },
        &cutoff,
        ctx,
    )?;
    Ok(half * 2u32)
}

/// `(mu_0, mu_2, mu_4)` by double-exponential quadrature.
pub fn base_moments(params: &Params, ctx: &PrecisionContext) -> Result<[BigReal; 3]> {
    Ok([
        quadrature_moment(params, 0, ctx)?,
        quadrature_moment(params, 2, ctx)?,
        quadrature_moment(params, 4, ctx)?,
    ])
}

/// Moments `mu_0 ..= mu_{max_order}` at fixed parameters; odd entries are exact zeros.
#[derive(Clone, Debug)]
pub struct MomentTable {
    params: Params,
    mu: Vec<BigReal>,
}

impl MomentTable {
    /// Quadrature for the three seeds, recursion for the rest.
    pub fn compute(params: &Params, max_order: usize, ctx: &PrecisionContext) -> Result<Self> {
        let params = params.in_context(ctx);
        let base = base_moments(&params, ctx)?;
        extend_moments(base, &params, max_order.div_ceil(2).max(2), ctx)
    }

    /// Wraps moments from elsewhere. The length must be odd (orders
    /// `0 ..= 2m`) and at least 5; odd orders must be zero.
    pub fn from_values(params: &Params, mu: Vec<BigReal>, ctx: &PrecisionContext) -> Result<Self> {
        if mu.len() < 5 || mu.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "moment list must cover orders 0..=2m with m >= 2, got {} values",
                mu.len()
            )));
        }
        if let Some(j) = (1..mu.len()).step_by(2).find(|&j| !mu[j].is_zero()) {
            return Err(Error::InvalidArgument(format!("odd moment mu_{j} must vanish for an even weight")));
        }
        Ok(Self {
            params: params.in_context(ctx),
            mu: mu.into_iter().map(|m| ctx.real(m)).collect(),
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Highest stored order (always even).
    pub fn max_order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn get(&self, j: usize) -> Option<&BigReal> {
        self.mu.get(j)
    }

    pub fn as_slice(&self) -> &[BigReal] {
        &self.mu
    }
}

impl std::ops::Index<usize> for MomentTable {
    type Output = BigReal;

    fn index(&self, j: usize) -> &BigReal {
        &self.mu[j]
    }
}

/// Runs the moment recursion from the three seeds up to order `2 * half_order`.
pub fn extend_moments(
    base: [BigReal; 3],
    params: &Params,
    half_order: usize,
    ctx: &PrecisionContext,
) -> Result<MomentTable> {
    if half_order < 2 {
        return Err(Error::InvalidArgument(format!(
            "moment table needs at least order 4, asked for {}",
            2 * half_order
        )));
    }
    let max_order = 2 * half_order;
    let params = params.in_context(ctx);
    let mut mu = vec![ctx.zero(); max_order + 1];
    let [m0, m2, m4] = base;
    mu[0] = ctx.real(m0);
    mu[2] = ctx.real(m2);
    mu[4] = ctx.real(m4);
    for j in (0..).step_by(2) {
        if j + 6 > max_order {
            break;
        }
        let mut next = ctx.real(&mu[j] * (j as u64 + 1));
        next -= ctx.real(&params.t1 * &mu[j + 2]) * 2u32;
        next -= ctx.real(&params.t2 * &mu[j + 4]) * 4u32;
        next /= 6u32;
        mu[j + 6] = next;
    }
    Ok(MomentTable { params, mu })
}

/// `|mu[order] - 2 int_0^inf x^order w|`, comparing the recursion against
/// direct quadrature.
pub fn moment_cross_check(table: &MomentTable, order: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    let stored = table.get(order).ok_or(Error::IndexOutOfRange {
        what: "moment order",
        index: order,
        min: 0,
        max: table.max_order(),
    })?;
    let direct = quadrature_moment(table.params(), order as u32, ctx)?;
    Ok(ctx.real(stored - &direct).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    /// `Gamma((k + 1) / 6) / 3`, the moments at `t1 = t2 = 0`.
    fn gamma_moment(k: u32, ctx: &PrecisionContext) -> BigReal {
        let arg = ctx.ratio(k as i64 + 1, 6);
        ctx.real(arg.gamma_ref()) / 3u32
    }

    #[test]
    fn base_moments_match_gamma_oracle() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        let base = base_moments(&params, &ctx).unwrap();
        let tol = ctx.ten_pow_neg(ctx.working_digits() as i64 - 6);
        for (i, k) in [0u32, 2, 4].into_iter().enumerate() {
            let err = Float::with_val(ctx.bits(), &base[i] - gamma_moment(k, &ctx)).abs();
            assert!(err < tol, "mu_{k}: {err}");
        }
        // Gamma(1/6)/3 and sqrt(pi)/3
        assert!(base[0].to_string_radix(10, Some(8)).starts_with("1.8554387"));
        let sqrt_pi_third = ctx.pi().sqrt() / 3u32;
        assert!(Float::with_val(ctx.bits(), &base[1] - sqrt_pi_third).abs() < tol);
    }

    #[test]
    fn recursion_at_zero_parameters() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        let table = MomentTable::compute(&params, 8, &ctx).unwrap();
        assert_eq!(table.max_order(), 8);
        assert_eq!(table[6], ctx.real(&table[0] / 6u32));
        assert_eq!(table[8], ctx.real(&table[2] / 2u32));
        for j in (1..=7).step_by(2) {
            assert!(table[j].is_zero());
        }
        // Gamma(7/6)/3 = mu_6
        let err = Float::with_val(ctx.bits(), &table[6] - gamma_moment(6, &ctx)).abs();
        assert!(err < ctx.ten_pow_neg(70));
    }

    #[test]
    fn recursion_general_instance() {
        let ctx = PrecisionContext::default();
        let params = Params::parse("0.75", "-1.25", &ctx).unwrap();
        let base = [ctx.real(2), ctx.real(3), ctx.real(5)];
        let table = extend_moments(base, &params, 3, &ctx).unwrap();
        let expected = (ctx.real(2) - ctx.real(&params.t1 * 3u32) * 2u32 - ctx.real(&params.t2 * 5u32) * 4u32) / 6u32;
        assert_eq!(table[6], expected);
        assert!(extend_moments([ctx.one(), ctx.one(), ctx.one()], &params, 1, &ctx).is_err());
    }

    #[test]
    fn cross_check_small() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(1, 1, &ctx);
        let table = MomentTable::compute(&params, 10, &ctx).unwrap();
        assert!(moment_cross_check(&table, 0, &ctx).unwrap().is_zero());
        let r = moment_cross_check(&table, 10, &ctx).unwrap();
        assert!(r < ctx.ten_pow_neg(45), "{r}");
        assert!(moment_cross_check(&table, 12, &ctx).is_err());
        assert!(moment_cross_check(&table, 3, &ctx).unwrap().is_zero());
    }
}
