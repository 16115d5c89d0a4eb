//! Support endpoint and Lagrange multiplier of the equilibrium problem.
//!
//! The squared endpoint `u = b^2` solves `15 u^3 + 12 t2 u^2 + 8 t1 u - 16 n = 0`.

use crate::error::{Error, Result};
use crate::moments::Params;
use crate::numerics::{BigReal, PrecisionContext};

/// How the cubic root was first located, before Newton polishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMethod {
    /// Cardano closed form (one real root).
    Cardano,
    /// Trigonometric form, largest of three real roots.
    Trigonometric,
}

#[derive(Clone, Debug)]
pub struct EndpointSolution {
    /// Constraint mass; any positive real.
    pub n: BigReal,
    pub params: Params,
    /// `u = b^2`.
    pub u: BigReal,
    /// `phi = 225 n - 8 t2^3 + 30 t1 t2 + 5 sqrt(disc)`, absent when the
    /// radicand is negative.
    pub phi: Option<BigReal>,
    pub method: RootMethod,
    /// Lagrange multiplier `A`.
    pub multiplier: BigReal,
}

impl EndpointSolution {
    /// Support endpoint `b = sqrt(u)`.
    pub fn endpoint(&self) -> BigReal {
        BigReal::with_val(self.u.prec(), self.u.sqrt_ref())
    }
}

/// `15 u^3 + 12 t2 u^2 + 8 t1 u - 16 n`.
pub fn endpoint_cubic(u: &BigReal, n: &BigReal, params: &Params) -> BigReal {
    let prec = u.prec();
    let inner = BigReal::with_val(prec, u * 15u32) + BigReal::with_val(prec, &params.t2 * 12u32);
    let inner = inner * u + BigReal::with_val(prec, &params.t1 * 8u32);
    inner * u - BigReal::with_val(prec, n * 16u32)
}

fn cubic_slope(u: &BigReal, params: &Params) -> BigReal {
    let prec = u.prec();
    let inner = BigReal::with_val(prec, u * 45u32) + BigReal::with_val(prec, &params.t2 * 24u32);
    inner * u + BigReal::with_val(prec, &params.t1 * 8u32)
}

/// Radicand `2025 n^2 - 36 n (4 t2^3 - 15 t1 t2) + 40 t1^3 - 12 t1^2 t2^2`.
fn radicand(n: &BigReal, params: &Params, ctx: &PrecisionContext) -> BigReal {
    let t1 = &params.t1;
    let t2 = &params.t2;
    let t2_cubed = ctx.real(t2 * t2) * t2;
    let cross = ctx.real(t1 * t2);
    let mid = t2_cubed * 4u32 - ctx.real(&cross * 15u32);
    ctx.real(n.square_ref()) * 2025u32 - ctx.real(n * 36u32) * mid + ctx.real(t1 * t1) * t1 * 40u32
        - ctx.real(cross.square_ref()) * 12u32
}

/// Positive root of the endpoint cubic, plus the Lagrange multiplier.
pub fn solve_endpoint(n: &BigReal, params: &Params, ctx: &PrecisionContext) -> Result<EndpointSolution> {
    let n = ctx.real(n);
    if n <= 0 {
        return Err(Error::InvalidArgument("endpoint mass n must be positive".into()));
    }
    let params = params.in_context(ctx);
    let t1 = &params.t1;
    let t2 = &params.t2;

    let disc = radicand(&n, &params, ctx);
    let (mut u, phi, method) = if disc >= 0 {
        let root = ctx.real(disc.sqrt_ref()) * 5u32;
        let x = ctx.real(&n * 225u32) - ctx.real(t2 * t2) * t2 * 8u32 + ctx.real(t1 * t2) * 30u32;
        let phi = ctx.real(&x + &root);
        // Either Cardano branch gives the same root; take the one without cancellation.
        let stable = if x < 0 { ctx.real(&x - &root) } else { phi.clone() };
        let c = ctx.real(stable.cbrt_ref());
        let num = ctx.real(t2 * t2) * 4u32 - ctx.real(t1 * 10u32);
        let u = if c.is_zero() {
            ctx.zero()
        } else {
            (c.clone() - ctx.real(t2 * 2u32) + num / &c) * 2u32 / 15u32
        };
        (u, Some(phi), RootMethod::Cardano)
    } else {
        // Depressed cubic y^3 + p y + q with u = y - a/3.
        let a = ctx.real(t2 * 4u32) / 5u32;
        let b = ctx.real(t1 * 8u32) / 15u32;
        let c = ctx.real(&n * -16i32) / 15u32;
        let p = b.clone() - ctx.real(a.square_ref()) / 3u32;
        let q = ctx.real(a.square_ref()) * &a * 2u32 / 27u32 - ctx.real(&a * &b) / 3u32 + c;
        let ratio = ctx.real(&q * 3u32) / ctx.real(&p * 2u32) * (ctx.real(-3) / &p).sqrt();
        let theta = ratio.clamp(&-1i32, &1i32).acos();
        let amp = (ctx.real(-&p) / 3u32).sqrt() * 2u32;
        let u = amp * (theta / 3u32).cos() - a / 3u32;
        (u, None, RootMethod::Trigonometric)
    };

    // Newton polish with step halving when the residual grows.
    for _ in 0..12 {
        let f = endpoint_cubic(&u, &n, &params);
        if f.is_zero() {
            break;
        }
        let df = cubic_slope(&u, &params);
        if df.is_zero() {
            break;
        }
        let mut step = f.clone() / df;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = ctx.real(&u - &step);
            if endpoint_cubic(&trial, &n, &params).abs() <= f.clone().abs() {
                u = trial;
                accepted = true;
                break;
            }
            step /= 2u32;
        }
        if !accepted || step.is_zero() {
            break;
        }
    }

    let residual = endpoint_cubic(&u, &n, &params).abs() / ctx.real(&n * 16u32);
    if u <= 0 || residual >= ctx.tolerance(5) {
        return Err(Error::InvalidArgument(format!(
            "endpoint cubic could not be solved to tolerance (u = {u}, relative residual {residual})"
        )));
    }
    let multiplier = multiplier_from(&u, &n, &params);
    Ok(EndpointSolution {
        n,
        params,
        u,
        phi,
        method,
        multiplier,
    })
}

fn multiplier_from(u: &BigReal, n: &BigReal, params: &Params) -> BigReal {
    let prec = u.prec();
    let inner = BigReal::with_val(prec, u * 5u32) + BigReal::with_val(prec, &params.t2 * 6u32);
    let inner = inner * u + BigReal::with_val(prec, &params.t1 * 8u32);
    let quarter = BigReal::with_val(prec, u / 4u32).ln();
    inner * u / 16u32 - quarter * n
}

/// `A = u (5 u^2 + 6 t2 u + 8 t1) / 16 - n ln(u / 4)`.
pub fn lagrange_multiplier(sol: &EndpointSolution) -> BigReal {
    multiplier_from(&sol.u, &sol.n, &sol.params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_root_at_zero_parameters() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        let sol = solve_endpoint(&ctx.ratio(15, 16), &params, &ctx).unwrap();
        assert!((sol.u.clone() - 1u32).abs() < ctx.ten_pow_neg(75));
        assert_eq!(sol.method, RootMethod::Cardano);
    }

    #[test]
    fn zero_parameter_root_is_cube_root() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        for n in [1, 7, 1000] {
            let sol = solve_endpoint(&ctx.real(n), &params, &ctx).unwrap();
            let expected = (ctx.real(16 * n) / 15u32).cbrt();
            assert!((sol.u.clone() - expected).abs() < ctx.ten_pow_neg(70));
        }
    }

    #[test]
    fn three_real_roots_branch() {
        // t1 = 1, t2 = -3 at small n: 5 t1 - 2 t2^2 < 0 and the radicand is negative.
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(1, -3, &ctx);
        let n = ctx.ratio(1, 100);
        let sol = solve_endpoint(&n, &params, &ctx).unwrap();
        assert_eq!(sol.method, RootMethod::Trigonometric);
        assert!(sol.phi.is_none());
        let rel = endpoint_cubic(&sol.u, &n, &params).abs() / ctx.real(&n * 16u32);
        assert!(rel < ctx.tolerance(5));
        // largest root: the cubic is increasing past u
        assert!(cubic_slope(&sol.u, &params) > 0);
    }

    #[test]
    fn rejects_non_positive_mass() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        assert!(solve_endpoint(&ctx.zero(), &params, &ctx).is_err());
    }

    #[test]
    fn multiplier_at_zero_parameters() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        let n = ctx.real(10);
        let sol = solve_endpoint(&n, &params, &ctx).unwrap();
        let quarter = (sol.u.clone() / 4u32).ln();
        let expected = n.clone() / 3u32 - quarter * &n;
        assert!((lagrange_multiplier(&sol) - expected).abs() < ctx.ten_pow_neg(70));
    }
}
