//! Monic orthogonal polynomials, recurrence coefficients and Hankel
//! determinants built from a [`MomentTable`].
//!
//! The polynomials are carried in coefficient space. Every inner product is a
//! bilinear form against the moment table, so no quadrature happens past the
//! three base moments.

use crate::error::{Error, Result};
use crate::moments::{MomentTable, Params};
use crate::numerics::{BigReal, PrecisionContext, Polynomial};

/// Everything the recurrence produces up to index `N`.
///
/// * `beta[n] = h[n] / h[n-1]` for `n >= 1`, with `beta[0] = 0`
/// * `p[n]` is the coefficient of `x^(n-2)` in `P_n` (zero for `n < 2`)
/// * `small_r[n] = <y^3 P_n, P_{n-1}> / h[n-1]` (`small_r[0] = 0`)
/// * `big_r[n] = <y^4 P_n, P_n> / h[n]`
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    params: Params,
    ctx: PrecisionContext,
    beta: Vec<BigReal>,
    h: Vec<BigReal>,
    p: Vec<BigReal>,
    small_r: Vec<BigReal>,
    big_r: Vec<BigReal>,
    polys: Vec<Polynomial>,
}

/// `sum_{i,j} a_i b_j mu_{i+j+shift}`.
fn bilinear(a: &Polynomial, b: &Polynomial, shift: usize, mu: &MomentTable, ctx: &PrecisionContext) -> BigReal {
    let mut total = ctx.zero();
    for (i, ai) in a.coeffs().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let mut row = ctx.zero();
        for (j, bj) in b.coeffs().iter().enumerate() {
            let m = &mu[i + j + shift];
            if bj.is_zero() || m.is_zero() {
                continue;
            }
            row += ctx.real(bj * m);
        }
        total += row * ai;
    }
    total
}

/// Runs the three-term recurrence up to index `n_max`.
///
/// The moment table must reach order `2 n_max + 4` so that `R_{n_max}` is
/// available.
pub fn build_recurrence(moments: &MomentTable, n_max: usize, ctx: &PrecisionContext) -> Result<RecurrenceTable> {
    let needed = 2 * n_max + 4;
    if moments.max_order() < needed {
        return Err(Error::InvalidArgument(format!(
            "moment table reaches order {}, recurrence up to {n_max} needs {needed}",
            moments.max_order()
        )));
    }
    let exhausted = |index: usize, what: &'static str| Error::PrecisionExhausted {
        index,
        what,
        suggested_guard: (2 * ctx.guard_digits()).max(PrecisionContext::auto_guard_digits(n_max) + 20),
    };

    let mut polys = Vec::with_capacity(n_max + 1);
    let mut h: Vec<BigReal> = Vec::with_capacity(n_max + 1);
    let mut beta = Vec::with_capacity(n_max + 1);
    polys.push(Polynomial::one(ctx));
    beta.push(ctx.zero());
    for n in 0..=n_max {
        if n == 1 {
            polys.push(Polynomial::identity(ctx));
        } else if n >= 2 {
            let next = &polys[n - 1].shift_up() - &polys[n - 2].scale(&beta[n - 1]);
            polys.push(next);
        }
        let norm = bilinear(&polys[n], &polys[n], 0, moments, ctx);
        if norm <= 0 || !norm.is_finite() {
            return Err(exhausted(n, "non-positive norm h_n"));
        }
        if n >= 1 {
            beta.push(ctx.real(&norm / &h[n - 1]));
        }
        h.push(norm);
    }

    let p = polys
        .iter()
        .enumerate()
        .map(|(n, poly)| if n < 2 { ctx.zero() } else { poly.coeff(n - 2) })
        .collect();
    let small_r = (0..=n_max)
        .map(|n| {
            if n == 0 {
                ctx.zero()
            } else {
                bilinear(&polys[n], &polys[n - 1], 3, moments, ctx) / &h[n - 1]
            }
        })
        .collect();
    let big_r = (0..=n_max)
        .map(|n| bilinear(&polys[n], &polys[n], 4, moments, ctx) / &h[n])
        .collect();

    Ok(RecurrenceTable {
        params: moments.params().clone(),
        ctx: *ctx,
        beta,
        h,
        p,
        small_r,
        big_r,
        polys,
    })
}

impl RecurrenceTable {
    /// Moments plus recurrence in one call, with the moment table sized for `n_max`.
    pub fn compute(params: &Params, n_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        let moments = MomentTable::compute(params, 2 * n_max + 4, ctx)?;
        build_recurrence(&moments, n_max, ctx)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// Largest index `N` held by the table.
    pub fn n_max(&self) -> usize {
        self.h.len() - 1
    }

    pub fn beta(&self) -> &[BigReal] {
        &self.beta
    }

    pub fn h(&self) -> &[BigReal] {
        &self.h
    }

    pub fn p(&self) -> &[BigReal] {
        &self.p
    }

    pub fn small_r(&self) -> &[BigReal] {
        &self.small_r
    }

    pub fn big_r(&self) -> &[BigReal] {
        &self.big_r
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// `beta_n` for any integer index; indices `<= 0` give zero. Every term in
    /// which `beta_{-1}` appears is also multiplied by `beta_0 = 0`.
    pub fn beta_at(&self, n: isize) -> BigReal {
        if n <= 0 {
            self.ctx.zero()
        } else {
            self.beta[n as usize].clone()
        }
    }

    /// `ln D_n = sum_{j<n} ln h_j`.
    pub fn log_hankel(&self, n: usize) -> Result<BigReal> {
        self.check_index(n, "log_hankel")?;
        let mut total = self.ctx.zero();
        for hj in &self.h[..n] {
            total += self.ctx.real(hj.ln_ref());
        }
        Ok(total)
    }

    /// `ln Z_n = ln n! + ln D_n`.
    pub fn partition_function_log(&self, n: usize) -> Result<BigReal> {
        let mut total = self.log_hankel(n)?;
        for k in 2..=n {
            total += self.ctx.real(k).ln();
        }
        Ok(total)
    }

    /// `<P_m, P_n>` through the moment table (zero for `m != n` up to rounding).
    pub fn inner_product(&self, moments: &MomentTable, m: usize, n: usize) -> BigReal {
        bilinear(&self.polys[m], &self.polys[n], 0, moments, &self.ctx)
    }

    fn check_index(&self, n: usize, what: &'static str) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::IndexOutOfRange {
                what,
                index: n,
                min: 0,
                max: self.n_max(),
            });
        }
        Ok(())
    }
}

/// Largest Hankel order accepted by [`hankel_direct`].
pub const HANKEL_DIRECT_MAX: usize = 12;

/// `det(mu_{i+j})_{0 <= i,j < n}` by LU with partial pivoting. Oracle use
/// only, so restricted to `n <= 12`.
pub fn hankel_direct(moments: &MomentTable, n: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    if n > HANKEL_DIRECT_MAX || (n > 0 && 2 * n - 2 > moments.max_order()) {
        return Err(Error::IndexOutOfRange {
            what: "direct Hankel order",
            index: n,
            min: 0,
            max: HANKEL_DIRECT_MAX.min(moments.max_order() / 2 + 1),
        });
    }
    let mut a: Vec<Vec<BigReal>> = (0..n)
        .map(|i| (0..n).map(|j| ctx.real(&moments[i + j])).collect())
        .collect();
    let mut det = ctx.one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].as_abs().partial_cmp(&*a[y][col].as_abs()).unwrap())
            .unwrap();
        if a[pivot][col].is_zero() {
            return Err(Error::PrecisionExhausted {
                index: col,
                what: "zero pivot in Hankel LU",
                suggested_guard: 2 * ctx.guard_digits(),
            });
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = ctx.real(&row[col] / &pivot_row[col]);
            for (x, p) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                *x -= ctx.real(&factor * p);
            }
        }
    }
    Ok(det)
}
