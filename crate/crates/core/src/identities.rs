//! Residual checks for the exact identities satisfied by the recurrence data.
//!
//! Polynomial identities in `x` are checked coefficient by coefficient, never
//! by sampling points. Each residual is made relative by dividing by the
//! largest magnitude among the terms that enter the identity.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::moments::Params;
use crate::numerics::{BigReal, PrecisionContext, Polynomial};
use crate::orthopoly::RecurrenceTable;

/// Target-relative slack of the default tolerance, `10^-(target - 15)`.
pub const DEFAULT_TOLERANCE_SLACK: u32 = 15;

/// Default central-difference step for the `t2` derivative, `10^-10`.
pub const DEFAULT_FD_STEP_DIGITS: i64 = 10;

/// Minimum working precision for finite differences in `t2`.
pub const FD_MIN_WORKING_DIGITS: u32 = 60;

/// Outcome of one identity check over a range of indices.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub check: String,
    pub n_range: (usize, usize),
    pub max_abs_residual: BigReal,
    pub max_rel_residual: BigReal,
    /// Index at which the relative residual peaks.
    pub worst_n: usize,
    pub tolerance: BigReal,
    pub pass: bool,
}

impl ResidualReport {
    fn single(check: &str, n: usize, abs: BigReal, scale: &BigReal, tolerance: &BigReal) -> Self {
        let rel = if scale.is_zero() {
            abs.clone()
        } else {
            BigReal::with_val(abs.prec(), &abs / scale)
        };
        let pass = rel < *tolerance;
        Self {
            check: check.to_string(),
            n_range: (n, n),
            max_abs_residual: abs,
            max_rel_residual: rel,
            worst_n: n,
            tolerance: tolerance.clone(),
            pass,
        }
    }

    /// Combines two reports for the same check into one covering both ranges.
    pub fn merge(self, other: Self) -> Self {
        let n_range = (self.n_range.0.min(other.n_range.0), self.n_range.1.max(other.n_range.1));
        let (worst_rel, worst_n) = if other.max_rel_residual > self.max_rel_residual {
            (other.max_rel_residual, other.worst_n)
        } else {
            (self.max_rel_residual, self.worst_n)
        };
        let max_abs = if other.max_abs_residual > self.max_abs_residual {
            other.max_abs_residual
        } else {
            self.max_abs_residual
        };
        let tolerance = self.tolerance;
        Self {
            check: self.check,
            n_range,
            max_abs_residual: max_abs,
            pass: worst_rel < tolerance,
            max_rel_residual: worst_rel,
            worst_n,
            tolerance,
        }
    }

    /// Re-evaluates pass/fail against another tolerance.
    pub fn with_tolerance(mut self, tolerance: BigReal) -> Self {
        self.pass = self.max_rel_residual < tolerance;
        self.tolerance = tolerance;
        self
    }

    /// Renamed copy (used when folding sub-identities into one check).
    fn named(mut self, check: &str) -> Self {
        self.check = check.to_string();
        self
    }
}

/// Accumulates `lhs - rhs` and the largest term magnitude.
struct Balance {
    diff: BigReal,
    scale: BigReal,
}

impl Balance {
    fn new(ctx: &PrecisionContext) -> Self {
        Self {
            diff: ctx.zero(),
            scale: ctx.zero(),
        }
    }

    fn track(&mut self, term: &BigReal) {
        let mag = BigReal::with_val(term.prec(), term.abs_ref());
        if mag > self.scale {
            self.scale = mag;
        }
    }

    fn lhs(&mut self, term: BigReal) -> &mut Self {
        self.track(&term);
        self.diff += term;
        self
    }

    fn rhs(&mut self, term: BigReal) -> &mut Self {
        self.track(&term);
        self.diff -= term;
        self
    }

    fn report(&self, check: &str, n: usize, tolerance: &BigReal) -> ResidualReport {
        let abs = BigReal::with_val(self.diff.prec(), self.diff.abs_ref());
        ResidualReport::single(check, n, abs, &self.scale, tolerance)
    }
}

/// Which expression of `A_n`, `B_n` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderForm {
    /// Coefficients written purely in terms of `beta`.
    Beta,
    /// Coefficients written with the auxiliary `R_n`, `r_n`.
    Auxiliary,
}

/// Ladder-operator coefficients: `A_n` is even of degree 4, `B_n` odd of degree 3.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderCoefficients {
    pub n: usize,
    pub a: Polynomial,
    pub b: Polynomial,
}

/// `v(x) = x^6 + t2 x^4 + t1 x^2`.
pub fn potential(params: &Params, ctx: &PrecisionContext) -> Polynomial {
    let mut coeffs = vec![ctx.zero(); 7];
    coeffs[2] = ctx.real(&params.t1);
    coeffs[4] = ctx.real(&params.t2);
    coeffs[6] = ctx.one();
    Polynomial::from_coeffs(coeffs)
}

fn check_range(table: &RecurrenceTable, n: usize, min: usize, what: &'static str) -> Result<()> {
    let max = table.n_max().saturating_sub(2);
    if n < min || n > max {
        return Err(Error::IndexOutOfRange { what, index: n, min, max });
    }
    Ok(())
}

fn tolerance_of(table: &RecurrenceTable) -> BigReal {
    table.context().tolerance(DEFAULT_TOLERANCE_SLACK)
}

/// `A_n(x)` and `B_n(x)` in either form, for `0 <= n <= N - 2`.
pub fn ladder_coeffs(table: &RecurrenceTable, n: usize, form: LadderForm) -> Result<LadderCoefficients> {
    check_range(table, n, 0, "ladder coefficients")?;
    let ctx = table.context();
    let t1 = &table.params().t1;
    let t2 = &table.params().t2;
    let b = |k: isize| table.beta_at(n as isize + k);

    let x2 = ctx.real(t2 * 2u32) + b(0) * 3u32 + b(1) * 3u32;
    let mut a0 = ctx.real(t1 * 2u32) + ctx.real(t2 * 4u32) * (b(0) + b(1));
    let b1 = match form {
        LadderForm::Beta => {
            let sum = b(0) + b(1);
            a0 += (b(-1) * b(0) + ctx.real(sum.square_ref()) + b(1) * b(2)) * 6u32;
            b(0) * (ctx.real(t2 * 2u32) + (b(-1) + b(0) + b(1)) * 3u32) * 2u32
        }
        LadderForm::Auxiliary => {
            a0 += ctx.real(&table.big_r()[n] * 6u32);
            (b(0) * ctx.real(t2 * 2u32) + ctx.real(&table.small_r()[n] * 3u32)) * 2u32
        }
    };
    let a = Polynomial::from_coeffs(vec![a0, ctx.zero(), x2 * 2u32, ctx.zero(), ctx.real(6)]);
    let b = Polynomial::from_coeffs(vec![ctx.zero(), b1, ctx.zero(), b(0) * 6u32]);
    Ok(LadderCoefficients { n, a, b })
}

/// Lowering `P_n' + B_n P_n - beta_n A_n P_{n-1}` and raising
/// `P_{n-1}' - (B_n + v') P_{n-1} + A_{n-1} P_n`, both of which must vanish.
pub fn verify_ladder(table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
    check_range(table, n, 1, "ladder check")?;
    let ctx = table.context();
    let tol = tolerance_of(table);
    let here = ladder_coeffs(table, n, LadderForm::Beta)?;
    let below = ladder_coeffs(table, n - 1, LadderForm::Beta)?;
    let dv = potential(table.params(), ctx).derivative();
    let pn = &table.polys()[n];
    let pm = &table.polys()[n - 1];
    let beta = &table.beta()[n];

    let lowering_terms = [pn.derivative(), &here.b * pn, (&here.a * pm).scale(beta)];
    let lowering = &(&lowering_terms[0] + &lowering_terms[1]) - &lowering_terms[2];
    let raising_terms = [pm.derivative(), &(&here.b + &dv) * pm, &below.a * pn];
    let raising = &(&raising_terms[0] - &raising_terms[1]) + &raising_terms[2];

    let report = |residual: &Polynomial, terms: &[Polynomial]| {
        let scale = terms.iter().map(Polynomial::max_abs_coeff).fold(ctx.zero(), |m, c| if c > m { c } else { m });
        ResidualReport::single("ladder", n, residual.max_abs_coeff(), &scale, &tol)
    };
    Ok(report(&lowering, &lowering_terms).merge(report(&raising, &raising_terms)))
}

/// Names of the scalar identities folded into the compatibility check.
pub const COMPATIBILITY_IDENTITIES: [&str; 5] = ["R=r+r", "x^6", "x^4", "x^2", "x^0"];

/// Each scalar identity obtained from the compatibility conditions at index `n`.
pub fn compatibility_terms(table: &RecurrenceTable, n: usize) -> Result<Vec<ResidualReport>> {
    check_range(table, n, 1, "compatibility check")?;
    let ctx = table.context();
    let tol = tolerance_of(table);
    let t1 = table.params().t1.clone();
    let t2 = table.params().t2.clone();
    let b = |k: isize| table.beta_at(n as isize + k);
    let big_r = |k: isize| table.big_r()[(n as isize + k) as usize].clone();
    let r = |k: isize| table.small_r()[(n as isize + k) as usize].clone();
    let nn = ctx.real(n);
    let s3 = b(-1) + b(0) + b(1);
    let left_pair = b(-1) + b(0);
    let right_pair = b(0) + b(1);
    // sum_{j<n} (beta_j + beta_{j+1}) = beta_n - 2 p(n)
    let beta_pair_sum = b(0) - ctx.real(&table.p()[n] * 2u32);
    let sum_big_r = table.big_r()[..n].iter().fold(ctx.zero(), |acc, x| acc + x);

    let mut out = Vec::with_capacity(5);

    let mut eq = Balance::new(ctx);
    eq.lhs(big_r(0)).rhs(r(0)).rhs(r(1));
    out.push(eq.report(COMPATIBILITY_IDENTITIES[0], n, &tol));

    let mut eq = Balance::new(ctx);
    eq.lhs(r(0)).rhs(b(0) * &s3);
    out.push(eq.report(COMPATIBILITY_IDENTITIES[1], n, &tol));

    let mut eq = Balance::new(ctx);
    eq.lhs(nn.clone())
        .lhs(-(b(0) * &t1 * 2u32))
        .lhs(t2.clone() * r(0) * 4u32)
        .lhs(b(0) * r(0) * 12u32)
        .rhs(b(0) * (big_r(0) + big_r(-1)) * 6u32)
        .rhs(t2.clone() * b(0) * &s3 * 8u32)
        .rhs(b(0) * &left_pair * &right_pair * 6u32);
    out.push(eq.report(COMPATIBILITY_IDENTITIES[2], n, &tol));

    let mut eq = Balance::new(ctx);
    eq.lhs(nn.clone() * &t2 * 2u32)
        .lhs(t1.clone() * r(0) * 6u32)
        .lhs(r(0) * r(0) * 18u32)
        .lhs(t2.clone() * b(0) * r(0) * 24u32)
        .lhs(beta_pair_sum.clone() * 3u32)
        .rhs(t1.clone() * &t2 * b(0) * 4u32)
        .rhs(t1.clone() * b(0) * b(0) * 6u32)
        .rhs(t2.clone() * b(0) * (big_r(0) + big_r(-1)) * 12u32)
        .rhs(b(0) * &left_pair * big_r(0) * 18u32)
        .rhs(b(0) * &right_pair * big_r(-1) * 18u32)
        .rhs((t1.clone() * 3u32 + t2.clone() * &t2 * 4u32) * b(0) * &s3 * 2u32)
        .rhs(t2.clone() * b(0) * &left_pair * &right_pair * 24u32);
    out.push(eq.report(COMPATIBILITY_IDENTITIES[3], n, &tol));

    let mut eq = Balance::new(ctx);
    let lower = t1.clone() + big_r(-1) * 3u32 + t2.clone() * &left_pair * 2u32;
    let upper = t1.clone() + big_r(0) * 3u32 + t2.clone() * &right_pair * 2u32;
    eq.lhs(nn * &t1)
        .lhs(sum_big_r * 3u32)
        .lhs(t2.clone() * &beta_pair_sum * 2u32)
        .rhs(b(0) * lower * upper * 2u32);
    out.push(eq.report(COMPATIBILITY_IDENTITIES[4], n, &tol));

    Ok(out)
}

/// Worst of the compatibility identities at `n`.
pub fn verify_compatibility(table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
    let terms = compatibility_terms(table, n)?;
    Ok(terms
        .into_iter()
        .map(|r| r.named("compat"))
        .reduce(ResidualReport::merge)
        .expect("five identities"))
}

/// Left side of the fourth-order difference equation, which must equal `n`.
pub fn dpainleve_lhs(table: &RecurrenceTable, n: usize) -> BigReal {
    let ctx = table.context();
    let t1 = &table.params().t1;
    let t2 = &table.params().t2;
    let b = |k: isize| table.beta_at(n as isize + k);
    let quartic = b(-2) * b(-1)
        + b(-1) * b(-1)
        + b(-1) * b(0) * 2u32
        + b(-1) * b(1)
        + b(0) * b(0)
        + b(0) * b(1) * 2u32
        + b(1) * b(1)
        + b(1) * b(2);
    b(0) * quartic * 6u32 + ctx.real(t2 * 4u32) * b(0) * (b(-1) + b(0) + b(1)) + ctx.real(t1 * 2u32) * b(0)
}

/// `|LHS(n) - n| / n` for the fourth-order difference equation in `beta`.
pub fn verify_dpainleve(table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
    check_range(table, n, 1, "difference equation")?;
    let ctx = table.context();
    let label = ctx.real(n);
    let abs = (dpainleve_lhs(table, n) - &label).abs();
    Ok(ResidualReport::single("dpi", n, abs, &label, &tolerance_of(table)))
}

/// The second-order ODE cleared of the `1/A_n` denominators:
/// `A P'' - (v'A + A')P' + (B'A - B^2 A - v'BA + beta A^2 A_{n-1} - A'B) P`,
/// relative to the largest coefficient of `beta A^2 A_{n-1} P`.
pub fn verify_ode(table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
    check_range(table, n, 1, "ODE check")?;
    let ctx = table.context();
    let LadderCoefficients { a, b, .. } = ladder_coeffs(table, n, LadderForm::Beta)?;
    let a_prev = ladder_coeffs(table, n - 1, LadderForm::Beta)?.a;
    let dv = potential(table.params(), ctx).derivative();
    let p = &table.polys()[n];
    let dp = p.derivative();
    let ddp = dp.derivative();
    let da = a.derivative();
    let db = b.derivative();

    let heavy = (&(&(&a * &a) * &a_prev) * p).scale(&table.beta()[n]);
    let first = &(&dv * &a) + &da;
    let potential_part = &(&(&db * &a) - &(&(&b * &b) * &a)) - &(&(&dv * &b) * &a);
    let zeroth = &(&potential_part - &(&da * &b)) * p;
    let residual = &(&(&(&a * &ddp) - &(&first * &dp)) + &zeroth) + &heavy;
    Ok(ResidualReport::single(
        "ode",
        n,
        residual.max_abs_coeff(),
        &heavy.max_abs_coeff(),
        &tolerance_of(table),
    ))
}

/// `p(n) - beta_n [1 - n - 4 t2 beta_{n-1} beta_{n+1} - 6 beta_{n-1} beta_{n+1} sum_{|k|<=2} beta_{n+k}] / 2`.
pub fn verify_p_formula(table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
    check_range(table, n, 1, "p(n) formula")?;
    let ctx = table.context();
    let t2 = &table.params().t2;
    let b = |k: isize| table.beta_at(n as isize + k);
    let outer = b(-1) * b(1);
    let five = b(-2) + b(-1) + b(0) + b(1) + b(2);
    let mut eq = Balance::new(ctx);
    eq.lhs(table.p()[n].clone())
        .rhs(b(0) * (1 - n as i64) / 2u32)
        .rhs(-(b(0) * ctx.real(t2 * 2u32) * &outer))
        .rhs(-(b(0) * &outer * five * 3u32));
    Ok(eq.report("pform", n, &tolerance_of(table)))
}

/// `d/dt2 ln D_n` written through `beta` alone. Equals
/// `2 t1 b_{n-1} b_n b_{n+1} - 2 t1 b_n r_n - 4 t2 r_n^2 - 6 b_n R_{n-1} R_n`
/// with `r`, `R` replaced by their `beta` expressions.
pub fn t2_derivative_closed_form(table: &RecurrenceTable, n: usize) -> Result<BigReal> {
    check_range(table, n, 1, "t2 derivative")?;
    let ctx = table.context();
    let t1 = ctx.real(&table.params().t1);
    let t2 = ctx.real(&table.params().t2);
    let b = |k: isize| table.beta_at(n as isize + k);
    let s = b(-1) + b(0) + b(1);
    let left = b(-1) * (b(-2) + b(-1) + b(0)) + b(0) * &s;
    let right = b(0) * &s + b(1) * (b(0) + b(1) + b(2));
    let b0s = b(0) * &s;
    Ok(t1.clone() * b(-1) * b(0) * b(1) * 2u32 - t1 * b(0) * &b0s * 2u32 - t2 * &b0s * &b0s * 4u32
        - b(0) * left * right * 6u32)
}

/// `-sum_{j<n} R_j`.
pub fn t2_derivative_sum_form(table: &RecurrenceTable, n: usize) -> Result<BigReal> {
    if n > table.n_max() {
        return Err(Error::IndexOutOfRange {
            what: "t2 derivative",
            index: n,
            min: 0,
            max: table.n_max(),
        });
    }
    let ctx = table.context();
    Ok(-table.big_r()[..n].iter().fold(ctx.zero(), |acc, x| acc + x))
}

/// Relative gap between the closed form and `-sum R_j` (no differentiation involved).
pub fn t2_closed_form_residual(table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
    let closed = t2_derivative_closed_form(table, n)?;
    let sum = t2_derivative_sum_form(table, n)?;
    let mut eq = Balance::new(table.context());
    eq.lhs(closed).rhs(sum);
    Ok(eq.report("dt2-closed", n, &tolerance_of(table)))
}

/// Recurrence tables at `t2` and `t2 +- step`, for central differences of `ln D_n`.
#[derive(Clone, Debug)]
pub struct T2DerivativeProbe {
    center: RecurrenceTable,
    plus: RecurrenceTable,
    minus: RecurrenceTable,
    step: BigReal,
}

/// Tolerance factor `C` in the `C * step^2` agreement bound.
pub const FD_TOLERANCE_FACTOR: u32 = 100;

impl T2DerivativeProbe {
    pub fn new(params: &Params, n_max: usize, step: &BigReal, ctx: &PrecisionContext) -> Result<Self> {
        let params = params.in_context(ctx);
        Self::around(RecurrenceTable::compute(&params, n_max, ctx)?, step)
    }

    /// Reuses an already built table as the centre.
    pub fn around(center: RecurrenceTable, step: &BigReal) -> Result<Self> {
        let ctx = *center.context();
        let n_max = center.n_max();
        let step = ctx.real(step);
        if step <= 0 {
            return Err(Error::InvalidArgument("finite-difference step must be positive".into()));
        }
        let step_sq = ctx.real(step.square_ref());
        if step_sq < ctx.ten_pow_neg(ctx.working_digits() as i64) {
            return Err(Error::PrecisionExhausted {
                index: n_max,
                what: "finite-difference step squared below working accuracy",
                suggested_guard: 2 * ctx.guard_digits(),
            });
        }
        let shifted = |sign: i32| {
            let mut p = center.params().clone();
            if sign > 0 {
                p.t2 += &step;
            } else {
                p.t2 -= &step;
            }
            RecurrenceTable::compute(&p, n_max, &ctx)
        };
        Ok(Self {
            plus: shifted(1)?,
            minus: shifted(-1)?,
            center,
            step,
        })
    }

    pub fn center(&self) -> &RecurrenceTable {
        &self.center
    }

    /// `[ln D_n(t2 + h) - ln D_n(t2 - h)] / (2h)`.
    pub fn central_difference(&self, n: usize) -> Result<BigReal> {
        let up = self.plus.log_hankel(n)?;
        let down = self.minus.log_hankel(n)?;
        Ok((up - down) / &self.step / 2u32)
    }

    /// `C * step^2`.
    pub fn tolerance(&self) -> BigReal {
        BigReal::with_val(self.step.prec(), self.step.square_ref()) * FD_TOLERANCE_FACTOR
    }

    /// Central difference against `-sum R_j` and against the closed form.
    pub fn report(&self, n: usize) -> Result<ResidualReport> {
        let ctx = self.center.context();
        let fd = self.central_difference(n)?;
        let sum = t2_derivative_sum_form(&self.center, n)?;
        let closed = t2_derivative_closed_form(&self.center, n)?;
        let scale = ctx.real(fd.abs_ref());
        let gap_sum = ctx.real(&fd - &sum).abs();
        let gap_closed = ctx.real(&fd - &closed).abs();
        let gap_alg = ctx.real(&closed - &sum).abs();
        let worst = [gap_sum, gap_closed, gap_alg].into_iter().fold(ctx.zero(), |m, g| if g > m { g } else { m });
        Ok(ResidualReport::single("dt2", n, worst, &scale, &self.tolerance()))
    }
}

/// Central difference of `ln D_n` in `t2` compared against both expressions
/// of the derivative.
pub fn verify_t2_derivative(params: &Params, n: usize, step: &BigReal, ctx: &PrecisionContext) -> Result<ResidualReport> {
    if n < 1 {
        return Err(Error::IndexOutOfRange {
            what: "t2 derivative",
            index: n,
            min: 1,
            max: usize::MAX,
        });
    }
    T2DerivativeProbe::new(params, n + 2, step, ctx)?.report(n)
}

/// Named identity checks, as selected from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Dpi,
    Ladder,
    Ode,
    Compat,
    PForm,
    Dt2,
}

impl Check {
    pub const ALL: [Check; 6] = [Check::Dpi, Check::Ladder, Check::Ode, Check::Compat, Check::PForm, Check::Dt2];

    pub fn name(self) -> &'static str {
        match self {
            Check::Dpi => "dpi",
            Check::Ladder => "ladder",
            Check::Ode => "ode",
            Check::Compat => "compat",
            Check::PForm => "pform",
            Check::Dt2 => "dt2",
        }
    }

    /// Per-index check on a single table. `Dt2` is not available here because
    /// it needs shifted tables; use [`T2DerivativeProbe`].
    pub fn run_at(self, table: &RecurrenceTable, n: usize) -> Result<ResidualReport> {
        match self {
            Check::Dpi => verify_dpainleve(table, n),
            Check::Ladder => verify_ladder(table, n),
            Check::Ode => verify_ode(table, n),
            Check::Compat => verify_compatibility(table, n),
            Check::PForm => verify_p_formula(table, n),
            Check::Dt2 => Err(Error::InvalidArgument("dt2 needs a T2DerivativeProbe".into())),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check '{s}'")))
    }
}

/// Runs `check` for every `n` in `from..=to` and folds the results.
pub fn run_range(table: &RecurrenceTable, check: Check, from: usize, to: usize) -> Result<ResidualReport> {
    (from..=to)
        .map(|n| check.run_at(table, n))
        .reduce(|a, b| Ok(a?.merge(b?)))
        .unwrap_or_else(|| Err(Error::InvalidArgument(format!("empty index range {from}..={to}"))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t1: i64, t2: i64, n: usize) -> RecurrenceTable {
        let ctx = PrecisionContext::default();
        RecurrenceTable::compute(&Params::from_ints(t1, t2, &ctx), n, &ctx).unwrap()
    }

    #[test]
    fn ladder_shapes() {
        let t = table(1, 1, 8);
        let lc = ladder_coeffs(&t, 3, LadderForm::Beta).unwrap();
        assert!(lc.a.has_parity(0) && lc.b.has_parity(1));
        assert_eq!(lc.a.coeff(4), 6);
        assert_eq!(lc.b.coeff(3), t.context().real(&t.beta()[3] * 6u32));
        assert!(ladder_coeffs(&t, 7, LadderForm::Beta).is_err());
    }

    #[test]
    fn ladder_b_linear_coefficient() {
        let t = table(1, -1, 8);
        let ctx = t.context();
        let n = 4;
        let lc = ladder_coeffs(&t, n, LadderForm::Beta).unwrap();
        let b = t.beta();
        let expected = ctx.real(&b[n] * 2u32)
            * (ctx.real(&t.params().t2 * 2u32) + ctx.real(&b[n - 1] * 3u32) + ctx.real(&b[n] * 3u32) + ctx.real(&b[n + 1] * 3u32));
        assert!((lc.b.coeff(1) - expected).abs() < ctx.ten_pow_neg(70));
    }

    #[test]
    fn a0_constant_term_uses_beta0() {
        let t = table(2, 1, 6);
        let ctx = t.context();
        let a = ladder_coeffs(&t, 0, LadderForm::Beta).unwrap().a;
        let b = t.beta();
        let expected = ctx.real(4) + ctx.real(&b[1] * 4u32) + (ctx.real(b[1].square_ref()) + ctx.real(&b[1] * &b[2])) * 6u32;
        assert!((a.coeff(0) - expected).abs() < ctx.ten_pow_neg(70));
    }

    #[test]
    fn forms_agree() {
        let t = table(1, 1, 10);
        for n in 0..=8 {
            let x = ladder_coeffs(&t, n, LadderForm::Beta).unwrap();
            let y = ladder_coeffs(&t, n, LadderForm::Auxiliary).unwrap();
            let gap = (&x.a - &y.a).max_abs_coeff() + (&x.b - &y.b).max_abs_coeff();
            assert!(gap < t.context().tolerance(10) * x.a.max_abs_coeff(), "n={n}: {gap}");
        }
    }

    #[test]
    fn individual_checks_pass() {
        let t = table(1, -1, 12);
        for n in 1..=10 {
            for check in [Check::Dpi, Check::Ladder, Check::Ode, Check::Compat, Check::PForm] {
                let r = check.run_at(&t, n).unwrap();
                assert!(r.pass, "{check} at n={n}: {}", r.max_rel_residual);
            }
            assert!(t2_closed_form_residual(&t, n).unwrap().pass);
        }
    }

    #[test]
    fn dpi_at_first_index() {
        let t = table(0, 0, 6);
        let r = verify_dpainleve(&t, 1).unwrap();
        assert!(r.pass, "{}", r.max_rel_residual);
    }

    #[test]
    fn p_formula_first_index_is_zero_identity() {
        let t = table(0, 0, 6);
        let r = verify_p_formula(&t, 1).unwrap();
        assert!(r.max_abs_residual.is_zero());
    }

    #[test]
    fn t2_derivative_first_index() {
        let t = table(0, 0, 6);
        let ctx = t.context();
        // d/dt2 ln mu_0 = -mu_4 / mu_0 = -R_0
        let sum = t2_derivative_sum_form(&t, 1).unwrap();
        assert_eq!(sum, ctx.real(-&t.big_r()[0]));
        let closed = t2_derivative_closed_form(&t, 1).unwrap();
        assert!((closed - sum).abs() < ctx.ten_pow_neg(70));
    }

    #[test]
    fn finite_difference_step_guard() {
        let ctx = PrecisionContext::default();
        let params = Params::from_ints(0, 0, &ctx);
        let err = T2DerivativeProbe::new(&params, 4, &ctx.ten_pow_neg(50), &ctx).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { .. }));
        assert!(T2DerivativeProbe::new(&params, 4, &ctx.zero(), &ctx).is_err());
    }

    #[test]
    fn report_merge_keeps_worst() {
        let ctx = PrecisionContext::default();
        let tol = ctx.ten_pow_neg(10);
        let a = ResidualReport::single("x", 2, ctx.ten_pow_neg(20), &ctx.one(), &tol);
        let b = ResidualReport::single("x", 5, ctx.ten_pow_neg(5), &ctx.one(), &tol);
        let m = a.merge(b);
        assert_eq!(m.n_range, (2, 5));
        assert_eq!(m.worst_n, 5);
        assert!(!m.pass);
        assert!(m.with_tolerance(ctx.one()).pass);
        assert_eq!("ode".parse::<Check>().unwrap(), Check::Ode);
        assert!("nope".parse::<Check>().is_err());
    }
}
