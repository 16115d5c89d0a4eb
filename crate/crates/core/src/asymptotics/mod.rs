//! Large-n asymptotics from the Coulomb-fluid picture, and their validation
//! against exact finite-n values.
//!
//! All expansions are evaluated exactly as truncated series in `n^(1/3)` and
//! `ln n`, with `kappa = 60^(1/3)`. Non-integer `n` is allowed everywhere.
//!
//! The `ln D_n` expansion is the sum of the `t2 = 0` expansion and the
//! integral in `t2` of the expansion of `d/dt2 ln D_n`; the two parts add (the
//! integrated quantity is the difference `ln D_n(t1, t2) - ln D_n(t1, 0)`).

mod endpoint;
mod zeta;

use std::fmt;
use std::str::FromStr;

pub use endpoint::{endpoint_cubic, lagrange_multiplier, solve_endpoint, EndpointSolution, RootMethod};
pub use zeta::{bernoulli_numbers, glaisher_log, zeta_prime_neg1};

use crate::error::{Error, Result};
use crate::moments::Params;
use crate::numerics::{BigReal, PrecisionContext};
use crate::orthopoly::RecurrenceTable;

/// Quantities with a large-n expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `u / 4`, a quarter of the squared endpoint.
    UQuarter,
    /// Lagrange multiplier `A`.
    LagrangeA,
    Beta,
    P,
    LogHn,
    LogDn,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [
        Quantity::UQuarter,
        Quantity::LagrangeA,
        Quantity::Beta,
        Quantity::P,
        Quantity::LogHn,
        Quantity::LogDn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::UQuarter => "u_quarter",
            Quantity::LagrangeA => "lagrange_A",
            Quantity::Beta => "beta",
            Quantity::P => "p",
            Quantity::LogHn => "logh",
            Quantity::LogDn => "logD",
        }
    }

    /// Exponent of the first omitted power: the remainder is `O(n^-exponent)`,
    /// as `(numerator, 3)`.
    pub fn remainder_thirds(self) -> i32 {
        match self {
            Quantity::UQuarter | Quantity::Beta => 7,
            Quantity::LagrangeA | Quantity::P | Quantity::LogHn | Quantity::LogDn => 4,
        }
    }

    /// Whether exact values come from a recurrence table (otherwise from the endpoint solver).
    pub fn needs_table(self) -> bool {
        !matches!(self, Quantity::UQuarter | Quantity::LagrangeA)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let q = match s {
            "u_quarter" | "u4" => Quantity::UQuarter,
            "lagrange_A" | "A" | "multiplier" => Quantity::LagrangeA,
            "beta" => Quantity::Beta,
            "p" => Quantity::P,
            "logh" | "log_hn" => Quantity::LogHn,
            "logD" | "log_Dn" => Quantity::LogDn,
            other => return Err(Error::InvalidArgument(format!("unknown quantity '{other}'"))),
        };
        Ok(q)
    }
}

/// One term `coeff * n^(thirds/3) * (ln n)^[log]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm {
    pub thirds: i32,
    pub log_n: bool,
    pub coeff: BigReal,
}

/// Whether the potential is in the regime where the equilibrium support is a
/// single interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    SingleCut,
    OutOfSingleCut,
}

impl Regime {
    /// Single interval when `t1 >= 0, t2 >= 0`, or `t2 < 0` and `t1 >= 4 t2^2 / 9`.
    pub fn of(params: &Params) -> Self {
        let t1 = &params.t1;
        let t2 = &params.t2;
        let single = if *t2 >= 0 {
            *t1 >= 0
        } else {
            let bound = BigReal::with_val(t2.prec(), t2.square_ref()) * 4u32 / 9u32;
            *t1 >= bound
        };
        if single {
            Regime::SingleCut
        } else {
            Regime::OutOfSingleCut
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::SingleCut => "single-cut",
            Regime::OutOfSingleCut => "out-of-single-cut",
        }
    }
}

/// Polynomial-in-`(t1, t2)` helper for writing coefficients compactly.
struct Coef<'a> {
    ctx: &'a PrecisionContext,
    t1: &'a BigReal,
    t2: &'a BigReal,
}

impl Coef<'_> {
    /// `sum c * t1^i * t2^j` over `(c, i, j)`.
    fn poly(&self, terms: &[(i64, u32, u32)]) -> BigReal {
        let mut acc = self.ctx.zero();
        for &(c, i, j) in terms {
            let mut term = self.ctx.real(c);
            for _ in 0..i {
                term *= self.t1;
            }
            for _ in 0..j {
                term *= self.t2;
            }
            acc += term;
        }
        acc
    }
}

/// Coefficient tables of every expansion at fixed parameters.
#[derive(Clone, Debug)]
pub struct AsymptoticModel {
    params: Params,
    ctx: PrecisionContext,
    pub kappa: BigReal,
    pub zeta_prime_neg1: BigReal,
    pub c0: BigReal,
    pub c1: BigReal,
    pub c2: BigReal,
    pub c3: BigReal,
    u_quarter: Vec<ExpansionTerm>,
    lagrange: Vec<ExpansionTerm>,
    beta: Vec<ExpansionTerm>,
    p: Vec<ExpansionTerm>,
    log_h: Vec<ExpansionTerm>,
    log_d: Vec<ExpansionTerm>,
}

impl AsymptoticModel {
    pub fn new(params: &Params, ctx: &PrecisionContext) -> Self {
        let params = params.in_context(ctx);
        let c = Coef {
            ctx,
            t1: &params.t1,
            t2: &params.t2,
        };
        let kappa = ctx.real(60).cbrt();
        let k2 = ctx.real(kappa.square_ref());
        let ln_kappa = ctx.real(kappa.ln_ref());
        let ln_2pi = (ctx.pi() * 2u32).ln();
        let ln3 = ctx.real(3).ln();
        let zp = zeta_prime_neg1(ctx);
        let t = |thirds: i32, coeff: BigReal| ExpansionTerm {
            thirds,
            log_n: false,
            coeff,
        };
        let tl = |thirds: i32, coeff: BigReal| ExpansionTerm {
            thirds,
            log_n: true,
            coeff,
        };
        let q = |num: i64, den: i64| ctx.ratio(num, den);

        // shared pieces
        let f5_2 = c.poly(&[(5, 1, 0), (-2, 0, 2)]); // 5 t1 - 2 t2^2
        let f15_4 = c.poly(&[(15, 1, 0), (-4, 0, 2)]); // 15 t1 - 4 t2^2
        let f5_1 = c.poly(&[(5, 1, 0), (-1, 0, 2)]); // 5 t1 - t2^2

        let head = vec![
            t(1, ctx.one() / &kappa),
            t(0, -c.poly(&[(1, 0, 1)]) / 15u32),
            t(-1, -(f5_2.clone() * 2u32) / 15u32 / &k2),
            t(-2, c.poly(&[(1, 0, 1)]) * &f15_4 * 2u32 / 675u32 / &kappa),
            t(-4, c.poly(&[(4, 0, 1)]) * &f5_2 * &f15_4 / 10125u32 / &k2),
        ];

        let mut u_quarter = head.clone();
        u_quarter.push(t(
            -5,
            c.poly(&[(375, 3, 0), (-900, 2, 2), (420, 1, 4), (-56, 0, 6)]) * 2u32 / 455625u32 / &kappa,
        ));

        let mut beta = head;
        beta.push(t(
            -5,
            c.poly(&[(1500, 3, 0), (-3600, 2, 2), (1680, 1, 4), (-224, 0, 6), (50625, 0, 0)]) / 911250u32 / &kappa,
        ));
        beta.push(t(-6, -c.poly(&[(1, 0, 1)]) / 270u32));

        let lagrange = vec![
            tl(3, q(-1, 3)),
            t(3, q(1, 3) + &ln_kappa),
            t(2, c.poly(&[(6, 0, 1)]) / &k2),
            t(1, f5_1.clone() * 2u32 / 5u32 / &kappa),
            t(0, -(c.poly(&[(2, 0, 1)]) * &f5_1) / 75u32),
            t(-1, -c.poly(&[(15, 2, 0), (-12, 1, 2), (2, 0, 4)]) * 2u32 / 45u32 / &k2),
            t(-2, c.poly(&[(375, 2, 1), (-200, 1, 3), (28, 0, 5)]) * 2u32 / 16875u32 / &kappa),
        ];

        let p = vec![
            t(4, q(-3, 4) / &kappa),
            t(3, c.poly(&[(1, 0, 1)]) / 15u32),
            t(2, f5_2.clone() / 5u32 / &k2),
            t(1, c.poly(&[(16, 0, 3), (-60, 1, 1), (225, 0, 0)]) / 450u32 / &kappa),
            t(0, -c.poly(&[(25, 2, 0), (-30, 1, 2), (75, 0, 1), (6, 0, 4)]) / 2250u32),
            t(-1, f5_2.clone() * c.poly(&[(60, 1, 1), (-16, 0, 3), (-225, 0, 0)]) / 3375u32 / &k2),
            t(
                -2,
                c.poly(&[
                    (750, 3, 0),
                    (-1800, 2, 2),
                    (6750, 1, 1),
                    (840, 1, 4),
                    (-1800, 0, 3),
                    (-112, 0, 6),
                    (16875, 0, 0),
                ]) / 303750u32
                    / &kappa,
            ),
            t(-3, -c.poly(&[(1, 0, 1)]) / 270u32),
        ];

        let c0 = c.poly(&[(125, 2, 2), (-50, 1, 4), (6, 0, 6)]) / 9375u32 - c.poly(&[(1, 3, 0)]) / 135u32
            - ln3.clone() / 12u32
            + &zp;
        let c1 = c.poly(&[(21000, 3, 1), (-21000, 2, 3), (6720, 1, 5), (-704, 0, 7), (118125, 0, 1)])
            / 354375u32
            / &k2;
        let c2 = c.poly(&[
            (1875, 4, 0),
            (-6000, 3, 2),
            (4200, 2, 4),
            (168750, 1, 0),
            (-1120, 1, 6),
            (-50625, 0, 2),
            (104, 0, 8),
        ]) / 1518750u32
            / &kappa;
        let c3 = -(c.poly(&[(1, 0, 1)]) * &f15_4) / 2025u32;

        let log_d = vec![
            tl(6, q(1, 6)),
            t(6, -(ctx.one() + ln_kappa.clone() * 2u32) / 4u32),
            t(5, -c.poly(&[(18, 0, 1)]) / 5u32 / &k2),
            t(4, -(f5_1.clone() * 3u32) / 10u32 / &kappa),
            t(3, c.poly(&[(2, 0, 1)]) * &f5_1 / 75u32 + &ln_2pi),
            t(2, c.poly(&[(15, 2, 0), (-12, 1, 2), (2, 0, 4)]) / 15u32 / &k2),
            t(1, -(c.poly(&[(375, 2, 1), (-200, 1, 3), (28, 0, 5)]) * 2u32) / 5625u32 / &kappa),
            tl(0, q(-1, 12)),
            t(0, c0.clone()),
            t(-1, c1.clone()),
            t(-2, c2.clone()),
            t(-3, c3.clone()),
        ];

        let log_h = vec![
            tl(3, q(1, 3)),
            t(3, -(q(1, 3) + &ln_kappa)),
            t(2, -c.poly(&[(6, 0, 1)]) / &k2),
            t(1, -(f5_1.clone() * 2u32) / 5u32 / &kappa),
            tl(0, q(1, 6)),
            t(0, ln_2pi.clone() - ln_kappa.clone() / 2u32 + c.poly(&[(2, 0, 1)]) * &f5_1 / 75u32),
            t(-1, c.poly(&[(15, 2, 0), (-45, 0, 1), (-12, 1, 2), (2, 0, 4)]) * 2u32 / 45u32 / &k2),
            t(
                -2,
                -c.poly(&[(750, 2, 1), (-400, 1, 3), (5625, 1, 0), (-1125, 0, 2), (56, 0, 5)]) / 16875u32 / &kappa,
            ),
            t(-3, q(-1, 36)),
        ];

        Self {
            params,
            ctx: *ctx,
            kappa,
            zeta_prime_neg1: zp,
            c0,
            c1,
            c2,
            c3,
            u_quarter,
            lagrange,
            beta,
            p,
            log_h,
            log_d,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn regime(&self) -> Regime {
        Regime::of(&self.params)
    }

    /// Coefficient list of an expansion.
    pub fn terms(&self, quantity: Quantity) -> &[ExpansionTerm] {
        match quantity {
            Quantity::UQuarter => &self.u_quarter,
            Quantity::LagrangeA => &self.lagrange,
            Quantity::Beta => &self.beta,
            Quantity::P => &self.p,
            Quantity::LogHn => &self.log_h,
            Quantity::LogDn => &self.log_d,
        }
    }
}

/// Evaluates `sum coeff * n^(thirds/3) * (ln n)^log` for a list of terms.
pub fn eval_terms(terms: &[ExpansionTerm], n: &BigReal) -> BigReal {
    let prec = n.prec();
    let cbrt = BigReal::with_val(prec, n.cbrt_ref());
    let ln_n = BigReal::with_val(prec, n.ln_ref());
    let mut total = BigReal::new(prec);
    for term in terms {
        let power = BigReal::with_val(prec, rug::ops::Pow::pow(&cbrt, term.thirds));
        let mut value = power * &term.coeff;
        if term.log_n {
            value *= &ln_n;
        }
        total += value;
    }
    total
}

/// Truncated large-n expansion of `quantity` at `n >= 1`.
pub fn eval_expansion(quantity: Quantity, n: &BigReal, model: &AsymptoticModel) -> Result<BigReal> {
    if *n < 1 {
        return Err(Error::InvalidArgument(format!("expansions need n >= 1, got {n}")));
    }
    let n = model.ctx.real(n);
    Ok(eval_terms(model.terms(quantity), &n))
}

/// Exact finite-n value of `quantity`.
pub fn exact_value(quantity: Quantity, n: usize, table: Option<&RecurrenceTable>, model: &AsymptoticModel) -> Result<BigReal> {
    let ctx = &model.ctx;
    if !quantity.needs_table() {
        let sol = solve_endpoint(&ctx.real(n), &model.params, ctx)?;
        return Ok(match quantity {
            Quantity::UQuarter => sol.u / 4u32,
            _ => sol.multiplier,
        });
    }
    let table = table.ok_or_else(|| Error::InvalidArgument(format!("{quantity} needs a recurrence table")))?;
    let max = table.n_max();
    if n > max {
        return Err(Error::IndexOutOfRange {
            what: "exact value",
            index: n,
            min: 1,
            max,
        });
    }
    let value = match quantity {
        Quantity::Beta => table.beta()[n].clone(),
        Quantity::P => table.p()[n].clone(),
        Quantity::LogHn => ctx.real(table.h()[n].ln_ref()),
        Quantity::LogDn => table.log_hankel(n)?,
        Quantity::UQuarter | Quantity::LagrangeA => unreachable!(),
    };
    Ok(ctx.real(value))
}

/// Outcome of an order fit between `n` and `2n`.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderFit {
    /// `log2(e(n) / e(2n))` and whether it lies within the band around the remainder exponent.
    Fitted { order: BigReal, within: bool },
    /// One of the two errors is zero up to rounding.
    ExactMatch,
    /// `2n` is not in the list.
    NoPartner,
}

#[derive(Clone, Debug)]
pub struct DecayRow {
    pub n: usize,
    pub exact: BigReal,
    pub asym: BigReal,
    pub error: BigReal,
    pub fit: OrderFit,
}

#[derive(Clone, Debug)]
pub struct DecayReport {
    pub quantity: Quantity,
    pub regime: Regime,
    /// Remainder exponent as a big real (`thirds / 3`).
    pub expected_order: BigReal,
    pub band: BigReal,
    pub rows: Vec<DecayRow>,
}

impl DecayReport {
    /// True when every fitted pair lies within the band.
    pub fn all_within(&self) -> bool {
        self.rows.iter().all(|r| !matches!(r.fit, OrderFit::Fitted { within: false, .. }))
    }

    pub fn fitted_orders(&self) -> impl Iterator<Item = (usize, &BigReal)> {
        self.rows.iter().filter_map(|r| match &r.fit {
            OrderFit::Fitted { order, .. } => Some((r.n, order)),
            _ => None,
        })
    }
}

/// Errors within 10 digits of the working precision, relative to the exact
/// value, count as an exact match.
fn is_rounding_level(row: &DecayRow, ctx: &PrecisionContext) -> bool {
    let noise = ctx.ten_pow_neg(ctx.working_digits() as i64 - 10) * ctx.real(row.exact.abs_ref()).max(&ctx.one());
    row.error <= noise
}

/// Half-width of the accepted band around the remainder exponent.
pub const ORDER_BAND: (i64, i64) = (2, 5);

/// Compares exact and asymptotic values over `n_list` and fits decay orders
/// from every `(n, 2n)` pair.
pub fn error_decay_report(
    quantity: Quantity,
    n_list: &[usize],
    table: Option<&RecurrenceTable>,
    model: &AsymptoticModel,
) -> Result<DecayReport> {
    let ctx = &model.ctx;
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list.first().is_some_and(|&n| n == 0) {
        return Err(Error::InvalidArgument("n list must be positive and strictly increasing".into()));
    }
    if !n_list.iter().any(|n| n_list.contains(&(2 * n))) {
        return Err(Error::InvalidArgument("n list needs at least one pair (n, 2n) for order fitting".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let exact = exact_value(quantity, n, table, model)?;
        let asym = eval_expansion(quantity, &ctx.real(n), model)?;
        let error = ctx.real(&exact - &asym).abs();
        rows.push(DecayRow {
            n,
            exact,
            asym,
            error,
            fit: OrderFit::NoPartner,
        });
    }
    let expected = ctx.ratio(quantity.remainder_thirds() as i64, 3);
    let band = ctx.ratio(ORDER_BAND.0, ORDER_BAND.1);
    for i in 0..rows.len() {
        let Some(j) = rows.iter().position(|r| r.n == 2 * rows[i].n) else {
            continue;
        };
        let (e1, e2) = (&rows[i].error, &rows[j].error);
        rows[i].fit = if is_rounding_level(&rows[i], ctx) || is_rounding_level(&rows[j], ctx) {
            OrderFit::ExactMatch
        } else {
            let order = ctx.real(e1 / e2).log2();
            let within = ctx.real(&order - &expected).abs() <= band;
            OrderFit::Fitted { order, within }
        };
    }
    Ok(DecayReport {
        quantity,
        regime: model.regime(),
        expected_order: expected,
        band,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_cubed() {
        let ctx = PrecisionContext::default();
        let model = AsymptoticModel::new(&Params::from_ints(0, 0, &ctx), &ctx);
        let cube = ctx.real(model.kappa.square_ref()) * &model.kappa;
        assert!((cube - 60u32).abs() < ctx.ten_pow_neg(75));
    }

    #[test]
    fn beta_at_zero_parameters() {
        let ctx = PrecisionContext::default();
        let model = AsymptoticModel::new(&Params::from_ints(0, 0, &ctx), &ctx);
        let n = ctx.real(1000);
        let value = eval_expansion(Quantity::Beta, &n, &model).unwrap();
        // 10 / kappa + 1 / (18 kappa 1000^(5/3))
        let expected = ctx.real(10) / &model.kappa + ctx.one() / (ctx.real(18) * &model.kappa * 100_000u32);
        let diff = (value.clone() - &expected).abs();
        assert!(diff < ctx.ten_pow_neg(75), "{value} vs {expected}");
        let shown = value.to_string_radix(10, Some(8));
        assert!(shown.starts_with("2.5543"), "{shown}");
    }

    #[test]
    fn constant_term_at_zero_parameters() {
        let ctx = PrecisionContext::default();
        let model = AsymptoticModel::new(&Params::from_ints(0, 0, &ctx), &ctx);
        let expected = model.zeta_prime_neg1.clone() - ctx.real(3).ln() / 12u32;
        assert_eq!(model.c0, expected);
        assert!(model.c1.is_zero() && model.c3.is_zero());
    }

    #[test]
    fn quantity_labels() {
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
        assert!("gamma".parse::<Quantity>().is_err());
    }

    #[test]
    fn regime_guard() {
        let ctx = PrecisionContext::default();
        let r = |a: i64, b: i64| Regime::of(&Params::from_ints(a, b, &ctx));
        assert_eq!(r(0, 0), Regime::SingleCut);
        assert_eq!(r(1, 1), Regime::SingleCut);
        assert_eq!(r(-1, -1), Regime::OutOfSingleCut);
        assert_eq!(r(1, -1), Regime::SingleCut);
        assert_eq!(r(1, -2), Regime::OutOfSingleCut);
        assert_eq!(r(-1, 2), Regime::OutOfSingleCut);
    }

    #[test]
    fn decay_report_needs_doubling_pair() {
        let ctx = PrecisionContext::default();
        let model = AsymptoticModel::new(&Params::from_ints(0, 0, &ctx), &ctx);
        assert!(error_decay_report(Quantity::UQuarter, &[10, 15], None, &model).is_err());
        assert!(error_decay_report(Quantity::UQuarter, &[20, 10], None, &model).is_err());
        assert!(error_decay_report(Quantity::Beta, &[10, 20], None, &model).is_err());
        let report = error_decay_report(Quantity::UQuarter, &[10, 20, 30], None, &model).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(matches!(report.rows[1].fit, OrderFit::NoPartner));
        // u/4 = n^(1/3) / kappa exactly at zero parameters
        assert_eq!(report.rows[0].fit, OrderFit::ExactMatch);
        let report = error_decay_report(Quantity::LagrangeA, &[10, 20], None, &model).unwrap();
        assert_eq!(report.rows[0].fit, OrderFit::ExactMatch);
    }
}
