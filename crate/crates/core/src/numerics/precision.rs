//! Working-precision policy.
//!
//! Every big-real value in a run is created through one [`PrecisionContext`], so
//! all arithmetic happens at a single fixed binary precision and results are
//! reproducible bit for bit.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Arbitrary-precision real number. The precision it carries is the one of the
/// [`PrecisionContext`] that created it.
pub type BigReal = Float;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Default accuracy target in decimal digits.
pub const DEFAULT_TARGET_DIGITS: u32 = 50;
/// Default guard digits on top of the target.
pub const DEFAULT_GUARD_DIGITS: u32 = 30;
/// Smallest admissible number of guard digits.
pub const MIN_GUARD_DIGITS: u32 = 10;

/// Requested accuracy plus guard digits; `working_digits = target + guard`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            target_digits: DEFAULT_TARGET_DIGITS,
            guard_digits: DEFAULT_GUARD_DIGITS,
        }
    }
}

impl PrecisionContext {
    pub fn new(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidArgument(
                "target digits must be positive".into(),
            ));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "guard digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        Ok(Self {
            target_digits,
            guard_digits,
        })
    }

    /// Guard digits needed to build recurrence data up to index `n`:
    /// `max(30, ceil(1.2 n))`. Hankel construction loses roughly one digit
    /// per index.
    pub fn auto_guard_digits(n: usize) -> u32 {
        let scaled = (12 * n as u64).div_ceil(10) as u32;
        scaled.max(DEFAULT_GUARD_DIGITS)
    }

    /// Context with the automatic guard-digit policy for builds up to index `n`.
    pub fn for_order(target_digits: u32, n: usize) -> Result<Self> {
        Self::new(target_digits, Self::auto_guard_digits(n))
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Same target, `extra` more guard digits.
    pub fn with_extra_guard(&self, extra: u32) -> Self {
        Self {
            target_digits: self.target_digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    /// Binary precision of every value created by this context.
    pub fn bits(&self) -> u32 {
        (self.working_digits() as f64 * LOG2_10).ceil() as u32 + 4
    }

    pub fn real<T>(&self, value: T) -> BigReal
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    pub fn zero(&self) -> BigReal {
        Float::new(self.bits())
    }

    pub fn one(&self) -> BigReal {
        self.real(1)
    }

    /// `num / den`, correctly rounded at working precision.
    pub fn ratio(&self, num: i64, den: i64) -> BigReal {
        let mut x = self.real(num);
        x /= den;
        x
    }

    /// Parses a decimal string straight into working precision (no detour
    /// through machine floats).
    pub fn parse(&self, text: &str) -> Result<BigReal> {
        let trimmed = text.trim();
        let parsed = Float::parse(trimmed)
            .map_err(|e| Error::InvalidArgument(format!("cannot parse '{trimmed}' as a real: {e}")))?;
        let value = self.real(parsed);
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("'{trimmed}' is not finite")));
        }
        Ok(value)
    }

    /// `10^(-digits)` at working precision.
    pub fn ten_pow_neg(&self, digits: i64) -> BigReal {
        let ten = self.real(10);
        ten.pow(-digits)
    }

    /// Relative tolerance `10^(-(target_digits - slack))`.
    pub fn tolerance(&self, slack: u32) -> BigReal {
        self.ten_pow_neg(self.target_digits as i64 - slack as i64)
    }

    pub fn pi(&self) -> BigReal {
        self.real(rug::float::Constant::Pi)
    }

    /// Rounds to `digits` significant decimal digits and renders in scientific
    /// notation; exact zero renders as `"0"`.
    pub fn format(&self, value: &BigReal, digits: u32) -> String {
        format_significant(value, digits)
    }
}

/// Decimal rendering with `digits` significant digits, independent of locale.
pub fn format_significant(value: &BigReal, digits: u32) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    value.to_string_radix_round(10, Some(digits.max(1) as usize), Round::Nearest)
}
