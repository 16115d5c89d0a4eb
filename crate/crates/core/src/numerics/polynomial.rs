//! Dense polynomials with big-real coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::precision::{BigReal, PrecisionContext};

/// Dense polynomial; `coeffs[k]` is the coefficient of `x^k`.
///
/// All coefficients share the binary precision of the context that built the
/// polynomial. Mixing polynomials from different contexts panics.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<BigReal>,
    prec: u32,
}

impl Polynomial {
    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self {
            coeffs: Vec::new(),
            prec: ctx.bits(),
        }
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::constant(ctx.one())
    }

    pub fn constant(c: BigReal) -> Self {
        let prec = c.prec();
        Self {
            coeffs: vec![c],
            prec,
        }
    }

    /// `x`.
    pub fn identity(ctx: &PrecisionContext) -> Self {
        Self::monomial(ctx, 1, ctx.one())
    }

    /// `c * x^k`.
    pub fn monomial(ctx: &PrecisionContext, k: usize, c: BigReal) -> Self {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = ctx.real(&c);
        Self {
            coeffs,
            prec: ctx.bits(),
        }
    }

    /// Builds from coefficients in increasing degree. Panics if the
    /// coefficients do not share one precision.
    pub fn from_coeffs(coeffs: Vec<BigReal>) -> Self {
        assert!(!coeffs.is_empty(), "use Polynomial::zero for the zero polynomial");
        let prec = coeffs[0].prec();
        for c in &coeffs[1..] {
            assert_eq!(c.prec(), prec, "coefficients with mixed precision");
        }
        Self { coeffs, prec }
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &[BigReal] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the stored length.
    pub fn coeff(&self, k: usize) -> BigReal {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| BigReal::new(self.prec))
    }

    /// Highest index with a stored coefficient; `None` for the empty polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == 1)
    }

    /// True when every coefficient at an index of the other parity is exactly zero.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 != parity % 2)
            .all(|(_, c)| c.is_zero())
    }

    /// Largest coefficient magnitude; zero for the empty polynomial.
    pub fn max_abs_coeff(&self) -> BigReal {
        let mut best = BigReal::new(self.prec);
        for c in &self.coeffs {
            if c.clone().abs() > best {
                best = c.clone().abs();
            }
        }
        best
    }

    pub fn scale(&self, factor: &BigReal) -> Self {
        assert_eq!(factor.prec(), self.prec, "operands come from different precision contexts");
        Self {
            coeffs: self.coeffs.iter().map(|c| BigReal::with_val(self.prec, c * factor)).collect(),
            prec: self.prec,
        }
    }

    /// Power rule: `coeffs[k] -> k * coeffs[k]`, shifted down by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| BigReal::with_val(self.prec, c * k as u64))
            .collect();
        Self {
            coeffs,
            prec: self.prec,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigReal) -> BigReal {
        assert_eq!(x.prec(), self.prec, "operands come from different precision contexts");
        let mut acc = BigReal::new(self.prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `x * self`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigReal::new(self.prec));
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            coeffs,
            prec: self.prec,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigReal, &BigReal) -> BigReal) -> Self {
        assert_eq!(self.prec, other.prec, "operands come from different precision contexts");
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigReal::new(self.prec);
        let coeffs = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Self {
            coeffs,
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec;
        self.zip_with(other, |a, b| BigReal::with_val(prec, a + b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.prec;
        self.zip_with(other, |a, b| BigReal::with_val(prec, a - b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec, "operands come from different precision contexts");
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self {
                coeffs: Vec::new(),
                prec: self.prec,
            };
        }
        let mut coeffs = vec![BigReal::new(self.prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += BigReal::with_val(self.prec, a * b);
            }
        }
        Self {
            coeffs,
            prec: self.prec,
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Polynomial[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c.to_string_radix(10, Some(12)))?;
        }
        f.write_str("]")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| BigReal::with_val(self.prec, -c)).collect(),
            prec: self.prec,
        }
    }
}
