//! Sign plus base-10 logarithm representation for magnitudes far outside the
//! `f64` exponent range (e^{-K} with K in the hundreds, (1e-62)^{2N}, ...).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real number stored as `sign · 10^log10_mag`.
///
/// Zero has `sign == 0`; its logarithm is reported as `-inf` and ignored by
/// comparisons and equality.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(into = "LogMagnitudeRepr", try_from = "LogMagnitudeRepr")]
pub struct LogMagnitude {
    sign: i8,
    log10_mag: f64,
}

/// Wire form: `{"sign": -1|0|1, "log10": <number or null when zero>}`.
#[derive(Serialize, Deserialize)]
struct LogMagnitudeRepr {
    sign: i8,
    log10: Option<f64>,
}

impl From<LogMagnitude> for LogMagnitudeRepr {
    fn from(v: LogMagnitude) -> Self {
        LogMagnitudeRepr { sign: v.sign, log10: (v.sign != 0).then_some(v.log10_mag) }
    }
}

impl TryFrom<LogMagnitudeRepr> for LogMagnitude {
    type Error = Error;

    fn try_from(r: LogMagnitudeRepr) -> Result<Self> {
        match (r.sign, r.log10) {
            (0, _) => Ok(LogMagnitude::ZERO),
            (s, Some(l)) => LogMagnitude::from_log10(s, l),
            (_, None) => Err(Error::Malformed("nonzero LogMagnitude needs a log10 value".into())),
        }
    }
}

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude { sign: 0, log10_mag: f64::NEG_INFINITY };
    pub const ONE: LogMagnitude = LogMagnitude { sign: 1, log10_mag: 0.0 };

    /// Builds `sign · 10^log10_mag`. A `-inf` logarithm collapses to zero.
    pub fn from_log10(sign: i8, log10_mag: f64) -> Result<Self> {
        if !(-1..=1).contains(&sign) {
            return Err(Error::domain(format!("sign must be -1, 0 or 1, got {sign}")));
        }
        if sign == 0 || log10_mag == f64::NEG_INFINITY {
            return Ok(Self::ZERO);
        }
        if !log10_mag.is_finite() {
            return Err(Error::domain(format!("log10 magnitude must be finite, got {log10_mag}")));
        }
        Ok(LogMagnitude { sign, log10_mag })
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain(format!("cannot represent non-finite value {x}")));
        }
        if x == 0.0 {
            return Ok(Self::ZERO);
        }
        Ok(LogMagnitude { sign: if x > 0.0 { 1 } else { -1 }, log10_mag: x.abs().log10() })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Base-10 logarithm of the magnitude; `-inf` for zero.
    pub fn log10(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.log10_mag
        }
    }

    /// Natural logarithm of the magnitude; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        self.log10() * std::f64::consts::LN_10
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Best-effort conversion; underflows to `±0.0` and overflows to `±inf`.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * 10f64.powf(self.log10_mag)
        }
    }

    /// Conversion that refuses to lose the value: `None` when the magnitude
    /// would overflow or fall below the smallest normal `f64`.
    pub fn to_f64_checked(&self) -> Option<f64> {
        if self.sign == 0 {
            return Some(0.0);
        }
        let v = self.to_f64();
        (v.is_finite() && v.abs() >= f64::MIN_POSITIVE).then_some(v)
    }

    pub fn abs(&self) -> Self {
        LogMagnitude { sign: self.sign.abs(), log10_mag: self.log10_mag }
    }

    /// `self^exponent` for a non-negative value.
    pub fn powf(&self, exponent: f64) -> Result<Self> {
        match self.sign {
            0 if exponent > 0.0 => Ok(Self::ZERO),
            0 if exponent == 0.0 => Ok(Self::ONE),
            0 => Err(Error::domain("zero raised to a negative power")),
            1 => Self::from_log10(1, self.log10_mag * exponent),
            _ => Err(Error::domain("fractional power of a negative LogMagnitude")),
        }
    }

    /// Integer power; sign follows the parity of `n`.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        LogMagnitude { sign, log10_mag: self.log10_mag * n as f64 }
    }

    /// Signed addition carried out entirely in the log domain.
    pub fn add(&self, other: &Self) -> Self {
        if self.sign == 0 {
            return *other;
        }
        if other.sign == 0 {
            return *self;
        }
        let (big, small) = if self.log10_mag >= other.log10_mag { (self, other) } else { (other, self) };
        let ratio = 10f64.powf(small.log10_mag - big.log10_mag);
        if big.sign == small.sign {
            LogMagnitude { sign: big.sign, log10_mag: big.log10_mag + ratio.ln_1p() / std::f64::consts::LN_10 }
        } else if ratio == 1.0 {
            Self::ZERO
        } else {
            LogMagnitude { sign: big.sign, log10_mag: big.log10_mag + (-ratio).ln_1p() / std::f64::consts::LN_10 }
        }
    }

    /// Total order consistent with the real numbers represented.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                // logs are never NaN; partial_cmp treats -0.0 == 0.0
                1 => self.log10_mag.partial_cmp(&other.log10_mag).unwrap_or(Ordering::Equal),
                _ => other.log10_mag.partial_cmp(&self.log10_mag).unwrap_or(Ordering::Equal),
            },
            ord => ord,
        }
    }
}

impl PartialEq for LogMagnitude {
    fn eq(&self, other: &Self) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl Eq for LogMagnitude {}

impl PartialOrd for LogMagnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogMagnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl Mul for LogMagnitude {
    type Output = LogMagnitude;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        LogMagnitude { sign: self.sign * rhs.sign, log10_mag: self.log10_mag + rhs.log10_mag }
    }
}

impl Div for LogMagnitude {
    type Output = LogMagnitude;

    /// Division by zero yields zero's reciprocal, which is not representable;
    /// it panics like integer division does.
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.sign != 0, "LogMagnitude division by zero");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogMagnitude { sign: self.sign * rhs.sign, log10_mag: self.log10_mag - rhs.log10_mag }
    }
}

impl Neg for LogMagnitude {
    type Output = LogMagnitude;

    fn neg(self) -> Self {
        LogMagnitude { sign: -self.sign, log10_mag: self.log10_mag }
    }
}

impl std::iter::Product for LogMagnitude {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |acc, x| acc * x)
    }
}

impl fmt::Display for LogMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}1e{:.6}", if s < 0 { "-" } else { "" }, self.log10_mag),
        }
    }
}

/// e^{-K} in log form: `(+1, -K·log10 e)`.
pub fn log_exp_neg(k: f64) -> Result<LogMagnitude> {
    if !k.is_finite() {
        return Err(Error::domain(format!("exponent K must be finite, got {k}")));
    }
    LogMagnitude::from_log10(1, -k * std::f64::consts::LOG10_E)
}

/// `base^exponent` in log form for a strictly positive base.
pub fn log_pow(base: f64, exponent: f64) -> Result<LogMagnitude> {
    if !(base > 0.0) || !base.is_finite() {
        return Err(Error::domain(format!("log_pow needs a finite positive base, got {base}")));
    }
    if !exponent.is_finite() {
        return Err(Error::domain(format!("log_pow needs a finite exponent, got {exponent}")));
    }
    let l = exponent * base.log10();
    // 1^x and x^0 stay exactly one even when the product is -0.0
    LogMagnitude::from_log10(1, if l == 0.0 { 0.0 } else { l })
}
