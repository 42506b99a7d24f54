//! Numeric field the recurrences are evaluated over.
//!
//! Two instantiations ship: `f64` ("approximate mode") and [`Rational`]
//! ("exact mode"). Exact mode makes solver equivalence a bit-exact check that
//! is immune to the reassociation performed by the scan.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used in exact mode.
pub type Rational = BigRational;

/// Relative tolerance for approximate-mode comparisons.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor below which approximate-mode differences are ignored.
pub const ABS_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Approx,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Approx => "f64",
        }
    }

    /// Largest [`Scalar::deviation`] still counted as agreement.
    pub fn tolerance(self) -> f64 {
        match self {
            ScalarMode::Exact => 0.0,
            ScalarMode::Approx => REL_TOL,
        }
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalarMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "f64" => Ok(ScalarMode::Approx),
            other => Err(format!("unknown scalar mode `{other}` (expected `exact` or `f64`)")),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: ScalarMode;

    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// `self += a * b` without cloning the operands.
    fn mul_add_assign(&mut self, a: &Self, b: &Self);

    /// Parse one whitespace-free token of the instance file format.
    fn parse_token(token: &str) -> Result<Self, String>;

    /// Render a token that [`Scalar::parse_token`] maps back to the same value.
    fn format_token(&self) -> String;

    /// Relative disagreement between `self` and `reference`.
    ///
    /// Exact mode yields `0.0` iff the values are equal. Approximate mode
    /// returns `|x - y| / max(|x|, |y|, ABS_FLOOR / REL_TOL)`, so a result
    /// `<= REL_TOL` is the same as `|x - y| <= max(REL_TOL * max(|x|, |y|), ABS_FLOOR)`.
    fn deviation(&self, reference: &Self) -> f64;

    /// Mode-aware equality: exact equality or the approximate tolerance.
    fn close_to(&self, other: &Self) -> bool {
        self.deviation(other) <= Self::MODE.tolerance()
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Approx;

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        // Plain multiply then add; fused operations would make results depend on target features.
        *self += a * b;
    }

    fn parse_token(token: &str) -> Result<Self, String> {
        token.parse::<f64>().map_err(|e| format!("bad f64 `{token}`: {e}"))
    }

    fn format_token(&self) -> String {
        // Shortest representation that round-trips to the same binary64.
        format!("{self:?}")
    }

    fn deviation(&self, reference: &Self) -> f64 {
        if self == reference {
            return 0.0;
        }
        let scale = f64::abs(*self).max(f64::abs(*reference)).max(ABS_FLOOR / REL_TOL);
        let dev = f64::abs(self - reference) / scale;
        if dev.is_nan() {
            f64::INFINITY
        } else {
            dev
        }
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn parse_token(token: &str) -> Result<Self, String> {
        let bad = |e: &dyn Display| format!("bad rational `{token}`: {e}");
        match token.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.parse().map_err(|e| bad(&e))?;
                let q: BigInt = q.parse().map_err(|e| bad(&e))?;
                if q.is_zero() {
                    return Err(bad(&"zero denominator"));
                }
                Ok(Rational::new(p, q))
            }
            None => {
                let p: BigInt = token.parse().map_err(|e| bad(&e))?;
                Ok(Rational::from_integer(p))
            }
        }
    }

    fn format_token(&self) -> String {
        self.to_string()
    }

    fn deviation(&self, reference: &Self) -> f64 {
        if self == reference {
            return 0.0;
        }
        let diff = Scalar::to_f64(&Scalar::abs(&(self - reference)));
        let scale = Scalar::to_f64(self)
            .abs()
            .max(Scalar::to_f64(reference).abs())
            .max(ABS_FLOOR / REL_TOL);
        // A nonzero exact difference must never read as agreement.
        (diff / scale).max(f64::MIN_POSITIVE)
    }
}

/// Convenience constructor for small exact values.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
