//! Frequencies such as `ϑ`, `β`, `γ`: exact rationals when possible, so the
//! integrality hypotheses (`m·β ∉ ℤ`) can be checked without rounding.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Rational { num: i64, den: i64 },
    Real(f64),
}

impl Angle {
    /// Reduced rational `num/den`.
    pub fn rational(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(invalid("zero denominator"));
        }
        let r = Ratio::new(num, den);
        Ok(Angle::Rational {
            num: *r.numer(),
            den: *r.denom(),
        })
    }

    pub fn zero() -> Self {
        Angle::Rational { num: 0, den: 1 }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Angle::Rational { num, den } => {
                // reduce mod 1 in integers first so large numerators stay accurate
                let r = num.mod_floor(&den);
                r.to_f64().unwrap_or(0.0) / den as f64
            }
            Angle::Real(x) => x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Rational { .. })
    }

    /// Whether `m·self` is an integer; `None` for real-valued angles.
    pub fn times_is_integer(&self, m: u32) -> Option<bool> {
        match *self {
            Angle::Rational { num, den } => Some((num as i128 * m as i128) % den as i128 == 0),
            Angle::Real(_) => None,
        }
    }

    /// Same test for real angles, with an absolute tolerance.
    pub fn times_is_near_integer(&self, m: u32, tol: f64) -> bool {
        match self.times_is_integer(m) {
            Some(b) => b,
            None => {
                let x = self.to_f64() * f64::from(m);
                (x - x.round()).abs() <= tol
            }
        }
    }

    /// Parses `p/q` or an integer as exact; with `allow_real`, a decimal
    /// literal is accepted as a real angle.
    pub fn parse(s: &str, allow_real: bool) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad rational {s:?}")))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad rational {s:?}")))?;
            return Angle::rational(p, q);
        }
        if let Ok(p) = s.parse::<i64>() {
            return Angle::rational(p, 1);
        }
        if allow_real {
            let x: f64 = s
                .parse()
                .map_err(|_| invalid(format!("bad number {s:?}")))?;
            if !x.is_finite() {
                return Err(invalid(format!("non-finite angle {s:?}")));
            }
            return Ok(Angle::Real(x));
        }
        Err(invalid(format!(
            "{s:?} is not a rational p/q; pass --real to accept decimals"
        )))
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Angle::parse(s, false)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational { num, den } if *den == 1 => write!(f, "{num}"),
            Angle::Rational { num, den } => write!(f, "{num}/{den}"),
            Angle::Real(x) => write!(f, "{x}"),
        }
    }
}
