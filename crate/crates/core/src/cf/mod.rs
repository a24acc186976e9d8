//! Continued-fraction data for `α = [0; 1, m, 1, m, …]`.
//!
//! [`AlphaParams`] holds the exact surds for `α = (−m + √d)/2` and
//! `φ = (m + 2 + √d)/2` with `d = m² + 4m`; [`ConvergentTable`] holds the
//! convergents `p_i / q_i` as arbitrary-precision integers.

mod convergents;
mod surd;

pub use convergents::ConvergentTable;
pub use surd::Surd;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// The numeration system parameters for one `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaParams {
    m: u32,
    d: u64,
    alpha: Surd,
    phi: Surd,
}

/// Builds the parameters for `α = [0; overline{1, m}]`. `m = 1` gives the
/// Zeckendorf (golden ratio) system.
pub fn make_alpha(m: i64) -> Result<AlphaParams> {
    if m < 1 {
        return Err(invalid(format!("m must be >= 1, got {m}")));
    }
    let m32 = u32::try_from(m).map_err(|_| invalid(format!("m = {m} is too large")))?;
    AlphaParams::new(m32)
}

impl AlphaParams {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m must be >= 1"));
        }
        let mm = u64::from(m);
        let d = mm
            .checked_mul(mm + 4)
            .ok_or_else(|| invalid(format!("m = {m} is too large")))?;
        let alpha = Surd::new(-i64::from(m), 1, 2, d)?;
        let phi = Surd::new(i64::from(m) + 2, 1, 2, d)?;
        Ok(AlphaParams { m, d, alpha, phi })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Radicand `d = m² + 4m`.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn alpha(&self) -> &Surd {
        &self.alpha
    }

    pub fn phi(&self) -> &Surd {
        &self.phi
    }

    /// Partial quotient `a_i` of `[0; 1, m, 1, m, …]`.
    pub fn partial_quotient(&self, i: usize) -> u32 {
        match i {
            0 => 0,
            i if i % 2 == 1 => 1,
            _ => self.m,
        }
    }

    /// Largest admissible digit at position `i`: `a_{i+1}` for `i ≥ 1`, and
    /// `0` at position 0 (since `ε_0 < a_1 = 1`).
    #[inline]
    pub fn digit_cap(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else if i % 2 == 1 {
            self.m
        } else {
            1
        }
    }

    pub fn summary(&self) -> AlphaSummary {
        AlphaSummary {
            m: self.m,
            d: self.d,
            alpha: self.alpha.to_f64(),
            phi: self.phi.to_f64(),
        }
    }
}

/// Float view of [`AlphaParams`] for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaSummary {
    pub m: u32,
    pub d: u64,
    pub alpha: f64,
    pub phi: f64,
}

/// Convergent table with indices `0..=k_max`.
pub fn convergents(params: &AlphaParams, k_max: usize) -> Result<ConvergentTable> {
    if k_max < 1 {
        return Err(invalid("convergent table needs K >= 1"));
    }
    Ok(ConvergentTable::new(params, k_max))
}

/// `{h·s}` in `[0, 1)`, exact up to one final rounding.
pub fn frac_mul(h: impl Into<BigInt>, s: &Surd) -> f64 {
    let h = h.into();
    let f = s.fract_mul_f64(&h);
    // the single rounding can land on 1.0 when {hs} is within half an ulp of 1
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `‖h·s‖`, the distance from `h·s` to the nearest integer.
pub fn dist_nearest(h: impl Into<BigInt>, s: &Surd) -> f64 {
    let f = frac_mul(h, s);
    f.min(1.0 - f)
}
