//! Numeric checks of the auxiliary inequalities and identities.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::{frac_mul, AlphaParams, Surd};
use crate::error::{invalid, Result};
use crate::sum::{e, ComplexSum, Neumaier};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FejerCheck {
    pub x: f64,
    pub r: u32,
    /// `Σ_{|r|<R} (R − |r|) e(rx)`.
    pub lhs_re: f64,
    pub lhs_im: f64,
    /// `|Σ_{0≤r<R} e(rx)|²`.
    pub rhs: f64,
}

impl FejerCheck {
    pub fn abs_diff(&self) -> f64 {
        Complex64::new(self.lhs_re - self.rhs, self.lhs_im).norm()
    }

    pub fn holds(&self, rel_tol: f64) -> bool {
        let r2 = f64::from(self.r).powi(2);
        self.lhs_im.abs() <= 1e-9 && (self.lhs_re - self.rhs).abs() <= rel_tol * r2
    }
}

pub fn fejer_check(x: f64, r: u32) -> Result<FejerCheck> {
    if r < 1 {
        return Err(invalid("R must be >= 1"));
    }
    let big_r = i64::from(r);
    let mut lhs = ComplexSum::default();
    for j in -(big_r - 1)..big_r {
        lhs.add(e(j as f64 * x) * (big_r - j.abs()) as f64);
    }
    let mut s = ComplexSum::default();
    for j in 0..big_r {
        s.add(e(j as f64 * x));
    }
    let lhs = lhs.value();
    Ok(FejerCheck {
        x,
        r,
        lhs_re: lhs.re,
        lhs_im: lhs.im,
        rhs: s.value().norm_sqr(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylCheck {
    pub n: usize,
    pub r: usize,
    /// `|Σ a_n|²`.
    pub lhs: f64,
    /// `(N−1+R)/R · Σ_{|r|<R} (1 − |r|/R) Σ_n a_{n+r} ā_n`.
    pub rhs: f64,
    /// `lhs ≤ rhs + 10⁻⁶ N²`.
    pub holds: bool,
}

pub fn weyl_vdc_check(a: &[Complex64], r: usize) -> Result<WeylCheck> {
    if r < 1 {
        return Err(invalid("R must be >= 1"));
    }
    let n = a.len();
    let mut total = ComplexSum::default();
    for &x in a {
        total.add(x);
    }
    let lhs = total.value().norm_sqr();

    // The correlation at −r is the conjugate of the one at r.
    let mut inner = Neumaier::default();
    for shift in 0..r.min(n) {
        let mut corr = ComplexSum::default();
        for i in 0..n - shift {
            corr.add(a[i + shift] * a[i].conj());
        }
        let w = 1.0 - shift as f64 / r as f64;
        let c = corr.value().re;
        inner.add(if shift == 0 { w * c } else { 2.0 * w * c });
    }
    let rhs = (n as f64 - 1.0 + r as f64) / r as f64 * inner.value();
    let nf = n as f64;
    Ok(WeylCheck {
        n,
        r,
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-6 * nf * nf,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinNormSum {
    pub m: u32,
    pub t: f64,
    pub lo: i64,
    pub hi: i64,
    pub k: f64,
    /// `Σ_{h∈I} min{K, ‖t + hφ‖⁻²}`.
    pub lhs: f64,
    /// `√K·|I|`.
    pub sqrt_k_len: f64,
    /// `K·log|I|`.
    pub k_log_len: f64,
    /// `lhs / (√K|I| + K log|I|)`, an estimate of the implied constant.
    pub ratio: f64,
}

/// `‖t + hφ‖` with `{hφ}` reduced exactly before `t` is added.
fn dist_shifted(t: f64, h: i64, phi: &Surd) -> f64 {
    let x = frac_mul(h, phi) + (t - t.floor());
    let f = x - x.floor();
    f.min(1.0 - f)
}

/// Evaluates the `min{K, ‖t+hφ‖⁻²}` sum over the integer interval `[lo, hi]`.
pub fn min_norm_sum(params: &AlphaParams, t: f64, lo: i64, hi: i64, k: f64) -> Result<MinNormSum> {
    if !k.is_finite() || k < 1.0 {
        return Err(invalid(format!("K must be >= 1, got {k}")));
    }
    if hi < lo || hi - lo + 1 < 2 {
        return Err(invalid("interval must contain at least two integers"));
    }
    let phi = params.phi();
    let mut acc = Neumaier::default();
    for h in lo..=hi {
        let d = dist_shifted(t, h, phi);
        let term = if d == 0.0 { k } else { k.min(1.0 / (d * d)) };
        acc.add(term);
    }
    let len = (hi - lo + 1) as f64;
    let sqrt_k_len = k.sqrt() * len;
    let k_log_len = k * len.ln();
    let lhs = acc.value();
    Ok(MinNormSum {
        m: params.m(),
        t,
        lo,
        hi,
        k,
        lhs,
        sqrt_k_len,
        k_log_len,
        ratio: lhs / (sqrt_k_len + k_log_len),
    })
}

/// 256-bit unsigned fixed-point fraction in `[0, 1)`, as `(hi, lo)` words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Frac256(u128, u128);

impl Frac256 {
    fn wrapping_add(self, o: Frac256) -> Frac256 {
        let (lo, carry) = self.1.overflowing_add(o.1);
        Frac256(self.0.wrapping_add(o.0).wrapping_add(u128::from(carry)), lo)
    }

    fn wrapping_neg(self) -> Frac256 {
        let (lo, borrow) = 0u128.overflowing_sub(self.1);
        Frac256(
            0u128.wrapping_sub(self.0).wrapping_sub(u128::from(borrow)),
            lo,
        )
    }

    /// Distance to the nearest integer, as the 256-bit magnitude.
    fn dist(self) -> Frac256 {
        if self.0 >> 127 == 1 {
            self.wrapping_neg()
        } else {
            self
        }
    }

    fn to_f64(self) -> f64 {
        self.0 as f64 * 2f64.powi(-128) + self.1 as f64 * 2f64.powi(-256)
    }
}

/// `⌊2²⁵⁶·h·s⌋ mod 2²⁵⁶` for a quadratic surd `s = (a + b√d)/c`, exact.
fn fixed_fract(h: &BigInt, s: &Surd) -> Frac256 {
    let shift = BigInt::from(1) << 256u32;
    let hb = h * s.b();
    // ⌊hb·2²⁵⁶·√d⌋
    let rad = (&hb * &shift).pow(2u32) * BigInt::from(s.radicand());
    let root = rad.sqrt();
    let floor_irr = match hb.sign() {
        Sign::NoSign => BigInt::zero(),
        Sign::Plus => root,
        Sign::Minus => -root - 1,
    };
    let num = h * s.a() * &shift + floor_irr;
    let q = num.div_floor(s.c());
    let r = q.mod_floor(&shift);
    let mask = (BigInt::from(1) << 128u32) - 1;
    let lo = (&r & &mask).to_u128().unwrap_or(0);
    let hi = (r >> 128u32).to_u128().unwrap_or(0);
    Frac256(hi, lo)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtMargin {
    pub m1: u32,
    pub m2: u32,
    pub h_max: u32,
    pub epsilon: f64,
    /// Certified lower bound on `min ‖h₂φ₂ + h₄φ₁‖·max(|h₂|,|h₄|)^{2+ε}`.
    pub margin: f64,
    pub argmin: (i64, i64),
    /// `‖h₂φ₂ + h₄φ₁‖` at the minimizer.
    pub dist_at_argmin: f64,
    /// Number of pairs scanned, counting `(h₂, h₄)` and `(−h₂, −h₄)` once.
    pub pairs: u64,
}

pub const SCHMIDT_EPSILON: f64 = 0.1;

/// Exhaustive scan of `0 < max(|h₂|,|h₄|) ≤ H`. Fractional parts are exact
/// to 2⁻²⁵⁶, and the reported margin is lowered by that error and by the
/// final rounding.
pub fn schmidt_margin(p1: &AlphaParams, p2: &AlphaParams, h_max: u32) -> Result<SchmidtMargin> {
    if p1.m() == p2.m() {
        return Err(invalid("schmidt_margin needs m1 != m2"));
    }
    if h_max < 1 {
        return Err(invalid("H must be >= 1"));
    }
    let hm = h_max as usize;
    let f1: Vec<Frac256> = (0..=hm)
        .map(|h| fixed_fract(&BigInt::from(h), p1.phi()))
        .collect();
    let f2: Vec<Frac256> = (0..=hm)
        .map(|h| fixed_fract(&BigInt::from(h), p2.phi()))
        .collect();
    let exponent = 2.0 + SCHMIDT_EPSILON;
    // truncation of each fixed fraction is < 2⁻²⁵⁶; two of them per pair
    let err = 2.0 * 2f64.powi(-256);

    let mut best: Option<(f64, i64, i64, f64)> = None;
    let mut pairs = 0u64;
    for (h2, &g2) in f2.iter().enumerate() {
        for h4 in -(hm as i64)..=(hm as i64) {
            if h2 == 0 && h4 <= 0 {
                continue;
            }
            pairs += 1;
            let a4 = h4.unsigned_abs() as usize;
            let g4 = if h4 < 0 {
                f1[a4].wrapping_neg()
            } else {
                f1[a4]
            };
            let dist = g2.wrapping_add(g4).dist().to_f64();
            let lower = ((dist - err).max(0.0)) * (1.0 - 4.0 * f64::EPSILON);
            let w = (h2.max(a4) as f64).powf(exponent);
            let val = lower * w * (1.0 - 4.0 * f64::EPSILON);
            if best.is_none_or(|b| val < b.0) {
                best = Some((val, h2 as i64, h4, dist));
            }
        }
    }
    let (margin, a, b, dist) = best.expect("at least one pair when H >= 1");
    Ok(SchmidtMargin {
        m1: p1.m(),
        m2: p2.m(),
        h_max,
        epsilon: SCHMIDT_EPSILON,
        margin,
        argmin: (a, b),
        dist_at_argmin: dist,
        pairs,
    })
}
