use num_complex::Complex64;
use num_traits::ToPrimitive;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{invalid, Result};
use crate::numeration::Ostrowski;
use crate::sum::{e, ComplexSum};

/// Discrete Fourier coefficients of `u ↦ e(ϑS_{α,k}(u + n_{v−1}))` over the
/// block `0 ≤ u < Q(v) = n_v − n_{v−1}`:
/// `L_v(l) = Q⁻¹ Σ_u e(ϑS_{α,k}(u + n_{v−1}) − lu/Q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumL {
    pub v: usize,
    pub k: usize,
    pub q: u64,
    pub n_prev: u64,
    pub coeffs: Vec<Complex64>,
}

impl SpectrumL {
    /// `Σ_l L_v(l) e(ln/Q)`, with `ln mod Q` taken in integers.
    pub fn reconstruct(&self, n: u64) -> Complex64 {
        let q = u128::from(self.q);
        let n = u128::from(n) % q;
        let mut acc = ComplexSum::default();
        for (l, c) in self.coeffs.iter().enumerate() {
            let r = (l as u128 * n) % q;
            acc.add(c * e(r as f64 / self.q as f64));
        }
        acc.value()
    }

    /// `Σ_l |L_v(l)|²`.
    pub fn parseval(&self) -> f64 {
        let mut acc = crate::sum::Neumaier::default();
        for c in &self.coeffs {
            acc.add(c.norm_sqr());
        }
        acc.value()
    }
}

pub fn dft_window(
    sys: &Ostrowski,
    k: usize,
    v: usize,
    theta: f64,
    budget: Budget,
) -> Result<SpectrumL> {
    if k < 2 {
        return Err(invalid(format!("dft_window needs k >= 2, got {k}")));
    }
    if v < 1 {
        return Err(invalid("dft_window needs v >= 1"));
    }
    let vs = sys.v_sequence(k, v + 1)?;
    let n_prev = vs
        .point(v - 1)
        .to_u64()
        .ok_or_else(|| invalid("block start exceeds 64 bits"))?;
    let gap = vs.gap(v);
    let q = gap
        .to_u64()
        .ok_or_else(|| invalid("block length exceeds 64 bits"))?;
    budget.check("DFT block length Q(v)", u128::from(q))?;

    let mut buf = Vec::with_capacity(q as usize);
    let mut o = sys.odometer_at(n_prev);
    for _ in 0..q {
        buf.push(e(theta * o.digit_sum_trunc(k) as f64));
        o.advance();
    }
    FftPlanner::<f64>::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    let scale = 1.0 / q as f64;
    for c in &mut buf {
        *c *= scale;
    }
    Ok(SpectrumL {
        v,
        k,
        q,
        n_prev,
        coeffs: buf,
    })
}
