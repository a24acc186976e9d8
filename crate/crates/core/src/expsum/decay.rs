use serde::{Deserialize, Serialize};

use super::{digit_sum_bound, PhaseTable};
use crate::budget::Budget;
use crate::error::{invalid, Result};
use crate::numeration::Ostrowski;
use crate::stats::ols_slope;
use crate::sum::{e, ComplexSum, LinearPhase};

/// `D_k = |q_k⁻¹ Σ_{u<q_k} e(γS_α(u) + θu)|` for `2 ≤ k ≤ kmax`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub m: u32,
    pub gamma: f64,
    pub theta: f64,
    /// `‖mγ‖ ≠ 0`; without it no decay is expected.
    pub hypothesis_holds: bool,
    pub ks: Vec<usize>,
    pub q: Vec<u64>,
    pub d: Vec<f64>,
    /// Slope of `ln D_k` against `k` over every `k` with `D_k > 0`.
    pub slope: Option<f64>,
}

impl DecayReport {
    pub fn value_at(&self, k: usize) -> Option<f64> {
        self.ks.iter().position(|&x| x == k).map(|i| self.d[i])
    }

    /// Log-linear slope restricted to `kmin ≤ k ≤ kmax`.
    pub fn slope_over(&self, kmin: usize, kmax: usize) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .ks
            .iter()
            .zip(&self.d)
            .filter(|(&k, &d)| k >= kmin && k <= kmax && d > 0.0)
            .map(|(&k, &d)| (k as f64, d.ln()))
            .collect();
        ols_slope(&pts).map(|(s, _)| s)
    }
}

pub fn single_decay(
    sys: &Ostrowski,
    gamma: f64,
    theta: f64,
    kmax: usize,
    budget: Budget,
) -> Result<DecayReport> {
    if kmax < 2 {
        return Err(invalid(format!("kmax must be >= 2, got {kmax}")));
    }
    let q_top = sys
        .q_u64(kmax)
        .ok_or_else(|| invalid(format!("q_{kmax} does not fit in 64 bits")))?;
    budget.check("decay window q_kmax", u128::from(q_top))?;

    let m = sys.m();
    let x = gamma * f64::from(m);
    let hypothesis_holds = (x - x.round()).abs() > 1e-12;

    let table = PhaseTable::new(gamma, digit_sum_bound(sys, q_top));
    let lin = LinearPhase::new(theta);
    let mut ks = Vec::new();
    let mut qs = Vec::new();
    let mut d = Vec::new();
    let mut acc = ComplexSum::default();
    let mut o = sys.odometer_at(0);
    let mut next_k = 2;
    for u in 0..q_top {
        acc.add(table.get(o.digit_sum()) * e(lin.at(u)));
        o.advance();
        while next_k <= kmax && sys.q_u64(next_k) == Some(u + 1) {
            ks.push(next_k);
            qs.push(u + 1);
            d.push(acc.value().norm() / (u + 1) as f64);
            next_k += 1;
        }
    }
    let mut report = DecayReport {
        m,
        gamma,
        theta,
        hypothesis_holds,
        ks,
        q: qs,
        d,
        slope: None,
    };
    report.slope = report.slope_over(2, kmax);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_frequency_no_decay() {
        let s = Ostrowski::with_m(2).unwrap();
        let r = single_decay(&s, 0.0, 0.0, 10, Budget::default()).unwrap();
        assert_eq!(r.ks, (2..=10).collect::<Vec<_>>());
        for d in &r.d {
            assert!((d - 1.0).abs() < 1e-12);
        }
        assert!(!r.hypothesis_holds);
    }

    #[test]
    fn flags_integral_m_gamma() {
        let s = Ostrowski::with_m(2).unwrap();
        let r = single_decay(&s, 0.5, 0.1, 8, Budget::default()).unwrap();
        assert!(!r.hypothesis_holds);
        let r = single_decay(&s, 1.0 / 3.0, 0.1, 8, Budget::default()).unwrap();
        assert!(r.hypothesis_holds);
    }

    #[test]
    fn budget_and_range_errors() {
        let s = Ostrowski::with_m(2).unwrap();
        assert!(single_decay(&s, 0.3, 0.0, 1, Budget::default()).is_err());
        let err = single_decay(&s, 0.3, 0.0, 20, Budget::new(1000)).unwrap_err();
        assert!(matches!(err, crate::Error::BudgetExceeded { .. }));
    }

    #[test]
    fn matches_direct_block_sums() {
        let s = Ostrowski::with_m(3).unwrap();
        let (g, t) = (0.2, 0.37);
        let r = single_decay(&s, g, t, 9, Budget::default()).unwrap();
        for (&k, &dk) in r.ks.iter().zip(&r.d) {
            let q = s.q_u64(k).unwrap();
            let direct: num_complex::Complex64 = (0..q)
                .map(|u| e(g * s.digit_sum_u64(u) as f64 + t * u as f64))
                .sum();
            assert!((direct.norm() / q as f64 - dk).abs() < 1e-12, "k={k}");
        }
    }
}
