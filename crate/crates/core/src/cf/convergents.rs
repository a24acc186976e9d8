use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::AlphaParams;

/// Convergents `p_i / q_i` of `[0; 1, m, 1, m, …]` for `0 ≤ i ≤ K`.
///
/// `q_0 = q_1 = 1`, `q_i = m·q_{i−1} + q_{i−2}` for even `i` and
/// `q_i = q_{i−1} + q_{i−2}` for odd `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    params: AlphaParams,
    q: Vec<BigUint>,
    p: Vec<BigUint>,
}

impl ConvergentTable {
    pub(crate) fn new(params: &AlphaParams, k_max: usize) -> Self {
        let mut t = ConvergentTable {
            params: params.clone(),
            q: vec![BigUint::one(), BigUint::one()],
            p: vec![BigUint::zero(), BigUint::one()],
        };
        t.extend_to(k_max.max(1));
        t
    }

    /// Grows the table so that index `k_max` is present.
    pub fn extend_to(&mut self, k_max: usize) {
        while self.q.len() <= k_max {
            let i = self.q.len();
            let a = BigUint::from(self.params.partial_quotient(i));
            let q = &a * &self.q[i - 1] + &self.q[i - 2];
            let p = &a * &self.p[i - 1] + &self.p[i - 2];
            self.q.push(q);
            self.p.push(p);
        }
    }

    /// Grows the table until `q_K > n`.
    pub fn extend_past(&mut self, n: &BigUint) {
        while self.q.last().is_some_and(|q| q <= n) {
            let k = self.q.len();
            self.extend_to(k);
        }
    }

    pub fn params(&self) -> &AlphaParams {
        &self.params
    }

    /// Largest stored index `K`.
    pub fn k_max(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q(&self, i: usize) -> &BigUint {
        &self.q[i]
    }

    pub fn p(&self, i: usize) -> &BigUint {
        &self.p[i]
    }

    pub fn qs(&self) -> &[BigUint] {
        &self.q
    }

    pub fn ps(&self) -> &[BigUint] {
        &self.p
    }

    /// `p_{i+1} q_i − p_i q_{i+1}`, which equals `(−1)^i`.
    pub fn determinant(&self, i: usize) -> BigInt {
        BigInt::from(&self.p[i + 1] * &self.q[i]) - BigInt::from(&self.p[i] * &self.q[i + 1])
    }

    /// Least-squares slope of `ln q_k` against `k` over the upper half of the
    /// table, returned as a per-index growth factor. The two-step factor is
    /// its square and should approach `φ`.
    pub fn fitted_growth(&self) -> f64 {
        let lo = (self.q.len() / 2).max(1);
        let pts: Vec<(f64, f64)> = (lo..self.q.len())
            .map(|k| (k as f64, ln_biguint(&self.q[k])))
            .collect();
        crate::stats::ols_slope(&pts)
            .map(|(slope, _)| slope.exp())
            .unwrap_or(f64::NAN)
    }
}

pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
