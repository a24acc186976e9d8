//! Exponential sums over Ostrowski digit sums.
//!
//! * [`joint_exp_sum`] / [`joint_exp_series`]: `Σ_{n<N} e(ϑS_{α₁}(n) + βS_{α₂}(n))`
//!   by two synchronized odometers.
//! * [`single_decay`]: normalized sums over complete blocks `[0, q_k)`.
//! * [`m_sums`] and [`b_zero`]: the block sums and zero-frequency weights
//!   used to expand `e(ϑS_{α,k}(n))` along `e(hnφ)`.
//! * [`dft_window`]: the discrete Fourier expansion of `e(ϑS_{α,k})` over a
//!   block `[n_{v−1}, n_v)`.
//! * [`lemmas`]: numeric checks of the Fejér identity, the Weyl–van der Corput
//!   inequality, the `min{K, ‖t+hφ‖⁻²}` sum and the simultaneous
//!   approximation margin.

mod decay;
mod dft;
pub mod lemmas;
mod prop;

pub use decay::{single_decay, DecayReport};
pub use dft::{dft_window, SpectrumL};
pub use lemmas::{
    fejer_check, min_norm_sum, schmidt_margin, weyl_vdc_check, FejerCheck, MinNormSum,
    SchmidtMargin, WeylCheck,
};
pub use prop::{b_zero, b_zero_exact, b_zero_normalization, m_sums};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeration::Ostrowski;
use crate::sum::{chunks_marked, e, map_ranges, ComplexSum};

/// `e(ϑ·s)` for `s = 0..len`.
#[derive(Clone, Debug)]
pub(crate) struct PhaseTable {
    table: Vec<Complex64>,
}

impl PhaseTable {
    pub(crate) fn new(theta: f64, len: usize) -> Self {
        PhaseTable {
            table: (0..len).map(|s| e(theta * s as f64)).collect(),
        }
    }

    #[inline]
    pub(crate) fn get(&self, s: u64) -> Complex64 {
        self.table[s as usize]
    }
}

/// Upper bound (exclusive) on `S_α(n)` over `n < n_max`.
pub(crate) fn digit_sum_bound(sys: &Ostrowski, n_max: u64) -> usize {
    let mut k = 0;
    while sys.q_u64(k).is_some_and(|q| q <= n_max) {
        k += 1;
    }
    (k + 1) * sys.m().max(1) as usize + 1
}

/// `Σ_{n<N} e(ϑS_{α₁}(n) + βS_{α₂}(n))`, single-threaded.
pub fn joint_exp_sum(n: u64, theta: f64, beta: f64, s1: &Ostrowski, s2: &Ostrowski) -> Complex64 {
    joint_prefix_sums(&[n], theta, beta, s1, s2, 1)[0]
}

/// Values of the joint sum at every `N` in `grid` (any order), from one
/// pass over `[0, max N)`. Result depends on the grid but not on `threads`.
pub(crate) fn joint_prefix_sums(
    grid: &[u64],
    theta: f64,
    beta: f64,
    s1: &Ostrowski,
    s2: &Ostrowski,
    threads: usize,
) -> Vec<Complex64> {
    let n_max = grid.iter().copied().max().unwrap_or(0);
    let t1 = PhaseTable::new(theta, digit_sum_bound(s1, n_max));
    let t2 = PhaseTable::new(beta, digit_sum_bound(s2, n_max));
    let ranges = chunks_marked(n_max, grid);
    let parts = map_ranges(&ranges, threads, |lo, hi| {
        let mut o1 = s1.odometer_at(lo);
        let mut o2 = s2.odometer_at(lo);
        let mut acc = ComplexSum::default();
        for _ in lo..hi {
            acc.add(t1.get(o1.digit_sum()) * t2.get(o2.digit_sum()));
            o1.advance();
            o2.advance();
        }
        acc
    });
    let mut prefix = ComplexSum::default();
    let mut at = std::collections::HashMap::new();
    at.insert(0u64, Complex64::new(0.0, 0.0));
    for (&(_, hi), part) in ranges.iter().zip(&parts) {
        prefix.merge(part);
        at.insert(hi, prefix.value());
    }
    grid.iter().map(|g| at[g]).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpSumPoint {
    #[serde(with = "crate::report::dec_u64")]
    pub n: u64,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub normalized: f64,
}

/// The joint sum evaluated along a grid of `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpSumSeries {
    pub m1: u32,
    pub m2: u32,
    pub theta: f64,
    pub beta: f64,
    pub points: Vec<ExpSumPoint>,
}

/// Joint sums along `grid` (strictly increasing, entries ≥ 1).
pub fn joint_exp_series(
    grid: &[u64],
    theta: f64,
    beta: f64,
    s1: &Ostrowski,
    s2: &Ostrowski,
    threads: usize,
) -> Result<ExpSumSeries> {
    if grid.is_empty() || grid.contains(&0) {
        return Err(Error::DegenerateGrid("grid entries must be >= 1".into()));
    }
    let sums = joint_prefix_sums(grid, theta, beta, s1, s2, threads);
    let points = grid
        .iter()
        .zip(sums)
        .map(|(&n, z)| ExpSumPoint {
            n,
            re: z.re,
            im: z.im,
            modulus: z.norm(),
            normalized: z.norm() / n as f64,
        })
        .collect();
    Ok(ExpSumSeries {
        m1: s1.m(),
        m2: s2.m(),
        theta,
        beta,
        points,
    })
}
