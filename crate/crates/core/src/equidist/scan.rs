use serde::{Deserialize, Serialize};

use super::{joint_counts_grid, JointCountReport};
use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::expsum::{joint_exp_series, ExpSumSeries};
use crate::numeration::Ostrowski;
use crate::stats::ols_slope;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ScanParams {
    /// `err(N) = |Σ_{n<N} e(ϑS_{α₁}(n) + βS_{α₂}(n))| / N`.
    Theorem {
        m1: u32,
        m2: u32,
        theta: Angle,
        beta: Angle,
    },
    /// `err(N) = max_{a₁,a₂} |C[a₁][a₂]·b₁b₂/N − 1|`.
    Corollary { m1: u32, m2: u32, b1: u32, b2: u32 },
}

impl ScanParams {
    /// Whether the scanned quantity is expected to decay: `m₂β ∉ ℤ` for
    /// sums, both gcd conditions for counts. Real-valued `β` is tested to
    /// within `10⁻¹²`.
    pub fn hypothesis_holds(&self) -> bool {
        match self {
            ScanParams::Theorem { m2, beta, .. } => !beta.times_is_near_integer(*m2, 1e-12),
            ScanParams::Corollary { m1, m2, b1, b2 } => {
                use num_integer::Integer;
                b1.gcd(m1) == 1 && b2.gcd(m2) == 1
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawSeries {
    Theorem(ExpSumSeries),
    Corollary(Vec<JointCountReport>),
}

/// Log-log fit of `err(N)` against `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaFit {
    pub params: ScanParams,
    pub hypothesis_holds: bool,
    pub grid: Vec<u64>,
    pub err: Vec<f64>,
    /// `−slope` of `ln err` on `ln N`; `None` when fewer than two points have
    /// `err > 0`.
    pub delta: Option<f64>,
    /// RMS residual of the fit.
    pub residual: Option<f64>,
    pub raw: RawSeries,
}

fn check_grid(grid: &[u64]) -> Result<()> {
    if grid.len() < 4 {
        return Err(Error::DegenerateGrid(format!(
            "need at least 4 grid points, got {}",
            grid.len()
        )));
    }
    if grid[0] < 1 {
        return Err(Error::DegenerateGrid("grid points must be >= 1".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::DegenerateGrid(
            "grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Runs the scan regardless of the hypothesis, which is recorded in the
/// result; callers decide whether a violated hypothesis is an error.
pub fn delta_scan(params: &ScanParams, grid: &[u64], threads: usize) -> Result<DeltaFit> {
    check_grid(grid)?;
    let (err, raw) = match *params {
        ScanParams::Theorem {
            m1,
            m2,
            theta,
            beta,
        } => {
            let (s1, s2) = (Ostrowski::with_m(m1)?, Ostrowski::with_m(m2)?);
            let series = joint_exp_series(grid, theta.to_f64(), beta.to_f64(), &s1, &s2, threads)?;
            let err = series.points.iter().map(|p| p.normalized).collect();
            (err, RawSeries::Theorem(series))
        }
        ScanParams::Corollary { m1, m2, b1, b2 } => {
            let (s1, s2) = (Ostrowski::with_m(m1)?, Ostrowski::with_m(m2)?);
            let reports = joint_counts_grid(grid, &s1, b1, &s2, b2, threads)?;
            let err = reports.iter().map(|r| r.max_rel_dev).collect();
            (err, RawSeries::Corollary(reports))
        }
    };
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .zip(&err)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&n, &e): (&u64, &f64)| ((n as f64).ln(), e.ln()))
        .collect();
    let fit = ols_slope(&pts);
    Ok(DeltaFit {
        params: params.clone(),
        hypothesis_holds: params.hypothesis_holds(),
        grid: grid.to_vec(),
        err,
        // adding 0.0 turns −0.0 into 0.0
        delta: fit.map(|(s, _)| -s + 0.0),
        residual: fit.map(|(_, r)| r),
        raw,
    })
}
