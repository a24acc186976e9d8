//! Pinned regression values, stored in `data/baseline.json`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::budget::Budget;
use crate::cf::make_alpha;
use crate::equidist::{delta_scan, joint_counts, mismatch_count, RawSeries, ScanParams};
use crate::error::Result;
use crate::expsum::{joint_exp_sum, m_sums, min_norm_sum, schmidt_margin, single_decay};
use crate::numeration::Ostrowski;

pub const GRID: [u64; 4] = [1_000, 10_000, 100_000, 1_000_000];
pub const TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremPin {
    pub grid: Vec<u64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub normalized: Vec<f64>,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryPin {
    pub grid: Vec<u64>,
    pub err: Vec<f64>,
    pub delta: f64,
    #[serde(with = "crate::report::dec_u64_matrix")]
    pub counts_1000: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    /// `m₁=2, m₂=3, ϑ=1/3, β=1/2`.
    pub theorem: TheoremPin,
    /// `m₁=2, m₂=3, b₁=3, b₂=2`.
    pub corollary: CorollaryPin,
    /// Joint sum at `N=1000`, same frequencies as `theorem`.
    pub joint_sum_1000: [f64; 2],
    /// `m=2, γ=1/3, θ=0.3`: `D_6`, `D_20` and the slope over `k=6..20`.
    pub decay_d6: f64,
    pub decay_d20: f64,
    pub decay_slope: f64,
    /// `m=2, k=4, h=1, ϑ=1/3`: `[Re M⁽¹⁾, Im M⁽¹⁾, Re M⁽²⁾, Im M⁽²⁾]`.
    pub m_sums: [f64; 4],
    /// `m=2, t=0, I=[1,1000], K=10⁴`.
    pub min_norm_lhs: f64,
    pub min_norm_ratio: f64,
    /// `m₁=2, m₂=3, H=1000`.
    pub schmidt_margin: f64,
    pub schmidt_argmin: (i64, i64),
    /// `m=2, N=10⁴, k=6, r=3`.
    #[serde(with = "crate::report::dec_u64")]
    pub mismatch_count: u64,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE * b.abs().max(1.0)
}

impl Baseline {
    pub fn default_path() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("data/baseline.json")
    }

    pub fn compute(threads: usize) -> Result<Self> {
        let (s2, s3) = (Ostrowski::with_m(2)?, Ostrowski::with_m(3)?);
        let third = Angle::rational(1, 3)?;
        let half = Angle::rational(1, 2)?;

        let th = delta_scan(
            &ScanParams::Theorem {
                m1: 2,
                m2: 3,
                theta: third,
                beta: half,
            },
            &GRID,
            threads,
        )?;
        let RawSeries::Theorem(series) = &th.raw else {
            unreachable!("theorem scan returns sums")
        };
        let theorem = TheoremPin {
            grid: GRID.to_vec(),
            re: series.points.iter().map(|p| p.re).collect(),
            im: series.points.iter().map(|p| p.im).collect(),
            normalized: th.err.clone(),
            delta: th.delta.unwrap_or(f64::NAN),
        };

        let co = delta_scan(
            &ScanParams::Corollary {
                m1: 2,
                m2: 3,
                b1: 3,
                b2: 2,
            },
            &GRID,
            threads,
        )?;
        let corollary = CorollaryPin {
            grid: GRID.to_vec(),
            err: co.err.clone(),
            delta: co.delta.unwrap_or(f64::NAN),
            counts_1000: joint_counts(1000, &s2, 3, &s3, 2, threads)?.counts,
        };

        let z = joint_exp_sum(1000, third.to_f64(), half.to_f64(), &s2, &s3);
        let decay = single_decay(&s2, 1.0 / 3.0, 0.3, 20, Budget::default())?;
        let (a, b) = m_sums(&s2, 4, 1, third.to_f64(), Budget::default())?;
        let p2 = make_alpha(2)?;
        let mn = min_norm_sum(&p2, 0.0, 1, 1000, 1e4)?;
        let sm = schmidt_margin(&p2, &make_alpha(3)?, 1000)?;
        let mc = mismatch_count(&s2, 10_000, 6, 3)?;

        Ok(Baseline {
            theorem,
            corollary,
            joint_sum_1000: [z.re, z.im],
            decay_d6: decay.value_at(6).unwrap_or(f64::NAN),
            decay_d20: decay.value_at(20).unwrap_or(f64::NAN),
            decay_slope: decay.slope_over(6, 20).unwrap_or(f64::NAN),
            m_sums: [a.re, a.im, b.re, b.im],
            min_norm_lhs: mn.lhs,
            min_norm_ratio: mn.ratio,
            schmidt_margin: sm.margin,
            schmidt_argmin: sm.argmin,
            mismatch_count: mc.count,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, crate::report::to_json(self)?)?;
        Ok(())
    }

    /// Names of every entry of `self` that differs from `pinned` beyond
    /// [`TOLERANCE`] (relative above 1, absolute below). Integers must match
    /// exactly.
    pub fn diff(&self, pinned: &Baseline) -> Vec<String> {
        let mut out = Vec::new();
        let mut num = |name: &str, a: &[f64], b: &[f64]| {
            if a.len() != b.len() || a.iter().zip(b).any(|(&x, &y)| !close(x, y)) {
                out.push(format!("{name}: {a:?} vs pinned {b:?}"));
            }
        };
        let (t, u) = (&self.theorem, &pinned.theorem);
        num("theorem.re", &t.re, &u.re);
        num("theorem.im", &t.im, &u.im);
        num("theorem.normalized", &t.normalized, &u.normalized);
        num("theorem.delta", &[t.delta], &[u.delta]);
        let (c, d) = (&self.corollary, &pinned.corollary);
        num("corollary.err", &c.err, &d.err);
        num("corollary.delta", &[c.delta], &[d.delta]);
        num(
            "joint_sum_1000",
            &self.joint_sum_1000,
            &pinned.joint_sum_1000,
        );
        num("decay_d6", &[self.decay_d6], &[pinned.decay_d6]);
        num("decay_d20", &[self.decay_d20], &[pinned.decay_d20]);
        num("decay_slope", &[self.decay_slope], &[pinned.decay_slope]);
        num("m_sums", &self.m_sums, &pinned.m_sums);
        num("min_norm_lhs", &[self.min_norm_lhs], &[pinned.min_norm_lhs]);
        num(
            "min_norm_ratio",
            &[self.min_norm_ratio],
            &[pinned.min_norm_ratio],
        );
        num(
            "schmidt_margin",
            &[self.schmidt_margin],
            &[pinned.schmidt_margin],
        );
        if t.grid != u.grid || c.grid != d.grid {
            out.push("grid differs".into());
        }
        if c.counts_1000 != d.counts_1000 {
            out.push(format!(
                "corollary.counts_1000: {:?} vs pinned {:?}",
                c.counts_1000, d.counts_1000
            ));
        }
        if self.schmidt_argmin != pinned.schmidt_argmin {
            out.push("schmidt_argmin differs".into());
        }
        if self.mismatch_count != pinned.mismatch_count {
            out.push(format!(
                "mismatch_count: {} vs pinned {}",
                self.mismatch_count, pinned.mismatch_count
            ));
        }
        out
    }
}
