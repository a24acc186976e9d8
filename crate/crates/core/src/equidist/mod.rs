//! Joint residue counting of two digit sums, truncation mismatches and
//! error-exponent scans.

mod mismatch;
mod scan;

pub use mismatch::{mismatch_count, MismatchCount};
pub use scan::{delta_scan, DeltaFit, RawSeries, ScanParams};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::expsum::joint_exp_sum;
use crate::numeration::Ostrowski;
use crate::sum::{chunks_marked, e, map_ranges, ComplexSum};

/// `C[a₁][a₂] = |{n < N : S_{α₁}(n) ≡ a₁ (mod b₁), S_{α₂}(n) ≡ a₂ (mod b₂)}|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointCountReport {
    #[serde(with = "crate::report::dec_u64")]
    pub n: u64,
    pub m1: u32,
    pub b1: u32,
    pub m2: u32,
    pub b2: u32,
    #[serde(with = "crate::report::dec_u64_matrix")]
    pub counts: Vec<Vec<u64>>,
    /// `N / (b₁b₂)`.
    pub expected: f64,
    /// `max |C·b₁b₂/N − 1|` over all classes.
    pub max_rel_dev: f64,
    pub mean_rel_dev: f64,
    /// `gcd(b₁, m₁) = 1`.
    pub gcd1_coprime: bool,
    /// `gcd(b₂, m₂) = 1`.
    pub gcd2_coprime: bool,
}

impl JointCountReport {
    fn build(n: u64, s1: &Ostrowski, b1: u32, s2: &Ostrowski, b2: u32, flat: &[u64]) -> Self {
        let cells = f64::from(b1) * f64::from(b2);
        let expected = n as f64 / cells;
        let counts: Vec<Vec<u64>> = flat.chunks(b2 as usize).map(<[u64]>::to_vec).collect();
        let devs: Vec<f64> = flat
            .iter()
            .map(|&c| (c as f64 / expected - 1.0).abs())
            .collect();
        JointCountReport {
            n,
            m1: s1.m(),
            b1,
            m2: s2.m(),
            b2,
            counts,
            expected,
            max_rel_dev: devs.iter().copied().fold(0.0, f64::max),
            mean_rel_dev: devs.iter().sum::<f64>() / devs.len() as f64,
            gcd1_coprime: b1.gcd(&s1.m()) == 1,
            gcd2_coprime: b2.gcd(&s2.m()) == 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Both gcd conditions hold.
    pub fn both_coprime(&self) -> bool {
        self.gcd1_coprime && self.gcd2_coprime
    }

    /// Row sums, indexed by `a₁`.
    pub fn marginal1(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    /// Column sums, indexed by `a₂`.
    pub fn marginal2(&self) -> Vec<u64> {
        (0..self.b2 as usize)
            .map(|j| self.counts.iter().map(|r| r[j]).sum())
            .collect()
    }
}

fn check_moduli(b1: u32, b2: u32) -> Result<()> {
    if b1 == 0 || b2 == 0 {
        return Err(invalid("moduli b1, b2 must be >= 1"));
    }
    Ok(())
}

pub fn joint_counts(
    n: u64,
    s1: &Ostrowski,
    b1: u32,
    s2: &Ostrowski,
    b2: u32,
    threads: usize,
) -> Result<JointCountReport> {
    let mut v = joint_counts_grid(&[n], s1, b1, s2, b2, threads)?;
    Ok(v.remove(0))
}

/// Count matrices at every `N` in `grid` from one chunked pass. Matrices are
/// exact integer sums, hence identical for every thread count.
pub fn joint_counts_grid(
    grid: &[u64],
    s1: &Ostrowski,
    b1: u32,
    s2: &Ostrowski,
    b2: u32,
    threads: usize,
) -> Result<Vec<JointCountReport>> {
    check_moduli(b1, b2)?;
    if grid.is_empty() || grid.contains(&0) {
        return Err(Error::DegenerateGrid("N must be >= 1".into()));
    }
    let n_max = *grid.iter().max().expect("non-empty");
    let ranges = chunks_marked(n_max, grid);
    let (w1, w2) = (u64::from(b1), u64::from(b2));
    let cells = (w1 * w2) as usize;
    let parts = map_ranges(&ranges, threads, |lo, hi| {
        let mut o1 = s1.odometer_at(lo);
        let mut o2 = s2.odometer_at(lo);
        let mut c = vec![0u64; cells];
        for _ in lo..hi {
            let i = (o1.digit_sum() % w1) * w2 + o2.digit_sum() % w2;
            c[i as usize] += 1;
            o1.advance();
            o2.advance();
        }
        c
    });
    let mut acc = vec![0u64; cells];
    let mut at = std::collections::HashMap::new();
    for (&(_, hi), part) in ranges.iter().zip(&parts) {
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
        at.insert(hi, acc.clone());
    }
    Ok(grid
        .iter()
        .map(|&n| JointCountReport::build(n, s1, b1, s2, b2, &at[&n]))
        .collect())
}

/// Residue counts of `S_α(n) mod b` for `n < N`, by greedy expansion of each
/// `n` separately.
pub fn single_counts(sys: &Ostrowski, n: u64, b: u32) -> Result<Vec<u64>> {
    if b == 0 {
        return Err(invalid("modulus must be >= 1"));
    }
    let mut c = vec![0u64; b as usize];
    for x in 0..n {
        c[(sys.digit_sum_u64(x) % u64::from(b)) as usize] += 1;
    }
    Ok(c)
}

/// The count matrix recovered from joint exponential sums through
/// orthogonality of additive characters:
/// `C[a₁][a₂] = (b₁b₂)⁻¹ Σ_{j₁<b₁, j₂<b₂} e(−j₁a₁/b₁ − j₂a₂/b₂)·S_N(j₁/b₁, j₂/b₂)`.
pub fn counts_by_orthogonality(
    n: u64,
    s1: &Ostrowski,
    b1: u32,
    s2: &Ostrowski,
    b2: u32,
) -> Result<Vec<Vec<f64>>> {
    check_moduli(b1, b2)?;
    let (f1, f2) = (f64::from(b1), f64::from(b2));
    let mut sums = vec![vec![Default::default(); b2 as usize]; b1 as usize];
    for j1 in 0..b1 {
        for j2 in 0..b2 {
            sums[j1 as usize][j2 as usize] =
                joint_exp_sum(n, f64::from(j1) / f1, f64::from(j2) / f2, s1, s2);
        }
    }
    Ok((0..b1)
        .map(|a1| {
            (0..b2)
                .map(|a2| {
                    let mut acc = ComplexSum::default();
                    for j1 in 0..b1 {
                        for j2 in 0..b2 {
                            let ph =
                                -f64::from((j1 * a1) % b1) / f1 - f64::from((j2 * a2) % b2) / f2;
                            acc.add(e(ph) * sums[j1 as usize][j2 as usize]);
                        }
                    }
                    acc.value().re / (f1 * f2)
                })
                .collect()
        })
        .collect())
}
