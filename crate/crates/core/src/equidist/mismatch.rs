use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeration::Ostrowski;

/// `|{n < N : S_α(n+r) − S_α(n) ≠ S_{α,k}(n+r) − S_{α,k}(n)}|` against the
/// bound `N·r / q_{k−1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MismatchCount {
    pub m: u32,
    #[serde(with = "crate::report::dec_u64")]
    pub n: u64,
    pub k: usize,
    #[serde(with = "crate::report::dec_u64")]
    pub r: u64,
    #[serde(with = "crate::report::dec_u64")]
    pub q_prev: u64,
    #[serde(with = "crate::report::dec_u64")]
    pub count: u64,
    /// `N·r / q_{k−1}` rounded to `f64`; `within_bound` is decided exactly.
    pub bound: f64,
    pub within_bound: bool,
}

pub fn mismatch_count(sys: &Ostrowski, n: u64, k: usize, r: u64) -> Result<MismatchCount> {
    if k < 2 {
        return Err(invalid(format!("k must be >= 2, got {k}")));
    }
    let q_prev = sys
        .q_u64(k - 1)
        .ok_or_else(|| invalid("q_(k-1) exceeds 64 bits"))?;
    n.checked_add(r)
        .ok_or_else(|| invalid("N + r overflows 64 bits"))?;
    let mut lo = sys.odometer_at(0);
    let mut hi = sys.odometer_at(r);
    let mut count = 0u64;
    for _ in 0..n {
        let full = hi.digit_sum() as i64 - lo.digit_sum() as i64;
        let trunc = hi.digit_sum_trunc(k) as i64 - lo.digit_sum_trunc(k) as i64;
        if full != trunc {
            count += 1;
        }
        lo.advance();
        hi.advance();
    }
    let within_bound = u128::from(count) * u128::from(q_prev) <= u128::from(n) * u128::from(r);
    Ok(MismatchCount {
        m: sys.m(),
        n,
        k,
        r,
        q_prev,
        count,
        bound: n as f64 * r as f64 / q_prev as f64,
        within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn zero_shift_never_mismatches() {
        let s = Ostrowski::with_m(2).unwrap();
        let c = mismatch_count(&s, 10_000, 4, 0).unwrap();
        assert_eq!(c.count, 0);
        assert!(c.within_bound);
    }

    #[test]
    fn bound_below_one_forces_zero() {
        let s = Ostrowski::with_m(3).unwrap();
        // q_9 for m = 3 exceeds 1000·5
        let mut k = 2;
        while s.q_u64(k - 1).unwrap() <= 5000 {
            k += 1;
        }
        let c = mismatch_count(&s, 1000, k, 5).unwrap();
        assert_eq!(c.count, 0);
    }

    #[test]
    fn matches_direct_double_evaluation() {
        let s = Ostrowski::with_m(2).unwrap();
        let (n, k, r) = (3000u64, 5usize, 7u64);
        let direct = (0..n)
            .filter(|&x| {
                let (a, b) = (BigUint::from(x), BigUint::from(x + r));
                let full = s.digit_sum(&b) as i64 - s.digit_sum(&a) as i64;
                let tr = s.digit_sum_trunc(&b, k) as i64 - s.digit_sum_trunc(&a, k) as i64;
                full != tr
            })
            .count() as u64;
        let c = mismatch_count(&s, n, k, r).unwrap();
        assert_eq!(c.count, direct);
        assert!(c.within_bound);
    }
}
