use num_bigint::BigUint;
use num_traits::Zero;

use super::Ostrowski;
use crate::error::{invalid, Result};

/// Increasing enumeration `n_0 = 0 < n_1 < …` of the integers whose digits
/// below index `k` vanish, with block lengths `Q(v) = n_v − n_{v−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSequence {
    k: usize,
    points: Vec<BigUint>,
}

impl VSequence {
    pub(super) fn build(sys: &Ostrowski, k: usize, count: usize) -> Result<Self> {
        if k < 2 {
            return Err(invalid(format!("V-sequence needs k >= 2, got {k}")));
        }
        let short = sys.q(k - 1);
        let long = sys.q(k);
        let mut points = Vec::with_capacity(count);
        if count > 0 {
            points.push(BigUint::zero());
        }
        while points.len() < count {
            let last = points.last().expect("nonempty");
            // consecutive elements differ by q_{k-1} or q_k, and q_{k-1} < q_k
            let near = last + &short;
            let next = if sys.truncate(&near, k).is_zero() {
                near
            } else {
                let far = last + &long;
                assert!(
                    sys.truncate(&far, k).is_zero(),
                    "V-sequence gap outside {{q_(k-1), q_k}} after {last}"
                );
                far
            };
            points.push(next);
        }
        Ok(VSequence { k, points })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `n_v`.
    pub fn point(&self, v: usize) -> &BigUint {
        &self.points[v]
    }

    pub fn points(&self) -> &[BigUint] {
        &self.points
    }

    /// `Q(v) = n_v − n_{v−1}` for `v ≥ 1`.
    pub fn gap(&self, v: usize) -> BigUint {
        assert!(v >= 1, "Q(v) is defined for v >= 1");
        &self.points[v] - &self.points[v - 1]
    }

    pub fn gaps(&self) -> Vec<BigUint> {
        (1..self.points.len()).map(|v| self.gap(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_k() {
        let s = Ostrowski::with_m(2).unwrap();
        assert!(s.v_sequence(1, 5).is_err());
    }

    #[test]
    fn m2_k3_prefix() {
        let s = Ostrowski::with_m(2).unwrap();
        let v = s.v_sequence(3, 6).unwrap();
        let pts: Vec<u32> = v.points().iter().map(|p| p.try_into().unwrap()).collect();
        assert_eq!(pts, vec![0, 4, 8, 11, 15, 19]);
        assert_eq!(v.point(0), &BigUint::zero());
        for g in v.gaps() {
            assert!(g == BigUint::from(3u32) || g == BigUint::from(4u32));
        }
    }
}
