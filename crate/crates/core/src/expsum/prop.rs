use num_bigint::BigInt;
use num_complex::Complex64;

use super::{digit_sum_bound, PhaseTable};
use crate::budget::Budget;
use crate::cf::{frac_mul, Surd};
use crate::error::{invalid, Result};
use crate::numeration::Ostrowski;
use crate::sum::{e, ComplexSum};

/// Block sums `M⁽¹⁾ = Σ_{0≤u<q_{k−1}}` and `M⁽²⁾ = Σ_{q_{k−1}≤u<q_k}` of
/// `e(ϑS_α(u) − (−1)^k·h·u·φ)`. The `huφ` phase is reduced exactly.
pub fn m_sums(
    sys: &Ostrowski,
    k: usize,
    h: i64,
    theta: f64,
    budget: Budget,
) -> Result<(Complex64, Complex64)> {
    if k < 2 {
        return Err(invalid(format!("m_sums needs k >= 2, got {k}")));
    }
    let q_prev = sys
        .q_u64(k - 1)
        .ok_or_else(|| invalid("q_(k-1) exceeds 64 bits"))?;
    let q_k = sys.q_u64(k).ok_or_else(|| invalid("q_k exceeds 64 bits"))?;
    budget.check(
        "m_sums work q_k*max(|h|,1)",
        u128::from(q_k) * u128::from(h.unsigned_abs().max(1)),
    )?;

    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    let phi = sys.params().phi();
    let table = PhaseTable::new(theta, digit_sum_bound(sys, q_k));
    let h_big = BigInt::from(h);
    let mut first = ComplexSum::default();
    let mut second = ComplexSum::default();
    let mut o = sys.odometer_at(0);
    for u in 0..q_k {
        let twist = if h == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            e(sign * frac_mul(&h_big * u, phi))
        };
        let term = table.get(o.digit_sum()) * twist;
        if u < q_prev {
            first.add(term);
        } else {
            second.add(term);
        }
        o.advance();
    }
    Ok((first.value(), second.value()))
}

/// Exact zero-frequency weights `(b⁽¹⁾(0), b⁽²⁾(0))` for truncation level
/// `k ≥ 2`, with `k₀ = ⌊k/2⌋`:
///
/// * `k = 2k₀`: `((2 − m + √d) / (2φ^{k₀}), 1/φ^{k₀})`
/// * `k = 2k₀ + 1`: `(1/φ^{k₀}, (−m + √d) / (2φ^{k₀}))`
pub fn b_zero_exact(sys: &Ostrowski, k: usize) -> Result<(Surd, Surd)> {
    if k < 2 {
        return Err(invalid(format!("b_zero needs k >= 2, got {k}")));
    }
    let p = sys.params();
    let d = p.d();
    let k0 = u32::try_from(k / 2).map_err(|_| invalid("k too large"))?;
    let inv = p.phi().pow(k0).recip()?;
    let alpha = p.alpha();
    let alpha_plus_one = alpha + &Surd::integer(1, d);
    Ok(if k % 2 == 0 {
        (&alpha_plus_one * &inv, inv)
    } else {
        (inv.clone(), alpha * &inv)
    })
}

/// `b_zero_exact` rounded to `f64`.
pub fn b_zero(sys: &Ostrowski, k: usize) -> Result<(f64, f64)> {
    let (b1, b2) = b_zero_exact(sys, k)?;
    Ok((b1.to_f64(), b2.to_f64()))
}

/// `b⁽¹⁾(0)·q_{k−1} + b⁽²⁾(0)·(q_k − q_{k−1})`, evaluated exactly; equals 1.
pub fn b_zero_normalization(sys: &Ostrowski, k: usize) -> Result<Surd> {
    let (b1, b2) = b_zero_exact(sys, k)?;
    let q_prev = BigInt::from(sys.q(k - 1));
    let q_k = BigInt::from(sys.q(k));
    Ok(&b1.mul_int(&q_prev) + &b2.mul_int(&(q_k - &q_prev)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(m: u32) -> Ostrowski {
        Ostrowski::with_m(m).unwrap()
    }

    #[test]
    fn zero_frequency_counts_window_lengths() {
        let s = sys(2);
        for k in 2..8 {
            let (a, b) = m_sums(&s, k, 0, 0.0, Budget::default()).unwrap();
            let qp = s.q_u64(k - 1).unwrap() as f64;
            let qk = s.q_u64(k).unwrap() as f64;
            assert_eq!(a, Complex64::new(qp, 0.0));
            assert_eq!(b, Complex64::new(qk - qp, 0.0));
        }
    }

    #[test]
    fn bounded_by_window_length() {
        let s = sys(3);
        for (k, h, t) in [(3, 1, 0.2), (6, -4, 0.9), (7, 11, 0.5)] {
            let (a, b) = m_sums(&s, k, h, t, Budget::default()).unwrap();
            let qp = s.q_u64(k - 1).unwrap() as f64;
            let qk = s.q_u64(k).unwrap() as f64;
            assert!(a.norm() <= qp + 1e-9);
            assert!(b.norm() <= qk - qp + 1e-9);
        }
    }

    #[test]
    fn rejects_small_k_and_budget() {
        let s = sys(2);
        assert!(m_sums(&s, 1, 1, 0.1, Budget::default()).is_err());
        assert!(m_sums(&s, 12, 1000, 0.1, Budget::new(10_000)).is_err());
        assert!(b_zero(&s, 1).is_err());
    }

    #[test]
    fn b_zero_hand_values_m2() {
        let s = sys(2);
        let (b1, b2) = b_zero(&s, 4).unwrap();
        assert!((b1 - 1.7320508075688772 / 13.928203230275509).abs() < 1e-12);
        assert!((b2 - 1.0 / 13.928203230275509).abs() < 1e-12);
        assert!((b1 - 0.124355).abs() < 1e-6);
        assert!((b2 - 0.0717968).abs() < 1e-7);
        let (b1, b2) = b_zero(&s, 3).unwrap();
        assert!((b1 - 0.2679492).abs() < 1e-7);
        assert!((b2 - 0.1961524).abs() < 1e-7);
    }

    #[test]
    fn normalization_is_exactly_one() {
        for m in [1, 2, 3, 5] {
            let s = sys(m);
            let one = Surd::integer(1, s.params().d());
            for k in 2..=20 {
                assert_eq!(b_zero_normalization(&s, k).unwrap(), one, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn weights_shrink_by_phi_every_two_levels() {
        let s = sys(3);
        let phi = s.params().phi();
        for k in 2..16 {
            let (a1, a2) = b_zero_exact(&s, k).unwrap();
            let (c1, c2) = b_zero_exact(&s, k + 2).unwrap();
            assert_eq!(&a1 / &c1, *phi);
            assert_eq!(&a2 / &c2, *phi);
            let zero = Surd::integer(0, s.params().d());
            assert!(c1 > zero && c2 > zero);
        }
    }
}
