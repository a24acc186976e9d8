mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use ostrowski::expsum::{b_zero, b_zero_exact, b_zero_normalization};
use ostrowski::{convergents, dist_nearest, frac_mul, make_alpha, Ostrowski, Surd};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `{h·(a + √d)/2}` through a 256-bit truncation of `√d`: error below
/// `|h|·2⁻²⁵⁵`.
fn frac_oracle(h: i64, a: i64, d: u64) -> f64 {
    let one = BigInt::one() << 256u32;
    let root = (BigInt::from(d) << 512u32).sqrt();
    let x = BigInt::from(h) * (BigInt::from(a) * &one + root); // 2·2²⁵⁶·h·φ
    let two_one: BigInt = &one * 2;
    let r = ((x % &two_one) + &two_one) % &two_one;
    (r >> 192u32).to_f64().unwrap() / 2f64.powi(65)
}

#[test]
fn fractional_parts_match_wide_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in [1u32, 2, 3, 7] {
        let p = make_alpha(m as i64).unwrap();
        let d = p.d();
        for _ in 0..300 {
            let h: i64 = rng.gen_range(-1_000_000_000..=1_000_000_000);
            let want = frac_oracle(h, (m + 2) as i64, d);
            let got = frac_mul(h, p.phi());
            let diff = (got - want).abs().min(1.0 - (got - want).abs());
            assert!(
                diff <= 1e-12 * want.min(1.0 - want) + 1e-25,
                "m={m} h={h}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn best_approximations_sit_at_convergents() {
    let p = make_alpha(2).unwrap();
    let t = convergents(&p, 9).unwrap();
    let (best, _) =
        (1..209i64)
            .map(|h| (h, dist_nearest(h, p.alpha())))
            .fold(
                (0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            );
    assert_eq!(best, 153);
    assert_eq!(t.q(8), &BigUint::from(153u32));
    assert_eq!(t.q(9), &BigUint::from(209u32));
}

#[test]
fn determinants_alternate() {
    for m in 1..=6u32 {
        let t = convergents(&make_alpha(m as i64).unwrap(), 201).unwrap();
        for i in 0..=200 {
            let want = if i % 2 == 0 { 1 } else { -1 };
            assert_eq!(t.determinant(i), BigInt::from(want), "m={m} i={i}");
        }
    }
}

#[test]
fn denominators_against_powers_of_phi() {
    // q_{2k₀} + α·q_{2k₀−1} = φ^{k₀}, in exact surd arithmetic
    for m in 1..=5u32 {
        let p = make_alpha(m as i64).unwrap();
        let t = convergents(&p, 41).unwrap();
        for k0 in 1..=20u32 {
            let lhs = Surd::integer(BigInt::from(t.q(2 * k0 as usize).clone()), p.d())
                + p.alpha()
                    .mul_int(&BigInt::from(t.q(2 * k0 as usize - 1).clone()));
            assert_eq!(lhs, p.phi().pow(k0), "m={m} k0={k0}");
        }
    }
}

#[test]
fn zero_frequency_weights() {
    for m in [2u32, 3] {
        let sys = Ostrowski::with_m(m).unwrap();
        let one = Surd::integer(1, sys.params().d());
        for k in 2..=20 {
            assert_eq!(b_zero_normalization(&sys, k).unwrap(), one);
            let (b1, b2) = b_zero_exact(&sys, k).unwrap();
            let (f1, f2) = b_zero(&sys, k).unwrap();
            assert!((b1.to_f64() - f1).abs() < 1e-15 && (b2.to_f64() - f2).abs() < 1e-15);
        }
    }
}

#[test]
fn digit_sums_of_q_minus_one() {
    // q_k − 1 reads a_k, 0, a_{k−2}, 0, … from the top
    for m in [1u32, 2, 4] {
        let sys = Ostrowski::with_m(m).unwrap();
        let q = common::q_table(m);
        for k in 2..30 {
            let d = sys.digits_of(&BigUint::from(q[k] - 1));
            for i in 0..k {
                let want = if (k - 1 - i) % 2 == 0 {
                    common::cap(m, i)
                } else {
                    0
                };
                assert_eq!(d.digit(i), want, "m={m} k={k} i={i}");
            }
        }
    }
}
