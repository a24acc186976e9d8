mod common;

use num_bigint::BigUint;
use ostrowski::Ostrowski;

const MS: [u32; 4] = [1, 2, 3, 5];

#[test]
fn table_matches_reference_recurrence() {
    for m in MS {
        let sys = Ostrowski::with_m(m).unwrap();
        for (i, q) in common::q_table(m).into_iter().enumerate() {
            assert_eq!(sys.q(i), BigUint::from(q), "m={m} i={i}");
        }
    }
}

#[test]
fn expansion_matches_greedy_reference() {
    for m in MS {
        let sys = Ostrowski::with_m(m).unwrap();
        for n in (0..200_000u64).chain((1u64 << 40)..(1u64 << 40) + 2000) {
            let d = sys.digits_of_u64(n);
            assert_eq!(
                d.digits(),
                common::greedy_digits(m, n as u128).as_slice(),
                "m={m} n={n}"
            );
        }
    }
}

#[test]
fn round_trip_admissible_prefix_condition() {
    for m in MS {
        let sys = Ostrowski::with_m(m).unwrap();
        for n in 0..100_000u64 {
            let d = sys.digits_of_u64(n);
            let eps = d.digits();
            assert!(common::admissible(m, eps), "m={m} n={n} {d}");
            assert_eq!(common::value(m, eps), n as u128);
            assert_eq!(sys.value_of(eps).unwrap(), BigUint::from(n));
            // Σ_{i<j} ε_i q_i < q_j for every j
            let q = common::q_table(m);
            let mut prefix = 0u128;
            for j in 0..eps.len() {
                assert!(prefix < q[j], "m={m} n={n} j={j}");
                prefix += eps[j] as u128 * q[j];
            }
        }
    }
}

#[test]
fn odometer_tracks_greedy_from_several_starts() {
    for m in MS {
        let sys = Ostrowski::with_m(m).unwrap();
        for start in [0u64, 1, 12_345, 999_999_937] {
            let mut o = sys.odometer_at(start);
            for n in start..start + 50_000 {
                let want = common::greedy_digits(m, n as u128);
                assert_eq!(o.trimmed_digits(), want.as_slice(), "m={m} n={n}");
                assert_eq!(o.digit_sum(), want.iter().map(|&e| e as u64).sum::<u64>());
                o.advance();
            }
        }
    }
}

#[test]
fn truncation_is_periodic_inside_v_blocks() {
    // t(n,k) only sees the low k digits, so for consecutive V points
    // n_{v−1} < n_v it runs 0, 1, …, Q(v)−1 across the block.
    let m = 2;
    let sys = Ostrowski::with_m(m).unwrap();
    for k in 2..8 {
        let vs = sys.v_sequence(k, 40).unwrap();
        for v in 1..vs.len() {
            let lo: u64 = vs.point(v - 1).try_into().unwrap();
            let hi: u64 = vs.point(v).try_into().unwrap();
            for n in lo..hi {
                let t = sys.truncate(&BigUint::from(n), k);
                assert_eq!(t, BigUint::from(n - lo), "k={k} n={n}");
            }
        }
    }
}

#[test]
fn v_sequence_matches_filter_oracle() {
    for m in [1u32, 2, 3] {
        let sys = Ostrowski::with_m(m).unwrap();
        for k in 2..9 {
            let vs = sys.v_sequence(k, 60).unwrap();
            let last: u64 = vs.point(vs.len() - 1).try_into().unwrap();
            let filtered: Vec<BigUint> = (0..=last)
                .filter(|&n| {
                    common::greedy_digits(m, n as u128)
                        .iter()
                        .take(k)
                        .all(|&e| e == 0)
                })
                .map(BigUint::from)
                .collect();
            assert_eq!(vs.points(), filtered.as_slice(), "m={m} k={k}");
            let q = common::q_table(m);
            for g in vs.gaps() {
                assert!(g == BigUint::from(q[k - 1]) || g == BigUint::from(q[k]));
            }
        }
    }
}

#[test]
fn v_gaps_for_m2() {
    let sys = Ostrowski::with_m(2).unwrap();
    let gaps = |k| {
        let mut g: Vec<BigUint> = sys.v_sequence(k, 50).unwrap().gaps();
        g.sort();
        g.dedup();
        g
    };
    assert_eq!(gaps(3), vec![BigUint::from(3u32), BigUint::from(4u32)]);
    assert_eq!(gaps(4), vec![BigUint::from(4u32), BigUint::from(11u32)]);
}

#[test]
fn huge_values_round_trip() {
    let sys = Ostrowski::with_m(3).unwrap();
    let n: BigUint = "123456789012345678901234567890123456789012345678901234567890"
        .parse()
        .unwrap();
    let d = sys.digits_of(&n);
    assert_eq!(sys.value_of(d.digits()).unwrap(), n);
    let mut o = sys.odometer(&n);
    o.advance();
    assert_eq!(sys.digits_of(&(n + 1u32)).digits(), o.trimmed_digits());
}
