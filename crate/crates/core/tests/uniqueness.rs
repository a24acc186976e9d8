mod common;

use std::collections::HashMap;

use ostrowski::Ostrowski;

#[test]
fn exactly_one_admissible_string_per_value() {
    for m in [1u32, 2, 3] {
        let limit = 10_000u128;
        let sys = Ostrowski::with_m(m).unwrap();
        let mut seen: HashMap<u128, Vec<u32>> = HashMap::new();
        for s in common::enumerate_admissible(m, limit) {
            let v = common::value(m, &s);
            assert!(
                seen.insert(v, s).is_none(),
                "m={m}: value {v} represented twice"
            );
        }
        assert_eq!(seen.len(), limit as usize, "m={m}");
        for n in 0..limit as u64 {
            let mut s = seen[&(n as u128)].clone();
            while s.len() > 1 && *s.last().unwrap() == 0 {
                s.pop();
            }
            assert_eq!(sys.digits_of_u64(n).digits(), s.as_slice(), "m={m} n={n}");
        }
    }
}

#[test]
fn inadmissible_strings_are_rejected() {
    let sys = Ostrowski::with_m(2).unwrap();
    assert!(sys.value_of(&[1]).is_err());
    assert!(sys.value_of(&[0, 3]).is_err());
    assert!(sys.value_of(&[0, 2, 1]).is_err());
    assert!(sys.value_of(&[0, 1, 1]).is_err());
    assert_eq!(sys.value_of(&[0, 2, 0, 2]).unwrap(), 10u32.into());
}
