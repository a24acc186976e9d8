//! Reference implementations used as test oracles. They share no code with
//! the library: plain `u128` arithmetic, straight from the definitions.
#![allow(dead_code)]

/// `q_0 = q_1 = 1`, `q_i = a_i q_{i−1} + q_{i−2}` with `a_i = m` for even `i`
/// and `1` for odd `i`, while the value fits in `u128`.
pub fn q_table(m: u32) -> Vec<u128> {
    let mut q: Vec<u128> = vec![1, 1];
    loop {
        let i = q.len();
        let a = if i % 2 == 0 { m as u128 } else { 1 };
        match a
            .checked_mul(q[i - 1])
            .and_then(|x| x.checked_add(q[i - 2]))
        {
            Some(v) => q.push(v),
            None => return q,
        }
    }
}

/// Digit cap at index `i`: `a_{i+1}`, with `ε_0 = 0` forced.
pub fn cap(m: u32, i: usize) -> u32 {
    if i == 0 {
        0
    } else if i % 2 == 1 {
        m
    } else {
        1
    }
}

/// Greedy expansion from the top: take as many `q_i` as fit, `i` descending.
pub fn greedy_digits(m: u32, n: u128) -> Vec<u32> {
    let q = q_table(m);
    let mut top = 1;
    while top + 1 < q.len() && q[top + 1] <= n {
        top += 1;
    }
    let mut eps = vec![0u32; top + 1];
    let mut rest = n;
    for i in (1..=top).rev() {
        eps[i] = (rest / q[i]) as u32;
        rest -= eps[i] as u128 * q[i];
    }
    assert_eq!(rest, 0);
    while eps.len() > 1 && *eps.last().unwrap() == 0 {
        eps.pop();
    }
    eps
}

pub fn digit_sum(m: u32, n: u128) -> u64 {
    greedy_digits(m, n).iter().map(|&e| e as u64).sum()
}

pub fn digit_sum_trunc(m: u32, n: u128, k: usize) -> u64 {
    greedy_digits(m, n).iter().take(k).map(|&e| e as u64).sum()
}

pub fn value(m: u32, eps: &[u32]) -> u128 {
    let q = q_table(m);
    eps.iter().zip(&q).map(|(&e, &qi)| e as u128 * qi).sum()
}

/// Markov admissibility, straight from the definition.
pub fn admissible(m: u32, eps: &[u32]) -> bool {
    eps.iter()
        .enumerate()
        .all(|(i, &e)| e <= cap(m, i) && (i == 0 || e < cap(m, i) || eps[i - 1] == 0))
}

pub fn e(x: f64) -> (f64, f64) {
    let r = x - x.floor();
    let a = std::f64::consts::TAU * r;
    (a.cos(), a.sin())
}

/// Every admissible digit string with value below `limit`, by depth-first
/// enumeration from the top digit down.
pub fn enumerate_admissible(m: u32, limit: u128) -> Vec<Vec<u32>> {
    let q = q_table(m);
    let mut len = 1;
    while q[len] < limit {
        len += 1;
    }
    let mut out = Vec::new();
    let mut eps = vec![0u32; len];
    fn rec(
        m: u32,
        q: &[u128],
        limit: u128,
        i: usize,
        acc: u128,
        eps: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if acc >= limit {
            return;
        }
        if i == usize::MAX {
            if admissible(m, eps) {
                out.push(eps.clone());
            }
            return;
        }
        for d in 0..=cap(m, i) {
            eps[i] = d;
            let next = if i == 0 { usize::MAX } else { i - 1 };
            rec(m, q, limit, next, acc + d as u128 * q[i], eps, out);
        }
        eps[i] = 0;
    }
    rec(m, &q, limit, len - 1, 0, &mut eps, &mut out);
    out
}
