use num_bigint::BigUint;

use super::Ostrowski;

/// Streaming successor over the Ostrowski digits of `n, n+1, n+2, …`.
///
/// The low `i` digits of `n` equal `q_i − 1` exactly when they read
/// `a_i, 0, a_{i−2}, 0, …` downward from index `i − 1`. The successor of `n`
/// zeroes the digits below the largest such `i` and increments `ε_i`. The
/// walk length is paid for by the nonzero digits it clears, so a step costs
/// amortized O(1) digit updates.
#[derive(Clone, Debug)]
pub struct Odometer<'a> {
    sys: &'a Ostrowski,
    n: BigUint,
    eps: Vec<u32>,
    sum: u64,
}

impl<'a> Odometer<'a> {
    pub(super) fn new(sys: &'a Ostrowski, start: &BigUint) -> Self {
        let d = sys.digits_of(start);
        let sum = d.sum();
        let mut eps = d.eps;
        eps.reserve(16);
        Odometer {
            sys,
            n: start.clone(),
            eps,
            sum,
        }
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// Current digits; may carry trailing zeros.
    pub fn digits(&self) -> &[u32] {
        &self.eps
    }

    /// Digits with trailing zeros stripped (at least one digit).
    pub fn trimmed_digits(&self) -> &[u32] {
        let len = self.eps.iter().rposition(|&e| e != 0).map_or(1, |p| p + 1);
        &self.eps[..len]
    }

    /// Cached `S_α(n)`.
    #[inline]
    pub fn digit_sum(&self) -> u64 {
        self.sum
    }

    /// `S_{α,k}(n)`.
    #[inline]
    pub fn digit_sum_trunc(&self, k: usize) -> u64 {
        self.eps.iter().take(k).map(|&e| u64::from(e)).sum()
    }

    #[inline]
    fn at(&self, i: usize) -> u32 {
        self.eps.get(i).copied().unwrap_or(0)
    }

    /// Top of the chain starting at `start`: the largest `i ≡ start (mod 2)`
    /// whose low digits are maximal.
    #[inline]
    fn chain_top(&self, start: usize) -> usize {
        let mut i = start;
        while self.at(i) == 0 && self.at(i + 1) == self.sys.digit_cap(i + 1) {
            i += 2;
        }
        i
    }

    /// Advances to `n + 1`.
    pub fn advance(&mut self) {
        let top = self.chain_top(1).max(self.chain_top(0));
        if top >= self.eps.len() {
            self.eps.resize(top + 1, 0);
        }
        for e in &mut self.eps[..top] {
            self.sum -= u64::from(*e);
            *e = 0;
        }
        self.eps[top] += 1;
        self.sum += 1;
        self.n += 1u32;
        debug_assert!(self.eps[top] <= self.sys.digit_cap(top));
    }
}
