//! Ostrowski digit expansion `n = Σ ε_i(n) q_i` for `α = [0; overline{1, m}]`.
//!
//! Digits obey the Markov admissibility condition: `ε_0 = 0`,
//! `0 ≤ ε_i ≤ a_{i+1}`, and `ε_i = a_{i+1}` forces `ε_{i−1} = 0`. Expansion is
//! greedy from the top, which yields the unique admissible string.

mod odometer;
mod vset;

pub use odometer::Odometer;
pub use vset::VSequence;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::cf::{AlphaParams, ConvergentTable};
use crate::error::{invalid, Error, Result};

/// Why a raw digit vector is not admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `ε_0` must be zero.
    NonzeroUnitDigit,
    /// `ε_i > a_{i+1}`.
    ExceedsCap { cap: u32 },
    /// `ε_i = a_{i+1}` while `ε_{i−1} ≠ 0`.
    Markov { previous: u32 },
}

/// First admissibility violation found scanning upward from index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub value: u32,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        match self.kind {
            ViolationKind::NonzeroUnitDigit => {
                write!(f, "digit 0 is {} but must be 0", self.value)
            }
            ViolationKind::ExceedsCap { cap } => {
                write!(f, "digit {i} is {} but the cap is {cap}", self.value)
            }
            ViolationKind::Markov { previous } => write!(
                f,
                "digit {i} is at its cap {} so digit {} must be 0, found {previous}",
                self.value,
                i - 1
            ),
        }
    }
}

/// An admissible digit string `ε_0, ε_1, …` (least significant first),
/// stored without trailing zeros (zero is the single digit `0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    m: u32,
    eps: Vec<u32>,
}

impl DigitString {
    fn from_raw(m: u32, mut eps: Vec<u32>) -> Self {
        while eps.len() > 1 && eps.last() == Some(&0) {
            eps.pop();
        }
        if eps.is_empty() {
            eps.push(0);
        }
        DigitString { m, eps }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn digits(&self) -> &[u32] {
        &self.eps
    }

    /// Digit at index `i`; zero above the top.
    pub fn digit(&self, i: usize) -> u32 {
        self.eps.get(i).copied().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.eps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn sum_below(&self, k: usize) -> u64 {
        self.eps.iter().take(k).map(|&e| u64::from(e)).sum()
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_digits(&self.eps, f)
    }
}

fn format_digits(eps: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, e) in eps.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

/// Parses the little-endian comma-separated form, e.g. `"0,2,0,2"`.
/// No admissibility check is done here.
pub fn parse_digits(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| invalid(format!("bad digit {t:?}: {e}")))
        })
        .collect()
}

/// The Ostrowski numeration system for one `m`.
///
/// Holds the convergent denominators up to the first `q_K > u128::MAX`, plus a
/// `u64` copy of the prefix that fits, used by the fast expansion path.
#[derive(Clone, Debug)]
pub struct Ostrowski {
    params: AlphaParams,
    table: ConvergentTable,
    small: Vec<u64>,
}

impl Ostrowski {
    pub fn new(params: AlphaParams) -> Self {
        let mut table = ConvergentTable::new(&params, 2);
        table.extend_past(&BigUint::from(u128::MAX));
        let small = table.qs().iter().map_while(|q| q.to_u64()).collect();
        Ostrowski {
            params,
            table,
            small,
        }
    }

    pub fn with_m(m: u32) -> Result<Self> {
        Ok(Self::new(AlphaParams::new(m)?))
    }

    pub fn params(&self) -> &AlphaParams {
        &self.params
    }

    pub fn m(&self) -> u32 {
        self.params.m()
    }

    pub fn table(&self) -> &ConvergentTable {
        &self.table
    }

    /// `q_i`, extending a local table when `i` is past the cached range.
    pub fn q(&self, i: usize) -> BigUint {
        if i <= self.table.k_max() {
            self.table.q(i).clone()
        } else {
            let mut t = self.table.clone();
            t.extend_to(i);
            t.q(i).clone()
        }
    }

    /// `q_i` as `u64`, if it fits.
    pub fn q_u64(&self, i: usize) -> Option<u64> {
        self.small.get(i).copied()
    }

    #[inline]
    pub fn digit_cap(&self, i: usize) -> u32 {
        self.params.digit_cap(i)
    }

    /// Checks the three admissibility clauses; reports the first violation.
    pub fn validate(&self, eps: &[u32]) -> std::result::Result<(), Violation> {
        for (i, &e) in eps.iter().enumerate() {
            if i == 0 {
                if e != 0 {
                    return Err(Violation {
                        index: 0,
                        value: e,
                        kind: ViolationKind::NonzeroUnitDigit,
                    });
                }
                continue;
            }
            let cap = self.digit_cap(i);
            if e > cap {
                return Err(Violation {
                    index: i,
                    value: e,
                    kind: ViolationKind::ExceedsCap { cap },
                });
            }
            if e == cap && eps[i - 1] != 0 {
                return Err(Violation {
                    index: i,
                    value: e,
                    kind: ViolationKind::Markov {
                        previous: eps[i - 1],
                    },
                });
            }
        }
        Ok(())
    }

    /// Wraps a raw vector as a [`DigitString`] after validation.
    pub fn digit_string(&self, eps: Vec<u32>) -> Result<DigitString> {
        self.validate(&eps).map_err(Error::Inadmissible)?;
        Ok(DigitString::from_raw(self.m(), eps))
    }

    /// `Σ ε_i q_i`; rejects inadmissible strings.
    pub fn value_of(&self, eps: &[u32]) -> Result<BigUint> {
        self.validate(eps).map_err(Error::Inadmissible)?;
        Ok(self.value_unchecked(eps))
    }

    pub(crate) fn value_unchecked(&self, eps: &[u32]) -> BigUint {
        let mut total = BigUint::zero();
        for (i, &e) in eps.iter().enumerate() {
            if e != 0 {
                total += self.q(i) * e;
            }
        }
        total
    }

    /// Greedy expansion of an arbitrary-precision `n`.
    pub fn digits_of(&self, n: &BigUint) -> DigitString {
        if let Some(small) = n.to_u64() {
            return self.digits_of_u64(small);
        }
        let mut table = self.table.clone();
        table.extend_past(n);
        let top = table.k_max() - 1;
        let mut eps = vec![0u32; top + 1];
        let mut rem = n.clone();
        for i in (1..=top).rev() {
            let q = table.q(i);
            if &rem < q {
                continue;
            }
            let e = (&rem / q)
                .to_u32()
                .unwrap_or(u32::MAX)
                .min(self.digit_cap(i));
            rem -= q * e;
            eps[i] = e;
        }
        debug_assert!(rem.is_zero());
        let out = DigitString::from_raw(self.m(), eps);
        debug_assert!(self.validate(&out.eps).is_ok());
        out
    }

    /// Greedy expansion for `n < 2^64`.
    pub fn digits_of_u64(&self, n: u64) -> DigitString {
        let mut eps = Vec::new();
        self.fill_digits_u64(n, &mut eps);
        DigitString::from_raw(self.m(), eps)
    }

    /// Writes the digits of `n` into `eps` (cleared first, no trailing zeros
    /// beyond the top digit).
    pub(crate) fn fill_digits_u64(&self, n: u64, eps: &mut Vec<u32>) {
        eps.clear();
        if n == 0 {
            eps.push(0);
            return;
        }
        // largest j >= 1 with q_j <= n
        let top = self.small.partition_point(|&q| q <= n) - 1;
        eps.resize(top + 1, 0);
        let mut rem = n;
        for i in (1..=top).rev() {
            let q = self.small[i];
            if rem < q {
                continue;
            }
            let cap = self.digit_cap(i);
            let e = if cap == 1 {
                1
            } else {
                ((rem / q) as u32).min(cap)
            };
            rem -= q * u64::from(e);
            eps[i] = e;
        }
        debug_assert_eq!(rem, 0, "greedy expansion left a remainder");
    }

    /// `S_α(n)` for `n < 2^64`, without allocating.
    pub fn digit_sum_u64(&self, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        let top = self.small.partition_point(|&q| q <= n) - 1;
        let mut rem = n;
        let mut s = 0u64;
        for i in (1..=top).rev() {
            let q = self.small[i];
            if rem < q {
                continue;
            }
            let e = if self.digit_cap(i) == 1 {
                1
            } else {
                (rem / q).min(u64::from(self.m()))
            };
            rem -= q * e;
            s += e;
        }
        s
    }

    /// `S_α(n)`.
    pub fn digit_sum(&self, n: &BigUint) -> u64 {
        match n.to_u64() {
            Some(x) => self.digit_sum_u64(x),
            None => self.digits_of(n).sum(),
        }
    }

    /// `S_{α,k}(n)`, the sum of digits below index `k`.
    pub fn digit_sum_trunc(&self, n: &BigUint, k: usize) -> u64 {
        self.digits_of(n).sum_below(k)
    }

    /// `t(n, k) = Σ_{i<k} ε_i(n) q_i`.
    pub fn truncate(&self, n: &BigUint, k: usize) -> BigUint {
        let ds = self.digits_of(n);
        let low: Vec<u32> = ds.eps.iter().take(k).copied().collect();
        self.value_unchecked(&low)
    }

    /// Odometer positioned at `start`.
    pub fn odometer(&self, start: &BigUint) -> Odometer<'_> {
        Odometer::new(self, start)
    }

    /// Odometer positioned at `start < 2^64`.
    pub fn odometer_at(&self, start: u64) -> Odometer<'_> {
        Odometer::new(self, &BigUint::from(start))
    }

    /// First `count` elements of `V = {n : ε_j(n) = 0 for j < k}`.
    pub fn v_sequence(&self, k: usize, count: usize) -> Result<VSequence> {
        VSequence::build(self, k, count)
    }
}
