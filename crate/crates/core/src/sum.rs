//! Compensated summation and deterministic chunked scans.

use num_complex::Complex64;
use rayon::prelude::*;

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Complex compensated accumulator (componentwise Neumaier).
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexSum {
    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `e(x) = exp(2πi x)` with `x` reduced mod 1 first.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let r = x - x.floor();
    let (s, c) = (std::f64::consts::TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// Fixed chunk length for parallel scans. Chunk boundaries depend only on
/// the scanned range, never on the thread count, so reductions are
/// reproducible bit for bit.
pub const CHUNK: u64 = 1 << 16;

/// Splits `[0, n)` into consecutive chunks of [`CHUNK`].
pub fn chunks(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity((n / CHUNK + 1) as usize);
    let mut lo = 0;
    while lo < n {
        let hi = (lo + CHUNK).min(n);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Splits `[0, n)` into chunks of at most [`CHUNK`], additionally cutting at
/// every mark in `(0, n)` so prefix values at the marks can be read off the
/// ordered chunk results.
pub fn chunks_marked(n: u64, marks: &[u64]) -> Vec<(u64, u64)> {
    let mut cuts: Vec<u64> = marks.iter().copied().filter(|&x| x > 0 && x < n).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut out = Vec::new();
    let mut lo = 0;
    for end in cuts.into_iter().chain(std::iter::once(n)) {
        while lo < end {
            let hi = (lo + CHUNK).min(end);
            out.push((lo, hi));
            lo = hi;
        }
    }
    out
}

/// Runs `f` on every chunk of `[0, n)` (in parallel when `threads != 1`)
/// and returns the per-chunk results in chunk order.
pub fn map_chunks<T, F>(n: u64, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    map_ranges(&chunks(n), threads, f)
}

/// Ordered parallel map over explicit ranges. `threads == 0` uses the global
/// rayon pool; `threads == 1` runs inline.
pub fn map_ranges<T, F>(ranges: &[(u64, u64)], threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    if threads == 1 {
        return ranges.iter().map(|&(lo, hi)| f(lo, hi)).collect();
    }
    let run = || ranges.par_iter().map(|&(lo, hi)| f(lo, hi)).collect();
    if threads == 0 {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }
}

/// `u ↦ {θ·u}`. The leading 26 fractional bits of `θ` are multiplied in
/// integers, so only the tail `θ_lo·u` (with `θ_lo < 2⁻²⁶`) is rounded.
#[derive(Clone, Copy, Debug)]
pub struct LinearPhase {
    hi: u64,
    lo: f64,
}

impl LinearPhase {
    const BITS: u32 = 26;

    pub fn new(theta: f64) -> Self {
        let t = theta - theta.floor();
        let scale = (1u64 << Self::BITS) as f64;
        let hi = ((t * scale).floor() as u64).min((1 << Self::BITS) - 1);
        LinearPhase {
            hi,
            lo: t - hi as f64 / scale,
        }
    }

    #[inline]
    pub fn at(&self, u: u64) -> f64 {
        let mask = (1u128 << Self::BITS) - 1;
        let r = (u128::from(self.hi) * u128::from(u)) & mask;
        let x = r as f64 / (1u64 << Self::BITS) as f64 + self.lo * u as f64;
        x - x.floor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_beats_naive_cancellation() {
        let mut acc = Neumaier::default();
        let mut naive = 0.0;
        for v in [1.0, 1e100, 1.0, -1e100] {
            acc.add(v);
            naive += v;
        }
        assert_eq!(acc.value(), 2.0);
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn chunking_covers_range() {
        assert!(chunks(0).is_empty());
        let c = chunks(3 * CHUNK + 5);
        assert_eq!(c.len(), 4);
        assert_eq!(c[0], (0, CHUNK));
        assert_eq!(c[3], (3 * CHUNK, 3 * CHUNK + 5));
    }

    #[test]
    fn e_is_unimodular_and_periodic() {
        let a = e(0.25);
        assert!((a.re).abs() < 1e-15 && (a.im - 1.0).abs() < 1e-15);
        let b = e(-0.75);
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn marked_chunks_cut_at_marks() {
        let c = chunks_marked(200_000, &[1000, 10_000, 0, 500_000]);
        assert!(c.iter().any(|&(_, hi)| hi == 1000));
        assert!(c.iter().any(|&(_, hi)| hi == 10_000));
        assert_eq!(c.first().unwrap().0, 0);
        assert_eq!(c.last().unwrap().1, 200_000);
        assert!(c.windows(2).all(|w| w[0].1 == w[1].0));
    }

    #[test]
    fn linear_phase_matches_exact_rational() {
        // 0.375 is exact in binary, so {0.375u} is known exactly
        let lp = LinearPhase::new(0.375);
        for u in [0u64, 1, 7, 10_000_019, 99_999_989, 1 << 40] {
            let exact = ((3 * u) % 8) as f64 / 8.0;
            let got = lp.at(u);
            let d = (got - exact).abs().min(1.0 - (got - exact).abs());
            assert!(d < 1e-15, "u={u}: {got} vs {exact}");
        }
    }

    #[test]
    fn map_chunks_thread_independent() {
        let f = |lo: u64, hi: u64| (lo..hi).map(|x| (x as f64).sqrt()).sum::<f64>();
        let one = map_chunks(300_000, 1, f);
        let many = map_chunks(300_000, 4, f);
        assert_eq!(one, many);
    }
}
