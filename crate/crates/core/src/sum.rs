//! Pairwise (tree) summation.
//!
//! The result depends only on the order of the input, never on thread
//! scheduling, and the rounding error grows as O(log n) instead of O(n).

const BLOCK: usize = 32;

pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum of `f(i)` for `i in 0..n`, without materializing the terms.
pub fn pairwise_sum_by(n: usize, f: &impl Fn(usize) -> f64) -> f64 {
    fn go(lo: usize, hi: usize, f: &impl Fn(usize) -> f64) -> f64 {
        if hi - lo <= BLOCK {
            return (lo..hi).map(f).sum();
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, n, f)
}

/// Tree sum whose result is unchanged, bit for bit, when the input is
/// reversed: odd-length ranges add their middle element last.
pub fn symmetric_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let h = n / 2;
            let halves = symmetric_sum(&values[..h]) + symmetric_sum(&values[n - h..]);
            if n % 2 == 1 {
                halves + values[h]
            } else {
                halves
            }
        }
    }
}
