//! Deterministic reductions over index ranges.
//!
//! A range `0..count` is cut into blocks of [`BLOCK`] indices. Each block is
//! summed pairwise, then the block sums are summed pairwise in block order.
//! Block boundaries never depend on the number of workers, so the result is
//! bit-identical with or without the `parallel` feature.

use alloc::vec::Vec;
use core::ops::{Add, Range};

use num_complex::Complex64;

use crate::error::Result;

pub const BLOCK: u64 = 1 << 12;

const LEAF: u64 = 16;

pub trait Summand: Copy + Send + Add<Output = Self> {
    const ZERO: Self;
}

impl Summand for f64 {
    const ZERO: Self = 0.0;
}

impl Summand for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
}

/// Pairwise sum of a slice.
pub fn pairwise_sum<T: Summand>(values: &[T]) -> T {
    if values.len() as u64 <= LEAF {
        return values.iter().fold(T::ZERO, |acc, &v| acc + v);
    }
    let (a, b) = values.split_at(values.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn pairwise_range<T: Summand>(
    range: Range<u64>,
    f: &mut impl FnMut(u64) -> Result<T>,
) -> Result<T> {
    let len = range.end - range.start;
    if len <= LEAF {
        let mut acc = T::ZERO;
        for i in range {
            acc = acc + f(i)?;
        }
        return Ok(acc);
    }
    let mid = range.start + len / 2;
    Ok(pairwise_range(range.start..mid, f)? + pairwise_range(mid..range.end, f)?)
}

fn block_range(b: u64, count: u64) -> Range<u64> {
    b * BLOCK..((b + 1) * BLOCK).min(count)
}

/// Applies `f` to each block of `0..count`, in block order. `init` creates
/// per-worker scratch state (caches, buffers); it must not influence results.
pub fn map_blocks<T, S, I, F>(count: u64, init: I, f: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, Range<u64>) -> Result<T> + Sync + Send,
{
    let blocks = count.div_ceil(BLOCK);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..blocks)
            .into_par_iter()
            .map_init(&init, |s, b| f(s, block_range(b, count)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut s = init();
        (0..blocks)
            .map(|b| f(&mut s, block_range(b, count)))
            .collect()
    }
}

/// `sum_{i < count} f(state, i)` with the fixed blocked pairwise order.
pub fn sum_indexed<T, S, I, F>(count: u64, init: I, f: F) -> Result<T>
where
    T: Summand,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64) -> Result<T> + Sync + Send,
{
    let partial = map_blocks(count, init, |s, range| {
        pairwise_range(range, &mut |i| f(s, i))
    })?;
    Ok(pairwise_sum(&partial))
}

/// Elementwise sum of integer histograms produced per block.
pub fn histogram_indexed<S, I, F>(count: u64, bins: usize, init: I, f: F) -> Result<Vec<u64>>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64, &mut [u64]) -> Result<()> + Sync + Send,
{
    let partial = map_blocks(count, init, |s, range| {
        let mut h = alloc::vec![0u64; bins];
        for i in range {
            f(s, i, &mut h)?;
        }
        Ok(h)
    })?;
    let mut total = alloc::vec![0u64; bins];
    for h in partial {
        for (t, v) in total.iter_mut().zip(h) {
            *t += v;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_integer_sums() {
        let s: f64 = sum_indexed(100_000, || (), |_, i| Ok(i as f64)).unwrap();
        assert_eq!(s, (99_999.0 * 100_000.0) / 2.0);
        let h = histogram_indexed(
            10_000,
            3,
            || (),
            |_, i, h| {
                h[(i % 3) as usize] += 1;
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(h, alloc::vec![3334, 3333, 3333]);
    }

    #[test]
    fn empty_range() {
        let s: f64 = sum_indexed(0, || (), |_, _| Ok(1.0)).unwrap();
        assert_eq!(s, 0.0);
    }
}
