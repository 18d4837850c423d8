//! Execution-strategy shims.
//!
//! Every data-parallel site in the crate routes through these helpers, so the
//! `parallel` feature is a pure strategy switch. All helpers are ordered
//! (position-stable collects, chunk layout independent of worker count), and
//! every reduction downstream of them folds in fixed index order — reports
//! must be byte-identical whether rayon is enabled or not.
//!
//! The `*_seq` variants compile unconditionally so a single build can compare
//! both strategies (see the `par_vs_seq` bench).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Ordered map over `0..len`.
pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Ordered map over a slice.
pub fn map_slice<'a, T, U, F>(items: &'a [T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&'a T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// In-place transform of contiguous `width`-sized rows.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Sync + Send,
{
    debug_assert_eq!(data.len() % width, 0);
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(width).for_each(f);
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(width).for_each(f);
    }
}

pub fn map_range_seq<U, F: Fn(usize) -> U>(len: usize, f: F) -> Vec<U> {
    (0..len).map(f).collect()
}

pub fn map_slice_seq<'a, T, U, F: Fn(&'a T) -> U>(items: &'a [T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}

pub fn for_each_chunk_mut_seq<T, F: Fn(&mut [T])>(data: &mut [T], width: usize, f: F) {
    debug_assert_eq!(data.len() % width, 0);
    data.chunks_mut(width).for_each(f);
}
