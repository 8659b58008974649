//! Permanents of 0/1 matrices.
//!
//! [`permanent_ryser`] is the production kernel. [`permanent_naive`] sums the
//! n! expansion terms directly and exists as an independent oracle.
//!
//! The Ryser sum has large intermediate products of mixed sign, but the final
//! value lies in `[0, n!]`. Accumulating in wrapping arithmetic modulo 2^64
//! (n <= 20) or 2^128 (n <= 30) therefore yields the exact permanent.

use num_traits::{WrappingAdd, WrappingMul, WrappingSub};

use crate::limits::{check, Limits};
use crate::matrix::BinaryMatrix;
use crate::Result;

/// Direct expansion over all n! permutations, guarded at the default limit.
pub fn permanent_naive(m: &BinaryMatrix) -> Result<u128> {
    permanent_naive_with(m, &Limits::default())
}

pub fn permanent_naive_with(m: &BinaryMatrix, limits: &Limits) -> Result<u128> {
    let n = m.n();
    check(
        "naive permanent dimension n",
        n,
        limits.naive_max_n.min(Limits::HARD_NAIVE_MAX_N),
    )?;
    let rows = m.rows();
    let mut total = 0u128;
    for_each_permutation(n, |sigma| {
        // term s[sigma(0)][0] * s[sigma(1)][1] * ...
        if sigma
            .iter()
            .enumerate()
            .all(|(col, &row)| (rows[row as usize] >> col) & 1 == 1)
        {
            total += 1;
        }
    });
    Ok(total)
}

/// Ryser inclusion-exclusion with Gray-code column updates, O(2^n · n).
pub fn permanent_ryser(m: &BinaryMatrix) -> Result<u128> {
    let n = m.n();
    check("Ryser permanent dimension n", n, Limits::HARD_RYSER_MAX_N)?;
    if n <= 20 {
        Ok(ryser_wrapping::<u64>(m.rows()) as u128)
    } else {
        Ok(ryser_wrapping::<u128>(m.rows()))
    }
}

/// Ryser kernel on packed rows for `rows.len() <= 20`; the hot path of exhaustive enumeration.
#[inline]
pub fn permanent_rows_small(rows: &[u64]) -> u64 {
    debug_assert!(rows.len() <= 20);
    ryser_wrapping::<u64>(rows)
}

trait Ring: Copy + WrappingAdd + WrappingSub + WrappingMul {
    const ZERO: Self;
    const ONE: Self;
    fn from_u32(v: u32) -> Self;
}

impl Ring for u64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn from_u32(v: u32) -> Self {
        v as u64
    }
}

impl Ring for u128 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn from_u32(v: u32) -> Self {
        v as u128
    }
}

fn ryser_wrapping<T: Ring>(rows: &[u64]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::ONE;
    }
    // cheap exits: an empty row or column forces per = 0
    if rows.contains(&0) || rows.iter().fold(0u64, |acc, &r| acc | r).count_ones() as usize != n {
        return T::ZERO;
    }

    let mut sums = [0u32; 64];
    let mut total = T::ZERO;
    // Walk the 2^n column subsets in Gray-code order; subset k differs from
    // subset k-1 in column trailing_zeros(k).
    let mut subset = 0u64;
    for k in 1u64..(1u64 << n) {
        let col = k.trailing_zeros();
        let bit = 1u64 << col;
        subset ^= bit;
        if subset & bit != 0 {
            for (s, &r) in sums.iter_mut().zip(rows) {
                *s += ((r >> col) & 1) as u32;
            }
        } else {
            for (s, &r) in sums.iter_mut().zip(rows) {
                *s -= ((r >> col) & 1) as u32;
            }
        }
        let mut prod = T::ONE;
        let mut zero = false;
        for &s in &sums[..n] {
            if s == 0 {
                zero = true;
                break;
            }
            prod = prod.wrapping_mul(&T::from_u32(s));
        }
        if zero {
            continue;
        }
        // sign (-1)^(n - |S|)
        if (n as u32 - subset.count_ones()) & 1 == 0 {
            total = total.wrapping_add(&prod);
        } else {
            total = total.wrapping_sub(&prod);
        }
    }
    total
}

/// Calls `f` once for every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
