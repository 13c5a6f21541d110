//! Exact rank of integer matrices over the rationals.
//!
//! Fraction-free (Bareiss) elimination. After `k` pivots every remaining
//! entry is a `(k+1)`-minor of the input, so the division by the previous
//! pivot is exact whatever order the pivots are taken in. That lets us pick
//! pivots by Markowitz cost to limit fill-in. Elimination runs in checked
//! `i64` first and is redone over `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Zero};

/// Rank over ℚ of a dense integer matrix given as rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match bareiss_rank(rows.to_vec()) {
        Some(r) => r,
        None => {
            let big = rows
                .iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            bareiss_rank::<BigInt>(big).expect("BigInt elimination cannot overflow")
        }
    }
}

trait Exact: Clone + Zero + PartialEq + CheckedMul + CheckedSub + CheckedDiv + From<i64> {}

impl<T> Exact for T where
    T: Clone + Zero + PartialEq + CheckedMul + CheckedSub + CheckedDiv + From<i64>
{
}

fn bareiss_rank<T: Exact>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let nrows = m.len();
    let ncols = m[0].len();
    let mut row_live = vec![true; nrows];
    let mut col_live = vec![true; ncols];
    let mut prev = T::from(1);
    let mut rank = 0;

    while let Some((pr, pc)) = markowitz_pivot(&m, &row_live, &col_live) {
        row_live[pr] = false;
        col_live[pc] = false;
        rank += 1;
        let pivot = m[pr][pc].clone();
        for i in 0..nrows {
            if !row_live[i] {
                continue;
            }
            let lead = m[i][pc].clone();
            for j in 0..ncols {
                if !col_live[j] {
                    continue;
                }
                let num = pivot
                    .checked_mul(&m[i][j])?
                    .checked_sub(&lead.checked_mul(&m[pr][j])?)?;
                m[i][j] = num.checked_div(&prev)?;
            }
            m[i][pc] = T::zero();
        }
        prev = pivot;
    }
    Some(rank)
}

fn markowitz_pivot<T: Exact>(
    m: &[Vec<T>],
    row_live: &[bool],
    col_live: &[bool],
) -> Option<(usize, usize)> {
    let row_counts: Vec<usize> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if !row_live[i] {
                return 0;
            }
            row.iter()
                .zip(col_live)
                .filter(|(v, &live)| live && !v.is_zero())
                .count()
        })
        .collect();
    let mut col_counts = vec![0usize; col_live.len()];
    for (i, row) in m.iter().enumerate() {
        if !row_live[i] {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            if col_live[j] && !v.is_zero() {
                col_counts[j] += 1;
            }
        }
    }

    let mut best: Option<((usize, usize), usize)> = None;
    for (i, row) in m.iter().enumerate() {
        if !row_live[i] {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            if !col_live[j] || v.is_zero() {
                continue;
            }
            let cost = (row_counts[i] - 1) * (col_counts[j] - 1);
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some(((i, j), cost));
            }
        }
    }
    best.map(|(p, _)| p)
}
