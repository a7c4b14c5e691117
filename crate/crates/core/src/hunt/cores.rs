//! Enumeration of minimally non-totally-unimodular 0,1 cores.
//!
//! Rows are bitmasks with an even, nonzero number of ones (Camion), chosen in
//! strictly increasing order so each row order is visited once. Every
//! partial row set is a proper submatrix and must be totally unimodular.

use crate::classify::{camion_conditions, is_min_non_tu};
use crate::exact::subsets::for_each_combination;
use crate::exact::IntMatrix;

use super::canonical::core_matrix;

/// Candidate rows of a `k`-column core.
pub fn even_rows(k: usize) -> Vec<u32> {
    (1u32..1 << k).filter(|r| r.count_ones() % 2 == 0).collect()
}

pub(crate) fn to_int(rows: &[u32], k: usize) -> IntMatrix {
    let data = rows
        .iter()
        .flat_map(|&r| (0..k).map(move |j| i64::from(r >> (k - 1 - j) & 1)))
        .collect();
    IntMatrix::new(rows.len(), k, data)
}

/// Whether every square submatrix using the last row, of size below
/// `limit`, has determinant 0 or ±1.
fn last_row_tu(rows: &[u32], k: usize, limit: usize) -> bool {
    let m = to_int(rows, k);
    let last = rows.len() - 1;
    let others: Vec<usize> = (0..last).collect();
    for s in 2..=rows.len().min(limit) {
        let bad = for_each_combination(last, s - 1, |pick| {
            let mut rs: Vec<usize> = pick.iter().map(|&p| others[p]).collect();
            rs.push(last);
            for_each_combination(k, s, |cols| {
                if m.minor(&rs, cols).abs() > 1 {
                    std::ops::ControlFlow::Break(())
                } else {
                    std::ops::ControlFlow::Continue(())
                }
            })
        });
        if bad.is_break() {
            return false;
        }
    }
    true
}

/// Counters of one enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoreCounts {
    /// Complete `k`-row candidates tested.
    pub candidates: u64,
    /// Candidates that are minimally non-totally unimodular.
    pub cores: u64,
}

/// Visits every minimally non-TU `k×k` core (up to row order) whose first
/// rows are `prefix` (indices into [`even_rows`]).
pub fn for_each_core(k: usize, prefix: &[usize], mut f: impl FnMut(&[u32])) -> CoreCounts {
    let pool = even_rows(k);
    let mut counts = CoreCounts::default();
    let mut rows: Vec<u32> = Vec::with_capacity(k);
    for (d, &p) in prefix.iter().enumerate() {
        if p >= pool.len() || (d > 0 && p <= prefix[d - 1]) {
            return counts;
        }
        rows.push(pool[p]);
        if !last_row_tu(&rows, k, k.saturating_sub(1)) {
            return counts;
        }
    }
    let next = prefix.last().map_or(0, |&p| p + 1);
    grow(k, &pool, next, &mut rows, &mut counts, &mut f);
    counts
}

fn grow(k: usize, pool: &[u32], from: usize, rows: &mut Vec<u32>, counts: &mut CoreCounts, f: &mut impl FnMut(&[u32])) {
    if rows.len() == k {
        counts.candidates += 1;
        let m = to_int(rows, k);
        if camion_conditions(&m) && is_min_non_tu(&core_matrix(rows, k)) {
            counts.cores += 1;
            f(rows);
        }
        return;
    }
    for idx in from..pool.len() {
        if pool.len() - idx < k - rows.len() {
            break;
        }
        rows.push(pool[idx]);
        if last_row_tu(rows, k, k.saturating_sub(1)) {
            grow(k, pool, idx + 1, rows, counts, f);
        }
        rows.pop();
    }
}
