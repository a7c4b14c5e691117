//! Canonical forms of ±1 matrices under resigning and permuting rows and
//! columns.

use num_traits::Signed;

use crate::calculus::lift_core;
use crate::error::{Error, Result};
use crate::exact::subsets::next_permutation;
use crate::exact::{int, ExactMatrix};

/// A representative `[[1, 1ᵀ], [1, J − 2B]]` of an equivalence class, with a
/// key that two matrices share iff they are equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: Vec<u32>,
    pub matrix: ExactMatrix,
}

/// Core rows as bitmasks, with bit `j` for column `j`.
fn core_for(signs: &[Vec<i8>], r: usize, c: usize) -> Vec<u32> {
    let n = signs.len();
    let mut rows = Vec::with_capacity(n - 1);
    for (i, row) in signs.iter().enumerate() {
        if i == r {
            continue;
        }
        let mut mask = 0u32;
        let mut bit = 0;
        for (j, &v) in row.iter().enumerate() {
            if j == c {
                continue;
            }
            // Entry after resigning row i by a_ic·a_rc and column j by a_rj.
            let s = v * row[c] * signs[r][c] * signs[r][j];
            if s < 0 {
                mask |= 1 << bit;
            }
            bit += 1;
        }
        rows.push(mask);
    }
    rows
}

fn invariant(core: &[u32], k: usize) -> Vec<u32> {
    let mut rs: Vec<u32> = core.iter().map(|r| r.count_ones()).collect();
    let mut cs: Vec<u32> = (0..k).map(|j| core.iter().filter(|&&r| r >> j & 1 == 1).count() as u32).collect();
    rs.sort_unstable();
    cs.sort_unstable();
    rs.extend(cs);
    rs
}

/// Lexicographically least sorted row list over all column orders.
fn min_encoding(core: &[u32], k: usize) -> Vec<u32> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<u32>> = None;
    loop {
        let mut rows: Vec<u32> = core
            .iter()
            .map(|&r| {
                perm.iter()
                    .enumerate()
                    .fold(0u32, |acc, (pos, &j)| acc | ((r >> j & 1) << (k - 1 - pos)))
            })
            .collect();
        rows.sort_unstable();
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn core_matrix(rows: &[u32], k: usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows.len(), k, |i, j| int(i64::from(rows[i] >> (k - 1 - j) & 1)))
}

/// Tries every row/column as the one normalized to all ones, keeps the
/// choices with the least row/column-sum invariant of the core, and
/// minimizes the core over column orders with rows sorted.
pub fn canonical_form(a: &ExactMatrix) -> Result<CanonicalForm> {
    let n = a.nrows();
    if !a.is_pm1() || n == 0 || a.ncols() != n {
        return Err(Error::Domain("canonical forms need a square ±1 matrix".into()));
    }
    if n > 32 {
        return Err(Error::Unsupported(format!("canonical form of size {n}")));
    }
    let signs: Vec<Vec<i8>> = a
        .rows_iter()
        .map(|r| r.iter().map(|x| if x.is_negative() { -1 } else { 1 }).collect())
        .collect();
    let k = n - 1;
    let mut choices: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let core = core_for(&signs, r, c);
            choices.push((invariant(&core, k), core));
        }
    }
    let least = choices.iter().map(|(inv, _)| inv.clone()).min().unwrap_or_default();
    let enc = choices
        .iter()
        .filter(|(inv, _)| *inv == least)
        .map(|(_, core)| min_encoding(core, k))
        .min()
        .unwrap_or_default();
    let matrix = lift_core(&core_matrix(&enc, k));
    let mut key = least;
    key.extend(&enc);
    Ok(CanonicalForm { key, matrix })
}
