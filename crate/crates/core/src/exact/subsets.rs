//! Lexicographic k-subset enumeration without per-item allocation.

use std::ops::ControlFlow;

/// Advance `c` (a strictly increasing k-subset of `0..n`) to its lexicographic
/// successor. Returns `false` once the last subset has been passed.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order until `f`
/// breaks. The empty subset is visited once when `k == 0`.
pub fn for_each_combination<B>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if k > n {
        return ControlFlow::Continue(());
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c)?;
        if !next_combination(&mut c, n) {
            return ControlFlow::Continue(());
        }
    }
}

/// All k-subsets of `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_combination::<()>(n, k, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Bitmask of a subset of `0..64`.
pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// Indices set in `mask`, increasing.
pub fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Every permutation of `0..n` in lexicographic order (Heap's algorithm is
/// faster but the order here is reproducible and easy to reason about).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
