//! Stellar cycles of the complete graph with loops drawn on a convex polygon,
//! and the triangulations built from them.

use num_traits::{One, Zero};

use super::geometry::PointConfig;
use super::regular::{find_lifting, fit_parameter, folding_rows, lifting_induces};
use super::{brick_cone, Triangulation};
use crate::classify::{brick_type_matrix, BrickTag};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, IntMatrix, Rat};
use crate::hilbert::hilbert_basis_brick;

/// A spanning set of `n` pairwise intersecting edges and loops on vertices
/// `0..n` placed in convex position. Edges are `(i, j)` with `i ≤ j`; a loop
/// has `i == j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StellarCycle {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl StellarCycle {
    /// Vertices of the unique odd cycle (a single vertex for a loop).
    pub fn odd_set(&self) -> Vec<usize> {
        let mut alive: Vec<(usize, usize)> = self.edges.clone();
        loop {
            let mut deg = vec![0usize; self.n];
            for &(i, j) in &alive {
                deg[i] += 1;
                deg[j] += 1;
            }
            let before = alive.len();
            alive.retain(|&(i, j)| deg[i] != 1 && deg[j] != 1);
            if alive.len() == before {
                let mut v: Vec<usize> = alive.iter().flat_map(|&(i, j)| [i, j]).collect();
                v.sort_unstable();
                v.dedup();
                return v;
            }
        }
    }

    /// Rows `e_i + e_j` per edge (`2e_i` for a loop).
    pub fn incidence(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let mut r = vec![0i64; self.n];
                r[i] += 1;
                r[j] += 1;
                r
            })
            .collect();
        IntMatrix::from_rows(&rows)
    }
}

/// Whether two distinct edges or loops meet in the convex drawing.
fn intersect(e: (usize, usize), f: (usize, usize)) -> bool {
    let ((i, k), (j, l)) = (e, f);
    if i == j || i == l || k == j || k == l {
        return true;
    }
    if i == k || j == l {
        return false;
    }
    (i < j && j < k && k < l) || (j < i && i < l && l < k)
}

pub fn enumerate_stellar_cycles(n: usize) -> Vec<StellarCycle> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    extend(n, &edges, 0, &mut stack, &mut out);
    out
}

fn extend(
    n: usize,
    edges: &[(usize, usize)],
    from: usize,
    stack: &mut Vec<(usize, usize)>,
    out: &mut Vec<StellarCycle>,
) {
    if stack.len() == n {
        let mut seen = vec![false; n];
        for &(i, j) in stack.iter() {
            seen[i] = true;
            seen[j] = true;
        }
        if seen.iter().all(|&s| s) {
            out.push(StellarCycle { n, edges: stack.clone() });
        }
        return;
    }
    for (idx, &e) in edges.iter().enumerate().skip(from) {
        if stack.iter().all(|&f| intersect(e, f)) {
            stack.push(e);
            extend(n, edges, idx + 1, stack, out);
            stack.pop();
        }
    }
}

/// Position of the half-sum of generators `i < j` in a brick's Hilbert list,
/// where the `n` generators come first and pairs follow in lexicographic order.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    n + i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub(crate) fn edge_point(n: usize, (i, j): (usize, usize)) -> usize {
    if i == j {
        i
    } else {
        pair_index(n, i, j)
    }
}

/// Cells `{h} ∪ (A ∖ a_i)` around the half-sum `h` of a te-lace.
pub fn stellar_lace_triangulation(rows: &ExactMatrix) -> Result<Triangulation> {
    let t = brick_type_matrix(rows)?;
    if t.as_ref().map(|t| t.tag) != Some(BrickTag::TeLace) {
        return Err(Error::WrongKind { expected: "te-lace".into(), found: tag_name(&t) });
    }
    let n = rows.nrows();
    let hb = hilbert_basis_brick(rows)?;
    let cells = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).chain([n]).collect())
        .collect();
    let mut lifting = vec![Rat::zero(); n + 1];
    lifting[n] = -Rat::one();
    let tri = Triangulation { points: hb.elements, cells, lifting: Some(lifting) };
    super::checked(&brick_cone(rows)?, tri)
}

pub(crate) fn tag_name(t: &Option<crate::classify::BrickType>) -> String {
    t.as_ref().map_or("no te-brick".to_string(), |t| t.tag.name().to_string())
}

/// Weight `−d(n−d)` of the half-sum on the polygon chord of length `d`.
pub(crate) fn chord_weight(n: usize, i: usize, j: usize) -> Rat {
    let d = (j - i) as i64;
    Rat::from_integer((-d * (n as i64 - d)).into())
}

/// One cell per stellar cycle: half-sums for edges, generators for loops.
pub fn thin_triangulation(rows: &ExactMatrix) -> Result<Triangulation> {
    let t = brick_type_matrix(rows)?;
    let n = rows.nrows();
    let ok = match &t {
        Some(bt) => bt.tag == BrickTag::ThinInterlace || (bt.tag == BrickTag::TeLace && n == 2),
        None => false,
    };
    if !ok {
        return Err(Error::WrongKind { expected: "thin te-interlace".into(), found: tag_name(&t) });
    }
    let hb = hilbert_basis_brick(rows)?;
    let cells: Vec<Vec<usize>> = enumerate_stellar_cycles(n)
        .iter()
        .map(|s| {
            let mut c: Vec<usize> = s.edges.iter().map(|&e| edge_point(n, e)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let cone = brick_cone(rows)?;
    let cfg = PointConfig::new(&cone, &hb.elements)?;
    let m = hb.elements.len();
    let mut base = vec![Rat::zero(); m];
    let mut dir = vec![Rat::zero(); m];
    for i in 0..n {
        dir[i] = Rat::one();
        for j in i + 1..n {
            base[pair_index(n, i, j)] = chord_weight(n, i, j);
        }
    }
    let lifting = lift_or_search(&cfg, &cells, &[(base, dir)])?;
    super::checked(&cone, Triangulation { points: hb.elements, cells, lifting: Some(lifting) })
}

/// Applies a chain of one-parameter fits `w ← base + t·dir`, where each
/// stage's base is added to the previous result; falls back to an LP search
/// when a fit fails or the result does not induce the cells.
pub(crate) fn lift_or_search(
    cfg: &PointConfig,
    cells: &[Vec<usize>],
    stages: &[(Vec<Rat>, Vec<Rat>)],
) -> Result<Vec<Rat>> {
    let rows = folding_rows(cfg, cells)?;
    let mut w = vec![Rat::zero(); cfg.coords.len()];
    let mut fitted = true;
    for (k, (base, dir)) in stages.iter().enumerate() {
        let b: Vec<Rat> = w.iter().zip(base).map(|(x, y)| x + y).collect();
        // Earlier stages only see the rows untouched by later directions.
        let later: Vec<&Vec<Rat>> = stages[k + 1..].iter().map(|(_, d)| d).collect();
        let relevant: Vec<Vec<Rat>> = rows
            .iter()
            .filter(|g| later.iter().all(|d| g.iter().zip(d.iter()).all(|(x, y)| x.is_zero() || y.is_zero())))
            .cloned()
            .collect();
        match fit_parameter(&relevant, &b, dir) {
            Some(t) => w = b.iter().zip(dir).map(|(x, d)| x + &t * d).collect(),
            None => {
                fitted = false;
                break;
            }
        }
    }
    if fitted && lifting_induces(cfg, cells, &w) {
        return Ok(w);
    }
    match find_lifting(cfg, cells)? {
        Some(w) if lifting_induces(cfg, cells, &w) => Ok(w),
        _ => Err(Error::Construction("no lifting induces the cells".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_counts() {
        for n in 1..=7 {
            assert_eq!(enumerate_stellar_cycles(n).len(), 1 << (n - 1), "n = {n}");
        }
    }

    #[test]
    fn odd_sets_are_distinct_and_odd() {
        for n in 1..=6 {
            let mut sets: Vec<Vec<usize>> = enumerate_stellar_cycles(n).iter().map(|s| s.odd_set()).collect();
            assert!(sets.iter().all(|s| s.len() % 2 == 1));
            sets.sort();
            sets.dedup();
            assert_eq!(sets.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn incidence_determinant_is_two() {
        for n in 1..=6 {
            for s in enumerate_stellar_cycles(n) {
                assert_eq!(s.incidence().det().abs(), 2, "{s:?}");
            }
        }
    }

    #[test]
    fn triangle_and_loops() {
        let cycles = enumerate_stellar_cycles(3);
        assert!(cycles.iter().any(|s| s.edges == vec![(0, 1), (0, 2), (1, 2)]));
        assert!(cycles.iter().any(|s| s.edges == vec![(0, 0), (0, 1), (0, 2)]));
    }

    #[test]
    fn pair_positions() {
        assert_eq!(pair_index(4, 0, 1), 4);
        assert_eq!(pair_index(4, 0, 3), 6);
        assert_eq!(pair_index(4, 1, 2), 7);
        assert_eq!(pair_index(4, 2, 3), 9);
    }
}
