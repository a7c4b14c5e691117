//! Decomposition of full-row-rank te-sets into mutually-tu te-bricks.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;

use crate::calculus::support;
use crate::classify::{brick_type_matrix, eqdet_matrix, is_totally_equimodular, pow2, rows_have_full_bad_minor, BrickTag};
use crate::error::{Error, Result};
use crate::exact::subsets::{for_each_combination, mask_of};
use crate::exact::{ExactMatrix, IntMatrix, Rat, RowSet};

/// A partition of a te-set's rows into bricks. Indices refer to rows of the
/// source matrix (`source.source()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub source: RowSet,
    pub tu_set: Vec<usize>,
    pub laces: Vec<Vec<usize>>,
    pub thin: Vec<Vec<usize>>,
    pub thick: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Every nonempty part with its brick tag, tu-set first.
    pub fn parts(&self) -> Vec<(BrickTag, Vec<usize>)> {
        let mut out = Vec::new();
        if !self.tu_set.is_empty() {
            out.push((BrickTag::TuSet, self.tu_set.clone()));
        }
        out.extend(self.laces.iter().map(|l| (BrickTag::TeLace, l.clone())));
        out.extend(self.thin.iter().map(|l| (BrickTag::ThinInterlace, l.clone())));
        out.extend(self.thick.iter().map(|l| (BrickTag::ThickInterlace, l.clone())));
        out
    }

    /// Matrix of the rows in `part`.
    pub fn part_matrix(&self, part: &[usize]) -> ExactMatrix {
        self.source.source().select_rows(part)
    }
}

fn validated(s: &RowSet) -> Result<IntMatrix> {
    let a = s.to_matrix();
    if !a.is_zero_pm1() {
        return Err(Error::Domain("te-set rows must be 0,±1".into()));
    }
    let rank = a.rank();
    if rank < a.nrows() {
        return Err(Error::RankDeficient { rank, rows: a.nrows() });
    }
    Ok(a.to_int().expect("0,±1"))
}

fn connected(im: &IntMatrix, rows: &[usize]) -> bool {
    let supports: Vec<u64> = rows
        .iter()
        .map(|&i| (0..im.ncols()).filter(|&j| im.get(i, j) != 0).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let mut reached = 1u64;
    let mut cover = supports[0];
    loop {
        let before = reached;
        for (k, &s) in supports.iter().enumerate() {
            if reached & (1 << k) == 0 && s & cover != 0 {
                reached |= 1 << k;
                cover |= s;
            }
        }
        if reached == before {
            break;
        }
    }
    reached.count_ones() as usize == rows.len()
}

/// Inclusion-minimal non-TU row subsets as positions into `im`, by
/// increasing size then lexicographically.
fn minimal_non_tu_positions(im: &IntMatrix) -> Vec<Vec<usize>> {
    let m = im.nrows();
    assert!(m <= 64 && im.ncols() <= 64, "masks are 64-bit");
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    for k in 1..=m {
        let _ = for_each_combination(m, k, |rows| {
            let mask = mask_of(rows);
            if masks.iter().any(|&f| f & mask == f) {
                return ControlFlow::<()>::Continue(());
            }
            if (k == 1 || connected(im, rows)) && rows_have_full_bad_minor(im, rows) {
                masks.push(mask);
                found.push(rows.to_vec());
            }
            ControlFlow::Continue(())
        });
    }
    found
}

/// All minimal non-TU row subsets of a linearly independent 0,±1 row set.
pub fn find_te_laces(s: &RowSet) -> Result<Vec<Vec<usize>>> {
    let im = validated(s)?;
    let map = s.indices();
    Ok(minimal_non_tu_positions(&im)
        .into_iter()
        .map(|l| l.into_iter().map(|p| map[p]).collect())
        .collect())
}

fn map_rows(map: &[usize], pos: &[usize]) -> Vec<usize> {
    pos.iter().map(|&p| map[p]).collect()
}

/// Minimal non-TU row subsets of any 0,±1 matrix, without a rank
/// precondition.
pub fn minimal_non_tu_row_subsets(a: &ExactMatrix) -> Result<Vec<Vec<usize>>> {
    if !a.is_zero_pm1() {
        return Err(Error::Domain("rows must be 0,±1".into()));
    }
    Ok(minimal_non_tu_positions(&a.to_int().expect("0,±1")))
}

/// Splits a linearly independent 0,±1 te-set into a tu-set, te-laces of
/// size at least three, and thin and thick te-interlaces.
pub fn decompose_te_set(s: &RowSet) -> Result<Decomposition> {
    let im = validated(s)?;
    let a = s.to_matrix();
    let map = s.indices();
    if let Some(w) = is_totally_equimodular(&a).witness {
        return Err(Error::NotTotallyEquimodular { witness: map_rows(map, &w) });
    }
    let minimal = minimal_non_tu_positions(&im);
    let mut in_interlace = vec![false; a.nrows()];
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for pair in minimal.iter().filter(|l| l.len() == 2) {
        for &p in pair {
            if !in_interlace[p] {
                in_interlace[p] = true;
                classes.entry(support(a.row(p))).or_default().push(p);
            }
        }
    }
    let mut used = in_interlace.clone();
    let mut laces = Vec::new();
    for lace in minimal.iter().filter(|l| l.len() > 2) {
        if lace.iter().any(|&p| used[p]) {
            return Err(Error::NotMutuallyTu { witness: map_rows(map, lace) });
        }
        for &p in lace {
            used[p] = true;
        }
        laces.push(map_rows(map, lace));
    }
    let (mut thin, mut thick) = (Vec::new(), Vec::new());
    for rows in classes.into_values() {
        let mut rows = rows;
        rows.sort_unstable();
        let d = eqdet_matrix(&a.select_rows(&rows))?;
        let size = rows.len();
        if d == Rat::from_integer(pow2(size - 1)) {
            thin.push(map_rows(map, &rows));
        } else if d == Rat::from_integer(pow2(size)) {
            thick.push(map_rows(map, &rows));
        } else {
            return Err(Error::NotABrick { rows: map_rows(map, &rows) });
        }
    }
    let tu_set = (0..a.nrows()).filter(|&p| !used[p]).map(|p| map[p]).collect();
    let d = Decomposition { source: s.clone(), tu_set, laces, thin, thick };
    let verdict = verify_mutually_tu(&d)?;
    if let Some(w) = verdict.witness {
        return Err(Error::NotMutuallyTu { witness: w });
    }
    Ok(d)
}

/// Outcome of [`verify_mutually_tu`]; the witness is an offending row set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutualVerdict {
    pub witness: Option<Vec<usize>>,
}

impl MutualVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that the parts partition the source rows, that each part is a
/// brick of its declared type, and that every minimal non-TU subset is a
/// registered lace or a pair inside one interlace.
pub fn verify_mutually_tu(d: &Decomposition) -> Result<MutualVerdict> {
    let fail = |w: Vec<usize>| Ok(MutualVerdict { witness: Some(w) });
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let parts = d.parts();
    for (k, (_, rows)) in parts.iter().enumerate() {
        for &r in rows {
            if owner.insert(r, k).is_some() {
                return fail(vec![r]);
            }
        }
    }
    let mut expected: Vec<usize> = d.source.indices().to_vec();
    expected.sort_unstable();
    if owner.keys().copied().collect::<Vec<_>>() != expected {
        return fail(expected.into_iter().filter(|r| !owner.contains_key(r)).collect());
    }
    for (tag, rows) in &parts {
        let t = brick_type_matrix(&d.part_matrix(rows))?;
        let ok = match (tag, t.map(|t| t.tag)) {
            (BrickTag::ThinInterlace, Some(BrickTag::TeLace)) => rows.len() == 2,
            (want, Some(got)) => *want == got,
            (_, None) => false,
        };
        if !ok {
            return fail(rows.clone());
        }
    }
    for lace in find_te_laces(&d.source)? {
        let mut sorted = lace.clone();
        sorted.sort_unstable();
        let registered = d.laces.iter().any(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l == sorted
        });
        let in_interlace = lace.len() == 2
            && d.thin.iter().chain(&d.thick).any(|s| lace.iter().all(|r| s.contains(r)));
        if !registered && !in_interlace {
            return fail(lace);
        }
    }
    Ok(MutualVerdict { witness: None })
}

/// `2^(k + Σ(|S_i| − 1) + Σ|T_j|)` for `k` laces, thin parts `S_i` and thick
/// parts `T_j`.
pub fn eqdet_from_decomposition(d: &Decomposition) -> BigInt {
    let e = d.laces.len()
        + d.thin.iter().map(|s| s.len() - 1).sum::<usize>()
        + d.thick.iter().map(Vec::len).sum::<usize>();
    pow2(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn small() -> RowSet {
        RowSet::all(ExactMatrix::from_ints(&[[1, 1, 0], [-1, 1, 0], [0, 0, 1]]))
    }

    #[test]
    fn laces_of_small_sets() {
        assert_eq!(find_te_laces(&small()).unwrap(), vec![vec![0, 1]]);
        assert!(find_te_laces(&RowSet::all(ExactMatrix::identity(4))).unwrap().is_empty());
        let fig = RowSet::new(fixtures::figure1(), vec![0, 1, 2, 4]).unwrap();
        assert!(find_te_laces(&fig).unwrap().contains(&vec![0, 2, 4]));
    }

    #[test]
    fn decomposes_small_examples() {
        let d = decompose_te_set(&small()).unwrap();
        assert_eq!(d.tu_set, vec![2]);
        assert_eq!(d.thin, vec![vec![0, 1]]);
        assert!(d.laces.is_empty() && d.thick.is_empty());
        assert_eq!(eqdet_from_decomposition(&d), BigInt::from(2));
        assert!(verify_mutually_tu(&d).unwrap().holds());

        let d = decompose_te_set(&RowSet::all(fixtures::conjecture4())).unwrap();
        assert_eq!(d.thick, vec![vec![0, 1, 2, 3]]);
        assert_eq!(eqdet_from_decomposition(&d), BigInt::from(16));

        let d = decompose_te_set(&RowSet::all(ExactMatrix::identity(3))).unwrap();
        assert_eq!(d.tu_set, vec![0, 1, 2]);
        assert_eq!(eqdet_from_decomposition(&d), BigInt::from(1));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            decompose_te_set(&RowSet::all(fixtures::figure1())),
            Err(Error::RankDeficient { .. })
        ));
        let bad = RowSet::all(ExactMatrix::from_ints(&[[1, 1, 0], [1, -1, 1]]));
        assert_eq!(
            decompose_te_set(&bad),
            Err(Error::NotTotallyEquimodular { witness: vec![0, 1] })
        );
    }

    #[test]
    fn detects_a_broken_partition() {
        let mut d = decompose_te_set(&small()).unwrap();
        d.tu_set = vec![0, 1, 2];
        d.thin.clear();
        assert!(!verify_mutually_tu(&d).unwrap().holds());
    }
}
