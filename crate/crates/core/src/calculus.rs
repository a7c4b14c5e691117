//! Pivots, trims, signings and the 0,1 core calculus of ±1 matrices.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::subsets::permutations;
use crate::exact::{ExactMatrix, Rat};

/// A matrix position used as a Gauss pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
}

impl Pivot {
    pub fn new(row: usize, col: usize) -> Self {
        Pivot { row, col }
    }
}

fn check_pivot(a: &ExactMatrix, p: Pivot) -> Result<Rat> {
    if p.row >= a.nrows() {
        return Err(Error::Index { index: p.row, len: a.nrows() });
    }
    if p.col >= a.ncols() {
        return Err(Error::Index { index: p.col, len: a.ncols() });
    }
    let v = a.get(p.row, p.col);
    if v.is_zero() {
        return Err(Error::ZeroPivot { row: p.row, col: p.col });
    }
    Ok(v.clone())
}

/// Divides the pivot row by the pivot entry and clears the rest of the pivot
/// column, so that column becomes a unit vector.
pub fn pivot(a: &ExactMatrix, p: Pivot) -> Result<ExactMatrix> {
    let v = check_pivot(a, p)?;
    let prow: Vec<Rat> = a.row(p.row).iter().map(|x| x / &v).collect();
    Ok(ExactMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
        if i == p.row {
            prow[j].clone()
        } else {
            let f = a.get(i, p.col);
            if f.is_zero() {
                a.get(i, j).clone()
            } else {
                a.get(i, j) - f * &prow[j]
            }
        }
    }))
}

/// Pivot, then delete the pivot row and column.
pub fn trim(a: &ExactMatrix, p: Pivot) -> Result<ExactMatrix> {
    Ok(pivot(a, p)?.remove_row_col(p.row, p.col))
}

fn check_signs(signs: &[i8], len: usize) -> Result<()> {
    if signs.len() != len {
        return Err(Error::Dimension(format!("{} signs for {len} lines", signs.len())));
    }
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Domain("signs must be ±1".into()));
    }
    Ok(())
}

/// `diag(row_signs) · A · diag(col_signs)`.
pub fn resign(a: &ExactMatrix, row_signs: &[i8], col_signs: &[i8]) -> Result<ExactMatrix> {
    check_signs(row_signs, a.nrows())?;
    check_signs(col_signs, a.ncols())?;
    Ok(ExactMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
        if row_signs[i] * col_signs[j] < 0 {
            -a.get(i, j)
        } else {
            a.get(i, j).clone()
        }
    }))
}

/// Column indices of the nonzero entries of `row`.
pub fn support(row: &[Rat]) -> Vec<usize> {
    row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, _)| j).collect()
}

/// The common absolute value of the nonzero entries of `row`, if they share
/// one; `Some(0)` for a zero row.
pub fn row_magnitude(row: &[Rat]) -> Option<Rat> {
    let mut mag: Option<Rat> = None;
    for x in row.iter().filter(|x| !x.is_zero()) {
        let ax = x.abs();
        match &mag {
            None => mag = Some(ax),
            Some(m) if *m != ax => return None,
            _ => {}
        }
    }
    Some(mag.unwrap_or_else(Rat::zero))
}

/// Every row's nonzero entries share one absolute value.
pub fn is_essentially_pm1(a: &ExactMatrix) -> bool {
    a.rows_iter().all(|r| row_magnitude(r).is_some())
}

/// Divides each row by the common magnitude of its nonzero entries.
pub fn rescale(a: &ExactMatrix) -> Result<ExactMatrix> {
    let mut mags = Vec::with_capacity(a.nrows());
    for (i, r) in a.rows_iter().enumerate() {
        let m = row_magnitude(r).ok_or(Error::NotEssentiallyPm1 { row: i })?;
        mags.push(if m.is_zero() { Rat::one() } else { m });
    }
    Ok(ExactMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a.get(i, j) / &mags[i]))
}

/// The 0,1 matrix marking the −1 entries of a ±1 matrix.
pub fn nega(a: &ExactMatrix) -> Result<ExactMatrix> {
    if !a.is_pm1() {
        return Err(Error::Domain("nega needs a ±1 matrix".into()));
    }
    Ok(a.map(|x| if x.is_negative() { Rat::one() } else { Rat::zero() }))
}

/// A ±1 matrix written as a signed, permuted copy of `[[1, 1ᵀ], [1, J − 2B]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreForm {
    pub core: ExactMatrix,
    pub row_signs: Vec<i8>,
    pub col_signs: Vec<i8>,
    /// Original row index of each row of the normalized matrix.
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl CoreForm {
    /// The original matrix, rebuilt from the core, signs and permutations.
    pub fn reconstruct(&self) -> ExactMatrix {
        let lifted = lift_core(&self.core);
        let (m, n) = (lifted.nrows(), lifted.ncols());
        let mut out = vec![Rat::zero(); m * n];
        for a in 0..m {
            for b in 0..n {
                let (i, j) = (self.row_perm[a], self.col_perm[b]);
                let s = self.row_signs[i] * self.col_signs[j];
                let v = lifted.get(a, b);
                out[i * n + j] = if s < 0 { -v } else { v.clone() };
            }
        }
        ExactMatrix::new(m, n, out).expect("shape")
    }
}

/// `[[1, 1ᵀ], [1, J − 2B]]` for a 0,1 matrix `B`.
pub fn lift_core(b: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(b.nrows() + 1, b.ncols() + 1, |i, j| {
        if i == 0 || j == 0 {
            Rat::one()
        } else {
            Rat::one() - b.get(i - 1, j - 1) * Rat::from_integer(2.into())
        }
    })
}

/// Resigns columns to make the first row all ones, then rows to make the
/// first column all ones, and reads off the core.
pub fn core_of(a: &ExactMatrix) -> Result<CoreForm> {
    if !a.is_pm1() || a.nrows() == 0 || a.ncols() == 0 {
        return Err(Error::Domain("core_of needs a nonempty ±1 matrix".into()));
    }
    let col_signs: Vec<i8> = a.row(0).iter().map(|x| if x.is_negative() { -1 } else { 1 }).collect();
    let row_signs: Vec<i8> = (0..a.nrows())
        .map(|i| {
            if a.get(i, 0).is_negative() == (col_signs[0] < 0) {
                1
            } else {
                -1
            }
        })
        .collect();
    let normal = resign(a, &row_signs, &col_signs)?;
    let rows: Vec<usize> = (1..a.nrows()).collect();
    let cols: Vec<usize> = (1..a.ncols()).collect();
    let core = nega(&normal.submatrix(&rows, &cols))?;
    Ok(CoreForm {
        core,
        row_signs,
        col_signs,
        row_perm: (0..a.nrows()).collect(),
        col_perm: (0..a.ncols()).collect(),
    })
}

fn check_zero_one(b: &ExactMatrix) -> Result<()> {
    if b.is_zero_one() {
        Ok(())
    } else {
        Err(Error::Domain("expected a 0,1 matrix".into()))
    }
}

fn xor(x: &Rat, y: &Rat) -> Rat {
    if x == y {
        Rat::zero()
    } else {
        Rat::one()
    }
}

/// Row `i` kept, every other row replaced by its mod-2 sum with row `i`.
pub fn row_complement(b: &ExactMatrix, i: usize) -> Result<ExactMatrix> {
    check_zero_one(b)?;
    if i >= b.nrows() {
        return Err(Error::Index { index: i, len: b.nrows() });
    }
    Ok(ExactMatrix::from_fn(b.nrows(), b.ncols(), |r, c| {
        if r == i {
            b.get(r, c).clone()
        } else {
            xor(b.get(r, c), b.get(i, c))
        }
    }))
}

/// Column analogue of [`row_complement`].
pub fn col_complement(b: &ExactMatrix, j: usize) -> Result<ExactMatrix> {
    check_zero_one(b)?;
    if j >= b.ncols() {
        return Err(Error::Index { index: j, len: b.ncols() });
    }
    Ok(ExactMatrix::from_fn(b.nrows(), b.ncols(), |r, c| {
        if c == j {
            b.get(r, c).clone()
        } else {
            xor(b.get(r, c), b.get(r, j))
        }
    }))
}

/// `B^{[j]}_{[i]}` where `None` stands for the empty operation.
pub fn complement(b: &ExactMatrix, row: Option<usize>, col: Option<usize>) -> Result<ExactMatrix> {
    let mut out = b.clone();
    if let Some(i) = row {
        out = row_complement(&out, i)?;
    }
    if let Some(j) = col {
        out = col_complement(&out, j)?;
    }
    check_zero_one(&out)?;
    Ok(out)
}

/// All `(m+1)(n+1)` members of the complement orbit, with the identity first;
/// `dedup` keeps one member per permutation class.
pub fn complement_orbit(b: &ExactMatrix, dedup: bool) -> Result<Vec<ExactMatrix>> {
    check_zero_one(b)?;
    let rows = std::iter::once(None).chain((0..b.nrows()).map(Some));
    let mut out: Vec<ExactMatrix> = Vec::new();
    for i in rows {
        for j in std::iter::once(None).chain((0..b.ncols()).map(Some)) {
            let c = complement(b, i, j)?;
            if dedup && out.iter().any(|o| perm_equivalent(o, &c)) {
                continue;
            }
            out.push(c);
        }
    }
    Ok(out)
}

fn sorted_lines(lines: impl Iterator<Item = Vec<Rat>>) -> Vec<Vec<Rat>> {
    let mut v: Vec<Vec<Rat>> = lines
        .map(|mut l| {
            l.sort();
            l
        })
        .collect();
    v.sort();
    v
}

/// Equality up to permutation of rows and columns, decided exactly by
/// trying every column order against the sorted rows.
pub fn perm_equivalent(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return false;
    }
    let row_inv = |m: &ExactMatrix| sorted_lines(m.rows_iter().map(|r| r.to_vec()));
    let col_inv = |m: &ExactMatrix| sorted_lines((0..m.ncols()).map(|j| m.column(j)));
    if row_inv(a) != row_inv(b) || col_inv(a) != col_inv(b) {
        return false;
    }
    let mut target: Vec<Vec<Rat>> = b.rows_iter().map(|r| r.to_vec()).collect();
    target.sort();
    permutations(a.ncols()).into_iter().any(|p| {
        let mut rows: Vec<Vec<Rat>> = a
            .rows_iter()
            .map(|r| p.iter().map(|&j| r[j].clone()).collect())
            .collect();
        rows.sort();
        rows == target
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(rows)
    }

    #[test]
    fn pivot_and_trim_examples() {
        let a = m(&[&[1, 1], &[-1, 1]]);
        assert_eq!(pivot(&a, Pivot::new(0, 0)).unwrap(), m(&[&[1, 1], &[0, 2]]));
        assert_eq!(trim(&a, Pivot::new(0, 0)).unwrap(), m(&[&[2]]));
        assert_eq!(pivot(&m(&[&[-2, 4]]), Pivot::new(0, 0)).unwrap(), m(&[&[1, -2]]));
        assert_eq!(
            pivot(&m(&[&[0, 1]]), Pivot::new(0, 0)),
            Err(Error::ZeroPivot { row: 0, col: 0 })
        );
        let t = trim(&m(&[&[3]]), Pivot::new(0, 0)).unwrap();
        assert_eq!((t.nrows(), t.ncols()), (0, 0));
    }

    #[test]
    fn rescale_and_essential_test() {
        let a = m(&[&[2, -2, 0], &[0, 0, 3]]);
        assert_eq!(rescale(&a).unwrap(), m(&[&[1, -1, 0], &[0, 0, 1]]));
        assert_eq!(rescale(&m(&[&[2]])).unwrap(), m(&[&[1]]));
        assert!(is_essentially_pm1(&m(&[&[2, -2], &[1, 0]])));
        assert!(!is_essentially_pm1(&m(&[&[1, 2]])));
        assert_eq!(rescale(&m(&[&[1, 2]])), Err(Error::NotEssentiallyPm1 { row: 0 }));
        let frac = ExactMatrix::from_rows(vec![vec![rat(1, 2), rat(-1, 2)]]).unwrap();
        assert_eq!(rescale(&frac).unwrap(), m(&[&[1, -1]]));
    }

    #[test]
    fn nega_examples() {
        assert_eq!(nega(&m(&[&[1, -1], &[-1, 1]])).unwrap(), m(&[&[0, 1], &[1, 0]]));
        assert_eq!(nega(&m(&[&[1, 1], &[1, 1]])).unwrap(), ExactMatrix::zeros(2, 2));
        assert!(nega(&m(&[&[0, 1]])).is_err());
    }

    #[test]
    fn core_examples() {
        let c4 = m(&[&[1, 1, 1, 1], &[1, -1, -1, 1], &[1, -1, 1, -1], &[1, 1, -1, -1]]);
        let cf = core_of(&c4).unwrap();
        assert_eq!(cf.core, m(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(cf.reconstruct(), c4);
        assert_eq!(core_of(&m(&[&[1, 1], &[1, 1]])).unwrap().core, m(&[&[0]]));
        assert_eq!(core_of(&m(&[&[1, 1], &[1, -1]])).unwrap().core, m(&[&[1]]));
        let signed = m(&[&[-1, 1], &[1, 1]]);
        assert_eq!(core_of(&signed).unwrap().reconstruct(), signed);
    }

    #[test]
    fn complement_examples() {
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(row_complement(&b, 0).unwrap(), m(&[&[0, 1], &[1, 1]]));
        assert_eq!(row_complement(&row_complement(&b, 1).unwrap(), 1).unwrap(), b);
        assert!(row_complement(&b, 2).is_err());
        let one = m(&[&[1]]);
        let raw = complement_orbit(&one, false).unwrap();
        assert_eq!(raw.len(), 4);
        assert!(raw.iter().all(|x| *x == one));
        assert_eq!(complement_orbit(&one, true).unwrap().len(), 1);
        assert!(row_complement(&m(&[&[2]]), 0).is_err());
    }

    #[test]
    fn perm_equivalence_is_exact() {
        let a = m(&[&[1, 0, 0], &[0, 1, 1]]);
        let b = m(&[&[1, 1, 0], &[0, 0, 1]]);
        assert!(perm_equivalent(&a, &b));
        // Same row and column multisets but not permutation equivalent.
        let c = m(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let d = m(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]]);
        assert!(!perm_equivalent(&c, &d));
        assert!(!perm_equivalent(&a, &m(&[&[1, 0], &[0, 1]])));
    }
}
