//! Recognition predicates: equimodularity, total unimodularity, total
//! equimodularity, minimal non-TU matrices and te-brick typing.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::calculus::{self, complement_orbit, rescale, support, Pivot};
use crate::error::{Error, Result};
use crate::exact::subsets::{combinations, for_each_combination, mask_of};
use crate::exact::{ExactMatrix, IntMatrix, Rat, RowSet};

/// Minor evaluation over either machine integers or exact rationals.
enum Kernel {
    Int(IntMatrix),
    Exact(ExactMatrix),
}

impl Kernel {
    fn new(a: &ExactMatrix) -> Self {
        match a.to_int() {
            Some(im) => Kernel::Int(im),
            None => Kernel::Exact(a.clone()),
        }
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Rat {
        match self {
            Kernel::Int(m) => Rat::from_integer(BigInt::from(m.minor(rows, cols))),
            Kernel::Exact(m) => m.submatrix(rows, cols).det().expect("square"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Equi {
    Dependent,
    Equimodular(Rat),
    Not,
}

impl Kernel {
    /// Columns where at least one of `rows` is nonzero; all other columns
    /// only contribute vanishing minors.
    fn support_of(&self, rows: &[usize]) -> Vec<usize> {
        match self {
            Kernel::Int(m) => (0..m.ncols())
                .filter(|&j| rows.iter().any(|&i| m.get(i, j) != 0))
                .collect(),
            Kernel::Exact(m) => (0..m.ncols())
                .filter(|&j| rows.iter().any(|&i| !m.get(i, j).is_zero()))
                .collect(),
        }
    }
}

/// Classifies the rows `rows` by their maximal minors.
fn equi_status(k: &Kernel, ncols: usize, rows: &[usize]) -> Equi {
    let size = rows.len();
    if size == 0 {
        return Equi::Equimodular(Rat::one());
    }
    if size > ncols {
        return Equi::Dependent;
    }
    let supp = k.support_of(rows);
    if size > supp.len() {
        return Equi::Dependent;
    }
    let mut cols = vec![0usize; size];
    match k {
        Kernel::Int(m) => {
            let mut val: i128 = 0;
            let broke = for_each_combination(supp.len(), size, |pos| {
                for (c, &p) in cols.iter_mut().zip(pos) {
                    *c = supp[p];
                }
                let d = m.minor(rows, &cols).abs();
                if d != 0 {
                    if val == 0 {
                        val = d;
                    } else if val != d {
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
            if broke.is_break() {
                Equi::Not
            } else if val == 0 {
                Equi::Dependent
            } else {
                Equi::Equimodular(Rat::from_integer(BigInt::from(val)))
            }
        }
        Kernel::Exact(_) => {
            let mut val = Rat::zero();
            let broke = for_each_combination(supp.len(), size, |pos| {
                for (c, &p) in cols.iter_mut().zip(pos) {
                    *c = supp[p];
                }
                let d = k.minor(rows, &cols).abs();
                if !d.is_zero() {
                    if val.is_zero() {
                        val = d;
                    } else if val != d {
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
            if broke.is_break() {
                Equi::Not
            } else if val.is_zero() {
                Equi::Dependent
            } else {
                Equi::Equimodular(val)
            }
        }
    }
}

fn all_rows(a: &ExactMatrix) -> Vec<usize> {
    (0..a.nrows()).collect()
}

/// Full row rank with all nonzero maximal minors of equal absolute value.
pub fn is_equimodular_matrix(a: &ExactMatrix) -> bool {
    matches!(
        equi_status(&Kernel::new(a), a.ncols(), &all_rows(a)),
        Equi::Equimodular(_)
    )
}

pub fn is_equimodular(s: &RowSet) -> bool {
    is_equimodular_matrix(&s.to_matrix())
}

/// The common absolute value of the nonzero maximal minors.
pub fn eqdet_matrix(a: &ExactMatrix) -> Result<Rat> {
    match equi_status(&Kernel::new(a), a.ncols(), &all_rows(a)) {
        Equi::Equimodular(v) => Ok(v),
        Equi::Dependent => Err(Error::RankDeficient { rank: a.rank(), rows: a.nrows() }),
        Equi::Not => Err(Error::Domain("rows are not equimodular".into())),
    }
}

pub fn eqdet(s: &RowSet) -> Result<Rat> {
    eqdet_matrix(&s.to_matrix())
}

/// Equimodular with equideterminant 1.
pub fn is_unimodular_set(s: &RowSet) -> bool {
    matches!(eqdet(s), Ok(v) if v.is_one())
}

/// A square submatrix, addressed by row and column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmatrixWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: Rat,
}

fn is_unit_or_zero(x: &Rat) -> bool {
    x.is_zero() || (x.is_integer() && x.abs().is_one())
}

/// First square submatrix of size at most `max_k` (size, then row subset,
/// then column subset, lexicographically) whose determinant is not 0 or ±1.
pub fn tu_witness_up_to(a: &ExactMatrix, max_k: usize) -> Option<SubmatrixWitness> {
    if max_k == 0 {
        return None;
    }
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if !is_unit_or_zero(a.get(i, j)) {
                return Some(SubmatrixWitness {
                    rows: vec![i],
                    cols: vec![j],
                    det: a.get(i, j).clone(),
                });
            }
        }
    }
    let im = a.to_int().expect("0,±1 entries");
    let top = max_k.min(a.nrows()).min(a.ncols());
    for k in 2..=top {
        let found = for_each_combination(a.nrows(), k, |rows| {
            for_each_combination(a.ncols(), k, |cols| {
                let d = im.minor(rows, cols);
                if d.abs() > 1 {
                    ControlFlow::Break(SubmatrixWitness {
                        rows: rows.to_vec(),
                        cols: cols.to_vec(),
                        det: Rat::from_integer(BigInt::from(d)),
                    })
                } else {
                    ControlFlow::Continue(())
                }
            })
        });
        if let ControlFlow::Break(w) = found {
            return Some(w);
        }
    }
    None
}

/// Verdict of [`is_totally_unimodular`]; the witness is a smallest
/// violating submatrix, hence minimally non-TU.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuVerdict {
    pub witness: Option<SubmatrixWitness>,
}

impl TuVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn is_totally_unimodular(a: &ExactMatrix) -> TuVerdict {
    TuVerdict { witness: tu_witness_up_to(a, usize::MAX) }
}

pub fn is_tu(a: &ExactMatrix) -> bool {
    is_totally_unimodular(a).holds()
}

/// Rows `rows` of a 0,±1 matrix: is some square submatrix using all of them
/// non-unimodular?
pub fn rows_have_full_bad_minor(im: &IntMatrix, rows: &[usize]) -> bool {
    let k = rows.len();
    let supp: Vec<usize> = (0..im.ncols())
        .filter(|&j| rows.iter().any(|&i| im.get(i, j) != 0))
        .collect();
    if k > supp.len() {
        return false;
    }
    let mut cols = vec![0usize; k];
    for_each_combination(supp.len(), k, |pos| {
        for (c, &p) in cols.iter_mut().zip(pos) {
            *c = supp[p];
        }
        if im.minor(rows, &cols).abs() > 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_break()
}

/// Necessary conditions for a 0,±1 square matrix to be minimally non-TU:
/// every row and column has an even number of nonzeros and the entry sum is
/// 2 mod 4.
pub fn camion_conditions(a: &IntMatrix) -> bool {
    let n = a.nrows();
    if n != a.ncols() {
        return false;
    }
    let rows_even = (0..n).all(|i| a.row(i).iter().filter(|&&x| x != 0).count() % 2 == 0);
    let cols_even = (0..n).all(|j| (0..n).filter(|&i| a.get(i, j) != 0).count() % 2 == 0);
    let sum: i64 = (0..n).flat_map(|i| a.row(i).iter().copied()).sum();
    rows_even && cols_even && sum.rem_euclid(4) == 2
}

/// Not TU while every proper submatrix is.
pub fn is_min_non_tu(a: &ExactMatrix) -> bool {
    if !a.is_square() || a.nrows() == 0 {
        return false;
    }
    let n = a.nrows();
    if a.is_zero_pm1() {
        let im = a.to_int().expect("0,±1");
        if !camion_conditions(&im) || im.det().abs() != 2 {
            return false;
        }
        return tu_witness_up_to(a, n - 1).is_none();
    }
    if n == 1 {
        return true;
    }
    match tu_witness_up_to(a, n) {
        Some(w) => w.rows.len() == n,
        None => false,
    }
}

/// Verdict of a total-equimodularity test; the witness is the first failing
/// independent row subset in size-then-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeVerdict {
    pub witness: Option<Vec<usize>>,
}

impl TeVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Brute force over all row subsets; supersets of dependent subsets are
/// skipped without evaluating minors.
pub fn is_totally_equimodular(a: &ExactMatrix) -> TeVerdict {
    let prim = a.primitive_rows();
    let kernel = Kernel::new(&prim);
    let m = a.nrows();
    assert!(m <= 64, "row subsets are tracked as 64-bit masks");
    let mut dependent: Vec<u64> = Vec::new();
    for k in 1..=m.min(a.ncols() + 1) {
        let found = for_each_combination(m, k, |rows| {
            let mask = mask_of(rows);
            if dependent.iter().any(|&d| d & mask == d) {
                return ControlFlow::Continue(());
            }
            match equi_status(&kernel, prim.ncols(), rows) {
                Equi::Dependent => dependent.push(mask),
                Equi::Not => return ControlFlow::Break(rows.to_vec()),
                Equi::Equimodular(_) => {}
            }
            ControlFlow::Continue(())
        });
        if let ControlFlow::Break(w) = found {
            return TeVerdict { witness: Some(w) };
        }
    }
    TeVerdict { witness: None }
}

pub fn is_te(a: &ExactMatrix) -> bool {
    is_totally_equimodular(a).holds()
}

/// Total equimodularity through the pivot/trim characterization: rows are
/// rescaled to 0,±1, and for the first nonzero row `r` the matrix is TE iff
/// the matrix without `r` is TE and every trim along the support of `r` is.
pub fn is_te_by_trims(a: &ExactMatrix) -> bool {
    let mut memo: HashMap<ExactMatrix, bool> = HashMap::new();
    te_by_trims(a, &mut memo)
}

fn te_by_trims(a: &ExactMatrix, memo: &mut HashMap<ExactMatrix, bool>) -> bool {
    let Ok(scaled) = rescale(a) else {
        return false;
    };
    let keep: Vec<usize> = (0..scaled.nrows())
        .filter(|&i| scaled.row(i).iter().any(|x| !x.is_zero()))
        .collect();
    if keep.is_empty() {
        return true;
    }
    let reduced = scaled.select_rows(&keep);
    if let Some(&v) = memo.get(&reduced) {
        return v;
    }
    let rest: Vec<usize> = (1..reduced.nrows()).collect();
    let verdict = te_by_trims(&reduced.select_rows(&rest), memo)
        && support(reduced.row(0))
            .into_iter()
            .all(|j| te_by_trims(&calculus::trim(&reduced, Pivot::new(0, j)).expect("nonzero"), memo));
    memo.insert(reduced, verdict);
    verdict
}

/// Whether every trim of `a` along the support of the 0,±1 row `row` is
/// equimodular (the empty matrix counts as equimodular).
pub fn check_trim_equimodularity(a: &ExactMatrix, row: usize) -> Result<bool> {
    if row >= a.nrows() {
        return Err(Error::Index { index: row, len: a.nrows() });
    }
    if !a.row(row).iter().all(is_unit_or_zero) {
        return Err(Error::Domain(format!("row {row} is not 0,±1")));
    }
    let rank = a.rank();
    if rank < a.nrows() {
        return Err(Error::RankDeficient { rank, rows: a.nrows() });
    }
    Ok(support(a.row(row))
        .into_iter()
        .all(|j| is_equimodular_matrix(&calculus::trim(a, Pivot::new(row, j)).expect("nonzero"))))
}

fn check_zero_one(b: &ExactMatrix) -> Result<()> {
    if b.is_zero_one() {
        Ok(())
    } else {
        Err(Error::Domain("expected a 0,1 matrix".into()))
    }
}

/// Every member of the complement orbit is TU.
pub fn is_complement_tu(b: &ExactMatrix) -> Result<bool> {
    check_zero_one(b)?;
    Ok(complement_orbit(b, false)?.iter().all(is_tu))
}

/// Every member of the complement orbit is minimally non-TU.
pub fn is_complement_min_non_tu(b: &ExactMatrix) -> Result<bool> {
    check_zero_one(b)?;
    if !b.is_square() {
        return Ok(false);
    }
    Ok(complement_orbit(b, false)?.iter().all(is_min_non_tu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrickTag {
    TuSet,
    TeLace,
    ThinInterlace,
    ThickInterlace,
}

impl BrickTag {
    pub fn name(self) -> &'static str {
        match self {
            BrickTag::TuSet => "tu-set",
            BrickTag::TeLace => "te-lace",
            BrickTag::ThinInterlace => "thin te-interlace",
            BrickTag::ThickInterlace => "thick te-interlace",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickType {
    pub tag: BrickTag,
    pub size: usize,
    pub equideterminant: BigInt,
}

fn integral_eqdet(a: &ExactMatrix) -> Result<BigInt> {
    let v = eqdet_matrix(a)?;
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Domain("non-integral equideterminant".into()))
    }
}

pub fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// Classifies a linearly independent 0,±1 row set as a te-brick; `None`
/// when it is not one.
pub fn brick_type(s: &RowSet) -> Result<Option<BrickType>> {
    brick_type_matrix(&s.to_matrix())
}

pub fn brick_type_matrix(a: &ExactMatrix) -> Result<Option<BrickType>> {
    if !a.is_zero_pm1() {
        return Err(Error::Domain("brick rows must be 0,±1".into()));
    }
    let rank = a.rank();
    if rank < a.nrows() {
        return Err(Error::RankDeficient { rank, rows: a.nrows() });
    }
    let size = a.nrows();
    if is_tu(a) {
        return Ok(Some(BrickType {
            tag: BrickTag::TuSet,
            size,
            equideterminant: integral_eqdet(a)?,
        }));
    }
    let proper_tu = combinations(size, size - 1)
        .iter()
        .all(|rows| is_tu(&a.select_rows(rows)));
    if proper_tu {
        if !is_te(a) {
            return Ok(None);
        }
        return Ok(Some(BrickType {
            tag: BrickTag::TeLace,
            size,
            equideterminant: integral_eqdet(a)?,
        }));
    }
    let supp = support(a.row(0));
    let same_support = a.rows_iter().all(|r| support(r) == supp);
    if !same_support || !is_te(a) {
        return Ok(None);
    }
    let d = integral_eqdet(a)?;
    let tag = if d == pow2(size - 1) {
        BrickTag::ThinInterlace
    } else if d == pow2(size) {
        BrickTag::ThickInterlace
    } else {
        return Ok(None);
    };
    Ok(Some(BrickType { tag, size, equideterminant: d }))
}

/// Small integer conversion used for reporting.
pub fn rat_to_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}
