use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int::{bareiss_big, rank_big, IntMatrix};
use super::subsets::for_each_combination;
use super::Rat;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals. Values are never mutated after
/// construction; every transform returns a new matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Builds from rational rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(ExactMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal rows; panics on ragged input (test and fixture helper).
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        ExactMatrix::from_fn(rows.len(), cols, |i, j| {
            let r = rows[i].as_ref();
            assert_eq!(r.len(), cols, "ragged integer rows");
            Rat::from_integer(r[j].into())
        })
    }

    /// Empty matrix with `cols` columns and no rows.
    pub fn empty(cols: usize) -> Self {
        ExactMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix::from_fn(rows, cols, |_, _| Rat::zero())
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Rat]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        ExactMatrix::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        ExactMatrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Copy without row `i` and column `j`.
    pub fn remove_row_col(&self, i: usize, j: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&rows, &cols)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::Dimension(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix::new(self.rows + other.rows, cols, data)
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        self.map(|x| x * s)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rat::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        }))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Every entry is 0, 1 or −1.
    pub fn is_zero_pm1(&self) -> bool {
        self.data.iter().all(|x| x.is_zero() || (x.is_integer() && x.abs().is_one()))
    }

    /// Every entry is 1 or −1.
    pub fn is_pm1(&self) -> bool {
        self.data.iter().all(|x| x.is_integer() && x.abs().is_one())
    }

    /// Every entry is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|x| x.is_zero() || x.is_one())
    }

    /// Conversion to the machine-integer kernel; `None` when an entry is not
    /// an integer or does not fit in `i64`.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            if !x.is_integer() {
                return None;
            }
            data.push(x.to_integer().to_i64()?);
        }
        Some(IntMatrix::new(self.rows, self.cols, data))
    }

    /// Each row multiplied by the lcm of its denominators and divided by the
    /// gcd of its numerators: a primitive integer row spanning the same line.
    /// Zero rows stay zero.
    pub fn primitive_rows(&self) -> ExactMatrix {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            out.extend(primitive_row(self.row(i)));
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: out.into_iter().map(Rat::from_integer).collect(),
        }
    }

    /// Integer rows obtained by clearing denominators row by row, along with
    /// the per-row multipliers used.
    fn cleared_rows(&self) -> (Vec<BigInt>, BigInt) {
        let mut out = Vec::with_capacity(self.data.len());
        let mut total = BigInt::one();
        for i in 0..self.rows {
            let l = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for x in self.row(i) {
                out.push(x.numer() * (&l / x.denom()));
            }
            total *= l;
        }
        (out, total)
    }

    /// Exact determinant via fraction-free elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (mut ints, scale) = self.cleared_rows();
        let d = bareiss_big(&mut ints, self.rows);
        Ok(Rat::new(d, scale))
    }

    pub fn rank(&self) -> usize {
        let (mut ints, _) = self.cleared_rows();
        rank_big(&mut ints, self.rows, self.cols)
    }

    pub fn has_full_row_rank(&self) -> bool {
        self.rank() == self.rows
    }

    /// Exact inverse by Gauss–Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = ExactMatrix::identity(n).data;
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * n + c].is_zero()).ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[c * n + c].clone();
            for j in 0..n {
                a[c * n + j] = &a[c * n + j] / &piv;
                inv[c * n + j] = &inv[c * n + j] / &piv;
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for j in 0..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv[c * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Ok(ExactMatrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }

    /// Lexicographically first set of `rank` linearly independent columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        for j in 0..self.cols {
            let mut trial = chosen.clone();
            trial.push(j);
            if self.select_cols(&trial).rank() == trial.len() {
                chosen = trial;
                if chosen.len() == self.rows {
                    break;
                }
            }
        }
        chosen
    }
}

/// The primitive integer vector on the ray of `row` (zero stays zero).
pub fn primitive_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// An ordered selection of rows of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSet {
    matrix: ExactMatrix,
    selected: Vec<usize>,
}

impl RowSet {
    pub fn new(matrix: ExactMatrix, selected: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; matrix.nrows()];
        for &i in &selected {
            if i >= matrix.nrows() {
                return Err(Error::Index {
                    index: i,
                    len: matrix.nrows(),
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Domain(format!("row {i} selected twice")));
            }
        }
        Ok(RowSet { matrix, selected })
    }

    /// All rows of `matrix`, in order.
    pub fn all(matrix: ExactMatrix) -> Self {
        let selected = (0..matrix.nrows()).collect();
        RowSet { matrix, selected }
    }

    pub fn source(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn indices(&self) -> &[usize] {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    /// The matrix whose rows are the selected rows.
    pub fn to_matrix(&self) -> ExactMatrix {
        self.matrix.select_rows(&self.selected)
    }
}

/// Folds over the absolute values of all maximal (rows×rows) minors of an
/// integer matrix, visiting column subsets in lexicographic order.
pub fn fold_maximal_minors<T>(
    m: &ExactMatrix,
    init: T,
    mut f: impl FnMut(T, BigInt) -> ControlFlow<T, T>,
) -> T {
    let k = m.nrows();
    let mut acc = Some(init);
    if let Some(im) = m.to_int() {
        let rows: Vec<usize> = (0..k).collect();
        let _ = for_each_combination(m.ncols(), k, |cols| {
            let d = BigInt::from(im.minor(&rows, cols).abs());
            match f(acc.take().unwrap(), d) {
                ControlFlow::Continue(v) => {
                    acc = Some(v);
                    ControlFlow::Continue(())
                }
                ControlFlow::Break(v) => {
                    acc = Some(v);
                    ControlFlow::Break(())
                }
            }
        });
    } else {
        let _ = for_each_combination(m.ncols(), k, |cols| {
            let d = m.select_cols(cols).det().expect("square").to_integer().abs();
            match f(acc.take().unwrap(), d) {
                ControlFlow::Continue(v) => {
                    acc = Some(v);
                    ControlFlow::Continue(())
                }
                ControlFlow::Break(v) => {
                    acc = Some(v);
                    ControlFlow::Break(())
                }
            }
        });
    }
    acc.unwrap()
}

/// Greatest common divisor of the absolute values of all maximal minors of
/// the selected rows. Zero iff the rows are dependent; 1 for the empty set.
pub fn gcddet(rows: &RowSet) -> Result<BigInt> {
    gcddet_matrix(&rows.to_matrix())
}

pub fn gcddet_matrix(m: &ExactMatrix) -> Result<BigInt> {
    if !m.is_integral() {
        return Err(Error::Domain("gcddet needs integer entries".into()));
    }
    if m.nrows() == 0 {
        return Ok(BigInt::one());
    }
    if m.nrows() > m.ncols() {
        return Ok(BigInt::zero());
    }
    Ok(fold_maximal_minors(m, BigInt::zero(), |g, d| {
        let g = g.gcd(&d);
        if g.is_one() {
            ControlFlow::Break(g)
        } else {
            ControlFlow::Continue(g)
        }
    }))
}
