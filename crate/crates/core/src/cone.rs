//! Simplicial cones spanned by linearly independent integer rows, with
//! coordinates relative to the generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rat};

/// Integer vectors are small at desk scale; `i64` keeps hashing cheap.
pub type IntVec = Vec<i64>;

/// A simplicial cone whose generators are the rows of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeCone {
    generators: ExactMatrix,
    int_rows: Vec<IntVec>,
    frame: Frame,
}

/// λ-coordinates: `x = Σ λ_i a_i`, read off through an invertible maximal
/// square submatrix on the columns `cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub cols: Vec<usize>,
    /// Inverse of the generators restricted to `cols`.
    pub inverse: ExactMatrix,
    /// Smallest positive integer clearing every denominator of `inverse`.
    pub denominator: i64,
}

impl Frame {
    pub fn new(generators: &ExactMatrix) -> Result<Frame> {
        let rank = generators.rank();
        if rank < generators.nrows() {
            return Err(Error::RankDeficient { rank, rows: generators.nrows() });
        }
        let cols = generators.independent_columns();
        let inverse = generators.select_cols(&cols).inverse()?;
        let q = inverse
            .entries()
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let denominator = q
            .to_i64()
            .ok_or_else(|| Error::Unsupported("zonotope grid step too large".into()))?;
        Ok(Frame { cols, inverse, denominator })
    }

    /// Coefficients `λ` with `x = Σ λ_i a_i`, or `None` if `x` is outside the
    /// linear span of `generators`.
    pub fn lambda(&self, generators: &ExactMatrix, x: &[Rat]) -> Option<Vec<Rat>> {
        let k = generators.nrows();
        let lam: Vec<Rat> = (0..k)
            .map(|i| {
                self.cols
                    .iter()
                    .enumerate()
                    .fold(Rat::zero(), |acc, (c, &col)| acc + &x[col] * self.inverse.get(c, i))
            })
            .collect();
        let back = combine(generators, &lam);
        (back.as_slice() == x).then_some(lam)
    }
}

/// `Σ λ_i · row_i`.
pub fn combine(rows: &ExactMatrix, lam: &[Rat]) -> Vec<Rat> {
    (0..rows.ncols())
        .map(|j| {
            lam.iter()
                .enumerate()
                .filter(|(_, l)| !l.is_zero())
                .fold(Rat::zero(), |acc, (i, l)| acc + l * rows.get(i, j))
        })
        .collect()
}

pub fn to_rat_vec(x: &[i64]) -> Vec<Rat> {
    x.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect()
}

/// The integer vector of an integral rational vector.
pub fn to_int_vec(x: &[Rat]) -> Option<IntVec> {
    x.iter()
        .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
        .collect()
}

impl TeCone {
    /// Validates integrality, primitivity and linear independence.
    pub fn new(generators: ExactMatrix) -> Result<TeCone> {
        if generators.nrows() == 0 {
            return Err(Error::Domain("a cone needs at least one generator".into()));
        }
        let mut int_rows = Vec::with_capacity(generators.nrows());
        for (i, r) in generators.rows_iter().enumerate() {
            let row = to_int_vec(r).ok_or_else(|| {
                Error::Domain(format!("generator {i} is not a machine-size integer vector"))
            })?;
            let g = row.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(Error::Domain(format!("generator {i} is not primitive")));
            }
            int_rows.push(row);
        }
        let frame = Frame::new(&generators)?;
        Ok(TeCone { generators, int_rows, frame })
    }

    pub fn generators(&self) -> &ExactMatrix {
        &self.generators
    }

    pub fn generator_rows(&self) -> &[IntVec] {
        &self.int_rows
    }

    /// Number of generators, which is the cone's dimension.
    pub fn dim(&self) -> usize {
        self.generators.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.ncols()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn lambda(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        self.frame.lambda(&self.generators, x)
    }

    pub fn lambda_int(&self, x: &[i64]) -> Option<Vec<Rat>> {
        self.lambda(&to_rat_vec(x))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        matches!(self.lambda_int(x), Some(l) if l.iter().all(|v| !v.is_negative()))
    }
}
