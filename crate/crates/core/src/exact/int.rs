//! Machine-integer kernel for the exhaustive predicates.
//!
//! Fraction-free (Bareiss) elimination keeps every intermediate value equal to
//! a minor of the input, so `i128` is ample for 0,±1 matrices at desk scale.
//! Overflow is detected and retried with arbitrary precision.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ExactMatrix, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

const STACK_DIM: usize = 12;

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "IntMatrix data length");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix::new(rows.len(), cols, data)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix::new(rows.len(), self.cols, data)
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &c in cols {
                data.push(self.get(i, c));
            }
        }
        IntMatrix::new(self.rows, cols.len(), data)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        IntMatrix::new(self.cols, self.rows, data)
    }

    /// Determinant of the submatrix on `rows` × `cols` (equal lengths).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> i128 {
        let k = rows.len();
        debug_assert_eq!(k, cols.len());
        if k == 0 {
            return 1;
        }
        if k == 1 {
            return self.get(rows[0], cols[0]) as i128;
        }
        if k == 2 {
            let (a, b) = (self.get(rows[0], cols[0]) as i128, self.get(rows[0], cols[1]) as i128);
            let (c, d) = (self.get(rows[1], cols[0]) as i128, self.get(rows[1], cols[1]) as i128);
            return a * d - b * c;
        }
        let fill = |buf: &mut [i128]| {
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in cols.iter().enumerate() {
                    buf[a * k + b] = self.get(r, c) as i128;
                }
            }
        };
        let fast = if k <= STACK_DIM {
            let mut buf = [0i128; STACK_DIM * STACK_DIM];
            fill(&mut buf[..k * k]);
            bareiss_i128(&mut buf[..k * k], k)
        } else {
            let mut buf = vec![0i128; k * k];
            fill(&mut buf);
            bareiss_i128(&mut buf, k)
        };
        match fast {
            Some(d) => d,
            None => {
                let mut buf: Vec<BigInt> = Vec::with_capacity(k * k);
                for &r in rows {
                    for &c in cols {
                        buf.push(BigInt::from(self.get(r, c)));
                    }
                }
                bareiss_big(&mut buf, k)
                    .to_i128()
                    .expect("minor exceeds the i128 range")
            }
        }
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(&idx, &idx)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<BigInt> = self.data.iter().map(|&x| BigInt::from(x)).collect();
        rank_big(&mut m, self.rows, self.cols)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| Rat::from_integer(self.get(i, j).into()))
    }

    pub fn is_zero_pm1(&self) -> bool {
        self.data.iter().all(|x| x.abs() <= 1)
    }
}

/// Bareiss elimination in place on a k×k row-major buffer; `None` on overflow.
pub fn bareiss_i128(m: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return Some(0);
            };
            for j in k..n {
                m.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let p = m[k * n + k];
        for i in k + 1..n {
            let lead = m[i * n + k];
            for j in k + 1..n {
                let v = m[i * n + j]
                    .checked_mul(p)?
                    .checked_sub(lead.checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
        }
        prev = p;
    }
    Some(sign * m[n * n - 1])
}

/// Arbitrary-precision Bareiss determinant.
pub fn bareiss_big(m: &mut [BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::from(1);
    }
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in k..n {
                m.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let p = m[k * n + k].clone();
        for i in k + 1..n {
            let lead = m[i * n + k].clone();
            for j in k + 1..n {
                let v = &m[i * n + j] * &p - &lead * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = p;
    }
    let d = m[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Fraction-free rank of a rows×cols buffer (destroyed).
pub fn rank_big(m: &mut [BigInt], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.swap(p * cols + j, rank * cols + j);
            }
        }
        let piv = m[rank * cols + c].clone();
        for i in rank + 1..rows {
            let lead = m[i * cols + c].clone();
            for j in 0..cols {
                let v = &m[i * cols + j] * &piv - &lead * &m[rank * cols + j];
                m[i * cols + j] = v / &prev;
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}
