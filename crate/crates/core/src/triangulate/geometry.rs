//! Point configurations in scaled λ-coordinates of a simplicial cone.
//!
//! Every point `p` is stored as the integer vector `D·λ(p)` for a common
//! denominator `D`, so cell determinants, facet sides and barycentric
//! coordinates reduce to machine-integer arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cone::{IntVec, TeCone};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Rat};
use crate::lp;

#[derive(Clone, Debug)]
pub struct PointConfig {
    pub dim: usize,
    pub scale: i64,
    pub coords: Vec<Vec<i64>>,
}

/// Inverse data of one cell: `det · γ(q) = qᵀ adj` gives the coordinates of a
/// point `q` in the basis formed by the cell's points.
#[derive(Clone, Debug)]
pub struct CellFrame {
    pub det: i128,
    adj: Vec<Vec<i128>>,
}

impl CellFrame {
    /// `det · γ(q)`.
    pub fn scaled(&self, q: &[i64]) -> Vec<i128> {
        let k = self.adj.len();
        (0..k)
            .map(|v| (0..k).map(|j| q[j] as i128 * self.adj[j][v]).sum())
            .collect()
    }

    /// Signs of the coordinates `γ(q)`.
    pub fn signs(&self, q: &[i64]) -> Vec<i32> {
        let s = self.det.signum() as i32;
        self.scaled(q).into_iter().map(|x| x.signum() as i32 * s).collect()
    }

    /// Exact coordinates `γ(q)`.
    pub fn coords(&self, q: &[i64]) -> Vec<Rat> {
        let d = BigInt::from(self.det);
        self.scaled(q)
            .into_iter()
            .map(|x| Rat::new(BigInt::from(x), d.clone()))
            .collect()
    }
}

impl PointConfig {
    /// Expresses `points` in λ-coordinates of `cone`; every point must lie in
    /// the linear span of the generators.
    pub fn new(cone: &TeCone, points: &[IntVec]) -> Result<PointConfig> {
        let mut lams = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != cone.ambient_dim() {
                return Err(Error::Dimension(format!(
                    "point of length {} in a cone of ambient dimension {}",
                    p.len(),
                    cone.ambient_dim()
                )));
            }
            lams.push(cone.lambda_int(p).ok_or(Error::OutsideCone)?);
        }
        let scale = lams
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
            .to_i64()
            .ok_or_else(|| Error::Unsupported("λ-denominator too large".into()))?;
        let coords = lams
            .iter()
            .map(|lam| {
                lam.iter()
                    .map(|x| (x * Rat::from_integer(scale.into())).to_integer().to_i64())
                    .collect::<Option<Vec<i64>>>()
                    .ok_or_else(|| Error::Unsupported("λ-coordinate too large".into()))
            })
            .collect::<Result<_>>()?;
        Ok(PointConfig { dim: cone.dim(), scale, coords })
    }

    fn cell_matrix(&self, cell: &[usize]) -> IntMatrix {
        let rows: Vec<&[i64]> = cell.iter().map(|&p| self.coords[p].as_slice()).collect();
        IntMatrix::from_rows(&rows)
    }

    pub fn det(&self, cell: &[usize]) -> i128 {
        self.cell_matrix(cell).det()
    }

    pub fn frame(&self, cell: &[usize]) -> CellFrame {
        let m = self.cell_matrix(cell);
        let k = self.dim;
        let det = m.det();
        let all: Vec<usize> = (0..k).collect();
        let mut adj = vec![vec![0i128; k]; k];
        for (j, row) in adj.iter_mut().enumerate() {
            for (v, entry) in row.iter_mut().enumerate() {
                // adj[j][v] = (−1)^{j+v} · minor(M without row v, without column j)
                let rows: Vec<usize> = all.iter().copied().filter(|&r| r != v).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
                let minor = m.minor(&rows, &cols);
                *entry = if (j + v) % 2 == 0 { minor } else { -minor };
            }
        }
        CellFrame { det, adj }
    }

    /// Sum of λ-coordinates times the scale.
    pub fn height(&self, p: usize) -> i64 {
        self.coords[p].iter().sum()
    }

    /// Volume of a cell's cross-section with `Σλ = 1`, relative to the
    /// cross-section of the whole cone.
    pub fn normalized_volume(&self, cell: &[usize]) -> Rat {
        let d = self.det(cell).abs();
        let denom = cell
            .iter()
            .fold(BigInt::one(), |acc, &p| acc * BigInt::from(self.height(p)));
        Rat::new(BigInt::from(d), denom)
    }

    /// Whether all points of `facet` lie on a common facet of the cone.
    pub fn on_boundary(&self, facet: &[usize]) -> bool {
        (0..self.dim).any(|a| facet.iter().all(|&p| self.coords[p][a] == 0))
    }

    pub fn in_cone(&self, p: usize) -> bool {
        self.coords[p].iter().all(|&x| x >= 0)
    }

    /// Whether two cells have disjoint interiors, decided by a separating
    /// facet when one exists and by exact linear programming otherwise.
    pub fn interiors_disjoint(
        &self,
        a: &[usize],
        fa: &CellFrame,
        b: &[usize],
        fb: &CellFrame,
    ) -> Result<bool> {
        let sep = |f: &CellFrame, other: &[usize]| {
            let signs: Vec<Vec<i32>> = other.iter().map(|&p| f.signs(&self.coords[p])).collect();
            (0..self.dim).any(|c| signs.iter().all(|s| s[c] <= 0))
        };
        if sep(fa, b) || sep(fb, a) {
            return Ok(true);
        }
        let interior = |f: &CellFrame, q: &[i64]| f.signs(q).iter().all(|&s| s > 0);
        let sum_a = self.sum_of(a);
        let sum_b = self.sum_of(b);
        let both: Vec<i64> = sum_a.iter().zip(&sum_b).map(|(x, y)| x + y).collect();
        if interior(fa, &sum_b) || interior(fb, &sum_a) || (interior(fa, &both) && interior(fb, &both)) {
            return Ok(false);
        }
        Ok(!self.interiors_meet(a, fa, b)?)
    }

    fn sum_of(&self, cell: &[usize]) -> Vec<i64> {
        (0..self.dim).map(|c| cell.iter().map(|&p| self.coords[p][c]).sum()).collect()
    }

    /// `Σ α_v v = Σ β_u u` with every `α, β > 0`. With `G` the coordinates
    /// of `b`'s points in the basis of `a`, this asks for `β > 0` with
    /// `Gᵀβ > 0`, decided by exact linear programming.
    pub fn interiors_meet(&self, a: &[usize], fa: &CellFrame, b: &[usize]) -> Result<bool> {
        let k = self.dim;
        let sign = fa.det.signum();
        let g: Vec<Vec<i128>> = b.iter().map(|&p| fa.scaled(&self.coords[p])).collect();
        let mut rows = Vec::with_capacity(2 * k);
        for i in 0..b.len() {
            let mut e = vec![Rat::zero(); b.len()];
            e[i] = Rat::one();
            rows.push(e);
        }
        for j in 0..a.len() {
            rows.push(g.iter().map(|gu| Rat::from_integer(BigInt::from(gu[j] * sign))).collect());
        }
        Ok(lp::positive_solution(b.len(), &rows)?.is_some())
    }
}

/// Facets of a cell, each a sorted index list, paired with the apex left out.
pub fn facets(cell: &[usize]) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
    (0..cell.len()).map(move |i| {
        let f: Vec<usize> = cell.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
        (f, cell[i])
    })
}

/// Map from each facet to the cells (and apexes) containing it.
pub fn wall_map(cells: &[Vec<usize>]) -> HashMap<Vec<usize>, Vec<(usize, usize)>> {
    let mut walls: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for (f, apex) in facets(cell) {
            walls.entry(f).or_default().push((ci, apex));
        }
    }
    walls
}
