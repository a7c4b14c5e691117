//! Regular unimodular Hilbert triangulations of te-cones: per-brick
//! constructions, joins across bricks, verification and integer
//! Carathéodory decompositions.

mod geometry;
mod regular;
mod stellar;
mod thick;
mod verify;

use num_traits::{Signed, ToPrimitive, Zero};

pub use geometry::PointConfig;
pub use regular::{find_lifting, fit_parameter, folding_rows, lifting_induces};
pub use stellar::{enumerate_stellar_cycles, stellar_lace_triangulation, thin_triangulation, StellarCycle};
pub use thick::{
    thick_case_a_triangulation, thick_case_b_triangulation, thick_case_b_triangulation_with_budget,
    DEFAULT_SEARCH_NODES,
};
pub use verify::{raw_determinant_sums, verify_triangulation, TriangulationReport};

use crate::classify::BrickTag;
use crate::cone::{IntVec, TeCone};
use crate::decompose::decompose_te_set;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rat, RowSet};
use crate::hilbert::{thick_case, ThickCase};

/// Sorted indices into `Triangulation::points`.
pub type Cell = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<IntVec>,
    pub cells: Vec<Cell>,
    /// Point weights whose lower hull induces the cells.
    pub lifting: Option<Vec<Rat>>,
}

impl Triangulation {
    /// The triangulation of a simplicial cone by itself.
    pub fn single_cell(cone: &TeCone) -> Triangulation {
        let k = cone.dim();
        Triangulation {
            points: cone.generator_rows().to_vec(),
            cells: vec![(0..k).collect()],
            lifting: Some(vec![Rat::zero(); k]),
        }
    }

    pub fn cell_points(&self, cell: usize) -> Vec<&IntVec> {
        self.cells[cell].iter().map(|&p| &self.points[p]).collect()
    }
}

pub(crate) fn brick_cone(rows: &ExactMatrix) -> Result<TeCone> {
    TeCone::new(rows.clone())
}

/// Returns `t` only if it passes every verifier check against `cone`.
pub(crate) fn checked(cone: &TeCone, t: Triangulation) -> Result<Triangulation> {
    let report = verify_triangulation(cone, &t)?;
    if report.all_pass() {
        Ok(t)
    } else {
        Err(Error::Construction(format!("verification failed: {}", report.summary())))
    }
}

/// Minkowski sums of all cell pairs; liftings are concatenated.
pub fn join(t1: &Triangulation, t2: &Triangulation) -> Result<Triangulation> {
    let offset = t1.points.len();
    let dims = (t1.points.first().map(Vec::len), t2.points.first().map(Vec::len));
    if let (Some(a), Some(b)) = dims {
        if a != b {
            return Err(Error::Dimension(format!("joining points of length {a} and {b}")));
        }
    }
    let mut points = t1.points.clone();
    points.extend(t2.points.iter().cloned());
    if let (Some(c1), Some(c2)) = (t1.cells.first(), t2.cells.first()) {
        let rows: Vec<&[i64]> = c1
            .iter()
            .map(|&p| t1.points[p].as_slice())
            .chain(c2.iter().map(|&p| t2.points[p].as_slice()))
            .collect();
        let rank = crate::exact::IntMatrix::from_rows(&rows).rank();
        if rank < rows.len() {
            return Err(Error::RankDeficient { rank, rows: rows.len() });
        }
    }
    let mut cells = Vec::with_capacity(t1.cells.len() * t2.cells.len());
    for c1 in &t1.cells {
        for c2 in &t2.cells {
            cells.push(c1.iter().copied().chain(c2.iter().map(|&p| p + offset)).collect());
        }
    }
    let lifting = match (&t1.lifting, &t2.lifting) {
        (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
        _ => None,
    };
    Ok(Triangulation { points, cells, lifting })
}

/// Triangulates every brick of the decomposition and joins the results.
pub fn triangulate_te_cone(cone: &TeCone) -> Result<Triangulation> {
    let d = decompose_te_set(&RowSet::all(cone.generators().clone()))?;
    let mut acc: Option<Triangulation> = None;
    for (tag, part) in d.parts() {
        if part.is_empty() {
            continue;
        }
        let rows = d.part_matrix(&part);
        let t = match tag {
            BrickTag::TuSet => Triangulation::single_cell(&brick_cone(&rows)?),
            BrickTag::TeLace => stellar_lace_triangulation(&rows)?,
            BrickTag::ThinInterlace => thin_triangulation(&rows)?,
            BrickTag::ThickInterlace => {
                let n = rows.nrows();
                if n > 6 {
                    return Err(Error::Unsupported(format!("thick te-interlace of size {n}")));
                }
                match thick_case(&rows)?.1 {
                    ThickCase::A => thick_case_a_triangulation(&rows)?,
                    ThickCase::B => thick_case_b_triangulation(&rows)?,
                }
            }
        };
        acc = Some(match acc {
            None => t,
            Some(prev) => join(&prev, &t)?,
        });
    }
    let t = acc.ok_or_else(|| Error::Domain("empty decomposition".into()))?;
    checked(cone, t)
}

/// Writes `x` as a nonnegative integer combination of the points of one
/// cell containing it.
pub fn caratheodory_decompose(cone: &TeCone, t: &Triangulation, x: &[i64]) -> Result<Vec<(IntVec, i64)>> {
    if x.len() != cone.ambient_dim() {
        return Err(Error::Dimension(format!("vector of length {}", x.len())));
    }
    if !cone.contains(x) {
        return Err(Error::OutsideCone);
    }
    let mut pts = t.points.clone();
    pts.push(x.to_vec());
    let cfg = PointConfig::new(cone, &pts)?;
    let q = &cfg.coords[pts.len() - 1];
    for cell in &t.cells {
        let f = cfg.frame(cell);
        if f.det == 0 {
            continue;
        }
        let gamma = f.coords(q);
        if gamma.iter().any(|g| g.is_negative()) {
            continue;
        }
        let mut out = Vec::new();
        for (&p, g) in cell.iter().zip(&gamma) {
            if g.is_zero() {
                continue;
            }
            let c = g
                .is_integer()
                .then(|| g.to_integer().to_i64())
                .flatten()
                .ok_or_else(|| Error::Construction(format!("fractional coefficient {g} in a cell")))?;
            out.push((t.points[p].clone(), c));
        }
        return Ok(out);
    }
    Err(Error::Construction("no cell contains the vector".into()))
}
