//! Independent re-check of the five triangulation properties.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::geometry::{CellFrame, PointConfig};
use super::regular::{find_lifting, lifting_induces};
use super::Triangulation;
use crate::cone::{IntVec, TeCone};
use crate::error::{Error, Result};
use crate::exact::{gcddet_matrix, ExactMatrix, Rat};
use crate::hilbert::{hilbert_basis_te_cone, hilbert_oracle};

/// Largest zonotope grid enumerated by the Hilbert oracle during
/// verification; larger cones use the closed-form basis.
const ORACLE_GRID_LIMIT: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationReport {
    pub hilbert: bool,
    pub unimodular: bool,
    /// Every cell lies in the cone and the normalized cell volumes sum to 1.
    pub covering: bool,
    pub disjoint: bool,
    pub regular: bool,
    pub cell_count: usize,
    /// Sum over cells of `|det λ(σ)| / Π_{p∈σ} Σλ(p)`.
    pub volume: Rat,
    /// Lifting that certified regularity, when one was found by LP.
    pub found_lifting: Option<Vec<Rat>>,
    pub notes: Vec<String>,
}

impl TriangulationReport {
    pub fn all_pass(&self) -> bool {
        self.hilbert && self.unimodular && self.covering && self.disjoint && self.regular
    }

    pub fn summary(&self) -> String {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        let mut s = format!(
            "hilbert {}, unimodular {}, covering {}, disjoint {}, regular {}",
            mark(self.hilbert),
            mark(self.unimodular),
            mark(self.covering),
            mark(self.disjoint),
            mark(self.regular)
        );
        for n in &self.notes {
            s.push_str("; ");
            s.push_str(n);
        }
        s
    }
}

fn hilbert_set(cone: &TeCone) -> Result<BTreeSet<IntVec>> {
    let q = cone.frame().denominator as u128;
    let grid = q.checked_pow(cone.dim() as u32).unwrap_or(u128::MAX);
    if grid <= ORACLE_GRID_LIMIT {
        Ok(hilbert_oracle(cone).to_set())
    } else {
        Ok(hilbert_basis_te_cone(cone)?.to_set())
    }
}

pub fn verify_triangulation(cone: &TeCone, t: &Triangulation) -> Result<TriangulationReport> {
    let k = cone.dim();
    for (i, c) in t.cells.iter().enumerate() {
        if c.len() != k {
            return Err(Error::Dimension(format!("cell {i} has {} points, cone dimension is {k}", c.len())));
        }
        if let Some(&p) = c.iter().find(|&&p| p >= t.points.len()) {
            return Err(Error::Index { index: p, len: t.points.len() });
        }
    }
    if let Some(w) = &t.lifting {
        if w.len() != t.points.len() {
            return Err(Error::Dimension(format!("{} weights for {} points", w.len(), t.points.len())));
        }
    }
    let cfg = PointConfig::new(cone, &t.points)?;
    let mut notes = Vec::new();

    let hb = hilbert_set(cone)?;
    let used: BTreeSet<usize> = t.cells.iter().flatten().copied().collect();
    let hilbert = used.iter().all(|&p| hb.contains(&t.points[p]));
    if !hilbert {
        notes.push("a cell point is not a Hilbert basis element".into());
    }

    let unimodular = t.cells.par_iter().all(|c| {
        let rows = ExactMatrix::from_ints(&c.iter().map(|&p| t.points[p].clone()).collect::<Vec<_>>());
        matches!(gcddet_matrix(&rows), Ok(g) if g.is_one())
    });

    let frames: Vec<CellFrame> = t.cells.par_iter().map(|c| cfg.frame(c)).collect();
    let degenerate = frames.iter().any(|f| f.det == 0);
    if degenerate {
        notes.push("a cell is degenerate".into());
    }
    let inside = used.iter().all(|&p| cfg.in_cone(p));
    if !inside {
        notes.push("a cell point lies outside the cone".into());
    }
    let volume = t
        .cells
        .iter()
        .fold(Rat::zero(), |acc, c| acc + cfg.normalized_volume(c));
    let covering = !t.cells.is_empty() && inside && !degenerate && volume.is_one();
    if !volume.is_one() {
        notes.push(format!("normalized volume {volume}"));
    }

    let disjoint = !degenerate && {
        let pairs: Vec<(usize, usize)> = (0..t.cells.len())
            .flat_map(|i| (i + 1..t.cells.len()).map(move |j| (i, j)))
            .collect();
        pairs
            .par_iter()
            .map(|&(i, j)| cfg.interiors_disjoint(&t.cells[i], &frames[i], &t.cells[j], &frames[j]))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|d| d)
    };

    let mut found_lifting = None;
    let regular = if degenerate || !disjoint {
        false
    } else {
        match find_lifting(&cfg, &t.cells) {
            Ok(Some(w)) => {
                let lp_ok = lifting_induces(&cfg, &t.cells, &w);
                let given_ok = match &t.lifting {
                    Some(given) => {
                        let ok = lifting_induces(&cfg, &t.cells, given);
                        if !ok {
                            notes.push("the recorded lifting does not induce the cells".into());
                        }
                        ok
                    }
                    None => {
                        found_lifting = Some(w);
                        true
                    }
                };
                lp_ok && given_ok
            }
            Ok(None) => {
                notes.push("no lifting satisfies the folding inequalities".into());
                false
            }
            Err(e) => {
                notes.push(format!("walls: {e}"));
                false
            }
        }
    };

    Ok(TriangulationReport {
        hilbert,
        unimodular,
        covering,
        disjoint,
        regular,
        cell_count: t.cells.len(),
        volume,
        found_lifting,
        notes,
    })
}

/// `Σ_cells |det|` against `|det(generators)|` for a full-dimensional cone,
/// reported for comparison with the normalized volume.
pub fn raw_determinant_sums(cone: &TeCone, t: &Triangulation) -> Option<(BigInt, BigInt)> {
    let g = cone.generators();
    if !g.is_square() {
        return None;
    }
    let total = g.det().ok()?.abs().to_integer();
    let mut sum = BigInt::zero();
    for c in &t.cells {
        let rows = ExactMatrix::from_ints(&c.iter().map(|&p| t.points[p].clone()).collect::<Vec<_>>());
        sum += rows.det().ok()?.abs().to_integer();
    }
    Some((sum, total))
}
