//! Triangulations of thick te-interlaces.
//!
//! Case a cones the thin triangulations of the boundary facets over the
//! quarter-sum. Case b has no closed form; its cells are found by an
//! advancing-front search over unimodular cells spanned by Hilbert elements,
//! and a lifting is recovered by linear programming.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::geometry::{facets, CellFrame, PointConfig};
use super::stellar::{chord_weight, edge_point, enumerate_stellar_cycles, lift_or_search, pair_index, tag_name};
use super::{brick_cone, checked, Triangulation};
use crate::classify::{brick_type_matrix, BrickTag};
use crate::error::{Error, Result};
use crate::exact::subsets::combinations;
use crate::exact::{gcddet_matrix, ExactMatrix, Rat};
use crate::hilbert::{hilbert_basis_brick, thick_case, ThickCase};

/// Node budget for the case-b search.
pub const DEFAULT_SEARCH_NODES: usize = 200_000;

fn check_thick(rows: &ExactMatrix, want: ThickCase) -> Result<()> {
    let t = brick_type_matrix(rows)?;
    if t.as_ref().map(|t| t.tag) != Some(BrickTag::ThickInterlace) {
        return Err(Error::WrongKind { expected: "thick te-interlace".into(), found: tag_name(&t) });
    }
    let (_, case) = thick_case(rows)?;
    if case != want {
        return Err(Error::WrongKind {
            expected: format!("Hilbert case {want:?}"),
            found: format!("Hilbert case {case:?}"),
        });
    }
    Ok(())
}

pub fn thick_case_a_triangulation(rows: &ExactMatrix) -> Result<Triangulation> {
    check_thick(rows, ThickCase::A)?;
    let n = rows.nrows();
    let hb = hilbert_basis_brick(rows)?;
    let h = hb.elements.len() - 1;
    let facet_cycles = enumerate_stellar_cycles(n - 1);
    let mut cells = Vec::with_capacity(n * facet_cycles.len());
    for skip in 0..n {
        let verts: Vec<usize> = (0..n).filter(|&v| v != skip).collect();
        for s in &facet_cycles {
            let mut c: Vec<usize> = s
                .edges
                .iter()
                .map(|&(i, j)| edge_point(n, (verts[i], verts[j])))
                .chain([h])
                .collect();
            c.sort_unstable();
            cells.push(c);
        }
    }
    let cone = brick_cone(rows)?;
    let cfg = PointConfig::new(&cone, &hb.elements)?;
    let m = hb.elements.len();
    let mut base = vec![Rat::zero(); m];
    let mut gens = vec![Rat::zero(); m];
    for i in 0..n {
        gens[i] = Rat::one();
        for j in i + 1..n {
            base[pair_index(n, i, j)] = chord_weight(n, i, j);
        }
    }
    let mut pull = vec![Rat::zero(); m];
    pull[h] = -Rat::one();
    let stages = [(base, gens), (vec![Rat::zero(); m], pull)];
    let lifting = lift_or_search(&cfg, &cells, &stages)?;
    checked(&cone, Triangulation { points: hb.elements, cells, lifting: Some(lifting) })
}

pub fn thick_case_b_triangulation(rows: &ExactMatrix) -> Result<Triangulation> {
    thick_case_b_triangulation_with_budget(rows, DEFAULT_SEARCH_NODES)
}

pub fn thick_case_b_triangulation_with_budget(rows: &ExactMatrix, budget: usize) -> Result<Triangulation> {
    check_thick(rows, ThickCase::B)?;
    let hb = hilbert_basis_brick(rows)?;
    let cone = brick_cone(rows)?;
    let cfg = PointConfig::new(&cone, &hb.elements)?;
    let cells = front_search(&cfg, &gcddet_matrix(rows)?, budget)?;
    let lifting = lift_or_search(&cfg, &cells, &[])?;
    checked(&cone, Triangulation { points: hb.elements, cells, lifting: Some(lifting) })
}

/// Unimodular cells: `|det(Dλ)| = D^k / gcddet(A)`.
fn unimodular_cells(cfg: &PointConfig, gcd: &num_bigint::BigInt) -> Vec<Vec<usize>> {
    let k = cfg.dim;
    let full = num_bigint::BigInt::from(cfg.scale).pow(k as u32);
    if (&full % gcd) != num_bigint::BigInt::zero() {
        return Vec::new();
    }
    let target: i128 = match i128::try_from(full / gcd) {
        Ok(t) => t,
        Err(_) => return Vec::new(),
    };
    combinations(cfg.coords.len(), k)
        .into_par_iter()
        .filter(|c| cfg.det(c).abs() == target)
        .collect()
}

struct Front<'a> {
    cfg: &'a PointConfig,
    cands: Vec<Vec<usize>>,
    frames: Vec<CellFrame>,
    volumes: Vec<Rat>,
    by_facet: HashMap<Vec<usize>, Vec<usize>>,
    disjoint: HashMap<(usize, usize), bool>,
    chosen: Vec<usize>,
    in_use: Vec<bool>,
    counts: BTreeMap<Vec<usize>, u32>,
    volume: Rat,
    nodes: usize,
    budget: usize,
}

impl Front<'_> {
    fn disjoint(&mut self, a: usize, b: usize) -> Result<bool> {
        let key = (a.min(b), a.max(b));
        if let Some(&d) = self.disjoint.get(&key) {
            return Ok(d);
        }
        let d = self
            .cfg
            .interiors_disjoint(&self.cands[a], &self.frames[a], &self.cands[b], &self.frames[b])?;
        self.disjoint.insert(key, d);
        Ok(d)
    }

    fn push(&mut self, c: usize) {
        for (f, _) in facets(&self.cands[c]) {
            *self.counts.entry(f).or_default() += 1;
        }
        self.volume += &self.volumes[c];
        self.in_use[c] = true;
        self.chosen.push(c);
    }

    fn pop(&mut self) {
        let c = self.chosen.pop().expect("nonempty front");
        for (f, _) in facets(&self.cands[c]) {
            let e = self.counts.get_mut(&f).expect("counted facet");
            *e -= 1;
            if *e == 0 {
                self.counts.remove(&f);
            }
        }
        self.volume -= &self.volumes[c];
        self.in_use[c] = false;
    }

    /// Depth-first completion; `Ok(None)` when the node budget runs out.
    fn complete(&mut self) -> Result<Option<bool>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Ok(None);
        }
        if self.volume.is_one() {
            return Ok(Some(true));
        }
        let open: Vec<Vec<usize>> = self
            .counts
            .iter()
            .filter(|(f, &n)| n == 1 && !self.cfg.on_boundary(f))
            .map(|(f, _)| f.clone())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        for f in open {
            let pool = self.by_facet.get(&f).cloned().unwrap_or_default();
            let mut fits = Vec::new();
            let free: Vec<usize> = pool.into_iter().filter(|&t| !self.in_use[t]).collect();
            for t in free {
                let mut ok = true;
                for i in 0..self.chosen.len() {
                    if !self.disjoint(t, self.chosen[i])? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    fits.push(t);
                }
            }
            if best.as_ref().is_none_or(|b| fits.len() < b.len()) {
                best = Some(fits);
            }
            if best.as_ref().is_some_and(|b| b.len() <= 1) {
                break;
            }
        }
        let Some(options) = best else {
            return Ok(Some(false));
        };
        for t in options {
            self.push(t);
            match self.complete()? {
                Some(false) => self.pop(),
                done => return Ok(done),
            }
        }
        Ok(Some(false))
    }
}

/// Grows a set of pairwise interior-disjoint unimodular cells across open
/// interior facets, most constrained facet first, until the cells cover the
/// cone.
fn front_search(cfg: &PointConfig, gcd: &num_bigint::BigInt, budget: usize) -> Result<Vec<Vec<usize>>> {
    let cands = unimodular_cells(cfg, gcd);
    let frames: Vec<CellFrame> = cands.par_iter().map(|c| cfg.frame(c)).collect();
    let volumes = cands.iter().map(|c| cfg.normalized_volume(c)).collect();
    let mut by_facet: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, c) in cands.iter().enumerate() {
        for (f, _) in facets(c) {
            by_facet.entry(f).or_default().push(i);
        }
    }
    let n = cands.len();
    let mut front = Front {
        cfg,
        cands,
        frames,
        volumes,
        by_facet,
        disjoint: HashMap::new(),
        chosen: Vec::new(),
        in_use: vec![false; n],
        counts: BTreeMap::new(),
        volume: Rat::zero(),
        nodes: 0,
        budget,
    };
    for start in 0..n {
        front.push(start);
        match front.complete()? {
            Some(true) => {
                let mut cells: Vec<Vec<usize>> = front.chosen.iter().map(|&c| front.cands[c].clone()).collect();
                cells.sort();
                return Ok(cells);
            }
            Some(false) => {
                while !front.chosen.is_empty() {
                    front.pop();
                }
            }
            None => break,
        }
    }
    Err(Error::Construction(format!(
        "no unimodular triangulation found among {n} candidate cells within {budget} search nodes"
    )))
}
