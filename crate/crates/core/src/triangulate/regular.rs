//! Liftings: the strict folding inequalities of a triangulation, exact
//! parameter fitting, LP search and a global check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::geometry::{wall_map, CellFrame, PointConfig};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::lp;

/// Linear forms `g` over point weights such that a lifting `w` induces the
/// triangulation iff `g·w > 0` for every form: one per interior wall, and
/// one per point used by no cell.
pub fn folding_rows(cfg: &PointConfig, cells: &[Vec<usize>]) -> Result<Vec<Vec<Rat>>> {
    let m = cfg.coords.len();
    let mut rows = Vec::new();
    let frames: Vec<CellFrame> = cells.iter().map(|c| cfg.frame(c)).collect();
    if let Some(i) = frames.iter().position(|f| f.det == 0) {
        return Err(Error::Construction(format!("cell {i} is degenerate")));
    }
    let mut walls: Vec<(Vec<usize>, Vec<(usize, usize)>)> = wall_map(cells).into_iter().collect();
    walls.sort();
    for (facet, users) in walls {
        match users.as_slice() {
            [_] if cfg.on_boundary(&facet) => {}
            [_] => return Err(Error::Construction(format!("interior facet {facet:?} lies in one cell"))),
            [(c1, _), (_, apex2)] => {
                let gamma = frames[*c1].coords(&cfg.coords[*apex2]);
                let mut g = vec![Rat::zero(); m];
                g[*apex2] += Rat::one();
                for (&v, gv) in cells[*c1].iter().zip(&gamma) {
                    g[v] -= gv;
                }
                rows.push(g);
            }
            _ => return Err(Error::Construction(format!("facet {facet:?} lies in more than two cells"))),
        }
    }
    let mut used = vec![false; m];
    for c in cells {
        for &p in c {
            used[p] = true;
        }
    }
    for q in (0..m).filter(|&q| !used[q]) {
        let hit = cells.iter().zip(&frames).find_map(|(c, f)| {
            let s = f.signs(&cfg.coords[q]);
            s.iter().all(|&x| x >= 0).then_some((c, f))
        });
        let Some((c, f)) = hit else {
            return Err(Error::Construction(format!("point {q} is covered by no cell")));
        };
        let gamma = f.coords(&cfg.coords[q]);
        let mut g = vec![Rat::zero(); m];
        g[q] += Rat::one();
        for (&v, gv) in c.iter().zip(&gamma) {
            g[v] -= gv;
        }
        rows.push(g);
    }
    Ok(rows)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Smallest integer `t` above every lower bound and below every upper bound
/// of `g·(base + t·dir) > 0` over all rows, when one exists.
pub fn fit_parameter(rows: &[Vec<Rat>], base: &[Rat], dir: &[Rat]) -> Option<Rat> {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for g in rows {
        let a = dot(g, dir);
        let b = dot(g, base);
        if a.is_zero() {
            if !b.is_positive() {
                return None;
            }
            continue;
        }
        let bound = -&b / &a;
        if a.is_positive() {
            if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|h| bound < *h) {
            hi = Some(bound);
        }
    }
    let t = match lo {
        Some(l) => l.floor() + Rat::one(),
        None => match &hi {
            Some(h) => h.ceil() - Rat::one(),
            None => Rat::zero(),
        },
    };
    match hi {
        Some(h) if t >= h => None,
        _ => Some(t),
    }
}

/// A lifting inducing the triangulation, found by exact linear programming
/// over the folding inequalities.
pub fn find_lifting(cfg: &PointConfig, cells: &[Vec<usize>]) -> Result<Option<Vec<Rat>>> {
    let rows = folding_rows(cfg, cells)?;
    let Some(w) = lp::positive_solution(cfg.coords.len(), &rows)? else {
        return Ok(None);
    };
    Ok(Some(normalize(w)))
}

/// Clears denominators so liftings print as small integers.
fn normalize(w: Vec<Rat>) -> Vec<Rat> {
    let l = w.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let f = Rat::from_integer(l);
    w.into_iter().map(|x| x * &f).collect()
}

/// Every cell is a lower face of the lifted point set: for each cell `σ` and
/// point `q ∉ σ`, the height of `q` exceeds the linear interpolation of the
/// weights on `σ`.
pub fn lifting_induces(cfg: &PointConfig, cells: &[Vec<usize>], w: &[Rat]) -> bool {
    if w.len() != cfg.coords.len() {
        return false;
    }
    cells.par_iter().all(|cell| {
        let f = cfg.frame(cell);
        if f.det == 0 {
            return false;
        }
        (0..cfg.coords.len()).filter(|q| !cell.contains(q)).all(|q| {
            let gamma = f.coords(&cfg.coords[q]);
            let interp = cell.iter().zip(&gamma).fold(Rat::zero(), |acc, (&v, g)| acc + g * &w[v]);
            w[q] > interp
        })
    })
}
