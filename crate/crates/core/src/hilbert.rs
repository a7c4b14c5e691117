//! Hilbert bases of te-cones: closed forms per brick and a brute-force
//! oracle over the integer points of the half-open zonotope.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::calculus::support;
use crate::classify::{brick_type_matrix, BrickTag};
use crate::cone::{IntVec, TeCone};
use crate::decompose::decompose_te_set;
use crate::error::{Error, Result};
use crate::exact::{gcddet_matrix, ExactMatrix, Rat, RowSet};

/// Integer points `Σ (c_i / q) a_i` with `0 ≤ c_i < q`, sorted by `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonotopePointSet {
    pub denominator: i64,
    pub points: Vec<IntVec>,
    /// Numerators of the λ-coordinates over `denominator`.
    pub coeffs: Vec<Vec<i64>>,
}

impl ZonotopePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lambda(&self, k: usize) -> Vec<Rat> {
        self.coeffs[k]
            .iter()
            .map(|&c| Rat::new(BigInt::from(c), BigInt::from(self.denominator)))
            .collect()
    }
}

/// Enumerates the λ-grid of step `1/q`, parallel over the first coordinate.
pub fn zonotope_points(c: &TeCone) -> ZonotopePointSet {
    let q = c.frame().denominator;
    let gens = c.generator_rows();
    let (k, n) = (gens.len(), c.ambient_dim());
    let mut found: Vec<(Vec<i64>, IntVec)> = (0..q)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut coeff = vec![0i64; k];
            coeff[0] = first;
            let mut sum: Vec<i64> = gens[0].iter().map(|x| x * first).collect();
            loop {
                if sum.iter().all(|s| s.rem_euclid(q) == 0) {
                    out.push((coeff.clone(), sum.iter().map(|s| s / q).collect()));
                }
                let mut i = 1;
                loop {
                    if i == k {
                        return out;
                    }
                    if coeff[i] + 1 < q {
                        coeff[i] += 1;
                        for j in 0..n {
                            sum[j] += gens[i][j];
                        }
                        break;
                    }
                    for j in 0..n {
                        sum[j] -= gens[i][j] * (q - 1);
                    }
                    coeff[i] = 0;
                    i += 1;
                }
            }
        })
        .collect();
    found.sort();
    let (coeffs, points) = found.into_iter().unzip();
    ZonotopePointSet { denominator: q, points, coeffs }
}

/// Where a Hilbert basis element comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Generator,
    LaceHalfSum,
    PairHalfSum,
    QuarterSum,
    SkewedQuarterSum,
    Oracle,
}

impl Origin {
    pub fn name(self) -> &'static str {
        match self {
            Origin::Generator => "generator",
            Origin::LaceHalfSum => "lace-half-sum",
            Origin::PairHalfSum => "pair-half-sum",
            Origin::QuarterSum => "quarter-sum",
            Origin::SkewedQuarterSum => "skewed-quarter-sum",
            Origin::Oracle => "oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Origin> {
        [
            Origin::Generator,
            Origin::LaceHalfSum,
            Origin::PairHalfSum,
            Origin::QuarterSum,
            Origin::SkewedQuarterSum,
            Origin::Oracle,
        ]
        .into_iter()
        .find(|o| o.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<IntVec>,
    pub origins: Vec<Origin>,
}

impl HilbertBasis {
    fn push(&mut self, v: IntVec, o: Origin) {
        self.elements.push(v);
        self.origins.push(o);
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_set(&self) -> BTreeSet<IntVec> {
        self.elements.iter().cloned().collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements.iter().any(|e| e.as_slice() == x)
    }

    fn with_generators(c: &TeCone) -> HilbertBasis {
        let mut hb = HilbertBasis { elements: Vec::new(), origins: Vec::new() };
        for g in c.generator_rows() {
            hb.push(g.clone(), Origin::Generator);
        }
        hb
    }
}

fn dominated(small: &[i64], big: &[i64]) -> bool {
    small.iter().zip(big).all(|(s, b)| s <= b)
}

/// Generators together with the nonzero zonotope points that do not split
/// as a sum of two nonzero integer cone vectors. Any such split `h = u + v`
/// has `λ(u), λ(v) ≥ 0` summing to `λ(h) < 1`, so both summands are
/// zonotope points with λ dominated by `λ(h)`.
pub fn hilbert_oracle(c: &TeCone) -> HilbertBasis {
    let z = zonotope_points(c);
    let mut hb = HilbertBasis::with_generators(c);
    let nonzero: Vec<usize> = (0..z.len()).filter(|&i| z.coeffs[i].iter().any(|&x| x != 0)).collect();
    let irreducible: Vec<bool> = nonzero
        .par_iter()
        .map(|&h| {
            !nonzero
                .iter()
                .any(|&u| u != h && dominated(&z.coeffs[u], &z.coeffs[h]))
        })
        .collect();
    for (&h, keep) in nonzero.iter().zip(irreducible) {
        if keep {
            hb.push(z.points[h].clone(), Origin::Oracle);
        }
    }
    hb
}

/// Closed form of the Hilbert basis selected by the row-parity rule of a
/// thick te-interlace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThickCase {
    /// One extra element, the quarter-sum of all generators.
    A,
    /// `n` extra elements `¾a_i + ¼Σ_{j≠i} a_j`.
    B,
}

/// Parity `p` shared by the number of 1s and of −1s in each support column,
/// and the case it selects: case A iff `n ≡ 2p (mod 4)`.
pub fn thick_case(rows: &ExactMatrix) -> Result<(u8, ThickCase)> {
    let n = rows.nrows();
    let supp = support(rows.row(0));
    let mut parity: Option<u8> = None;
    for &j in &supp {
        let pos = (0..n).filter(|&i| rows.get(i, j).is_positive()).count();
        let neg = (0..n).filter(|&i| rows.get(i, j).is_negative()).count();
        if pos % 2 != neg % 2 {
            return Err(Error::Domain(format!("column {j} has mixed parities")));
        }
        let p = (pos % 2) as u8;
        if *parity.get_or_insert(p) != p {
            return Err(Error::Domain("support columns disagree on parity".into()));
        }
    }
    let p = parity.ok_or_else(|| Error::Domain("empty support".into()))?;
    let case = if n % 4 == (2 * p as usize) % 4 { ThickCase::A } else { ThickCase::B };
    Ok((p, case))
}

fn integral_combination(rows: &ExactMatrix, weights: &[Rat]) -> Result<IntVec> {
    crate::cone::to_int_vec(&crate::cone::combine(rows, weights))
        .ok_or_else(|| Error::Construction("closed-form element is not integral".into()))
}

/// Hilbert basis of a single te-brick from its closed form.
pub fn hilbert_basis_brick(rows: &ExactMatrix) -> Result<HilbertBasis> {
    let cone = TeCone::new(rows.clone())?;
    let t = brick_type_matrix(rows)?.ok_or_else(|| Error::NotABrick {
        rows: (0..rows.nrows()).collect(),
    })?;
    let mut hb = HilbertBasis::with_generators(&cone);
    let n = rows.nrows();
    let half = Rat::new(1.into(), 2.into());
    let quarter = Rat::new(1.into(), 4.into());
    let pair_sums = |hb: &mut HilbertBasis| -> Result<()> {
        for i in 0..n {
            for j in i + 1..n {
                let mut w = vec![Rat::zero(); n];
                w[i] = half.clone();
                w[j] = half.clone();
                hb.push(integral_combination(rows, &w)?, Origin::PairHalfSum);
            }
        }
        Ok(())
    };
    match t.tag {
        BrickTag::TuSet => {}
        BrickTag::TeLace if n == 2 => pair_sums(&mut hb)?,
        BrickTag::TeLace => {
            hb.push(integral_combination(rows, &vec![half.clone(); n])?, Origin::LaceHalfSum)
        }
        BrickTag::ThinInterlace => pair_sums(&mut hb)?,
        BrickTag::ThickInterlace => {
            pair_sums(&mut hb)?;
            match thick_case(rows)?.1 {
                ThickCase::A => hb.push(
                    integral_combination(rows, &vec![quarter.clone(); n])?,
                    Origin::QuarterSum,
                ),
                ThickCase::B => {
                    for i in 0..n {
                        let mut w = vec![quarter.clone(); n];
                        w[i] = Rat::new(3.into(), 4.into());
                        hb.push(integral_combination(rows, &w)?, Origin::SkewedQuarterSum);
                    }
                }
            }
        }
    }
    Ok(hb)
}

/// Union of the per-brick bases of a decomposed te-cone, after checking
/// that the bricks are lattice orthogonal.
pub fn hilbert_basis_te_cone(c: &TeCone) -> Result<HilbertBasis> {
    let d = decompose_te_set(&RowSet::all(c.generators().clone()))?;
    let mut hb = HilbertBasis { elements: Vec::new(), origins: Vec::new() };
    let mut product = BigInt::from(1);
    for (_, part) in d.parts() {
        let rows = d.part_matrix(&part);
        product *= gcddet_matrix(&rows)?;
        let part_hb = hilbert_basis_brick(&rows)?;
        for (e, o) in part_hb.elements.into_iter().zip(part_hb.origins) {
            hb.push(e, o);
        }
    }
    let whole = gcddet_matrix(c.generators())?;
    if whole != product {
        return Err(Error::Construction(format!(
            "bricks are not lattice orthogonal: gcddet {whole} vs product {product}"
        )));
    }
    // Put generators first in their original order.
    let mut order: Vec<usize> = (0..hb.len()).collect();
    let gen_pos = |v: &IntVec| c.generator_rows().iter().position(|g| g == v);
    order.sort_by_key(|&i| (gen_pos(&hb.elements[i]).unwrap_or(usize::MAX), i));
    Ok(HilbertBasis {
        elements: order.iter().map(|&i| hb.elements[i].clone()).collect(),
        origins: order.iter().map(|&i| hb.origins[i]).collect(),
    })
}

/// Whether the integer vector `x` of the cone is a Hilbert basis element.
pub fn is_hilbert_element(c: &TeCone, x: &[i64]) -> Result<bool> {
    if x.len() != c.ambient_dim() {
        return Err(Error::Dimension(format!("vector of length {}", x.len())));
    }
    let lam = c.lambda_int(x).ok_or(Error::OutsideCone)?;
    if lam.iter().any(|l| l.is_negative()) {
        return Err(Error::OutsideCone);
    }
    if c.generator_rows().iter().any(|g| g.as_slice() == x) {
        return Ok(true);
    }
    if lam.iter().all(|l| l.is_zero()) || lam.iter().any(|l| *l >= Rat::from_integer(1.into())) {
        return Ok(false);
    }
    let q = Rat::from_integer(BigInt::from(c.frame().denominator));
    let own: Vec<i64> = lam
        .iter()
        .map(|l| (l * &q).to_integer().to_i64().expect("small"))
        .collect();
    let z = zonotope_points(c);
    Ok(!z.coeffs.iter().any(|u| {
        u.as_slice() != own.as_slice() && u.iter().any(|&v| v != 0) && dominated(u, &own)
    }))
}
