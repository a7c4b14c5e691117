//! Exact rational linear feasibility with strict inequalities, solved by a
//! dense two-phase simplex under Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

/// Constraints over free rational variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub nvars: usize,
    pub rows: Vec<Constraint>,
}

/// Multipliers `y` proving infeasibility: `y_i ≥ 0` on inequality rows
/// (written as `≤`/`<`), `Σ y_i a_i = 0`, and either `y·b < 0` or `y·b = 0`
/// with positive weight on some strict row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub multipliers: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rat>),
    Infeasible(Certificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) {
        self.rows.push(Constraint { coeffs, relation, rhs });
    }

    fn check(&self) -> Result<()> {
        match self.rows.iter().position(|r| r.coeffs.len() != self.nvars) {
            Some(i) => Err(Error::Dimension(format!(
                "row {i} has {} coefficients for {} variables",
                self.rows[i].coeffs.len(),
                self.nvars
            ))),
            None => Ok(()),
        }
    }

    /// Rows as `a·x (≤ | < | =) b`.
    fn normalized(&self) -> Vec<(Vec<Rat>, Relation, Rat)> {
        self.rows
            .iter()
            .map(|r| match r.relation {
                Relation::Ge => (r.coeffs.iter().map(|x| -x).collect(), Relation::Le, -&r.rhs),
                Relation::Gt => (r.coeffs.iter().map(|x| -x).collect(), Relation::Lt, -&r.rhs),
                rel => (r.coeffs.clone(), rel, r.rhs.clone()),
            })
            .collect()
    }

    /// Whether `x` satisfies every row exactly.
    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        x.len() == self.nvars
            && self.rows.iter().all(|r| {
                let lhs = dot(&r.coeffs, x);
                match r.relation {
                    Relation::Le => lhs <= r.rhs,
                    Relation::Lt => lhs < r.rhs,
                    Relation::Eq => lhs == r.rhs,
                    Relation::Ge => lhs >= r.rhs,
                    Relation::Gt => lhs > r.rhs,
                }
            })
    }

    /// Whether `cert` proves this system infeasible.
    pub fn certifies_infeasible(&self, cert: &Certificate) -> bool {
        let y = &cert.multipliers;
        if y.len() != self.rows.len() {
            return false;
        }
        let rows = self.normalized();
        let signs_ok = rows.iter().zip(y).all(|((_, rel, _), yi)| *rel == Relation::Eq || !yi.is_negative());
        let combo_zero = (0..self.nvars).all(|j| {
            rows.iter()
                .zip(y)
                .fold(Rat::zero(), |acc, ((a, _, _), yi)| acc + yi * &a[j])
                .is_zero()
        });
        let yb = rows.iter().zip(y).fold(Rat::zero(), |acc, ((_, _, b), yi)| acc + yi * b);
        let strict_weight = rows
            .iter()
            .zip(y)
            .filter(|((_, rel, _), _)| rel.is_strict())
            .fold(Rat::zero(), |acc, (_, yi)| acc + yi);
        signs_ok && combo_zero && (yb.is_negative() || (yb.is_zero() && strict_weight.is_positive()))
    }
}

fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).filter(|(c, _)| !c.is_zero()).fold(Rat::zero(), |acc, (c, v)| acc + c * v)
}

enum LpOutcome {
    /// Optimal point and the dual values of the equality rows.
    Optimal(Vec<Rat>, Vec<Rat>),
    Infeasible,
}

/// `max c·z` subject to `M z = d`, `z ≥ 0`; the objective must be bounded.
struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `max c·z` in the current basis.
    fn reduced(&self, c: &[Rat]) -> Vec<Rat> {
        let mut red: Vec<Rat> = c.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.rows[i][j].is_zero() {
                    red[j] -= &c[b] * &self.rows[i][j];
                }
            }
        }
        red
    }

    /// Bland's rule: lowest improving column, lowest basic index on ties.
    fn optimize(&mut self, c: &[Rat], allowed: &[bool]) {
        loop {
            let red = self.reduced(c);
            let Some(enter) = (0..self.ncols).find(|&j| allowed[j] && red[j].is_positive()) else {
                return;
            };
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let (_, leave, _) = best.expect("objective is bounded");
            self.pivot(leave, enter);
        }
    }
}

fn simplex(m: &[Vec<Rat>], d: &[Rat], c: &[Rat]) -> LpOutcome {
    let nrows = m.len();
    let n = c.len();
    let total = n + nrows;
    let mut rows = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    for (i, (row, b)) in m.iter().zip(d).enumerate() {
        let flip = b.is_negative();
        let mut r: Vec<Rat> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..nrows).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        rows.push(r);
        rhs.push(if flip { -b } else { b.clone() });
    }
    let mut t = Tableau { rows, rhs, basis: (n..total).collect(), ncols: total };
    let mut phase1 = vec![Rat::zero(); total];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rat::one();
    }
    let all = vec![true; total];
    t.optimize(&phase1, &all);
    let infeas = t
        .basis
        .iter()
        .zip(&t.rhs)
        .any(|(&b, v)| b >= n && v.is_positive());
    if infeas {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis; rows that cannot be
    // cleared are redundant and stay pinned at zero.
    for i in 0..nrows {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }
    let mut allowed = vec![true; total];
    for a in allowed.iter_mut().skip(n) {
        *a = false;
    }
    let mut obj = c.to_vec();
    obj.extend((0..nrows).map(|_| Rat::zero()));
    t.optimize(&obj, &allowed);
    let mut z = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            z[b] = t.rhs[i].clone();
        }
    }
    // The artificial block of the final tableau holds B⁻¹, so π = c_B B⁻¹.
    let duals = (0..nrows)
        .map(|k| {
            let v = t
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| !obj[b].is_zero())
                .fold(Rat::zero(), |acc, (r, &b)| acc + &obj[b] * &t.rows[r][n + k]);
            if d[k].is_negative() {
                -v
            } else {
                v
            }
        })
        .collect();
    LpOutcome::Optimal(z, duals)
}

/// `max ε` over split variables `x = u − v`, one slack per inequality row,
/// `ε` added to strict rows and capped by `ε ≤ 1`. Returns the program and
/// the column of `ε`.
fn slack_program(sys: &LinearSystem) -> (Vec<Vec<Rat>>, Vec<Rat>, Vec<Rat>, usize) {
    let rows = sys.normalized();
    let n = sys.nvars;
    let ineq: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].1 != Relation::Eq).collect();
    let eps = 2 * n;
    let width = 2 * n + 1 + ineq.len() + 1;
    let mut m = Vec::with_capacity(rows.len() + 1);
    let mut d = Vec::with_capacity(rows.len() + 1);
    let mut k = 0;
    for (a, rel, b) in &rows {
        let mut r = vec![Rat::zero(); width];
        for j in 0..n {
            r[j] = a[j].clone();
            r[n + j] = -&a[j];
        }
        if rel.is_strict() {
            r[eps] = Rat::one();
        }
        if *rel != Relation::Eq {
            r[eps + 1 + k] = Rat::one();
            k += 1;
        }
        m.push(r);
        d.push(b.clone());
    }
    let mut cap = vec![Rat::zero(); width];
    cap[eps] = Rat::one();
    cap[width - 1] = Rat::one();
    m.push(cap);
    d.push(Rat::one());
    let mut c = vec![Rat::zero(); width];
    c[eps] = Rat::one();
    (m, d, c, eps)
}

/// Decides feasibility. Strict rows receive a common slack `ε ∈ [0, 1]`
/// that is maximized; the system is feasible iff the optimum is positive.
/// Infeasibility is backed by a verified certificate.
pub fn solve(sys: &LinearSystem) -> Result<Feasibility> {
    sys.check()?;
    let n = sys.nvars;
    let (m, d, c, eps) = slack_program(sys);
    let any_strict = sys.rows.iter().any(|r| r.relation.is_strict());
    if let LpOutcome::Optimal(z, _) = simplex(&m, &d, &c) {
        if !any_strict || z[eps].is_positive() {
            let x: Vec<Rat> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
            if !sys.satisfied_by(&x) {
                return Err(Error::Construction("simplex point fails substitution".into()));
            }
            return Ok(Feasibility::Feasible(x));
        }
    }
    let cert = certificate(sys)?;
    Ok(Feasibility::Infeasible(cert))
}

/// Feasibility alone, without the certificate search that backs an
/// infeasible verdict in [`solve`].
pub fn is_feasible(sys: &LinearSystem) -> Result<bool> {
    sys.check()?;
    let (m, d, c, eps) = slack_program(sys);
    let any_strict = sys.rows.iter().any(|r| r.relation.is_strict());
    Ok(match simplex(&m, &d, &c) {
        LpOutcome::Optimal(z, _) => !any_strict || z[eps].is_positive(),
        LpOutcome::Infeasible => false,
    })
}

/// Finds `y` with `y ≥ 0` on inequality rows, `yᵀA = 0`, `y·b ≤ 0` and
/// `Σ_strict y − y·b ≥ 1`.
fn certificate(sys: &LinearSystem) -> Result<Certificate> {
    let rows = sys.normalized();
    let k = rows.len();
    let eq: Vec<usize> = (0..k).filter(|&i| rows[i].1 == Relation::Eq).collect();
    let mut cs = LinearSystem::new(k);
    for j in 0..sys.nvars {
        cs.push(rows.iter().map(|r| r.0[j].clone()).collect(), Relation::Eq, Rat::zero());
    }
    for i in (0..k).filter(|i| !eq.contains(i)) {
        let mut e = vec![Rat::zero(); k];
        e[i] = Rat::one();
        cs.push(e, Relation::Ge, Rat::zero());
    }
    cs.push(rows.iter().map(|r| r.2.clone()).collect(), Relation::Le, Rat::zero());
    cs.push(
        rows.iter()
            .map(|r| if r.1.is_strict() { Rat::one() - &r.2 } else { -&r.2 })
            .collect(),
        Relation::Ge,
        Rat::one(),
    );
    match solve_nonstrict(&cs)? {
        Some(y) => {
            let cert = Certificate { multipliers: y };
            if sys.certifies_infeasible(&cert) {
                Ok(cert)
            } else {
                Err(Error::Construction("certificate fails verification".into()))
            }
        }
        None => Err(Error::Construction("no infeasibility certificate found".into())),
    }
}

fn solve_nonstrict(sys: &LinearSystem) -> Result<Option<Vec<Rat>>> {
    debug_assert!(sys.rows.iter().all(|r| !r.relation.is_strict()));
    let rows = sys.normalized();
    let n = sys.nvars;
    let ineq: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].1 != Relation::Eq).collect();
    let width = 2 * n + ineq.len();
    let mut m = Vec::new();
    let mut d = Vec::new();
    for (i, (a, _, b)) in rows.iter().enumerate() {
        let mut r = vec![Rat::zero(); width];
        for j in 0..n {
            r[j] = a[j].clone();
            r[n + j] = -&a[j];
        }
        if let Some(k) = ineq.iter().position(|&x| x == i) {
            r[2 * n + k] = Rat::one();
        }
        m.push(r);
        d.push(b.clone());
    }
    match simplex(&m, &d, &vec![Rat::zero(); width]) {
        LpOutcome::Optimal(z, _) => Ok(Some((0..n).map(|j| &z[j] - &z[n + j]).collect())),
        LpOutcome::Infeasible => Ok(None),
    }
}

/// Finds `w` with `g·w ≥ 1` for every row `g`, i.e. a solution of the
/// homogeneous strict system `G w > 0` up to scaling. Returns `None` when
/// none exists.
///
/// Solves the dual `max Σy` over `Gᵀy = 0`, `Σy ≤ 1`, `y ≥ 0`; a zero optimum
/// means the dual values of the equality rows are the wanted `w`.
pub fn positive_solution(nvars: usize, g: &[Vec<Rat>]) -> Result<Option<Vec<Rat>>> {
    if let Some(i) = g.iter().position(|r| r.len() != nvars) {
        return Err(Error::Dimension(format!("row {i} has {} coefficients for {nvars} variables", g[i].len())));
    }
    if g.is_empty() {
        return Ok(Some(vec![Rat::zero(); nvars]));
    }
    let r = g.len();
    let mut m = Vec::with_capacity(nvars + 1);
    for j in 0..nvars {
        let mut row: Vec<Rat> = g.iter().map(|gr| gr[j].clone()).collect();
        row.push(Rat::zero());
        m.push(row);
    }
    m.push(vec![Rat::one(); r + 1]);
    let mut d = vec![Rat::zero(); nvars];
    d.push(Rat::one());
    let mut c = vec![Rat::one(); r];
    c.push(Rat::zero());
    match simplex(&m, &d, &c) {
        LpOutcome::Optimal(y, duals) => {
            let value = y[..r].iter().fold(Rat::zero(), |acc, v| acc + v);
            if value.is_positive() {
                return Ok(None);
            }
            let w = duals[..nvars].to_vec();
            if g.iter().all(|gr| dot(gr, &w) >= Rat::one()) {
                Ok(Some(w))
            } else {
                Err(Error::Construction("dual values fail substitution".into()))
            }
        }
        LpOutcome::Infeasible => Err(Error::Construction("dual program is always feasible".into())),
    }
}
