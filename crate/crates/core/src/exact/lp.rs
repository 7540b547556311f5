//! Exact rational feasibility via a two-phase simplex with Bland's rule.
//!
//! Strict rows `a·x > b` are handled with one shared slack `ε`: each strict
//! row becomes `a·x - ε ≥ b`, `ε` is maximised subject to `ε ≤ 1`, and the
//! system is strictly feasible iff the optimum is positive. For homogeneous
//! systems this is the usual "strict means ≥ 1" normalisation.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{dot, nullspace, rref, RatVec};

/// One row `normal · x ≥ offset` (or `>` when `strict`). Inside the
/// equality list the row reads `normal · x = offset` and `strict` is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: RatVec,
    pub offset: BigRational,
    pub strict: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RatVec),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RatVec> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        Self { dim, ..Self::default() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    fn push(&mut self, normal: RatVec, offset: BigRational, strict: bool, equality: bool) -> &mut Self {
        assert_eq!(normal.len(), self.dim, "constraint dimension mismatch");
        let row = Constraint { normal, offset, strict };
        if equality {
            self.equalities.push(row);
        } else {
            self.inequalities.push(row);
        }
        self
    }

    /// `normal · x ≥ offset`
    pub fn ge(&mut self, normal: RatVec, offset: BigRational) -> &mut Self {
        self.push(normal, offset, false, false)
    }

    /// `normal · x > offset`
    pub fn gt(&mut self, normal: RatVec, offset: BigRational) -> &mut Self {
        self.push(normal, offset, true, false)
    }

    /// `normal · x ≤ offset`
    pub fn le(&mut self, normal: RatVec, offset: BigRational) -> &mut Self {
        let normal = normal.into_iter().map(|x| -x).collect();
        self.push(normal, -offset, false, false)
    }

    /// `normal · x = offset`
    pub fn equal(&mut self, normal: RatVec, offset: BigRational) -> &mut Self {
        self.push(normal, offset, false, true)
    }

    /// Exact replay of a candidate point against every row.
    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let eq_ok = self.equalities.iter().all(|c| dot(&c.normal, x) == c.offset);
        let ineq_ok = self.inequalities.iter().all(|c| {
            let v = dot(&c.normal, x);
            if c.strict {
                v > c.offset
            } else {
                v >= c.offset
            }
        });
        eq_ok && ineq_ok
    }
}

/// Decides feasibility exactly; a returned witness always replays.
pub fn lp_feasible(sys: &LinearSystem) -> Feasibility {
    let d = sys.dim;

    // Parametrise the affine solution set of the equalities as x0 + N y.
    let aug: Vec<RatVec> = sys
        .equalities
        .iter()
        .map(|c| {
            let mut r = c.normal.clone();
            r.push(c.offset.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(&aug, d + 1);
    if pivots.last() == Some(&d) {
        return Feasibility::Infeasible;
    }
    let mut x0 = vec![BigRational::zero(); d];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x0[p] = row[d].clone();
    }
    let homogeneous: Vec<RatVec> = sys.equalities.iter().map(|c| c.normal.clone()).collect();
    let basis = nullspace(&homogeneous, d);
    let k = basis.len();

    let mut rows: Vec<(RatVec, BigRational, bool)> = Vec::new();
    for c in &sys.inequalities {
        let coeffs: RatVec = basis.iter().map(|n| dot(&c.normal, n)).collect();
        let rhs = &c.offset - dot(&c.normal, &x0);
        if coeffs.iter().all(Zero::is_zero) {
            let ok = if c.strict { rhs.is_negative() } else { !rhs.is_positive() };
            if !ok {
                return Feasibility::Infeasible;
            }
            continue;
        }
        rows.push((coeffs, rhs, c.strict));
    }

    let y = match solve_reduced(k, &rows) {
        Some(y) => y,
        None => return Feasibility::Infeasible,
    };
    let mut x = x0;
    for (yi, n) in y.iter().zip(&basis) {
        if yi.is_zero() {
            continue;
        }
        for (xj, nj) in x.iter_mut().zip(n) {
            *xj += yi * nj;
        }
    }
    assert!(sys.is_satisfied_by(&x), "simplex witness failed exact replay");
    Feasibility::Feasible(x)
}

/// Finds free `y` with `c·y ≥ β` (or `>`) for every row.
fn solve_reduced(k: usize, rows: &[(RatVec, BigRational, bool)]) -> Option<RatVec> {
    if rows.is_empty() {
        return Some(vec![BigRational::zero(); k]);
    }
    let m = rows.len();
    let has_strict = rows.iter().any(|r| r.2);
    // Column layout: y+ | y- | slacks | [eps, cap] | artificials | rhs
    let slack0 = 2 * k;
    let eps = slack0 + m;
    let cap = eps + 1;
    let art0 = if has_strict { cap + 1 } else { eps };
    let needs_art: Vec<bool> = rows.iter().map(|r| r.1.is_positive()).collect();
    let n_art = needs_art.iter().filter(|&&b| b).count();
    let ncols = art0 + n_art;

    let mut t = Tableau::new(ncols);
    let mut art = art0;
    for (i, (c, beta, strict)) in rows.iter().enumerate() {
        let mut row = vec![BigRational::zero(); ncols + 1];
        for j in 0..k {
            row[j] = c[j].clone();
            row[k + j] = -c[j].clone();
        }
        row[slack0 + i] = -BigRational::one();
        if *strict {
            row[eps] = -BigRational::one();
        }
        row[ncols] = beta.clone();
        if needs_art[i] {
            row[art] = BigRational::one();
            t.push(row, art);
            art += 1;
        } else {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
            t.push(row, slack0 + i);
        }
    }
    if has_strict {
        let mut row = vec![BigRational::zero(); ncols + 1];
        row[eps] = BigRational::one();
        row[cap] = BigRational::one();
        row[ncols] = BigRational::one();
        t.push(row, cap);
    }

    if n_art > 0 {
        let mut cost = vec![BigRational::zero(); ncols];
        for c in cost.iter_mut().skip(art0) {
            *c = BigRational::one();
        }
        let allowed = vec![true; ncols];
        t.optimize(&cost, &allowed);
        if t.objective_value(&cost).is_positive() {
            return None;
        }
        t.drive_out(art0);
    }

    let allowed: Vec<bool> = (0..ncols).map(|j| j < art0).collect();
    if has_strict {
        let mut cost = vec![BigRational::zero(); ncols];
        cost[eps] = -BigRational::one();
        t.optimize(&cost, &allowed);
        if !t.value_of(eps).is_positive() {
            return None;
        }
    }
    Some((0..k).map(|j| t.value_of(j) - t.value_of(k + j)).collect())
}

struct Tableau {
    ncols: usize,
    rows: Vec<RatVec>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), basis: Vec::new() }
    }

    fn push(&mut self, row: RatVec, basic: usize) {
        self.rows.push(row);
        self.basis.push(basic);
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let s = &pivot_row[j] * &f;
                row[j] -= s;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[BigRational]) -> RatVec {
        let mut z = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    z[j] -= &cost[b] * &row[j];
                }
            }
        }
        z
    }

    /// Minimises `cost` over the current feasible basis using Bland's rule.
    /// Every caller supplies a bounded objective.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) {
        loop {
            let z = self.reduced_costs(cost);
            let Some(enter) = (0..self.ncols).find(|&j| allowed[j] && z[j].is_negative()) else {
                return;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[enter];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let (r, _) = leave.expect("objective is bounded");
            self.pivot(r, enter);
        }
    }

    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(BigRational::zero(), |acc, (row, &b)| acc + &cost[b] * &row[self.ncols])
    }

    fn value_of(&self, var: usize) -> BigRational {
        self.basis
            .iter()
            .position(|&b| b == var)
            .map_or_else(BigRational::zero, |i| self.rows[i][self.ncols].clone())
    }

    /// Pivots zero-valued artificial variables out of the basis, dropping
    /// rows that turn out to be redundant.
    fn drive_out(&mut self, art0: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= art0 {
                match (0..art0).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn empty_system_is_feasible_at_origin() {
        let sys = LinearSystem::new(1);
        assert_eq!(lp_feasible(&sys), Feasibility::Feasible(vec![q(0)]));
    }

    #[test]
    fn contradictory_bounds() {
        let mut sys = LinearSystem::new(1);
        sys.ge(vec![q(1)], q(1)).le(vec![q(1)], q(0));
        assert_eq!(lp_feasible(&sys), Feasibility::Infeasible);
    }

    #[test]
    fn strict_versus_weak() {
        // x ≥ 0, x ≤ 0 is feasible; x > 0, x ≤ 0 is not.
        let mut weak = LinearSystem::new(1);
        weak.ge(vec![q(1)], q(0)).le(vec![q(1)], q(0));
        assert!(lp_feasible(&weak).is_feasible());
        let mut strict = LinearSystem::new(1);
        strict.gt(vec![q(1)], q(0)).le(vec![q(1)], q(0));
        assert!(!lp_feasible(&strict).is_feasible());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut sys = LinearSystem::new(2);
        sys.equal(vec![q(1), q(1)], q(1)).equal(vec![q(2), q(2)], q(3));
        assert!(!lp_feasible(&sys).is_feasible());
    }

    #[test]
    fn mixed_system_witness_replays() {
        // x + y = 4, x - y > 1, y ≥ 1/2, x ≤ 3
        let mut sys = LinearSystem::new(2);
        sys.equal(vec![q(1), q(1)], q(4))
            .gt(vec![q(1), q(-1)], q(1))
            .ge(vec![q(0), q(1)], BigRational::new(1.into(), 2.into()))
            .le(vec![q(1), q(0)], q(3));
        let w = lp_feasible(&sys);
        assert!(sys.is_satisfied_by(w.witness().unwrap()));
    }

    #[test]
    fn strict_inhomogeneous_tight_window() {
        // 0 < x < 1/1000
        let mut sys = LinearSystem::new(1);
        sys.gt(vec![q(1)], q(0)).gt(vec![q(-1)], BigRational::new((-1).into(), 1000.into()));
        let w = lp_feasible(&sys);
        assert!(sys.is_satisfied_by(w.witness().unwrap()));
    }
}
