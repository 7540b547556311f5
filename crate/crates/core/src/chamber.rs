//! The effective cone of a grading, extremality of generator classes, and
//! GIT chambers of divisor classes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{lp_feasible, rank, LinearSystem, RatVec};
use crate::graded::{DegreeMatrix, Multidegree};
use crate::monomial::irrelevant_radical;
use crate::polyhedral::{h_representation, minimize, ConeHRep};

/// Largest number of generators for which subset enumeration is attempted.
pub const SUBSET_GUARD: usize = 16;

fn rat(v: &[i64]) -> RatVec {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `w ∈ cone(cols)`, optionally with every coefficient strictly positive.
fn in_cone(cols: &[&[i64]], w: &[i64], strict: bool) -> bool {
    let n = cols.len();
    let mut sys = LinearSystem::new(n);
    for (row, &wr) in w.iter().enumerate() {
        let normal: RatVec = cols.iter().map(|c| BigRational::from_integer(c[row].into())).collect();
        sys.equal(normal, BigRational::from_integer(wr.into()));
    }
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::from_integer(1.into());
        if strict {
            sys.gt(e, BigRational::zero());
        } else {
            sys.ge(e, BigRational::zero());
        }
    }
    lp_feasible(&sys).is_feasible()
}

/// The cone in the grading space spanned by the generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveCone {
    pub generators: Vec<Multidegree>,
    pub hrep: ConeHRep,
}

impl EffectiveCone {
    pub fn contains(&self, w: &[i64]) -> bool {
        self.hrep.contains(&big(w))
    }

    /// Interior membership as a positive combination of all generators of
    /// a full-dimensional cone.
    pub fn contains_in_interior(&self, w: &[i64]) -> bool {
        let cols: Vec<&[i64]> = self.generators.iter().map(|c| c.as_slice()).collect();
        self.hrep.is_full_dimensional() && in_cone(&cols, w, true)
    }
}

pub fn effective_cone(q: &DegreeMatrix) -> EffectiveCone {
    let gens: Vec<Vec<BigInt>> = q.columns().iter().map(|c| big(c)).collect();
    EffectiveCone { generators: q.columns().to_vec(), hrep: h_representation(q.pic_rank(), &gens) }
}

/// Column `i` is not a nonnegative combination of the columns spanning
/// other rays.
pub fn spans_extremal_ray(q: &DegreeMatrix, i: usize) -> Result<bool> {
    let ci = q.column(i);
    if ci.iter().all(|&x| x == 0) {
        return Err(Error::Usage(format!("column {} is zero", i + 1)));
    }
    let same_ray = |c: &[i64]| {
        let rows = vec![rat(ci), rat(c)];
        rank(&rows, ci.len()) == 1 && c.iter().zip(ci).map(|(a, b)| a * b).sum::<i64>() > 0
    };
    let others: Vec<&[i64]> =
        q.columns().iter().map(|c| c.as_slice()).filter(|c| !same_ray(c) && c.iter().any(|&x| x != 0)).collect();
    Ok(!in_cone(&others, ci, false))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub hrep: ConeHRep,
    pub representative: Multidegree,
    pub full_dimensional: bool,
}

/// Intersection of all cones `cone(q_I)` containing `w`. Only linearly
/// independent `I` are intersected: every other containing subset contains
/// one of them that still contains `w`.
pub fn chamber_of(q: &DegreeMatrix, w: &[i64]) -> Result<Chamber> {
    let n = q.num_gens();
    let r = q.pic_rank();
    if w.len() != r {
        return Err(Error::Usage(format!("degree has length {}, expected {r}", w.len())));
    }
    if n > SUBSET_GUARD {
        return Err(Error::GuardExceeded("subset enumeration too large".into()));
    }
    if !effective_cone(q).contains(w) {
        return Err(Error::OutsideEffectiveCone);
    }
    let mut combined = ConeHRep { dim: r, equalities: Vec::new(), inequalities: Vec::new() };
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > r {
            continue;
        }
        let cols: Vec<&[i64]> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| q.column(j)).collect();
        let rows: Vec<RatVec> = cols.iter().map(|c| rat(c)).collect();
        if rank(&rows, r) != cols.len() || !in_cone(&cols, w, false) {
            continue;
        }
        let gens: Vec<Vec<BigInt>> = cols.iter().map(|c| big(c)).collect();
        combined = combined.intersect(&h_representation(r, &gens));
    }
    if w.iter().all(|&x| x == 0) {
        // the empty subset spans the origin
        combined = h_representation(r, &[]);
    }
    let hrep = minimize(&combined);
    let full_dimensional = hrep.is_full_dimensional() && {
        let mut sys = LinearSystem::new(r);
        for f in &hrep.inequalities {
            sys.gt(f.iter().cloned().map(BigRational::from_integer).collect(), BigRational::zero());
        }
        lp_feasible(&sys).is_feasible()
    };
    Ok(Chamber { hrep, representative: w.to_vec(), full_dimensional })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberComparison {
    pub same: bool,
    pub warnings: Vec<String>,
}

/// Equality of irrelevant radicals at the given depth.
pub fn same_chamber(
    q: &DegreeMatrix,
    w1: &[i64],
    w2: &[i64],
    depth: usize,
    check_stabilization: bool,
) -> Result<ChamberComparison> {
    let eff = effective_cone(q);
    for w in [w1, w2] {
        if w.len() != q.pic_rank() {
            return Err(Error::Usage(format!("degree has length {}, expected {}", w.len(), q.pic_rank())));
        }
        if !eff.contains(w) {
            return Err(Error::OutsideEffectiveCone);
        }
    }
    let a = irrelevant_radical(q, w1, depth, check_stabilization)?;
    let b = irrelevant_radical(q, w2, depth, check_stabilization)?;
    let warnings = a.warning.iter().chain(&b.warning).cloned().collect();
    Ok(ChamberComparison { same: a.ideal == b.ideal, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset;

    fn q(r: usize, cols: &[&[i64]]) -> DegreeMatrix {
        DegreeMatrix::with_default_labels(r, cols.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn effective_cones_of_small_cases() {
        let quad = effective_cone(&dataset::p1xp1());
        assert!(quad.hrep.equalities.is_empty());
        assert_eq!(quad.hrep.inequalities, vec![big(&[0, 1]), big(&[1, 0])]);
        let ray = effective_cone(&dataset::projective_space(2));
        assert_eq!(ray.hrep.inequalities, vec![big(&[1])]);
    }

    #[test]
    fn delpezzo_classes_are_interior() {
        let eff = effective_cone(&dataset::delpezzo4());
        assert!(eff.hrep.is_full_dimensional());
        assert!(eff.contains_in_interior(&dataset::PAPER_AMPLE));
        assert!(eff.contains_in_interior(&dataset::ANTICANONICAL));
        assert!(!eff.contains_in_interior(&[0, 1, 0, 0, 0]));
    }

    #[test]
    fn extremality() {
        let prod = dataset::p1xp1();
        assert!((0..4).all(|i| spans_extremal_ray(&prod, i).unwrap()));
        let tri = q(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(!spans_extremal_ray(&tri, 2).unwrap());
        assert!(spans_extremal_ray(&tri, 0).unwrap());
    }

    #[test]
    fn small_chambers() {
        let c = chamber_of(&dataset::projective_space(2), &[1]).unwrap();
        assert_eq!(c.hrep.inequalities, vec![big(&[1])]);
        assert!(c.full_dimensional);
        let c = chamber_of(&dataset::p1xp1(), &[1, 1]).unwrap();
        assert_eq!(c.hrep, effective_cone(&dataset::p1xp1()).hrep);
    }

    /// Oracle: all 16 subsets of ℙ¹×ℙ¹, intersected without the
    /// independence shortcut.
    #[test]
    fn chamber_matches_full_subset_enumeration() {
        let pq = q(2, &[&[1, 0], &[1, 1], &[0, 1], &[1, 2]]);
        for w in [[2, 1], [1, 1], [1, 3], [3, 4]] {
            let mut all = ConeHRep { dim: 2, equalities: vec![], inequalities: vec![] };
            for mask in 1u32..16 {
                let cols: Vec<&[i64]> = (0..4).filter(|j| mask >> j & 1 == 1).map(|j| pq.column(j)).collect();
                if in_cone(&cols, &w, false) {
                    let gens: Vec<Vec<BigInt>> = cols.iter().map(|c| big(c)).collect();
                    all = all.intersect(&h_representation(2, &gens));
                }
            }
            assert_eq!(chamber_of(&pq, &w).unwrap().hrep, minimize(&all), "w = {w:?}");
        }
    }

    #[test]
    fn outside_and_guard() {
        assert_eq!(chamber_of(&dataset::p1xp1(), &[-1, 1]).unwrap_err(), Error::OutsideEffectiveCone);
        let big_q = DegreeMatrix::with_default_labels(1, vec![vec![1]; 17]).unwrap();
        assert_eq!(
            chamber_of(&big_q, &[1]).unwrap_err(),
            Error::GuardExceeded("subset enumeration too large".into())
        );
    }

    #[test]
    fn same_chamber_small() {
        let prod = dataset::p1xp1();
        assert!(same_chamber(&prod, &[1, 1], &[2, 3], 1, true).unwrap().same);
        assert!(!same_chamber(&prod, &[1, 1], &[1, 0], 1, false).unwrap().same);
    }
}
