//! Polyhedral cones: conversion between generators and inequalities by the
//! double description method, over primitive integer vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact::{hermite_normal_form, nullspace, rank, IntMat, RatVec};

/// `{x : E x = 0, F x ≥ 0}`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeHRep {
    pub dim: usize,
    pub equalities: Vec<Vec<BigInt>>,
    pub inequalities: Vec<Vec<BigInt>>,
}

/// `span(lineality) + cone(rays)`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeVRep {
    pub dim: usize,
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

fn to_rat(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

impl ConeHRep {
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.equalities.iter().all(|e| int_dot(e, x).is_zero())
            && self.inequalities.iter().all(|f| !int_dot(f, x).is_negative())
    }

    /// Membership in the relative interior.
    pub fn contains_relative_interior(&self, x: &[BigInt]) -> bool {
        self.equalities.iter().all(|e| int_dot(e, x).is_zero())
            && self.inequalities.iter().all(|f| int_dot(f, x).is_positive())
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        let xr: Vec<BigRational> = x.to_vec();
        let d = |f: &Vec<BigInt>| crate::exact::dot(&to_rat(f), &xr);
        self.equalities.iter().all(|e| d(e).is_zero())
            && self.inequalities.iter().all(|f| !d(f).is_negative())
    }

    /// Intersection with another cone, as an unreduced H-representation.
    pub fn intersect(&self, other: &ConeHRep) -> ConeHRep {
        let mut out = self.clone();
        out.equalities.extend(other.equalities.iter().cloned());
        out.inequalities.extend(other.inequalities.iter().cloned());
        out
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zero: Bits,
}

/// Generators of `{x : E x = 0, F x ≥ 0}` in dimension `dim`.
pub fn double_description(dim: usize, equalities: &[Vec<BigInt>], inequalities: &[Vec<BigInt>]) -> ConeVRep {
    let mut lin: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();

    for a in equalities {
        if let Some(p) = lin.iter().position(|l| !int_dot(a, l).is_zero()) {
            let lp = lin.remove(p);
            let ap = int_dot(a, &lp);
            for l in lin.iter_mut() {
                let al = int_dot(a, l);
                if !al.is_zero() {
                    *l = combine(&ap, l, &al, &lp);
                }
            }
        }
    }

    let m = inequalities.len();
    let mut rays: Vec<Ray> = Vec::new();
    for (k, a) in inequalities.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !int_dot(a, l).is_zero()) {
            let mut lp = lin.remove(p);
            let mut ap = int_dot(a, &lp);
            if ap.is_negative() {
                lp = lp.into_iter().map(|x| -x).collect();
                ap = -ap;
            }
            for l in lin.iter_mut() {
                let al = int_dot(a, l);
                if !al.is_zero() {
                    *l = combine(&ap, l, &al, &lp);
                }
            }
            for r in rays.iter_mut() {
                let ar = int_dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&ap, &r.v, &ar, &lp);
                }
                r.zero.set(k);
            }
            let mut zero = Bits::new(m);
            for j in 0..k {
                zero.set(j);
            }
            rays.push(Ray { v: lp, zero });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zero.and(&rays[n].zero);
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == n || !common.subset_of(&rays[r].zero));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &values[n], &rays[p].v);
                let mut zero = common;
                zero.set(k);
                next.push(Ray { v, zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zero.set(k);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }

    ConeVRep { dim, lineality: lin, rays: rays.into_iter().map(|r| r.v).collect() }
}

/// `a·u - b·w`, made primitive; with `a > 0` this is a positive multiple of
/// `u - (b/a) w`.
fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    make_primitive(u.iter().zip(w).map(|(x, y)| a * x - b * y).collect())
}

/// Canonical integer basis of a rational subspace: Hermite form of the
/// primitive RREF rows.
fn canonical_subspace(dim: usize, rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    // Rational RREF gives a canonical basis of the subspace; scale to integers.
    let rat: Vec<RatVec> = rows.iter().map(|r| to_rat(r)).collect();
    let (r, _) = crate::exact::rref(&rat, dim);
    let ints: Vec<Vec<BigInt>> = r.iter().map(|row| crate::exact::primitive(row)).collect();
    let m = IntMat::from_big_rows(dim, ints).expect("rows share the ambient dimension");
    let (h, _) = hermite_normal_form(&m);
    h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Projects each vector onto the orthogonal complement of `span(sub)` and
/// makes it primitive, then sorts and removes duplicates and zeros.
fn canonical_modulo(dim: usize, vecs: Vec<Vec<BigInt>>, sub: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = if sub.is_empty() {
        vecs.into_iter().map(make_primitive).collect()
    } else {
        // Orthogonal complement of span(sub) has basis `comp`; project by
        // solving the normal equations in that basis.
        let sub_rat: Vec<RatVec> = sub.iter().map(|r| to_rat(r)).collect();
        let comp = nullspace(&sub_rat, dim);
        let gram: Vec<RatVec> = comp
            .iter()
            .map(|a| comp.iter().map(|b| crate::exact::dot(a, b)).collect())
            .collect();
        vecs.into_iter()
            .map(|v| {
                let vr = to_rat(&v);
                let rhs: RatVec = comp.iter().map(|c| crate::exact::dot(c, &vr)).collect();
                let coeffs = crate::exact::solve_unique(&gram, &rhs).expect("complement basis is independent");
                let mut proj = vec![BigRational::zero(); dim];
                for (c, basis) in coeffs.iter().zip(&comp) {
                    for (p, b) in proj.iter_mut().zip(basis) {
                        *p += c * b;
                    }
                }
                crate::exact::primitive(&proj)
            })
            .collect()
    };
    out.retain(|v| v.iter().any(|x| !x.is_zero()));
    out.sort();
    out.dedup();
    out
}

/// Irredundant H-representation of `cone(generators)` in `ℝ^dim`.
/// Equalities are in canonical (Hermite) form and facet normals are
/// primitive, reduced modulo the equalities, and sorted.
pub fn h_representation(dim: usize, generators: &[Vec<BigInt>]) -> ConeHRep {
    let dual = double_description(dim, &[], generators);
    let equalities = canonical_subspace(dim, dual.lineality);
    let inequalities = canonical_modulo(dim, dual.rays, &equalities);
    ConeHRep { dim, equalities, inequalities }
}

/// Canonical V-representation of an H-represented cone.
pub fn v_representation(h: &ConeHRep) -> ConeVRep {
    let v = double_description(h.dim, &h.equalities, &h.inequalities);
    let lineality = canonical_subspace(h.dim, v.lineality);
    let rays = canonical_modulo(h.dim, v.rays, &lineality);
    ConeVRep { dim: h.dim, lineality, rays }
}

/// Irredundant form of an arbitrary H-representation.
pub fn minimize(h: &ConeHRep) -> ConeHRep {
    let v = v_representation(h);
    let mut gens = v.rays.clone();
    for l in &v.lineality {
        gens.push(l.clone());
        gens.push(l.iter().map(|x| -x).collect());
    }
    h_representation(h.dim, &gens)
}

/// Dimension of the linear span of the given vectors.
pub fn span_dim(dim: usize, vecs: &[Vec<BigInt>]) -> usize {
    let rat: Vec<RatVec> = vecs.iter().map(|v| to_rat(v)).collect();
    rank(&rat, dim)
}
