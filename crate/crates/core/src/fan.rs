//! Fans built from an irrelevant ideal, and their exact certification.
//!
//! Projectivity is decided over facet-adjacent pairs only. For a complete
//! fan, local strict convexity across every wall implies global strict
//! convexity of the piecewise-linear support function.

use std::collections::{BTreeMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, lp_feasible, primitive, rank, solve_unique, Feasibility, LinearSystem, RatVec};
use crate::graded::GaleDual;
use crate::monomial::{SquarefreeIdeal, Support};
use crate::polyhedral::{h_representation, int_dot, make_primitive, span_dim, v_representation, ConeHRep};

fn rat(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// A polyhedral cone spanned by some of a fan's rays.
#[derive(Debug)]
pub struct Cone {
    rays: Support,
    generators: Vec<Vec<BigInt>>,
    ambient_dim: usize,
    hrep: OnceLock<ConeHRep>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        let hrep = OnceLock::new();
        if let Some(h) = self.hrep.get() {
            let _ = hrep.set(h.clone());
        }
        Self { rays: self.rays.clone(), generators: self.generators.clone(), ambient_dim: self.ambient_dim, hrep }
    }
}

impl Cone {
    pub fn new(rays: Support, all_rays: &[Vec<BigInt>], ambient_dim: usize) -> Self {
        let generators = rays.indices().iter().map(|&i| all_rays[i].clone()).collect();
        Self { rays, generators, ambient_dim, hrep: OnceLock::new() }
    }

    pub fn rays(&self) -> &Support {
        &self.rays
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Irredundant inequalities, computed on first use.
    pub fn hrep(&self) -> &ConeHRep {
        self.hrep.get_or_init(|| h_representation(self.ambient_dim, &self.generators))
    }

    pub fn dim(&self) -> usize {
        span_dim(self.ambient_dim, &self.generators)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Contains no line: some functional is strictly positive on every
    /// generator.
    pub fn is_strongly_convex(&self) -> bool {
        if self.generators.iter().any(|g| g.iter().all(Zero::is_zero)) {
            return false;
        }
        let mut sys = LinearSystem::new(self.ambient_dim);
        for g in &self.generators {
            sys.gt(rat(g), BigRational::zero());
        }
        lp_feasible(&sys).is_feasible()
    }

    /// Rays (fan indices) lying on a hyperplane `normal · x = 0`.
    fn rays_on(&self, normal: &[BigInt]) -> Support {
        Support::new(
            self.rays
                .indices()
                .iter()
                .zip(&self.generators)
                .filter(|(_, g)| int_dot(normal, g).is_zero())
                .map(|(&i, _)| i)
                .collect(),
        )
    }

    /// Facets as sets of fan ray indices.
    pub fn facets(&self) -> Vec<Support> {
        self.hrep().inequalities.iter().map(|f| self.rays_on(f)).collect()
    }

    /// Smallest face containing the given rays, as a set of ray indices.
    pub fn face_closure(&self, subset: &Support) -> Support {
        let gens_of = |s: &Support| -> Vec<&Vec<BigInt>> {
            self.rays
                .indices()
                .iter()
                .zip(&self.generators)
                .filter(|(i, _)| s.contains(**i))
                .map(|(_, g)| g)
                .collect()
        };
        let chosen = gens_of(subset);
        let tight: Vec<&Vec<BigInt>> = self
            .hrep()
            .inequalities
            .iter()
            .filter(|f| chosen.iter().all(|g| int_dot(f, g).is_zero()))
            .collect();
        Support::new(
            self.rays
                .indices()
                .iter()
                .zip(&self.generators)
                .filter(|(_, g)| tight.iter().all(|f| int_dot(f, g).is_zero()))
                .map(|(&i, _)| i)
                .collect(),
        )
    }
}

/// Rays plus maximal cones.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(ambient_dim: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Support>) -> Result<Self> {
        if let Some(r) = rays.iter().find(|r| r.len() != ambient_dim) {
            return Err(Error::Usage(format!("ray of length {}, expected {ambient_dim}", r.len())));
        }
        if let Some(bad) = cones.iter().flat_map(|c| c.indices()).find(|&&i| i >= rays.len()) {
            return Err(Error::Usage(format!("cone refers to ray {} of {}", bad + 1, rays.len())));
        }
        let cones = cones.into_iter().map(|s| Cone::new(s, &rays, ambient_dim)).collect();
        Ok(Self { ambient_dim, rays, cones })
    }

    pub fn from_i64(ambient_dim: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<Self> {
        let rays = rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(ambient_dim, rays, cones.iter().map(|c| Support::new(c.clone())).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn num_maximal_cones(&self) -> usize {
        self.cones.len()
    }

    /// Same fan with maximal cones listed in a different order.
    pub fn reordered(&self, order: &[usize]) -> Fan {
        Fan {
            ambient_dim: self.ambient_dim,
            rays: self.rays.clone(),
            cones: order.iter().map(|&i| self.cones[i].clone()).collect(),
        }
    }
}

/// One maximal cone per minimal generator of `b`, spanned by the rays
/// indexed by the complement of that generator.
pub fn fan_from_irrelevant(g: &GaleDual, b: &SquarefreeIdeal) -> Result<Fan> {
    if b.is_empty() {
        return Err(Error::Usage("irrelevant ideal has no generators".into()));
    }
    let n = g.num_rays();
    if let Some(s) = b.generators().iter().find(|s| s.indices().iter().any(|&i| i >= n)) {
        return Err(Error::Usage(format!("support {s} refers to a generator beyond {n}")));
    }
    let rays = g.rays();
    let fan = Fan::new(g.dim(), rays, b.generators().iter().map(|s| s.complement(n)).collect())?;
    for (s, cone) in b.generators().iter().zip(fan.cones()) {
        if !cone.is_strongly_convex() {
            return Err(Error::NotStronglyConvex { support: s.one_based(), rays: cone.rays().one_based() });
        }
    }
    Ok(fan)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    ZeroRay { ray: usize },
    RepeatedRay { first: usize, second: usize },
    UnusedRay { ray: usize },
    NotStronglyConvex { cone: usize },
    NonExtremeRay { cone: usize, ray: usize },
    /// The intersection is larger than the cone on the shared rays.
    IntersectionTooLarge { first: usize, second: usize },
    /// The shared rays do not span a face of one of the cones.
    NotAFace { first: usize, second: usize },
}

impl std::fmt::Display for FanViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FanViolation::ZeroRay { ray } => write!(f, "ray {} is zero", ray + 1),
            FanViolation::RepeatedRay { first, second } => {
                write!(f, "rays {} and {} coincide", first + 1, second + 1)
            }
            FanViolation::UnusedRay { ray } => write!(f, "ray {} lies in no maximal cone", ray + 1),
            FanViolation::NotStronglyConvex { cone } => write!(f, "cone {} contains a line", cone + 1),
            FanViolation::NonExtremeRay { cone, ray } => {
                write!(f, "ray {} is not extreme in cone {}", ray + 1, cone + 1)
            }
            FanViolation::IntersectionTooLarge { first, second } => write!(
                f,
                "cones {} and {} meet in more than the cone on their shared rays",
                first + 1,
                second + 1
            ),
            FanViolation::NotAFace { first, second } => write!(
                f,
                "shared rays of cones {} and {} do not form a common face",
                first + 1,
                second + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanValidity {
    pub valid: bool,
    pub violation: Option<FanViolation>,
}

impl FanValidity {
    fn fail(v: FanViolation) -> Self {
        Self { valid: false, violation: Some(v) }
    }
}

/// Whether `σ ∩ σ'` equals the cone on the common rays and is a face of
/// both, decided by intersecting H-representations.
pub fn meet_is_common_face(a: &Cone, b: &Cone) -> Option<FanViolation> {
    let common = Support::new(a.rays().indices().iter().copied().filter(|&i| b.rays().contains(i)).collect());
    for cone in [a, b] {
        if cone.face_closure(&common) != common {
            return Some(FanViolation::NotAFace { first: 0, second: 0 });
        }
    }
    let meet = v_representation(&a.hrep().intersect(b.hrep()));
    if !meet.lineality.is_empty() {
        return Some(FanViolation::IntersectionTooLarge { first: 0, second: 0 });
    }
    let common_gens: Vec<Vec<BigInt>> = a
        .rays()
        .indices()
        .iter()
        .zip(a.generators())
        .filter(|(i, _)| common.contains(**i))
        .map(|(_, g)| g.clone())
        .collect();
    let common_cone = h_representation(a.ambient_dim(), &common_gens);
    if meet.rays.iter().any(|r| !common_cone.contains(r)) {
        return Some(FanViolation::IntersectionTooLarge { first: 0, second: 0 });
    }
    None
}

/// Independent check of the same property by a separating functional:
/// some `f` with `f > 0` on rays only in `a`, `f < 0` on rays only in `b`,
/// and `f = 0` on the shared rays.
pub fn separating_functional(a: &Cone, b: &Cone) -> Option<RatVec> {
    let mut sys = LinearSystem::new(a.ambient_dim());
    for (i, g) in a.rays().indices().iter().zip(a.generators()) {
        if b.rays().contains(*i) {
            sys.equal(rat(g), BigRational::zero());
        } else {
            sys.gt(rat(g), BigRational::zero());
        }
    }
    for (i, g) in b.rays().indices().iter().zip(b.generators()) {
        if !a.rays().contains(*i) {
            sys.gt(rat(g).into_iter().map(|x| -x).collect(), BigRational::zero());
        }
    }
    match lp_feasible(&sys) {
        Feasibility::Feasible(f) => Some(f),
        Feasibility::Infeasible => None,
    }
}

pub fn validate_fan(f: &Fan) -> FanValidity {
    let n = f.rays.len();
    let prim: Vec<Vec<BigInt>> = f.rays.iter().map(|r| make_primitive(r.clone())).collect();
    for i in 0..n {
        if prim[i].iter().all(Zero::is_zero) {
            return FanValidity::fail(FanViolation::ZeroRay { ray: i });
        }
        if let Some(j) = (0..i).find(|&j| prim[j] == prim[i]) {
            return FanValidity::fail(FanViolation::RepeatedRay { first: j, second: i });
        }
    }
    if let Some(ray) = (0..n).find(|&i| !f.cones.iter().any(|c| c.rays().contains(i))) {
        return FanValidity::fail(FanViolation::UnusedRay { ray });
    }
    for (k, c) in f.cones.iter().enumerate() {
        if !c.is_strongly_convex() {
            return FanValidity::fail(FanViolation::NotStronglyConvex { cone: k });
        }
        for &i in c.rays().indices() {
            if c.face_closure(&Support::new(vec![i])) != Support::new(vec![i]) {
                return FanValidity::fail(FanViolation::NonExtremeRay { cone: k, ray: i });
            }
        }
    }
    for a in 0..f.cones.len() {
        for b in a + 1..f.cones.len() {
            if let Some(v) = meet_is_common_face(&f.cones[a], &f.cones[b]) {
                let v = match v {
                    FanViolation::NotAFace { .. } => FanViolation::NotAFace { first: a, second: b },
                    _ => FanViolation::IntersectionTooLarge { first: a, second: b },
                };
                return FanValidity::fail(v);
            }
        }
    }
    FanValidity { valid: true, violation: None }
}

/// Every maximal cone has linearly independent rays.
pub fn is_simplicial(f: &Fan) -> bool {
    f.cones.iter().all(|c| c.rays().len() == c.dim())
}

/// A wall between two maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub first: usize,
    pub second: usize,
    pub facet: Support,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    pub reason: Option<String>,
    pub walls: Vec<Wall>,
}

/// Facet-sharing pairs, plus facets by the number of cones containing them.
fn facet_incidence(f: &Fan) -> BTreeMap<Support, Vec<usize>> {
    let mut owners: BTreeMap<Support, Vec<usize>> = BTreeMap::new();
    for (k, c) in f.cones.iter().enumerate() {
        for facet in c.facets() {
            owners.entry(facet).or_default().push(k);
        }
    }
    owners
}

pub fn is_complete(f: &Fan) -> Completeness {
    let fail = |reason: String| Completeness { complete: false, reason: Some(reason), walls: Vec::new() };
    if f.cones.is_empty() {
        return fail("fan has no cones".into());
    }
    if let Some(k) = f.cones.iter().position(|c| !c.is_full_dimensional()) {
        return fail(format!("non-pure fan: cone {} is not full-dimensional", k + 1));
    }
    let owners = facet_incidence(f);
    let mut walls = Vec::new();
    for (facet, cones) in &owners {
        match cones.len() {
            2 => walls.push(Wall { first: cones[0], second: cones[1], facet: facet.clone() }),
            1 => return fail(format!("facet {facet} of cone {} is not shared", cones[0] + 1)),
            m => return fail(format!("facet {facet} lies in {m} maximal cones")),
        }
    }
    let mut adj = vec![Vec::new(); f.cones.len()];
    for w in &walls {
        adj[w.first].push(w.second);
        adj[w.second].push(w.first);
    }
    let mut seen = vec![false; f.cones.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for &d in &adj[c] {
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return fail(format!("cone {} is not connected to cone 1 through walls", k + 1));
    }
    Completeness { complete: true, reason: None, walls }
}

/// Values of a piecewise-linear function on the rays together with the
/// linear functional it restricts to on each maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    pub ray_values: RatVec,
    pub cone_functionals: Vec<RatVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    pub projective: bool,
    pub witness: Option<SupportFunction>,
    pub reason: Option<String>,
}

/// Per-cone linear data: a basis of rays and, for each ray of the cone, the
/// coefficients expressing `m_σ(v)` in terms of the basis ray values.
struct ConeChart {
    basis: Vec<usize>,
    // evaluation coefficients for arbitrary vectors: m_σ(v) = Σ w_j ψ_{basis_j}
    transpose: Vec<RatVec>,
}

impl ConeChart {
    fn new(f: &Fan, c: &Cone) -> Option<Self> {
        let d = f.ambient_dim;
        let mut basis: Vec<usize> = Vec::new();
        let mut rows: Vec<RatVec> = Vec::new();
        for &i in c.rays().indices() {
            let mut trial = rows.clone();
            trial.push(rat(&f.rays[i]));
            if rank(&trial, d) == trial.len() {
                rows = trial;
                basis.push(i);
            }
        }
        if basis.len() != d {
            return None;
        }
        let transpose: Vec<RatVec> = (0..d).map(|r| rows.iter().map(|row| row[r].clone()).collect()).collect();
        Some(Self { basis, transpose })
    }

    /// Coefficients `w` with `m_σ(v) = Σ w_j ψ(basis_j)`.
    fn eval_coeffs(&self, v: &[BigInt]) -> RatVec {
        solve_unique(&self.transpose, &rat(v)).expect("basis rays are independent")
    }

    /// `m_σ(v)` as a row over all ray values.
    fn eval_row(&self, n: usize, v: &[BigInt]) -> RatVec {
        let mut row = vec![BigRational::zero(); n];
        for (w, &j) in self.eval_coeffs(v).into_iter().zip(&self.basis) {
            row[j] += w;
        }
        row
    }

    fn functional(&self, psi: &[BigRational]) -> RatVec {
        let rhs: RatVec = self.basis.iter().map(|&j| psi[j].clone()).collect();
        let rows: Vec<RatVec> = (0..self.transpose.len())
            .map(|r| self.transpose.iter().map(|col| col[r].clone()).collect())
            .collect();
        solve_unique(&rows, &rhs).expect("basis rays are independent")
    }
}

fn unit_row(n: usize, i: usize) -> RatVec {
    let mut r = vec![BigRational::zero(); n];
    r[i] = BigRational::one();
    r
}

fn sub(a: &[BigRational], b: &[BigRational]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The strict-convexity system in the ray values `ψ`. Rows are homogeneous;
/// strict rows say the support function bends upward across a wall. `ψ`
/// vanishes on a fixed basis of rays, which removes the freedom of adding
/// a global linear function.
pub fn projectivity_system(f: &Fan, walls: &[Wall]) -> Option<LinearSystem> {
    let n = f.rays.len();
    let d = f.ambient_dim;
    let charts: Vec<ConeChart> = f.cones.iter().map(|c| ConeChart::new(f, c)).collect::<Option<_>>()?;
    let mut sys = LinearSystem::new(n);

    let mut gauge: Vec<RatVec> = Vec::new();
    for i in 0..n {
        let mut trial = gauge.clone();
        trial.push(rat(&f.rays[i]));
        if rank(&trial, d) == trial.len() {
            gauge = trial;
            sys.equal(unit_row(n, i), BigRational::zero());
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut add = |sys: &mut LinearSystem, row: RatVec, strict: bool| {
        let key = (primitive(&row), strict);
        if key.0.iter().all(Zero::is_zero) || !seen.insert(key) {
            return;
        }
        if strict {
            sys.gt(row, BigRational::zero());
        } else {
            sys.equal(row, BigRational::zero());
        }
    };

    for (c, chart) in f.cones.iter().zip(&charts) {
        for &k in c.rays().indices() {
            if !chart.basis.contains(&k) {
                let row = sub(&chart.eval_row(n, &f.rays[k]), &unit_row(n, k));
                add(&mut sys, row, false);
            }
        }
    }
    for w in walls {
        for (own, other) in [(w.first, w.second), (w.second, w.first)] {
            for &v in f.cones[own].rays().indices() {
                if w.facet.contains(v) {
                    continue;
                }
                let row = sub(&unit_row(n, v), &charts[other].eval_row(n, &f.rays[v]));
                add(&mut sys, row, true);
            }
        }
    }
    Some(sys)
}

/// Exact replay of a support function against the agreement and
/// strictness constraints on every wall.
pub fn replay_support_function(f: &Fan, walls: &[Wall], s: &SupportFunction) -> bool {
    let eval = |k: usize, v: usize| dot(&s.cone_functionals[k], &rat(&f.rays[v]));
    let values_ok = f.cones.iter().enumerate().all(|(k, c)| {
        c.rays().indices().iter().all(|&v| eval(k, v) == s.ray_values[v])
    });
    let walls_ok = walls.iter().all(|w| {
        let agree = w.facet.indices().iter().all(|&v| eval(w.first, v) == eval(w.second, v));
        let strict = [(w.first, w.second), (w.second, w.first)].iter().all(|&(own, other)| {
            f.cones[own]
                .rays()
                .indices()
                .iter()
                .filter(|v| !w.facet.contains(**v))
                .all(|&v| eval(own, v) >= eval(other, v) + BigRational::one())
        });
        agree && strict
    });
    values_ok && walls_ok
}

pub fn is_projective(f: &Fan) -> Projectivity {
    let fail = |reason: &str| Projectivity { projective: false, witness: None, reason: Some(reason.into()) };
    let completeness = is_complete(f);
    if !completeness.complete {
        return fail("fan is not complete");
    }
    let Some(sys) = projectivity_system(f, &completeness.walls) else {
        return fail("a maximal cone is not full-dimensional");
    };
    let psi = match lp_feasible(&sys) {
        Feasibility::Infeasible => return fail("no strictly convex support function exists"),
        Feasibility::Feasible(psi) => psi,
    };
    let min_slack = sys
        .inequalities()
        .iter()
        .map(|c| dot(&c.normal, &psi))
        .min()
        .unwrap_or_else(BigRational::one);
    let psi: RatVec = psi.into_iter().map(|x| x / &min_slack).collect();
    let charts: Vec<ConeChart> = f.cones.iter().map(|c| ConeChart::new(f, c).expect("checked above")).collect();
    let witness = SupportFunction {
        cone_functionals: charts.iter().map(|ch| ch.functional(&psi)).collect(),
        ray_values: psi,
    };
    assert!(
        replay_support_function(f, &completeness.walls, &witness),
        "support function witness failed exact replay"
    );
    Projectivity { projective: true, witness: Some(witness), reason: None }
}

/// Deterministic direction with prime-power coordinates and a
/// seed-dependent sign pattern.
pub fn generic_direction(dim: usize, seed: u64) -> Vec<BigInt> {
    const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    (0..dim)
        .map(|i| {
            let p = BigInt::from(PRIMES[i % PRIMES.len()]);
            let exp = 1 + ((seed as usize / (1 << dim.min(32))) + i) % 3;
            let v = num_traits::pow(p, exp);
            if seed >> (i % 64) & 1 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayShot {
    pub containing: Vec<usize>,
    pub interior: Vec<usize>,
}

impl RayShot {
    /// In exactly one interior, or on a face shared by several cones.
    pub fn is_consistent_with_completeness(&self) -> bool {
        (self.interior.len() == 1 && self.containing.len() == 1)
            || (self.interior.is_empty() && self.containing.len() >= 2)
    }
}

pub fn ray_shoot(f: &Fan, direction: &[BigInt]) -> RayShot {
    let mut containing = Vec::new();
    let mut interior = Vec::new();
    for (k, c) in f.cones.iter().enumerate() {
        let h = c.hrep();
        if h.contains(direction) {
            containing.push(k);
            if h.is_full_dimensional() && h.inequalities.iter().all(|g| int_dot(g, direction).is_positive()) {
                interior.push(k);
            }
        }
    }
    RayShot { containing, interior }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset;
    use crate::graded::gale_dual;
    use crate::monomial::irrelevant_radical;

    fn p2_fan() -> Fan {
        Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap()
    }

    #[test]
    fn plane_from_irrelevant_ideal() {
        let q = dataset::projective_space(2);
        let g = gale_dual(&q).unwrap();
        let b = irrelevant_radical(&q, &[1], 1, false).unwrap().ideal;
        let f = fan_from_irrelevant(&g, &b).unwrap();
        let cones: Vec<Vec<usize>> = f.cones().iter().map(|c| c.rays().indices().to_vec()).collect();
        assert_eq!(cones, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn plane_certifications() {
        let f = p2_fan();
        assert!(validate_fan(&f).valid);
        assert!(is_simplicial(&f));
        let c = is_complete(&f);
        assert!(c.complete);
        assert_eq!(c.walls.len(), 3);
        let p = is_projective(&f);
        assert!(p.projective);
        assert!(replay_support_function(&f, &c.walls, p.witness.as_ref().unwrap()));
    }

    /// The hand-built function ψ = (0, 0, 1) on the rays of ℙ², with
    /// m = (0,0) on cone{e1,e2}, (−1,0) on cone{e2,v3}, (0,−1) on cone{e1,v3},
    /// satisfies every row of the strict-convexity system by substitution.
    #[test]
    fn plane_strict_convexity_system_has_hand_built_solution() {
        let f = p2_fan();
        let walls = is_complete(&f).walls;
        let sys = projectivity_system(&f, &walls).unwrap();
        let q = |n: i64| BigRational::from_integer(n.into());
        assert!(sys.is_satisfied_by(&[q(0), q(0), q(1)]));
        let hand = SupportFunction {
            ray_values: vec![q(0), q(0), q(1)],
            cone_functionals: vec![vec![q(-1), q(0)], vec![q(0), q(-1)], vec![q(0), q(0)]],
        };
        assert!(replay_support_function(&f, &walls, &hand));
        assert!(lp_feasible(&sys).is_feasible());
    }

    #[test]
    fn overlapping_cones_are_not_a_fan() {
        let f = Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 1]], &[vec![0, 1], vec![2, 3]])
            .unwrap();
        let v = validate_fan(&f);
        assert!(!v.valid);
        assert_eq!(v.violation, Some(FanViolation::IntersectionTooLarge { first: 0, second: 1 }));
    }

    #[test]
    fn single_quadrant_is_incomplete() {
        let f = Fan::from_i64(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert!(validate_fan(&f).valid);
        let c = is_complete(&f);
        assert!(!c.complete);
        assert!(c.reason.unwrap().contains("not shared"));
        assert!(!is_projective(&f).projective);
    }

    #[test]
    fn lower_dimensional_cone_makes_fan_impure() {
        let f = Fan::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![2]]).unwrap();
        let c = is_complete(&f);
        assert!(!c.complete);
        assert!(c.reason.unwrap().starts_with("non-pure"));
    }

    #[test]
    fn non_simplicial_cone() {
        // cone over a square
        let f = Fan::from_i64(
            3,
            &[vec![1, 1, 1], vec![1, -1, 1], vec![-1, 1, 1], vec![-1, -1, 1]],
            &[vec![0, 1, 2, 3]],
        )
        .unwrap();
        assert!(validate_fan(&f).valid);
        assert!(!is_simplicial(&f));
    }

    #[test]
    fn line_is_not_strongly_convex() {
        let f = Fan::from_i64(1, &[vec![1], vec![-1]], &[vec![0, 1]]).unwrap();
        assert_eq!(validate_fan(&f).violation, Some(FanViolation::NotStronglyConvex { cone: 0 }));
    }

    #[test]
    fn twisted_prism_is_complete_but_not_projective() {
        // cone over a triangular prism; each side square is split along a
        // diagonal, all turning the same way round the axis
        let rays = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![-1, -1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![-1, -1, 1],
            vec![0, 0, -1],
            vec![0, 0, 1],
        ];
        let caps = vec![vec![0, 1, 6], vec![1, 2, 6], vec![2, 0, 6], vec![3, 4, 7], vec![4, 5, 7], vec![5, 3, 7]];
        let twisted = [vec![0, 1, 4], vec![0, 4, 3], vec![1, 2, 5], vec![1, 5, 4], vec![2, 0, 3], vec![2, 3, 5]];
        let untwisted = [vec![0, 1, 4], vec![0, 4, 3], vec![1, 2, 5], vec![1, 5, 4], vec![2, 0, 5], vec![0, 5, 3]];

        let f = Fan::from_i64(3, &rays, &[caps.clone(), twisted.to_vec()].concat()).unwrap();
        assert!(validate_fan(&f).valid);
        assert!(is_complete(&f).complete);
        let p = is_projective(&f);
        assert!(!p.projective && p.witness.is_none());

        let g = Fan::from_i64(3, &rays, &[caps, untwisted.to_vec()].concat()).unwrap();
        assert!(validate_fan(&g).valid);
        let p = is_projective(&g);
        assert!(p.projective);
        assert!(replay_support_function(&g, &is_complete(&g).walls, p.witness.as_ref().unwrap()));
    }

    #[test]
    fn ray_shooting_on_plane() {
        let f = p2_fan();
        for seed in 0..8 {
            let shot = ray_shoot(&f, &generic_direction(2, seed));
            assert!(shot.is_consistent_with_completeness(), "seed {seed}: {shot:?}");
        }
        let quad = Fan::from_i64(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let misses = (0..4).filter(|&s| ray_shoot(&quad, &generic_direction(2, s)).containing.is_empty()).count();
        assert!(misses > 0);
    }

    #[test]
    fn separation_agrees_with_hrep_route() {
        let f = p2_fan();
        for a in 0..3 {
            for b in a + 1..3 {
                let h = meet_is_common_face(&f.cones()[a], &f.cones()[b]).is_none();
                let s = separating_functional(&f.cones()[a], &f.cones()[b]).is_some();
                assert_eq!(h, s);
            }
        }
    }
}
