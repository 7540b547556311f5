//! Exact projective linear algebra over ℚ: linear subspaces of ℙᵐ, their
//! intersections, general position of points on a plane, and a solver for
//! planes in ℙ⁵ meeting four given planes in one point each.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::dataset::{PRINTED_POINTS, SIGMA_EQUATIONS, TARGET_PLANE_ZEROS};
use crate::error::{Error, Result};
use crate::exact::{determinant, is_zero_vec, nullspace, primitive, rank, rref, RatVec};

/// Sampling box for the transversal solver.
pub const SAMPLE_BOUND: i64 = 10;

fn rat(v: &[i64]) -> RatVec {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// A point of ℙᵐ with primitive integer coordinates whose first nonzero
/// entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<BigInt>);

impl ProjPoint {
    pub fn new(coords: &[BigRational]) -> Option<Self> {
        if is_zero_vec(coords) {
            return None;
        }
        let mut p = primitive(coords);
        if crate::exact::leading_sign(&p) < 0 {
            p.iter_mut().for_each(|x| *x = -x.clone());
        }
        Some(Self(p))
    }

    pub fn from_i64(coords: &[i64]) -> Option<Self> {
        Self::new(&rat(coords))
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn as_rat(&self) -> RatVec {
        self.0.iter().cloned().map(BigRational::from_integer).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|x| x.to_i64().map(Into::into).unwrap_or_else(|| x.to_string().into()))
            .collect();
        v.serialize(s)
    }
}

/// Projectivization of a nonzero linear subspace of ℚᵐ⁺¹, stored by its
/// reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjSubspace {
    ambient_dim: usize,
    basis: Vec<RatVec>,
    pivots: Vec<usize>,
}

impl ProjSubspace {
    /// Span of the given vectors; `None` if they are all zero.
    pub fn span(ambient_dim: usize, vectors: &[RatVec]) -> Option<Self> {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim + 1), "coordinate length mismatch");
        let (basis, pivots) = rref(vectors, ambient_dim + 1);
        (!basis.is_empty()).then_some(Self { ambient_dim, basis, pivots })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn projective_dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    /// Linear forms cutting out the subspace.
    pub fn equations(&self) -> Vec<RatVec> {
        nullspace(&self.basis, self.ambient_dim + 1)
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(p.to_vec());
        rank(&rows, self.ambient_dim + 1) == self.basis.len()
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.contains(&p.as_rat())
    }

    /// Coordinates of a vector of the subspace in the echelon basis.
    pub fn coordinates_of(&self, p: &[BigRational]) -> Option<RatVec> {
        self.contains(p).then(|| self.pivots.iter().map(|&c| p[c].clone()).collect())
    }

    /// The point, when the subspace is zero-dimensional.
    pub fn as_point(&self) -> Option<ProjPoint> {
        (self.basis.len() == 1).then(|| ProjPoint::new(&self.basis[0]).expect("basis rows are nonzero"))
    }

    pub fn join(&self, other: &ProjSubspace) -> ProjSubspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        ProjSubspace::span(self.ambient_dim, &rows).expect("nonzero")
    }
}

/// Solution set of homogeneous linear forms in ℙᵐ.
pub fn subspace_from_equations(forms: &[RatVec], ambient_dim: usize) -> Result<ProjSubspace> {
    if forms.iter().any(|f| f.len() != ambient_dim + 1) {
        return Err(Error::Usage(format!("linear forms must have {} coefficients", ambient_dim + 1)));
    }
    ProjSubspace::span(ambient_dim, &nullspace(forms, ambient_dim + 1)).ok_or(Error::EmptyProjectiveSet)
}

/// The coordinate subspace `{x_i = 0 for i in zeros}`.
pub fn coordinate_subspace(zeros: &[usize], ambient_dim: usize) -> Result<ProjSubspace> {
    let forms: Vec<RatVec> = zeros
        .iter()
        .map(|&i| {
            let mut f = vec![BigRational::zero(); ambient_dim + 1];
            f[i] = BigRational::from_integer(1.into());
            f
        })
        .collect();
    subspace_from_equations(&forms, ambient_dim)
}

/// Intersection of the linear spans, projectivized; `None` when they meet
/// only at the origin.
pub fn intersect(a: &ProjSubspace, b: &ProjSubspace) -> Option<ProjSubspace> {
    assert_eq!(a.ambient_dim, b.ambient_dim, "subspaces of different projective spaces");
    let mut forms = a.equations();
    forms.extend(b.equations());
    ProjSubspace::span(a.ambient_dim, &nullspace(&forms, a.ambient_dim + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum GeneralPosition {
    General,
    /// Indices of a collinear triple.
    Collinear { triple: [usize; 3] },
    /// A point that does not lie on the plane.
    Inapplicable { point: usize },
}

impl GeneralPosition {
    pub fn is_general(&self) -> bool {
        matches!(self, GeneralPosition::General)
    }
}

/// No three of the four points are collinear, decided in plane coordinates.
pub fn general_position_on_plane(points: &[ProjPoint; 4], plane: &ProjSubspace) -> Result<GeneralPosition> {
    if plane.projective_dim() != 2 {
        return Err(Error::Usage(format!("expected a plane, got projective dimension {}", plane.projective_dim())));
    }
    let mut coords = Vec::with_capacity(4);
    for (i, p) in points.iter().enumerate() {
        match plane.coordinates_of(&p.as_rat()) {
            Some(c) => coords.push(c),
            None => return Ok(GeneralPosition::Inapplicable { point: i }),
        }
    }
    for skip in (0..4).rev() {
        let triple: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
        let m: Vec<RatVec> = triple.iter().map(|&i| coords[i].clone()).collect();
        if determinant(&m).is_zero() {
            return Ok(GeneralPosition::Collinear { triple: [triple[0], triple[1], triple[2]] });
        }
    }
    Ok(GeneralPosition::General)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TransversalChecks {
    pub is_plane: bool,
    pub meets_each_in_a_point: bool,
    pub points_distinct: bool,
    pub points_off_other_targets: bool,
    pub general_position: bool,
}

impl TransversalChecks {
    pub fn all(&self) -> bool {
        self.is_plane
            && self.meets_each_in_a_point
            && self.points_distinct
            && self.points_off_other_targets
            && self.general_position
    }
}

/// Replays every predicate a transversal plane must satisfy. Returns the
/// intersection points when each target is met in a single point.
pub fn verify_transversal(plane: &ProjSubspace, targets: &[ProjSubspace; 4]) -> (TransversalChecks, Option<[ProjPoint; 4]>) {
    let mut checks = TransversalChecks {
        is_plane: plane.projective_dim() == 2,
        meets_each_in_a_point: false,
        points_distinct: false,
        points_off_other_targets: false,
        general_position: false,
    };
    let pts: Option<Vec<ProjPoint>> = targets.iter().map(|t| intersect(plane, t).and_then(|s| s.as_point())).collect();
    let Some(pts) = pts else {
        return (checks, None);
    };
    let pts: [ProjPoint; 4] = pts.try_into().expect("four targets");
    checks.meets_each_in_a_point = true;
    checks.points_distinct = (0..4).all(|i| (i + 1..4).all(|j| pts[i] != pts[j]));
    checks.points_off_other_targets =
        (0..4).all(|i| (0..4).all(|j| i == j || !targets[j].contains_point(&pts[i])));
    checks.general_position =
        checks.is_plane && general_position_on_plane(&pts, plane).is_ok_and(|g| g.is_general());
    (checks, Some(pts))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalPlane {
    pub plane: ProjSubspace,
    pub points: [ProjPoint; 4],
    pub seed: u64,
    pub attempts: usize,
}

fn check_targets(targets: &[ProjSubspace; 4]) -> Result<()> {
    if let Some(t) = targets.iter().find(|t| t.ambient_dim() != 5 || t.projective_dim() != 2) {
        return Err(Error::Usage(format!(
            "targets must be planes in P^5, got dimension {} in P^{}",
            t.projective_dim(),
            t.ambient_dim()
        )));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if intersect(&targets[i], &targets[j]).is_some_and(|s| s.projective_dim() > 0) {
                return Err(Error::DegenerateTargets(format!(
                    "targets {} and {} meet in more than a point",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn sample_in(rng: &mut ChaCha8Rng, s: &ProjSubspace) -> RatVec {
    let n = s.ambient_dim() + 1;
    loop {
        let coeffs: Vec<i64> = (0..s.basis().len()).map(|_| rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)).collect();
        let mut v = vec![BigRational::zero(); n];
        for (c, row) in coeffs.iter().zip(s.basis()) {
            for (x, b) in v.iter_mut().zip(row) {
                *x += b * BigRational::from_integer((*c).into());
            }
        }
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

/// A plane meeting each of four planes in ℙ⁵ in a single point, the points
/// distinct, each on no other target, and in general position.
///
/// Points `p₁ ∈ T₁`, `p₂ ∈ T₂` and a pencil `a·u + b·v` in `T₃` are sampled;
/// meeting `T₄` is the vanishing of a 6×6 determinant linear in `(a : b)`,
/// which is solved exactly. Any failed predicate triggers a resample.
pub fn find_transversal_plane(targets: &[ProjSubspace; 4], seed: u64, max_tries: usize) -> Result<TransversalPlane> {
    check_targets(targets)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t4 = targets[3].basis();
    for attempt in 1..=max_tries {
        let p1 = sample_in(&mut rng, &targets[0]);
        let p2 = sample_in(&mut rng, &targets[1]);
        let u = sample_in(&mut rng, &targets[2]);
        let v = sample_in(&mut rng, &targets[2]);
        let det_with = |w: &RatVec| {
            let mut m = vec![p1.clone(), p2.clone(), w.clone()];
            m.extend(t4.iter().cloned());
            determinant(&m)
        };
        let (alpha, beta) = (det_with(&u), det_with(&v));
        let p3: RatVec = u.iter().zip(&v).map(|(x, y)| &beta * x - &alpha * y).collect();
        if is_zero_vec(&p3) {
            continue;
        }
        let Some(plane) = ProjSubspace::span(5, &[p1, p2, p3]) else {
            continue;
        };
        if let (checks, Some(points)) = verify_transversal(&plane, targets) {
            if checks.all() {
                return Ok(TransversalPlane { plane, points, seed, attempts: attempt });
            }
        }
    }
    Err(Error::MaxTriesExhausted { attempts: max_tries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineWitness {
    pub plane: ProjSubspace,
    pub q12: ProjPoint,
    pub q34: ProjPoint,
    pub meets_all_targets: bool,
    /// Distinct intersection points, each on no other target.
    pub refinement_holds: bool,
}

/// A plane through the line joining `T₁ ∩ T₂` and `T₃ ∩ T₄` plus one sampled
/// point. It meets every target but, by construction, meets `T₁` and `T₂`
/// at the same point.
pub fn witness_plane_via_line(targets: &[ProjSubspace; 4], seed: u64) -> Result<LineWitness> {
    let meet = |i: usize, j: usize| -> Result<ProjPoint> {
        intersect(&targets[i], &targets[j]).and_then(|s| s.as_point()).ok_or_else(|| {
            Error::NotAPoint(format!("targets {} and {} do not meet in a single point", i + 1, j + 1))
        })
    };
    let q12 = meet(0, 1)?;
    let q34 = meet(2, 3)?;
    if q12 == q34 {
        return Err(Error::NotAPoint("the two intersection points coincide".into()));
    }
    let line = ProjSubspace::span(targets[0].ambient_dim(), &[q12.as_rat(), q34.as_rat()]).expect("nonzero");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plane = loop {
        let r: Vec<i64> = (0..=line.ambient_dim()).map(|_| rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)).collect();
        if !line.contains(&rat(&r)) {
            break line.join(&ProjSubspace::span(line.ambient_dim(), &[rat(&r)]).expect("not on the line"));
        }
    };
    let meets_all_targets = targets.iter().all(|t| intersect(&plane, t).is_some());
    let (checks, _) = verify_transversal(&plane, targets);
    Ok(LineWitness {
        plane,
        q12,
        q34,
        meets_all_targets,
        refinement_holds: checks.meets_each_in_a_point && checks.points_distinct && checks.points_off_other_targets,
    })
}

/// The four coordinate planes `Σ₁ … Σ₄` of ℙ⁵.
pub fn target_planes() -> [ProjSubspace; 4] {
    TARGET_PLANE_ZEROS.map(|z| coordinate_subspace(&z, 5).expect("coordinate planes are nonempty"))
}

/// The printed plane `Σ`.
pub fn printed_sigma() -> ProjSubspace {
    let forms: Vec<RatVec> = SIGMA_EQUATIONS.iter().map(|f| rat(f)).collect();
    subspace_from_equations(&forms, 5).expect("three independent forms in P^5")
}

pub fn printed_points() -> [ProjPoint; 4] {
    PRINTED_POINTS.map(|p| ProjPoint::from_i64(&p).expect("printed points are nonzero"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TargetIntersection {
    pub target: String,
    pub computed_intersection: Option<ProjPoint>,
    pub printed_point: ProjPoint,
    pub printed_point_on_plane: bool,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrintedDataCheck {
    pub intersections: Vec<TargetIntersection>,
    pub general_position: GeneralPosition,
    /// Rank of the 4×6 matrix of printed points; 3 if they span a plane.
    pub printed_points_rank: usize,
}

/// Exact comparison of the printed plane and points against computed
/// intersections.
pub fn check_printed_data() -> PrintedDataCheck {
    let sigma = printed_sigma();
    let printed = printed_points();
    let intersections = target_planes()
        .iter()
        .zip(&printed)
        .enumerate()
        .map(|(i, (t, p))| {
            let computed = intersect(&sigma, t).and_then(|s| s.as_point());
            TargetIntersection {
                target: format!("Sigma{}", i + 1),
                matches: computed.as_ref() == Some(p),
                computed_intersection: computed,
                printed_point: p.clone(),
                printed_point_on_plane: sigma.contains_point(p),
            }
        })
        .collect();
    let rows: Vec<RatVec> = printed.iter().map(|p| p.as_rat()).collect();
    PrintedDataCheck {
        intersections,
        general_position: general_position_on_plane(&printed, &sigma).expect("sigma is a plane"),
        printed_points_rank: rank(&rows, 6),
    }
}
