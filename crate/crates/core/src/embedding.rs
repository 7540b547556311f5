//! Mori-embedding criteria checked on presentation data: degree matching of
//! Cox generators, the Picard restriction, the divisor restriction table and
//! extremality of the ambient generator classes.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chamber::spans_extremal_ray;
use crate::error::{Error, Result};
use crate::exact::{rank, IntMat, RatVec};
use crate::graded::{DegreeMatrix, Multidegree};

/// An ambient grading paired with the Cox generators of a subvariety.
/// Variable `k` of the ambient ring maps to target generator
/// `correspondence[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxPresentationPair {
    pub ambient: DegreeMatrix,
    pub targets: Vec<(String, Multidegree)>,
    pub correspondence: Vec<usize>,
}

impl CoxPresentationPair {
    pub fn new(ambient: DegreeMatrix, targets: Vec<(String, Multidegree)>, correspondence: Vec<usize>) -> Self {
        Self { ambient, targets, correspondence }
    }

    /// Whether the correspondence is a bijection onto the targets.
    pub fn is_bijective(&self) -> bool {
        let n = self.targets.len();
        if self.correspondence.len() != self.ambient.num_gens() || self.correspondence.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        self.correspondence.iter().all(|&t| t < n && !std::mem::replace(&mut hit[t], true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeBijection {
    pub holds: bool,
    /// `(variable label, target label)` for every matched pair.
    pub matching: Vec<(String, String)>,
    pub mismatch: Option<String>,
}

pub fn check_degree_bijection(p: &CoxPresentationPair) -> DegreeBijection {
    let fail = |m: String| DegreeBijection { holds: false, matching: Vec::new(), mismatch: Some(m) };
    if !p.is_bijective() {
        return fail(format!(
            "correspondence is not a bijection between {} variables and {} generators",
            p.ambient.num_gens(),
            p.targets.len()
        ));
    }
    let mut matching = Vec::new();
    for (k, &t) in p.correspondence.iter().enumerate() {
        let (label, class) = &p.targets[t];
        let var = &p.ambient.labels()[k];
        if p.ambient.column(k) != class.as_slice() {
            return fail(format!(
                "variable {var} has degree {:?} but {label} has degree {class:?}",
                p.ambient.column(k)
            ));
        }
        matching.push((var.clone(), label.clone()));
    }
    DegreeBijection { holds: true, matching, mismatch: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PicRestriction {
    pub holds: bool,
    pub invertible: bool,
    pub reason: Option<String>,
}

fn is_positive_multiple(a: &[BigRational], b: &[i64]) -> bool {
    let mut ratio: Option<BigRational> = None;
    for (x, &y) in a.iter().zip(b) {
        if y == 0 {
            if !x.is_zero() {
                return false;
            }
            continue;
        }
        let r = x / BigRational::from_integer(y.into());
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev != r => return false,
            _ => {}
        }
    }
    ratio.is_some_and(|r| r.is_positive())
}

/// `restriction` is invertible over ℚ and carries each ambient generator
/// class to a positive multiple of its target class.
pub fn check_pic_restriction(p: &CoxPresentationPair, restriction: &IntMat) -> Result<PicRestriction> {
    let r = p.ambient.pic_rank();
    if restriction.rows() != r || restriction.cols() != r {
        return Err(Error::Usage(format!(
            "restriction matrix is {}x{}, expected {r}x{r}",
            restriction.rows(),
            restriction.cols()
        )));
    }
    let rows: Vec<RatVec> = restriction
        .row_vecs()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    if rank(&rows, r) != r {
        return Ok(PicRestriction {
            holds: false,
            invertible: false,
            reason: Some("restriction matrix is singular".into()),
        });
    }
    for (k, &t) in p.correspondence.iter().enumerate() {
        let (Some(col), Some((label, target))) = (p.ambient.columns().get(k), p.targets.get(t)) else {
            continue;
        };
        let image: RatVec = rows
            .iter()
            .map(|row| row.iter().zip(col).map(|(a, &b)| a * BigRational::from_integer(b.into())).sum())
            .collect();
        if target.len() != r || !is_positive_multiple(&image, target) {
            return Ok(PicRestriction {
                holds: false,
                invertible: true,
                reason: Some(format!("class of {} does not restrict to {label}", p.ambient.labels()[k])),
            });
        }
    }
    Ok(PicRestriction { holds: true, invertible: true, reason: None })
}

/// A torus-invariant divisor of the ambient variety and the class of its
/// restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionEntry {
    pub label: String,
    pub expression: String,
    pub class: Multidegree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionTable {
    entries: Vec<RestrictionEntry>,
}

impl RestrictionTable {
    pub fn new(entries: Vec<RestrictionEntry>) -> Result<Self> {
        let mut labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Usage("restriction table labels must be distinct".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[RestrictionEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Self { entries: order.iter().map(|&i| self.entries[i].clone()).collect() }
    }

    pub fn with_class(&self, label: &str, class: Multidegree) -> Self {
        let mut t = self.clone();
        for e in &mut t.entries {
            if e.label == label {
                e.class = class.clone();
            }
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableMatch {
    pub label: String,
    pub expression: String,
    pub class: Multidegree,
    pub generator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableVerdict {
    pub holds: bool,
    pub matches: Vec<TableMatch>,
    /// Generator classes left without a table entry.
    pub unmatched_generators: Vec<(String, Multidegree)>,
}

impl TableVerdict {
    pub fn generator_for(&self, label: &str) -> Option<&str> {
        self.matches.iter().find(|m| m.label == label).and_then(|m| m.generator.as_deref())
    }
}

/// Multiset equality of table classes and generator degrees, with the
/// induced matching (first unused generator of equal class).
pub fn verify_restriction_table(t: &RestrictionTable, p: &CoxPresentationPair) -> TableVerdict {
    let mut used = vec![false; p.targets.len()];
    let matches: Vec<TableMatch> = t
        .entries()
        .iter()
        .map(|e| {
            let hit = p.targets.iter().enumerate().position(|(j, (_, c))| !used[j] && *c == e.class);
            if let Some(j) = hit {
                used[j] = true;
            }
            TableMatch {
                label: e.label.clone(),
                expression: e.expression.clone(),
                class: e.class.clone(),
                generator: hit.map(|j| p.targets[j].0.clone()),
            }
        })
        .collect();
    let unmatched_generators: Vec<(String, Multidegree)> =
        p.targets.iter().zip(&used).filter(|(_, u)| !**u).map(|(t, _)| t.clone()).collect();
    let holds = matches.iter().all(|m| m.generator.is_some()) && unmatched_generators.is_empty();
    TableVerdict { holds, matches, unmatched_generators }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Extremality {
    pub holds: bool,
    /// One verdict per ambient generator.
    pub per_generator: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmbeddingReport {
    pub degree_bijection: DegreeBijection,
    pub pic_restriction: PicRestriction,
    pub restriction_table: TableVerdict,
    pub extremality: Extremality,
    pub overall: bool,
    pub first_failure: Option<String>,
    pub notes: Vec<String>,
}

pub fn mori_embedding_report(
    p: &CoxPresentationPair,
    restriction: &IntMat,
    t: &RestrictionTable,
) -> Result<EmbeddingReport> {
    let degree_bijection = check_degree_bijection(p);
    let pic_restriction = check_pic_restriction(p, restriction)?;
    let restriction_table = verify_restriction_table(t, p);
    let per_generator = (0..p.ambient.num_gens())
        .map(|i| spans_extremal_ray(&p.ambient, i))
        .collect::<Result<Vec<_>>>()?;
    let extremality = Extremality { holds: per_generator.iter().all(|&b| b), per_generator };
    let first_failure = [
        ("degreeBijection", degree_bijection.holds),
        ("picRestriction", pic_restriction.holds),
        ("restrictionTable", restriction_table.holds),
        ("extremality", extremality.holds),
    ]
    .iter()
    .find(|(_, ok)| !ok)
    .map(|(name, _)| name.to_string());
    let notes = vec![
        "surjectivity of the Cox ring map is checked on generators and degrees only; relations are not modelled"
            .to_string(),
        "chamber refinement and the lifting of contractions follow from the two criteria; they are not computed"
            .to_string(),
    ];
    Ok(EmbeddingReport {
        overall: first_failure.is_none(),
        degree_bijection,
        pic_restriction,
        restriction_table,
        extremality,
        first_failure,
        notes,
    })
}
