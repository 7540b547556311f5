//! Cox presentations: the degree matrix of a graded polynomial ring and its
//! Gale dual.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{hermite_normal_form, kernel_lattice, smith_invariants, IntMat};

/// A divisor class in the fixed basis of the grading group.
pub type Multidegree = Vec<i64>;

/// The grading of a polynomial ring: one multidegree per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMatrix {
    pic_rank: usize,
    columns: Vec<Multidegree>,
    labels: Vec<String>,
    heft: Option<Multidegree>,
}

/// On-disk form of a [`DegreeMatrix`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeMatrixFile {
    pub pic_rank: usize,
    pub num_gens: usize,
    pub columns: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heft: Option<Vec<i64>>,
}

impl DegreeMatrix {
    pub fn new(pic_rank: usize, columns: Vec<Multidegree>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != columns.len() {
            return Err(Error::Usage(format!(
                "{} labels for {} generators",
                labels.len(),
                columns.len()
            )));
        }
        if let Some((i, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != pic_rank) {
            return Err(Error::Usage(format!(
                "column {} has length {}, expected {pic_rank}",
                i + 1,
                c.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Usage(format!("duplicate generator label {dup:?}")));
        }
        let q = Self { pic_rank, columns, labels, heft: None };
        if q.as_int_mat().rank() != pic_rank {
            return Err(Error::GradingNotFullRank);
        }
        Ok(q)
    }

    /// Labels `x1, …, xn`.
    pub fn with_default_labels(pic_rank: usize, columns: Vec<Multidegree>) -> Result<Self> {
        let labels = (1..=columns.len()).map(|i| format!("x{i}")).collect();
        Self::new(pic_rank, columns, labels)
    }

    pub fn with_heft(mut self, heft: Multidegree) -> Result<Self> {
        if heft.len() != self.pic_rank {
            return Err(Error::Usage(format!(
                "heft has length {}, expected {}",
                heft.len(),
                self.pic_rank
            )));
        }
        self.heft = Some(heft);
        Ok(self)
    }

    pub fn from_file(file: DegreeMatrixFile) -> Result<Self> {
        if file.num_gens != file.columns.len() {
            return Err(Error::Usage(format!(
                "numGens is {} but {} columns were given",
                file.num_gens,
                file.columns.len()
            )));
        }
        let q = Self::new(file.pic_rank, file.columns, file.labels)?;
        match file.heft {
            Some(h) => q.with_heft(h),
            None => Ok(q),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DegreeMatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("malformed degree matrix: {e}")))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> DegreeMatrixFile {
        DegreeMatrixFile {
            pic_rank: self.pic_rank,
            num_gens: self.columns.len(),
            columns: self.columns.clone(),
            labels: self.labels.clone(),
            heft: self.heft.clone(),
        }
    }

    pub fn pic_rank(&self) -> usize {
        self.pic_rank
    }

    pub fn num_gens(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Multidegree] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[i64] {
        &self.columns[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn heft(&self) -> Option<&[i64]> {
        self.heft.as_deref()
    }

    /// The `r × n` integer matrix with the multidegrees as columns.
    pub fn as_int_mat(&self) -> IntMat {
        let mut m = IntMat::zeros(self.pic_rank, self.columns.len());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    /// The same grading with generators reordered: new column `k` is old
    /// column `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let columns = order.iter().map(|&i| self.columns[i].clone()).collect();
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let q = Self::new(self.pic_rank, columns, labels)?;
        match &self.heft {
            Some(h) => q.with_heft(h.clone()),
            None => Ok(q),
        }
    }

    /// Drops the generators whose indices are listed.
    pub fn without(&self, drop: &[usize]) -> Result<Self> {
        let keep: Vec<usize> = (0..self.num_gens()).filter(|i| !drop.contains(i)).collect();
        self.permuted(&keep)
    }
}

/// The rays of the toric variety attached to a grading, one per generator,
/// in the coordinates of a basis of the integer kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleDual {
    kernel: IntMat,
}

impl GaleDual {
    /// Kernel basis, one row per lattice coordinate; ray `i` is column `i`.
    pub fn kernel(&self) -> &IntMat {
        &self.kernel
    }

    /// Dimension `n - r` of the lattice the rays live in.
    pub fn dim(&self) -> usize {
        self.kernel.rows()
    }

    pub fn num_rays(&self) -> usize {
        self.kernel.cols()
    }

    pub fn ray(&self, i: usize) -> Vec<BigInt> {
        self.kernel.column(i)
    }

    pub fn rays(&self) -> Vec<Vec<BigInt>> {
        (0..self.num_rays()).map(|i| self.ray(i)).collect()
    }

    /// Whether the rows span the same lattice as `reference`, decided by
    /// comparing Hermite forms.
    pub fn hermite_matches(&self, reference: &IntMat) -> bool {
        same_row_lattice(&self.kernel, reference)
    }

    /// Checks `0 → M → ℤⁿ → ℤʳ → 0` at the lattice level: `Q·Aᵀ = 0`, ranks
    /// add up, and the kernel lattice is saturated.
    pub fn verify_exact_sequence(&self, q: &DegreeMatrix) -> bool {
        let qm = q.as_int_mat();
        let Ok(prod) = qm.mul(&self.kernel.transpose()) else {
            return false;
        };
        let ranks_add = self.kernel.rank() + qm.rank() == q.num_gens();
        let saturated = smith_invariants(&self.kernel).iter().all(One::is_one);
        prod.is_zero() && ranks_add && saturated
    }
}

pub fn same_row_lattice(a: &IntMat, b: &IntMat) -> bool {
    a.cols() == b.cols() && nonzero_hermite(a) == nonzero_hermite(b)
}

fn nonzero_hermite(m: &IntMat) -> Vec<Vec<BigInt>> {
    let (h, _) = hermite_normal_form(m);
    h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Gale dual of a full-rank grading.
pub fn gale_dual(q: &DegreeMatrix) -> Result<GaleDual> {
    let m = q.as_int_mat();
    if m.rank() != q.pic_rank() {
        return Err(Error::GradingNotFullRank);
    }
    Ok(GaleDual { kernel: kernel_lattice(&m) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(cols: usize, r: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(cols, r).unwrap()
    }

    #[test]
    fn projective_plane() {
        let q = DegreeMatrix::with_default_labels(1, vec![vec![1], vec![1], vec![1]]).unwrap();
        let g = gale_dual(&q).unwrap();
        assert_eq!(g.num_rays(), 3);
        assert_eq!(g.dim(), 2);
        // rays (1,0), (0,1), (-1,-1) as columns
        assert!(g.hermite_matches(&rows(3, &[vec![1, 0, -1], vec![0, 1, -1]])));
        assert!(g.verify_exact_sequence(&q));
    }

    #[test]
    fn product_of_lines() {
        let q = DegreeMatrix::with_default_labels(2, vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]])
            .unwrap();
        let g = gale_dual(&q).unwrap();
        assert!(g.hermite_matches(&rows(4, &[vec![1, -1, 0, 0], vec![0, 0, 1, -1]])));
    }

    #[test]
    fn rank_deficient_grading_rejected() {
        let err = DegreeMatrix::with_default_labels(2, vec![vec![1, 2], vec![2, 4], vec![3, 6]]).unwrap_err();
        assert_eq!(err, Error::GradingNotFullRank);
        assert_eq!(err.to_string(), "grading not of full rank");
    }

    #[test]
    fn labels_must_be_distinct() {
        let err = DegreeMatrix::new(1, vec![vec![1], vec![1]], vec!["a".into(), "a".into()]).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn json_schema_round_trip() {
        let text = r#"{"picRank":1,"numGens":3,"columns":[[1],[1],[1]],"labels":["x","y","z"],"heft":[1]}"#;
        let q = DegreeMatrix::from_json(text).unwrap();
        assert_eq!(q.heft(), Some(&[1][..]));
        let back = serde_json::to_string(&q.to_file()).unwrap();
        assert_eq!(back, text);
    }

    #[test]
    fn num_gens_mismatch_is_usage_error() {
        let text = r#"{"picRank":1,"numGens":2,"columns":[[1],[1],[1]],"labels":["x","y","z"]}"#;
        assert!(matches!(DegreeMatrix::from_json(text), Err(Error::Usage(_))));
    }
}
