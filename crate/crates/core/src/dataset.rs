//! Built-in datasets: the del Pezzo surface X₄ (the plane blown up in four
//! general points) with the data of its embedding into a toric variety, and
//! a few small toric sanity cases.

use crate::embedding::{CoxPresentationPair, RestrictionEntry, RestrictionTable};
use crate::error::Result;
use crate::exact::IntMat;
use crate::graded::{DegreeMatrix, Multidegree};
use crate::monomial::Support;

/// Degrees of the ten exceptional curves of X₄ in the basis
/// `(h, l₁, l₂, l₃, l₄)`, in the order `g₁ … g₁₀`.
pub const DELPEZZO4_COLUMNS: [[i64; 5]; 10] = [
    [1, -1, -1, 0, 0],
    [1, -1, 0, -1, 0],
    [1, -1, 0, 0, -1],
    [1, 0, -1, -1, 0],
    [1, 0, -1, 0, -1],
    [1, 0, 0, -1, -1],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
];

/// Human-readable form of each generator class.
pub const DELPEZZO4_CLASSES: [&str; 10] = [
    "h-l1-l2", "h-l1-l3", "h-l1-l4", "h-l2-l3", "h-l2-l4", "h-l3-l4", "l1", "l2", "l3", "l4",
];

/// Variable names used by the Macaulay2 and Magma scripts.
pub const SCRIPT_VARIABLES: [&str; 10] = ["a", "b", "c", "d", "e", "f", "x", "y", "z", "w"];

pub const DELPEZZO4_HEFT: [i64; 5] = [3, 1, 1, 1, 1];

/// The ample class `11h − 5l₁ − 3l₂ − 2l₃ − l₄`.
pub const PAPER_AMPLE: [i64; 5] = [11, -5, -3, -2, -1];

/// `−K = 3h − l₁ − l₂ − l₃ − l₄`.
pub const ANTICANONICAL: [i64; 5] = [3, -1, -1, -1, -1];

/// The printed 5×10 matrix whose columns are the rays of the ambient toric
/// variety.
pub const PAPER_GALE_TRANSPOSE: [[i64; 10]; 5] = [
    [1, 0, 0, 0, 0, -1, 1, 1, -1, -1],
    [0, 1, 0, 0, 0, -1, 1, 0, 0, -1],
    [0, 0, 1, 0, 0, -1, 1, 0, -1, 0],
    [0, 0, 0, 1, 0, -1, 0, 1, 0, -1],
    [0, 0, 0, 0, 1, -1, 0, 1, -1, 0],
];

/// The anticanonical irrelevant ideal as printed in the Magma script, in
/// the variables `a b c d e f x y z w`.
pub const ANTICANONICAL_IDEAL_SCRIPT: [&str; 22] = [
    "a*b*c*x", "a*d*e*y", "a*c*d*x*y", "a*b*e*x*y", "a*f*x*y", "b*d*f*z", "b*c*d*x*z", "b*e*x*z",
    "a*b*f*x*z", "c*d*y*z", "b*d*e*y*z", "a*d*f*y*z", "c*e*f*w", "c*d*x*w", "b*c*e*x*w",
    "a*c*f*x*w", "b*e*y*w", "c*d*e*y*w", "a*e*f*y*w", "a*f*z*w", "c*d*f*z*w", "b*e*f*z*w",
];

/// Coordinates on ℙ⁵ are `x₀ … x₅`.
pub const SIGMA_EQUATIONS: [[i64; 6]; 3] = [
    [0, 0, 1, 0, 1, 0],
    [1, 1, 0, 1, 0, 0],
    [1, 0, 0, 1, 0, 1],
];

/// Vanishing coordinates of the four torus-invariant planes `Σ₁ … Σ₄`.
pub const TARGET_PLANE_ZEROS: [[usize; 3]; 4] = [[0, 3, 5], [0, 2, 4], [1, 2, 3], [1, 4, 5]];

/// The four printed points `P₁ … P₄`.
pub const PRINTED_POINTS: [[i64; 6]; 4] = [
    [0, 0, 1, 0, -1, 0],
    [0, 1, 0, -1, 0, 1],
    [1, 0, 0, 0, 0, -1],
    [1, 0, 0, -1, 0, 0],
];

pub fn delpezzo4() -> DegreeMatrix {
    let columns = DELPEZZO4_COLUMNS.iter().map(|c| c.to_vec()).collect();
    let labels = (1..=10).map(|i| format!("g{i}")).collect();
    DegreeMatrix::new(5, columns, labels)
        .and_then(|q| q.with_heft(DELPEZZO4_HEFT.to_vec()))
        .expect("built-in grading is valid")
}

pub fn paper_gale_transpose() -> IntMat {
    let rows: Vec<Vec<i64>> = PAPER_GALE_TRANSPOSE.iter().map(|r| r.to_vec()).collect();
    IntMat::from_rows(10, &rows).expect("built-in matrix is rectangular")
}

/// Converts a product of script variables such as `a*b*c*x` to its support.
pub fn script_monomial_support(monomial: &str) -> Option<Support> {
    let idx: Option<Vec<usize>> = monomial
        .split('*')
        .map(|v| SCRIPT_VARIABLES.iter().position(|s| *s == v.trim()))
        .collect();
    idx.map(Support::new)
}

pub fn anticanonical_supports_transcribed() -> Vec<Support> {
    ANTICANONICAL_IDEAL_SCRIPT
        .iter()
        .map(|m| script_monomial_support(m).expect("script uses known variables"))
        .collect()
}

/// The restriction of the ten torus-invariant divisors of the ambient
/// variety to X₄: `Dᵢ = π*Pᵢ − E_j − E_k` restricts to `h − l_j − l_k` and
/// `Eᵢ` restricts to `lᵢ`.
pub fn delpezzo4_restriction_table() -> RestrictionTable {
    let d = |i: usize, j: usize, k: usize| {
        let mut class = vec![1, 0, 0, 0, 0];
        class[j] = -1;
        class[k] = -1;
        RestrictionEntry {
            label: format!("D{i}"),
            expression: format!("pi*P{i} - E{j} - E{k}"),
            class,
        }
    };
    let e = |i: usize| {
        let mut class = vec![0; 5];
        class[i] = 1;
        RestrictionEntry { label: format!("E{i}"), expression: format!("E{i}"), class }
    };
    RestrictionTable::new(vec![
        d(0, 1, 4),
        d(1, 1, 2),
        d(2, 1, 3),
        d(3, 2, 4),
        d(4, 2, 3),
        d(5, 3, 4),
        e(1),
        e(2),
        e(3),
        e(4),
    ])
    .expect("built-in table has ten distinct labels")
}

/// The ambient presentation paired with the Cox generators of X₄ under
/// `x_k ↦ g_k`.
pub fn delpezzo4_presentation() -> CoxPresentationPair {
    let ambient = delpezzo4();
    let targets: Vec<(String, Multidegree)> = DELPEZZO4_COLUMNS
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("g{}", i + 1), c.to_vec()))
        .collect();
    CoxPresentationPair::new(ambient, targets, (0..10).collect())
}

/// ℙⁿ: `n + 1` generators of degree 1.
pub fn projective_space(n: usize) -> DegreeMatrix {
    DegreeMatrix::with_default_labels(1, vec![vec![1]; n + 1])
        .and_then(|q| q.with_heft(vec![1]))
        .expect("projective space grading is valid")
}

pub fn p1xp1() -> DegreeMatrix {
    DegreeMatrix::with_default_labels(2, vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]])
        .and_then(|q| q.with_heft(vec![1, 1]))
        .expect("product grading is valid")
}

/// Looks up a built-in grading by name.
pub fn builtin(name: &str) -> Result<DegreeMatrix> {
    match name {
        "delpezzo4" => Ok(delpezzo4()),
        "p1" => Ok(projective_space(1)),
        "p2" => Ok(projective_space(2)),
        "p3" => Ok(projective_space(3)),
        "p1xp1" => Ok(p1xp1()),
        other => Err(crate::Error::Usage(format!(
            "unknown dataset {other:?} (known: delpezzo4, p1, p2, p3, p1xp1)"
        ))),
    }
}
