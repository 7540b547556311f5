use std::collections::HashMap;

use toric_cox::dataset::{self, ANTICANONICAL, PAPER_AMPLE};
use toric_cox::embedding::{check_degree_bijection, mori_embedding_report, verify_restriction_table};
use toric_cox::exact::IntMat;
use toric_cox::incidence::{check_printed_data, intersect, printed_sigma, target_planes, ProjPoint};
use toric_cox::monomial::monomials_of_degree;
use toric_cox::gale_dual;

/// Count exponent vectors with `Q·e = d` by dynamic programming over columns.
fn count_by_dp(cols: &[[i64; 5]], d: &[i64; 5], total: u64) -> usize {
    // state: (partial degree, exponents used so far)
    let mut states: HashMap<([i64; 5], u64), usize> = HashMap::new();
    states.insert(([0; 5], 0), 1);
    for c in cols {
        let mut next = HashMap::new();
        for ((deg, used), n) in states {
            for k in 0..=(total - used) {
                let mut g = deg;
                for (x, y) in g.iter_mut().zip(c) {
                    *x += k as i64 * y;
                }
                *next.entry((g, used + k)).or_insert(0) += n;
            }
        }
        states = next;
    }
    states.iter().filter(|((g, _), _)| g == d).map(|(_, n)| n).sum()
}

#[test]
fn heft_pairs_to_one_with_every_generator() {
    for c in dataset::DELPEZZO4_COLUMNS {
        assert_eq!(c.iter().zip(dataset::DELPEZZO4_HEFT).map(|(a, b)| a * b).sum::<i64>(), 1);
    }
}

#[test]
fn ample_degree_monomial_count_matches_dp() {
    let q = dataset::delpezzo4();
    let total: i64 = PAPER_AMPLE.iter().zip(dataset::DELPEZZO4_HEFT).map(|(a, b)| a * b).sum();
    let fast = monomials_of_degree(&q, &PAPER_AMPLE, None).unwrap();
    assert_eq!(fast.len(), count_by_dp(&dataset::DELPEZZO4_COLUMNS, &PAPER_AMPLE, total as u64));
    for e in &fast {
        assert_eq!(e.0.iter().sum::<u64>(), total as u64);
    }
}

#[test]
fn anticanonical_count_matches_dp() {
    let q = dataset::delpezzo4();
    let total: i64 = ANTICANONICAL.iter().zip(dataset::DELPEZZO4_HEFT).map(|(a, b)| a * b).sum();
    let fast = monomials_of_degree(&q, &ANTICANONICAL, None).unwrap();
    assert_eq!(fast.len(), count_by_dp(&dataset::DELPEZZO4_COLUMNS, &ANTICANONICAL, total as u64));
}

#[test]
fn zero_degree_has_only_the_constant() {
    let q = dataset::delpezzo4();
    let m = monomials_of_degree(&q, &[0; 5], None).unwrap();
    assert_eq!(m.len(), 1);
    assert!(m[0].0.iter().all(|&x| x == 0));
}

#[test]
fn gale_dual_matches_printed_rays() {
    let g = gale_dual(&dataset::delpezzo4()).unwrap();
    assert!(g.hermite_matches(&dataset::paper_gale_transpose()));
}

#[test]
fn restriction_table_and_embedding() {
    let p = dataset::delpezzo4_presentation();
    let t = dataset::delpezzo4_restriction_table();
    assert!(verify_restriction_table(&t, &p).holds);
    assert!(check_degree_bijection(&p).holds);
    assert!(mori_embedding_report(&p, &IntMat::identity(5), &t).unwrap().overall);
}

#[test]
fn embedding_fails_on_swapped_correspondence() {
    let mut p = dataset::delpezzo4_presentation();
    p.correspondence.swap(0, 1);
    let r = mori_embedding_report(&p, &IntMat::identity(5), &dataset::delpezzo4_restriction_table()).unwrap();
    assert!(!r.overall);
    assert!(r.first_failure.is_some());
}

#[test]
fn sigma_meets_first_two_targets_as_printed() {
    let s = printed_sigma();
    let t = target_planes();
    let p = intersect(&s, &t[0]).and_then(|x| x.as_point()).unwrap();
    assert_eq!(p, ProjPoint::from_i64(&dataset::PRINTED_POINTS[0]).unwrap());
    let q = intersect(&s, &t[1]).and_then(|x| x.as_point()).unwrap();
    assert_eq!(q, ProjPoint::from_i64(&dataset::PRINTED_POINTS[1]).unwrap());
}

#[test]
fn printed_points_span_three_space() {
    assert_eq!(check_printed_data().printed_points_rank, 4);
}
