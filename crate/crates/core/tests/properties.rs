use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use toric_cox::chamber::{chamber_of, effective_cone, same_chamber};
use toric_cox::exact::{hermite_normal_form, kernel_lattice, lp_feasible, smith_invariants, Feasibility, IntMat, LinearSystem};
use toric_cox::fan::{fan_from_irrelevant, is_complete, is_projective, is_simplicial, ray_shoot, generic_direction, validate_fan, Fan};
use toric_cox::incidence::{intersect, ProjPoint, ProjSubspace};
use toric_cox::monomial::{irrelevant_radical, monomials_of_degree, radical_of_monomials, resolve_heft, Exponent, Support};
use toric_cox::{dataset, gale_dual, DegreeMatrix};

fn int_mat(rows: usize, cols: usize, entries: &[i64]) -> IntMat {
    IntMat::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

fn small_matrix() -> impl Strategy<Value = IntMat> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| int_mat(r, c, &e))
    })
}

/// Every exponent vector with `Q·e = d`, by scanning the box cut out by the
/// heft budget.
fn brute_force(q: &DegreeMatrix, d: &[i64], heft: &[i64]) -> Vec<Vec<u64>> {
    let pair = |v: &[i64]| v.iter().zip(heft).map(|(a, b)| a * b).sum::<i64>();
    let budget = pair(d);
    if budget < 0 {
        return Vec::new();
    }
    let bounds: Vec<u64> = q.columns().iter().map(|c| (budget / pair(c)) as u64).collect();
    let mut out = Vec::new();
    let mut e = vec![0u64; q.num_gens()];
    loop {
        let deg: Vec<i64> = (0..q.pic_rank())
            .map(|k| e.iter().zip(q.columns()).map(|(&x, c)| x as i64 * c[k]).sum())
            .collect();
        if deg == d {
            out.push(e.clone());
        }
        let mut i = 0;
        loop {
            if i == e.len() {
                out.sort();
                return out;
            }
            if e[i] < bounds[i] {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn positive_grading() -> impl Strategy<Value = (DegreeMatrix, Vec<i64>)> {
    (1usize..=2, 2usize..=5)
        .prop_flat_map(|(r, n)| {
            (
                Just(r),
                prop::collection::vec(prop::collection::vec(-2i64..=2, r), n),
                prop::collection::vec(0u64..=2, n),
                prop::collection::vec(-1i64..=1, r),
            )
        })
        .prop_filter_map("needs full rank and a heft", |(r, cols, coeffs, jitter)| {
            let q = DegreeMatrix::with_default_labels(r, cols).ok()?;
            resolve_heft(&q, None).ok()?;
            let d: Vec<i64> = (0..r)
                .map(|k| q.columns().iter().zip(&coeffs).map(|(c, &a)| c[k] * a as i64).sum::<i64>() + jitter[k])
                .collect();
            Some((q, d))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_form_is_unimodular_transform(m in small_matrix()) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(u.determinant().unwrap().abs().is_one());
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => prop_assert!((i..h.rows()).all(|k| h.row(k).iter().all(Zero::is_zero))),
                Some(p) => {
                    prop_assert!(last_pivot.map_or(true, |lp| p > lp));
                    prop_assert!(h.get(i, p).is_positive());
                    for k in 0..i {
                        prop_assert!(!h.get(k, p).is_negative() && h.get(k, p) < h.get(i, p));
                    }
                    last_pivot = Some(p);
                }
            }
        }
    }

    #[test]
    fn kernel_is_saturated_and_complementary(m in small_matrix()) {
        let k = kernel_lattice(&m);
        prop_assert_eq!(k.rows() + m.rank(), m.cols());
        if k.rows() > 0 {
            prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
            prop_assert!(smith_invariants(&k).iter().all(One::is_one));
        }
    }

    #[test]
    fn lp_witness_replays(
        rows in prop::collection::vec((prop::collection::vec(-4i64..=4, 3), -4i64..=4, 0u8..3), 0..7)
    ) {
        let q = |x: i64| BigRational::from_integer(x.into());
        let mut sys = LinearSystem::new(3);
        for (normal, offset, kind) in &rows {
            let n: Vec<BigRational> = normal.iter().map(|&x| q(x)).collect();
            match kind {
                0 => { sys.ge(n, q(*offset)); }
                1 => { sys.gt(n, q(*offset)); }
                _ => { sys.equal(n, q(*offset)); }
            }
        }
        if let Feasibility::Feasible(w) = lp_feasible(&sys) {
            prop_assert!(sys.is_satisfied_by(&w));
        }
    }

    #[test]
    fn enumeration_matches_brute_force((q, d) in positive_grading()) {
        let heft = resolve_heft(&q, None).unwrap();
        let fast: Vec<Vec<u64>> = monomials_of_degree(&q, &d, None).unwrap().into_iter().map(|e| e.0).collect();
        prop_assert_eq!(fast, brute_force(&q, &d, &heft));
    }

    #[test]
    fn radicals_are_antichains(
        exps in prop::collection::vec(prop::collection::vec(0u64..3, 5), 0..12)
    ) {
        let ms: Vec<Exponent> = exps.into_iter().map(Exponent).collect();
        let ideal = radical_of_monomials(&ms);
        prop_assert!(ideal.is_antichain());
        for m in &ms {
            let s = m.support();
            prop_assert!(ideal.generators().iter().any(|g| g.is_subset(&s)));
        }
        let mut sorted = ideal.generators().to_vec();
        sorted.sort();
        prop_assert_eq!(sorted, ideal.generators().to_vec());
    }

    #[test]
    fn irrelevant_radical_is_monotone((q, d) in positive_grading()) {
        let Ok(r) = irrelevant_radical(&q, &d, 2, false) else { return Ok(()) };
        prop_assert!(r.ideal.is_antichain());
        let dd: Vec<i64> = d.iter().map(|x| 2 * x).collect();
        for e in monomials_of_degree(&q, &dd, None).unwrap() {
            let s = e.support();
            prop_assert!(r.ideal.generators().iter().any(|g| g.is_subset(&s)));
        }
    }

    #[test]
    fn projective_point_normalization(v in prop::collection::vec(-9i64..=9, 4), s in 1i64..5, neg in any::<bool>()) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = ProjPoint::from_i64(&v).unwrap();
        let scaled: Vec<i64> = v.iter().map(|x| if neg { -x * s } else { x * s }).collect();
        prop_assert_eq!(ProjPoint::from_i64(&scaled).unwrap(), p.clone());
        prop_assert_eq!(ProjPoint::new(&p.as_rat()).unwrap(), p);
    }

    #[test]
    fn intersection_is_symmetric_and_obeys_dimension_bound(
        a in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..4),
        b in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..4),
    ) {
        let rat = |rows: &[Vec<i64>]| -> Vec<Vec<BigRational>> {
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
        };
        let (Some(sa), Some(sb)) = (ProjSubspace::span(4, &rat(&a)), ProjSubspace::span(4, &rat(&b))) else {
            return Ok(());
        };
        let ab = intersect(&sa, &sb);
        prop_assert_eq!(ab.clone(), intersect(&sb, &sa));
        let bound = sa.projective_dim() as i64 + sb.projective_dim() as i64 - 4;
        match ab {
            Some(s) => prop_assert!(s.projective_dim() as i64 >= bound),
            None => prop_assert!(bound < 0),
        }
    }
}

// Chamber and fan properties on the small toric cases and the del Pezzo
// grading; these are deterministic sweeps rather than random inputs.

fn interior_samples() -> Vec<Vec<i64>> {
    let mut out = vec![dataset::PAPER_AMPLE.to_vec(), dataset::ANTICANONICAL.to_vec()];
    out.push(dataset::PAPER_AMPLE.iter().map(|x| 2 * x).collect());
    out.push(vec![5, -2, -1, -1, -1]);
    out.push(vec![7, -3, -2, -2, -1]);
    out
}

#[test]
fn chamber_contains_class_and_sits_in_effective_cone() {
    let q = dataset::p1xp1();
    let eff = effective_cone(&q);
    for w in [[1, 1], [2, 1], [1, 0], [0, 3]] {
        let c = chamber_of(&q, &w).unwrap();
        assert!(c.hrep.contains(&w.map(BigInt::from)));
        for ray in toric_cox::polyhedral::v_representation(&c.hrep).rays {
            assert!(eff.hrep.contains(&ray));
        }
    }
}

#[test]
fn chamber_is_scale_invariant() {
    let q = dataset::delpezzo4();
    let w = dataset::PAPER_AMPLE;
    let base = chamber_of(&q, &w).unwrap();
    for lambda in [2, 3] {
        let scaled: Vec<i64> = w.iter().map(|x| lambda * x).collect();
        assert_eq!(chamber_of(&q, &scaled).unwrap().hrep, base.hrep);
    }
}

#[test]
fn same_chamber_is_an_equivalence() {
    let q = dataset::delpezzo4();
    let s = interior_samples();
    let rel: Vec<Vec<bool>> =
        s.iter().map(|a| s.iter().map(|b| same_chamber(&q, a, b, 1, false).unwrap().same).collect()).collect();
    for i in 0..s.len() {
        assert!(rel[i][i]);
        for j in 0..s.len() {
            assert_eq!(rel[i][j], rel[j][i]);
            for k in 0..s.len() {
                if rel[i][j] && rel[j][k] {
                    assert!(rel[i][k]);
                }
            }
        }
    }
}

fn fan_at(q: &DegreeMatrix, d: &[i64]) -> Fan {
    let b = irrelevant_radical(q, d, 1, false).unwrap().ideal;
    fan_from_irrelevant(&gale_dual(q).unwrap(), &b).unwrap()
}

#[test]
fn same_chamber_gives_same_fan() {
    let q = dataset::delpezzo4();
    let s = interior_samples();
    for a in &s {
        for b in &s {
            if same_chamber(&q, a, b, 1, false).unwrap().same {
                let (fa, fb) = (fan_at(&q, a), fan_at(&q, b));
                let cones = |f: &Fan| f.cones().iter().map(|c| c.rays().clone()).collect::<Vec<Support>>();
                assert_eq!(cones(&fa), cones(&fb));
            }
        }
    }
}

fn shipped_fans() -> Vec<(&'static str, Fan)> {
    vec![
        ("p1", fan_at(&dataset::projective_space(1), &[1])),
        ("p2", fan_at(&dataset::projective_space(2), &[1])),
        ("p3", fan_at(&dataset::projective_space(3), &[1])),
        ("p1xp1", fan_at(&dataset::p1xp1(), &[1, 1])),
        ("ample", fan_at(&dataset::delpezzo4(), &dataset::PAPER_AMPLE)),
        ("anticanonical", fan_at(&dataset::delpezzo4(), &dataset::ANTICANONICAL)),
    ]
}

#[test]
fn facets_of_complete_fans_pair_up() {
    for (name, f) in shipped_fans() {
        let c = is_complete(&f);
        assert!(c.complete, "{name}");
        let facets: usize = f.cones().iter().map(|k| k.facets().len()).sum();
        assert_eq!(facets, 2 * c.walls.len(), "{name}");
    }
}

#[test]
fn pairwise_face_checks_agree_with_separation() {
    for (name, f) in shipped_fans() {
        for a in 0..f.cones().len() {
            for b in a + 1..f.cones().len() {
                let (x, y) = (&f.cones()[a], &f.cones()[b]);
                let by_hrep = toric_cox::fan::meet_is_common_face(x, y).is_none();
                let by_separation = toric_cox::fan::separating_functional(x, y).is_some();
                assert_eq!(by_hrep, by_separation, "{name}: cones {a} {b}");
                assert!(by_hrep, "{name}: cones {a} {b}");
            }
        }
    }
}

#[test]
fn ray_shooting_agrees_with_facet_pairing() {
    for (name, f) in shipped_fans() {
        let complete = is_complete(&f).complete;
        for seed in 0..16 {
            let shot = ray_shoot(&f, &generic_direction(f.ambient_dim(), seed));
            assert_eq!(shot.is_consistent_with_completeness(), complete, "{name} seed {seed}");
        }
    }
}

#[test]
fn verdicts_ignore_cone_order() {
    for (name, f) in shipped_fans() {
        let n = f.cones().len();
        let reversed: Vec<usize> = (0..n).rev().collect();
        let rotated: Vec<usize> = (0..n).map(|i| (i + n / 2) % n).collect();
        for order in [reversed, rotated] {
            let g = f.reordered(&order);
            assert_eq!(validate_fan(&g).valid, validate_fan(&f).valid, "{name}");
            assert_eq!(is_simplicial(&g), is_simplicial(&f), "{name}");
            assert_eq!(is_complete(&g).complete, is_complete(&f).complete, "{name}");
            assert_eq!(is_projective(&g).projective, is_projective(&f).projective, "{name}");
        }
    }
}

#[test]
fn restriction_table_ignores_entry_order() {
    use toric_cox::embedding::verify_restriction_table;
    let p = dataset::delpezzo4_presentation();
    let t = dataset::delpezzo4_restriction_table();
    for order in [[9, 8, 7, 6, 5, 4, 3, 2, 1, 0], [3, 0, 7, 1, 9, 2, 5, 8, 4, 6]] {
        assert!(verify_restriction_table(&t.permuted(&order), &p).holds);
    }
}
