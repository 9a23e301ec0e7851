use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;

use theta_core::correspondence::{phi, psi};
use theta_core::fermat::{next_triple, orbit, step};
use theta_core::geometry::{generate_from_mn, verify_triple};
use theta_core::json::{point_from_str, point_to_string, triple_from_str, triple_to_string};
use theta_core::numeric::rat;
use theta_core::search::{decide, enumerate_table, search_points, Verdict, WitnessSource};
use theta_core::torsion::{atlas, classify_case, torsion_subgroup, CaseLabel, Shape};
use theta_core::{Angle, Curve, Int, Point, Rat, ThetaTriple};

fn q(n: i64) -> Rat {
    rat(n, 1)
}

fn int(n: i64) -> Int {
    Int::from(n)
}

#[test]
fn enumerated_witnesses_verify() {
    for (s, r) in [(0, 1), (1, 2), (-1, 2), (3, 7)] {
        let ang = Angle::new(s, r).unwrap();
        let table = enumerate_table(&ang, 6).unwrap();
        assert!(!table.is_empty());
        for (n, t) in &table {
            assert_eq!(&verify_triple(&ang, t.a(), t.b(), t.c()).unwrap(), n);
        }
    }
    let right = enumerate_table(&Angle::right(), 3).unwrap();
    assert_eq!(right[&int(6)].components(), (&q(3), &q(4), &q(5)));
    let third = enumerate_table(&Angle::third_turn_half(), 3).unwrap();
    assert_eq!(third[&int(10)].components(), (&q(5), &q(8), &q(7)));
    assert!(enumerate_table(&Angle::right(), 1).unwrap().is_empty());
}

#[test]
fn decide_is_monotone_in_the_bound() {
    for n in [5, 6, 7, 13, 14, 15] {
        let mut congruent = false;
        for bound in [10, 40, 100] {
            let v = decide(&Angle::right(), &int(n), bound).unwrap();
            if congruent {
                assert!(v.is_congruent(), "N = {n} lost its verdict at bound {bound}");
            }
            congruent |= v.is_congruent();
        }
    }
}

#[test]
fn searched_witnesses_have_long_orbits() {
    for n in [5, 6, 7, 14, 15] {
        let v = decide(&Angle::right(), &int(n), 100).unwrap();
        let Verdict::Congruent { witness, source: WitnessSource::Search, .. } = v else {
            panic!("N = {n}: {v:?}");
        };
        let o = orbit(&witness, 3).unwrap();
        let cs: BTreeSet<Rat> = o.iter().map(|t| t.c().abs()).collect();
        assert_eq!(cs.len(), 4, "N = {n}");
    }
}

#[test]
fn small_n_without_torsion_are_unknown() {
    for n in [1, 2, 3] {
        match decide(&Angle::right(), &int(n), 60).unwrap() {
            Verdict::Unknown { bound, not_by_torsion } => {
                assert_eq!(bound, 60);
                assert!(not_by_torsion);
            }
            other => panic!("N = {n}: {other:?}"),
        }
    }
}

#[test]
fn search_points_are_ordered_and_on_the_curve() {
    let c = Curve::new(&Angle::right(), &int(6)).unwrap();
    let pts = search_points(&c, 50).unwrap();
    assert!(pts.iter().all(|p| c.on_curve(p)));
    assert!(pts.contains(&Point::new(q(12), q(36))));
    assert!(pts.contains(&Point::new(q(0), q(0))));
    assert_eq!(search_points(&c, 50).unwrap(), pts);
    let set: BTreeSet<String> = pts.iter().map(|p| p.to_string()).collect();
    assert_eq!(set.len(), pts.len());
}

#[test]
fn atlas_agrees_with_direct_computation() {
    let rows = atlas(8, 3).unwrap();
    assert!(rows.iter().any(|r| (r.r, r.s, r.n) == (2, 1, 1) && r.shape == Shape::Z2xZ4));
    for row in rows.iter().step_by(7) {
        let ang = Angle::new(row.s, row.r).unwrap();
        let shape = torsion_subgroup(&Curve::new(&ang, &int(row.n)).unwrap()).unwrap().shape;
        assert_eq!(shape, row.shape);
        assert_eq!(classify_case(&ang, &int(row.n)).unwrap().as_str(), row.case);
        assert_eq!(row.case.parse::<CaseLabel>().unwrap().shape(), row.shape);
    }
    assert_eq!(atlas(8, 3).unwrap(), rows);
}

#[test]
fn square_twists_share_torsion() {
    let ang = Angle::new(47, 128).unwrap();
    let g1 = torsion_subgroup(&Curve::new(&ang, &int(1)).unwrap()).unwrap();
    let g4 = torsion_subgroup(&Curve::new(&ang, &int(4)).unwrap()).unwrap();
    assert_eq!(g1.shape, g4.shape);
    assert_eq!(classify_case(&ang, &int(9)).unwrap(), CaseLabel::C1i);
}

fn angles() -> impl Strategy<Value = Angle> {
    (1i64..=12)
        .prop_flat_map(|r| (Just(r), 1 - r..r))
        .prop_filter_map("coprime", |(r, s)| Angle::new(s, r).ok())
}

fn triples() -> impl Strategy<Value = ThetaTriple> {
    (angles(), 1i64..30, 1i64..30).prop_filter_map("degenerate", |(ang, m, n)| {
        generate_from_mn(&ang, &q(m), &q(n)).ok()?.into_triple().ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trips(t in triples()) {
        prop_assert_eq!(triple_from_str(&triple_to_string(&t)).unwrap(), t.clone());
        let p = psi(&t).unwrap();
        prop_assert_eq!(point_from_str(&point_to_string(&p)).unwrap(), p);
    }

    #[test]
    fn step_radical_and_area(t in triples()) {
        if let Ok(rec) = step(&t) {
            prop_assert!(rec.radical_agrees().unwrap());
            prop_assert_eq!(rec.output.a() * rec.output.b(), t.a() * t.b());
            prop_assert_eq!(rec.output.n(), t.n());
        }
    }

    #[test]
    fn phi_of_doubled_point_is_negated_next(t in triples()) {
        let c = Curve::new(t.angle(), t.n()).unwrap();
        if let Ok(next) = next_triple(&t) {
            let doubled = c.double(&psi(&t).unwrap()).unwrap();
            let back = phi(&c, &doubled.neg()).unwrap();
            prop_assert_eq!(back, next);
        }
    }

    #[test]
    fn torsion_is_stable_under_search(ang in angles(), n in 1i64..12) {
        let c = Curve::new(&ang, &int(n)).unwrap();
        let g = torsion_subgroup(&c).unwrap();
        for p in search_points(&c, 30).unwrap() {
            let in_group = g.points.iter().any(|tp| tp.point == p);
            let finite = c.order_bounded(&p).unwrap() != theta_core::curve::Order::Infinite;
            prop_assert_eq!(in_group, finite, "{} on {}", p, c);
        }
    }
}
