use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toplat::convex::*;
use toplat::incidence::{line_through, AffinePoint};
use toplat::rational::qf;

fn pt(x: i64, y: i64) -> AffinePoint {
    AffinePoint::int(x, y)
}

/// Points with coordinates in `{-8..8}/2`, the sampling oracle for inclusion.
fn sample_points() -> Vec<AffinePoint> {
    (-8..=8)
        .flat_map(|x| (-8..=8).map(move |y| AffinePoint::new(qf(x, 2), qf(y, 2))))
        .collect()
}

#[test]
fn standard_universe_agrees_with_direct_checks() {
    let u = PolyUniverse::standard();
    let r = u.agreement();
    assert_eq!(r.members, 50);
    for c in &r.claims {
        assert!(c.failures.is_empty(), "{}: {:?}", c.claim, c.failures);
        assert!(c.checked >= 50);
    }
}

#[test]
fn points_are_the_atoms_of_the_family() {
    let u = PolyUniverse::standard();
    let empty = Polyhedron::empty();
    for i in 0..u.len() {
        let p = u.elem(i);
        if p.dim() == Some(0) {
            let below = (0..u.len())
                .filter(|&j| u.leq(j, i) && !u.elem(j).same_set(&empty))
                .count();
            assert_eq!(below, 1, "{p}");
        }
    }
}

#[test]
fn closure_is_idempotent_and_monotone_on_fuzzed_polyhedra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pts = sample_points();
    for _ in 0..500 {
        let p = random_polyhedron(&mut rng);
        let extra = random_polyhedron(&mut rng);
        let smaller = p.meet(&extra);
        let cl = p.closure();
        assert!(cl.closure().same_set(&cl), "{p}");
        assert!(p.leq(&cl) && cl.is_closed());
        assert!(smaller.leq(&p));
        assert!(smaller.closure().leq(&cl), "{smaller} / {p}");
        for q in &pts {
            if p.contains(q) {
                assert!(cl.contains(q));
            }
        }
    }
}

#[test]
fn boundedness_two_ways_on_fuzzed_polyhedra() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let p = random_polyhedron(&mut rng);
        assert_eq!(is_bounded(&p), p.is_bounded(), "{p}");
        let c = random_polytope(&mut rng);
        assert!(is_bounded(&c) && c.is_polytope());
    }
}

#[test]
fn inclusion_against_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts = sample_points();
    for _ in 0..300 {
        let (p, r) = (random_polyhedron(&mut rng), random_polyhedron(&mut rng));
        let m = p.meet(&r);
        for q in &pts {
            assert_eq!(m.contains(q), p.contains(q) && r.contains(q));
            if p.leq(&r) && p.contains(q) {
                assert!(r.contains(q), "{p} <= {r} at {q}");
            }
        }
    }
}

#[test]
fn projection_image_of_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pts = sample_points();
    let l = line_through(&pt(0, 0), &pt(1, 0)).unwrap();
    let a = line_through(&pt(0, 0), &pt(1, 2)).unwrap();
    for _ in 0..200 {
        let p = random_polyhedron(&mut rng);
        let img = project(&a, &l, &p).unwrap();
        for q in pts.iter().filter(|q| p.contains(q)) {
            assert!(img.contains(&project_point(&a, &l, q).unwrap()));
        }
        assert_eq!(img.is_empty(), p.is_empty());
    }
}

#[test]
fn degenerate_inputs_are_errors() {
    let l = line_through(&pt(0, 0), &pt(1, 0)).unwrap();
    let same = line_through(&pt(0, 1), &pt(1, 1)).unwrap();
    assert_eq!(
        project(&same, &l, &Polyhedron::plane()).unwrap_err(),
        ConvexError::Parallel
    );
    assert_eq!(
        subset_witness(&l, &same, &[pt(0, 0)]).unwrap_err(),
        ConvexError::Parallel
    );
    let up = line_through(&pt(0, 0), &pt(0, 1)).unwrap();
    assert!(matches!(
        subset_witness(&l, &up, &[pt(0, 1)]),
        Err(ConvexError::NotOnLine(_))
    ));
    assert_eq!(hull(&[]).unwrap_err(), ConvexError::EmptyInput);
    assert!("x + y <> 2".parse::<Polyhedron>().is_err());
}

fn small_points() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 1..8)
}

proptest! {
    #[test]
    fn hull_vertices_are_the_extreme_points(raw in small_points()) {
        let pts: Vec<AffinePoint> = raw.iter().map(|&(x, y)| pt(x, y)).collect();
        let h = hull(&pts).unwrap();
        let poly = h.to_polyhedron();
        let mut ext = poly.extreme_points();
        let mut verts = extremal_points(&h);
        ext.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
        verts.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
        prop_assert_eq!(ext, verts);
        for p in &pts {
            prop_assert!(poly.contains(p));
        }
    }

    #[test]
    fn witness_projects_onto_targets(xs in prop::collection::btree_set(-6i64..=6, 1..6), slope in -3i64..=3) {
        let l = line_through(&pt(0, 0), &pt(1, 0)).unwrap();
        let a = line_through(&pt(0, 0), &pt(slope, 1)).unwrap();
        let targets: Vec<AffinePoint> = xs.iter().map(|&x| pt(x, 0)).collect();
        let w = subset_witness(&l, &a, &targets).unwrap();
        prop_assert_eq!(finite_subset_family(&l, &a, &w).unwrap(), targets);
    }

    #[test]
    fn canonical_form_is_irredundant_and_reparses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polyhedron(&mut rng);
        let again: Polyhedron = p.to_string().parse().unwrap();
        prop_assert!(again.same_set(&p));
        let cons = p.constraints();
        if !p.is_empty() {
            for i in 0..cons.len() {
                let mut fewer = cons.clone();
                fewer.remove(i);
                prop_assert!(!Polyhedron::new(fewer).same_set(&p), "{} drop {}", p, i);
            }
        }
    }
}
