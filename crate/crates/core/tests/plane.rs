use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toplat::incidence::AffinePoint;
use toplat::plane::*;
use toplat::rational::Q;

/// `p = c + t(d - c)` for some `t ∈ [0,1]`, solved for `t` on a nonzero
/// coordinate of `d - c`.
fn oracle_on(p: &AffinePoint, c: &AffinePoint, d: &AffinePoint) -> bool {
    let (sx, sy) = (&d.x - &c.x, &d.y - &c.y);
    if sx.is_zero() && sy.is_zero() {
        return p == c;
    }
    let t = if !sx.is_zero() {
        (&p.x - &c.x) / &sx
    } else {
        (&p.y - &c.y) / &sy
    };
    t >= Q::zero() && t <= Q::one() && &c.x + &t * &sx == p.x && &c.y + &t * &sy == p.y
}

/// Closed segments meet iff `a + s(b-a) = c + t(d-c)` has a solution with
/// `s, t ∈ [0,1]`, solved by Cramer's rule; parallel pieces meet iff an
/// endpoint of one lies on the other.
fn oracle_meet(a: &AffinePoint, b: &AffinePoint, c: &AffinePoint, d: &AffinePoint) -> bool {
    let (rx, ry, sx, sy) = (&b.x - &a.x, &b.y - &a.y, &d.x - &c.x, &d.y - &c.y);
    let (ex, ey) = (&c.x - &a.x, &c.y - &a.y);
    let det = &rx * &sy - &ry * &sx;
    if !det.is_zero() {
        let unit = |v: &Q| *v >= Q::zero() && *v <= Q::one();
        let s = (&ex * &sy - &ey * &sx) / &det;
        let t = (&ex * &ry - &ey * &rx) / &det;
        return unit(&s) && unit(&t);
    }
    oracle_on(a, c, d) || oracle_on(b, c, d) || oracle_on(c, a, b) || oracle_on(d, a, b)
}

fn oracle_disjoint(arcs: &[PLArc]) -> bool {
    let segs = |a: &PLArc| {
        a.vertices()
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect::<Vec<_>>()
    };
    (0..arcs.len()).all(|i| {
        (i + 1..arcs.len()).all(|j| {
            segs(&arcs[i])
                .iter()
                .all(|(a, b)| segs(&arcs[j]).iter().all(|(c, d)| !oracle_meet(a, b, c, d)))
        })
    })
}

fn grid_points(rng: &mut ChaCha8Rng, n: usize, side: i64) -> Vec<AffinePoint> {
    let mut all: Vec<AffinePoint> = (0..side)
        .flat_map(|x| (0..side).map(move |y| AffinePoint::int(x, y)))
        .collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

#[test]
fn completeness_on_twenty_grid() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..400 {
        let k = round % 9;
        let pts = grid_points(&mut rng, 2 * k, 20);
        let (a, b) = pts.split_at(k);
        let r = equal_size_e(a, b).unwrap();
        assert!(r.equal, "{a:?} {b:?}");
        let w = r.witness.unwrap();
        assert_eq!(w.arcs().len(), k);
        assert!(oracle_disjoint(w.arcs()));
        for arc in w.arcs() {
            assert!(a.contains(arc.start()) && b.contains(arc.end()));
        }
    }
    assert!(t.elapsed().as_secs() < 30);
}

#[test]
fn unequal_sizes_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let (m, n) = (rng.gen_range(0..6), rng.gen_range(0..6));
        let pts = grid_points(&mut rng, m + n, 20);
        let (a, b) = pts.split_at(m);
        assert_eq!(equal_size_e(a, b).unwrap().equal, m == n);
    }
}

#[test]
fn soundness_on_fuzzed_arc_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut passing = 0;
    for round in 0..500 {
        let n = rng.gen_range(0..7);
        let pts = grid_points(&mut rng, n, 6);
        let split = rng.gen_range(0..=pts.len());
        let (a, b) = pts.split_at(split);
        let arcs = if round % 2 == 0 {
            {
                let count = rng.gen_range(0..4);
                random_arcs(&mut rng, count, &pts)
            }
        } else {
            // Start from a true witness for a trimmed pairing, then disturb it.
            let k = a.len().min(b.len());
            let mut arcs = equal_size_e(&a[..k], &b[..k])
                .unwrap()
                .witness
                .unwrap()
                .arcs()
                .to_vec();
            let extra = rng.gen_range(0..2);
            arcs.extend(random_arcs(&mut rng, extra, &pts));
            if !arcs.is_empty() && rng.gen_bool(0.3) {
                let i = rng.gen_range(0..arcs.len());
                arcs.remove(i);
            }
            arcs
        };
        if matching_conditions(&arcs, a, b) {
            passing += 1;
            assert_eq!(a.len(), b.len());
        }
    }
    assert!(
        passing > 25,
        "only {passing} fuzzed systems passed the clauses"
    );
}

#[test]
fn general_router_handles_arbitrary_pairings() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let k = rng.gen_range(2..=4);
        let pts = grid_points(&mut rng, 2 * k, 5);
        let pairs: Vec<_> = pts
            .chunks(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect();
        let sys = route_disjoint_arcs(&pairs).unwrap();
        assert!(oracle_disjoint(sys.arcs()));
        for (arc, (p, r)) in sys.arcs().iter().zip(&pairs) {
            assert_eq!((arc.start(), arc.end()), (p, r));
            for other in pts.iter().filter(|x| *x != p && *x != r) {
                assert!(!arc.contains(other));
            }
        }
    }
}

#[test]
fn segment_test_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut p = || AffinePoint::int(rng.gen_range(0..4), rng.gen_range(0..4));
    for _ in 0..3000 {
        let (a, b, c, d) = (p(), p(), p(), p());
        assert_eq!(
            segments_meet(&a, &b, &c, &d),
            oracle_meet(&a, &b, &c, &d),
            "{a} {b} {c} {d}"
        );
    }
}
