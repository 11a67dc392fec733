use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toplat::incidence::*;
use toplat::rational::{q, qf, Q};

fn configs(seed: u64, n: usize) -> Vec<Config> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_config(&mut rng)).collect()
}

fn coord(c: &Config, p: &AffinePoint) -> Q {
    coordinate(&c.o, &c.i, p).unwrap()
}

#[test]
fn constructions_match_coordinates() {
    for c in configs(7, 200) {
        let (s, _) = add_construct(&c.o, &c.a, &c.c, &c.b).unwrap();
        assert_eq!(coord(&c, &s), coord(&c, &c.a) + coord(&c, &c.c));
        let (m, _) = mul_construct(&c.o, &c.i, &c.a, &c.c, &c.b).unwrap();
        assert_eq!(coord(&c, &m), coord(&c, &c.a) * coord(&c, &c.c));
    }
}

#[test]
fn identities() {
    for c in configs(11, 200) {
        assert_eq!(add_construct(&c.o, &c.a, &c.o, &c.b).unwrap().0, c.a);
        assert_eq!(add_construct(&c.o, &c.o, &c.a, &c.b).unwrap().0, c.a);
        assert_eq!(mul_construct(&c.o, &c.i, &c.a, &c.i, &c.b).unwrap().0, c.a);
        assert_eq!(mul_construct(&c.o, &c.i, &c.a, &c.o, &c.b).unwrap().0, c.o);
    }
}

#[test]
fn field_laws_through_constructions() {
    for (c, d) in configs(13, 200).into_iter().zip(configs(17, 200)) {
        // A third point on the line of c.
        let e = point_at(&c.o, &c.i, &coordinate(&d.o, &d.i, &d.a).unwrap());
        let add = |x: &AffinePoint, y: &AffinePoint| add_construct(&c.o, x, y, &c.b).unwrap().0;
        let mul =
            |x: &AffinePoint, y: &AffinePoint| mul_construct(&c.o, &c.i, x, y, &c.b).unwrap().0;
        assert_eq!(add(&c.a, &c.c), add(&c.c, &c.a));
        assert_eq!(add(&add(&c.a, &c.c), &e), add(&c.a, &add(&c.c, &e)));
        assert_eq!(mul(&c.a, &c.c), mul(&c.c, &c.a));
        assert_eq!(mul(&mul(&c.a, &c.c), &e), mul(&c.a, &mul(&c.c, &e)));
        assert_eq!(
            mul(&c.a, &add(&c.c, &e)),
            add(&mul(&c.a, &c.c), &mul(&c.a, &e))
        );
    }
}

#[test]
fn degenerate_configurations_are_rejected() {
    for c in configs(19, 200) {
        // B moved onto the line.
        let on = point_at(&c.o, &c.i, &qf(7, 3));
        assert_eq!(
            add_construct(&c.o, &c.a, &c.c, &on).map(|r| r.0),
            if c.a == c.o && c.c == c.o {
                Ok(c.o.clone())
            } else {
                Err(GeomError::AuxOnLine)
            }
        );
        assert_eq!(
            mul_construct(&c.o, &c.i, &c.a, &c.c, &on).map(|r| r.0),
            Err(GeomError::AuxOnLine)
        );
        // A moved off the line.
        assert_eq!(
            mul_construct(&c.o, &c.i, &c.b, &c.c, &c.a).map(|r| r.0),
            Err(GeomError::NotCollinear)
        );
        assert_eq!(
            mul_construct(&c.o, &c.o, &c.a, &c.c, &c.b).map(|r| r.0),
            Err(GeomError::UnitAtOrigin)
        );
    }
}

#[test]
fn tau_transports_incidence() {
    for c in configs(23, 200) {
        let l = line_through(&c.o, &c.i).unwrap();
        let plane = tau_line(&l);
        for p in [&c.a, &c.c, &c.b, &c.o] {
            assert_eq!(plane.contains(&tau(p)), l.contains(p));
        }
        assert!(!HomogeneousPlane::at_infinity().contains(&tau(&c.b)));
        assert_eq!(tau_line_inv(&plane).unwrap(), l);
        assert_eq!(tau_inv(&tau(&c.b)).unwrap(), c.b);
    }
    assert_eq!(
        tau_line_inv(&HomogeneousPlane::at_infinity()),
        Err(GeomError::AtInfinity)
    );
}

#[test]
fn betweenness_order_makes_an_ordered_field() {
    for c in configs(29, 200) {
        let pos = |p: &AffinePoint| nonnegative(&c.o, &c.i, p);
        assert!(pos(&c.i));
        for p in [&c.a, &c.c] {
            assert_eq!(pos(p), !coord(&c, p).is_negative());
        }
        let sum = add_construct(&c.o, &c.a, &c.c, &c.b).unwrap().0;
        let prod = mul_construct(&c.o, &c.i, &c.a, &c.c, &c.b).unwrap().0;
        if pos(&c.a) && pos(&c.c) {
            assert!(pos(&sum) && pos(&prod));
        }
    }
}

proptest! {
    #[test]
    fn line_through_contains_both(x1 in -9i64..9, y1 in -9i64..9, x2 in -9i64..9, y2 in -9i64..9) {
        let (p, r) = (AffinePoint::int(x1, y1), AffinePoint::int(x2, y2));
        prop_assume!(p != r);
        let l = line_through(&p, &r).unwrap();
        prop_assert!(l.contains(&p) && l.contains(&r));
        let m = parallel_through(&l, &AffinePoint::new(q(x1) + qf(1, 2), q(y2)));
        prop_assert!(l.is_parallel(&m));
    }
}
