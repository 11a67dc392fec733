//! Polytopes, parallel projection onto a line, and finite point sets as
//! projections of extremal points.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::incidence::{intersect, parallel_through, AffineLine, AffinePoint};
use crate::rational::Q;

use super::poly::{Constraint, Polyhedron, Rel};
use super::ConvexError;

/// The convex hull of finitely many points, kept as its vertices in
/// counterclockwise order from the lowest-leftmost one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polytope {
    vertices: Vec<AffinePoint>,
}

fn cross(o: &AffinePoint, a: &AffinePoint, b: &AffinePoint) -> Q {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Monotone chain, dropping collinear points.
pub fn hull(points: &[AffinePoint]) -> Result<Polytope, ConvexError> {
    let mut pts = points.to_vec();
    pts.sort_by(lex);
    pts.dedup();
    if pts.is_empty() {
        return Err(ConvexError::EmptyInput);
    }
    if pts.len() < 3 {
        return Ok(Polytope { vertices: pts });
    }
    let chain = |it: &mut dyn Iterator<Item = &AffinePoint>| {
        let mut out: Vec<AffinePoint> = Vec::new();
        for p in it {
            while out.len() >= 2
                && !cross(&out[out.len() - 2], &out[out.len() - 1], p).is_positive()
            {
                out.pop();
            }
            out.push(p.clone());
        }
        out.pop();
        out
    };
    let mut lower = chain(&mut pts.iter());
    let upper = chain(&mut pts.iter().rev());
    lower.extend(upper);
    // All points collinear: the chains meet at the two ends only.
    lower.dedup();
    Ok(Polytope { vertices: lower })
}

impl Polytope {
    pub fn vertices(&self) -> &[AffinePoint] {
        &self.vertices
    }

    pub fn to_polyhedron(&self) -> Polyhedron {
        let v = &self.vertices;
        match v.len() {
            1 => Polyhedron::point(&v[0]),
            2 => Polyhedron::segment(&v[0], &v[1]),
            n => Polyhedron::new((0..n).map(|i| {
                let (p, r) = (&v[i], &v[(i + 1) % n]);
                // Interior on the left of p -> r.
                let (dx, dy) = (&r.x - &p.x, &r.y - &p.y);
                Constraint::new(dy.clone(), -&dx, Rel::Le, &dy * &p.x - &dx * &p.y)
            })),
        }
    }
}

/// Exactly the vertices of the hull.
pub fn extremal_points(c: &Polytope) -> Vec<AffinePoint> {
    c.vertices.clone()
}

fn check_pair(a: &AffineLine, l: &AffineLine) -> Result<(), ConvexError> {
    if a.is_parallel(l) {
        Err(ConvexError::Parallel)
    } else {
        Ok(())
    }
}

/// `π_{A,ℓ}(p)`: where the parallel to `A` through `p` meets `ℓ`.
pub fn project_point(
    a: &AffineLine,
    l: &AffineLine,
    p: &AffinePoint,
) -> Result<AffinePoint, ConvexError> {
    check_pair(a, l)?;
    intersect(&parallel_through(a, p), l).map_err(|_| ConvexError::Parallel)
}

/// The image of `C` under `π_{A,ℓ}`, a possibly open or unbounded piece of `ℓ`.
pub fn project(a: &AffineLine, l: &AffineLine, c: &Polyhedron) -> Result<Polyhedron, ConvexError> {
    check_pair(a, l)?;
    if c.is_empty() {
        return Ok(Polyhedron::empty());
    }
    // Points on one parallel of A share the value of A's linear form.
    let (na, nb, _) = a.coefficients();
    let (la, lb, lc) = l.coefficients();
    let mut cons = vec![Constraint::new(la.clone(), lb.clone(), Rel::Eq, lc.clone())];
    let attained = |v: &Q, c: &Polyhedron| {
        !c.with(Constraint::new(na.clone(), nb.clone(), Rel::Eq, v.clone()))
            .is_empty()
    };
    if let Some(hi) = c.sup(na, nb) {
        let rel = if attained(&hi, c) { Rel::Le } else { Rel::Lt };
        cons.push(Constraint::new(na.clone(), nb.clone(), rel, hi));
    }
    if let Some(lo) = c.inf(na, nb) {
        let rel = if attained(&lo, c) { Rel::Le } else { Rel::Lt };
        cons.push(Constraint::new(-na, -nb, rel, -lo));
    }
    Ok(Polyhedron::new(cons))
}

/// Boundedness read off the projections to the two axes.
pub fn is_bounded(c: &Polyhedron) -> bool {
    let x_axis = AffineLine::new(Q::zero(), Q::from_integer(1.into()), Q::zero()).expect("axis");
    let y_axis = AffineLine::new(Q::from_integer(1.into()), Q::zero(), Q::zero()).expect("axis");
    let onto = |a: &AffineLine, l: &AffineLine| {
        project(a, l, c)
            .expect("axes are not parallel")
            .is_bounded()
    };
    onto(&y_axis, &x_axis) && onto(&x_axis, &y_axis)
}

/// Lexicographic order, which runs monotonically along any line.
fn lex(p: &AffinePoint, r: &AffinePoint) -> Ordering {
    p.x.cmp(&r.x).then_with(|| p.y.cmp(&r.y))
}

/// `π_{A,ℓ}` of the extremal points of `C`.
pub fn finite_subset_family(
    l: &AffineLine,
    a: &AffineLine,
    c: &Polytope,
) -> Result<Vec<AffinePoint>, ConvexError> {
    let mut out = extremal_points(c)
        .iter()
        .map(|p| project_point(a, l, p))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by(lex);
    out.dedup();
    Ok(out)
}

/// A polytope whose extremal points project exactly onto `targets`: the
/// targets are lifted along `A` onto a concave parabola.
pub fn subset_witness(
    l: &AffineLine,
    a: &AffineLine,
    targets: &[AffinePoint],
) -> Result<Polytope, ConvexError> {
    check_pair(a, l)?;
    if targets.is_empty() {
        return Err(ConvexError::EmptyInput);
    }
    if let Some(p) = targets.iter().find(|p| !l.contains(p)) {
        return Err(ConvexError::NotOnLine(p.to_string()));
    }
    let mut ts = targets.to_vec();
    ts.sort_by(lex);
    ts.dedup();
    let (la, lb, _) = l.coefficients();
    let pos = |q: &AffinePoint| -lb * &q.x + la * &q.y;
    let (s0, s1) = (pos(&ts[0]), pos(&ts[ts.len() - 1]));
    let (na, nb, _) = a.coefficients();
    let dir = (-nb, na.clone());
    let lifted: Vec<AffinePoint> = ts
        .iter()
        .map(|t| {
            let s = pos(t);
            let h = Q::from_integer(1.into()) + (&s - &s0) * (&s1 - &s);
            AffinePoint::new(&t.x + &h * &dir.0, &t.y + &h * &dir.1)
        })
        .collect();
    hull(&lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::line_through;

    fn pt(x: i64, y: i64) -> AffinePoint {
        AffinePoint::int(x, y)
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let h = hull(&[pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1), pt(2, 2), pt(0, 2)]).unwrap();
        assert_eq!(h.vertices(), &[pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]);
        let h = hull(&[pt(0, 0), pt(1, 1), pt(3, 3)]).unwrap();
        assert_eq!(h.vertices(), &[pt(0, 0), pt(3, 3)]);
        assert!(hull(&[]).is_err());
    }

    #[test]
    fn witness_example() {
        let x_axis = line_through(&pt(0, 0), &pt(1, 0)).unwrap();
        let vertical = line_through(&pt(0, 0), &pt(0, 1)).unwrap();
        let targets = [pt(0, 0), pt(2, 0), pt(5, 0)];
        let w = subset_witness(&x_axis, &vertical, &targets).unwrap();
        assert_eq!(w.vertices().len(), 3);
        assert_eq!(
            finite_subset_family(&x_axis, &vertical, &w).unwrap(),
            targets.to_vec()
        );
    }

    #[test]
    fn projection_keeps_openness() {
        let x_axis = line_through(&pt(0, 0), &pt(1, 0)).unwrap();
        let vertical = line_through(&pt(0, 0), &pt(0, 1)).unwrap();
        let c: Polyhedron = "x > 0; y >= 0; x + y <= 2".parse().unwrap();
        let img = project(&vertical, &x_axis, &c).unwrap();
        assert!(!img.contains(&pt(0, 0)));
        assert!(img.contains(&pt(2, 0)));
        assert!(project(&x_axis, &x_axis, &c).is_err());
    }
}
