//! Field arithmetic on a line of the affine plane over ℚ, built from ruler
//! and parallel constructions, and the correspondence `τ` between affine
//! points and lines and subspaces of `ℚ³`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::rational::{fmt_q, one, parse_q, q, qf, zero, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("points coincide: no line through them")]
    Coincident,
    #[error("lines are parallel: no intersection")]
    Parallel,
    #[error("a line needs (a, b) != (0, 0)")]
    DegenerateLine,
    #[error("homogeneous point is zero")]
    ZeroVector,
    #[error("point lies at infinity (w = 0)")]
    AtInfinity,
    #[error("points are not collinear on the base line")]
    NotCollinear,
    #[error("auxiliary point lies on the base line")]
    AuxOnLine,
    #[error("unit coincides with the origin")]
    UnitAtOrigin,
    #[error("cannot parse point {0:?}; expected \"p/q,r/s\"")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    pub x: Q,
    pub y: Q,
}

impl AffinePoint {
    pub fn new(x: Q, y: Q) -> AffinePoint {
        AffinePoint { x, y }
    }

    pub fn int(x: i64, y: i64) -> AffinePoint {
        AffinePoint::new(q(x), q(y))
    }

    fn minus(&self, o: &AffinePoint) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", fmt_q(&self.x), fmt_q(&self.y))
    }
}

impl FromStr for AffinePoint {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<AffinePoint, GeomError> {
        let err = || GeomError::Parse(s.to_string());
        let (a, b) = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .split_once(',')
            .ok_or_else(err)?;
        Ok(AffinePoint::new(
            parse_q(a).map_err(|_| err())?,
            parse_q(b).map_err(|_| err())?,
        ))
    }
}

impl Serialize for AffinePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `{(x, y) : ax + by = c}`, scaled so the first nonzero of `a, b` is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineLine {
    a: Q,
    b: Q,
    c: Q,
}

impl AffineLine {
    pub fn new(a: Q, b: Q, c: Q) -> Result<AffineLine, GeomError> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(GeomError::DegenerateLine);
        };
        Ok(AffineLine {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
        })
    }

    pub fn coefficients(&self) -> (&Q, &Q, &Q) {
        (&self.a, &self.b, &self.c)
    }

    pub fn contains(&self, p: &AffinePoint) -> bool {
        &self.a * &p.x + &self.b * &p.y == self.c
    }

    pub fn is_parallel(&self, o: &AffineLine) -> bool {
        &self.a * &o.b - &self.b * &o.a == zero()
    }
}

impl fmt::Display for AffineLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*x + {}*y = {}",
            fmt_q(&self.a),
            fmt_q(&self.b),
            fmt_q(&self.c)
        )
    }
}

pub fn line_through(p: &AffinePoint, r: &AffinePoint) -> Result<AffineLine, GeomError> {
    if p == r {
        return Err(GeomError::Coincident);
    }
    let (dx, dy) = r.minus(p);
    // Normal (dy, -dx).
    let c = &dy * &p.x - &dx * &p.y;
    AffineLine::new(dy, -dx, c)
}

pub fn intersect(l: &AffineLine, m: &AffineLine) -> Result<AffinePoint, GeomError> {
    let det = &l.a * &m.b - &l.b * &m.a;
    if det.is_zero() {
        return Err(GeomError::Parallel);
    }
    let x = (&l.c * &m.b - &l.b * &m.c) / &det;
    let y = (&l.a * &m.c - &l.c * &m.a) / &det;
    Ok(AffinePoint::new(x, y))
}

pub fn parallel_through(l: &AffineLine, p: &AffinePoint) -> AffineLine {
    let c = &l.a * &p.x + &l.b * &p.y;
    AffineLine::new(l.a.clone(), l.b.clone(), c).expect("same direction as l")
}

/// A 1-dimensional subspace of `ℚ³`, scaled so its last nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPoint {
    pub u: Q,
    pub v: Q,
    pub w: Q,
}

impl HomogeneousPoint {
    pub fn new(u: Q, v: Q, w: Q) -> Result<HomogeneousPoint, GeomError> {
        let lead = [&w, &v, &u]
            .into_iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(GeomError::ZeroVector)?;
        Ok(HomogeneousPoint {
            u: u / &lead,
            v: v / &lead,
            w: w / &lead,
        })
    }
}

impl fmt::Display for HomogeneousPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}:{}]",
            fmt_q(&self.u),
            fmt_q(&self.v),
            fmt_q(&self.w)
        )
    }
}

/// A 2-dimensional subspace of `ℚ³`, given by a normal vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPlane {
    normal: HomogeneousPoint,
}

impl HomogeneousPlane {
    pub fn new(a: Q, b: Q, c: Q) -> Result<HomogeneousPlane, GeomError> {
        Ok(HomogeneousPlane {
            normal: HomogeneousPoint::new(a, b, c)?,
        })
    }

    /// `H = ℚ × ℚ × {0}`.
    pub fn at_infinity() -> HomogeneousPlane {
        HomogeneousPlane::new(zero(), zero(), one()).expect("nonzero")
    }

    /// `p ⊆ self`.
    pub fn contains(&self, p: &HomogeneousPoint) -> bool {
        let n = &self.normal;
        (&n.u * &p.u + &n.v * &p.v + &n.w * &p.w).is_zero()
    }
}

/// `τ(a, b) = (a, b, 1)·ℚ`.
pub fn tau(p: &AffinePoint) -> HomogeneousPoint {
    HomogeneousPoint::new(p.x.clone(), p.y.clone(), one()).expect("w = 1")
}

pub fn tau_inv(p: &HomogeneousPoint) -> Result<AffinePoint, GeomError> {
    if p.w.is_zero() {
        return Err(GeomError::AtInfinity);
    }
    Ok(AffinePoint::new(&p.u / &p.w, &p.v / &p.w))
}

/// The plane spanned by `τ` of the points of an affine line.
pub fn tau_line(l: &AffineLine) -> HomogeneousPlane {
    HomogeneousPlane::new(l.a.clone(), l.b.clone(), -l.c.clone()).expect("(a, b) != 0")
}

/// Inverse of [`tau_line`] on planes other than `H`.
pub fn tau_line_inv(p: &HomogeneousPlane) -> Result<AffineLine, GeomError> {
    let n = &p.normal;
    AffineLine::new(n.u.clone(), n.v.clone(), -n.w.clone()).map_err(|_| GeomError::AtInfinity)
}

/// Named intermediate lines and points of a construction, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub steps: Vec<(String, String)>,
}

impl Trace {
    fn line(&mut self, name: &str, l: &AffineLine) {
        self.steps.push((name.to_string(), l.to_string()));
    }

    fn point(&mut self, name: &str, p: &AffinePoint) {
        self.steps.push((name.to_string(), p.to_string()));
    }
}

/// The line through `O` and the first other point, checked against the
/// remaining points and `B`. `None` when every point is `O`.
fn base_line(
    o: &AffinePoint,
    pts: &[&AffinePoint],
    b: &AffinePoint,
) -> Result<Option<AffineLine>, GeomError> {
    let Some(first) = pts.iter().find(|p| **p != o) else {
        return Ok(None);
    };
    let l = line_through(o, first)?;
    if pts.iter().any(|p| !l.contains(p)) {
        return Err(GeomError::NotCollinear);
    }
    if l.contains(b) {
        return Err(GeomError::AuxOnLine);
    }
    Ok(Some(l))
}

/// `A + C` on the line `ℓ` through `O`, `A`, `C`, using the auxiliary point
/// `B ∉ ℓ`: `D` completes the parallelogram `O, A, D, B`, and the parallel
/// to `BC` through `D` meets `ℓ` in `A + C`.
pub fn add_construct(
    o: &AffinePoint,
    a: &AffinePoint,
    c: &AffinePoint,
    b: &AffinePoint,
) -> Result<(AffinePoint, Trace), GeomError> {
    let mut tr = Trace::default();
    let Some(l) = base_line(o, &[a, c], b)? else {
        tr.point("A+C", o);
        return Ok((o.clone(), tr));
    };
    tr.line("l", &l);
    let ob = line_through(o, b)?;
    tr.line("OB", &ob);
    let p1 = parallel_through(&ob, a);
    tr.line("parallel to OB through A", &p1);
    let p2 = parallel_through(&l, b);
    tr.line("parallel to l through B", &p2);
    let d = intersect(&p1, &p2)?;
    tr.point("D", &d);
    let bc = line_through(b, c)?;
    tr.line("BC", &bc);
    let p3 = parallel_through(&bc, &d);
    tr.line("parallel to BC through D", &p3);
    let s = intersect(&p3, &l)?;
    tr.point("A+C", &s);
    Ok((s, tr))
}

/// `A · C` on the line `ℓ` through `O`, `I`, `A`, `C` with origin `O` and
/// unit `I`, using `B ∉ ℓ`: the parallel to `IB` through `A` meets `OB` in
/// `D`, and the parallel to `BC` through `D` meets `ℓ` in `A · C`.
pub fn mul_construct(
    o: &AffinePoint,
    i: &AffinePoint,
    a: &AffinePoint,
    c: &AffinePoint,
    b: &AffinePoint,
) -> Result<(AffinePoint, Trace), GeomError> {
    if i == o {
        return Err(GeomError::UnitAtOrigin);
    }
    let l = base_line(o, &[i, a, c], b)?.expect("I differs from O");
    let mut tr = Trace::default();
    tr.line("l", &l);
    if a == o || c == o {
        tr.point("A*C", o);
        return Ok((o.clone(), tr));
    }
    let ib = line_through(i, b)?;
    tr.line("IB", &ib);
    let p1 = parallel_through(&ib, a);
    tr.line("parallel to IB through A", &p1);
    let ob = line_through(o, b)?;
    tr.line("OB", &ob);
    let d = intersect(&p1, &ob)?;
    tr.point("D", &d);
    let bc = line_through(b, c)?;
    tr.line("BC", &bc);
    let p3 = parallel_through(&bc, &d);
    tr.line("parallel to BC through D", &p3);
    let s = intersect(&p3, &l)?;
    tr.point("A*C", &s);
    Ok((s, tr))
}

/// Affine coordinate of `p` on the line through `o` and `i`: the `t` with
/// `p = o + t(i - o)`. Used as the coordinate oracle.
pub fn coordinate(o: &AffinePoint, i: &AffinePoint, p: &AffinePoint) -> Result<Q, GeomError> {
    let (dx, dy) = i.minus(o);
    let (px, py) = p.minus(o);
    if dx.is_zero() && dy.is_zero() {
        return Err(GeomError::UnitAtOrigin);
    }
    if !(&dx * &py - &dy * &px).is_zero() {
        return Err(GeomError::NotCollinear);
    }
    Ok(if !dx.is_zero() { px / dx } else { py / dy })
}

/// `o + t(i - o)`.
pub fn point_at(o: &AffinePoint, i: &AffinePoint, t: &Q) -> AffinePoint {
    let (dx, dy) = i.minus(o);
    AffinePoint::new(&o.x + t * dx, &o.y + t * dy)
}

/// `u` lies between `v` and `w` (inclusive) on a common line.
pub fn between(v: &AffinePoint, u: &AffinePoint, w: &AffinePoint) -> bool {
    let (ax, ay) = u.minus(v);
    let (bx, by) = w.minus(u);
    (&ax * &by - &ay * &bx).is_zero() && !(&ax * &bx + &ay * &by).is_negative()
}

/// `P ≥ 0` on the line with origin `O` and unit `I`: `O` is not strictly
/// between `P` and `I`.
pub fn nonnegative(o: &AffinePoint, i: &AffinePoint, p: &AffinePoint) -> bool {
    p == o || !between(p, o, i)
}

/// A random configuration: origin, unit, two points on the line, and an
/// auxiliary point off it. Coordinates are small rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    pub o: AffinePoint,
    pub i: AffinePoint,
    pub a: AffinePoint,
    pub c: AffinePoint,
    pub b: AffinePoint,
}

fn small_q(rng: &mut impl Rng) -> Q {
    qf(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

pub fn random_config(rng: &mut impl Rng) -> Config {
    let o = AffinePoint::new(small_q(rng), small_q(rng));
    let (dx, dy) = loop {
        let d = (small_q(rng), small_q(rng));
        if !(d.0.is_zero() && d.1.is_zero()) {
            break d;
        }
    };
    let i = AffinePoint::new(&o.x + &dx, &o.y + &dy);
    let on = |t: Q| point_at(&o, &i, &t);
    let a = on(small_q(rng));
    let c = on(small_q(rng));
    let b = loop {
        let p = AffinePoint::new(small_q(rng), small_q(rng));
        if coordinate(&o, &i, &p).is_err() {
            break p;
        }
    };
    Config { o, i, a, c, b }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> AffinePoint {
        AffinePoint::int(x, y)
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&p(2, 3)).to_string(), "[2:3:1]");
        assert_eq!(tau(&p(0, 0)).to_string(), "[0:0:1]");
        let inf = HomogeneousPoint::new(q(1), q(1), q(0)).unwrap();
        assert_eq!(tau_inv(&inf), Err(GeomError::AtInfinity));
        assert_eq!(tau_inv(&tau(&p(-4, 7))).unwrap(), p(-4, 7));
    }

    #[test]
    fn line_examples() {
        let l = line_through(&p(0, 0), &p(1, 1)).unwrap();
        assert_eq!(l, AffineLine::new(q(1), q(-1), q(0)).unwrap());
        let x0 = AffineLine::new(q(1), q(0), q(0)).unwrap();
        let y0 = AffineLine::new(q(0), q(1), q(0)).unwrap();
        assert_eq!(intersect(&x0, &y0).unwrap(), p(0, 0));
        assert_eq!(
            parallel_through(&l, &p(1, 0)),
            AffineLine::new(q(1), q(-1), q(1)).unwrap()
        );
        assert_eq!(
            intersect(&l, &parallel_through(&l, &p(1, 0))),
            Err(GeomError::Parallel)
        );
        assert_eq!(line_through(&p(1, 1), &p(1, 1)), Err(GeomError::Coincident));
    }

    #[test]
    fn construction_examples() {
        let o = p(0, 0);
        assert_eq!(
            add_construct(&o, &p(2, 0), &p(3, 0), &p(0, 1)).unwrap().0,
            p(5, 0)
        );
        assert_eq!(
            add_construct(&o, &p(1, 1), &p(-2, -2), &p(1, 0)).unwrap().0,
            p(-1, -1)
        );
        assert_eq!(
            mul_construct(&o, &p(1, 0), &p(2, 0), &p(3, 0), &p(0, 1))
                .unwrap()
                .0,
            p(6, 0)
        );
        assert_eq!(
            add_construct(&o, &p(2, 0), &p(3, 0), &p(7, 0)),
            Err(GeomError::AuxOnLine)
        );
        assert_eq!(
            add_construct(&o, &p(2, 0), &p(3, 1), &p(0, 1)),
            Err(GeomError::NotCollinear)
        );
        assert_eq!(
            mul_construct(&o, &o, &p(2, 0), &p(3, 0), &p(0, 1)),
            Err(GeomError::UnitAtOrigin)
        );
    }

    #[test]
    fn parse_points() {
        assert_eq!(
            "1/2,-3".parse::<AffinePoint>().unwrap(),
            AffinePoint::new(qf(1, 2), q(-3))
        );
        assert!("1/2".parse::<AffinePoint>().is_err());
    }
}
