//! Disjoint polygonal arcs between point pairs in `ℚ²`, and "same size"
//! for finite point sets through components of an arc system.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::incidence::AffinePoint;
use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArcError {
    #[error("an arc needs at least two vertices")]
    TooShort,
    #[error("consecutive vertices coincide at {0}")]
    Repeated(String),
    #[error("arc is not simple")]
    NotSimple,
    #[error("arcs {0} and {1} meet")]
    Overlap(usize, usize),
    #[error("endpoint {0} is used twice")]
    DuplicateEndpoint(String),
    #[error("point sets share {0}")]
    NotDisjoint(String),
    #[error("no route found for pair {0}")]
    NoRoute(usize),
}

fn orient(a: &AffinePoint, b: &AffinePoint, c: &AffinePoint) -> i8 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// `p` on the closed segment `[a, b]`.
pub fn on_segment(p: &AffinePoint, a: &AffinePoint, b: &AffinePoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_meet(a: &AffinePoint, b: &AffinePoint, c: &AffinePoint, d: &AffinePoint) -> bool {
    let (o1, o2, o3, o4) = (
        orient(a, b, c),
        orient(a, b, d),
        orient(c, d, a),
        orient(c, d, b),
    );
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Crossing point of two segments that meet in exactly one point, if any.
fn crossing(
    a: &AffinePoint,
    b: &AffinePoint,
    c: &AffinePoint,
    d: &AffinePoint,
) -> Option<AffinePoint> {
    let (rx, ry) = (&b.x - &a.x, &b.y - &a.y);
    let (sx, sy) = (&d.x - &c.x, &d.y - &c.y);
    let den = &rx * &sy - &ry * &sx;
    if den.is_zero() {
        return None;
    }
    let t = ((&c.x - &a.x) * &sy - (&c.y - &a.y) * &sx) / &den;
    Some(AffinePoint::new(&a.x + &t * &rx, &a.y + &t * &ry))
}

/// A polygonal arc: the union of the segments between consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PLArc {
    vertices: Vec<AffinePoint>,
}

impl PLArc {
    pub fn new(vertices: Vec<AffinePoint>) -> Result<PLArc, ArcError> {
        if vertices.len() < 2 {
            return Err(ArcError::TooShort);
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ArcError::Repeated(w[0].to_string()));
        }
        let arc = PLArc { vertices };
        if !arc.is_simple() {
            return Err(ArcError::NotSimple);
        }
        Ok(arc)
    }

    pub fn vertices(&self) -> &[AffinePoint] {
        &self.vertices
    }

    pub fn start(&self) -> &AffinePoint {
        &self.vertices[0]
    }

    pub fn end(&self) -> &AffinePoint {
        &self.vertices[self.vertices.len() - 1]
    }

    fn segments(&self) -> impl Iterator<Item = (&AffinePoint, &AffinePoint)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Adjacent segments share only their common vertex; others are disjoint.
    fn is_simple(&self) -> bool {
        let s: Vec<_> = self.segments().collect();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if j == i + 1 {
                    let (a, b) = s[i];
                    let (_, d) = s[j];
                    // Folding back onto the previous segment.
                    if on_segment(d, a, b) || on_segment(a, b, d) {
                        return false;
                    }
                } else if segments_meet(s[i].0, s[i].1, s[j].0, s[j].1) {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains(&self, p: &AffinePoint) -> bool {
        self.segments().any(|(a, b)| on_segment(p, a, b))
    }

    pub fn meets(&self, o: &PLArc) -> bool {
        self.segments()
            .any(|(a, b)| o.segments().any(|(c, d)| segments_meet(a, b, c, d)))
    }
}

/// Pairwise disjoint arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcSystem {
    arcs: Vec<PLArc>,
}

impl ArcSystem {
    pub fn new(arcs: Vec<PLArc>) -> Result<ArcSystem, ArcError> {
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                if arcs[i].meets(&arcs[j]) {
                    return Err(ArcError::Overlap(i, j));
                }
            }
        }
        Ok(ArcSystem { arcs })
    }

    pub fn arcs(&self) -> &[PLArc] {
        &self.arcs
    }
}

fn check_distinct(pairs: &[(AffinePoint, AffinePoint)]) -> Result<Vec<AffinePoint>, ArcError> {
    let mut seen: Vec<AffinePoint> = Vec::new();
    for p in pairs.iter().flat_map(|(a, b)| [a, b]) {
        if seen.contains(p) {
            return Err(ArcError::DuplicateEndpoint(p.to_string()));
        }
        seen.push(p.clone());
    }
    Ok(seen)
}

/// Smallest positive gap between distinct values, or one.
fn min_gap(mut v: Vec<Q>) -> Q {
    v.sort();
    v.dedup();
    v.windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(|| q(1))
}

/// Private channel of each point: just right of its column, closer for
/// lower points, so the hop from a point to its channel misses the rest.
fn channels(pts: &[AffinePoint]) -> (Vec<Q>, Q) {
    let gx = min_gap(pts.iter().map(|p| p.x.clone()).collect());
    let gy = min_gap(pts.iter().map(|p| p.y.clone()).collect());
    let n = q(2 * (pts.len() as i64 + 1));
    let c = pts
        .iter()
        .map(|p| {
            let rank = pts.iter().filter(|r| r.x == p.x && r.y < p.y).count() as i64;
            &p.x + &gx * q(rank + 1) / &n
        })
        .collect();
    (c, gy / q(2))
}

/// Whether the pairs, read as intervals between their channels, are
/// nested or disjoint.
fn non_crossing(spans: &[(Q, Q)]) -> bool {
    spans.iter().all(|(a1, b1)| {
        spans
            .iter()
            .all(|(a2, b2)| !(a1 < a2 && a2 < b1 && b1 < b2))
    })
}

/// Down from each point to a private track below everything, across, and
/// back up. `None` when the pairs cross in channel order.
fn route_tracks(pairs: &[(AffinePoint, AffinePoint)], pts: &[AffinePoint]) -> Option<Vec<PLArc>> {
    let (chan, drop) = channels(pts);
    let ch = |p: &AffinePoint| chan[pts.iter().position(|r| r == p).expect("endpoint")].clone();
    let spans: Vec<(Q, Q)> = pairs
        .iter()
        .map(|(p, r)| {
            let (a, b) = (ch(p), ch(r));
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    if !non_crossing(&spans) {
        return None;
    }
    // Wider spans get deeper tracks, so outer pairs pass under inner ones.
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&i, &j| {
        (&spans[i].1 - &spans[i].0)
            .cmp(&(&spans[j].1 - &spans[j].0))
            .then(i.cmp(&j))
    });
    let floor = pts
        .iter()
        .map(|p| p.y.clone())
        .min()
        .unwrap_or_else(Q::zero);
    let mut depth = vec![Q::zero(); pairs.len()];
    for (level, &i) in order.iter().enumerate() {
        depth[i] = &floor - &drop - q(level as i64 + 1);
    }
    let arcs = pairs
        .iter()
        .zip(&depth)
        .map(|((p, r), t)| {
            let (cp, cr) = (ch(p), ch(r));
            PLArc::new(vec![
                p.clone(),
                AffinePoint::new(cp.clone(), &p.y - &drop),
                AffinePoint::new(cp, t.clone()),
                AffinePoint::new(cr.clone(), t.clone()),
                AffinePoint::new(cr, &r.y - &drop),
                r.clone(),
            ])
            .expect("track arcs are simple")
        })
        .collect();
    Some(arcs)
}

/// Free of every obstacle segment.
fn clear(a: &AffinePoint, b: &AffinePoint, obstacles: &[(AffinePoint, AffinePoint)]) -> bool {
    obstacles.iter().all(|(c, d)| !segments_meet(a, b, c, d))
}

/// A path from `s` to `t` avoiding the obstacles, through points placed
/// close to obstacle vertices, made simple by cutting loops at crossings.
fn visibility_path(
    s: &AffinePoint,
    t: &AffinePoint,
    obstacles: &[(AffinePoint, AffinePoint)],
) -> Option<Vec<AffinePoint>> {
    let mut corners: Vec<AffinePoint> = obstacles
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    corners.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    corners.dedup();
    let dirs = [
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
        (0, -1),
        (1, -1),
    ];
    for shrink in 1..=8 {
        let eps = Q::new(1.into(), num_bigint::BigInt::from(4).pow(shrink));
        let mut nodes = vec![s.clone(), t.clone()];
        for c in &corners {
            for (dx, dy) in dirs {
                let p = AffinePoint::new(&c.x + &eps * q(dx), &c.y + &eps * q(dy));
                if obstacles.iter().all(|(a, b)| !on_segment(&p, a, b)) && !nodes.contains(&p) {
                    nodes.push(p);
                }
            }
        }
        let n = nodes.len();
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([0]);
        prev[0] = 0;
        while let Some(u) = queue.pop_front() {
            if u == 1 {
                break;
            }
            for v in 0..n {
                if prev[v] == usize::MAX && clear(&nodes[u], &nodes[v], obstacles) {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[1] == usize::MAX {
            continue;
        }
        let mut path = vec![nodes[1].clone()];
        let mut cur = 1;
        while cur != 0 {
            cur = prev[cur];
            path.push(nodes[cur].clone());
        }
        path.reverse();
        return Some(untangle(path));
    }
    None
}

/// Removes self-crossings by jumping from the first crossing straight on.
fn untangle(mut path: Vec<AffinePoint>) -> Vec<AffinePoint> {
    'again: loop {
        path.dedup();
        let m = path.len();
        for i in 0..m.saturating_sub(1) {
            for j in i + 1..m - 1 {
                let (a, b, c, d) = (&path[i], &path[i + 1], &path[j], &path[j + 1]);
                if j == i + 1 {
                    // Folding back: go straight from a to d.
                    if on_segment(d, a, b) || on_segment(a, c, d) {
                        path.remove(i + 1);
                        continue 'again;
                    }
                    continue;
                }
                if !segments_meet(a, b, c, d) {
                    continue;
                }
                // Keep path[..=i], then a point shared by both segments, then path[j+1..].
                let x = crossing(a, b, c, d)
                    .or_else(|| [c, d].into_iter().find(|p| on_segment(p, a, b)).cloned())
                    .or_else(|| [a, b].into_iter().find(|p| on_segment(p, c, d)).cloned())
                    .expect("meeting segments share a point");
                let mut next: Vec<AffinePoint> = path[..=i].to_vec();
                next.push(x);
                next.extend_from_slice(&path[j + 1..]);
                path = next;
                continue 'again;
            }
        }
        return path;
    }
}

/// Pairwise disjoint arcs from each `pᵢ` to `qᵢ`.
pub fn route_disjoint_arcs(pairs: &[(AffinePoint, AffinePoint)]) -> Result<ArcSystem, ArcError> {
    let pts = check_distinct(pairs)?;
    if let Some(arcs) = route_tracks(pairs, &pts) {
        return ArcSystem::new(arcs);
    }
    // Crossing pairs: route one at a time around what is already there.
    let mut arcs: Vec<PLArc> = Vec::new();
    for (i, (p, r)) in pairs.iter().enumerate() {
        let mut obstacles: Vec<(AffinePoint, AffinePoint)> = arcs
            .iter()
            .flat_map(|a| a.segments().map(|(u, v)| (u.clone(), v.clone())))
            .collect();
        obstacles.extend(
            pts.iter()
                .filter(|&x| x != p && x != r)
                .map(|x| (x.clone(), x.clone())),
        );
        let path = visibility_path(p, r, &obstacles).ok_or(ArcError::NoRoute(i))?;
        arcs.push(PLArc::new(path).map_err(|_| ArcError::NoRoute(i))?);
    }
    ArcSystem::new(arcs)
}

/// Connected components of the union of `arcs`, as lists of arc indices.
pub fn components(arcs: &[PLArc]) -> Vec<Vec<usize>> {
    let n = arcs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if arcs[i].meets(&arcs[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(k) => out[k].push(i),
            None => {
                root_of[r] = Some(out.len());
                out.push(vec![i]);
            }
        }
    }
    out
}

/// Every component meets `pts` in exactly one point and every point lies
/// on exactly one component.
fn bijective(arcs: &[PLArc], comps: &[Vec<usize>], pts: &[AffinePoint]) -> bool {
    let on = |c: &Vec<usize>, p: &AffinePoint| c.iter().any(|&i| arcs[i].contains(p));
    comps
        .iter()
        .all(|c| pts.iter().filter(|p| on(c, p)).count() == 1)
        && pts
            .iter()
            .all(|p| comps.iter().filter(|c| on(c, p)).count() == 1)
}

/// Both matching clauses: components of `arcs` biject with `a` and with `b`.
pub fn matching_conditions(arcs: &[PLArc], a: &[AffinePoint], b: &[AffinePoint]) -> bool {
    let comps = components(arcs);
    bijective(arcs, &comps, a) && bijective(arcs, &comps, b)
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualSizeReport {
    pub equal: bool,
    pub witness: Option<ArcSystem>,
}

/// `E(A, B)` for disjoint finite sets: a witness arc system when the sizes
/// agree, checked against the matching clauses.
pub fn equal_size_e(a: &[AffinePoint], b: &[AffinePoint]) -> Result<EqualSizeReport, ArcError> {
    if let Some(p) = a.iter().find(|p| b.contains(p)) {
        return Err(ArcError::NotDisjoint(p.to_string()));
    }
    if a.len() != b.len() {
        return Ok(EqualSizeReport {
            equal: false,
            witness: None,
        });
    }
    let pts: Vec<AffinePoint> = a.iter().chain(b).cloned().collect();
    // Match across the two sets without crossings, scanning channels left
    // to right with a stack.
    let (chan, _) = channels(&pts);
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| chan[i].cmp(&chan[j]));
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for i in idx {
        let in_a = i < a.len();
        match stack.last() {
            Some(&j) if (j < a.len()) != in_a => {
                stack.pop();
                let (x, y) = if in_a { (i, j) } else { (j, i) };
                pairs.push((pts[x].clone(), pts[y].clone()));
            }
            _ => stack.push(i),
        }
    }
    let sys = route_disjoint_arcs(&pairs)?;
    let equal = matching_conditions(sys.arcs(), a, b);
    Ok(EqualSizeReport {
        equal,
        witness: Some(sys),
    })
}

/// Random arcs with vertices on a small grid, simple but not necessarily
/// disjoint from each other, for fuzzing the matching clauses.
pub fn random_arcs(rng: &mut impl rand::Rng, count: usize, pool: &[AffinePoint]) -> Vec<PLArc> {
    let mut out = Vec::new();
    while out.len() < count {
        let len = rng.gen_range(2..=4);
        let vs: Vec<AffinePoint> = (0..len)
            .map(|_| {
                if !pool.is_empty() && rng.gen_bool(0.5) {
                    pool[rng.gen_range(0..pool.len())].clone()
                } else {
                    AffinePoint::int(rng.gen_range(0..6), rng.gen_range(0..6))
                }
            })
            .collect();
        if let Ok(arc) = PLArc::new(vs) {
            out.push(arc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> AffinePoint {
        AffinePoint::int(x, y)
    }

    #[test]
    fn parallel_pairs() {
        let sys = route_disjoint_arcs(&[(pt(0, 0), pt(10, 0)), (pt(0, 2), pt(10, 2))]).unwrap();
        assert_eq!(sys.arcs().len(), 2);
        assert_eq!(sys.arcs()[1].start(), &pt(0, 2));
        assert_eq!(sys.arcs()[1].end(), &pt(10, 2));
    }

    #[test]
    fn crossing_configuration() {
        let sys = route_disjoint_arcs(&[(pt(0, 0), pt(1, 1)), (pt(0, 1), pt(1, 0))]).unwrap();
        assert!(!sys.arcs()[0].meets(&sys.arcs()[1]));
    }

    #[test]
    fn interleaved_pairs_use_the_general_router() {
        let pairs = [(pt(0, 0), pt(2, 0)), (pt(1, 0), pt(3, 0))];
        assert!(route_tracks(&pairs, &[pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)]).is_none());
        let sys = route_disjoint_arcs(&pairs).unwrap();
        assert_eq!(sys.arcs()[1].end(), &pt(3, 0));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            route_disjoint_arcs(&[(pt(0, 0), pt(0, 0))]),
            Err(ArcError::DuplicateEndpoint(_))
        ));
        assert!(PLArc::new(vec![pt(0, 0), pt(2, 0), pt(1, 0)]).is_err());
        assert!(PLArc::new(vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(1, -1)]).is_err());
    }

    #[test]
    fn small_cases() {
        assert!(equal_size_e(&[], &[]).unwrap().equal);
        assert!(
            !equal_size_e(&[pt(0, 0)], &[pt(1, 0), pt(2, 0)])
                .unwrap()
                .equal
        );
        assert!(equal_size_e(&[pt(0, 0)], &[pt(0, 0)]).is_err());
        let arc = PLArc::new(vec![pt(0, 0), pt(1, 0), pt(2, 0)]).unwrap();
        assert!(!matching_conditions(
            &[arc],
            &[pt(0, 0), pt(1, 0)],
            &[pt(2, 0)]
        ));
    }
}
