//! The lattice of finite anti-chains of `T × T` for a finite chain
//! `T = {1..m}`, with the order-theoretic lines, projections and coordinate
//! systems used to interpret "equal size".

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AntichainError {
    #[error("empty anti-chain")]
    Empty,
    #[error("points {0} and {1} are comparable")]
    Comparable(GridPoint, GridPoint),
    #[error("point {0} lies outside the {1}x{1} grid")]
    OffGrid(GridPoint, u32),
    #[error("{0} and {1} do not define a line segment")]
    NotSegment(GridPoint, GridPoint),
    #[error("{0}, {1}, {2} do not define a coordinate system")]
    NotCoordinateSystem(GridPoint, GridPoint, GridPoint),
    #[error("coordinate sets of sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("grid size must be between 1 and 16, got {0}")]
    GridSize(u32),
}

/// A point of `T × T` under the componentwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct GridPoint {
    pub x: u32,
    pub y: u32,
}

impl From<(u32, u32)> for GridPoint {
    fn from((x, y): (u32, u32)) -> Self {
        GridPoint { x, y }
    }
}

impl From<GridPoint> for (u32, u32) {
    fn from(p: GridPoint) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl GridPoint {
    pub fn new(x: u32, y: u32) -> Self {
        GridPoint { x, y }
    }

    pub fn leq(&self, o: &GridPoint) -> bool {
        self.x <= o.x && self.y <= o.y
    }

    pub fn comparable(&self, o: &GridPoint) -> bool {
        self.leq(o) || o.leq(self)
    }
}

/// A nonempty finite anti-chain, sorted by first coordinate (so the second
/// coordinates descend).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<GridPoint>", into = "Vec<GridPoint>")]
pub struct Antichain {
    points: Vec<GridPoint>,
}

impl TryFrom<Vec<GridPoint>> for Antichain {
    type Error = AntichainError;

    fn try_from(points: Vec<GridPoint>) -> Result<Self, Self::Error> {
        Antichain::new(points)
    }
}

impl From<Antichain> for Vec<GridPoint> {
    fn from(a: Antichain) -> Self {
        a.points
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Antichain {
    pub fn new(mut points: Vec<GridPoint>) -> Result<Self, AntichainError> {
        points.sort();
        points.dedup();
        if points.is_empty() {
            return Err(AntichainError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if let Some(q) = points[i + 1..].iter().find(|q| p.comparable(q)) {
                return Err(AntichainError::Comparable(*p, *q));
            }
        }
        Ok(Antichain { points })
    }

    pub fn singleton(p: GridPoint) -> Self {
        Antichain { points: vec![p] }
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn check_grid(&self, m: u32) -> Result<(), AntichainError> {
        match self.points.iter().find(|p| !in_grid(p, m)) {
            Some(p) => Err(AntichainError::OffGrid(*p, m)),
            None => Ok(()),
        }
    }

    /// The maximal elements of the union.
    pub fn join(&self, o: &Antichain) -> Antichain {
        let all: Vec<GridPoint> = self.points.iter().chain(&o.points).copied().collect();
        let mut max: Vec<GridPoint> = all
            .iter()
            .filter(|p| !all.iter().any(|q| q != *p && p.leq(q)))
            .copied()
            .collect();
        max.sort();
        max.dedup();
        Antichain { points: max }
    }
}

fn in_grid(p: &GridPoint, m: u32) -> bool {
    (1..=m).contains(&p.x) && (1..=m).contains(&p.y)
}

/// `A ≤ B` iff every point of `A` lies below some point of `B`.
pub fn antichain_leq(a: &Antichain, b: &Antichain) -> bool {
    a.points.iter().all(|p| b.points.iter().any(|q| p.leq(q)))
}

fn check_m(m: u32) -> Result<(), AntichainError> {
    if (1..=16).contains(&m) {
        Ok(())
    } else {
        Err(AntichainError::GridSize(m))
    }
}

/// Every nonempty anti-chain of the `m × m` grid with at most `cap` points.
pub fn all_antichains(m: u32, cap: usize) -> Result<Vec<Antichain>, AntichainError> {
    check_m(m)?;
    // Anti-chains are strictly increasing x with strictly decreasing y.
    fn grow(m: u32, cap: usize, cur: &mut Vec<GridPoint>, out: &mut Vec<Antichain>) {
        if !cur.is_empty() {
            out.push(Antichain {
                points: cur.clone(),
            });
        }
        if cur.len() == cap {
            return;
        }
        let (x0, y0) = cur
            .last()
            .map_or((1, m), |p| (p.x + 1, p.y.saturating_sub(1)));
        for x in x0..=m {
            for y in 1..=y0 {
                cur.push(GridPoint::new(x, y));
                grow(m, cap, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(m, cap, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The elements that are not the join of two strictly smaller elements,
/// found by exhaustive search over all anti-chains of the grid.
pub fn join_irreducibles(m: u32) -> Result<Vec<Antichain>, AntichainError> {
    let all = all_antichains(m, m as usize)?;
    let below = |x: &Antichain| -> Vec<&Antichain> {
        all.iter()
            .filter(|y| *y != x && antichain_leq(y, x))
            .collect()
    };
    Ok(all
        .iter()
        .filter(|x| {
            let lower = below(x);
            !lower.iter().any(|y| lower.iter().any(|z| &y.join(z) == *x))
        })
        .cloned()
        .collect())
}

/// `[p, q]` inside the grid.
pub fn interval(p: &GridPoint, q: &GridPoint) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for x in p.x..=q.x {
        for y in p.y..=q.y {
            out.push(GridPoint::new(x, y));
        }
    }
    out
}

/// `p ≤ q`, `p ≠ q`, and the two share a coordinate.
pub fn defines_line_segment(p: &GridPoint, q: &GridPoint) -> bool {
    p.leq(q) && p != q && (p.x == q.x || p.y == q.y)
}

/// The order-theoretic reading: `p ≠ q` and `≤` is a total order on `[p, q]`
/// with least element `p` and largest `q`.
pub fn defines_line_segment_by_order(p: &GridPoint, q: &GridPoint, m: u32) -> bool {
    if p == q {
        return false;
    }
    let iv: Vec<GridPoint> = (1..=m)
        .flat_map(|x| (1..=m).map(move |y| GridPoint::new(x, y)))
        .filter(|z| p.leq(z) && z.leq(q))
        .collect();
    iv.contains(p)
        && iv.contains(q)
        && iv.iter().all(|a| a.leq(q) && p.leq(a))
        && iv.iter().all(|a| iv.iter().all(|b| a.comparable(b)))
}

/// `ℓ(p, q)`: the row or column of the grid through `p` and `q`.
pub fn line_of(p: &GridPoint, q: &GridPoint, m: u32) -> Result<Vec<GridPoint>, AntichainError> {
    if !defines_line_segment(p, q) {
        return Err(AntichainError::NotSegment(*p, *q));
    }
    Ok(if p.x == q.x {
        (1..=m).map(|y| GridPoint::new(p.x, y)).collect()
    } else {
        (1..=m).map(|x| GridPoint::new(x, p.y)).collect()
    })
}

/// Membership in `ℓ(p, q)` read off the defining clause: `[p, r] ∪ [r, p] ∪
/// [p, q]` is a line segment containing `r`. Without the last condition a
/// point incomparable to `p` would qualify, both intervals being empty.
pub fn on_line_by_order(p: &GridPoint, q: &GridPoint, r: &GridPoint) -> bool {
    if !r.comparable(p) {
        return false;
    }
    let mut pts: Vec<GridPoint> = interval(p, r)
        .into_iter()
        .chain(interval(r, p))
        .chain(interval(p, q))
        .collect();
    pts.sort();
    pts.dedup();
    let lo = pts.iter().find(|a| pts.iter().all(|b| a.leq(b)));
    let hi = pts.iter().find(|a| pts.iter().all(|b| b.leq(a)));
    match (lo, hi) {
        (Some(lo), Some(hi)) => {
            defines_line_segment(lo, hi) && {
                let mut seg = interval(lo, hi);
                seg.sort();
                seg == pts
            }
        }
        _ => false,
    }
}

/// The projection onto `ℓ(p, q)`: identity on the line, otherwise the
/// unique point of the line sharing a segment with `r`.
pub fn project_line(
    p: &GridPoint,
    q: &GridPoint,
    r: &GridPoint,
) -> Result<GridPoint, AntichainError> {
    if !defines_line_segment(p, q) {
        return Err(AntichainError::NotSegment(*p, *q));
    }
    Ok(if p.x == q.x {
        GridPoint::new(p.x, r.y)
    } else {
        GridPoint::new(r.x, p.y)
    })
}

/// `o, p` and `o, q` define line segments, `q ∉ ℓ(o, p)` and `p ∉ ℓ(o, q)`.
pub fn is_coordinate_system(o: &GridPoint, p: &GridPoint, q: &GridPoint) -> bool {
    defines_line_segment(o, p)
        && defines_line_segment(o, q)
        && !on_line(o, p, q)
        && !on_line(o, q, p)
}

fn on_line(p: &GridPoint, q: &GridPoint, r: &GridPoint) -> bool {
    if p.x == q.x {
        r.x == p.x
    } else {
        r.y == p.y
    }
}

/// The image of an anti-chain on `ℓ(p, q)`, as a set of points.
pub fn project_set(
    p: &GridPoint,
    q: &GridPoint,
    a: &Antichain,
) -> Result<Vec<GridPoint>, AntichainError> {
    let mut out = a
        .points
        .iter()
        .map(|r| project_line(p, q, r))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// `G, H_A, H_B` with `π_{o,p}(H_A) = π_{o,p}(A)`, `π_{o,p}(H_B) =
/// π_{o,p}(B)`, `π_{o,q}(H_A) = π_{o,q}(G)`, `π_{o,q}(H_B) = π_{o,q}(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeWitness {
    pub g: Antichain,
    pub h_a: Antichain,
    pub h_b: Antichain,
}

/// A coordinate system on the `m × m` grid and the anti-chains the witness
/// search ranges over.
#[derive(Debug, Clone)]
pub struct CoordinateSystem {
    pub m: u32,
    pub o: GridPoint,
    pub p: GridPoint,
    pub q: GridPoint,
    pool: Vec<Antichain>,
    /// Projection masks on the two lines for each pool member.
    masks: Vec<(u32, u32)>,
    realized: FxHashSet<(u32, u32)>,
}

impl CoordinateSystem {
    /// `cap` bounds the number of points of `G`, `H_A`, `H_B`.
    pub fn new(
        m: u32,
        o: GridPoint,
        p: GridPoint,
        q: GridPoint,
        cap: usize,
    ) -> Result<Self, AntichainError> {
        check_m(m)?;
        for r in [o, p, q] {
            if !in_grid(&r, m) {
                return Err(AntichainError::OffGrid(r, m));
            }
        }
        if !is_coordinate_system(&o, &p, &q) {
            return Err(AntichainError::NotCoordinateSystem(o, p, q));
        }
        let pool = all_antichains(m, cap)?;
        let mut cs = CoordinateSystem {
            m,
            o,
            p,
            q,
            pool,
            masks: Vec::new(),
            realized: FxHashSet::default(),
        };
        cs.masks = cs
            .pool
            .iter()
            .map(|a| (cs.mask(&cs.p, a), cs.mask(&cs.q, a)))
            .collect();
        cs.realized = cs.masks.iter().copied().collect();
        Ok(cs)
    }

    /// Every coordinate system of the `m × m` grid.
    pub fn all(m: u32) -> Vec<(GridPoint, GridPoint, GridPoint)> {
        let pts: Vec<GridPoint> = (1..=m)
            .flat_map(|x| (1..=m).map(move |y| GridPoint::new(x, y)))
            .collect();
        let mut out = Vec::new();
        for o in &pts {
            for p in &pts {
                for q in &pts {
                    if is_coordinate_system(o, p, q) {
                        out.push((*o, *p, *q));
                    }
                }
            }
        }
        out
    }

    fn mask(&self, toward: &GridPoint, a: &Antichain) -> u32 {
        let vertical = self.o.x == toward.x;
        a.points
            .iter()
            .fold(0, |acc, r| acc | 1 << (if vertical { r.y } else { r.x }))
    }

    fn holds(&self, a: &Antichain, b: &Antichain, w: &SizeWitness) -> bool {
        let (o, p, q) = (&self.o, &self.p, &self.q);
        let pp = |x: &Antichain| project_set(o, p, x).expect("segment");
        let pq = |x: &Antichain| project_set(o, q, x).expect("segment");
        pp(&w.h_a) == pp(a)
            && pp(&w.h_b) == pp(b)
            && pq(&w.h_a) == pq(&w.g)
            && pq(&w.h_b) == pq(&w.g)
    }

    /// Ascending first-line positions paired with descending second-line
    /// positions `1..=k`.
    fn constructive(&self, a: &Antichain, b: &Antichain) -> Option<SizeWitness> {
        let (ka, kb) = (
            self.mask(&self.p, a).count_ones(),
            self.mask(&self.p, b).count_ones(),
        );
        if ka != kb || ka > self.m {
            return None;
        }
        let build = |mask: u32| -> Option<Antichain> {
            let pos: Vec<u32> = (1..=self.m).filter(|i| mask >> i & 1 == 1).collect();
            let k = pos.len() as u32;
            let pts = pos
                .iter()
                .enumerate()
                .map(|(i, &s)| self.place(s, k - i as u32))
                .collect();
            Antichain::new(pts).ok()
        };
        let h_a = build(self.mask(&self.p, a))?;
        let h_b = build(self.mask(&self.p, b))?;
        let w = SizeWitness {
            g: h_a.clone(),
            h_a,
            h_b,
        };
        self.holds(a, b, &w).then_some(w)
    }

    /// The grid point with position `s` along `ℓ(o, p)` and `t` along
    /// `ℓ(o, q)`.
    fn place(&self, s: u32, t: u32) -> GridPoint {
        if self.o.x == self.p.x {
            GridPoint::new(t, s)
        } else {
            GridPoint::new(s, t)
        }
    }

    /// Exhaustive search over the pool, returning the first witness.
    pub fn search(&self, a: &Antichain, b: &Antichain) -> Option<SizeWitness> {
        let (ma, mb) = (self.mask(&self.p, a), self.mask(&self.p, b));
        let find = |pm: u32, qm: u32| {
            self.masks
                .iter()
                .position(|&m| m == (pm, qm))
                .map(|i| self.pool[i].clone())
        };
        for (gi, &(_, gq)) in self.masks.iter().enumerate() {
            if self.realized.contains(&(ma, gq)) && self.realized.contains(&(mb, gq)) {
                let w = SizeWitness {
                    g: self.pool[gi].clone(),
                    h_a: find(ma, gq)?,
                    h_b: find(mb, gq)?,
                };
                debug_assert!(self.holds(a, b, &w));
                return Some(w);
            }
        }
        None
    }

    /// The constructive witness if it applies, the exhaustive search
    /// otherwise.
    pub fn equal_size(
        &self,
        a: &Antichain,
        b: &Antichain,
    ) -> Result<Option<SizeWitness>, AntichainError> {
        a.check_grid(self.m)?;
        b.check_grid(self.m)?;
        Ok(self.constructive(a, b).or_else(|| self.search(a, b)))
    }
}

/// Whether `G, H_A, H_B` exist on the `m × m` grid, with at most `cap`
/// points each.
pub fn equal_size_interpreted(
    m: u32,
    a: &Antichain,
    b: &Antichain,
    (o, p, q): (GridPoint, GridPoint, GridPoint),
    cap: usize,
) -> Result<bool, AntichainError> {
    Ok(CoordinateSystem::new(m, o, p, q, cap)?
        .equal_size(a, b)?
        .is_some())
}

/// `(π₁(A), π₂(A))`: the coordinate sets, of equal size.
pub fn coordinate_sets(a: &Antichain) -> (Vec<u32>, Vec<u32>) {
    let xs = a.points.iter().map(|p| p.x).collect();
    let mut ys: Vec<u32> = a.points.iter().map(|p| p.y).collect();
    ys.sort();
    (xs, ys)
}

/// The anti-chain with the given coordinate sets: x ascending paired with y
/// descending.
pub fn from_coordinate_sets(xs: &[u32], ys: &[u32]) -> Result<Antichain, AntichainError> {
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort();
    ys.sort_by(|a, b| b.cmp(a));
    if xs.len() != ys.len() {
        return Err(AntichainError::SizeMismatch(xs.len(), ys.len()));
    }
    Antichain::new(
        xs.into_iter()
            .zip(ys)
            .map(|(x, y)| GridPoint::new(x, y))
            .collect(),
    )
}

impl PartialOrd for Antichain {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match (antichain_leq(self, o), antichain_leq(o, self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}
