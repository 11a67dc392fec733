//! Order-only characterizations evaluated on a finite family of polyhedra.
//!
//! Atoms are the points of the family. Universal quantifiers over atoms and
//! segments range over a grid, existential witnesses over a wider window, so
//! that points on the edge of the grid still have segments around them. A
//! universal quantifier over *all* atoms below a set is decided exactly by
//! inclusion. Density of betweenness is checked with midpoints.

use std::cell::RefCell;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::incidence::{line_through, AffineLine, AffinePoint};
use crate::interval::betweenness_axioms;
use crate::rational::{midpoint, Q};

use super::hull::{hull, project, project_point};
use super::poly::{Constraint, Polyhedron, Rel};

type Bits = u128;

fn bit(k: usize) -> Bits {
    1 << k
}

fn ones(b: Bits) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&k| b >> k & 1 == 1)
}

/// A finite family of polyhedra with memoized order-only predicates.
pub struct PolyUniverse {
    elems: Vec<Polyhedron>,
    bits: Vec<Bits>,
    atoms: Vec<AffinePoint>,
    grid: Bits,
    segments: Vec<usize>,
    grid_segments: Vec<usize>,
    lines: Vec<usize>,
    /// `(A, ℓ)` with both as family elements.
    projections: Vec<(AffineLine, AffineLine, usize, usize)>,
    members: Vec<(String, usize)>,
    empty: usize,
    leq_memo: RefCell<FxHashMap<(usize, usize), bool>>,
    smallest_memo: RefCell<FxHashMap<(usize, usize), Option<usize>>>,
    istar_memo: RefCell<FxHashMap<usize, Option<(usize, usize)>>>,
    absorbs_memo: RefCell<FxHashMap<usize, bool>>,
    closure_memo: RefCell<FxHashMap<usize, Option<usize>>>,
    line_memo: RefCell<FxHashMap<usize, bool>>,
}

fn memo<K: std::hash::Hash + Eq + Copy, V: Clone>(
    m: &RefCell<FxHashMap<K, V>>,
    k: K,
    f: impl FnOnce() -> V,
) -> V {
    if let Some(v) = m.borrow().get(&k) {
        return v.clone();
    }
    let v = f();
    m.borrow_mut().insert(k, v.clone());
    v
}

struct Builder {
    atoms: Vec<AffinePoint>,
    elems: Vec<Polyhedron>,
    bits: Vec<Bits>,
    by_bits: FxHashMap<Bits, Vec<usize>>,
}

impl Builder {
    fn add(&mut self, p: Polyhedron) -> usize {
        let b = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| p.contains(a))
            .fold(0, |acc, (k, _)| acc | bit(k));
        let slot = self.by_bits.entry(b).or_default();
        if let Some(&i) = slot.iter().find(|&&i| self.elems[i].same_set(&p)) {
            return i;
        }
        slot.push(self.elems.len());
        self.elems.push(p);
        self.bits.push(b);
        self.elems.len() - 1
    }
}

/// The fifty members of the standard universe, all with vertices on the
/// grid `{0..4}²`.
pub fn standard_members() -> Vec<(String, Polyhedron)> {
    let texts = [
        "x = 0; y = 0",
        "x = 2; y = 2",
        "x = 4; y = 1",
        "x = 1; y = 3",
        "y = 0; x >= 0; x <= 4",
        "x = y; x >= 0; x <= 4",
        "x = 1; y >= 0; y <= 3",
        "2*x + y = 4; x >= 0; x <= 2",
        "x - 2*y = -2; x >= 0; x <= 4",
        "y = 0; x > 0; x < 4",
        "x = y; x >= 0; x < 4",
        "x = 1; y > 0; y <= 3",
        "y = 0",
        "x = y",
        "x = 2",
        "x + y = 4",
        "x - 2*y = -2",
        "y = 0; x >= 1",
        "x = y; x <= 3",
        "y = 0; x > 1",
        "x = 2; y >= 0",
        "x >= 0; y >= 0; x + y <= 4",
        "y >= 1; 2*x - y >= 1; 2*x + y <= 7",
        "2*x - y >= 0; x - 2*y <= 0; x + y <= 6",
        "x > 0; y > 0; x + y < 4",
        "x >= 0; y >= 0; x + y < 4",
        "x >= 0; y >= 0; x + y > 0; x + y <= 4",
        "y > 1; 2*x - y > 1; 2*x + y < 7",
        "x >= 0; x <= 4; y >= 0; y <= 4",
        "x >= 1; x <= 3; y >= 1; y <= 3",
        "x > 0; x < 4; y > 0; y < 4",
        "x >= 0; x < 4; y >= 0; y <= 4",
        "x >= 1; x <= 3; y > 1; y < 3",
        "x >= 0",
        "x > 0",
        "x + y <= 4",
        "y < 2",
        "x - y >= 1",
        "x >= 0; y >= 0",
        "x > 1; y >= 1",
        "y >= 0; y <= x",
        "x + y >= 2; x >= 0; y >= 0",
        "x >= 1; x <= 3",
        "y > 1; y < 3",
        "x - y >= 0; x - y <= 2",
        "x >= 0; y >= 0; x <= 4; x + y <= 6; y - x <= 2",
        "x + y >= 2; x - y <= 2; x + y <= 6; y - x <= 2",
        "x + y > 2; x - y < 2; x + y < 6; y - x < 2",
    ];
    let mut out: Vec<(String, Polyhedron)> = vec![
        ("empty".to_string(), Polyhedron::empty()),
        ("plane".to_string(), Polyhedron::plane()),
    ];
    out.extend(texts.iter().map(|t| {
        (
            t.to_string(),
            t.parse().expect("built-in polyhedron parses"),
        )
    }));
    out
}

/// Claims evaluated by [`PolyUniverse::agreement`].
#[derive(Debug, Clone, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniverseReport {
    pub members: usize,
    pub family: usize,
    pub claims: Vec<ClaimCheck>,
}

impl UniverseReport {
    pub fn passes(&self) -> bool {
        self.claims.iter().all(|c| c.failures.is_empty())
    }
}

impl PolyUniverse {
    /// Grid `{0..4}²`, witness window `{-2..6}²`, projections along the
    /// vertical, horizontal and diagonal directions, and the members of
    /// [`standard_members`] with their closures and pairwise meets.
    pub fn standard() -> PolyUniverse {
        PolyUniverse::build(standard_members(), 0..=4, -2..=6)
    }

    pub fn build(
        members: Vec<(String, Polyhedron)>,
        grid: std::ops::RangeInclusive<i64>,
        window: std::ops::RangeInclusive<i64>,
    ) -> PolyUniverse {
        let pt = AffinePoint::int;
        let line = |p: AffinePoint, r: AffinePoint| line_through(&p, &r).expect("distinct points");
        let dirs = [
            (line(pt(0, 0), pt(0, 1)), line(pt(0, 0), pt(1, 0))),
            (line(pt(0, 0), pt(1, 0)), line(pt(0, 0), pt(0, 1))),
            (line(pt(0, 0), pt(1, 1)), line(pt(0, 0), pt(1, 0))),
        ];
        let grid_pts: Vec<AffinePoint> = grid
            .clone()
            .flat_map(|x| grid.clone().map(move |y| pt(x, y)))
            .collect();
        let mut atoms: Vec<AffinePoint> = window
            .clone()
            .flat_map(|x| window.clone().map(move |y| pt(x, y)))
            .collect();
        for (a, l) in &dirs {
            for p in &grid_pts {
                let img = project_point(a, l, p).expect("sampled directions are transversal");
                if !atoms.contains(&img) {
                    atoms.push(img);
                }
            }
        }
        assert!(atoms.len() <= 128, "atom bitsets hold 128 points");
        let grid_bits = atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| grid_pts.contains(a))
            .fold(0, |acc, (k, _)| acc | bit(k));
        let mut b = Builder {
            atoms: atoms.clone(),
            elems: vec![],
            bits: vec![],
            by_bits: FxHashMap::default(),
        };
        let empty = b.add(Polyhedron::empty());
        for a in &atoms {
            b.add(Polyhedron::point(a));
        }
        let mut segments = Vec::new();
        for (i, p) in atoms.iter().enumerate() {
            for r in &atoms[i + 1..] {
                segments.push(b.add(Polyhedron::segment(p, r)));
            }
        }
        let mut lines = Vec::new();
        for (i, p) in grid_pts.iter().enumerate() {
            for r in &grid_pts[i + 1..] {
                lines.push(b.add(Polyhedron::line(p, r).expect("distinct points")));
            }
        }
        for (a, _) in &dirs {
            let (u, v, _) = a.coefficients();
            for p in &grid_pts {
                let r = AffinePoint::new(&p.x - v, &p.y + u);
                lines.push(b.add(Polyhedron::line(p, &r).expect("distinct points")));
            }
        }
        lines.sort_unstable();
        lines.dedup();
        let as_poly = |l: &AffineLine| {
            let (u, v, c) = l.coefficients();
            Polyhedron::new([Constraint::new(u.clone(), v.clone(), Rel::Eq, c.clone())])
        };
        let projections = dirs
            .iter()
            .map(|(a, l)| (a.clone(), l.clone(), b.add(as_poly(a)), b.add(as_poly(l))))
            .collect();
        let members: Vec<(String, usize)> =
            members.into_iter().map(|(n, p)| (n, b.add(p))).collect();
        let polys: Vec<Polyhedron> = members.iter().map(|(_, i)| b.elems[*i].clone()).collect();
        for p in &polys {
            b.add(p.closure());
        }
        for (i, p) in polys.iter().enumerate() {
            for r in &polys[i + 1..] {
                b.add(p.meet(r));
            }
        }
        let mut u = PolyUniverse {
            elems: b.elems,
            bits: b.bits,
            atoms,
            grid: grid_bits,
            segments,
            grid_segments: vec![],
            lines,
            projections,
            members,
            empty,
            leq_memo: RefCell::default(),
            smallest_memo: RefCell::default(),
            istar_memo: RefCell::default(),
            absorbs_memo: RefCell::default(),
            closure_memo: RefCell::default(),
            line_memo: RefCell::default(),
        };
        // Grid segments are those whose two endpoints are grid points.
        u.grid_segments = u
            .segments
            .clone()
            .into_iter()
            .filter(|&s| {
                u.i_star(s)
                    .is_some_and(|(p, r)| u.grid >> p & 1 == 1 && u.grid >> r & 1 == 1)
            })
            .collect();
        u
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn members(&self) -> &[(String, usize)] {
        &self.members
    }

    pub fn elem(&self, i: usize) -> &Polyhedron {
        &self.elems[i]
    }

    pub fn atom_point(&self, k: usize) -> &AffinePoint {
        &self.atoms[k]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        // A point of i missing from j settles it.
        if self.bits[i] & !self.bits[j] != 0 {
            return false;
        }
        memo(&self.leq_memo, (i, j), || self.elems[i].leq(&self.elems[j]))
    }

    fn minimum(&self, cands: impl Iterator<Item = usize> + Clone) -> Option<usize> {
        let mut it = cands.clone();
        let mut cur = it.next()?;
        for c in it {
            if self.leq(c, cur) {
                cur = c;
            }
        }
        cands.clone().all(|c| self.leq(cur, c)).then_some(cur)
    }

    /// The least element of the family containing atoms `v` and `w`.
    pub fn smallest(&self, v: usize, w: usize) -> Option<usize> {
        let key = (v.min(w), v.max(w));
        memo(&self.smallest_memo, key, || {
            let need = bit(v) | bit(w);
            self.minimum((0..self.elems.len()).filter(|&i| self.bits[i] & need == need))
        })
    }

    fn between(&self, v: usize, u: usize, w: usize) -> bool {
        self.smallest(v, w)
            .is_some_and(|s| self.bits[s] >> u & 1 == 1)
    }

    /// `I*(x)`: betweenness on the atoms below `x` is bounded and dense, and
    /// `x` lies below the least element containing the two endpoints.
    /// Returns the endpoints as atom indices.
    pub fn i_star(&self, x: usize) -> Option<(usize, usize)> {
        memo(&self.istar_memo, x, || {
            if self.leq(x, self.empty) {
                return None;
            }
            let at: Vec<usize> = ones(self.bits[x]).collect();
            let n = at.len();
            if n < 2 {
                return None;
            }
            // Of any three atoms one lies between the other two.
            let triple = |p: usize, q: usize, r: usize| {
                self.between(p, q, r) || self.between(q, p, r) || self.between(p, r, q)
            };
            if !at[2..].iter().all(|&w| triple(at[0], at[1], w)) {
                return None;
            }
            let table: Vec<bool> = (0..n * n * n)
                .map(|k| self.between(at[k / (n * n)], at[k / n % n], at[k % n]))
                .collect();
            let r = betweenness_axioms(n, |a, b, c| table[(a * n + b) * n + c]);
            let (lo, hi) = r.endpoints.filter(|_| r.bounded)?;
            let dense = at.iter().enumerate().all(|(i, &v)| {
                at[i + 1..].iter().all(|&w| {
                    let (p, q) = (&self.atoms[v], &self.atoms[w]);
                    let m = AffinePoint::new(midpoint(&p.x, &q.x), midpoint(&p.y, &q.y));
                    self.elems[x].contains(&m)
                        && self
                            .smallest(v, w)
                            .is_some_and(|s| self.elems[s].contains(&m))
                })
            });
            let (a, b) = (at[lo], at[hi]);
            (dense && self.smallest(a, b).is_some_and(|s| self.leq(x, s))).then_some((a, b))
        })
    }

    /// Segments of the family below `x`.
    fn segments_below(&self, x: usize) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.segments
            .iter()
            .filter(move |&&s| self.bits[s] & !self.bits[x] == 0 && self.leq(s, x))
            .filter_map(|&s| self.i_star(s).map(|e| (s, e)))
    }

    /// Every grid segment `S` and grid atom `A ≤ S` with all other atoms of
    /// `S` below `d` have `A ≤ d`.
    fn absorbs(&self, d: usize) -> bool {
        memo(&self.absorbs_memo, d, || {
            let pd = &self.elems[d];
            self.grid_segments.iter().all(|&s| {
                let (p, r) = self.i_star(s).expect("grid segments are segments");
                ones(self.bits[s] & self.grid & !self.bits[d]).all(|a| {
                    if self.bits[s] & !bit(a) & !self.bits[d] != 0 {
                        return true;
                    }
                    let pa = &self.atoms[a];
                    let rest = [p, r].iter().filter(|&&e| e != a).all(|&e| {
                        Polyhedron::segment_with(pa, &self.atoms[e], false, true).leq(pd)
                    });
                    !rest
                })
            })
        })
    }

    /// The least element above `x` that absorbs limit atoms of segments.
    pub fn closure_def(&self, x: usize) -> Option<usize> {
        memo(&self.closure_memo, x, || {
            let bx = self.bits[x];
            let mut above: Vec<usize> = (0..self.elems.len())
                .filter(|&d| self.bits[d] & bx == bx && self.leq(x, d))
                .collect();
            above.sort_by_key(|&d| self.bits[d].count_ones());
            // Any least absorbing element has the fewest atoms among them;
            // it only has to be compared with absorbing elements not above it.
            let first = *above.iter().find(|&&d| self.absorbs(d))?;
            let fewest = self.bits[first].count_ones();
            let tied = above
                .iter()
                .copied()
                .filter(|&d| self.bits[d].count_ones() == fewest && self.absorbs(d));
            let m = self.minimum(tied)?;
            above
                .iter()
                .all(|&d| self.leq(m, d) || !self.absorbs(d))
                .then_some(m)
        })
    }

    pub fn closed_def(&self, x: usize) -> bool {
        self.closure_def(x) == Some(x)
    }

    /// A nonempty closed up-directed union of segments in which every atom
    /// is interior to some segment.
    pub fn line_def(&self, x: usize) -> bool {
        memo(&self.line_memo, x, || {
            if self.bits[x] & self.grid == 0 || !self.closed_def(x) {
                return false;
            }
            let below: Vec<(usize, (usize, usize))> = self.segments_below(x).collect();
            let interior = ones(self.bits[x] & self.grid).all(|a| {
                below
                    .iter()
                    .any(|&(s, (p, r))| self.bits[s] >> a & 1 == 1 && a != p && a != r)
            });
            if !interior {
                return false;
            }
            let on_grid: Vec<usize> = below
                .iter()
                .map(|&(s, _)| s)
                .filter(|s| self.grid_segments.contains(s))
                .collect();
            on_grid.iter().all(|&s1| {
                on_grid.iter().all(|&s2| {
                    let need = self.bits[s1] | self.bits[s2];
                    below.iter().any(|&(s, _)| {
                        self.bits[s] & need == need && self.leq(s1, s) && self.leq(s2, s)
                    })
                })
            })
        })
    }

    /// Closed, nonempty, and containing every line through any segment of it.
    pub fn affine_def(&self, x: usize) -> bool {
        if self.leq(x, self.empty) || !self.closed_def(x) {
            return false;
        }
        self.grid_segments
            .iter()
            .filter(|&&s| self.leq(s, x))
            .all(|&s| {
                self.lines
                    .iter()
                    .all(|&l| !self.line_def(l) || !self.leq(s, l) || self.leq(l, x))
            })
    }

    /// The atom `π_{A,ℓ}(a)`: `a` itself on `ℓ`, otherwise where `ℓ` meets
    /// the line through `a` that equals or misses `A`.
    pub fn projection_def(&self, k: usize, a: usize) -> Option<usize> {
        let (_, _, ai, li) = &self.projections[k];
        if self.bits[*li] >> a & 1 == 1 {
            return Some(a);
        }
        let mut found = None;
        for &h in &self.lines {
            if self.bits[h] >> a & 1 == 0 || !self.line_def(h) {
                continue;
            }
            if h != *ai && !self.elems[h].meet(&self.elems[*ai]).is_empty() {
                continue;
            }
            for b in ones(self.bits[h] & self.bits[*li]) {
                if found.is_some_and(|f| f != b) {
                    return None;
                }
                found = Some(b);
            }
        }
        found
    }

    /// Every atom below `x` projects into the segment `s` on `ℓ`: `x` lies
    /// in the union of the parallels to `A` through `s`.
    pub fn image_within_def(&self, k: usize, x: usize, s: usize) -> bool {
        let Some((p, r)) = self.i_star(s) else {
            return false;
        };
        let (a, _, _, _) = &self.projections[k];
        let (u, v, _) = a.coefficients();
        let val = |q: &AffinePoint| u * &q.x + v * &q.y;
        let (lo, hi) = {
            let (m, n) = (val(&self.atoms[p]), val(&self.atoms[r]));
            if m <= n {
                (m, n)
            } else {
                (n, m)
            }
        };
        let strip = Polyhedron::new([
            Constraint::new(u.clone(), v.clone(), Rel::Le, hi),
            Constraint::new(-u, -v, Rel::Le, -lo),
        ]);
        self.elems[x].leq(&strip)
    }

    fn segments_on(&self, k: usize) -> Vec<usize> {
        let li = self.projections[k].3;
        self.segments
            .iter()
            .copied()
            .filter(|&s| self.leq(s, li) && self.i_star(s).is_some())
            .collect()
    }

    /// Every sampled projection of `x` fits in a segment.
    pub fn bounded_def(&self, x: usize) -> bool {
        (0..self.projections.len()).all(|k| {
            self.segments_on(k)
                .into_iter()
                .any(|s| self.image_within_def(k, x, s))
        })
    }

    /// Grid atoms of `x` that are an endpoint of every segment below `x`
    /// through them.
    pub fn extremal_def(&self, x: usize) -> Bits {
        let below: Vec<(usize, (usize, usize))> = self.segments_below(x).collect();
        ones(self.bits[x] & self.grid)
            .filter(|&a| {
                below
                    .iter()
                    .all(|&(s, (p, r))| self.bits[s] >> a & 1 == 0 || a == p || a == r)
            })
            .fold(0, |acc, a| acc | bit(a))
    }

    /// Closed and below every closed element containing its extremal atoms.
    pub fn polytope_def(&self, x: usize) -> bool {
        if !self.closed_def(x) {
            return false;
        }
        let ext = self.extremal_def(x);
        (0..self.elems.len())
            .all(|d| self.bits[d] & ext != ext || self.leq(x, d) || !self.closed_def(d))
    }

    /// Runs every characterization on every member against the direct checkers.
    pub fn agreement(&self) -> UniverseReport {
        let mut claims: Vec<ClaimCheck> = [
            "segments (I*)",
            "closure",
            "lines",
            "affine subspaces",
            "projection",
            "bounded",
            "polytopes",
        ]
        .iter()
        .map(|c| ClaimCheck {
            claim: c.to_string(),
            checked: 0,
            failures: vec![],
        })
        .collect();
        let mut record = |c: usize, ok: bool, what: String| {
            claims[c].checked += 1;
            if !ok {
                claims[c].failures.push(what);
            }
        };
        for (name, x) in &self.members {
            let p = &self.elems[*x];
            record(0, self.i_star(*x).is_some() == p.is_segment(), name.clone());
            let cl = self.closure_def(*x).map(|c| &self.elems[c]);
            record(
                1,
                cl.is_some_and(|c| c.same_set(&p.closure())),
                name.clone(),
            );
            record(2, self.line_def(*x) == p.is_line(), name.clone());
            record(
                3,
                self.affine_def(*x) == p.is_affine_subspace(),
                name.clone(),
            );
            record(5, self.bounded_def(*x) == p.is_bounded(), name.clone());
            record(6, self.polytope_def(*x) == p.is_polytope(), name.clone());
            for k in 0..self.projections.len() {
                let (a, l, _, _) = &self.projections[k];
                let img = project(a, l, p).expect("sampled directions are transversal");
                for s in self.segments_on(k) {
                    let ok = self.image_within_def(k, *x, s) == img.leq(&self.elems[s]);
                    record(4, ok, format!("{name} into {}", self.elems[s]));
                }
            }
        }
        for k in 0..self.projections.len() {
            let (a, l, _, _) = &self.projections[k];
            for g in ones(self.grid) {
                let direct = project_point(a, l, &self.atoms[g]).expect("transversal");
                let ok = self
                    .projection_def(k, g)
                    .is_some_and(|b| self.atoms[b] == direct);
                record(4, ok, format!("atom {} along direction {k}", self.atoms[g]));
            }
        }
        UniverseReport {
            members: self.members.len(),
            family: self.elems.len(),
            claims,
        }
    }
}

/// A random polyhedron with one to four constraints with small integer
/// coefficients, for fuzzing.
pub fn random_polyhedron(rng: &mut impl rand::Rng) -> Polyhedron {
    let n = rng.gen_range(1..=4);
    Polyhedron::new((0..n).map(|_| {
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
            if a != 0 || b != 0 {
                break (a, b);
            }
        };
        let rel = [Rel::Lt, Rel::Le, Rel::Le, Rel::Eq][rng.gen_range(0..4)];
        Constraint::new(
            Q::from_integer(a.into()),
            Q::from_integer(b.into()),
            rel,
            Q::from_integer(rng.gen_range(-6i64..=6).into()),
        )
    }))
}

/// The hull of one to six random points with small integer coordinates.
pub fn random_polytope(rng: &mut impl rand::Rng) -> Polyhedron {
    let n = rng.gen_range(1..=6);
    let pts: Vec<AffinePoint> = (0..n)
        .map(|_| AffinePoint::int(rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
        .collect();
    hull(&pts).expect("nonempty").to_polyhedron()
}
