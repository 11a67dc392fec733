//! Endpoint-closed finite sublattices of the interval lattice and the
//! lattice-level definitions evaluated on them.
//!
//! Over a grid `g₀ < … < g_{n-1}` an interval set with grid endpoints is a
//! union of cells: the points `gᵢ` (bit `2i`) and the open gaps
//! `(gᵢ, gᵢ₊₁)` (bit `2i+1`). A mask is an interval set exactly when every
//! gap bit has both neighbouring point bits, and then meet, join and
//! inclusion become AND, OR and submask.

use std::collections::HashMap;

use serde::Serialize;

use crate::rational::{midpoint, Q};

use super::betweenness::{betweenness_axioms, BetweennessReport};
use super::set::IntervalSet;

pub const MAX_GRID: usize = 8;

#[derive(Debug, Clone)]
pub struct GridLattice {
    points: Vec<Q>,
    masks: Vec<u32>,
    index: HashMap<u32, usize>,
    atoms: Vec<u32>,
    connected: Vec<bool>,
}

impl GridLattice {
    /// The endpoint-closed universe of all interval sets with endpoints in
    /// `points` (sorted and deduplicated here).
    pub fn new(points: &[Q]) -> GridLattice {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        assert!(pts.len() <= MAX_GRID, "at most {MAX_GRID} grid points");
        let cells = (2 * pts.len()).saturating_sub(1);
        let masks: Vec<u32> = (0..1u32 << cells)
            .filter(|&m| valid(m, pts.len()))
            .collect();
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut g = GridLattice {
            points: pts,
            masks,
            index,
            atoms: Vec::new(),
            connected: Vec::new(),
        };
        // Atoms: minimal among the non-bottom elements.
        g.atoms = g
            .masks
            .iter()
            .copied()
            .filter(|&m| m != 0 && !g.masks.iter().any(|&o| o != 0 && o != m && o & !m == 0))
            .collect();
        g.connected = g.masks.iter().map(|&m| g.search_connected(m)).collect();
        g
    }

    /// Universe generated by the endpoints of `a`.
    pub fn around(a: &IntervalSet) -> GridLattice {
        GridLattice::new(&a.endpoints())
    }

    pub fn points(&self) -> &[Q] {
        &self.points
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn atoms(&self) -> &[u32] {
        &self.atoms
    }

    pub fn position(&self, m: u32) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn to_set(&self, m: u32) -> IntervalSet {
        let n = self.points.len();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < n {
            if m >> (2 * i) & 1 == 1 {
                let start = i;
                while i + 1 < n && m >> (2 * i + 1) & 1 == 1 {
                    i += 1;
                }
                parts.push((self.points[start].clone(), self.points[i].clone()));
            }
            i += 1;
        }
        IntervalSet::from_intervals(parts).expect("ordered")
    }

    /// The mask of `a`, when all its endpoints are grid points.
    pub fn from_set(&self, a: &IntervalSet) -> Option<u32> {
        let mut m = 0u32;
        for (lo, hi) in a.parts() {
            let i = self.points.binary_search(lo).ok()?;
            let j = self.points.binary_search(hi).ok()?;
            for k in 2 * i..=2 * j {
                m |= 1 << k;
            }
        }
        Some(m)
    }

    /// Not the join of two disjoint non-bottom elements. Bottom is excluded.
    pub fn is_connected(&self, x: u32) -> bool {
        self.position(x).is_some_and(|i| self.connected[i])
    }

    fn search_connected(&self, x: u32) -> bool {
        if x == 0 {
            return false;
        }
        // y ∨ z = x and y ∧ z = ⊥ force z = x \ y.
        submasks(x).all(|y| {
            let z = x & !y;
            y == 0 || z == 0 || !self.index.contains_key(&y) || !self.index.contains_key(&z)
        })
    }

    /// The least connected element below `x` containing both atoms, if one exists.
    pub fn smallest_connected(&self, x: u32, v: u32, w: u32) -> Option<u32> {
        let cands: Vec<u32> = submasks(x)
            .filter(|&c| c & (v | w) == v | w && self.is_connected(c))
            .collect();
        cands
            .iter()
            .copied()
            .find(|&c| cands.iter().all(|&o| c & !o == 0))
    }

    /// `{u}` lies in the smallest connected element containing `{v}, {w}`,
    /// with the whole universe as ambient element.
    pub fn atom_between(&self, u: u32, v: u32, w: u32) -> Option<bool> {
        let top = *self.masks.last().expect("non-empty");
        self.smallest_connected(top, v, w).map(|c| u & !c == 0)
    }

    pub fn atoms_below(&self, x: u32) -> Vec<u32> {
        self.atoms
            .iter()
            .copied()
            .filter(|&a| a & !x == 0)
            .collect()
    }

    fn atom_point(&self, a: u32) -> &Q {
        &self.points[a.trailing_zeros() as usize / 2]
    }

    /// Clause-by-clause evaluation of `I(x)` on this universe.
    pub fn check_i(&self, x: u32) -> IReport {
        let mut r = IReport {
            i1: self.is_connected(x) && !self.atoms.contains(&x),
            i2: None,
            i3: None,
            betweenness: None,
            dense_over_q: None,
            verdict: false,
        };
        if !r.i1 {
            return r;
        }
        let atoms = self.atoms_below(x);
        let k = atoms.len();
        let mut smallest = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                match self.smallest_connected(x, atoms[i], atoms[j]) {
                    Some(c) => smallest[i * k + j] = c,
                    None => {
                        r.i2 = Some(false);
                        return r;
                    }
                }
            }
        }
        // B(v, u, w): u lies in the smallest connected element containing v, w.
        let b = |v: usize, u: usize, w: usize| atoms[u] & !smallest[v * k + w] == 0;
        let bet = betweenness_axioms(k, b);
        // Density over ℚ: the midpoint of any two distinct atoms is a point of
        // x strictly between them, hence a further atom of the full lattice.
        let xs = self.to_set(x);
        let dense = (0..k).all(|v| {
            (0..k).all(|w| {
                if v == w {
                    return true;
                }
                let (p, q) = (self.atom_point(atoms[v]), self.atom_point(atoms[w]));
                let m = midpoint(p, q);
                let lo = p.min(q);
                let hi = p.max(q);
                xs.contains(&m)
                    && lo < &m
                    && &m < hi
                    && self.to_set(smallest[v * k + w]).contains(&m)
            })
        });
        r.dense_over_q = Some(dense);
        let i2 = bet.bounded && dense;
        r.i2 = Some(i2);
        let ends = bet.endpoints;
        r.betweenness = Some(bet);
        if !i2 {
            return r;
        }
        let (lo, hi) = ends.expect("bounded");
        // ((v, w)), and also its half-open variants that keep an endpoint of
        // the order, so that the ends of x have neighbourhoods too.
        let end = |t: usize| t == lo || t == hi;
        let mut nb = Vec::with_capacity(3 * k * k);
        for v in 0..k {
            for w in 0..k {
                let open = (0..k)
                    .filter(|&t| t != v && t != w && b(v, t, w))
                    .fold(0u32, |m, t| m | 1 << t);
                nb.push(open);
                if end(v) {
                    nb.push(open | 1 << v);
                }
                if end(w) {
                    nb.push(open | 1 << w);
                }
            }
        }
        let mut i3 = true;
        'outer: for y in submasks(x).filter(|y| self.index.contains_key(y)) {
            let in_y = (0..k)
                .filter(|&t| atoms[t] & !y == 0)
                .fold(0u32, |m, t| m | 1 << t);
            for u in 0..k {
                if in_y >> u & 1 == 1 {
                    continue;
                }
                if !nb.iter().any(|&m| m >> u & 1 == 1 && m & in_y == 0) {
                    i3 = false;
                    break 'outer;
                }
            }
        }
        r.i3 = Some(i3);
        r.verdict = i3;
        r
    }
}

fn valid(m: u32, n: usize) -> bool {
    (0..n.saturating_sub(1))
        .all(|i| m >> (2 * i + 1) & 1 == 0 || (m >> (2 * i) & 1 == 1 && m >> (2 * i + 2) & 1 == 1))
}

fn submasks(x: u32) -> impl Iterator<Item = u32> {
    let mut cur = Some(x);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & x) };
        Some(s)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IReport {
    /// Connected and not an atom.
    pub i1: bool,
    /// Bounded betweenness of the atoms, with density over ℚ.
    pub i2: Option<bool>,
    /// Atoms are separated from closed elements by neighbourhoods.
    pub i3: Option<bool>,
    pub betweenness: Option<BetweennessReport>,
    pub dense_over_q: Option<bool>,
    pub verdict: bool,
}

/// The intended meaning of `I(x)`: a single non-degenerate closed interval.
pub fn check_i_semantic(a: &IntervalSet) -> bool {
    a.is_connected() && !a.is_atom()
}

/// `I(a)` evaluated on the universe generated by the endpoints of `a`.
pub fn check_i(a: &IntervalSet) -> IReport {
    let g = GridLattice::around(a);
    let m = g.from_set(a).expect("endpoints are grid points");
    g.check_i(m)
}

/// `u ∈ [[v, w]]`.
pub fn atom_between(u: &Q, v: &Q, w: &Q) -> bool {
    (v <= u && u <= w) || (w <= u && u <= v)
}
