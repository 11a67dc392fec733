//! The `A_{E,F,G}` encoding of interval sets by triples of finite sets and
//! the interpretation of the interval poset in `W(T, B)` built on it.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{parse_formula, Defn, FiniteStructure, Interpretation};
use crate::monadic::WeakPower;
use crate::rational::{fmt_q, midpoint, Q};

use super::set::{IntervalError, IntervalSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AfgTriple {
    pub e: BTreeSet<Q>,
    pub f: BTreeSet<Q>,
    pub g: BTreeSet<Q>,
}

fn between(x: &Q, lo: &Q, hi: &Q) -> bool {
    lo <= x && x <= hi
}

/// Union of the blocks `[[e, f]]` that meet `E` only in `e`, `F` only in `f`
/// and miss `G`.
pub fn encode_afg(e: &BTreeSet<Q>, f: &BTreeSet<Q>, g: &BTreeSet<Q>) -> IntervalSet {
    let mut blocks = Vec::new();
    for ei in e {
        for fi in f {
            let (lo, hi) = if ei <= fi { (ei, fi) } else { (fi, ei) };
            let only_e = e.iter().filter(|x| between(x, lo, hi)).all(|x| x == ei);
            let only_f = f.iter().filter(|x| between(x, lo, hi)).all(|x| x == fi);
            let no_g = !g.iter().any(|x| between(x, lo, hi));
            if only_e && only_f && no_g {
                blocks.push((lo.clone(), hi.clone()));
            }
        }
    }
    IntervalSet::from_intervals(blocks).expect("blocks are ordered")
}

/// Left endpoints, right endpoints and gap midpoints.
pub fn decode_afg(u: &IntervalSet) -> Result<AfgTriple, IntervalError> {
    if u.is_empty() {
        return Err(IntervalError::Empty);
    }
    let parts = u.parts();
    Ok(AfgTriple {
        e: parts.iter().map(|p| p.0.clone()).collect(),
        f: parts.iter().map(|p| p.1.clone()).collect(),
        g: parts
            .windows(2)
            .map(|w| midpoint(&w[0].1, &w[1].0))
            .collect(),
    })
}

impl AfgTriple {
    pub fn encode(&self) -> IntervalSet {
        encode_afg(&self.e, &self.f, &self.g)
    }
}

/// All canonical interval sets with endpoints in `grid` and at most
/// `max_parts` components, including the empty set.
pub fn all_interval_sets(grid: &[Q], max_parts: usize) -> Vec<IntervalSet> {
    let mut pts = grid.to_vec();
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    let mut cur: Vec<(Q, Q)> = Vec::new();
    fn go(pts: &[Q], start: usize, max: usize, cur: &mut Vec<(Q, Q)>, out: &mut Vec<IntervalSet>) {
        out.push(IntervalSet::from_intervals(cur.iter().cloned()).expect("ordered"));
        if cur.len() == max {
            return;
        }
        for i in start..pts.len() {
            for j in i..pts.len() {
                cur.push((pts[i].clone(), pts[j].clone()));
                go(pts, j + 1, max, cur, out);
                cur.pop();
            }
        }
    }
    go(&pts, 0, max_parts, &mut cur, &mut out);
    out
}

/// The direct poset: canonical interval sets over `grid` ordered by `sub`.
pub fn interval_poset(grid: &[Q]) -> (Vec<IntervalSet>, FiniteStructure) {
    let sets = all_interval_sets(grid, grid.len());
    let mut st = FiniteStructure::new(sets.iter().map(|s| s.to_string())).expect("distinct sets");
    st.add_relation_fn("sub", 2, |t| sets[t[0]].leq(&sets[t[1]]));
    (sets, st)
}

/// The points `T` of the host: the grid together with the midpoints of
/// consecutive grid points, which witness the gaps between components.
pub fn host_points(grid: &[Q]) -> Vec<Q> {
    let mut pts = grid.to_vec();
    pts.sort();
    pts.dedup();
    let mids: Vec<Q> = pts.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
    pts.extend(mids);
    pts.sort();
    pts
}

/// `W(T, B, grid)` truncated to sets of at most `cap` points, where `B` is
/// betweenness on `T = host_points(grid)` and `grid` marks the grid points.
pub fn afg_host(grid: &[Q], cap: usize) -> WeakPower {
    let pts = host_points(grid);
    let on_grid: BTreeSet<&Q> = grid.iter().collect();
    let mut base = FiniteStructure::new(pts.iter().map(fmt_q)).expect("distinct points");
    base.add_relation_fn("B", 3, |t| {
        let (x, y, z) = (&pts[t[0]], &pts[t[1]], &pts[t[2]]);
        (x <= y && y <= z) || (z <= y && y <= x)
    });
    base.add_relation_fn("grid", 1, |t| on_grid.contains(&pts[t[0]]));
    WeakPower::new(base, cap).expect("no reserved names")
}

fn mem(z: &str, x: &str) -> String {
    format!("(and (atom {z}) (sub {z} {x}))")
}

/// `z ∈ A_{E,F,G}` over the atoms of `W(T, B)`.
fn in_afg(z: &str, e: &str, f: &str, g: &str, tag: &str) -> String {
    let (ve, vf, vy) = (format!("e{tag}"), format!("f{tag}"), format!("y{tag}"));
    let only_e = format!(
        "(forall {vy} (implies (and {} (B {ve} {vy} {vf})) (= {vy} {ve})))",
        mem(&vy, e)
    );
    let only_f = format!(
        "(forall {vy} (implies (and {} (B {ve} {vy} {vf})) (= {vy} {vf})))",
        mem(&vy, f)
    );
    let no_g = format!(
        "(forall {vy} (implies {} (not (B {ve} {vy} {vf}))))",
        mem(&vy, g)
    );
    format!(
        "(exists {ve} (exists {vf} (and {} (and {} (and (B {ve} {z} {vf}) (and {only_e} (and {only_f} {no_g})))))))",
        mem(&ve, e),
        mem(&vf, f)
    )
}

/// The interpretation of the interval poset in `W(T, B)`: triples `(E, F, G)`
/// modulo equal `A_{E,F,G}`, ordered by inclusion.
///
/// The domain keeps triples with `E, F` on grid points and `G` off them,
/// where every point of `E ∪ F` is an endpoint of a component of `A` and
/// every point of `G` lies in a gap of `A`. Every interval set keeps its
/// canonical triple, so this only trims redundant representatives.
pub fn afg_interpretation() -> Interpretation {
    let p = |t: &str| parse_formula(t).expect("built-in formula parses");
    let a1 = |z: &str| in_afg(z, "x1", "x2", "x3", "a");
    let a2 = |z: &str| in_afg(z, "y1", "y2", "y3", "b");
    let on_grid = |x: &str| format!("(forall z (implies {} (grid z)))", mem("z", x));
    // On the points of the host, `z` is interior to `A` iff both of its
    // neighbours are in `A`.
    let next = |a: &str, b: &str| {
        format!("(and (not (= {a} {b})) (forall w (implies (and (atom w) (B {a} w {b})) (or (= w {a}) (= w {b})))))")
    };
    let interior = format!(
        "(exists u (and (atom u) (and {} (and {} (exists v (and (atom v) (and {} (and (not (= u v)) {}))))))))",
        next("u", "z"),
        a1("u"),
        next("z", "v"),
        a1("v")
    );
    let ends = format!(
        "(forall z (implies (atom z) (implies (or (sub z x1) (sub z x2)) (and {} (not {interior})))))",
        a1("z")
    );
    let gaps = format!(
        "(forall z (implies (atom z) (implies (sub z x3) (and (not {}) \
           (exists u (and (atom u) (and {} (exists v (and (atom v) (and {} (B u z v)))))))))))",
        a1("z"),
        a1("u"),
        a1("v")
    );
    let domain = format!(
        "(and {} (and {} (and (forall z (implies {} (not (grid z)))) (and {ends} {gaps}))))",
        on_grid("x1"),
        on_grid("x2"),
        mem("z", "x3"),
    );
    let equiv = format!(
        "(forall z (implies (atom z) (and (implies {} {}) (implies {} {}))))",
        a1("z"),
        a2("z"),
        a2("z"),
        a1("z")
    );
    let sub = format!(
        "(forall z (implies (atom z) (implies {} {})))",
        a1("z"),
        a2("z")
    );
    let both = ["x1", "x2", "x3", "y1", "y2", "y3"];
    Interpretation {
        dim: 3,
        domain: Defn::new(&["x1", "x2", "x3"], p(&domain)),
        equiv: Defn::new(&both, p(&equiv)),
        relations: BTreeMap::from([("sub".to_string(), Defn::new(&both, p(&sub)))]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn set(xs: &[Q]) -> BTreeSet<Q> {
        xs.iter().cloned().collect()
    }

    #[test]
    fn encode_examples() {
        let u = encode_afg(&set(&[q(0), q(3)]), &set(&[q(1), q(4)]), &set(&[q(2)]));
        assert_eq!(u.to_string(), "[0,1] [3,4]");
        assert_eq!(
            encode_afg(&set(&[q(5)]), &set(&[q(5)]), &set(&[])).to_string(),
            "[5,5]"
        );
        assert!(encode_afg(&set(&[q(0)]), &set(&[q(1)]), &set(&[qf(1, 2)])).is_empty());
    }

    #[test]
    fn decode_examples() {
        let t = decode_afg(&"[0,1] [3,4]".parse().unwrap()).unwrap();
        assert_eq!(t.g, set(&[q(2)]));
        let t = decode_afg(&"[5,5]".parse().unwrap()).unwrap();
        assert_eq!((t.e.len(), t.f.len(), t.g.len()), (1, 1, 0));
        let t = decode_afg(&"[0,1] [3/2,3]".parse().unwrap()).unwrap();
        assert_eq!(t.g, set(&[qf(5, 4)]));
        assert_eq!(decode_afg(&IntervalSet::empty()), Err(IntervalError::Empty));
    }

    #[test]
    fn enumeration_count() {
        // Σ_k C(n + k, 2k) sets with at most n components on n points.
        let grid: Vec<Q> = (0..5).map(q).collect();
        assert_eq!(all_interval_sets(&grid, 5).len(), 89);
        assert_eq!(all_interval_sets(&grid, 1).len(), 1 + 15);
    }
}
