//! Semigroups, setwise products, torsion and the generated-semigroup
//! relation `t ∈ s^ℕ` through its weak monadic definition.

use std::collections::BTreeMap;

use crate::formula::{FiniteStructure, StructureError};
use crate::margin::Bounded;

use super::set::{SetMask, MAX_BASE};

/// A semigroup on element positions `0..len()`. `op` returns `None` when the
/// product leaves a truncation.
pub trait Semigroup {
    fn len(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> Option<usize>;
    fn label(&self, a: usize) -> String;
    /// True for finite stand-ins of infinite semigroups.
    fn is_truncated(&self) -> bool;

    /// Whether a chain `{s, s², …, t}` would fit both the truncation and the
    /// size cap, were `t` a power of `s`. Decides whether a failed witness
    /// search is exact.
    fn chain_fits(&self, _s: usize, _t: usize, _cap: usize) -> bool {
        !self.is_truncated()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("operation table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("table entry {0} is outside the universe")]
    OutOfRange(usize),
    #[error("not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(String, String, String),
    #[error("relation prod must be the graph of a total binary operation: {0}")]
    NotAFunction(String),
    #[error("product {0}·{1} escapes the truncation")]
    OutOfBound(String, String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Finite semigroup given by its full operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    ids: Vec<String>,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    /// `table[a * n + b] = a·b`. Associativity is checked on all triples.
    pub fn new(ids: Vec<String>, table: Vec<usize>) -> Result<Self, SemigroupError> {
        let n = ids.len();
        if table.len() != n * n {
            return Err(SemigroupError::TableSize {
                expected: n * n,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(SemigroupError::OutOfRange(bad));
        }
        let s = FiniteSemigroup { ids, table };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = s.table[s.table[a * n + b] * n + c];
                    let r = s.table[a * n + s.table[b * n + c]];
                    if l != r {
                        return Err(SemigroupError::NotAssociative(
                            s.ids[a].clone(),
                            s.ids[b].clone(),
                            s.ids[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(s)
    }

    /// ℤ/n under addition, elements labeled `0..n`.
    pub fn cyclic(n: usize) -> FiniteSemigroup {
        let ids = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteSemigroup::new(ids, table).expect("cyclic group is associative")
    }

    /// `a·b = b` on the given ids.
    pub fn right_zero(ids: &[&str]) -> FiniteSemigroup {
        let n = ids.len();
        let table = (0..n * n).map(|k| k % n).collect();
        FiniteSemigroup::new(ids.iter().map(|s| s.to_string()).collect(), table)
            .expect("right-zero band is associative")
    }

    /// Reads the graph of the operation from relation `prod` (arity 3).
    pub fn from_structure(s: &FiniteStructure) -> Result<Self, SemigroupError> {
        let n = s.len();
        let tuples = s
            .tuples("prod")
            .ok_or_else(|| SemigroupError::NotAFunction("missing relation prod".into()))?;
        if s.arity("prod") != Some(3) {
            return Err(SemigroupError::NotAFunction(
                "prod must have arity 3".into(),
            ));
        }
        let mut table = vec![usize::MAX; n * n];
        for t in tuples {
            let cell = &mut table[t[0] * n + t[1]];
            if *cell != usize::MAX && *cell != t[2] {
                return Err(SemigroupError::NotAFunction(format!(
                    "two values for {}·{}",
                    s.universe()[t[0]],
                    s.universe()[t[1]]
                )));
            }
            *cell = t[2];
        }
        if let Some(k) = table.iter().position(|&c| c == usize::MAX) {
            return Err(SemigroupError::NotAFunction(format!(
                "no value for {}·{}",
                s.universe()[k / n],
                s.universe()[k % n]
            )));
        }
        FiniteSemigroup::new(s.universe().to_vec(), table)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }
}

impl Semigroup for FiniteSemigroup {
    fn len(&self) -> usize {
        self.ids.len()
    }

    fn op(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.table[a * self.ids.len() + b])
    }

    fn label(&self, a: usize) -> String {
        self.ids[a].clone()
    }

    fn is_truncated(&self) -> bool {
        false
    }
}

/// `{1..N}` with addition defined when the sum stays `≤ N`. Position `i`
/// holds the number `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedNat {
    pub bound: usize,
}

impl TruncatedNat {
    pub fn new(bound: usize) -> TruncatedNat {
        assert!(bound >= 1, "bound must be at least 1");
        TruncatedNat { bound }
    }

    pub fn pos(&self, value: usize) -> Option<usize> {
        (1..=self.bound).contains(&value).then(|| value - 1)
    }

    pub fn value(&self, pos: usize) -> usize {
        pos + 1
    }

    pub fn set(&self, values: &[usize]) -> SetMask {
        values
            .iter()
            .map(|&v| self.pos(v).expect("value inside the truncation"))
            .collect()
    }

    pub fn values(&self, s: SetMask) -> Vec<usize> {
        s.iter().map(|p| self.value(p)).collect()
    }
}

impl Semigroup for TruncatedNat {
    fn len(&self) -> usize {
        self.bound
    }

    fn op(&self, a: usize, b: usize) -> Option<usize> {
        let sum = self.value(a) + self.value(b);
        self.pos(sum)
    }

    fn label(&self, a: usize) -> String {
        self.value(a).to_string()
    }

    fn is_truncated(&self) -> bool {
        true
    }

    fn chain_fits(&self, s: usize, t: usize, cap: usize) -> bool {
        let (s, t) = (self.value(s), self.value(t));
        let k = t.div_ceil(s);
        k <= cap && s * k <= self.bound
    }
}

/// The graph of the operation as relation `prod` (arity 3); escaping
/// products of a truncation are simply absent.
pub fn semigroup_structure<S: Semigroup>(s: &S) -> FiniteStructure {
    let mut out =
        FiniteStructure::new((0..s.len()).map(|i| s.label(i))).expect("labels are distinct");
    let mut graph = Vec::new();
    for a in 0..s.len() {
        for b in 0..s.len() {
            if let Some(c) = s.op(a, b) {
                graph.push(vec![a, b, c]);
            }
        }
    }
    out.add_relation_indexed("prod", 3, graph);
    out
}

/// `X · Y = {x · y}`; fails when a needed product escapes the truncation.
pub fn set_product<S: Semigroup>(s: &S, x: SetMask, y: SetMask) -> Result<SetMask, SemigroupError> {
    let mut out = SetMask::EMPTY;
    for a in x.iter() {
        for b in y.iter() {
            match s.op(a, b) {
                Some(c) => out = out.with(c),
                None => return Err(SemigroupError::OutOfBound(s.label(a), s.label(b))),
            }
        }
    }
    Ok(out)
}

/// `X · Y` with escaping products dropped. A dropped product is not in any
/// subset of the truncation, which is the reading used by the definable
/// properties below.
fn product_within<S: Semigroup>(s: &S, x: SetMask, y: SetMask) -> (SetMask, bool) {
    let mut out = SetMask::EMPTY;
    let mut escaped = false;
    for a in x.iter() {
        for b in y.iter() {
            match s.op(a, b) {
                Some(c) => out = out.with(c),
                None => escaped = true,
            }
        }
    }
    (out, escaped)
}

/// The powers `s, s², …` in order of appearance, and whether the sequence
/// escaped the truncation before cycling.
pub fn powers<S: Semigroup>(s: &S, g: usize) -> (Vec<usize>, bool) {
    let mut seen = vec![false; s.len()];
    let mut out = Vec::new();
    let mut cur = g;
    loop {
        if seen[cur] {
            return (out, false);
        }
        seen[cur] = true;
        out.push(cur);
        match s.op(cur, g) {
            Some(next) => cur = next,
            None => return (out, true),
        }
    }
}

/// `X` is a finite sub-semigroup: every product of members exists and lies in `X`.
pub fn is_subsemigroup<S: Semigroup>(s: &S, x: SetMask) -> bool {
    let (prod, escaped) = product_within(s, x, x);
    !escaped && prod.is_subset(x)
}

/// `s` lies in some finite sub-semigroup. The smallest candidate is the
/// closure of `{s}`, so the search reduces to computing it; a truncation
/// escape means no finite witness exists inside the truncation.
pub fn is_torsion<S: Semigroup>(s: &S, g: usize) -> bool {
    let (pw, escaped) = powers(s, g);
    !escaped && is_subsemigroup(s, pw.into_iter().collect())
}

/// Brute-force torsion witness search over all subsets up to `cap`.
pub fn torsion_witness<S: Semigroup>(s: &S, g: usize, cap: usize) -> Option<SetMask> {
    assert!(s.len() <= MAX_BASE);
    SetMask::all_up_to(s.len(), cap)
        .into_iter()
        .find(|&x| x.contains(g) && is_subsemigroup(s, x))
}

/// `s ∈ X`, `s` not torsion, and some `x ∈ X` with `X ∩ x·X = ∅` and
/// `s·(X \ {x}) ⊆ X`.
pub fn star_property<S: Semigroup>(s: &S, g: usize, x: SetMask) -> bool {
    x.contains(g) && !is_torsion(s, g) && star_clause(s, g, x)
}

fn star_clause<S: Semigroup>(s: &S, g: usize, x: SetMask) -> bool {
    x.iter().any(|top| {
        let (tx, _) = product_within(s, SetMask::singleton(top), x);
        if !tx.is_disjoint(x) {
            return false;
        }
        let (sx, escaped) = product_within(s, SetMask::singleton(g), x.without(top));
        !escaped && sx.is_subset(x)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub verdict: Bounded,
    /// The `X` with property (*) that contains `t`, when one was found.
    pub witness: Option<SetMask>,
    /// Direct computation of `t ∈ s^ℕ` within the truncation.
    pub oracle: bool,
}

/// `t ∈ s^ℕ` via: `t` lies in the smallest finite semigroup containing `s`,
/// or some `X` with `|X| ≤ cap` contains `t` and has property (*).
///
/// A negative answer is exact when any witness for `t` would have fitted
/// (see [`Semigroup::chain_fits`]), otherwise sound-only.
pub fn in_generated<S: Semigroup>(s: &S, g: usize, t: usize, cap: usize) -> Membership {
    assert!(s.len() <= MAX_BASE);
    let (pw, escaped) = powers(s, g);
    let oracle = pw.contains(&t);
    if !escaped && is_subsemigroup(s, pw.iter().copied().collect()) {
        let closure: SetMask = pw.iter().copied().collect();
        let hit = closure.contains(t);
        return Membership {
            verdict: Bounded::exact(hit),
            witness: hit.then_some(closure),
            oracle,
        };
    }
    let base = SetMask::singleton(g).with(t);
    let witness = subsets_containing(s.len(), base, cap)
        .into_iter()
        .find(|&x| star_clause(s, g, x));
    let verdict = match witness {
        Some(_) => Bounded::exact(true),
        None if s.chain_fits(g, t, cap) => Bounded::exact(false),
        None => Bounded::sound_only(false),
    };
    Membership {
        verdict,
        witness,
        oracle,
    }
}

/// Subsets of `{0..n}` containing `base` with at most `cap` elements.
fn subsets_containing(n: usize, base: SetMask, cap: usize) -> Vec<SetMask> {
    if base.len() > cap {
        return Vec::new();
    }
    let rest: Vec<usize> = (0..n).filter(|&i| !base.contains(i)).collect();
    SetMask::all_up_to(rest.len(), cap - base.len())
        .into_iter()
        .map(|m| m.iter().fold(base, |acc, k| acc.with(rest[k])))
        .collect()
}

/// The whole relation `{(s, t) : some X with |X| ≤ cap has (*) for s and contains t}`
/// in one sweep over the subsets, plus torsion closures. Keys are positions.
pub fn generated_relation<S: Semigroup>(s: &S, cap: usize) -> BTreeMap<(usize, usize), SetMask> {
    assert!(s.len() <= MAX_BASE);
    let n = s.len();
    let torsion: Vec<bool> = (0..n).map(|g| is_torsion(s, g)).collect();
    let mut out = BTreeMap::new();
    for (g, &tor) in torsion.iter().enumerate() {
        if tor {
            let closure: SetMask = powers(s, g).0.into_iter().collect();
            for t in closure.iter() {
                out.entry((g, t)).or_insert(closure);
            }
        }
    }
    for x in SetMask::all_up_to(n, cap) {
        for g in x.iter() {
            if !torsion[g] && star_clause(s, g, x) {
                for t in x.iter() {
                    out.entry((g, t)).or_insert(x);
                }
            }
        }
    }
    out
}

/// `k | n` as "n is in the additive semigroup generated by k", computed by
/// walking `k, k+k, …` with the truncated addition only.
pub fn divides(nat: &TruncatedNat, k: usize, n: usize) -> bool {
    match (nat.pos(k), nat.pos(n)) {
        (Some(pk), Some(pn)) => powers(nat, pk).0.contains(&pn),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_product_examples() {
        let nat = TruncatedNat::new(20);
        let p = set_product(&nat, nat.set(&[1, 2]), nat.set(&[3])).unwrap();
        assert_eq!(nat.values(p), vec![4, 5]);
        assert_eq!(
            set_product(&nat, nat.set(&[1, 2]), SetMask::EMPTY).unwrap(),
            SetMask::EMPTY
        );
        let small = TruncatedNat::new(5);
        assert!(matches!(
            set_product(&small, small.set(&[3]), small.set(&[4])),
            Err(SemigroupError::OutOfBound(..))
        ));
    }

    #[test]
    fn torsion_examples() {
        let z3 = FiniteSemigroup::cyclic(3);
        assert!(is_torsion(&z3, 1));
        for bound in [5, 12, 30] {
            let nat = TruncatedNat::new(bound);
            assert!(!is_torsion(&nat, nat.pos(2).unwrap()));
        }
        let rz = FiniteSemigroup::right_zero(&["a", "b"]);
        // s^ℕ = {s} in a right-zero band.
        for g in 0..2 {
            assert_eq!(powers(&rz, g).0, vec![g]);
            assert!(is_torsion(&rz, g));
        }
    }

    #[test]
    fn torsion_agrees_with_brute_force_search() {
        let z4 = FiniteSemigroup::cyclic(4);
        for g in 0..4 {
            assert_eq!(is_torsion(&z4, g), torsion_witness(&z4, g, 4).is_some());
        }
        let nat = TruncatedNat::new(10);
        for g in 0..10 {
            assert!(!is_torsion(&nat, g));
            assert!(torsion_witness(&nat, g, 5).is_none());
        }
    }

    #[test]
    fn star_examples() {
        let nat = TruncatedNat::new(30);
        let two = nat.pos(2).unwrap();
        assert!(star_property(&nat, two, nat.set(&[2, 4, 6])));
        assert!(!star_property(&nat, two, nat.set(&[2, 4, 5])));
        assert!(!star_property(&nat, two, nat.set(&[4, 6])));
    }

    #[test]
    fn in_generated_examples() {
        let nat = TruncatedNat::new(30);
        let p = |v| nat.pos(v).unwrap();
        let m = in_generated(&nat, p(3), p(9), 6);
        assert!(m.verdict.is_true());
        assert_eq!(nat.values(m.witness.unwrap()), vec![3, 6, 9]);
        assert!(in_generated(&nat, p(3), p(10), 6).verdict.is_false());
        let m = in_generated(&nat, p(2), p(2), 6);
        assert_eq!(nat.values(m.witness.unwrap()), vec![2]);
    }

    #[test]
    fn divides_examples() {
        let nat = TruncatedNat::new(30);
        assert!(divides(&nat, 4, 12));
        assert!(!divides(&nat, 5, 12));
        assert!(divides(&nat, 7, 7));
    }

    #[test]
    fn semigroup_from_structure() {
        let mut st = FiniteStructure::new(["e", "a"]).unwrap();
        st.add_relation(
            "prod",
            3,
            vec![
                vec!["e", "e", "e"],
                vec!["e", "a", "a"],
                vec!["a", "e", "a"],
                vec!["a", "a", "e"],
            ],
        )
        .unwrap();
        let g = FiniteSemigroup::from_structure(&st).unwrap();
        assert_eq!(g.op(1, 1), Some(0));
        let mut bad = FiniteStructure::new(["e", "a"]).unwrap();
        bad.add_relation("prod", 3, vec![vec!["e", "e", "e"]])
            .unwrap();
        assert!(matches!(
            FiniteSemigroup::from_structure(&bad),
            Err(SemigroupError::NotAFunction(_))
        ));
    }

    #[test]
    fn non_associative_table_rejected() {
        // a·b = 1 - ... a left-subtraction table on {0,1}: x·y = 1 when x = 0 and y = 0.
        let ids = vec!["0".to_string(), "1".to_string()];
        let table = vec![1, 0, 0, 0];
        assert!(matches!(
            FiniteSemigroup::new(ids, table),
            Err(SemigroupError::NotAssociative(..))
        ));
    }
}
