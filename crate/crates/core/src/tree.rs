//! The binary tree `2^{<ω}`: the prefix order `≤` and the horizontal order
//! `⪯`, directly on strings and as formulas over the weak powerset of a
//! finite part of the tree with its two successor functions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::formula::{parse_formula, FiniteStructure, Formula};
use crate::monadic::{PowerError, WeakPower};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("tree nodes are strings over {{0,1}}, got {0:?}")]
    BadChar(String),
}

/// A node of the binary tree, written as a binary string. The root is `""`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeNode(String);

#[allow(clippy::len_without_is_empty)]
impl TreeNode {
    pub fn root() -> TreeNode {
        TreeNode(String::new())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ⌢b`.
    pub fn child(&self, bit: u8) -> TreeNode {
        let mut s = self.0.clone();
        s.push(if bit == 0 { '0' } else { '1' });
        TreeNode(s)
    }

    pub fn parent(&self) -> Option<TreeNode> {
        let mut s = self.0.clone();
        s.pop().map(|_| TreeNode(s))
    }
}

impl FromStr for TreeNode {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<TreeNode, TreeError> {
        let s = if s == "ε" { "" } else { s };
        if s.chars().all(|c| c == '0' || c == '1') {
            Ok(TreeNode(s.to_string()))
        } else {
            Err(TreeError::BadChar(s.to_string()))
        }
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.0)
        }
    }
}

/// `σ ≤ τ`: `τ` extends `σ`.
pub fn prefix_leq(s: &TreeNode, t: &TreeNode) -> bool {
    t.0.starts_with(&s.0)
}

/// Longest common prefix.
pub fn infimum(s: &TreeNode, t: &TreeNode) -> TreeNode {
    let n =
        s.0.bytes()
            .zip(t.0.bytes())
            .take_while(|(a, b)| a == b)
            .count();
    TreeNode(s.0[..n].to_string())
}

/// `σ ⪯ τ`: `σ = τ`, or `σ1 ≤ τ`, or `τ0 ≤ σ`, or `σ, τ` are incomparable
/// and `γ0 ≤ σ` for their infimum `γ`.
pub fn horizontal(s: &TreeNode, t: &TreeNode) -> bool {
    if s == t || prefix_leq(&s.child(1), t) || prefix_leq(&t.child(0), s) {
        return true;
    }
    let incomparable = !prefix_leq(s, t) && !prefix_leq(t, s);
    incomparable && prefix_leq(&infimum(s, t).child(0), s)
}

/// [`horizontal`] as an [`Ordering`], for sorting.
pub fn horizontal_cmp(s: &TreeNode, t: &TreeNode) -> Ordering {
    match (horizontal(s, t), horizontal(t, s)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

/// All nodes of length at most `depth`, by length and then lexicographically.
pub fn nodes_up_to(depth: usize) -> Vec<TreeNode> {
    let mut out = vec![TreeNode::root()];
    let mut level = vec![TreeNode::root()];
    for _ in 0..depth {
        level = level
            .iter()
            .flat_map(|n| [n.child(0), n.child(1)])
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub nodes: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub total: bool,
}

impl OrderReport {
    pub fn is_linear(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive && self.total
    }
}

/// Checks the linear order axioms of `rel` on `nodes` by brute force.
pub fn order_axioms(nodes: &[TreeNode], rel: impl Fn(&TreeNode, &TreeNode) -> bool) -> OrderReport {
    let n = nodes.len();
    let table: Vec<bool> = (0..n * n)
        .map(|k| rel(&nodes[k / n], &nodes[k % n]))
        .collect();
    let r = |i: usize, j: usize| table[i * n + j];
    let reflexive = (0..n).all(|i| r(i, i));
    let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(r(i, j) && r(j, i))));
    let total = (0..n).all(|i| (0..n).all(|j| r(i, j) || r(j, i)));
    let transitive =
        (0..n).all(|i| (0..n).all(|j| !r(i, j) || (0..n).all(|k| !r(j, k) || r(i, k))));
    OrderReport {
        nodes: n,
        reflexive,
        antisymmetric,
        transitive,
        total,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub pairs: usize,
    /// Pairs of distinct probe nodes with no witness strictly between.
    pub gaps: Vec<(TreeNode, TreeNode)>,
    /// Probe nodes with no witness strictly above or strictly below.
    pub endpoints: Vec<TreeNode>,
}

impl DensityReport {
    pub fn passes(&self) -> bool {
        self.gaps.is_empty() && self.endpoints.is_empty()
    }
}

/// Density and lack of endpoints of `⪯`, probed on nodes of length at most
/// `probe` with witnesses of length at most `witness`.
pub fn density_probe(probe: usize, witness: usize) -> DensityReport {
    let pts = nodes_up_to(probe);
    let mut wit = nodes_up_to(witness);
    wit.sort_by(horizontal_cmp);
    let strictly = |a: &TreeNode, b: &TreeNode| a != b && horizontal(a, b);
    let rank = |x: &TreeNode| {
        wit.binary_search_by(|w| horizontal_cmp(w, x))
            .expect("probe nodes are witnesses")
    };
    let mut gaps = Vec::new();
    let mut pairs = 0;
    for a in &pts {
        for b in &pts {
            if !strictly(a, b) {
                continue;
            }
            pairs += 1;
            // In the sorted witnesses, something sits strictly between a and b.
            if rank(b) - rank(a) < 2 {
                gaps.push((a.clone(), b.clone()));
            }
        }
    }
    let endpoints = pts
        .iter()
        .filter(|&x| {
            let below = wit.iter().any(|w| strictly(w, x));
            let above = wit.iter().any(|w| strictly(x, w));
            !(below && above)
        })
        .cloned()
        .collect();
    DensityReport {
        pairs,
        gaps,
        endpoints,
    }
}

/// `W(S2)` restricted to nodes of length at most `depth`, with the
/// successor graphs `s0(σ, σ0)` and `s1(σ, σ1)`.
pub fn tree_power(depth: usize, cap: usize) -> Result<(Vec<TreeNode>, WeakPower), PowerError> {
    let nodes = nodes_up_to(depth);
    let mut base = FiniteStructure::new(nodes.iter().map(|n| n.to_string()))?;
    for bit in [0u8, 1] {
        base.add_relation_fn(&format!("s{bit}"), 2, |t| {
            nodes[t[1]].parent().as_ref() == Some(&nodes[t[0]])
                && nodes[t[1]]
                    .as_str()
                    .ends_with(if bit == 0 { '0' } else { '1' })
        });
    }
    Ok((nodes, WeakPower::new(base, cap)?))
}

fn mem(z: &str, x: &str) -> String {
    format!("(and (atom {z}) (sub {z} {x}))")
}

/// `σ` lies in every finite set that contains `τ` and is closed under
/// immediate predecessors. Exact on a truncation whose cap is at least the
/// depth plus one, since the path to `τ` is such a set.
fn leq_text(s: &str, t: &str) -> String {
    let closed = format!(
        "(forall pa (implies {} (forall pp (implies (and (atom pp) (or (s0 pp pa) (s1 pp pa))) (sub pp px)))))",
        mem("pa", "px")
    );
    format!("(forall px (implies (and (sub {t} px) {closed}) (sub {s} px)))")
}

/// The prefix order as a formula in `s, t` over [`tree_power`].
pub fn prefix_formula() -> Formula {
    parse_formula(&format!(
        "(and (atom s) (and (atom t) {}))",
        leq_text("s", "t")
    ))
    .expect("built-in formula parses")
}

/// The horizontal order as a formula in `s, t` over [`tree_power`],
/// following the four clauses of [`horizontal`].
pub fn horizontal_formula() -> Formula {
    let child_leq = |bit: u8, parent: &str, other: &str| {
        format!(
            "(exists hc (and (atom hc) (and (s{bit} {parent} hc) {})))",
            leq_text("hc", other)
        )
    };
    let common = format!(
        "(exists hg (and (atom hg) (and {} (and {} (and \
           (forall hh (implies (and (atom hh) (and {} {})) {})) \
           (exists hc (and (atom hc) (and (s0 hg hc) {}))))))))",
        leq_text("hg", "s"),
        leq_text("hg", "t"),
        leq_text("hh", "s"),
        leq_text("hh", "t"),
        leq_text("hh", "hg"),
        leq_text("hc", "s"),
    );
    let text = format!(
        "(and (atom s) (and (atom t) (or (= s t) (or {} (or {} (and (not {}) (and (not {}) {common})))))))",
        child_leq(1, "s", "t"),
        child_leq(0, "t", "s"),
        leq_text("s", "t"),
        leq_text("t", "s"),
    );
    parse_formula(&text).expect("built-in formula parses")
}
