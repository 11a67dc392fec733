//! Tarskian satisfaction over a [`FiniteStructure`].
//!
//! Formulas are compiled to slot-indexed nodes before evaluation. Each
//! quantifier node caches its truth value keyed by the values of its free
//! variables, so a subformula shared by many outer assignments is decided once.
//! The cache lives only for one top-level call.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rustc_hash::FxHashMap;

use super::structure::{FiniteStructure, Relation};
use super::Formula;

/// Variable name to universe position.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("free variable {0} has no assigned value")]
    Unbound(String),
    #[error("unknown relation {0}")]
    UnknownRelation(String),
    #[error("relation {name} has arity {expected}, used with {found} arguments")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("assigned position {pos} for {var} is outside the universe")]
    OutOfRange { var: String, pos: usize },
    #[error("variable list {vars:?} does not match the free variables {free:?}")]
    VarMismatch {
        vars: Vec<String>,
        free: Vec<String>,
    },
}

enum Node<'s> {
    Rel(&'s Relation, Vec<usize>),
    Eq(usize, usize),
    Not(Box<Node<'s>>),
    And(Box<Node<'s>>, Box<Node<'s>>),
    Or(Box<Node<'s>>, Box<Node<'s>>),
    Implies(Box<Node<'s>>, Box<Node<'s>>),
    Quant {
        exists: bool,
        slot: usize,
        body: Box<Node<'s>>,
        id: usize,
        /// Slots of the quantifier's own free variables (memo key).
        key: Vec<usize>,
        /// Members of a unary guard relation on the bound variable, when the
        /// body is `∃v (P v ∧ …)` or `∀v (P v ∧ … → …)`; other values make
        /// the body trivially false (resp. true) and are skipped.
        range: Option<Vec<usize>>,
    },
}

/// A unary relation on `v` among the top-level conjuncts of the body (of
/// the antecedent, for `∀`), if any.
fn guard<'f>(exists: bool, body: &'f Formula, v: &str) -> Option<&'f str> {
    fn conjunct<'f>(f: &'f Formula, v: &str) -> Option<&'f str> {
        match f {
            Formula::And(a, b) => conjunct(a, v).or_else(|| conjunct(b, v)),
            Formula::Rel(name, args) if args.len() == 1 && args[0] == v => Some(name),
            _ => None,
        }
    }
    match (exists, body) {
        (true, f) => conjunct(f, v),
        (false, Formula::Implies(a, _)) => conjunct(a, v),
        _ => None,
    }
}

struct Compiler<'s> {
    structure: &'s FiniteStructure,
    slots: HashMap<String, usize>,
    next_slot: usize,
    next_id: usize,
}

impl<'s> Compiler<'s> {
    fn compile(
        &mut self,
        f: &Formula,
        scope: &mut Vec<(String, usize)>,
    ) -> Result<Node<'s>, EvalError> {
        let lookup = |scope: &Vec<(String, usize)>, slots: &HashMap<String, usize>, v: &str| {
            scope
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, s)| *s)
                .or_else(|| slots.get(v).copied())
                .ok_or_else(|| EvalError::Unbound(v.to_string()))
        };
        Ok(match f {
            Formula::Rel(name, args) => {
                let rel = self
                    .structure
                    .relation(name)
                    .ok_or_else(|| EvalError::UnknownRelation(name.clone()))?;
                if rel.arity != args.len() {
                    return Err(EvalError::ArityMismatch {
                        name: name.clone(),
                        expected: rel.arity,
                        found: args.len(),
                    });
                }
                let slots = args
                    .iter()
                    .map(|a| lookup(scope, &self.slots, a))
                    .collect::<Result<_, _>>()?;
                Node::Rel(rel, slots)
            }
            Formula::Eq(x, y) => Node::Eq(
                lookup(scope, &self.slots, x)?,
                lookup(scope, &self.slots, y)?,
            ),
            Formula::Not(g) => Node::Not(Box::new(self.compile(g, scope)?)),
            Formula::And(a, b) => Node::And(
                Box::new(self.compile(a, scope)?),
                Box::new(self.compile(b, scope)?),
            ),
            Formula::Or(a, b) => Node::Or(
                Box::new(self.compile(a, scope)?),
                Box::new(self.compile(b, scope)?),
            ),
            Formula::Implies(a, b) => Node::Implies(
                Box::new(self.compile(a, scope)?),
                Box::new(self.compile(b, scope)?),
            ),
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let key = f
                    .free_vars()
                    .iter()
                    .map(|name| lookup(scope, &self.slots, name))
                    .collect::<Result<Vec<_>, _>>()?;
                let slot = self.next_slot;
                self.next_slot += 1;
                scope.push((v.clone(), slot));
                let body = self.compile(g, scope)?;
                scope.pop();
                let id = self.next_id;
                self.next_id += 1;
                let exists = matches!(f, Formula::Exists(..));
                let range = guard(exists, g, v).map(|name| {
                    let mut members: Vec<usize> = self
                        .structure
                        .tuples(name)
                        .unwrap_or_default()
                        .into_iter()
                        .map(|t| t[0])
                        .collect();
                    members.sort_unstable();
                    members
                });
                Node::Quant {
                    exists,
                    slot,
                    body: Box::new(body),
                    id,
                    key,
                    range,
                }
            }
        })
    }
}

/// The memo is cleared when it grows past this many entries.
const MEMO_LIMIT: usize = 8_000_000;

/// Keys of up to six 16-bit positions pack into one word with the node id.
const PACK_VALUES: usize = 6;

struct Machine {
    n: usize,
    env: Vec<usize>,
    packed: FxHashMap<u128, bool>,
    wide: FxHashMap<(usize, Vec<usize>), bool>,
}

enum Key {
    Packed(u128),
    Wide((usize, Vec<usize>)),
}

impl Machine {
    fn key(&self, id: usize, slots: &[usize]) -> Key {
        if self.n <= 1 << 16 && slots.len() <= PACK_VALUES && id < 1 << 16 {
            let mut k = id as u128 | (slots.len() as u128) << 16;
            for (i, s) in slots.iter().enumerate() {
                k |= (self.env[*s] as u128) << (24 + 16 * i);
            }
            Key::Packed(k)
        } else {
            Key::Wide((id, slots.iter().map(|s| self.env[*s]).collect()))
        }
    }

    fn lookup(&self, k: &Key) -> Option<bool> {
        match k {
            Key::Packed(p) => self.packed.get(p).copied(),
            Key::Wide(w) => self.wide.get(w).copied(),
        }
    }

    fn store(&mut self, k: Key, v: bool) {
        if self.packed.len() + self.wide.len() >= MEMO_LIMIT {
            self.packed.clear();
            self.wide.clear();
        }
        match k {
            Key::Packed(p) => self.packed.insert(p, v),
            Key::Wide(w) => self.wide.insert(w, v),
        };
    }
}

impl Machine {
    fn eval(&mut self, node: &Node<'_>) -> bool {
        match node {
            Node::Rel(rel, slots) => {
                let mut buf = [0usize; 8];
                if slots.len() <= buf.len() {
                    for (k, s) in slots.iter().enumerate() {
                        buf[k] = self.env[*s];
                    }
                    rel.holds(self.n, &buf[..slots.len()])
                } else {
                    let args: Vec<usize> = slots.iter().map(|s| self.env[*s]).collect();
                    rel.holds(self.n, &args)
                }
            }
            Node::Eq(a, b) => self.env[*a] == self.env[*b],
            Node::Not(g) => !self.eval(g),
            Node::And(a, b) => self.eval(a) && self.eval(b),
            Node::Or(a, b) => self.eval(a) || self.eval(b),
            Node::Implies(a, b) => !self.eval(a) || self.eval(b),
            Node::Quant {
                exists,
                slot,
                body,
                id,
                key,
                range,
            } => {
                let k = self.key(*id, key);
                if let Some(v) = self.lookup(&k) {
                    return v;
                }
                let saved = self.env[*slot];
                let mut result = !*exists;
                let count = range.as_ref().map_or(self.n, Vec::len);
                for i in 0..count {
                    self.env[*slot] = range.as_ref().map_or(i, |r| r[i]);
                    if self.eval(body) == *exists {
                        result = *exists;
                        break;
                    }
                }
                self.env[*slot] = saved;
                self.store(k, result);
                result
            }
        }
    }
}

/// A formula compiled against one structure, reusable across assignments.
pub(crate) struct Compiled<'s> {
    root: Node<'s>,
    free_slots: Vec<(String, usize)>,
    machine: Machine,
}

impl<'s> Compiled<'s> {
    pub(crate) fn new(
        s: &'s FiniteStructure,
        f: &Formula,
        vars: &[String],
    ) -> Result<Self, EvalError> {
        let mut slots = HashMap::new();
        let mut free_slots = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            slots.insert(v.clone(), i);
            free_slots.push((v.clone(), i));
        }
        let mut c = Compiler {
            structure: s,
            slots,
            next_slot: vars.len(),
            next_id: 0,
        };
        let root = c.compile(f, &mut Vec::new())?;
        Ok(Compiled {
            root,
            free_slots,
            machine: Machine {
                n: s.len(),
                env: vec![0; c.next_slot],
                packed: FxHashMap::default(),
                wide: FxHashMap::default(),
            },
        })
    }

    /// Evaluates with `values[i]` bound to the i-th compiled variable.
    pub(crate) fn eval(&mut self, values: &[usize]) -> bool {
        for (k, v) in values.iter().enumerate() {
            self.machine.env[self.free_slots[k].1] = *v;
        }
        self.machine.eval(&self.root)
    }
}

/// Decides `S ⊨ φ[asg]`. Quantifiers range over the whole universe.
pub fn evaluate(s: &FiniteStructure, f: &Formula, asg: &Assignment) -> Result<bool, EvalError> {
    let free = f.free_vars();
    let mut values = Vec::with_capacity(free.len());
    for v in &free {
        let pos = *asg.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
        if pos >= s.len() {
            return Err(EvalError::OutOfRange {
                var: v.clone(),
                pos,
            });
        }
        values.push(pos);
    }
    let mut c = Compiled::new(s, f, &free)?;
    Ok(c.eval(&values))
}

/// The extension `{ā : S ⊨ φ[ā]}` over the given variable order, as
/// position tuples. A sentence yields `{()}` or `{}`.
pub fn define_set(
    s: &FiniteStructure,
    f: &Formula,
    vars: &[String],
) -> Result<BTreeSet<Vec<usize>>, EvalError> {
    let free_list = f.free_vars();
    let want: BTreeSet<&String> = vars.iter().collect();
    let have: BTreeSet<&String> = free_list.iter().collect();
    if want != have || want.len() != vars.len() {
        return Err(EvalError::VarMismatch {
            vars: vars.to_vec(),
            free: free_list,
        });
    }
    let mut c = Compiled::new(s, f, vars)?;
    let n = s.len();
    let d = vars.len();
    let mut out = BTreeSet::new();
    let mut cur = vec![0usize; d];
    loop {
        if c.eval(&cur) {
            out.insert(cur.clone());
        }
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < n {
                break;
            }
            cur[k] = 0;
        }
    }
}
