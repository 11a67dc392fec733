//! Single-sorted first-order formulas over named relations.
//!
//! Formulas are written as S-expressions:
//!
//! ```text
//! f := (and f f) | (or f f) | (not f) | (implies f f)
//!    | (exists v f) | (forall v f) | (= v v) | (REL v ... v)
//! ```

mod eval;
mod interp;
mod parse;
mod structure;

use std::collections::BTreeMap;
use std::fmt;

pub use eval::{define_set, evaluate, Assignment, EvalError};
pub use interp::{
    domain_tuples, interpret_structure, translate, translate_full, Defn, InterpError,
    Interpretation, Interpreted, Translation,
};
pub use parse::{parse_formula, ParseError};
pub use structure::{FiniteStructure, StructureError, StructureFile};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Rel(String, Vec<String>),
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn rel<S: AsRef<str>>(name: &str, args: &[S]) -> Formula {
        Formula::Rel(
            name.to_string(),
            args.iter().map(|a| a.as_ref().to_string()).collect(),
        )
    }

    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(x.to_string(), y.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    /// Right-nested conjunction. Panics on an empty list: the grammar has no
    /// truth constants.
    pub fn and_all<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        fold_right(parts, Formula::and).expect("and_all of an empty list")
    }

    pub fn or_all<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        fold_right(parts, Formula::or).expect("or_all of an empty list")
    }

    pub fn exists_all<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v.as_ref(), acc))
    }

    pub fn forall_all<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let note = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Formula::Rel(_, args) => args.iter().for_each(|a| note(a, bound, out)),
            Formula::Eq(x, y) => {
                note(x, bound, out);
                note(y, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// All variable names, bound or free.
    pub fn all_vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.visit(&mut |f| {
            let names: Vec<&String> = match f {
                Formula::Rel(_, args) => args.iter().collect(),
                Formula::Eq(x, y) => vec![x, y],
                Formula::Exists(v, _) | Formula::Forall(v, _) => vec![v],
                _ => vec![],
            };
            for n in names {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        });
        out
    }

    /// Relation names with the arity each is used at. Conflicting uses are
    /// reported by the parser; here the first use wins.
    pub fn signature(&self) -> BTreeMap<String, usize> {
        let mut sig = BTreeMap::new();
        self.visit(&mut |f| {
            if let Formula::Rel(name, args) = f {
                sig.entry(name.clone()).or_insert(args.len());
            }
        });
        sig
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Rel(..) | Formula::Eq(..) => {}
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Renames free occurrences of variables. The substitution must not
    /// introduce capture; callers pick fresh targets.
    pub fn rename_free(&self, map: &BTreeMap<String, String>) -> Formula {
        let sub = |v: &String| map.get(v).cloned().unwrap_or_else(|| v.clone());
        match self {
            Formula::Rel(name, args) => Formula::Rel(name.clone(), args.iter().map(sub).collect()),
            Formula::Eq(x, y) => Formula::Eq(sub(x), sub(y)),
            Formula::Not(f) => Formula::not(f.rename_free(map)),
            Formula::And(a, b) => Formula::and(a.rename_free(map), b.rename_free(map)),
            Formula::Or(a, b) => Formula::or(a.rename_free(map), b.rename_free(map)),
            Formula::Implies(a, b) => Formula::implies(a.rename_free(map), b.rename_free(map)),
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut inner = map.clone();
                inner.remove(v);
                let body = Box::new(f.rename_free(&inner));
                match self {
                    Formula::Exists(..) => Formula::Exists(v.clone(), body),
                    _ => Formula::Forall(v.clone(), body),
                }
            }
        }
    }
}

fn fold_right<I, F>(parts: I, join: F) -> Option<Formula>
where
    I: IntoIterator<Item = Formula>,
    F: Fn(Formula, Formula) -> Formula,
{
    let mut items: Vec<Formula> = parts.into_iter().collect();
    let mut acc = items.pop()?;
    while let Some(f) = items.pop() {
        acc = join(f, acc);
    }
    Some(acc)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Rel(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Formula::Eq(x, y) => write!(f, "(= {x} {y})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Exists(v, g) => write!(f, "(exists {v} {g})"),
            Formula::Forall(v, g) => write!(f, "(forall {v} {g})"),
        }
    }
}
