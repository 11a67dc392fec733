//! Interpretations of one relational structure in another and the formula
//! translation they induce.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::eval::{Compiled, EvalError};
use super::structure::FiniteStructure;
use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("{what}: declared variables {declared:?} do not match free variables {free:?}")]
    BadVariables {
        what: String,
        declared: Vec<String>,
        free: Vec<String>,
    },
    #[error("target relation {0} has no defining formula")]
    MissingRelation(String),
    #[error(
        "relation {name}: formula takes {found} variables, expected arity*dimension = {expected}"
    )]
    RelationWidth {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("equivalence formula is not an equivalence on the domain: {0}")]
    NotEquivalence(String),
    #[error("relation {0} is not invariant under the equivalence")]
    NotInvariant(String),
    #[error("domain formula defines the empty set")]
    EmptyDomain,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A formula together with the ordered list of its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defn {
    pub vars: Vec<String>,
    pub body: Formula,
}

impl Defn {
    pub fn new<S: AsRef<str>>(vars: &[S], body: Formula) -> Defn {
        Defn {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            body,
        }
    }

    fn check(&self, what: &str, width: usize) -> Result<(), InterpError> {
        let free: BTreeSet<String> = self.body.free_vars().into_iter().collect();
        let declared: BTreeSet<String> = self.vars.iter().cloned().collect();
        if declared.len() != self.vars.len()
            || !free.is_subset(&declared)
            || self.vars.len() != width
        {
            return Err(InterpError::BadVariables {
                what: what.to_string(),
                declared: self.vars.clone(),
                free: free.into_iter().collect(),
            });
        }
        Ok(())
    }
}

/// Dimension, domain formula, equivalence formula and one defining formula
/// per target relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub dim: usize,
    pub domain: Defn,
    pub equiv: Defn,
    pub relations: BTreeMap<String, Defn>,
}

impl Interpretation {
    /// Checks variable bookkeeping (not semantic validity).
    pub fn validate(&self) -> Result<(), InterpError> {
        if self.dim == 0 {
            return Err(InterpError::ZeroDimension);
        }
        self.domain.check("domain", self.dim)?;
        self.equiv.check("equivalence", 2 * self.dim)?;
        for (name, d) in &self.relations {
            if d.vars.len() % self.dim != 0 {
                return Err(InterpError::RelationWidth {
                    name: name.clone(),
                    expected: (d.vars.len() / self.dim + 1) * self.dim,
                    found: d.vars.len(),
                });
            }
            d.check(name, d.vars.len())?;
        }
        Ok(())
    }

    /// Identity interpretation for the given signature: every relation maps
    /// to itself, the domain is everything and the equivalence is equality.
    pub fn identity(signature: &BTreeMap<String, usize>) -> Interpretation {
        let relations = signature
            .iter()
            .map(|(name, &ar)| {
                let vars: Vec<String> = (0..ar).map(|i| format!("a{i}")).collect();
                (name.clone(), Defn::new(&vars, Formula::rel(name, &vars)))
            })
            .collect();
        Interpretation {
            dim: 1,
            domain: Defn::new(&["x"], Formula::eq("x", "x")),
            equiv: Defn::new(&["x", "y"], Formula::eq("x", "y")),
            relations,
        }
    }

    fn names(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = BTreeSet::new();
        let mut add = |d: &Defn| {
            out.extend(d.vars.iter().cloned());
            out.extend(d.body.all_vars());
        };
        add(&self.domain);
        add(&self.equiv);
        self.relations.values().for_each(add);
        out
    }
}

struct Fresh {
    taken: BTreeSet<String>,
    counter: usize,
}

impl Fresh {
    fn next(&mut self, hint: &str) -> String {
        loop {
            self.counter += 1;
            let name = format!("{hint}_{}", self.counter);
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}

/// Renames every bound variable to a fresh name.
fn freshen_bound(f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Rel(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(g) => Formula::not(freshen_bound(g, fresh)),
        Formula::And(a, b) => Formula::and(freshen_bound(a, fresh), freshen_bound(b, fresh)),
        Formula::Or(a, b) => Formula::or(freshen_bound(a, fresh), freshen_bound(b, fresh)),
        Formula::Implies(a, b) => {
            Formula::implies(freshen_bound(a, fresh), freshen_bound(b, fresh))
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let nv = fresh.next("b");
            let map = BTreeMap::from([(v.clone(), nv.clone())]);
            let body = freshen_bound(&g.rename_free(&map), fresh);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(&nv, body)
            } else {
                Formula::forall(&nv, body)
            }
        }
    }
}

fn instantiate(d: &Defn, actual: &[String], fresh: &mut Fresh) -> Formula {
    let body = freshen_bound(&d.body, fresh);
    let map: BTreeMap<String, String> =
        d.vars.iter().cloned().zip(actual.iter().cloned()).collect();
    body.rename_free(&map)
}

/// Result of translating a formula: the host formula plus the host
/// variables standing for each free target variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub formula: Formula,
    pub free: BTreeMap<String, Vec<String>>,
}

/// Translates a target-language formula into the host language.
/// Fresh names come from a deterministic counter, so output is reproducible.
pub fn translate(interp: &Interpretation, f: &Formula) -> Result<Formula, InterpError> {
    translate_full(interp, f).map(|t| t.formula)
}

pub fn translate_full(interp: &Interpretation, f: &Formula) -> Result<Translation, InterpError> {
    interp.validate()?;
    let mut taken = interp.names();
    taken.extend(f.all_vars());
    let mut fresh = Fresh { taken, counter: 0 };
    let mut free = BTreeMap::new();
    let mut env: Vec<(String, Vec<String>)> = Vec::new();
    for v in f.free_vars() {
        let tuple: Vec<String> = (0..interp.dim).map(|_| fresh.next(&v)).collect();
        free.insert(v.clone(), tuple.clone());
        env.push((v, tuple));
    }
    let formula = tr(interp, f, &mut env, &mut fresh)?;
    Ok(Translation { formula, free })
}

fn tr(
    interp: &Interpretation,
    f: &Formula,
    env: &mut Vec<(String, Vec<String>)>,
    fresh: &mut Fresh,
) -> Result<Formula, InterpError> {
    let look = |env: &Vec<(String, Vec<String>)>, v: &str| -> Vec<String> {
        env.iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|(_, t)| t.clone())
            .expect("every variable is bound or free")
    };
    Ok(match f {
        Formula::Rel(name, args) => {
            let d = interp
                .relations
                .get(name)
                .ok_or_else(|| InterpError::MissingRelation(name.clone()))?;
            if d.vars.len() != args.len() * interp.dim {
                return Err(InterpError::RelationWidth {
                    name: name.clone(),
                    expected: args.len() * interp.dim,
                    found: d.vars.len(),
                });
            }
            let actual: Vec<String> = args.iter().flat_map(|a| look(env, a)).collect();
            instantiate(d, &actual, fresh)
        }
        Formula::Eq(x, y) => {
            let mut actual = look(env, x);
            actual.extend(look(env, y));
            instantiate(&interp.equiv, &actual, fresh)
        }
        Formula::Not(g) => Formula::not(tr(interp, g, env, fresh)?),
        Formula::And(a, b) => Formula::and(tr(interp, a, env, fresh)?, tr(interp, b, env, fresh)?),
        Formula::Or(a, b) => Formula::or(tr(interp, a, env, fresh)?, tr(interp, b, env, fresh)?),
        Formula::Implies(a, b) => {
            Formula::implies(tr(interp, a, env, fresh)?, tr(interp, b, env, fresh)?)
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let tuple: Vec<String> = (0..interp.dim).map(|_| fresh.next(v)).collect();
            let dom = instantiate(&interp.domain, &tuple, fresh);
            env.push((v.clone(), tuple.clone()));
            let body = tr(interp, g, env, fresh);
            env.pop();
            let body = body?;
            if matches!(f, Formula::Exists(..)) {
                Formula::exists_all(&tuple, Formula::and(dom, body))
            } else {
                Formula::forall_all(&tuple, Formula::implies(dom, body))
            }
        }
    })
}

/// Materialized interpreted structure: element `i` is the class
/// `classes[i]` of domain tuples (host positions).
#[derive(Debug, Clone)]
pub struct Interpreted {
    pub structure: FiniteStructure,
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl Interpreted {
    /// Class index of a domain tuple, if it lies in the domain.
    pub fn class_of(&self, tuple: &[usize]) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.iter().any(|t| t == tuple))
    }
}

/// Builds the quotient structure. Fails when the equivalence formula is not
/// an equivalence on the domain or a relation formula is not class-invariant.
pub fn interpret_structure(
    host: &FiniteStructure,
    interp: &Interpretation,
) -> Result<Interpreted, InterpError> {
    interp.validate()?;
    let domain: Vec<Vec<usize>> = domain_tuples(host, interp)?.into_iter().collect();
    if domain.is_empty() {
        return Err(InterpError::EmptyDomain);
    }
    let m = domain.len();
    let mut eq = Compiled::new(host, &interp.equiv.body, &interp.equiv.vars)?;
    let mut related = vec![false; m * m];
    let mut args = Vec::with_capacity(2 * interp.dim);
    for i in 0..m {
        for j in 0..m {
            args.clear();
            args.extend_from_slice(&domain[i]);
            args.extend_from_slice(&domain[j]);
            related[i * m + j] = eq.eval(&args);
        }
    }
    let show = |t: &Vec<usize>| {
        let ids: Vec<&str> = t.iter().map(|&x| host.universe()[x].as_str()).collect();
        format!("({})", ids.join(","))
    };
    for i in 0..m {
        if !related[i * m + i] {
            return Err(InterpError::NotEquivalence(format!(
                "not reflexive at {}",
                show(&domain[i])
            )));
        }
        for j in 0..m {
            if related[i * m + j] != related[j * m + i] {
                return Err(InterpError::NotEquivalence(format!(
                    "not symmetric at {} {}",
                    show(&domain[i]),
                    show(&domain[j])
                )));
            }
        }
    }
    // Classes by first member; transitivity holds iff every class is a clique
    // whose members relate to nothing outside it.
    let mut class_of = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let members: Vec<usize> = (0..m).filter(|&j| related[i * m + j]).collect();
        for &j in &members {
            if class_of[j] != usize::MAX {
                return Err(InterpError::NotEquivalence(format!(
                    "not transitive around {}",
                    show(&domain[j])
                )));
            }
            class_of[j] = c;
        }
        classes.push(members);
    }
    for members in &classes {
        for &a in members {
            for &b in members {
                if !related[a * m + b] {
                    return Err(InterpError::NotEquivalence(format!(
                        "not transitive: {} and {}",
                        show(&domain[a]),
                        show(&domain[b])
                    )));
                }
            }
        }
    }
    let ids: Vec<String> = classes.iter().map(|c| show(&domain[c[0]])).collect();
    let mut out = FiniteStructure::new(ids).expect("class ids are distinct and non-empty");
    for (name, d) in &interp.relations {
        let arity = d.vars.len() / interp.dim;
        let mut rel = Compiled::new(host, &d.body, &d.vars)?;
        let mut verdict: HashMap<Vec<usize>, bool> = HashMap::new();
        let mut idx = vec![0usize; arity];
        let mut args = Vec::with_capacity(d.vars.len());
        'outer: loop {
            args.clear();
            for &k in &idx {
                args.extend_from_slice(&domain[k]);
            }
            let v = rel.eval(&args);
            let key: Vec<usize> = idx.iter().map(|&k| class_of[k]).collect();
            match verdict.get(&key) {
                Some(&prev) if prev != v => return Err(InterpError::NotInvariant(name.clone())),
                Some(_) => {}
                None => {
                    verdict.insert(key, v);
                }
            }
            let mut k = arity;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
            }
        }
        let mut tuples: Vec<Vec<usize>> = verdict
            .into_iter()
            .filter(|(_, v)| *v)
            .map(|(k, _)| k)
            .collect();
        tuples.sort();
        out.add_relation_indexed(name, arity, tuples);
    }
    let classes = classes
        .into_iter()
        .map(|c| c.into_iter().map(|k| domain[k].clone()).collect())
        .collect();
    Ok(Interpreted {
        structure: out,
        classes,
    })
}

/// Domain tuples in lexicographic order. Declared variables the domain
/// formula does not mention range freely. Each top-level conjunct is checked
/// as soon as the variables it mentions are bound, pruning the search.
pub fn domain_tuples(
    host: &FiniteStructure,
    interp: &Interpretation,
) -> Result<BTreeSet<Vec<usize>>, EvalError> {
    let vars = &interp.domain.vars;
    let d = interp.dim;
    let mut conjuncts = Vec::new();
    split_and(&interp.domain.body, &mut conjuncts);
    // levels[k]: conjuncts whose last mentioned variable is vars[k - 1]; level 0 holds sentences.
    let mut levels: Vec<Vec<Compiled>> = (0..=d).map(|_| Vec::new()).collect();
    for c in conjuncts {
        let free = c.free_vars();
        let level = vars
            .iter()
            .rposition(|v| free.contains(v))
            .map_or(0, |i| i + 1);
        levels[level].push(Compiled::new(host, c, vars)?);
    }
    let n = host.len();
    let mut out = BTreeSet::new();
    let mut cur = vec![0usize; d];
    if levels[0].iter_mut().all(|c| c.eval(&cur)) {
        extend(&mut levels, &mut cur, 0, n, &mut out);
    }
    Ok(out)
}

fn split_and<'f>(f: &'f Formula, out: &mut Vec<&'f Formula>) {
    match f {
        Formula::And(a, b) => {
            split_and(a, out);
            split_and(b, out);
        }
        other => out.push(other),
    }
}

fn extend(
    levels: &mut [Vec<Compiled>],
    cur: &mut Vec<usize>,
    k: usize,
    n: usize,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if k == cur.len() {
        out.insert(cur.clone());
        return;
    }
    for x in 0..n {
        cur[k] = x;
        if levels[k + 1].iter_mut().all(|c| c.eval(cur)) {
            extend(levels, cur, k + 1, n, out);
        }
    }
    cur[k] = 0;
}
