use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),
    #[error("relation {rel}: tuple {tuple:?} has length {len}, declared arity {arity}")]
    BadArity {
        rel: String,
        tuple: Vec<String>,
        len: usize,
        arity: usize,
    },
    #[error("relation {rel}: unknown element {elem:?}")]
    UnknownElement { rel: String, elem: String },
    #[error("malformed structure file: {0}")]
    Json(String),
}

/// On-disk form: `{"universe": [...], "relations": {name: {"arity": n, "tuples": [[...]]}}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub universe: Vec<String>,
    pub relations: BTreeMap<String, RelationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

/// Dense bitsets are used while `n^arity` stays below this many bits.
const DENSE_LIMIT: usize = 1 << 26;

#[derive(Debug, Clone)]
enum Table {
    Dense(Vec<u64>),
    Sparse(HashSet<Vec<u32>>),
}

#[derive(Debug, Clone)]
pub(crate) struct Relation {
    pub(crate) arity: usize,
    table: Table,
    tuples: BTreeSet<Vec<u32>>,
}

impl Relation {
    fn new(arity: usize, n: usize, tuples: BTreeSet<Vec<u32>>) -> Relation {
        let cells = n.checked_pow(arity as u32).filter(|&c| c <= DENSE_LIMIT);
        let table = match cells {
            Some(cells) => {
                let mut bits = vec![0u64; cells.div_ceil(64).max(1)];
                for t in &tuples {
                    let i = dense_index(n, t.iter().map(|&x| x as usize));
                    bits[i / 64] |= 1 << (i % 64);
                }
                Table::Dense(bits)
            }
            None => Table::Sparse(tuples.iter().cloned().collect()),
        };
        Relation {
            arity,
            table,
            tuples,
        }
    }

    #[inline]
    pub(crate) fn holds(&self, n: usize, args: &[usize]) -> bool {
        match &self.table {
            Table::Dense(bits) => {
                let i = dense_index(n, args.iter().copied());
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            Table::Sparse(set) => {
                let key: Vec<u32> = args.iter().map(|&x| x as u32).collect();
                set.contains(&key)
            }
        }
    }
}

#[inline]
fn dense_index<I: Iterator<Item = usize>>(n: usize, args: I) -> usize {
    args.fold(0, |acc, x| acc * n + x)
}

/// Finite universe of opaque ids with extensional named relations.
#[derive(Debug, Clone)]
pub struct FiniteStructure {
    universe: Vec<String>,
    index: HashMap<String, usize>,
    relations: BTreeMap<String, Relation>,
}

impl FiniteStructure {
    pub fn new<S: Into<String>>(
        universe: impl IntoIterator<Item = S>,
    ) -> Result<Self, StructureError> {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(StructureError::EmptyUniverse);
        }
        let mut index = HashMap::new();
        for (i, e) in universe.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(StructureError::DuplicateElement(e.clone()));
            }
        }
        Ok(FiniteStructure {
            universe,
            index,
            relations: BTreeMap::new(),
        })
    }

    /// Adds (or replaces) a relation given by element ids.
    pub fn add_relation<S: AsRef<str>>(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<S>>,
    ) -> Result<(), StructureError> {
        let mut idx = BTreeSet::new();
        for t in tuples {
            if t.len() != arity {
                return Err(StructureError::BadArity {
                    rel: name.to_string(),
                    tuple: t.iter().map(|s| s.as_ref().to_string()).collect(),
                    len: t.len(),
                    arity,
                });
            }
            let mut row = Vec::with_capacity(arity);
            for e in &t {
                let i =
                    self.index
                        .get(e.as_ref())
                        .ok_or_else(|| StructureError::UnknownElement {
                            rel: name.to_string(),
                            elem: e.as_ref().to_string(),
                        })?;
                row.push(*i as u32);
            }
            idx.insert(row);
        }
        self.insert_indexed(name, arity, idx);
        Ok(())
    }

    /// Adds a relation given by universe positions. Panics on out-of-range
    /// positions or wrong tuple length; used by in-crate builders.
    pub fn add_relation_indexed(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) {
        let n = self.universe.len();
        let set: BTreeSet<Vec<u32>> = tuples
            .into_iter()
            .map(|t| {
                assert_eq!(t.len(), arity, "relation {name}: wrong tuple length");
                t.into_iter()
                    .map(|x| {
                        assert!(x < n, "relation {name}: position {x} out of range");
                        x as u32
                    })
                    .collect()
            })
            .collect();
        self.insert_indexed(name, arity, set);
    }

    /// Adds a relation by testing every `arity`-tuple of positions.
    pub fn add_relation_fn(
        &mut self,
        name: &str,
        arity: usize,
        mut pred: impl FnMut(&[usize]) -> bool,
    ) {
        let n = self.universe.len();
        let mut tuples = Vec::new();
        let mut cur = vec![0usize; arity];
        loop {
            if pred(&cur) {
                tuples.push(cur.clone());
            }
            let mut k = arity;
            loop {
                if k == 0 {
                    self.add_relation_indexed(name, arity, tuples);
                    return;
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

    fn insert_indexed(&mut self, name: &str, arity: usize, tuples: BTreeSet<Vec<u32>>) {
        let rel = Relation::new(arity, self.universe.len(), tuples);
        self.relations.insert(name.to_string(), rel);
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn arity(&self, rel: &str) -> Option<usize> {
        self.relations.get(rel).map(|r| r.arity)
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }

    pub(crate) fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    /// Tuples of a relation as universe positions, sorted.
    pub fn tuples(&self, rel: &str) -> Option<Vec<Vec<usize>>> {
        self.relations.get(rel).map(|r| {
            r.tuples
                .iter()
                .map(|t| t.iter().map(|&x| x as usize).collect())
                .collect()
        })
    }

    pub fn holds(&self, rel: &str, args: &[usize]) -> Option<bool> {
        let r = self.relations.get(rel)?;
        (r.arity == args.len()).then(|| r.holds(self.universe.len(), args))
    }

    /// Induced substructure on the given positions (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<FiniteStructure, StructureError> {
        let mut s = FiniteStructure::new(keep.iter().map(|&i| self.universe[i].clone()))?;
        let new_pos: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        for (name, r) in &self.relations {
            let tuples: Vec<Vec<usize>> = r
                .tuples
                .iter()
                .filter_map(|t| {
                    t.iter()
                        .map(|&x| new_pos.get(&(x as usize)).copied())
                        .collect()
                })
                .collect();
            s.add_relation_indexed(name, r.arity, tuples);
        }
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| StructureError::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &StructureFile) -> Result<Self, StructureError> {
        let mut s = FiniteStructure::new(file.universe.iter().cloned())?;
        for (name, rel) in &file.relations {
            s.add_relation(name, rel.arity, rel.tuples.iter().cloned())?;
        }
        Ok(s)
    }

    pub fn to_file(&self) -> StructureFile {
        let relations = self
            .relations
            .iter()
            .map(|(name, r)| {
                let tuples = r
                    .tuples
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|&x| self.universe[x as usize].clone())
                            .collect()
                    })
                    .collect();
                (
                    name.clone(),
                    RelationFile {
                        arity: r.arity,
                        tuples,
                    },
                )
            })
            .collect();
        StructureFile {
            universe: self.universe.clone(),
            relations,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("structure serializes")
    }

    /// Isomorphism test by backtracking over relation-respecting bijections.
    /// Only relations present in both structures with equal arity are compared;
    /// a name present in only one of them makes the structures non-isomorphic.
    pub fn is_isomorphic(&self, other: &FiniteStructure) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let names: Vec<&String> = self.relations.keys().collect();
        if names.len() != other.relations.len() {
            return false;
        }
        for n in &names {
            match other.relations.get(*n) {
                Some(r)
                    if r.arity == self.relations[*n].arity
                        && r.tuples.len() == self.relations[*n].tuples.len() => {}
                _ => return false,
            }
        }
        // Invariant per element: how often it appears at each position of each relation.
        let profile = |s: &FiniteStructure| -> Vec<Vec<usize>> {
            let mut p = vec![Vec::new(); s.len()];
            for n in &names {
                let r = &s.relations[*n];
                let mut counts = vec![vec![0usize; r.arity]; s.len()];
                for t in &r.tuples {
                    for (k, &x) in t.iter().enumerate() {
                        counts[x as usize][k] += 1;
                    }
                }
                for (e, c) in counts.into_iter().enumerate() {
                    p[e].extend(c);
                }
            }
            p
        };
        let pa = profile(self);
        let pb = profile(other);
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        self.iso_extend(other, &names, &pa, &pb, 0, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_extend(
        &self,
        other: &FiniteStructure,
        names: &[&String],
        pa: &[Vec<usize>],
        pb: &[Vec<usize>],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == self.len() {
            return true;
        }
        for cand in 0..other.len() {
            if used[cand] || pa[k] != pb[cand] {
                continue;
            }
            map[k] = cand;
            if self.partial_ok(other, names, map, k) {
                used[cand] = true;
                if self.iso_extend(other, names, pa, pb, k + 1, map, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        map[k] = usize::MAX;
        false
    }

    /// Checks every tuple whose entries are all mapped and that mentions `k`.
    fn partial_ok(
        &self,
        other: &FiniteStructure,
        names: &[&String],
        map: &[usize],
        k: usize,
    ) -> bool {
        let n = other.len();
        for name in names {
            let ra = &self.relations[*name];
            let rb = &other.relations[*name];
            let ar = ra.arity;
            let mut cur = vec![0usize; ar];
            // Enumerate tuples over {0..=k} that contain k.
            let total = (k + 1).pow(ar as u32);
            for code in 0..total {
                let mut c = code;
                let mut has_k = false;
                for slot in cur.iter_mut() {
                    *slot = c % (k + 1);
                    c /= k + 1;
                    has_k |= *slot == k;
                }
                if !has_k {
                    continue;
                }
                let image: Vec<usize> = cur.iter().map(|&x| map[x]).collect();
                if ra.holds(self.len(), &cur) != rb.holds(n, &image) {
                    return false;
                }
            }
        }
        true
    }
}
