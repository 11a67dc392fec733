use std::collections::HashMap;

use crate::formula::{FiniteStructure, StructureError};

use super::semigroup::Semigroup;
use super::set::{SetMask, MAX_BASE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PowerError {
    #[error("base universe has {0} elements, at most {MAX_BASE} supported")]
    BaseTooLarge(usize),
    #[error("base relation name {0:?} clashes with a set-level relation")]
    ReservedName(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Relation names used on the set level. Base relations keep their names
/// and hold on tuples of atoms.
pub const RESERVED: [&str; 5] = ["sub", "atom", "empty", "E", "mul"];

/// The truncation of `W(M)` to subsets with at most `cap` elements.
#[derive(Debug, Clone)]
pub struct WeakPower {
    base: FiniteStructure,
    cap: usize,
    sets: Vec<SetMask>,
    index: HashMap<SetMask, usize>,
}

impl WeakPower {
    pub fn new(base: FiniteStructure, cap: usize) -> Result<WeakPower, PowerError> {
        if base.len() > MAX_BASE {
            return Err(PowerError::BaseTooLarge(base.len()));
        }
        if let Some(r) = base.relation_names().find(|r| RESERVED.contains(r)) {
            return Err(PowerError::ReservedName(r.to_string()));
        }
        let sets = SetMask::all_up_to(base.len(), cap);
        let index = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(WeakPower {
            base,
            cap,
            sets,
            index,
        })
    }

    /// A bare set of `n` points named `m0, m1, …`.
    pub fn pure_set(n: usize, cap: usize) -> WeakPower {
        let base = FiniteStructure::new((0..n).map(|i| format!("m{i}"))).expect("non-empty base");
        WeakPower::new(base, cap).expect("plain set has no relations")
    }

    pub fn base(&self) -> &FiniteStructure {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn sets(&self) -> &[SetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn position(&self, s: SetMask) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn set(&self, pos: usize) -> SetMask {
        self.sets[pos]
    }

    pub fn atom(&self, base_pos: usize) -> usize {
        self.index[&SetMask::singleton(base_pos)]
    }

    pub fn label(&self, s: SetMask) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.base.universe()[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The set-level structure with `sub`, `atom`, `empty` and the base
    /// relations on atoms.
    pub fn structure(&self) -> FiniteStructure {
        let ids: Vec<String> = self.sets.iter().map(|&s| self.label(s)).collect();
        let mut out = FiniteStructure::new(ids).expect("labels are distinct");
        let m = self.sets.len();
        let mut sub = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if self.sets[i].is_subset(self.sets[j]) {
                    sub.push(vec![i, j]);
                }
            }
        }
        out.add_relation_indexed("sub", 2, sub);
        let atoms = (0..m).filter(|&i| self.sets[i].len() == 1).map(|i| vec![i]);
        out.add_relation_indexed("atom", 1, atoms);
        out.add_relation_indexed("empty", 1, [vec![self.index[&SetMask::EMPTY]]]);
        let names: Vec<String> = self.base.relation_names().map(str::to_string).collect();
        for r in names {
            let arity = self.base.arity(&r).expect("listed relation");
            let lifted = self
                .base
                .tuples(&r)
                .expect("listed relation")
                .into_iter()
                .map(|t| t.into_iter().map(|x| self.atom(x)).collect());
            out.add_relation_indexed(&r, arity, lifted);
        }
        out
    }

    /// [`Self::structure`] expanded by `E(a, b)`: disjoint and of equal size.
    pub fn structure_with_e(&self) -> FiniteStructure {
        let mut out = self.structure();
        let m = self.sets.len();
        let mut e = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let (a, b) = (self.sets[i], self.sets[j]);
                if a.is_disjoint(b) && a.len() == b.len() {
                    e.push(vec![i, j]);
                }
            }
        }
        out.add_relation_indexed("E", 2, e);
        out
    }

    /// [`Self::structure`] expanded by the setwise product `mul(X, Y, Z)`,
    /// recorded only where `X·Y` exists and fits the cap.
    pub fn structure_with_product<S: Semigroup>(&self, s: &S) -> FiniteStructure {
        assert_eq!(s.len(), self.base.len(), "semigroup must live on the base");
        let mut out = self.structure();
        let m = self.sets.len();
        let mut mul = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if let Ok(z) = super::semigroup::set_product(s, self.sets[i], self.sets[j]) {
                    if let Some(k) = self.position(z) {
                        mul.push(vec![i, j, k]);
                    }
                }
            }
        }
        out.add_relation_indexed("mul", 3, mul);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_is_a_partial_order_and_atoms_biject() {
        let mut base = FiniteStructure::new(["a", "b", "c", "d"]).unwrap();
        base.add_relation("R", 2, vec![vec!["a", "b"]]).unwrap();
        let w = WeakPower::new(base, 2).unwrap();
        assert_eq!(w.len(), 1 + 4 + 6);
        let s = w.structure();
        let n = s.len();
        for x in 0..n {
            assert!(s.holds("sub", &[x, x]).unwrap());
            for y in 0..n {
                if x != y && s.holds("sub", &[x, y]).unwrap() {
                    assert!(!s.holds("sub", &[y, x]).unwrap());
                }
                for z in 0..n {
                    if s.holds("sub", &[x, y]).unwrap() && s.holds("sub", &[y, z]).unwrap() {
                        assert!(s.holds("sub", &[x, z]).unwrap());
                    }
                }
            }
        }
        assert_eq!(s.tuples("atom").unwrap().len(), 4);
        assert_eq!(s.tuples("R").unwrap(), vec![vec![w.atom(0), w.atom(1)]]);
        let ab: SetMask = [0, 1].into_iter().collect();
        assert_eq!(s.universe()[w.position(ab).unwrap()], "{a,b}");
    }

    #[test]
    fn reserved_names_rejected() {
        let mut base = FiniteStructure::new(["a"]).unwrap();
        base.add_relation("sub", 1, vec![vec!["a"]]).unwrap();
        assert!(matches!(
            WeakPower::new(base, 1),
            Err(PowerError::ReservedName(_))
        ));
    }
}
