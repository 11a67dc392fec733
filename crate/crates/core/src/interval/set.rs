use std::fmt;
use std::str::FromStr;

use crate::rational::{parse_q, DisplayQ, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval [{0}, {1}] has its left endpoint above the right one")]
    Reversed(String, String),
    #[error("cannot parse interval set: {0}")]
    Parse(String),
    #[error("the empty set has no triple")]
    Empty,
}

/// A finite union of closed rational intervals in canonical form: sorted,
/// pairwise separated by a gap (`bᵢ < aᵢ₊₁`). Degenerate `[a, a]` allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntervalSet {
    parts: Vec<(Q, Q)>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn interval(a: Q, b: Q) -> Result<IntervalSet, IntervalError> {
        IntervalSet::from_intervals([(a, b)])
    }

    pub fn point(a: Q) -> IntervalSet {
        IntervalSet {
            parts: vec![(a.clone(), a)],
        }
    }

    /// Union of arbitrary closed intervals, canonicalized.
    pub fn from_intervals(
        items: impl IntoIterator<Item = (Q, Q)>,
    ) -> Result<IntervalSet, IntervalError> {
        let mut v: Vec<(Q, Q)> = Vec::new();
        for (a, b) in items {
            if a > b {
                return Err(IntervalError::Reversed(
                    DisplayQ(&a).to_string(),
                    DisplayQ(&b).to_string(),
                ));
            }
            v.push((a, b));
        }
        Ok(IntervalSet::normalize(v))
    }

    fn normalize(mut v: Vec<(Q, Q)>) -> IntervalSet {
        v.sort();
        let mut parts: Vec<(Q, Q)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match parts.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => parts.push((a, b)),
            }
        }
        IntervalSet { parts }
    }

    pub fn parts(&self) -> &[(Q, Q)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.parts.iter().any(|(a, b)| a <= x && x <= b)
    }

    pub fn join(&self, o: &IntervalSet) -> IntervalSet {
        IntervalSet::normalize(self.parts.iter().chain(o.parts.iter()).cloned().collect())
    }

    pub fn meet(&self, o: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for (a, b) in &self.parts {
            for (c, d) in &o.parts {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo <= hi {
                    out.push((lo.clone(), hi.clone()));
                }
            }
        }
        IntervalSet::normalize(out)
    }

    pub fn leq(&self, o: &IntervalSet) -> bool {
        self.parts
            .iter()
            .all(|(a, b)| o.parts.iter().any(|(c, d)| c <= a && b <= d))
    }

    pub fn components(&self) -> Vec<IntervalSet> {
        self.parts
            .iter()
            .map(|p| IntervalSet {
                parts: vec![p.clone()],
            })
            .collect()
    }

    /// Exactly one component. The empty set is not connected.
    pub fn is_connected(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_atom(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].0 == self.parts[0].1
    }

    /// Every endpoint, sorted, without repetition.
    pub fn endpoints(&self) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::new();
        for (a, b) in &self.parts {
            out.push(a.clone());
            if a != b {
                out.push(b.clone());
            }
        }
        out
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, (a, b)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[{},{}]", DisplayQ(a), DisplayQ(b))?;
        }
        Ok(())
    }
}

impl FromStr for IntervalSet {
    type Err = IntervalError;

    /// Accepts `[a,b] [c,d] …` with rationals `p` or `p/q`; `{}` or blank is empty.
    fn from_str(text: &str) -> Result<IntervalSet, IntervalError> {
        let t = text.trim();
        if t.is_empty() || t == "{}" || t == "∅" {
            return Ok(IntervalSet::empty());
        }
        let err = |m: &str| IntervalError::Parse(format!("{m} in {text:?}"));
        let mut items = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(|| err("expected '['"))?;
            let close = body.find(']').ok_or_else(|| err("missing ']'"))?;
            let (a, b) = body[..close]
                .split_once(',')
                .ok_or_else(|| err("missing ','"))?;
            let a = parse_q(a).map_err(|e| err(&e.to_string()))?;
            let b = parse_q(b).map_err(|e| err(&e.to_string()))?;
            items.push((a, b));
            rest = body[close + 1..].trim_start();
        }
        IntervalSet::from_intervals(items)
    }
}
