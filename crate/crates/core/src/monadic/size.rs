//! The equal-size relation `E`, addition on size classes and families of
//! finite sequences of integers.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::margin::Bounded;

use super::power::WeakPower;
use super::set::SetMask;

/// The primitive relation: disjoint and of the same size.
pub fn equal_size_disjoint(a: SetMask, b: SetMask) -> bool {
    a.is_disjoint(b) && a.len() == b.len()
}

/// Same size, derived from the primitive as `E(a \ b, b \ a)`.
pub fn equal_size_e(a: SetMask, b: SetMask) -> bool {
    equal_size_disjoint(a.minus(b), b.minus(a))
}

/// Whether `|a| + |b| = |c|`, decided by searching the truncation for
/// disjoint `a' ~ a`, `b' ~ b` with `a' ∪ b' ~ c`. When the truncation cannot
/// hold disjoint representatives of `a` and `b` the answer is excluded.
pub fn addition_on_classes(w: &WeakPower, a: SetMask, b: SetMask, c: SetMask) -> Bounded {
    let room = w.base().len().min(w.cap());
    if a.len() + b.len() > room {
        return Bounded::excluded();
    }
    let sets = w.sets();
    let found = sets.iter().filter(|&&a1| equal_size_e(a, a1)).any(|&a1| {
        sets.iter()
            .filter(|&&b1| equal_size_e(b, b1) && a1.is_disjoint(b1))
            .any(|&b1| {
                w.position(a1.union(b1))
                    .is_some_and(|k| equal_size_e(c, sets[k]))
            })
    });
    Bounded::exact(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    /// Requested sizes as a set.
    pub spec: Vec<usize>,
    /// First parameter pair (in enumeration order) realizing the spec.
    pub realized_by: Option<(Vec<usize>, Vec<usize>)>,
    /// Condition (a): each examined parameter row had a finite size set.
    /// Always true on a truncation; recorded with the largest set seen.
    pub finite_rows: bool,
    pub largest_row: usize,
    pub rows_examined: usize,
}

/// Searches parameter pairs `(b, c)` of the truncation for one whose size
/// spectrum `{|a| : S(a, b, c)}` equals the given spec.
pub fn sequence_family_check(
    w: &WeakPower,
    s: impl Fn(SetMask, SetMask, SetMask) -> bool,
    spec: &[usize],
) -> SequenceReport {
    let want: BTreeSet<usize> = spec.iter().copied().collect();
    // One representative per size suffices: S only sees a through E.
    let reps: Vec<SetMask> = (0..=w.cap().min(w.base().len()))
        .map(SetMask::full)
        .collect();
    let mut largest = 0;
    let mut rows = 0;
    let mut realized = None;
    'outer: for &b in w.sets() {
        for &c in w.sets() {
            rows += 1;
            let sizes: BTreeSet<usize> = reps
                .iter()
                .filter(|&&a| s(a, b, c))
                .map(|a| a.len())
                .collect();
            largest = largest.max(sizes.len());
            if sizes == want {
                realized = Some((b.iter().collect(), c.iter().collect()));
                break 'outer;
            }
        }
    }
    SequenceReport {
        spec: want.into_iter().collect(),
        realized_by: realized,
        finite_rows: true,
        largest_row: largest,
        rows_examined: rows,
    }
}
