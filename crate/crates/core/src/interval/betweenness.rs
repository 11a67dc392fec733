use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetweennessReport {
    /// Some `a, b` satisfy both clauses.
    pub bounded: bool,
    pub endpoints: Option<(usize, usize)>,
    /// The recovered order from `a` to `b`.
    pub order: Option<Vec<usize>>,
    /// `"a"` when no pair of endpoints yields a common total order, `"b"`
    /// when some does but `B` is not its betweenness relation.
    pub failing_clause: Option<&'static str>,
    /// `((x, y)) ≠ ∅` for all `x ≠ y` on this finite set.
    pub dense: bool,
}

/// Checks whether `b` is a bounded betweenness relation on `{0..n}` by
/// trying every candidate pair of endpoints.
pub fn betweenness_axioms(n: usize, b: impl Fn(usize, usize, usize) -> bool) -> BetweennessReport {
    let mut clause_a_ok = None;
    for lo in 0..n {
        for hi in 0..n {
            let le1 = |x: usize, y: usize| b(lo, x, y);
            let le2 = |x: usize, y: usize| b(x, y, hi);
            let same = (0..n).all(|x| (0..n).all(|y| le1(x, y) == le2(x, y)));
            if !same || !is_total_order(n, &le1) {
                continue;
            }
            if !(0..n).all(|x| le1(lo, x) && le1(x, hi)) {
                continue;
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&x| (0..n).filter(|&y| le1(y, x)).count());
            let matches = (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        b(x, y, z) == ((le1(x, y) && le1(y, z)) || (le1(z, y) && le1(y, x)))
                    })
                })
            });
            if matches {
                return BetweennessReport {
                    bounded: true,
                    endpoints: Some((lo, hi)),
                    order: Some(order),
                    failing_clause: None,
                    dense: is_dense(n, &b),
                };
            }
            clause_a_ok.get_or_insert((lo, hi));
        }
    }
    BetweennessReport {
        bounded: false,
        endpoints: None,
        order: None,
        failing_clause: Some(if clause_a_ok.is_some() { "b" } else { "a" }),
        dense: is_dense(n, &b),
    }
}

fn is_total_order(n: usize, le: &impl Fn(usize, usize) -> bool) -> bool {
    for x in 0..n {
        if !le(x, x) {
            return false;
        }
        for y in 0..n {
            if x != y && le(x, y) == le(y, x) {
                // Neither comparable nor antisymmetric.
                return false;
            }
            for z in 0..n {
                if le(x, y) && le(y, z) && !le(x, z) {
                    return false;
                }
            }
        }
    }
    true
}

fn is_dense(n: usize, b: &impl Fn(usize, usize, usize) -> bool) -> bool {
    (0..n).all(|x| (0..n).all(|y| x == y || (0..n).any(|z| z != x && z != y && b(x, z, y))))
}
