//! Jumps, the relation `S` coding finite sets of sizes, and arithmetic on
//! size classes of finite sets of points.

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::formula::{parse_formula, Defn, FiniteStructure, Formula, Interpretation};
use crate::monadic::formulas::{addition, same_size, same_size_text};
use crate::monadic::{
    addition_on_classes, MultError, PlusDivides, SequenceReport, SetMask, WeakPower,
};

/// Consecutive pairs of the sorted set.
pub fn jumps<T: Ord + Clone>(b: &BTreeSet<T>) -> Vec<(T, T)> {
    let v: Vec<&T> = b.iter().collect();
    v.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

fn strictly_inside<T: Ord + Clone>(c: &BTreeSet<T>, lo: &T, hi: &T) -> usize {
    use std::ops::Bound::Excluded;
    c.range((Excluded(lo.clone()), Excluded(hi.clone())))
        .count()
}

/// `S(a, b, c)`: some jump `(x, y)` of `b` has `|((x, y)) ∩ c| = |a|`.
pub fn relation_s<T: Ord + Clone>(a: &BTreeSet<T>, b: &BTreeSet<T>, c: &BTreeSet<T>) -> bool {
    jumps(b)
        .iter()
        .any(|(x, y)| strictly_inside(c, x, y) == a.len())
}

/// `{|a| : S(a, b, c)}`.
pub fn size_spectrum<T: Ord + Clone>(b: &BTreeSet<T>, c: &BTreeSet<T>) -> BTreeSet<usize> {
    jumps(b)
        .iter()
        .map(|(x, y)| strictly_inside(c, x, y))
        .collect()
}

/// Parameters `(b, c)` on the integers whose spectrum is the given set:
/// one jump per distinct size, holding that many points of `c`.
pub fn code_sizes(sizes: &BTreeSet<usize>) -> (BTreeSet<i64>, BTreeSet<i64>) {
    let mut b = BTreeSet::new();
    let mut c = BTreeSet::new();
    if sizes.is_empty() {
        return (b, c);
    }
    let mut at = 0i64;
    b.insert(at);
    for &n in sizes {
        for _ in 0..n {
            at += 1;
            c.insert(at);
        }
        at += 1;
        b.insert(at);
    }
    (b, c)
}

/// Points used by [`code_sizes`].
pub fn coding_width(sizes: &BTreeSet<usize>) -> usize {
    if sizes.is_empty() {
        0
    } else {
        sizes.iter().sum::<usize>() + sizes.len() + 1
    }
}

/// Searches parameters `(b, c)` on the points `0..n` whose spectrum under
/// [`relation_s`] is exactly the set of `spec`. `S` sees `c` only through
/// the number of its points inside each jump of `b`, so for each `b` the
/// search runs over those counts and fills each jump from the left.
pub fn realize_spectrum(n: usize, spec: &[usize]) -> SequenceReport {
    let want: BTreeSet<usize> = spec.iter().copied().collect();
    let sizes: Vec<usize> = want.iter().copied().collect();
    let mut rows = 0;
    let mut largest = 0;
    let mut found = None;
    let max_b = if want.is_empty() {
        1
    } else {
        (want.len() + 1).min(n)
    };
    'search: for k in 0..=max_b {
        for b in SetMask::all_up_to(n, k)
            .into_iter()
            .filter(|b| b.len() == k)
        {
            let pts: Vec<usize> = b.iter().collect();
            let room: Vec<usize> = pts.windows(2).map(|w| w[1] - w[0] - 1).collect();
            let mut counts = vec![0usize; room.len()];
            loop {
                rows += 1;
                let mut c = BTreeSet::new();
                for (j, w) in pts.windows(2).enumerate() {
                    c.extend(w[0] + 1..w[0] + 1 + sizes.get(counts[j]).copied().unwrap_or(0));
                }
                let fits = counts
                    .iter()
                    .zip(&room)
                    .all(|(&i, &r)| sizes.get(i).is_none_or(|&s| s <= r));
                if fits {
                    let b_set: BTreeSet<usize> = pts.iter().copied().collect();
                    let got = size_spectrum(&b_set, &c);
                    largest = largest.max(got.len());
                    if got == want {
                        found = Some((pts.clone(), c.into_iter().collect()));
                        break 'search;
                    }
                }
                // Next count vector over the indices of `sizes`.
                let mut j = 0;
                while j < counts.len() {
                    counts[j] += 1;
                    if counts[j] < sizes.len().max(1) {
                        break;
                    }
                    counts[j] = 0;
                    j += 1;
                }
                if j == counts.len() {
                    break;
                }
            }
        }
    }
    SequenceReport {
        spec: want.into_iter().collect(),
        realized_by: found,
        finite_rows: true,
        largest_row: largest,
        rows_examined: rows,
    }
}

/// `W(T, B)` on the points `0..n` with betweenness `B`.
pub fn interval_power(n: usize, cap: usize) -> WeakPower {
    let mut base = FiniteStructure::new((0..n).map(|i| format!("t{i}"))).expect("non-empty");
    base.add_relation_fn("B", 3, |t| {
        (t[0] <= t[1] && t[1] <= t[2]) || (t[2] <= t[1] && t[1] <= t[0])
    });
    WeakPower::new(base, cap).expect("no reserved names")
}

/// `S` on the sets of [`interval_power`], whose base positions are in order.
pub fn relation_s_masks(a: SetMask, b: SetMask, c: SetMask) -> bool {
    let to = |m: SetMask| -> BTreeSet<usize> { m.iter().collect() };
    relation_s(&to(a), &to(b), &to(c))
}

/// `S(a, b, c)` as a formula over `W(T, B)` expanded by `E`.
pub fn relation_s_formula() -> Formula {
    let mem = |z: &str, x: &str| format!("(and (atom {z}) (sub {z} {x}))");
    let strict = |x: &str, z: &str, y: &str| {
        format!("(and (B {x} {z} {y}) (and (not (= {z} {x})) (not (= {z} {y}))))")
    };
    let text = format!(
        "(exists sx (exists sy (and {} (and {} (and (not (= sx sy)) (and \
           (forall sz (implies {} (not {}))) \
           (exists sd (and (forall sz (implies (atom sz) (and (implies (sub sz sd) (and (sub sz c) {})) (implies (and (sub sz c) {}) (sub sz sd))))) {}))))))))",
        mem("sx", "b"),
        mem("sy", "b"),
        mem("sz", "b"),
        strict("sx", "sz", "sy"),
        strict("sx", "sz", "sy"),
        strict("sx", "sz", "sy"),
        same_size_text("sd", "a"),
    );
    parse_formula(&text).expect("built-in formula parses")
}

/// Size classes of finite sets with class addition, over `W(T, B)`
/// expanded by `E` (see [`WeakPower::structure_with_e`]). Multiplication is
/// not part of the bundle; [`lattice_mul`] derives it from `+` and `|`.
pub fn arithmetic_interpretation() -> Interpretation {
    Interpretation {
        dim: 1,
        domain: Defn::new(&["x"], parse_formula("(= x x)").expect("parses")),
        equiv: Defn::new(&["x", "y"], same_size("x", "y")),
        relations: BTreeMap::from([(
            "plus".to_string(),
            Defn::new(&["a", "b", "c"], addition("a", "b", "c")),
        )]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("grid of {grid} points too small: needs at least {needed}")]
    TooSmall { grid: usize, needed: usize },
    #[error(transparent)]
    Mult(#[from] MultError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithOutcome {
    pub value: usize,
    pub oracle: usize,
    pub grid: usize,
    pub trace: Vec<String>,
}

/// Grid size needed by [`lattice_add`].
pub fn min_grid_add(m: usize, n: usize) -> usize {
    (m + n).max(1)
}

/// `m + n` as the class `c` with `A([a], [b], [c])`, searched among one
/// representative per size on a grid of `grid` points.
pub fn lattice_add(m: usize, n: usize, grid: Option<usize>) -> Result<ArithOutcome, ArithError> {
    let needed = min_grid_add(m, n);
    let grid = grid.unwrap_or(needed);
    if grid < needed {
        return Err(ArithError::TooSmall { grid, needed });
    }
    let w = interval_power(grid, needed);
    let a = SetMask::full(m);
    let b = SetMask::full(n);
    let mut trace = vec![format!("a = {}, b = {}", w.label(a), w.label(b))];
    for k in 0..=needed {
        let c = SetMask::full(k);
        if addition_on_classes(&w, a, b, c).is_true() {
            trace.push(format!("A([a], [b], [c]) holds for c = {}", w.label(c)));
            return Ok(ArithOutcome {
                value: k,
                oracle: m + n,
                grid,
                trace,
            });
        }
    }
    Err(ArithError::TooSmall { grid, needed })
}

/// Grid size needed by [`lattice_mul`]: the widest coding used by the
/// divisibility tests below the bound `(m+n)(m+n+1)`.
pub fn min_grid_mul(m: usize, n: usize) -> usize {
    let bound = mul_bound(m, n);
    bound * (bound + 1) / 2 + bound + 1
}

fn mul_bound(m: usize, n: usize) -> usize {
    let s = m + n;
    (s * (s + 1)).max(2)
}

/// Addition of size classes through disjoint consecutive representatives.
fn class_sum(x: usize, y: usize) -> usize {
    let a: BTreeSet<usize> = (0..x).collect();
    let b: BTreeSet<usize> = (x..x + y).collect();
    a.union(&b).count()
}

/// `k | t` as `t ∈ k^ℕ` through property (*): the only candidate `X`
/// containing `t` is the chain `k, k+k, …` up to `t`, which is coded by
/// `(b, c)` and accepted when `S` recovers it and (*) holds on the sizes.
fn coded_divides(k: usize, t: usize, grid: usize, widest: &Cell<usize>) -> bool {
    let mut chain = BTreeSet::new();
    let mut cur = k;
    while cur < t {
        chain.insert(cur);
        cur = class_sum(cur, k);
    }
    if cur != t {
        return false;
    }
    chain.insert(t);
    let width = coding_width(&chain);
    widest.set(widest.get().max(width));
    if width > grid {
        return false;
    }
    let (b, c) = code_sizes(&chain);
    let x = size_spectrum(&b, &c);
    if x != chain {
        return false;
    }
    x.contains(&k)
        && x.iter().any(|&top| {
            x.iter().all(|&y| !x.contains(&class_sum(top, y)))
                && x.iter()
                    .filter(|&&y| y != top)
                    .all(|&y| x.contains(&class_sum(k, y)))
        })
}

/// `m · n` through the `(+, |)` pipeline with divisibility decided on codes
/// of the relation `S`. A zero factor gives the class of the empty set.
pub fn lattice_mul(m: usize, n: usize, grid: Option<usize>) -> Result<ArithOutcome, ArithError> {
    if m == 0 || n == 0 {
        return Ok(ArithOutcome {
            value: 0,
            oracle: 0,
            grid: grid.unwrap_or(0),
            trace: vec!["a zero factor gives the class of the empty set".into()],
        });
    }
    let needed = min_grid_mul(m, n);
    let grid = grid.unwrap_or(needed);
    let bound = mul_bound(m, n);
    let widest = Cell::new(0);
    let pd = PlusDivides::with_ops(
        bound,
        |x, y| Some(class_sum(x, y)).filter(|&z| z <= bound),
        |k, t| coded_divides(k, t, grid, &widest),
    );
    if widest.get() > grid {
        return Err(ArithError::TooSmall {
            grid,
            needed: widest.get(),
        });
    }
    let (value, mut steps) = pd.multiply_traced(m, n)?;
    let mut trace = vec![format!(
        "divisibility on 1..{bound} decided by S-codings of width at most {}",
        widest.get()
    )];
    trace.append(&mut steps);
    Ok(ArithOutcome {
        value,
        oracle: m * n,
        grid,
        trace,
    })
}
