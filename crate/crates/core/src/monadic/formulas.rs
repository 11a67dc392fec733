//! The monadic definitions as first-order formulas over the set-level
//! structures built by [`super::WeakPower`]. Set variables range over the
//! truncation; base elements are atoms.

use crate::formula::{parse_formula, Formula};

fn f(text: &str) -> Formula {
    parse_formula(text).expect("built-in formula parses")
}

/// `a` is an atom below `x`.
fn mem(a: &str, x: &str) -> String {
    format!("(and (atom {a}) (sub {a} {x}))")
}

fn iff(p: &str, q: &str) -> String {
    format!("(and (implies {p} {q}) (implies {q} {p}))")
}

/// `X` is closed under `prod`: every product of members exists in `X`.
pub fn subsemigroup(x: &str) -> Formula {
    f(&subsemigroup_text(x))
}

fn subsemigroup_text(x: &str) -> String {
    format!(
        "(forall ssa (forall ssb (implies (and {} {}) (exists ssc (and {} (prod ssa ssb ssc))))))",
        mem("ssa", x),
        mem("ssb", x),
        mem("ssc", x)
    )
}

/// `s` lies in a finite sub-semigroup.
pub fn torsion(s: &str) -> Formula {
    f(&torsion_text(s))
}

fn torsion_text(s: &str) -> String {
    format!("(exists tx (and (sub {s} tx) {}))", subsemigroup_text("tx"))
}

/// `∃x ∈ X (X ∩ x·X = ∅ ∧ s·(X \ {x}) ⊆ X)` with products read elementwise.
fn star_clause_text(s: &str, x: &str) -> String {
    format!(
        "(exists sx (and {} (and \
           (forall sa (implies {} (forall sc (implies (prod sx sa sc) (not (sub sc {x})))))) \
           (forall sb (implies (and {} (not (= sb sx))) (exists sd (and {} (prod {s} sb sd))))))))",
        mem("sx", x),
        mem("sa", x),
        mem("sb", x),
        mem("sd", x)
    )
}

/// Property (*) of `s` and `X`.
pub fn star(s: &str, x: &str) -> Formula {
    f(&star_text(s, x))
}

fn star_text(s: &str, x: &str) -> String {
    format!(
        "(and (sub {s} {x}) (and (not {}) {}))",
        torsion_text(s),
        star_clause_text(s, x)
    )
}

/// `t ∈ s^ℕ`: `t` is in every finite sub-semigroup containing a torsion `s`,
/// or in some `X` with property (*).
pub fn in_generated(s: &str, t: &str) -> Formula {
    let smallest = format!(
        "(and {} (forall gx (implies (and (sub {s} gx) {}) (sub {t} gx))))",
        torsion_text(s),
        subsemigroup_text("gx")
    );
    f(&format!(
        "(or {smallest} (exists gy (and (sub {t} gy) {})))",
        star_text(s, "gy")
    ))
}

/// `u = a \ b`.
fn diff_text(u: &str, a: &str, b: &str) -> String {
    format!(
        "(forall dz (implies (atom dz) {}))",
        iff(
            &format!("(sub dz {u})"),
            &format!("(and (sub dz {a}) (not (sub dz {b})))")
        )
    )
}

/// Same size through `E(a \ b, b \ a)`; needs `E` in the structure.
pub fn same_size(a: &str, b: &str) -> Formula {
    f(&same_size_text(a, b))
}

pub(crate) fn same_size_text(a: &str, b: &str) -> String {
    let u = format!("u_{a}_{b}");
    let v = format!("v_{a}_{b}");
    format!(
        "(exists {u} (exists {v} (and {} (and {} (E {u} {v})))))",
        diff_text(&u, a, b),
        diff_text(&v, b, a)
    )
}

/// The displayed relation `A(a, b, c)`: disjoint representatives of the
/// classes of `a` and `b` whose union represents the class of `c`.
pub fn addition(a: &str, b: &str, c: &str) -> Formula {
    let (a1, b1, c1) = ("ra", "rb", "rc");
    let disjoint =
        format!("(forall dz (implies (atom dz) (not (and (sub dz {a1}) (sub dz {b1})))))");
    let union = format!(
        "(forall dz (implies (atom dz) {}))",
        iff(
            &format!("(sub dz {c1})"),
            &format!("(or (sub dz {a1}) (sub dz {b1}))")
        )
    );
    f(&format!(
        "(exists {a1} (exists {b1} (exists {c1} (and {} (and {} (and {} (and {disjoint} {union})))))))",
        same_size_text(a, a1),
        same_size_text(b, b1),
        same_size_text(c, c1)
    ))
}
