//! Convex polyhedra in `ℚ²` given by finitely many linear constraints, some
//! of them strict.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::incidence::AffinePoint;
use crate::rational::{fmt_q, parse_q, Q};

use super::ConvexError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rel {
    Lt,
    Le,
    Eq,
}

impl Rel {
    fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
        }
    }
}

/// `a·x + b·y (<|<=|=) c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(a: Q, b: Q, rel: Rel, c: Q) -> Constraint {
        Constraint { a, b, c, rel }
    }

    pub fn holds(&self, p: &AffinePoint) -> bool {
        let v = &self.a * &p.x + &self.b * &p.y;
        match self.rel {
            Rel::Lt => v < self.c,
            Rel::Le => v <= self.c,
            Rel::Eq => v == self.c,
        }
    }
}

fn term(out: &mut String, coef: &Q, var: &str) {
    if coef.is_zero() {
        return;
    }
    let neg = coef.is_negative();
    let mag = coef.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !mag.is_one() {
        out.push_str(&fmt_q(&mag));
        out.push('*');
    }
    out.push_str(var);
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = String::new();
        term(&mut lhs, &self.a, "x");
        term(&mut lhs, &self.b, "y");
        if lhs.is_empty() {
            lhs.push('0');
        }
        write!(f, "{lhs} {} {}", self.rel.symbol(), fmt_q(&self.c))
    }
}

/// Parses one side of a constraint into `(a, b, k)` for `a·x + b·y + k`.
fn linear(text: &str) -> Result<(Q, Q, Q), ConvexError> {
    let bad = || ConvexError::Parse(text.trim().to_string());
    let mut acc = (Q::zero(), Q::zero(), Q::zero());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('*') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, var) = match body.strip_suffix('x').or_else(|| body.strip_suffix('y')) {
            Some(c) => {
                let var = body.chars().last();
                let c = c.strip_suffix('*').unwrap_or(c);
                let coef = if c.is_empty() {
                    Q::one()
                } else {
                    parse_q(c).map_err(|_| bad())?
                };
                (coef, var)
            }
            None => (parse_q(body).map_err(|_| bad())?, None),
        };
        let coef = if neg { -coef } else { coef };
        match var {
            Some('x') => acc.0 += coef,
            Some('y') => acc.1 += coef,
            _ => acc.2 += coef,
        }
    }
    Ok(acc)
}

impl FromStr for Constraint {
    type Err = ConvexError;

    /// Accepts `<`, `<=`, `=`, `>=` and `>` with linear terms on both sides.
    fn from_str(s: &str) -> Result<Constraint, ConvexError> {
        let ops = ["<=", ">=", "<", ">", "="];
        let (pos, op) = ops
            .iter()
            .filter_map(|op| s.find(op).map(|p| (p, *op)))
            .min_by_key(|(p, op)| (*p, std::cmp::Reverse(op.len())))
            .ok_or_else(|| ConvexError::Parse(s.trim().to_string()))?;
        let (l, r) = (linear(&s[..pos])?, linear(&s[pos + op.len()..])?);
        let (a, b, c) = (l.0 - r.0, l.1 - r.1, r.2 - l.2);
        Ok(match op {
            "<" => Constraint::new(a, b, Rel::Lt, c),
            "<=" => Constraint::new(a, b, Rel::Le, c),
            "=" => Constraint::new(a, b, Rel::Eq, c),
            ">" => Constraint::new(-a, -b, Rel::Lt, -c),
            _ => Constraint::new(-a, -b, Rel::Le, -c),
        })
    }
}

/// `a·x + b·y ≤ c`, or `< c` when strict. Scaled so the first nonzero
/// coefficient has absolute value one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Half {
    a: Q,
    b: Q,
    c: Q,
    strict: bool,
}

impl Half {
    fn new(a: Q, b: Q, c: Q, strict: bool) -> Half {
        let s = if a.is_zero() { b.abs() } else { a.abs() };
        if s.is_zero() {
            return Half { a, b, c, strict };
        }
        Half {
            a: a / &s,
            b: b / &s,
            c: c / &s,
            strict,
        }
    }

    fn dot(&self, x: &Q, y: &Q) -> Q {
        &self.a * x + &self.b * y
    }

    fn holds(&self, p: &AffinePoint) -> bool {
        let v = self.dot(&p.x, &p.y);
        if self.strict {
            v < self.c
        } else {
            v <= self.c
        }
    }

    fn closed(&self) -> Half {
        Half {
            strict: false,
            ..self.clone()
        }
    }

    fn negated(&self) -> Half {
        Half::new(-&self.a, -&self.b, -&self.c, false)
    }
}

/// Generators of a nonempty closed polyhedron:
/// `conv(verts) + cone(rays) + span(lines)`.
#[derive(Debug, Clone, Default)]
struct Gens {
    verts: Vec<AffinePoint>,
    rays: Vec<(Q, Q)>,
    lines: Vec<(Q, Q)>,
}

fn normalize_dir(x: Q, y: Q) -> (Q, Q) {
    let s = if x.is_zero() { y.abs() } else { x.abs() };
    (x / &s, y / s)
}

impl Gens {
    /// Supremum of `a·x + b·y`; `None` when unbounded above.
    fn sup(&self, a: &Q, b: &Q) -> Option<Q> {
        let dot = |x: &Q, y: &Q| a * x + b * y;
        if self.lines.iter().any(|(x, y)| !dot(x, y).is_zero()) {
            return None;
        }
        if self.rays.iter().any(|(x, y)| dot(x, y).is_positive()) {
            return None;
        }
        self.verts.iter().map(|p| dot(&p.x, &p.y)).max()
    }

    fn inf(&self, a: &Q, b: &Q) -> Option<Q> {
        self.sup(&-a, &-b).map(|v| -v)
    }

    fn dim(&self) -> usize {
        let base = &self.verts[0];
        let dirs = self.verts[1..]
            .iter()
            .map(|p| (&p.x - &base.x, &p.y - &base.y))
            .chain(self.rays.iter().cloned())
            .chain(self.lines.iter().cloned());
        let mut first: Option<(Q, Q)> = None;
        for (x, y) in dirs {
            if x.is_zero() && y.is_zero() {
                continue;
            }
            match &first {
                None => first = Some((x, y)),
                Some((fx, fy)) => {
                    if !(fx * &y - fy * &x).is_zero() {
                        return 2;
                    }
                }
            }
        }
        usize::from(first.is_some())
    }
}

/// Generators of `{p : h(p) ≤ c for every h}`, ignoring strictness.
/// `None` when empty.
fn generators(hs: &[Half]) -> Option<Gens> {
    let cross = |h: &Half, k: &Half| &h.a * &k.b - &h.b * &k.a;
    let satisfies = |p: &AffinePoint| hs.iter().all(|h| h.dot(&p.x, &p.y) <= h.c);
    if hs.is_empty() {
        return Some(Gens {
            verts: vec![AffinePoint::int(0, 0)],
            rays: vec![],
            lines: vec![(Q::one(), Q::zero()), (Q::zero(), Q::one())],
        });
    }
    let pointed = hs.iter().any(|h| hs.iter().any(|k| !cross(h, k).is_zero()));
    if pointed {
        let mut verts: Vec<AffinePoint> = Vec::new();
        for (i, h) in hs.iter().enumerate() {
            for k in &hs[i + 1..] {
                let d = cross(h, k);
                if d.is_zero() {
                    continue;
                }
                let p = AffinePoint::new(
                    (&h.c * &k.b - &h.b * &k.c) / &d,
                    (&h.a * &k.c - &h.c * &k.a) / &d,
                );
                if satisfies(&p) && !verts.contains(&p) {
                    verts.push(p);
                }
            }
        }
        if verts.is_empty() {
            return None;
        }
        let mut rays = Vec::new();
        for h in hs {
            for d in [(-&h.b, h.a.clone()), (h.b.clone(), -&h.a)] {
                if hs.iter().all(|k| !k.dot(&d.0, &d.1).is_positive()) {
                    let d = normalize_dir(d.0, d.1);
                    if !rays.contains(&d) {
                        rays.push(d);
                    }
                }
            }
        }
        return Some(Gens {
            verts,
            rays,
            lines: vec![],
        });
    }
    // Every normal is a multiple of the first; work along t = n·p.
    let n = (&hs[0].a, &hs[0].b);
    let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
    for h in hs {
        let k = if n.0.is_zero() {
            &h.b / n.1
        } else {
            &h.a / n.0
        };
        let t = &h.c / &k;
        if k.is_positive() {
            hi = Some(hi.map_or(t.clone(), |v| v.min(t.clone())));
        } else {
            lo = Some(lo.map_or(t.clone(), |v| v.max(t.clone())));
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    let norm = n.0 * n.0 + n.1 * n.1;
    let at = |t: &Q| AffinePoint::new(t * n.0 / &norm, t * n.1 / &norm);
    let mut verts = Vec::new();
    let mut rays = Vec::new();
    match &lo {
        Some(l) => verts.push(at(l)),
        None => rays.push(normalize_dir(-n.0, -n.1)),
    }
    match &hi {
        Some(h) if lo.as_ref() != Some(h) => verts.push(at(h)),
        Some(_) => {}
        None => rays.push(normalize_dir(n.0.clone(), n.1.clone())),
    }
    Some(Gens {
        verts,
        rays,
        lines: vec![normalize_dir(-n.1, n.0.clone())],
    })
}

/// Constraints together with the generators of their closure, or `None`
/// for the empty set.
#[derive(Debug, Clone)]
struct Raw {
    hs: Vec<Half>,
    gens: Option<Gens>,
}

impl Raw {
    fn new(hs: Vec<Half>) -> Raw {
        let closed: Vec<Half> = hs.iter().map(Half::closed).collect();
        let gens = generators(&closed).filter(|g| {
            // A strict constraint empties the set exactly when it is tight
            // on all of the closure.
            hs.iter()
                .filter(|h| h.strict)
                .all(|h| g.inf(&h.a, &h.b) != Some(h.c.clone()))
        });
        Raw { hs, gens }
    }

    fn leq(&self, o: &Raw) -> bool {
        let Some(g) = &self.gens else { return true };
        if o.gens.is_none() {
            return false;
        }
        if g.rays.is_empty() && g.lines.is_empty() && self.hs.iter().all(|h| !h.strict) {
            return g.verts.iter().all(|p| o.hs.iter().all(|h| h.holds(p)));
        }
        o.hs.iter().all(|h| match g.sup(&h.a, &h.b) {
            None => false,
            Some(m) if m > h.c => false,
            Some(m) if m == h.c && h.strict => {
                let mut hs = self.hs.clone();
                hs.push(h.negated());
                Raw::new(hs).gens.is_none()
            }
            Some(_) => true,
        })
    }
}

/// A convex polyhedron with a cached canonical form: an irredundant list of
/// constraints and the generators of its closure.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    raw: Raw,
}

impl Polyhedron {
    pub fn new(cons: impl IntoIterator<Item = Constraint>) -> Polyhedron {
        let mut hs: Vec<Half> = Vec::new();
        let mut trivial_false = false;
        let mut push = |h: Half, hs: &mut Vec<Half>| {
            if h.a.is_zero() && h.b.is_zero() {
                let ok = if h.strict {
                    h.c.is_positive()
                } else {
                    !h.c.is_negative()
                };
                trivial_false |= !ok;
                return;
            }
            if let Some(k) = hs
                .iter_mut()
                .find(|k| k.a == h.a && k.b == h.b && k.c == h.c)
            {
                k.strict |= h.strict;
            } else {
                hs.push(h);
            }
        };
        for c in cons {
            let (a, b, v) = (c.a, c.b, c.c);
            match c.rel {
                Rel::Lt => push(Half::new(a, b, v, true), &mut hs),
                Rel::Le => push(Half::new(a, b, v, false), &mut hs),
                Rel::Eq => {
                    push(Half::new(a.clone(), b.clone(), v.clone(), false), &mut hs);
                    push(Half::new(-a, -b, -v, false), &mut hs);
                }
            }
        }
        if trivial_false {
            return Polyhedron::empty();
        }
        let raw = Raw::new(hs);
        if raw.gens.is_none() {
            return Polyhedron::empty();
        }
        // Drop constraints one at a time while the set stays the same;
        // whatever survives is needed.
        let mut hs = raw.hs.clone();
        let mut i = 0;
        while i < hs.len() {
            let mut without = hs.clone();
            without.remove(i);
            let w = Raw::new(without.clone());
            if w.leq(&raw) {
                hs = without;
            } else {
                i += 1;
            }
        }
        Polyhedron { raw: Raw::new(hs) }
    }

    pub fn empty() -> Polyhedron {
        Polyhedron {
            raw: Raw {
                hs: vec![],
                gens: None,
            },
        }
    }

    pub fn plane() -> Polyhedron {
        Polyhedron::new([])
    }

    pub fn point(p: &AffinePoint) -> Polyhedron {
        Polyhedron::new([
            Constraint::new(Q::one(), Q::zero(), Rel::Eq, p.x.clone()),
            Constraint::new(Q::zero(), Q::one(), Rel::Eq, p.y.clone()),
        ])
    }

    /// The segment from `p` to `r`, with each end included or not.
    pub fn segment_with(
        p: &AffinePoint,
        r: &AffinePoint,
        with_p: bool,
        with_r: bool,
    ) -> Polyhedron {
        if p == r {
            return if with_p && with_r {
                Polyhedron::point(p)
            } else {
                Polyhedron::empty()
            };
        }
        let (dx, dy) = (&r.x - &p.x, &r.y - &p.y);
        let on_line = Constraint::new(-&dy, dx.clone(), Rel::Eq, -&dy * &p.x + &dx * &p.y);
        let at = |q: &AffinePoint| &dx * &q.x + &dy * &q.y;
        let rel = |with: bool| if with { Rel::Le } else { Rel::Lt };
        Polyhedron::new([
            on_line,
            Constraint::new(-&dx, -&dy, rel(with_p), -at(p)),
            Constraint::new(dx.clone(), dy.clone(), rel(with_r), at(r)),
        ])
    }

    pub fn segment(p: &AffinePoint, r: &AffinePoint) -> Polyhedron {
        Polyhedron::segment_with(p, r, true, true)
    }

    /// The line through two distinct points.
    pub fn line(p: &AffinePoint, r: &AffinePoint) -> Result<Polyhedron, ConvexError> {
        if p == r {
            return Err(ConvexError::Degenerate);
        }
        let (dx, dy) = (&r.x - &p.x, &r.y - &p.y);
        Ok(Polyhedron::new([Constraint::new(
            -&dy,
            dx.clone(),
            Rel::Eq,
            -&dy * &p.x + &dx * &p.y,
        )]))
    }

    pub fn is_empty(&self) -> bool {
        self.raw.gens.is_none()
    }

    /// Dimension of the affine hull, or `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.raw.gens.as_ref().map(Gens::dim)
    }

    pub fn contains(&self, p: &AffinePoint) -> bool {
        !self.is_empty() && self.raw.hs.iter().all(|h| h.holds(p))
    }

    /// Inclusion.
    pub fn leq(&self, o: &Polyhedron) -> bool {
        self.raw.leq(&o.raw)
    }

    pub fn same_set(&self, o: &Polyhedron) -> bool {
        self.leq(o) && o.leq(self)
    }

    pub fn meet(&self, o: &Polyhedron) -> Polyhedron {
        if self.is_empty() || o.is_empty() {
            return Polyhedron::empty();
        }
        Polyhedron::new(self.constraints().into_iter().chain(o.constraints()))
    }

    /// Adds one constraint.
    pub fn with(&self, c: Constraint) -> Polyhedron {
        if self.is_empty() {
            return Polyhedron::empty();
        }
        Polyhedron::new(self.constraints().into_iter().chain([c]))
    }

    /// The topological closure: every constraint made non-strict. Exact for
    /// nonempty sets, since a nonempty polyhedron is dense in the relaxed one.
    pub fn closure(&self) -> Polyhedron {
        if self.is_empty() {
            return Polyhedron::empty();
        }
        Polyhedron::new(self.constraints().into_iter().map(|c| match c.rel {
            Rel::Lt => Constraint { rel: Rel::Le, ..c },
            _ => c,
        }))
    }

    pub fn is_closed(&self) -> bool {
        self.closure().leq(self)
    }

    /// Supremum of `a·x + b·y`; `None` when unbounded above or empty.
    pub fn sup(&self, a: &Q, b: &Q) -> Option<Q> {
        self.raw.gens.as_ref().and_then(|g| g.sup(a, b))
    }

    pub fn inf(&self, a: &Q, b: &Q) -> Option<Q> {
        self.raw.gens.as_ref().and_then(|g| g.inf(a, b))
    }

    /// Recession cone test: no rays and no lines in the closure.
    pub fn is_bounded(&self) -> bool {
        self.raw
            .gens
            .as_ref()
            .is_none_or(|g| g.rays.is_empty() && g.lines.is_empty())
    }

    /// Whether the closure contains a whole line.
    pub fn has_lineality(&self) -> bool {
        self.raw.gens.as_ref().is_some_and(|g| !g.lines.is_empty())
    }

    /// Extreme points of the closure.
    pub fn extreme_points(&self) -> Vec<AffinePoint> {
        match &self.raw.gens {
            Some(g) if g.lines.is_empty() => g.verts.clone(),
            _ => vec![],
        }
    }

    /// Nonempty, closed, bounded and one-dimensional.
    pub fn is_segment(&self) -> bool {
        self.dim() == Some(1) && self.is_bounded() && self.is_closed()
    }

    pub fn is_line(&self) -> bool {
        self.dim() == Some(1) && self.has_lineality()
    }

    /// Nonempty and equal to its affine hull.
    pub fn is_affine_subspace(&self) -> bool {
        match self.dim() {
            None => false,
            Some(0) => true,
            Some(1) => self.has_lineality(),
            Some(_) => Polyhedron::plane().leq(self),
        }
    }

    /// The convex hull of finitely many points, the empty set included.
    pub fn is_polytope(&self) -> bool {
        self.is_bounded() && self.is_closed()
    }

    /// The canonical constraints, with opposite pairs merged into equations.
    pub fn constraints(&self) -> Vec<Constraint> {
        if self.is_empty() {
            return vec![Constraint::new(Q::zero(), Q::zero(), Rel::Lt, Q::zero())];
        }
        let hs = &self.raw.hs;
        let mut used = vec![false; hs.len()];
        let mut out = Vec::new();
        for (i, h) in hs.iter().enumerate() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let opposite = (i + 1..hs.len()).find(|&j| {
                !used[j]
                    && !h.strict
                    && !hs[j].strict
                    && hs[j].a == -&h.a
                    && hs[j].b == -&h.b
                    && hs[j].c == -&h.c
            });
            let rel = match opposite {
                Some(j) => {
                    used[j] = true;
                    Rel::Eq
                }
                None if h.strict => Rel::Lt,
                None => Rel::Le,
            };
            let flip =
                rel == Rel::Eq && (h.a.is_negative() || (h.a.is_zero() && h.b.is_negative()));
            let s = if flip { -Q::one() } else { Q::one() };
            out.push(Constraint::new(&h.a * &s, &h.b * &s, rel, &h.c * &s));
        }
        out
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.raw.hs.is_empty() && !self.is_empty() {
            return f.write_str("0 <= 0");
        }
        let parts: Vec<String> = self.constraints().iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl FromStr for Polyhedron {
    type Err = ConvexError;

    /// Constraints separated by `;`, `&` or newlines.
    fn from_str(s: &str) -> Result<Polyhedron, ConvexError> {
        let cons = s
            .split([';', '&', '\n'])
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Constraint>, _>>()?;
        Ok(Polyhedron::new(cons))
    }
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
