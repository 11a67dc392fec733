//! Verification suites, one per library module, each running that module's
//! invariants at configurable sizes and recording a verdict per case.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::antichain::{self, Antichain, CoordinateSystem, GridPoint};
use crate::convex::{random_polyhedron, PolyUniverse};
use crate::formula::{
    evaluate, interpret_structure, parse_formula, translate, Defn, FiniteStructure, Formula,
    InterpError, Interpretation,
};
use crate::incidence::{self, AffinePoint};
use crate::interval::{self, GridLattice, IntervalSet};
use crate::monadic::{self, PlusDivides, SetMask, TruncatedNat};
use crate::plane;
use crate::rational::{q, qf, Q};
use crate::report::{Params, SuiteReport, Verdict};
use crate::tree;

/// Size parameters as given on the command line; unset fields take each
/// suite's defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub grid: Option<usize>,
    pub bound: Option<usize>,
    pub cap: Option<usize>,
    pub fuzz: Option<usize>,
    pub seed: u64,
}

pub struct Suite {
    pub name: &'static str,
    pub module: &'static str,
    pub checks: &'static str,
    run: fn(&Options, &mut SuiteReport),
    params: fn(&Options) -> Params,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "formula",
        module: "formula-core",
        checks: "print/parse round trip; translation soundness under interpretations; existential monotonicity and universal antitonicity under substructures (--fuzz)",
        run: formula_suite,
        params: |o| Params { fuzz: Some(o.fuzz.unwrap_or(200)), seed: o.seed, ..Params::default() },
    },
    Suite {
        name: "semigroup",
        module: "weak-monadic",
        checks: "membership in s^N sound, and exact where the chain fits (--bound, --cap); multiplication from + and divisibility; E is same size; star sets are power chains",
        run: semigroup_suite,
        params: |o| Params { bound: Some(o.bound.unwrap_or(30)), cap: Some(o.cap.unwrap_or(6)), seed: o.seed, ..Params::default() },
    },
    Suite {
        name: "intervals",
        module: "interval-lattice",
        checks: "lattice laws on fuzzed sets (--fuzz); encode/decode inverse on a 12-point grid; check_I against semantics on grids up to --grid points; spectra realized by S; lattice arithmetic",
        run: interval_suite,
        params: |o| Params { grid: Some(o.grid.unwrap_or(8)), fuzz: Some(o.fuzz.unwrap_or(200)), seed: o.seed, ..Params::default() },
    },
    Suite {
        name: "trees",
        module: "tree-orders",
        checks: "horizontal order is linear on nodes up to depth --grid; density and no endpoints probed up to depth --grid - 1",
        run: tree_suite,
        params: |o| Params { grid: Some(o.grid.unwrap_or(6)), seed: o.seed, ..Params::default() },
    },
    Suite {
        name: "geometry",
        module: "incidence-geometry",
        checks: "add/mul constructions against coordinates, identities, field laws, tau transport, betweenness order, degenerate rejection (--fuzz configurations)",
        run: geometry_suite,
        params: |o| Params { fuzz: Some(o.fuzz.unwrap_or(200)), seed: o.seed, ..Params::default() },
    },
    Suite {
        name: "convex",
        module: "convex-lattice",
        checks: "order-theoretic characterizations against direct checkers on the standard universe; closure idempotent, monotone and extensive on fuzzed polyhedra (--fuzz)",
        run: convex_suite,
        params: |o| Params { fuzz: Some(o.fuzz.unwrap_or(500)), seed: o.seed, ..Params::default() },
    },
    Suite {
        name: "plane",
        module: "plane-counting",
        checks: "disjoint arc witnesses for equal-size sets on a --grid square grid, sizes up to --cap; soundness of the matching clauses on fuzzed arc systems (--fuzz)",
        run: plane_suite,
        params: |o| Params {
            grid: Some(o.grid.unwrap_or(20)),
            cap: Some(o.cap.unwrap_or(8)),
            fuzz: Some(o.fuzz.unwrap_or(500)),
            seed: o.seed,
            ..Params::default()
        },
    },
    Suite {
        name: "antichains",
        module: "antichain-lattice",
        checks: "poset laws; singletons are the join irreducibles; coordinate-set bijection; interpreted equal size against projection sizes for anti-chains of up to --cap points on grids up to --grid",
        run: antichain_suite,
        params: |o| Params { grid: Some(o.grid.unwrap_or(4)), cap: Some(o.cap.unwrap_or(3)), fuzz: Some(o.fuzz.unwrap_or(200)), seed: o.seed, ..Params::default() },
    },
];

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

impl Suite {
    pub fn run(&self, opts: &Options) -> SuiteReport {
        let params = (self.params)(opts);
        let resolved = Options {
            grid: params.grid,
            bound: params.bound,
            cap: params.cap,
            fuzz: params.fuzz,
            seed: params.seed,
        };
        let mut r = SuiteReport::new(self.name, self.module, params);
        let t = Instant::now();
        (self.run)(&resolved, &mut r);
        r.wall = t.elapsed();
        r
    }
}

fn rng(o: &Options, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        o.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(salt),
    )
}

// formula

fn random_structure(rng: &mut ChaCha8Rng) -> FiniteStructure {
    let n = rng.gen_range(2..=4);
    let pv: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let rv: Vec<bool> = (0..n * n).map(|_| rng.gen()).collect();
    let mut s = FiniteStructure::new((0..n).map(|i| format!("h{i}"))).expect("nonempty");
    s.add_relation_fn("P", 1, |t| pv[t[0]]);
    s.add_relation_fn("R", 2, |t| rv[t[0] * n + t[1]]);
    s
}

fn random_body(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Formula {
    let v = |rng: &mut ChaCha8Rng| *vars.choose(rng).expect("vars");
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => Formula::rel("P", &[v(rng)]),
            1 => Formula::rel("R", &[v(rng), v(rng)]),
            _ => Formula::eq(v(rng), v(rng)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_body(rng, vars, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        _ => Formula::implies(sub(rng), sub(rng)),
    }
}

fn random_sentence(rng: &mut ChaCha8Rng) -> Formula {
    let body = random_body(rng, &["x", "y", "z"], 3);
    ["z", "y", "x"].iter().fold(body, |acc, v| {
        if rng.gen() {
            Formula::exists(v, acc)
        } else {
            Formula::forall(v, acc)
        }
    })
}

fn interpretation_pool() -> Vec<Interpretation> {
    let p = |t: &str| parse_formula(t).expect("fixed formula");
    let sig = BTreeMap::from([("P".to_string(), 1), ("R".to_string(), 2)]);
    vec![
        Interpretation::identity(&sig),
        Interpretation {
            dim: 1,
            domain: Defn::new(&["x"], p("(= x x)")),
            equiv: Defn::new(
                &["x", "y"],
                p("(and (implies (P x) (P y)) (implies (P y) (P x)))"),
            ),
            relations: BTreeMap::from([
                ("P".into(), Defn::new(&["a"], p("(P a)"))),
                (
                    "R".into(),
                    Defn::new(&["a", "b"], p("(and (P a) (not (P b)))")),
                ),
            ]),
        },
        Interpretation {
            dim: 2,
            domain: Defn::new(&["x1", "x2"], p("(R x1 x2)")),
            equiv: Defn::new(&["x1", "x2", "y1", "y2"], p("(and (= x1 y1) (= x2 y2))")),
            relations: BTreeMap::from([
                ("P".into(), Defn::new(&["a1", "a2"], p("(R a2 a1)"))),
                (
                    "R".into(),
                    Defn::new(&["a1", "a2", "b1", "b2"], p("(= a2 b1)")),
                ),
            ]),
        },
    ]
}

fn holds(s: &FiniteStructure, f: &Formula) -> bool {
    evaluate(s, f, &BTreeMap::new()).expect("sentence")
}

fn formula_suite(o: &Options, r: &mut SuiteReport) {
    let mut rng = rng(o, 1);
    let pool = interpretation_pool();
    for _ in 0..o.fuzz.unwrap_or(0) {
        let host = random_structure(&mut rng);
        let f = random_sentence(&mut rng);
        let text = f.to_string();
        r.check("round trip", &text, parse_formula(&text).as_ref() == Ok(&f));

        let which = rng.gen_range(0..pool.len());
        let input = format!("interpretation {which} on {} elements: {text}", host.len());
        match interpret_structure(&host, &pool[which]) {
            Ok(out) => {
                let via = translate(&pool[which], &f).map(|t| holds(&host, &t));
                r.check("translation", input, via == Ok(holds(&out.structure, &f)));
            }
            Err(InterpError::EmptyDomain) => r.push(
                "translation",
                input,
                Verdict::BoundaryExcluded,
                Some("empty domain".into()),
            ),
            Err(e) => r.push("translation", input, Verdict::Fail, Some(e.to_string())),
        }

        let drop = rng.gen_range(0..host.len());
        let keep: Vec<usize> = (0..host.len()).filter(|&i| i != drop).collect();
        let sub = host.restrict(&keep).expect("nonempty");
        let body = random_body(&mut rng, &["x", "y"], 3);
        let ex = Formula::exists_all(&["x", "y"], body.clone());
        let all = Formula::forall_all(&["x", "y"], body);
        r.check(
            "existential monotone",
            ex.to_string(),
            !holds(&sub, &ex) || holds(&host, &ex),
        );
        r.check(
            "universal antitone",
            all.to_string(),
            !holds(&host, &all) || holds(&sub, &all),
        );
    }
}

// semigroup

fn semigroup_suite(o: &Options, r: &mut SuiteReport) {
    let (n, cap) = (o.bound.unwrap_or(30), o.cap.unwrap_or(6));
    let nat = TruncatedNat::new(n);
    for s in 1..=n {
        for t in 1..=n {
            let m = monadic::in_generated(&nat, s - 1, t - 1, cap);
            let divides = t % s == 0;
            let mut v = Verdict::from_bounded(m.verdict, divides);
            if m.oracle != divides {
                v = Verdict::Fail;
            }
            r.push("membership", format!("{t} in {s}^N"), v, None);
        }
    }
    let pd = PlusDivides::new(monadic::bound_for_products(n));
    for x in 1..=n {
        for y in 1..=n / x {
            let got = pd.multiply(x, y);
            r.push(
                "multiply",
                format!("{x}*{y}"),
                Verdict::from_check(got == Ok(x * y)),
                got.err().map(|e| e.to_string()),
            );
        }
    }
    let small = cap.min(10);
    let sets = SetMask::all_up_to(small, small);
    for &a in &sets {
        for &b in &sets {
            r.check(
                "equal size",
                format!("{a:?} {b:?}"),
                monadic::equal_size_e(a, b) == (a.len() == b.len()),
            );
        }
    }
    let tn = TruncatedNat::new(12);
    for g in 0..12 {
        for x in SetMask::all_up_to(12, 4) {
            if monadic::star_property(&tn, g, x) {
                let vals = tn.values(x);
                let want: Vec<usize> = (1..=vals.len()).map(|k| k * (g + 1)).collect();
                r.check(
                    "star chain",
                    format!("s={} X={vals:?}", g + 1),
                    vals == want,
                );
            }
        }
    }
}

// intervals

fn int_grid(n: usize) -> Vec<Q> {
    (0..n as i64).map(q).collect()
}

fn random_interval_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let k = rng.gen_range(0..4);
    let mut items: Vec<(Q, Q)> = (0..k)
        .map(|_| {
            let (a, len, d) = (
                rng.gen_range(-8..8),
                rng.gen_range(0..4),
                rng.gen_range(1..3),
            );
            (qf(a, d), qf(a, d) + q(len))
        })
        .collect();
    items.sort();
    IntervalSet::from_intervals(items).expect("sorted parts")
}

fn interval_suite(o: &Options, r: &mut SuiteReport) {
    let mut rng = rng(o, 3);
    for _ in 0..o.fuzz.unwrap_or(0) {
        let (a, b, c) = (
            random_interval_set(&mut rng),
            random_interval_set(&mut rng),
            random_interval_set(&mut rng),
        );
        let laws = a.join(&b) == b.join(&a)
            && a.meet(&b) == b.meet(&a)
            && a.join(&b.join(&c)) == a.join(&b).join(&c)
            && a.meet(&b.meet(&c)) == a.meet(&b).meet(&c)
            && a.join(&a) == a
            && a.meet(&a) == a
            && a.join(&a.meet(&b)) == a
            && a.meet(&a.join(&b)) == a
            && a.meet(&b.join(&c)) == a.meet(&b).join(&a.meet(&c))
            && a.leq(&b) == (a.meet(&b) == a);
        r.check("lattice laws", format!("{a} | {b} | {c}"), laws);
    }
    let g12: Vec<Q> = (0..12).map(|i| qf(i * i, 3)).collect();
    for u in interval::all_interval_sets(&g12, 4)
        .iter()
        .filter(|u| !u.is_empty())
    {
        let ok = interval::decode_afg(u)
            .map(|t| &t.encode() == u)
            .unwrap_or(false);
        r.check("decode then encode", u.to_string(), ok);
    }
    for n in 1..=o.grid.unwrap_or(8) {
        let lat = GridLattice::new(&int_grid(n));
        for &m in lat.masks() {
            let set = lat.to_set(m);
            r.check(
                "check_I",
                format!("n={n} {set}"),
                lat.check_i(m).verdict == interval::check_i_semantic(&set),
            );
        }
    }
    for k in 0..=3usize {
        for spec in combinations(&[0, 1, 2, 3, 4], k) {
            let sizes: BTreeSet<usize> = spec.iter().copied().collect();
            let width = interval::coding_width(&sizes).max(1);
            let rep = interval::realize_spectrum(width, &spec);
            let ok = rep.finite_rows
                && rep.realized_by.as_ref().is_some_and(|(b, c)| {
                    let b: BTreeSet<usize> = b.iter().copied().collect();
                    let c: BTreeSet<usize> = c.iter().copied().collect();
                    interval::size_spectrum(&b, &c) == sizes
                });
            r.check("spectrum", format!("{spec:?} on {width} points"), ok);
        }
    }
    for a in 0..=5 {
        for b in 0..=5 {
            let add = interval::lattice_add(a, b, None).map(|x| x.value);
            r.check("lattice add", format!("{a}+{b}"), add == Ok(a + b));
            let mul = interval::lattice_mul(a, b, None).map(|x| x.value);
            r.check("lattice mul", format!("{a}*{b}"), mul == Ok(a * b));
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

// trees

fn tree_suite(o: &Options, r: &mut SuiteReport) {
    let depth = o.grid.unwrap_or(6);
    let nodes = tree::nodes_up_to(depth);
    let rep = tree::order_axioms(&nodes, tree::horizontal);
    let input = format!("{} nodes of depth <= {depth}", rep.nodes);
    r.check("reflexive", &input, rep.reflexive);
    r.check("antisymmetric", &input, rep.antisymmetric);
    r.check("transitive", &input, rep.transitive);
    r.check("total", &input, rep.total);
    let probe = depth.saturating_sub(1);
    let d = tree::density_probe(probe, probe + 2);
    r.push(
        "density",
        format!(
            "{} pairs of depth <= {probe}, witnesses to depth {}",
            d.pairs,
            probe + 2
        ),
        Verdict::from_check(d.passes()),
        d.gaps.first().map(|g| format!("{g:?}")),
    );
}

// geometry

fn geometry_suite(o: &Options, r: &mut SuiteReport) {
    use incidence::*;
    let mut rng = rng(o, 5);
    for _ in 0..o.fuzz.unwrap_or(0) {
        let c = random_config(&mut rng);
        let d = random_config(&mut rng);
        let input = format!("O={} I={} A={} C={} B={}", c.o, c.i, c.a, c.c, c.b);
        let coord = |p: &AffinePoint| coordinate(&c.o, &c.i, p).expect("on the line");
        let add = |x: &AffinePoint, y: &AffinePoint| add_construct(&c.o, x, y, &c.b).map(|t| t.0);
        let mul =
            |x: &AffinePoint, y: &AffinePoint| mul_construct(&c.o, &c.i, x, y, &c.b).map(|t| t.0);
        let (sum, prod) = (add(&c.a, &c.c), mul(&c.a, &c.c));
        r.check(
            "add",
            &input,
            sum.as_ref().map(coord) == Ok(coord(&c.a) + coord(&c.c)),
        );
        r.check(
            "mul",
            &input,
            prod.as_ref().map(coord) == Ok(coord(&c.a) * coord(&c.c)),
        );
        let ids = add(&c.a, &c.o).as_ref() == Ok(&c.a)
            && mul(&c.a, &c.i).as_ref() == Ok(&c.a)
            && mul(&c.a, &c.o).as_ref() == Ok(&c.o);
        r.check("identities", &input, ids);
        let e = point_at(
            &c.o,
            &c.i,
            &coordinate(&d.o, &d.i, &d.a).expect("on the line"),
        );
        let laws = (|| -> Result<bool, GeomError> {
            Ok(add(&c.a, &c.c)? == add(&c.c, &c.a)?
                && add(&add(&c.a, &c.c)?, &e)? == add(&c.a, &add(&c.c, &e)?)?
                && mul(&c.a, &c.c)? == mul(&c.c, &c.a)?
                && mul(&mul(&c.a, &c.c)?, &e)? == mul(&c.a, &mul(&c.c, &e)?)?
                && mul(&c.a, &add(&c.c, &e)?)? == add(&mul(&c.a, &c.c)?, &mul(&c.a, &e)?)?)
        })();
        r.check("field laws", &input, laws == Ok(true));
        let l = line_through(&c.o, &c.i).expect("distinct");
        let plane = tau_line(&l);
        let tau_ok = [&c.a, &c.c, &c.b, &c.o]
            .iter()
            .all(|p| plane.contains(&tau(p)) == l.contains(p))
            && tau_line_inv(&plane).as_ref() == Ok(&l)
            && tau_inv(&tau(&c.b)).as_ref() == Ok(&c.b);
        r.check("tau transport", &input, tau_ok);
        let pos = |p: &AffinePoint| nonnegative(&c.o, &c.i, p);
        let zero = Q::from_integer(0.into());
        let order_ok = pos(&c.i)
            && [&c.a, &c.c].iter().all(|p| pos(p) == (coord(p) >= zero))
            && (!(pos(&c.a) && pos(&c.c))
                || (sum.as_ref().is_ok_and(pos) && prod.as_ref().is_ok_and(pos)));
        r.check("betweenness order", &input, order_ok);
        let on = point_at(&c.o, &c.i, &qf(7, 3));
        let rejects = mul_construct(&c.o, &c.i, &c.a, &c.c, &on).is_err()
            && mul_construct(&c.o, &c.i, &c.b, &c.c, &c.a).is_err()
            && mul_construct(&c.o, &c.o, &c.a, &c.c, &c.b).is_err();
        r.check("degenerate rejected", &input, rejects);
    }
}

// convex

fn convex_suite(o: &Options, r: &mut SuiteReport) {
    let u = PolyUniverse::standard();
    let rep = u.agreement();
    for c in &rep.claims {
        let input = format!(
            "{} of {} members in a family of {}",
            c.checked, rep.members, rep.family
        );
        let note = (!c.failures.is_empty()).then(|| c.failures.join("; "));
        r.push(
            &c.claim,
            input,
            Verdict::from_check(c.failures.is_empty()),
            note,
        );
    }
    let mut rng = rng(o, 7);
    for _ in 0..o.fuzz.unwrap_or(0) {
        let p = random_polyhedron(&mut rng);
        let smaller = p.meet(&random_polyhedron(&mut rng));
        let cl = p.closure();
        let ok = cl.closure().same_set(&cl)
            && p.leq(&cl)
            && cl.is_closed()
            && smaller.closure().leq(&cl);
        r.check("closure", p.to_string(), ok);
    }
}

// plane

fn grid_points(rng: &mut ChaCha8Rng, n: usize, side: i64) -> Vec<AffinePoint> {
    let mut all: Vec<AffinePoint> = (0..side)
        .flat_map(|x| (0..side).map(move |y| AffinePoint::int(x, y)))
        .collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

fn plane_suite(o: &Options, r: &mut SuiteReport) {
    let side = o.grid.unwrap_or(20) as i64;
    let cap = o.cap.unwrap_or(8);
    let rounds = o.fuzz.unwrap_or(0);
    let mut rng = rng(o, 9);
    for round in 0..rounds {
        let k = (round % (cap + 1)).min((side * side) as usize / 2);
        let pts = grid_points(&mut rng, 2 * k, side);
        let (a, b) = pts.split_at(k);
        let input = format!("{} | {}", join_points(a), join_points(b));
        match plane::equal_size_e(a, b) {
            Ok(rep) => {
                let ok = rep.equal
                    && rep.witness.as_ref().is_some_and(|w| {
                        w.arcs().len() == k
                            && plane::matching_conditions(w.arcs(), a, b)
                            && w.arcs()
                                .iter()
                                .all(|arc| a.contains(arc.start()) && b.contains(arc.end()))
                    });
                r.check("completeness", input, ok);
            }
            Err(e) => r.push("completeness", input, Verdict::Fail, Some(e.to_string())),
        }
    }
    for _ in 0..rounds {
        let pool = grid_points(&mut rng, 12, 6);
        let count = rng.gen_range(1..=4);
        let arcs = plane::random_arcs(&mut rng, count, &pool);
        let (a, b): (Vec<AffinePoint>, Vec<AffinePoint>) = if rng.gen_bool(0.5) {
            arcs.iter()
                .map(|x| (x.start().clone(), x.end().clone()))
                .unzip()
        } else {
            let m = rng.gen_range(0..=4);
            let pts = grid_points(&mut rng, m + count, 6);
            let (x, y) = pts.split_at(m);
            (x.to_vec(), y.to_vec())
        };
        let input = format!(
            "{} arcs; {} | {}",
            arcs.len(),
            join_points(&a),
            join_points(&b)
        );
        let claimed = plane::matching_conditions(&arcs, &a, &b);
        let sound = !claimed || distinct(&a) == distinct(&b);
        let v = match (claimed, sound) {
            (_, false) => Verdict::Fail,
            (true, true) => Verdict::ExactPass,
            (false, true) => Verdict::SoundOnlyPass,
        };
        r.push("soundness", input, v, None);
    }
}

fn distinct(v: &[AffinePoint]) -> usize {
    v.iter().collect::<BTreeSet<_>>().len()
}

fn join_points(v: &[AffinePoint]) -> String {
    v.iter()
        .map(|p| format!("({p})"))
        .collect::<Vec<_>>()
        .join(" ")
}

// antichains

fn antichain_suite(o: &Options, r: &mut SuiteReport) {
    let (max_m, cap) = (o.grid.unwrap_or(4) as u32, o.cap.unwrap_or(3));
    let all3 = antichain::all_antichains(3, 3).expect("grid");
    for a in &all3 {
        let mut ok = antichain::antichain_leq(a, a);
        for b in &all3 {
            let (ab, ba) = (
                antichain::antichain_leq(a, b),
                antichain::antichain_leq(b, a),
            );
            ok &= !(ab && ba) || a == b;
            ok &= !ab
                || all3
                    .iter()
                    .all(|c| !antichain::antichain_leq(b, c) || antichain::antichain_leq(a, c));
        }
        r.check("poset laws", a.to_string(), ok);
    }
    for m in 1..=3 {
        let ji: BTreeSet<Vec<GridPoint>> = antichain::join_irreducibles(m)
            .expect("grid")
            .into_iter()
            .map(Vec::from)
            .collect();
        let singles: BTreeSet<Vec<GridPoint>> = (1..=m)
            .flat_map(|x| (1..=m).map(move |y| vec![GridPoint::new(x, y)]))
            .collect();
        r.check("join irreducibles", format!("m={m}"), ji == singles);
        let all = antichain::all_antichains(m, m as usize).expect("grid");
        let images: BTreeSet<(Vec<u32>, Vec<u32>)> =
            all.iter().map(antichain::coordinate_sets).collect();
        let pairs: usize = (1..=m as usize)
            .map(|k| binomial(m as usize, k).pow(2))
            .sum();
        r.check(
            "coordinate bijection",
            format!("m={m}"),
            images.len() == all.len() && all.len() == pairs,
        );
    }
    let mut rng = rng(o, 11);
    for _ in 0..o.fuzz.unwrap_or(0) {
        let k = rng.gen_range(1..=4);
        let pick = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<u32> = (1..=4).collect();
            v.shuffle(rng);
            v.truncate(k);
            v.sort();
            v
        };
        let (xs, ys) = (pick(&mut rng), pick(&mut rng));
        let ok = antichain::from_coordinate_sets(&xs, &ys)
            .is_ok_and(|a| antichain::coordinate_sets(&a) == (xs.clone(), ys.clone()));
        r.check("coordinate bijection", format!("{xs:?} {ys:?}"), ok);
    }
    for m in 1..=max_m {
        let acs = antichain::all_antichains(m, cap).expect("grid");
        for (oo, p, qq) in CoordinateSystem::all(m) {
            let cs = CoordinateSystem::new(m, oo, p, qq, m as usize).expect("coordinate system");
            let along = |r: &GridPoint| if oo.x == p.x { r.y } else { r.x };
            let size = |a: &Antichain| a.points().iter().map(along).collect::<BTreeSet<_>>().len();
            let mut ok = true;
            for a in &acs {
                for b in &acs {
                    ok &= cs
                        .equal_size(a, b)
                        .is_ok_and(|w| w.is_some() == (size(a) == size(b)));
                }
            }
            r.check(
                "interpreted equal size",
                format!("m={m} o={oo} p={p} q={qq}, {} pairs", acs.len() * acs.len()),
                ok,
            );
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_are_unique() {
        let names: BTreeSet<&str> = SUITES.iter().map(|s| s.name).collect();
        assert_eq!(names.len(), SUITES.len());
        assert!(find("intervals").is_some() && find("nope").is_none());
    }

    #[test]
    fn small_runs_are_deterministic() {
        let o = Options {
            fuzz: Some(5),
            grid: Some(3),
            seed: 7,
            ..Options::default()
        };
        for name in ["formula", "geometry", "trees"] {
            let s = find(name).unwrap();
            let (a, b) = (s.run(&o), s.run(&o));
            assert!(a.passes(), "{}", a.text(5));
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap()
            );
        }
    }
}
