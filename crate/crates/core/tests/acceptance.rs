//! Acceptance criteria, each checked against an oracle computed here and
//! timed against its runtime limit. Prints one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toplat::antichain::{
    all_antichains, equal_size_interpreted, Antichain, CoordinateSystem, GridPoint,
};
use toplat::convex::{random_polyhedron, PolyUniverse};
use toplat::formula::interpret_structure;
use toplat::incidence::{
    add_construct, mul_construct, point_at, random_config, AffinePoint, Config, GeomError,
};
use toplat::interval::{
    self, afg_host, afg_interpretation, all_interval_sets, decode_afg, interval_poset, GridLattice,
    IntervalSet,
};
use toplat::monadic::{bound_for_products, in_generated, PlusDivides, TruncatedNat};
use toplat::plane::{self, PLArc};
use toplat::rational::{q, qf, Q};
use toplat::tree::{self, TreeNode};

type Outcome = Result<String, String>;

/// Name, check and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1

fn membership() -> Outcome {
    let (n, cap) = (30, 6);
    let nat = TruncatedNat::new(n);
    let (mut exact, mut sound_only, mut excluded) = (0, 0, 0);
    for s in 1..=n {
        for t in 1..=n {
            let m = in_generated(&nat, s - 1, t - 1, cap);
            let divides = t % s == 0;
            ensure(!m.verdict.is_true() || divides, || {
                format!("false positive: {t} in {s}^N")
            })?;
            let fits = divides && t / s <= cap;
            ensure(!fits || m.verdict.is_true(), || {
                format!("false negative: {t} in {s}^N")
            })?;
            match (m.verdict.value, m.verdict.margin) {
                (None, _) => excluded += 1,
                (Some(_), toplat::margin::Margin::Exact) => exact += 1,
                _ => sound_only += 1,
            }
        }
    }
    Ok(format!(
        "{} pairs: exact={exact} sound-only={sound_only} excluded={excluded}",
        n * n
    ))
}

// 2

fn multiplication() -> Outcome {
    let pd = PlusDivides::new(bound_for_products(30));
    let mut products = 0;
    for x in 1..=30usize {
        for y in 1..=30 / x {
            let got = pd.multiply(x, y).map_err(|e| format!("{x}*{y}: {e}"))?;
            ensure(got == x * y, || format!("{x}*{y} gave {got}"))?;
            products += 1;
        }
    }
    for x in 1..=20usize {
        let brute = (1..)
            .find(|m| m % x == 0 && m % (x + 1) == 0)
            .expect("common multiple");
        ensure(brute == x * x + x, || {
            format!("brute lcm({x},{}) = {brute}", x + 1)
        })?;
        let got = pd.lcm(x, x + 1).map_err(|e| e.to_string())?;
        ensure(got == Some(brute), || {
            format!("lcm({x},{}) gave {got:?}", x + 1)
        })?;
    }
    Ok(format!("{products} products, 20 lcms"))
}

// 3

fn round_trip() -> Outcome {
    let g12: Vec<Q> = (0..12).map(|i| qf(i * i, 3)).collect();
    let sets = all_interval_sets(&g12, 4);
    let mut count = 0;
    for u in sets.iter().filter(|u| !u.is_empty()) {
        let t = decode_afg(u).map_err(|e| format!("{u}: {e}"))?;
        let back = t.encode();
        ensure(&back == u, || format!("encode(decode({u})) = {back}"))?;
        let again = decode_afg(&back).map_err(|e| e.to_string())?;
        ensure(again == t, || {
            format!("decode(encode(decode({u}))) differs")
        })?;
        count += 1;
    }
    // Canonical forms are unique, so distinct sets decode to distinct triples.
    let triples: BTreeSet<_> = sets
        .iter()
        .filter(|u| !u.is_empty())
        .map(|u| decode_afg(u).expect("decodes"))
        .collect();
    ensure(triples.len() == count, || {
        "decoding is not injective".into()
    })?;

    let g5: Vec<Q> = (0..5).map(q).collect();
    let host = afg_host(&g5, 5).structure();
    let out = interpret_structure(&host, &afg_interpretation()).map_err(|e| e.to_string())?;
    let (direct_sets, direct) = interval_poset(&g5);
    ensure(out.structure.len() == direct_sets.len(), || {
        format!("{} vs {} elements", out.structure.len(), direct_sets.len())
    })?;
    ensure(out.structure.is_isomorphic(&direct), || {
        "interpreted poset not isomorphic".into()
    })?;
    Ok(format!(
        "{count} sets round trip; poset of {} elements isomorphic",
        direct_sets.len()
    ))
}

// 4

/// A single closed interval with distinct endpoints.
fn one_proper_interval(s: &IntervalSet) -> bool {
    matches!(s.parts(), [(a, b)] if a < b)
}

fn check_i() -> Outcome {
    let mut count = 0;
    for n in 1..=8i64 {
        let lat = GridLattice::new(&(0..n).map(q).collect::<Vec<_>>());
        for &m in lat.masks() {
            let set = lat.to_set(m);
            ensure(lat.check_i(m).verdict == one_proper_interval(&set), || {
                format!("n={n}: {set}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} elements, 0 disagreements"))
}

// 5

/// Sizes `|c ∩ (x, y)|` over consecutive points `x < y` of `b`.
fn spectrum_oracle(b: &[usize], c: &[usize]) -> BTreeSet<usize> {
    let mut b = b.to_vec();
    b.sort();
    b.windows(2)
        .map(|w| c.iter().filter(|&&z| w[0] < z && z < w[1]).count())
        .collect()
}

fn multisets(k: usize, from: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (from..=4)
        .flat_map(|x| {
            multisets(k - 1, x).into_iter().map(move |mut r| {
                r.insert(0, x);
                r
            })
        })
        .collect()
}

fn sequences() -> Outcome {
    let mut count = 0;
    for k in 0..=3 {
        for spec in multisets(k, 0) {
            let want: BTreeSet<usize> = spec.iter().copied().collect();
            let width = interval::coding_width(&want).max(1);
            let rep = interval::realize_spectrum(width, &spec);
            ensure(rep.finite_rows, || format!("{spec:?}: condition (a)"))?;
            let (b, c) = rep
                .realized_by
                .ok_or_else(|| format!("{spec:?}: not realized on {width} points"))?;
            ensure(spectrum_oracle(&b, &c) == want, || {
                format!("{spec:?}: b={b:?} c={c:?} has another spectrum")
            })?;
            let (bs, cs): (BTreeSet<usize>, BTreeSet<usize>) =
                (b.iter().copied().collect(), c.iter().copied().collect());
            for n in 0..=6usize {
                let a: BTreeSet<usize> = (100..100 + n).collect();
                ensure(
                    interval::relation_s(&a, &bs, &cs) == want.contains(&n),
                    || format!("{spec:?}: S at size {n}"),
                )?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} multisets realized"))
}

// 6

fn arith_cli() -> Outcome {
    let mut runs = 0;
    for backend in ["interval", "monadic"] {
        for a in 0..=5usize {
            for b in 0..=5usize {
                for (op, sym, want) in [("add", "+", a + b), ("mul", "*", a * b)] {
                    let out = Command::new(env!("CARGO_BIN_EXE_toplat"))
                        .args([
                            "arith",
                            op,
                            &a.to_string(),
                            &b.to_string(),
                            "--backend",
                            backend,
                        ])
                        .output()
                        .map_err(|e| e.to_string())?;
                    let text = String::from_utf8_lossy(&out.stdout);
                    let last = text.trim_end().lines().last().unwrap_or("").to_string();
                    ensure(out.status.code() == Some(0), || {
                        format!("{backend} {a}{sym}{b}: exit {:?}", out.status.code())
                    })?;
                    ensure(last.ends_with(&format!("{a} {sym} {b} = {want}")), || {
                        format!("{backend} {a}{sym}{b}: {last}")
                    })?;
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} runs over both backends"))
}

// 7

/// `t` with `p = o + t(i - o)`, if `p` lies on the line.
fn oracle_coord(o: &AffinePoint, i: &AffinePoint, p: &AffinePoint) -> Option<Q> {
    let (dx, dy) = (&i.x - &o.x, &i.y - &o.y);
    let t = if !dx.is_zero() {
        (&p.x - &o.x) / &dx
    } else {
        (&p.y - &o.y) / &dy
    };
    (&o.x + &t * &dx == p.x && &o.y + &t * &dy == p.y).then_some(t)
}

fn configs(seed: u64, n: usize) -> Vec<Config> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_config(&mut rng)).collect()
}

fn constructions() -> Outcome {
    let coord = |c: &Config, p: &AffinePoint| {
        oracle_coord(&c.o, &c.i, p).ok_or_else(|| format!("{p} off the line"))
    };
    for c in configs(7, 200) {
        let (s, _) = add_construct(&c.o, &c.a, &c.c, &c.b).map_err(|e| e.to_string())?;
        ensure(
            coord(&c, &s)? == coord(&c, &c.a)? + coord(&c, &c.c)?,
            || format!("add at {}", c.a),
        )?;
        ensure(
            add_construct(&c.o, &c.a, &c.o, &c.b).map(|r| r.0).as_ref() == Ok(&c.a),
            || "A+O".into(),
        )?;
    }
    for c in configs(8, 200) {
        let (m, _) = mul_construct(&c.o, &c.i, &c.a, &c.c, &c.b).map_err(|e| e.to_string())?;
        ensure(
            coord(&c, &m)? == coord(&c, &c.a)? * coord(&c, &c.c)?,
            || format!("mul at {}", c.a),
        )?;
        ensure(
            mul_construct(&c.o, &c.i, &c.a, &c.i, &c.b)
                .map(|r| r.0)
                .as_ref()
                == Ok(&c.a),
            || "A*I".into(),
        )?;
        ensure(
            mul_construct(&c.o, &c.i, &c.a, &c.o, &c.b)
                .map(|r| r.0)
                .as_ref()
                == Ok(&c.o),
            || "A*O".into(),
        )?;
    }
    let mut rejected = 0;
    for c in configs(9, 200) {
        let on = point_at(&c.o, &c.i, &qf(7, 3));
        let cases = [
            mul_construct(&c.o, &c.i, &c.a, &c.c, &on).map(|r| r.0),
            mul_construct(&c.o, &c.i, &c.b, &c.c, &c.a).map(|r| r.0),
            mul_construct(&c.o, &c.o, &c.a, &c.c, &c.b).map(|r| r.0),
        ];
        let add_on = add_construct(&c.o, &c.a, &c.c, &on).map(|r| r.0);
        let add_want = if c.a == c.o && c.c == c.o {
            Ok(c.o.clone())
        } else {
            Err(GeomError::AuxOnLine)
        };
        ensure(add_on == add_want, || {
            format!("add with B on the line: {add_on:?}")
        })?;
        for (k, r) in cases.iter().enumerate() {
            ensure(
                matches!(
                    r,
                    Err(GeomError::AuxOnLine | GeomError::NotCollinear | GeomError::UnitAtOrigin)
                ),
                || format!("degenerate case {k}: {r:?}"),
            )?;
            rejected += 1;
        }
    }
    Ok(format!(
        "200 add + 200 mul configs, {rejected} degenerate inputs rejected"
    ))
}

// 8

fn convex() -> Outcome {
    let u = PolyUniverse::standard();
    let rep = u.agreement();
    ensure(rep.members == 50, || format!("{} members", rep.members))?;
    for c in &rep.claims {
        ensure(c.failures.is_empty(), || {
            format!("{}: {:?}", c.claim, c.failures)
        })?;
        ensure(c.checked >= 50, || {
            format!("{}: only {} checked", c.claim, c.checked)
        })?;
    }
    let samples: Vec<AffinePoint> = (-8..=8)
        .flat_map(|x| (-8..=8).map(move |y| AffinePoint::new(qf(x, 2), qf(y, 2))))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let p = random_polyhedron(&mut rng);
        let smaller = p.meet(&random_polyhedron(&mut rng));
        let cl = p.closure();
        ensure(cl.closure().same_set(&cl), || {
            format!("not idempotent at {p}")
        })?;
        ensure(smaller.closure().leq(&cl), || {
            format!("not monotone at {smaller} <= {p}")
        })?;
        for pt in &samples {
            ensure(!p.contains(pt) || cl.contains(pt), || {
                format!("{pt} of {p} lost by closure")
            })?;
            ensure(!smaller.contains(pt) || p.contains(pt), || {
                "meet not below".into()
            })?;
        }
    }
    Ok(format!("{} claims agree; 500 closures", rep.claims.len()))
}

// 9

fn oracle_on(p: &AffinePoint, c: &AffinePoint, d: &AffinePoint) -> bool {
    let (sx, sy) = (&d.x - &c.x, &d.y - &c.y);
    if sx.is_zero() && sy.is_zero() {
        return p == c;
    }
    let t = if !sx.is_zero() {
        (&p.x - &c.x) / &sx
    } else {
        (&p.y - &c.y) / &sy
    };
    t >= Q::zero() && t <= Q::one() && &c.x + &t * &sx == p.x && &c.y + &t * &sy == p.y
}

fn oracle_meet(a: &AffinePoint, b: &AffinePoint, c: &AffinePoint, d: &AffinePoint) -> bool {
    let (rx, ry, sx, sy) = (&b.x - &a.x, &b.y - &a.y, &d.x - &c.x, &d.y - &c.y);
    let (ex, ey) = (&c.x - &a.x, &c.y - &a.y);
    let det = &rx * &sy - &ry * &sx;
    if !det.is_zero() {
        let unit = |v: &Q| *v >= Q::zero() && *v <= Q::one();
        return unit(&((&ex * &sy - &ey * &sx) / &det)) && unit(&((&ex * &ry - &ey * &rx) / &det));
    }
    oracle_on(a, c, d) || oracle_on(b, c, d) || oracle_on(c, a, b) || oracle_on(d, a, b)
}

fn oracle_disjoint(arcs: &[PLArc]) -> bool {
    let segs = |a: &PLArc| {
        a.vertices()
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect::<Vec<_>>()
    };
    (0..arcs.len()).all(|i| {
        (i + 1..arcs.len()).all(|j| {
            segs(&arcs[i])
                .iter()
                .all(|(a, b)| segs(&arcs[j]).iter().all(|(c, d)| !oracle_meet(a, b, c, d)))
        })
    })
}

fn grid_points(rng: &mut ChaCha8Rng, n: usize, side: i64) -> Vec<AffinePoint> {
    let mut all: Vec<AffinePoint> = (0..side)
        .flat_map(|x| (0..side).map(move |y| AffinePoint::int(x, y)))
        .collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

fn plane_counting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..450 {
        let k = round % 9;
        let pts = grid_points(&mut rng, 2 * k, 20);
        let (a, b) = pts.split_at(k);
        let r = plane::equal_size_e(a, b).map_err(|e| e.to_string())?;
        let w = r
            .witness
            .filter(|_| r.equal)
            .ok_or_else(|| format!("no witness for k={k}"))?;
        ensure(w.arcs().len() == k, || {
            format!("{} arcs for k={k}", w.arcs().len())
        })?;
        ensure(oracle_disjoint(w.arcs()), || format!("arcs meet for k={k}"))?;
        ensure(plane::matching_conditions(w.arcs(), a, b), || {
            format!("witness fails the clauses at k={k}")
        })?;
        let ends: BTreeSet<(AffinePoint, AffinePoint)> = w
            .arcs()
            .iter()
            .map(|x| (x.start().clone(), x.end().clone()))
            .collect();
        ensure(
            ends.iter().all(|(s, e)| a.contains(s) && b.contains(e)),
            || "arc ends outside A, B".into(),
        )?;
    }
    let mut passing = 0;
    for round in 0..500 {
        let n = rng.gen_range(0..7);
        let pts = grid_points(&mut rng, n, 6);
        let split = rng.gen_range(0..=pts.len());
        let (a, b) = pts.split_at(split);
        let arcs = if round % 2 == 0 {
            let count = rng.gen_range(0..4);
            plane::random_arcs(&mut rng, count, &pts)
        } else {
            let k = a.len().min(b.len());
            let mut arcs = plane::equal_size_e(&a[..k], &b[..k])
                .map_err(|e| e.to_string())?
                .witness
                .ok_or("no witness")?
                .arcs()
                .to_vec();
            let extra = rng.gen_range(0..2);
            arcs.extend(plane::random_arcs(&mut rng, extra, &pts));
            if !arcs.is_empty() && rng.gen_bool(0.3) {
                let i = rng.gen_range(0..arcs.len());
                arcs.remove(i);
            }
            arcs
        };
        if plane::matching_conditions(&arcs, a, b) {
            ensure(a.len() == b.len(), || {
                format!("clauses pass with |A|={} |B|={}", a.len(), b.len())
            })?;
            passing += 1;
        }
    }
    ensure(passing > 25, || {
        format!("only {passing} fuzzed systems passed the clauses")
    })?;
    Ok(format!(
        "450 witnesses on 20x20; 500 fuzzed systems, {passing} passing, all equal size"
    ))
}

// 10

fn along(o: &GridPoint, dir: &GridPoint, r: &GridPoint) -> u32 {
    if o.x == dir.x {
        r.y
    } else {
        r.x
    }
}

fn antichains() -> Outcome {
    let mut checked = 0usize;
    for m in 1..=4 {
        let acs = all_antichains(m, 3).map_err(|e| e.to_string())?;
        for (o, p, qq) in CoordinateSystem::all(m) {
            let cs = CoordinateSystem::new(m, o, p, qq, m as usize).map_err(|e| e.to_string())?;
            let on = |dir: &GridPoint, x: &Antichain| -> BTreeSet<u32> {
                x.points().iter().map(|r| along(&o, dir, r)).collect()
            };
            for a in &acs {
                for b in &acs {
                    let want = on(&p, a).len() == on(&p, b).len();
                    let w = cs.equal_size(a, b).map_err(|e| e.to_string())?;
                    ensure(w.is_some() == want, || format!("{a} {b} in ({o},{p},{qq})"))?;
                    if let Some(w) = w {
                        let ok = on(&p, &w.h_a) == on(&p, a)
                            && on(&p, &w.h_b) == on(&p, b)
                            && on(&qq, &w.h_a) == on(&qq, &w.g)
                            && on(&qq, &w.h_b) == on(&qq, &w.g);
                        ensure(ok, || format!("witness equations fail for {a} {b}"))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    // The one-shot entry point agrees on a sample.
    let g = GridPoint::new;
    let (a, b) = (
        Antichain::new(vec![g(1, 2), g(2, 1)]).expect("antichain"),
        Antichain::singleton(g(3, 3)),
    );
    ensure(
        equal_size_interpreted(3, &a, &b, (g(1, 1), g(3, 1), g(1, 3)), 3) == Ok(false),
        || "one-shot".into(),
    )?;
    Ok(format!("{checked} pairs"))
}

// 11

/// In-order position: `σ ↦ σ1000…` compared lexicographically.
fn in_order_key(s: &TreeNode, width: usize) -> String {
    let mut k = format!("{}1", s.as_str());
    while k.len() < width {
        k.push('0');
    }
    k
}

fn trees() -> Outcome {
    let nodes = tree::nodes_up_to(6);
    ensure(nodes.len() == 127, || format!("{} nodes", nodes.len()))?;
    let r = tree::order_axioms(&nodes, tree::horizontal);
    ensure(r.is_linear(), || format!("{r:?}"))?;
    for a in &nodes {
        for b in &nodes {
            ensure(
                tree::horizontal(a, b) == (in_order_key(a, 8) <= in_order_key(b, 8)),
                || format!("{a:?} {b:?}"),
            )?;
        }
    }
    let d = tree::density_probe(5, 7);
    ensure(d.passes(), || format!("{:?}", d.gaps.first()))?;
    let shallow = tree::nodes_up_to(5);
    let deep = tree::nodes_up_to(7);
    for (i, a) in shallow.iter().enumerate() {
        ensure(
            deep.iter().any(|c| in_order_key(c, 9) < in_order_key(a, 9)),
            || format!("{a:?} has nothing below"),
        )?;
        ensure(
            deep.iter().any(|c| in_order_key(c, 9) > in_order_key(a, 9)),
            || format!("{a:?} has nothing above"),
        )?;
        for b in &shallow[i + 1..] {
            let (lo, hi) = if in_order_key(a, 9) < in_order_key(b, 9) {
                (a, b)
            } else {
                (b, a)
            };
            let between = deep.iter().any(|c| {
                in_order_key(lo, 9) < in_order_key(c, 9) && in_order_key(c, 9) < in_order_key(hi, 9)
            });
            ensure(between, || format!("nothing between {lo:?} and {hi:?}"))?;
        }
    }
    Ok(format!("127 nodes linear; {} pairs dense", d.pairs))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("membership in s^N on N=30, cap 6", membership, Some(10)),
        (
            "multiplication and lcm from + and divisibility",
            multiplication,
            Some(5),
        ),
        (
            "encode/decode round trip and interpreted poset",
            round_trip,
            Some(30),
        ),
        (
            "check_I against semantics on grids of <= 8 points",
            check_i,
            None,
        ),
        ("size spectra realized by S", sequences, Some(30)),
        ("arith command for a, b <= 5", arith_cli, None),
        ("incidence constructions", constructions, None),
        ("convex characterizations and closure", convex, None),
        (
            "plane equal size completeness and soundness",
            plane_counting,
            None,
        ),
        ("interpreted equal size on antichains", antichains, Some(60)),
        ("horizontal tree order", trees, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(_), Some(s)) = (&outcome, limit) {
            if took >= Duration::from_secs(*s) {
                outcome = Err(format!("took {:.2}s, limit {s}s", took.as_secs_f64()));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} criterion {:>2}: {name}: {detail} ({:.2}s)",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
