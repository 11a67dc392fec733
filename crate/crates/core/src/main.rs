use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use toplat::antichain::{self, Antichain, CoordinateSystem, GridPoint};
use toplat::convex::Polyhedron;
use toplat::formula::{define_set, evaluate, parse_formula, Assignment, FiniteStructure};
use toplat::incidence::{self, AffinePoint};
use toplat::interval::{self, IntervalSet};
use toplat::monadic::{self, FiniteSemigroup, PlusDivides, Semigroup, SetMask, WeakPower};
use toplat::plane;
use toplat::rational::{parse_q, Q};
use toplat::report::VerifyReport;
use toplat::suites::{self, Options};

#[derive(Parser)]
#[command(
    name = "toplat",
    version,
    about = "Definability workbench for topological lattices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Cmd {
    /// Evaluate a formula on a structure file.
    Eval {
        /// Structure JSON: {"universe": [...], "relations": {name: {"arity": n, "tuples": [...]}}}.
        structure: PathBuf,
        /// S-expression formula, or @path to read it from a file.
        formula: String,
        /// Assignments var=element for the free variables.
        #[arg(long = "assign", value_name = "VAR=ELEM")]
        assign: Vec<String>,
        /// Print the set defined by the free variables instead of a verdict.
        #[arg(long)]
        define: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// Suite names, or "all".
        suites: Vec<String>,
        /// List the suites and the module each covers.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        size: SizeArgs,
        /// Failing cases to print per suite.
        #[arg(long, default_value_t = 10)]
        show: usize,
        /// Write the report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Addition or multiplication of naturals through an interpretation.
    Arith {
        op: Op,
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Backend::Interval)]
        backend: Backend,
        /// Grid points for the interval backend.
        #[arg(long)]
        grid: Option<usize>,
        /// Truncation bound for the monadic backend.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Inspect a single input of one of the module formats.
    Inspect {
        #[command(subcommand)]
        what: Inspect,
        #[arg(long, value_name = "PATH", global = true)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SizeArgs {
    /// Grid size (points, side length or tree depth, per suite).
    #[arg(long)]
    grid: Option<usize>,
    /// Truncation bound of (N, +).
    #[arg(long)]
    bound: Option<usize>,
    /// Cap on set sizes in weak powers and witness pools.
    #[arg(long)]
    cap: Option<usize>,
    /// Number of fuzzed cases.
    #[arg(long)]
    fuzz: Option<usize>,
    /// Seed for fuzzed cases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Inspect {
    /// An interval set such as "[0,1] [2,5/2]".
    Interval { text: String },
    /// A polyhedron such as "x + y <= 1; x > 0".
    Polyhedron { text: String },
    /// Sum or product of the points A and C on the line O I, with B off it.
    Construct {
        op: Op,
        #[arg(long)]
        o: AffinePoint,
        #[arg(long)]
        i: AffinePoint,
        #[arg(long)]
        a: AffinePoint,
        #[arg(long)]
        c: AffinePoint,
        #[arg(long)]
        b: AffinePoint,
    },
    /// Torsion elements and generated membership of a finite semigroup given
    /// as a structure file with a ternary relation "prod".
    Semigroup {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Equal size of two disjoint point sets: {"a": [[x,y],...], "b": [...]}.
    Points { file: PathBuf },
    /// Interpreted equal size of anti-chains: {"grid": m, "a": [[x,y],...], "b": [...], "o": [x,y], "p": [x,y], "q": [x,y]}.
    Antichains {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Add,
    Mul,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Interval,
    Monadic,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Input(String),
    #[error("unknown suite {0:?}; try --list")]
    UnknownSuite(String),
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_json(path: &Option<PathBuf>, v: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, format!("{v}\n")).map_err(|e| CliError::Io(p.clone(), e)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<bool, CliError> {
    match cmd {
        Cmd::Eval {
            structure,
            formula,
            assign,
            define,
            json,
        } => cmd_eval(&structure, &formula, &assign, define, &json),
        Cmd::Verify {
            suites,
            list,
            size,
            show,
            json,
        } => cmd_verify(&suites, list, &size, show, &json),
        Cmd::Arith {
            op,
            m,
            n,
            backend,
            grid,
            bound,
            json,
        } => cmd_arith(op, m, n, backend, grid, bound, &json),
        Cmd::Inspect { what, json } => cmd_inspect(what, &json),
    }
}

fn cmd_eval(
    structure: &Path,
    formula: &str,
    assign: &[String],
    define: bool,
    json: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let s = FiniteStructure::from_json(&read(structure)?).map_err(input)?;
    let text = match formula.strip_prefix('@') {
        Some(p) => read(Path::new(p))?,
        None => formula.to_string(),
    };
    let f = parse_formula(&text).map_err(input)?;
    if define {
        let vars = f.free_vars();
        let set = define_set(&s, &f, &vars).map_err(input)?;
        let rows: Vec<Vec<&str>> = set
            .iter()
            .map(|t| t.iter().map(|&i| s.universe()[i].as_str()).collect())
            .collect();
        println!("{} tuple(s) over ({})", rows.len(), vars.join(", "));
        for r in &rows {
            println!("  ({})", r.join(", "));
        }
        write_json(
            json,
            &serde_json::to_string_pretty(&json!({ "vars": vars, "tuples": rows })).expect("json"),
        )?;
        return Ok(true);
    }
    let mut asg = Assignment::new();
    for a in assign {
        let (v, e) = a
            .split_once('=')
            .ok_or_else(|| input(format!("assignment {a:?} is not VAR=ELEM")))?;
        let pos = s
            .position(e)
            .ok_or_else(|| input(format!("unknown element {e:?}")))?;
        asg.insert(v.to_string(), pos);
    }
    let verdict = evaluate(&s, &f, &asg).map_err(input)?;
    println!("{verdict}");
    write_json(
        json,
        &serde_json::to_string_pretty(&json!({ "formula": f.to_string(), "value": verdict }))
            .expect("json"),
    )?;
    Ok(verdict)
}

fn cmd_verify(
    names: &[String],
    list: bool,
    size: &SizeArgs,
    show: usize,
    json: &Option<PathBuf>,
) -> Result<bool, CliError> {
    if list {
        for s in suites::SUITES {
            println!("{:<10} {:<19} {}", s.name, s.module, s.checks);
        }
        return Ok(true);
    }
    let picked: Vec<&suites::Suite> = if names.is_empty() || names.iter().any(|n| n == "all") {
        suites::SUITES.iter().collect()
    } else {
        names
            .iter()
            .map(|n| suites::find(n).ok_or_else(|| CliError::UnknownSuite(n.clone())))
            .collect::<Result<_, _>>()?
    };
    let opts = Options {
        grid: size.grid,
        bound: size.bound,
        cap: size.cap,
        fuzz: size.fuzz,
        seed: size.seed,
    };
    let mut reports = Vec::new();
    for s in picked {
        let r = s.run(&opts);
        print!("{}", r.text(show));
        reports.push(r);
    }
    let report = VerifyReport::new(reports);
    write_json(json, &report.to_json())?;
    Ok(report.passes())
}

fn cmd_arith(
    op: Op,
    m: usize,
    n: usize,
    backend: Backend,
    grid: Option<usize>,
    bound: Option<usize>,
    json: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let (sym, oracle) = match op {
        Op::Add => ("+", m + n),
        Op::Mul => ("*", m * n),
    };
    let (value, trace, size) = match backend {
        Backend::Interval => {
            let out = match op {
                Op::Add => interval::lattice_add(m, n, grid),
                Op::Mul => interval::lattice_mul(m, n, grid),
            }
            .map_err(input)?;
            (out.value, out.trace, out.grid)
        }
        Backend::Monadic => match op {
            Op::Add => monadic_add(m, n, bound)?,
            Op::Mul => {
                let b = bound.unwrap_or_else(|| monadic::bound_for_products(m * n));
                if m == 0 || n == 0 {
                    // The truncation holds no empty chain: 0 is the size of the empty set.
                    (
                        0,
                        vec![format!("{m} {sym} {n}: a factor is the empty set")],
                        b,
                    )
                } else {
                    let (v, t) = PlusDivides::new(b).multiply_traced(m, n).map_err(input)?;
                    (v, t, b)
                }
            }
        },
    };
    for line in &trace {
        println!("  {line}");
    }
    println!("{m} {sym} {n} = {value}");
    write_json(
        json,
        &serde_json::to_string_pretty(&json!({ "op": sym, "m": m, "n": n, "value": value, "oracle": oracle, "size": size, "trace": trace }))
            .expect("json"),
    )?;
    if value != oracle {
        return Err(input(format!(
            "mismatch: interpretation gave {value}, native arithmetic {oracle}"
        )));
    }
    Ok(true)
}

/// `m + n` in the weak monadic structure of a pure set of `bound` points:
/// the size class `c` with `A([a], [b], [c])`.
fn monadic_add(
    m: usize,
    n: usize,
    bound: Option<usize>,
) -> Result<(usize, Vec<String>, usize), CliError> {
    let needed = (m + n).max(1);
    let size = bound.unwrap_or(needed);
    if size < needed {
        return Err(input(format!(
            "truncation of {size} points too small: needs at least {needed}"
        )));
    }
    let w = WeakPower::pure_set(size, needed);
    let (a, b) = (SetMask::full(m), SetMask::full(n));
    let mut trace = vec![format!("a = {}, b = {}", w.label(a), w.label(b))];
    for k in 0..=needed {
        let c = SetMask::full(k);
        if monadic::addition_on_classes(&w, a, b, c).is_true() {
            trace.push(format!("A([a], [b], [c]) holds for c = {}", w.label(c)));
            return Ok((k, trace, size));
        }
    }
    Err(input(format!("no class c found on {size} points")))
}

fn cmd_inspect(what: Inspect, json: &Option<PathBuf>) -> Result<bool, CliError> {
    let (value, ok) = match what {
        Inspect::Interval { text } => {
            let u: IntervalSet = text.parse().map_err(input)?;
            let rep = interval::check_i(&u);
            let afg = (!u.is_empty())
                .then(|| interval::decode_afg(&u))
                .transpose()
                .map_err(input)?;
            println!("set        {u}");
            println!("components {}", u.len());
            println!(
                "I(x)       {} (semantic {})",
                rep.verdict,
                interval::check_i_semantic(&u)
            );
            if let Some(t) = &afg {
                let show = |s: &std::collections::BTreeSet<Q>| {
                    s.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                println!("E          {}", show(&t.e));
                println!("F          {}", show(&t.f));
                println!("G          {}", show(&t.g));
            }
            (
                json!({ "set": u.to_string(), "components": u.len(), "check_i": rep }),
                true,
            )
        }
        Inspect::Polyhedron { text } => {
            let p: Polyhedron = text.parse().map_err(input)?;
            let cl = p.closure();
            let ext: Vec<String> = p.extreme_points().iter().map(|x| x.to_string()).collect();
            println!("canonical  {p}");
            println!("empty      {}", p.is_empty());
            println!(
                "dimension  {}",
                p.dim().map_or("-".into(), |d| d.to_string())
            );
            println!("closed     {}", p.is_closed());
            println!("closure    {cl}");
            println!("bounded    {}", p.is_bounded());
            println!("extreme points of closure {}", ext.join(" "));
            let v = json!({
                "canonical": p.to_string(), "empty": p.is_empty(), "dim": p.dim(), "closed": p.is_closed(),
                "closure": cl.to_string(), "bounded": p.is_bounded(), "closure_extreme_points": ext,
            });
            (v, true)
        }
        Inspect::Construct { op, o, i, a, c, b } => {
            let (r, trace) = match op {
                Op::Add => incidence::add_construct(&o, &a, &c, &b),
                Op::Mul => incidence::mul_construct(&o, &i, &a, &c, &b),
            }
            .map_err(input)?;
            for (name, what) in &trace.steps {
                println!("  {name:<4} {what}");
            }
            let coord = |p: &AffinePoint| incidence::coordinate(&o, &i, p).map_err(input);
            let (ca, cc, cr) = (coord(&a)?, coord(&c)?, coord(&r)?);
            let want = match op {
                Op::Add => &ca + &cc,
                Op::Mul => &ca * &cc,
            };
            println!("result {r} (coordinate {cr}, expected {want})");
            (
                json!({ "result": r, "coordinate": cr.to_string(), "trace": trace }),
                cr == want,
            )
        }
        Inspect::Semigroup { file, cap } => {
            let st = FiniteStructure::from_json(&read(&file)?).map_err(input)?;
            let sg = FiniteSemigroup::from_structure(&st).map_err(input)?;
            let n = sg.len();
            let torsion: Vec<String> = (0..n)
                .filter(|&g| monadic::is_torsion(&sg, g))
                .map(|g| sg.label(g))
                .collect();
            println!("torsion    {}", torsion.join(" "));
            let mut rows = Vec::new();
            for g in 0..n {
                let inside: Vec<String> = (0..n)
                    .filter(|&t| monadic::in_generated(&sg, g, t, cap).verdict.is_true())
                    .map(|t| sg.label(t))
                    .collect();
                println!("<{}>       {}", sg.label(g), inside.join(" "));
                rows.push(json!({ "generator": sg.label(g), "members": inside }));
            }
            (json!({ "torsion": torsion, "generated": rows }), true)
        }
        Inspect::Points { file } => {
            #[derive(Deserialize)]
            struct PointsFile {
                a: Vec<Value>,
                b: Vec<Value>,
            }
            let pf: PointsFile = serde_json::from_str(&read(&file)?).map_err(input)?;
            let pts = |v: &[Value]| v.iter().map(point_from_json).collect::<Result<Vec<_>, _>>();
            let (a, b) = (pts(&pf.a)?, pts(&pf.b)?);
            let rep = plane::equal_size_e(&a, &b).map_err(input)?;
            println!("equal size {}", rep.equal);
            if let Some(w) = &rep.witness {
                for arc in w.arcs() {
                    println!(
                        "  {}",
                        arc.vertices()
                            .iter()
                            .map(|p| format!("({p})"))
                            .collect::<Vec<_>>()
                            .join(" - ")
                    );
                }
            }
            (json!(rep), rep.equal)
        }
        Inspect::Antichains { file, cap } => {
            #[derive(Deserialize)]
            struct AntichainFile {
                grid: u32,
                a: Antichain,
                b: Antichain,
                o: GridPoint,
                p: GridPoint,
                q: GridPoint,
            }
            let af: AntichainFile = serde_json::from_str(&read(&file)?).map_err(input)?;
            let cs = CoordinateSystem::new(af.grid, af.o, af.p, af.q, cap).map_err(input)?;
            let w = cs.equal_size(&af.a, &af.b).map_err(input)?;
            let proj = |x: &Antichain| antichain::project_set(&af.o, &af.p, x).map_err(input);
            let (pa, pb) = (proj(&af.a)?, proj(&af.b)?);
            println!("A = {}, B = {}", af.a, af.b);
            println!("projections of size {} and {}", pa.len(), pb.len());
            match &w {
                Some(w) => println!("equal size: G = {}, H_A = {}, H_B = {}", w.g, w.h_a, w.h_b),
                None => println!("no witnesses G, H_A, H_B"),
            }
            (
                json!({ "equal": w.is_some(), "witness": w, "sizes": [pa.len(), pb.len()] }),
                w.is_some(),
            )
        }
    };
    write_json(json, &serde_json::to_string_pretty(&value).expect("json"))?;
    Ok(ok)
}

/// A point given as [x, y] with integer or "p/q" coordinates, or as "x,y".
fn point_from_json(v: &Value) -> Result<AffinePoint, CliError> {
    let coord = |c: &Value| -> Result<Q, CliError> {
        match c {
            Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().expect("i64").into())),
            Value::String(s) => parse_q(s).map_err(input),
            _ => Err(input(format!("bad coordinate {c}"))),
        }
    };
    match v {
        Value::Array(xy) if xy.len() == 2 => Ok(AffinePoint::new(coord(&xy[0])?, coord(&xy[1])?)),
        Value::String(s) => s.parse().map_err(input),
        _ => Err(input(format!("bad point {v}"))),
    }
}
