use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn toplat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toplat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toplat-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

const CHAIN: &str = r#"{"universe":["a","b"],"relations":{"le":{"arity":2,"tuples":[["a","a"],["a","b"],["b","b"]]}}}"#;

#[test]
fn eval_exit_codes() {
    let s = temp("chain.json", CHAIN);
    let s = s.to_str().unwrap();
    let o = toplat(&["eval", s, "(exists x (forall y (le x y)))"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    let o = toplat(&["eval", s, "(le x y)", "--assign", "x=b", "--assign", "y=a"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "false"));
    let o = toplat(&["eval", s, "(exists x (le x y)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("byte"), "{}", stderr(&o));
    assert_eq!(code(&toplat(&["eval", s, "(le x y)"])), 2);
    assert_eq!(code(&toplat(&["eval", "/nonexistent.json", "(le x x)"])), 2);
    let o = toplat(&["eval", s, "(le x y)", "--define"]);
    assert!(stdout(&o).starts_with("3 tuple(s)"));
}

#[test]
fn verify_reports_are_reproducible() {
    let (a, b) = (temp("a.json", ""), temp("b.json", ""));
    for p in [&a, &b] {
        let o = toplat(&[
            "verify",
            "geometry",
            "trees",
            "--fuzz",
            "40",
            "--seed",
            "7",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
    let (ja, jb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["schema"], "toplat-verify/1");
    assert_eq!(v["suites"][0]["summary"]["fail"], 0);
    let other = temp("c.json", "");
    toplat(&[
        "verify",
        "geometry",
        "trees",
        "--fuzz",
        "40",
        "--seed",
        "8",
        "--json",
        other.to_str().unwrap(),
    ]);
    assert_ne!(fs::read(&other).unwrap(), ja);
}

#[test]
fn verify_examples() {
    let o = toplat(&["verify", "semigroup", "--bound", "30", "--cap", "6"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("excluded=0 "), "{}", stdout(&o));
    assert_eq!(code(&toplat(&["verify", "intervals", "--grid", "8"])), 0);
    assert_eq!(
        code(&toplat(&[
            "verify", "geometry", "--fuzz", "200", "--seed", "7"
        ])),
        0
    );
    assert_eq!(code(&toplat(&["verify", "nope"])), 2);
    let list = stdout(&toplat(&["verify", "--list"]));
    for module in [
        "formula-core",
        "weak-monadic",
        "interval-lattice",
        "tree-orders",
        "incidence-geometry",
        "convex-lattice",
        "plane-counting",
        "antichain-lattice",
    ] {
        assert!(list.contains(module), "{module}");
    }
}

#[test]
fn arith_examples() {
    let o = toplat(&["arith", "mul", "2", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2 * 3 = 6"));
    assert!(stdout(&o).lines().count() > 1);
    assert!(stdout(&toplat(&["arith", "add", "0", "5"])).contains("0 + 5 = 5"));
    let o = toplat(&["arith", "mul", "9", "9", "--grid", "5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("needs at least"));
    let o = toplat(&[
        "arith",
        "mul",
        "9",
        "9",
        "--backend",
        "monadic",
        "--bound",
        "20",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("needs at least"));
    for (op, m, n, want) in [
        ("add", "2", "3", "5"),
        ("mul", "4", "5", "20"),
        ("mul", "0", "3", "0"),
    ] {
        let o = toplat(&["arith", op, m, n, "--backend", "monadic"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stdout(&o).trim_end().ends_with(&format!("= {want}")));
    }
}

#[test]
fn inspect_inputs() {
    let o = toplat(&["inspect", "interval", "[0,1] [2,5/2]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("components 2"));
    assert_eq!(code(&toplat(&["inspect", "interval", "[2,1]"])), 2);
    let o = toplat(&["inspect", "polyhedron", "x + y <= 1; x > 0; y >= 0"]);
    assert!(stdout(&o).contains("closed     false"));
    assert_eq!(code(&toplat(&["inspect", "polyhedron", "x + y <<= 1"])), 2);
    let o = toplat(&[
        "inspect",
        "construct",
        "mul",
        "--o",
        "0,0",
        "--i",
        "1,0",
        "--a",
        "2,0",
        "--c",
        "3/2,0",
        "--b",
        "0,1",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("result 3,0"));
    let o = toplat(&[
        "inspect",
        "construct",
        "add",
        "--o",
        "0,0",
        "--i",
        "1,0",
        "--a",
        "2,0",
        "--c",
        "3/2,0",
        "--b",
        "5,0",
    ]);
    assert_eq!(code(&o), 2);

    let pts = temp("pts.json", r#"{"a":[[0,0],["1/2",3]],"b":["2,2",[5,1]]}"#);
    let out = temp("pts-out.json", "");
    let o = toplat(&[
        "inspect",
        "points",
        pts.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["witness"]["arcs"].as_array().unwrap().len(), 2);
    let uneq = temp("uneq.json", r#"{"a":[[0,0]],"b":[[1,1],[2,2]]}"#);
    assert_eq!(
        code(&toplat(&["inspect", "points", uneq.to_str().unwrap()])),
        1
    );

    let good = temp(
        "ac.json",
        r#"{"grid":3,"a":[[1,1]],"b":[[2,2]],"o":[1,1],"p":[3,1],"q":[1,3]}"#,
    );
    assert_eq!(
        code(&toplat(&["inspect", "antichains", good.to_str().unwrap()])),
        0
    );
    let two = temp(
        "ac2.json",
        r#"{"grid":3,"a":[[1,2],[2,1]],"b":[[2,2]],"o":[1,1],"p":[3,1],"q":[1,3]}"#,
    );
    assert_eq!(
        code(&toplat(&["inspect", "antichains", two.to_str().unwrap()])),
        1
    );
    let bad = temp(
        "ac3.json",
        r#"{"grid":3,"a":[[1,1],[2,2]],"b":[[2,2]],"o":[1,1],"p":[3,1],"q":[1,3]}"#,
    );
    let o = toplat(&["inspect", "antichains", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("comparable"));

    let z3 = temp(
        "z3.json",
        r#"{"universe":["0","1","2"],"relations":{"prod":{"arity":3,"tuples":[["0","0","0"],["0","1","1"],["0","2","2"],["1","0","1"],["1","1","2"],["1","2","0"],["2","0","2"],["2","1","0"],["2","2","1"]]}}}"#,
    );
    let o = toplat(&["inspect", "semigroup", z3.to_str().unwrap()]);
    assert!(stdout(&o).contains("torsion    0 1 2"));
}
