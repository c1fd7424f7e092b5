use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().unwrap() }
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn poly(&self, name: &str, lattice: &str, arity: usize, coeffs: &str) -> String {
        self.write(name, &format!(r#"{{"lattice":{lattice},"arity":{arity},"coefficients":{{{coeffs}}}}}"#))
    }
}

const C2: &str = r#"{"type":"chain","size":2}"#;
const C3: &str = r#"{"type":"chain","size":3}"#;

fn latpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpoly")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval() {
    let f = Files::new();
    let and = f.poly("and.json", C3, 2, r#""1,2":2"#);
    let o = latpoly(&["eval", &and, "2,1"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "1\n"));

    let constant = f.poly("c.json", C3, 2, r#""":1"#);
    for point in ["0,0", "2,2", "1,0"] {
        assert_eq!(stdout(&latpoly(&["eval", &constant, point])), "1\n");
    }

    let o = latpoly(&["eval", &and, "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("expected 2 values"), "{}", stderr(&o));
    assert_eq!(code(&latpoly(&["eval", &and, "2,3"])), 2);
}

#[test]
fn eval_over_products_prints_coordinates() {
    let f = Files::new();
    let p = f.poly("p.json", r#"{"type":"product","factors":[2,3]}"#, 1, r#""1":[1,2]"#);
    assert_eq!(stdout(&latpoly(&["eval", &p, "4"])), "(1,1)\n");
    assert_eq!(stdout(&latpoly(&["--format", "machine", "eval", &p, "4"])), "4\n");
}

#[test]
fn classify() {
    let f = Files::new();
    let median = f.poly("m.json", C2, 3, r#""1,2":1,"1,3":1,"2,3":1"#);
    let o = latpoly(&["classify", &median]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("NotChainStructured: incomparable essential terms {1,2}, {1,3}\n"));

    let and = f.poly("and.json", C2, 2, r#""1,2":1"#);
    assert!(stdout(&latpoly(&["classify", &and])).starts_with("ChainForm: S_1={1,2}\n"));

    let or = f.poly("or.json", C2, 2, r#""1":1,"2":1"#);
    assert!(stdout(&latpoly(&["classify", &or])).starts_with("WeightedDisjunction\n"));

    let chain_form = f.poly("cf.json", C3, 3, r#""1":1,"2":1,"1,2":2"#);
    let o = latpoly(&["classify", &chain_form]);
    assert!(
        stdout(&o).contains("ChainForm: S_1={1,2}\na_∅=0 a_1=1 a_2=1 a_3=0 a_{1,2}=2\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn classify_rejects_bad_files() {
    let f = Files::new();
    let bad = f.write("bad.json", "{not json");
    assert_eq!(code(&latpoly(&["classify", &bad])), 2);
    let out_of_range = f.poly("r.json", C2, 2, r#""3":1"#);
    assert_eq!(code(&latpoly(&["classify", &out_of_range])), 2);
    assert_eq!(code(&latpoly(&["classify", "/nonexistent/file.json"])), 2);
}

#[test]
fn selfcommute() {
    let f = Files::new();
    let median = f.poly("m.json", C2, 3, r#""1,2":1,"1,3":1,"2,3":1"#);
    let o = latpoly(&["selfcommute", &median, "--method", "oracle"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "false\nwitness (3x3, row-first 1 vs column-first 0):\n0,0,0\n0,1,1\n1,0,1\n");

    let and3 = f.poly("and3.json", C2, 3, r#""1,2,3":1"#);
    let o = latpoly(&["selfcommute", &and3, "--method", "both"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "fast: true, oracle: true\n"));
    assert_eq!(stdout(&latpoly(&["selfcommute", &and3, "--method", "fast"])), "true\n");

    let product = f.poly("p.json", r#"{"type":"product","factors":[2,2]}"#, 2, r#""1,2":3"#);
    let o = latpoly(&["selfcommute", &product, "--method", "fast"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--method oracle"));
    assert_eq!(code(&latpoly(&["selfcommute", &product, "--method", "oracle"])), 0);
}

#[test]
fn commute() {
    let f = Files::new();
    let min = f.poly("min.json", C2, 2, r#""1,2":1"#);
    let max = f.poly("max.json", C2, 2, r#""1":1,"2":1"#);
    let o = latpoly(&["commute", &min, &max]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("false\n"));
    assert!(stdout(&o).ends_with("0,1\n1,0\n"));
    assert_eq!(stdout(&latpoly(&["commute", &min, &min])), "true\n");

    let other = f.poly("c3.json", C3, 2, r#""1,2":2"#);
    let o = latpoly(&["commute", &min, &other]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("C_3"));
    // Same size, different lattice.
    let c4 = f.poly("c4.json", r#"{"type":"chain","size":4}"#, 2, r#""1,2":3"#);
    let p22 = f.poly("p22.json", r#"{"type":"product","factors":[2,2]}"#, 2, r#""1,2":3"#);
    assert_eq!(code(&latpoly(&["commute", &c4, &p22])), 2);
}

#[test]
fn witness_replays_through_eval() {
    let f = Files::new();
    let p = f.poly("p.json", C2, 3, r#""1":1,"2,3":1"#);
    let o = latpoly(&["--format", "machine", "selfcommute", &p, "--method", "oracle"]);
    let line = stdout(&o);
    let fields: Vec<&str> = line.split_whitespace().collect();
    let rows: Vec<&str> = fields[1].trim_start_matches("witness=").split(';').collect();
    let eval = |point: &str| stdout(&latpoly(&["eval", &p, point])).trim().to_string();
    let row_values: Vec<String> = rows.iter().map(|r| eval(r)).collect();
    let row_first = eval(&row_values.join(","));
    let cells: Vec<Vec<&str>> = rows.iter().map(|r| r.split(',').collect()).collect();
    let col_values: Vec<String> =
        (0..3).map(|j| eval(&cells.iter().map(|r| r[j]).collect::<Vec<_>>().join(","))).collect();
    let column_first = eval(&col_values.join(","));
    assert_eq!(fields[2], format!("row_first={row_first}"));
    assert_eq!(fields[3], format!("column_first={column_first}"));
    assert_ne!(row_first, column_first);
}

#[test]
fn family() {
    let f = Files::new();
    let min2 = f.poly("min2.json", C2, 2, r#""1,2":1"#);
    let min3 = f.poly("min3.json", C2, 3, r#""1,2,3":1"#);
    let max2 = f.poly("max2.json", C2, 2, r#""1":1,"2":1"#);
    let o = latpoly(&["family", &min2, &min3]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "true\n"));
    let o = latpoly(&["--format", "machine", "family", &max2, &min2]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "family=false pair=1,2 witness=0,1;1,0 row_first=0 column_first=1\n");
}

#[test]
fn canon() {
    let f = Files::new();
    let p = f.poly("p.json", C2, 3, r#""1":1,"2,3":1"#);
    let o = latpoly(&["canon", &p]);
    assert_eq!(
        stdout(&o),
        "x1 ∨ x1x2 ∨ x1x3 ∨ x2x3 ∨ x1x2x3\nessential terms: {1}=1 {2,3}=1\nessential variables: x1 x2 x3\n"
    );
    let o = latpoly(&["--format", "machine", "canon", &p]);
    let round_trip = f.write("canon.json", &stdout(&o));
    assert_eq!(stdout(&latpoly(&["--format", "machine", "canon", &round_trip])), stdout(&o));
}

#[test]
fn verify() {
    let o = latpoly(&["verify", "--arity", "3", "--chain", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("checked=20 selfcommuting=13 mismatches=0\n"));
    let o = latpoly(&["verify", "--arity", "4", "--chain", "2", "--jobs", "2"]);
    assert!(stdout(&o).ends_with("checked=168 selfcommuting=28 mismatches=0\n"));
    let o = latpoly(&["verify", "--arity", "2", "--chain", "4"]);
    assert!(stdout(&o).contains("mismatches=0"));
}

#[test]
fn verify_golden_machine_output() {
    let o = latpoly(&["--format", "machine", "verify", "--arity", "2", "--chain", "2"]);
    assert_eq!(
        stdout(&o),
        "lattice=C_2 arity=2\n\
         coeffs=0,0,0,0 class=WeightedDisjunction fast=true oracle=true\n\
         coeffs=0,0,0,1 class=ChainForm fast=true oracle=true\n\
         coeffs=0,0,1,1 class=WeightedDisjunction fast=true oracle=true\n\
         coeffs=0,1,0,1 class=WeightedDisjunction fast=true oracle=true\n\
         coeffs=0,1,1,1 class=WeightedDisjunction fast=true oracle=true\n\
         coeffs=1,1,1,1 class=WeightedDisjunction fast=true oracle=true\n\
         checked=6 selfcommuting=6 mismatches=0\n"
    );
}

#[test]
fn verify_rejects_bad_sizes() {
    assert_eq!(code(&latpoly(&["verify", "--arity", "5", "--chain", "2"])), 2);
    assert_eq!(code(&latpoly(&["verify", "--arity", "2", "--chain", "1"])), 2);
    assert_eq!(code(&latpoly(&["verify", "--arity", "2"])), 2);
}

#[test]
fn search() {
    let a = latpoly(&["--format", "machine", "search", "--arity", "2", "--product", "2,2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(
        stdout(&a),
        "lattice=C_2×C_2 arity=2\n\
         checked=36 selfcommuting=36 structured=36 sufficiency_confirmed=36 sufficiency_violations=0 candidates=0\n"
    );
    let b = latpoly(&["--format", "machine", "search", "--arity", "2", "--product", "2,2"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn search_rejects_chains() {
    let f = Files::new();
    let chain = f.write("c.json", C3);
    let o = latpoly(&["search", "--arity", "2", "--lattice", &chain]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("use verify"));
    assert_eq!(code(&latpoly(&["search", "--arity", "2", "--product", "3"])), 2);
    assert_eq!(code(&latpoly(&["search", "--arity", "2"])), 2);
}
