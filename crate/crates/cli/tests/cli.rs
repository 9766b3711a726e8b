use std::io::Write;
use std::process::{Command, Output};

use deltarig::BiPoly;
use serde_json::Value;

const NP: &str = r#"{"ground": ["1","2","3"], "feasible": [[], ["1","2"], ["1","3"], ["2","3"]]}"#;
const TORUS: &str = r#"{"vertices": [[1,3,2,4]], "edges": [{"darts":[1,2],"sign":1,"label":"e1"}, {"darts":[3,4],"sign":1,"label":"e2"}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltarig")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn poly(s: &str) -> BiPoly {
    s.parse().unwrap()
}

#[test]
fn dm_tutte_of_np() {
    let f = file(NP);
    let o = run(&["dm", "tutte", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(poly(&stdout(&o)), poly("y^2 + 3*x*y - 2*x - 2*y"));
}

#[test]
fn dm_tutte_json() {
    let o = run(&["--format", "json", "dm", "tutte", NP]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(poly(v["polynomial"].as_str().unwrap()), poly("y^2 + 3*x*y - 2*x - 2*y"));
    assert_eq!(v["lattice"], "integral");
}

#[test]
fn poly_factor_square() {
    let o = run(&["poly", "factor", "x^2+2*x*y+y^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(x + y)^2");
}

#[test]
fn printed_polynomials_reparse() {
    for p in ["x^2+2*x+2*y+y^2", "(x+y)*(2*x*y-x-y)", "-3*x^3*y + 7", "6*x^2 - 4*x*y - 5*x + 6*y - 6"] {
        let o = run(&["--format", "json", "poly", "factor", p]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let mut prod = BiPoly::constant(v["content"].as_str().unwrap().parse::<i64>().unwrap());
        for f in v["factors"].as_array().unwrap() {
            prod = &prod * &poly(f["factor"].as_str().unwrap()).pow(f["multiplicity"].as_u64().unwrap() as u32);
        }
        assert_eq!(prod, poly(p), "{p}");
    }
}

#[test]
fn irreducibility_and_eval() {
    assert_eq!(stdout(&run(&["poly", "irreducible", "x^2+2*x+2*y+y^2"])), "true");
    assert_eq!(stdout(&run(&["poly", "irreducible", "(x+y)*(2*x*y-x-y)"])), "false");
    assert_eq!(stdout(&run(&["poly", "eval", "x*y - 3", "--x", "-2", "--y", "5"])), "-13");
}

#[test]
fn dm_verbs() {
    assert_eq!(stdout(&run(&["dm", "beta", NP])), "-2");
    assert!(stdout(&run(&["dm", "connected", NP])).starts_with("true"));
    assert!(stdout(&run(&["dm", "seriesparallel", NP])).starts_with("false"));
    let dual: Value = serde_json::from_str(&stdout(&run(&["dm", "dual", NP]))).unwrap();
    assert_eq!(dual["feasible"].as_array().unwrap().len(), 4);
    let twist: Value = serde_json::from_str(&stdout(&run(&["dm", "twist", NP, "--set", "1,2"]))).unwrap();
    assert!(twist["feasible"].as_array().unwrap().contains(&serde_json::json!([])));
    let rows: Value = serde_json::from_str(&stdout(&run(&["--format", "json", "dm", "brylawski", NP]))).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn dm_profile_reads_polynomial() {
    let o = run(&["--format", "json", "dm", "profile", "y^2 + 3*x*y - 2*x - 2*y"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n_elements"], 3);
    assert_eq!(v["width"], 2);
    assert_eq!(v["is_even"], true);
    assert_eq!(run(&["dm", "profile", "x + 1"]).status.code(), Some(1));
}

#[test]
fn rg_verbs() {
    let f = file(TORUS);
    let path = f.path().to_str().unwrap();
    assert_eq!(poly(&stdout(&run(&["rg", "poly", path]))), poly("2*x*y - x - y"));
    let m: Value = serde_json::from_str(&stdout(&run(&["--format", "json", "rg", "metrics", path]))).unwrap();
    assert_eq!(m["euler_genus"], 2);
    assert_eq!(stdout(&run(&["rg", "quasitrees", path])), "{}\n{e1,e2}");
    let d: Value = serde_json::from_str(&stdout(&run(&["rg", "dm", path]))).unwrap();
    assert_eq!(d["ground"], serde_json::json!(["e1", "e2"]));
    let j: Value = serde_json::from_str(&stdout(&run(&["rg", "join", path, path, "--pos1", "2"]))).unwrap();
    assert_eq!(j["vertices"].as_array().unwrap().len(), 1);
    let u: Value = serde_json::from_str(&stdout(&run(&["rg", "union", path, path]))).unwrap();
    assert_eq!(u["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_theorem_passes() {
    let o = run(&["--format", "json", "verify", "theorem", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_serpar_from_ops_file() {
    let f = file(r#"[[{"series":"e1"},{"parallel":"e2"}], [{"parallel":"e1"}]]"#);
    let o = run(&["verify", "serpar", "--ops", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 instances, 0 failures"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dm", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["dm", "tutte", NP, "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let bad = run(&["dm", "tutte", r#"{"ground": ["1"], "feasible": [[]"#]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("column"));
    let invalid = run(&["dm", "tutte", r#"{"ground": ["1","2"], "feasible": [[], ["1"], ["1","2"], ["2"], ["x"]]}"#]);
    assert_eq!(invalid.status.code(), Some(1));
    assert_eq!(run(&["dm", "tutte", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["poly", "factor", "x^"]).status.code(), Some(1));
    assert_eq!(run(&["poly", "factor", "0"]).status.code(), Some(1));
}
