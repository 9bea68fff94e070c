use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn toricap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn report_square() {
    let o = toricap(&["report", &data("square_half.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("c_P       1/2"), "{s}");
    assert!(s.contains("MonotoneDiagonal"));
}

#[test]
fn report_json_round_trips_through_serde() {
    let o = toricap(&["report", &data("omega_3_10.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["c_p"]["lower"], "2/5");
    assert_eq!(v["c_l"]["rule"], "EtaOnBoundary");
}

#[test]
fn report_csv_has_header() {
    let o = toricap(&["report", &data("cross.json"), "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("a,delta,eta,cL,"), "{s}");
    assert_eq!(s.lines().count(), 2);
}

#[test]
fn info_prints_canonical_form() {
    let o = toricap(&["info", &data("nduc.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#"canonical: {"kind":"nduc","n":2,"a":"3/4"}"#));
}

#[test]
fn bound_on_omega() {
    let o = toricap(&["bound", &data("omega_3_10.json"), "--d", "3", "--d", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("bound = 2/5\n"), "{s}");
    let rows: Vec<Vec<&str>> = s.lines().map(|l| l.split_whitespace().collect()).collect();
    assert!(rows.contains(&vec!["3", "4/5"]), "{s}");
    assert!(rows.contains(&vec!["30", "8/19"]), "{s}");
}

#[test]
fn bound_refuses_rectilinear() {
    let o = toricap(&["bound", &data("cross.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: theorem inapplicable"));
}

#[test]
fn amin_agrees() {
    let o = toricap(&["amin", "--x", "2/3,1/2", "--brute", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("closed=1/6\nbrute=1/6"), "{s}");
    assert!(s.ends_with("agree\n"));
}

#[test]
fn obstruct_large_instance() {
    let o = toricap(&[
        "obstruct",
        "--source",
        &data("square_half.json"),
        "--target",
        &data("omega_3_10.json"),
        "--alpha",
        "e(1,-1)^30 * e(-1,1)^30 * e(1,1)^2",
        "--vmax",
        "3",
        "--lmax",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "InfeasibleWithinBounds");
    assert_eq!(v["obstructed_a"], "1/2");
}

#[test]
fn obstruct_refuses_hyperbolic_alpha() {
    let sq = data("square_half.json");
    let o = toricap(&["obstruct", "--source", &sq, "--target", &sq, "--alpha", "h(1,1)", "--vmax", "2", "--lmax", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_exit_2() {
    let cases: Vec<Vec<String>> = vec![
        vec!["report".into(), data("bad_chain.json")],
        vec!["report".into(), data("does_not_exist.json")],
        vec!["amin".into(), "--x".into(), "1/0,1".into()],
        vec!["amin".into(), "--x".into(), "1/2,0".into()],
        vec!["xa".into(), "--a".into(), "1/2".into()],
        vec!["xa".into(), "--sweep".into(), "1/8..1/4".into()],
        vec!["obstruct".into(), "--source".into(), data("square_half.json"), "--target".into(), data("square_half.json"), "--alpha".into(), "e(2,2)".into(), "--vmax".into(), "2".into(), "--lmax".into(), "1".into()],
        vec!["bogus".into()],
    ];
    for args in cases {
        let o = Command::new(env!("CARGO_BIN_EXE_toricap")).args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        let e = stderr(&o);
        assert!(e.starts_with("error: "), "{args:?}: {e}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let o = toricap(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["info", "report", "xa", "bound", "obstruct", "amin"] {
        assert!(stdout(&o).contains(sub), "{sub}");
    }
}
