//! The `modinv` binary end to end: exit codes, file round trips and
//! deterministic output.

use std::fs;
use std::process::{Command, Output};

use modinv::cli::{load_module, save_module};
use modinv::modrep::{module_to_json, regular_module};

fn modinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn report_for_the_regular_module() {
    let o = modinv(&["report", "--zoo", "regular:p=3,r=2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..10], ["regular:p=3;r=2", "3", "2", "9", "6", "yes", "3", "3", "yes", "3"]);
}

#[test]
fn trivial_module_reports_zeros() {
    let out = stdout(&modinv(&["report", "--zoo", "trivial:p=3,r=2,dim=4"]));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[4..11], ["0", "yes", "0", "0", "yes", "0", "4:0:0"]);
}

#[test]
fn non_constant_rank_still_exits_zero() {
    let o = modinv(&["report", "--zoo", "mr2:p=5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let header: Vec<&str> = out.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!((col("constant_2"), col("deg_1")), ("no", "1"));
}

#[test]
fn undetermined_fields_exit_two_and_are_never_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    let o = modinv(&["degree", "--zoo", "regular:p=5,r=3", "--max-dim", "125", "-j", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text, "name,j,deg\nregular:p=5;r=3,2,undet\n");
}

#[test]
fn zoo_table_at_three() {
    let out = stdout(&modinv(&["zoo", "--primes", "3"]));
    let header: Vec<&str> = out.lines().next().unwrap().split(',').collect();
    let find = |name: &str| -> Vec<String> {
        out.lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("{name}"))
            .split(',')
            .map(String::from)
            .collect()
    };
    let deg1 = header.iter().position(|h| *h == "deg_1").unwrap();
    let deg2 = header.iter().position(|h| *h == "deg_2").unwrap();
    assert_eq!(find("mn:p=3;n=2,")[deg1], "1");
    assert_eq!(find("mn:p=3;n=4,")[deg1], "3");
    let rad = find("rad:p=3;");
    assert_eq!((rad[deg1].as_str(), rad[deg2].as_str()), ("2", "1"));
    // catalog order, then p ascending
    let both = stdout(&modinv(&["zoo", "--primes", "5,3"]));
    let names: Vec<&str> = both.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert!(names.first().unwrap().contains("p=5") && names.last().unwrap().contains("p=3"));
}

#[test]
fn empty_selection_gives_a_header() {
    let o = modinv(&["zoo", "--primes", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn identical_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = modinv(&["report", "--zoo", "h:p=3", "--zoo", "mn:p=3,n=3", "--format", "json", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: serde_json::Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v[0]["name"], "h:p=3");
    assert_eq!(v[1]["degrees"][1], 2);
}

#[test]
fn module_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.json");
    let m = regular_module(3, 2).unwrap();
    save_module(&m, &path).unwrap();
    let back = load_module(&path).unwrap();
    assert_eq!(back, m);
    let again = dir.path().join("v.json");
    save_module(&back, &again).unwrap();
    assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap());

    let saved = dir.path().join("w.json");
    let o = modinv(&["validate", "--zoo", "regular:p=3,r=2", "--save", saved.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&saved).unwrap(), module_to_json(&m));
    let o = modinv(&["rank", "--in", saved.to_str().unwrap()]);
    assert_eq!(stdout(&o), "name,j,rank\nw,1,6\nw,2,3\n");
}

#[test]
fn bad_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"p":5,"r":1,"dim":2,"generators":[[[0,7],[0,0]]]}"#).unwrap();
    let o = modinv(&["validate", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));

    // perturb a valid frame so that θ^p no longer vanishes
    let invalid = dir.path().join("invalid.json");
    fs::write(&invalid, r#"{"dim":2,"generators":[[[0,0],[1,0]],[[0,1],[0,0]]],"p":3,"r":2}"#).unwrap();
    let o = modinv(&["validate", "--in", invalid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid frame"));

    assert_eq!(modinv(&["report", "--zoo", "nosuch:p=3"]).status.code(), Some(1));
    assert_eq!(modinv(&["report", "--zoo", "h:p=3", "--ext", "5"]).status.code(), Some(1));
    assert_eq!(modinv(&["report"]).status.code(), Some(1));
}

#[test]
fn single_invariant_commands() {
    let out = stdout(&modinv(&["certify", "--zoo", "mr2:p=5"]));
    assert!(out.contains("mr2:p=5;r=2,2,no,-,(1;2)"));
    let out = stdout(&modinv(&["jordan", "--zoo", "h:p=3"]));
    assert_eq!(out.lines().nth(1).unwrap(), "h:p=3,0:2:1,yes");
    let out = stdout(&modinv(&["kernel", "--zoo", "regular:p=3"]));
    assert_eq!(out.lines().nth(1).unwrap(), "regular:p=3;r=2,6,3,verified");
    let out = stdout(&modinv(&["selfdual", "--zoo", "vr1:p=3"]));
    assert_eq!(out.lines().nth(1).unwrap(), "vr1:p=3;r=2,no");
    let o = modinv(&["kernel", "--zoo", "regular:p=3,r=3"]);
    assert_eq!(o.status.code(), Some(1));
}
