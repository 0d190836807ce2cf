use std::path::Path;
use std::process::{Command, Output};

use robinson::grid::Patch;
use robinson::hierarchy::corner;
use robinson::tiles::Diagonal;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robinson"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn groups(svg: &str) -> usize {
    svg.matches("<g class=\"cell\"").count()
}

#[test]
fn corner_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.patch.json");
    let svg = dir.path().join("c.svg");
    let o = run(&[
        "corner",
        "--order",
        "3",
        "--orient",
        "SW",
        "--out",
        path(&f),
        "--svg",
        path(&svg),
    ]);
    assert!(o.status.success());
    let p = Patch::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(p, *corner(3, Diagonal::SW).unwrap());
    assert_eq!(groups(&std::fs::read_to_string(&svg).unwrap()), 49);
}

#[test]
fn corner_to_stdout() {
    let o = run(&["corner", "--order", "2", "--orient", "SE"]);
    assert!(o.status.success());
    assert_eq!(
        Patch::from_json(&stdout(&o)).unwrap(),
        *corner(2, Diagonal::SE).unwrap()
    );
}

#[test]
fn limit_accepts_negative_coordinates() {
    let o = run(&["limit", "--x0", "-3", "--y0", "-2", "--width", "4", "--height", "5"]);
    assert!(o.status.success());
    let p = Patch::from_json(&stdout(&o)).unwrap();
    assert_eq!((p.origin(), p.width(), p.height()), ((-3, -2), 4, 5));
    assert!(p.is_full());
}

#[test]
fn solve_counts() {
    let o = run(&["solve", "--width", "1", "--height", "1", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "32");
    let o = run(&["solve", "--width", "2", "--height", "2", "--count", "--threads", "0"]);
    assert_eq!(stdout(&o).trim(), "472");
}

#[test]
fn unsatisfiable_torus_exits_two() {
    let o = run(&["solve", "--width", "2", "--height", "2", "--torus", "--count"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "0");
    let o = run(&["solve", "--width", "3", "--height", "3", "--torus", "--first"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_with_fixed_cells_completes_the_corner() {
    let dir = tempfile::tempdir().unwrap();
    let c = corner(2, Diagonal::NW).unwrap();
    let mut partial = Patch::empty((0, 0), 3, 3).unwrap();
    for cell in [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)] {
        partial.set(cell, c.get(cell));
    }
    let f = dir.path().join("fixed.patch.json");
    std::fs::write(&f, partial.to_json()).unwrap();
    let o = run(&["solve", "--width", "3", "--height", "3", "--fixed", path(&f), "--first"]);
    assert!(o.status.success());
    assert_eq!(Patch::from_json(&stdout(&o)).unwrap(), *c);
}

#[test]
fn solve_writes_numbered_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sols");
    let o = run(&[
        "solve",
        "--width",
        "2",
        "--height",
        "1",
        "--enumerate",
        "--cap",
        "3",
        "--out",
        path(&out),
    ]);
    assert!(o.status.success());
    let mut names: Vec<_> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "solution-000000.patch.json",
            "solution-000001.patch.json",
            "solution-000002.patch.json"
        ]
    );
    for n in names {
        let p = Patch::from_json(&std::fs::read_to_string(out.join(n)).unwrap()).unwrap();
        assert!(robinson::grid::validate(&p).is_empty());
    }
}

#[test]
fn cap_requires_enumerate() {
    let o = run(&["solve", "--width", "2", "--height", "1", "--count", "--cap", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["render", "--input", "/dev/null", "--torus"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_reports_are_json() {
    for args in [
        vec!["verify", "torus", "--kmax", "3"],
        vec!["verify", "unique-fill", "--order", "2"],
        vec!["verify", "forcing", "--order", "1", "--steps"],
        vec!["verify", "aperiodic", "--maxnorm", "3", "--window", "31"],
        vec!["verify", "blue", "--order", "4"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], Value::Bool(true), "{args:?}");
    }
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("torus.json");
    let o = run(&["verify", "torus", "--kmax", "2", "--out", path(&f)]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(v["check"], "torus");
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["corner", "--order", "2", "--orient", "UP"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["verify", "unique-fill", "--order", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", "aperiodic", "--maxnorm", "8", "--window", "20"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["render", "--input", "/nonexistent/x.json"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn render_draws_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.patch.json");
    let mut partial = Patch::empty((0, 0), 7, 7).unwrap();
    partial.paste(&corner(2, Diagonal::NE).unwrap()).unwrap();
    std::fs::write(&f, partial.to_json()).unwrap();

    let plain = stdout(&run(&["render", "--input", path(&f)]));
    assert!(plain.starts_with("<svg") || plain.starts_with("<?xml"));
    assert_eq!(groups(&plain), 49);
    assert_eq!(plain.matches("data-tile=\"\"").count(), 40);

    let o = run(&["render", "--input", path(&f), "--propagate"]);
    assert!(o.status.success());
    let shaded = stdout(&o);
    assert_eq!(groups(&shaded), 49);
    assert!(shaded.contains("data-domain"));

    let bare = stdout(&run(&["render", "--input", path(&f), "--no-arrows", "--no-blue"]));
    assert!(bare.len() < plain.len());
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        vec!["corner", "--order", "4", "--orient", "NW"],
        vec![
            "solve",
            "--width",
            "2",
            "--height",
            "2",
            "--enumerate",
            "--threads",
            "0",
        ],
        vec!["verify", "forcing", "--order", "2", "--threads", "0"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
