//! End-to-end tests of the `scaffold` binary: format round-trips, worked
//! examples, and error reporting.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scaffold"))
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scaffold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

const FIG1: &str = "poset\nelem t\nelem u\nelem v\nelem w\nelem x\nelem y\nelem z\n\
edge t x\nedge u x\nedge u y\nedge v y\nedge x z\nedge y z\nedge w z\n";

const KQ_COMPLEX: &str = "qr-complex field=5 d=poset\nX 3\nx\ny\nz\nY 4\nt\nu\nv\nw\nZ 0\n\
f:\n0 0 1\n1 0 -1\n1 1 1\n2 1 -1\n0 2 1\n3 2 -1\ng:\n";

#[test]
fn scaffold_on_worked_poset() {
    let hasse = write_fixture("fig1.poset", FIG1);
    let out = stdout(&run(&["scaffold", "--hasse", hasse.to_str().unwrap()]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "scaffold initial");
    let elems: Vec<&str> = lines
        .iter()
        .filter_map(|l| l.strip_prefix("elem "))
        .collect();
    assert_eq!(elems, ["t", "u", "v", "w", "x", "y", "z"]);
    let rels: Vec<&str> = lines
        .iter()
        .filter_map(|l| l.strip_prefix("rel "))
        .collect();
    assert_eq!(rels.len(), 6);
    for fixed in ["t x", "u x", "u y", "v y", "w z"] {
        assert!(rels.contains(&fixed));
    }
}

#[test]
fn final_scaffold_on_worked_poset() {
    let hasse = write_fixture("fig1b.poset", FIG1);
    let out = stdout(&run(&[
        "final-scaffold",
        "--hasse",
        hasse.to_str().unwrap(),
    ]));
    assert_eq!(out, "scaffold final\nelem z\n");
}

#[test]
fn scaffold_on_plane_staircase() {
    let itv = write_fixture("stairs.itv", "interval d=2\nmin 0 2\nmin 1 0\n");
    let out = stdout(&run(&["scaffold", "--interval", itv.to_str().unwrap()]));
    assert_eq!(
        out,
        "scaffold initial\nelem 0,2\nelem 1,0\nelem 1,2\nrel 0,2 1,2\nrel 1,0 1,2\n"
    );
}

#[test]
fn grank_of_interval_module_presentation() {
    let hasse = write_fixture("fig1c.poset", FIG1);
    let qrc = write_fixture("kq.qrc", KQ_COMPLEX);
    let out = stdout(&run(&[
        "grank",
        "--complex",
        qrc.to_str().unwrap(),
        "--hasse",
        hasse.to_str().unwrap(),
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "grank 1");
    assert_eq!(lines[1], "dim-lim 1");
    assert_eq!(lines[2], "dim-colim 1");
}

#[test]
fn limit_output_reparses_to_the_same_data() {
    let hasse = write_fixture("fig1d.poset", FIG1);
    let qrc = write_fixture("kq2.qrc", KQ_COMPLEX);
    let out = stdout(&run(&[
        "limit",
        "--complex",
        qrc.to_str().unwrap(),
        "--hasse",
        hasse.to_str().unwrap(),
    ]));
    // parse the result format back
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    let dim: usize = header.strip_prefix("limit dim=").unwrap().parse().unwrap();
    assert_eq!(dim, 1);
    let mut fiber_total = 0;
    let mut basis_shape = (0usize, 0usize);
    let mut matrix_rows: Vec<Vec<u64>> = Vec::new();
    for line in lines {
        if let Some(rest) = line.strip_prefix("min ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            fiber_total += parts[1].parse::<usize>().unwrap();
        } else if let Some(rest) = line.strip_prefix("basis ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            basis_shape = (parts[0].parse().unwrap(), parts[1].parse().unwrap());
        } else {
            matrix_rows.push(
                line.split_whitespace()
                    .map(|t| t.parse().unwrap())
                    .collect(),
            );
        }
    }
    assert_eq!(basis_shape, (fiber_total, dim));
    assert_eq!(matrix_rows.len(), basis_shape.0);
    // the unique presection of the interval module is constant and nonzero
    let first = matrix_rows[0][0];
    assert_ne!(first, 0);
    assert!(matrix_rows.iter().all(|r| r == &vec![first]));
}

#[test]
fn colimit_of_interval_module() {
    let hasse = write_fixture("fig1e.poset", FIG1);
    let qrc = write_fixture("kq3.qrc", KQ_COMPLEX);
    let out = stdout(&run(&[
        "colimit",
        "--complex",
        qrc.to_str().unwrap(),
        "--hasse",
        hasse.to_str().unwrap(),
    ]));
    assert!(out.starts_with("colimit dim=1\n"));
}

#[test]
fn betti1_support_of_coordinate_corner() {
    let itv = write_fixture("corner.itv", "interval d=2\nmin 1 0\nmin 0 1\n");
    let out = stdout(&run(&[
        "betti1-support",
        "--interval",
        itv.to_str().unwrap(),
    ]));
    assert_eq!(out, "1 1\n");
}

#[test]
fn scaffold_roundtrip_through_file() {
    let itv = write_fixture("rt.itv", "interval d=2\nmin 0 4\nmin 2 2\nmin 4 0\n");
    let out_path = std::env::temp_dir().join(format!("rt-{}.scaffold", std::process::id()));
    let out = run(&[
        "scaffold",
        "--interval",
        itv.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let (dir, elems, rels) = poset_scaffold::scaffold::parse_scaffold(&text).unwrap();
    assert_eq!(dir, poset_scaffold::scaffold::Direction::Initial);
    assert_eq!(elems.len(), 5);
    assert_eq!(rels.len(), 4);
}

#[test]
fn malformed_input_names_the_line() {
    let bad = write_fixture("bad.poset", "poset\nelem a\nedge a\n");
    let out = run(&["scaffold", "--hasse", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr was: {err}");
}

#[test]
fn missing_inputs_fail_cleanly() {
    let out = run(&["limit"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--hasse") || err.contains("--interval"));
}

#[test]
fn disconnected_poset_grank_refused() {
    let hasse = write_fixture("disc.poset", "poset\nelem a\nelem b\n");
    let qrc = write_fixture(
        "disc.qrc",
        "qr-complex field=5 d=poset\nX 0\nY 1\na\nZ 0\nf:\ng:\n",
    );
    let out = run(&[
        "grank",
        "--complex",
        qrc.to_str().unwrap(),
        "--hasse",
        hasse.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not connected"), "stderr was: {err}");
}

#[test]
fn bench_produces_csv() {
    let out_path = std::env::temp_dir().join(format!("bench-{}.csv", std::process::id()));
    // tiny cap keeps the naive column empty and the run fast
    let out = run(&[
        "bench",
        "--seed",
        "3",
        "--cap",
        "10",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,d,r,scaffold_size,t_scaffold_ms,t_limit_scaffold_ms,t_limit_naive_ms"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("trivial,1,")));
    assert!(rows.iter().any(|r| r.starts_with("d3-scale,1024,")));
    assert!(rows.iter().any(|r| r.starts_with("n4-family,42,")));
    assert!(rows.iter().any(|r| r.starts_with("d2-limit,1000,2,20,")));
    // deterministic under the same seed
    let out2 = run(&["bench", "--seed", "3", "--cap", "10"]);
    let text2 = stdout(&out2);
    let strip_times = |t: &str| -> Vec<String> {
        t.lines()
            .map(|l| {
                l.split(',')
                    .enumerate()
                    .filter(|(i, _)| ![5, 6, 7].contains(i))
                    .map(|(_, c)| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    assert_eq!(strip_times(&text), strip_times(&text2));
}
