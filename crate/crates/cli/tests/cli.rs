use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kanlift(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kanlift"))
        .args(args)
        .current_dir(dir)
        .env_remove("KANLIFT_BUDGET")
        .output()
        .expect("run kanlift")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

#[test]
fn counterexample_is_refuted_and_replays() {
    let tmp = tempfile::tempdir().unwrap();
    let o = kanlift(&["build", "counterexample", "-o", "counterexample.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let o = kanlift(&["check", "weak-kan-fib", "--n-max", "2", "--i-max", "2", "counterexample.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let r = &records(&o)[0];
    assert_eq!(r["verdict"], "refuted");
    assert_eq!(r["bound"], "n_max=2 i_max=2 homotopy_level=0");
    assert!(r["wall_time"].is_number());
    let w = r["witness_path"].as_str().unwrap();
    assert!(tmp.path().join(w).exists());
    let o = kanlift(&["replay", w], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(records(&o)[0]["verdict"], "refuted");
}

#[test]
fn level_one_counterexample() {
    let tmp = tempfile::tempdir().unwrap();
    kanlift(&["build", "counterexample", "-o", "x.sset"], tmp.path());
    let args = ["check", "weak-kan-fib", "--homotopy-level", "1", "--i-max", "0", "x.sset"];
    assert_eq!(kanlift(&args, tmp.path()).status.code(), Some(0));
    let o = kanlift(&["check", "rezk", "x.sset", "--witness", "rezk.w"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(kanlift(&["replay", "rezk.w"], tmp.path()).status.code(), Some(1));
}

#[test]
fn homology_tables() {
    let tmp = tempfile::tempdir().unwrap();
    kanlift(&["build", "boundary", "3", "--trunc", "3", "-o", "boundary3.sset"], tmp.path());
    let o = kanlift(&["homology", "--deg-max", "2", "boundary3.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "degree  group\nH0      Z\nH1      0\nH2      Z\n");

    kanlift(&["build", "standard", "2", "-o", "delta2.sset"], tmp.path());
    let o = kanlift(&["op", "sd", "--iterations", "2", "delta2.sset", "-o", "sd2.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let o = kanlift(&["homology", "sd2.sset"], tmp.path());
    assert_eq!(stdout(&o), "degree  group\nH0      Z\nH1      0\n");
}

#[test]
fn interval_file_and_parse_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "SSET v1 maxdim=1\ndim 0: v0 v1\ndim 1:\ne : d0=v1 d1=v0\n";
    fs::write(tmp.path().join("d1.sset"), text).unwrap();
    let o = kanlift(&["homology", "d1.sset"], tmp.path());
    assert_eq!(stdout(&o), "degree  group\nH0      Z\n");

    let bad = "SSET v1 maxdim=2\ndim 0: v0\ndim 1:\ndim 2:\nt : d0=s0s1v0 d1=s0v0 d2=s0v0\n";
    fs::write(tmp.path().join("bad.sset"), bad).unwrap();
    let o = kanlift(&["homology", "bad.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(3));
    let r = &records(&o)[0];
    assert_eq!(r["verdict"], "error");
    assert!(r["error"].as_str().unwrap().contains("line 5, column 8"));
}

#[test]
fn flags_and_budget() {
    let tmp = tempfile::tempdir().unwrap();
    kanlift(&["build", "standard", "1", "-o", "d1.sset"], tmp.path());
    assert_eq!(kanlift(&["check", "kan", "--bogus", "d1.sset"], tmp.path()).status.code(), Some(3));
    assert_eq!(kanlift(&["check", "kan", "missing.sset"], tmp.path()).status.code(), Some(3));
    assert_eq!(kanlift(&["check", "kan", "d1.sset"], tmp.path()).status.code(), Some(1));
    assert_eq!(kanlift(&["check", "kan-fib", "d1.sset"], tmp.path()).status.code(), Some(3));

    let map = corpus_dir().join("interval_to_point.sset");
    let map = map.to_str().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_kanlift"))
        .args(["check", "weak-kan-fib", map])
        .env("KANLIFT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(records(&o)[0]["verdict"], "undecided");
    let o = Command::new(env!("CARGO_BIN_EXE_kanlift")).args(["check", "weak-kan-fib", map]).env("KANLIFT_BUDGET", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_kanlift"))
        .args(["check", "weak-kan-fib", "--budget", "50000000", map])
        .env("KANLIFT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn operations_write_parseable_files() {
    let tmp = tempfile::tempdir().unwrap();
    kanlift(&["build", "horn", "2", "1", "--trunc", "3", "-o", "h.sset"], tmp.path());
    for (op, out) in [
        ("ex", "ex.sset"),
        ("last-vertex", "lv.sset"),
        ("gamma", "g.sset"),
        ("delta", "d.bsset"),
        ("star-cover", "cover.sset"),
    ] {
        let o = kanlift(&["op", op, "h.sset", "-o", out], tmp.path());
        assert_eq!(o.status.code(), Some(0), "{op}: {}", String::from_utf8_lossy(&o.stderr));
    }
    kanlift(&["build", "horn", "2", "1", "--trunc", "5", "-o", "h5.sset"], tmp.path());
    assert_eq!(kanlift(&["op", "d-shriek", "h5.sset", "-o", "ds.bsset"], tmp.path()).status.code(), Some(0));
    let o = kanlift(&["op", "diagonal", "ds.bsset", "-o", "diag.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let o = kanlift(&["homology", "--deg-max", "1", "diag.sset"], tmp.path());
    assert_eq!(stdout(&o), "degree  group\nH0      Z\nH1      0\n");
    let a = kanlift(&["nerve", "h.sset"], tmp.path());
    let b = kanlift(&["nerve", "cover.sset"], tmp.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(kanlift(&["op", "diagonal", "h.sset"], tmp.path()).status.code(), Some(3));
}

#[test]
fn expansion_of_a_horn() {
    let tmp = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(corpus_dir().join("horn21_into_triangle.sset")).unwrap();
    fs::write(tmp.path().join("inc.sset"), text).unwrap();
    let o = kanlift(&["op", "expand", "inc.sset"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("meta step e012 1"));
    let text = fs::read_to_string(corpus_dir().join("boundary2_into_triangle.sset")).unwrap();
    fs::write(tmp.path().join("bd.sset"), text).unwrap();
    assert_eq!(kanlift(&["op", "expand", "bd.sset"], tmp.path()).status.code(), Some(3));
}

#[test]
fn corpus_export_matches_and_runs_deterministically() {
    let tmp = tempfile::tempdir().unwrap();
    let o = kanlift(&["corpus", "export", "out"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let mut n = 0;
    for e in fs::read_dir(tmp.path().join("out")).unwrap() {
        let p = e.unwrap().path();
        let committed = fs::read_to_string(corpus_dir().join(p.file_name().unwrap())).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), committed, "{}", p.display());
        n += 1;
    }
    assert!(n >= 25);

    let only = ["--only", "counterexample", "--only", "interval_to_point", "--only", "horn21_into_triangle"];
    let strip = |o: &Output| -> Vec<Value> {
        records(o)
            .into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("wall_time");
                r
            })
            .collect()
    };
    let mut one = vec!["--threads", "1", "corpus", "run", "--dir", "out", "--witness-dir", "w1"];
    one.extend(only);
    let mut three = vec!["--threads", "3", "corpus", "run", "--dir", "out", "--witness-dir", "w3"];
    three.extend(only);
    let (a, b) = (kanlift(&one, tmp.path()), kanlift(&three, tmp.path()));
    assert_eq!(a.status.code(), Some(0));
    let (ra, rb) = (strip(&a), strip(&b));
    assert_eq!(ra.len(), 4);
    assert_eq!(ra.iter().map(|r| r["problems"].clone()).collect::<Vec<_>>(), rb.iter().map(|r| r["problems"].clone()).collect::<Vec<_>>());
    assert_eq!(ra.last().unwrap()["verdict"], "verified-to-bound");
    for name in ["counterexample", "horn21_into_triangle"] {
        let w1 = fs::read_to_string(tmp.path().join("w1").join(format!("{name}.witness"))).unwrap();
        let w3 = fs::read_to_string(tmp.path().join("w3").join(format!("{name}.witness"))).unwrap();
        assert_eq!(w1, w3);
    }
}
