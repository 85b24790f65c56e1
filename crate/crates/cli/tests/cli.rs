use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ssc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssc")).args(args).output().unwrap()
}

fn ssc_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssc"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn cycle(n: usize) -> String {
    let mut s = format!("p {n} {n}\n");
    for i in 0..n {
        s.push_str(&format!("e {i} {}\n", (i + 1) % n));
    }
    s
}

fn coloured(text: &str) -> Vec<(usize, usize)> {
    text.lines()
        .filter(|l| l.starts_with("c "))
        .map(|l| {
            let t: Vec<usize> = l[2..].split_whitespace().map(|x| x.parse().unwrap()).collect();
            (t[0], t[1])
        })
        .collect()
}

#[test]
fn solve_decides_cycles() {
    let dir = TempDir::new().unwrap();
    let c6 = put(&dir, "c6", &cycle(6));
    let o = ssc(&["solve", c6.to_str().unwrap(), "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("YES\n"));
    // two vertices opposite each other
    let w = coloured(&out);
    assert_eq!(w.len(), 2);
    assert_eq!((w[1].0 - w[0].0), 3);

    let c4 = put(&dir, "c4", &cycle(4));
    let o = ssc(&["solve", c4.to_str().unwrap(), "--q", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NO\n"));
    assert_eq!(ssc(&["solve", c4.to_str().unwrap(), "--q", "2", "--check", "twdp"]).status.code(), Some(0));
}

#[test]
fn every_algorithm_runs_from_the_command_line() {
    let dir = TempDir::new().unwrap();
    let c7 = put(&dir, "c7", &cycle(7));
    for algo in ["oracle", "twdp", "vc", "nd", "cluster", "twincover", "mw", "auto"] {
        for (q, want) in [(1, 1), (2, 0)] {
            let o = ssc(&["solve", c7.to_str().unwrap(), "--q", &q.to_string(), "--algo", algo]);
            assert_eq!(o.status.code(), Some(want), "{algo} q={q}");
        }
    }
}

#[test]
fn input_errors_exit_two_and_budgets_exit_three() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad", "graph 3\n");
    assert_eq!(ssc(&["solve", bad.to_str().unwrap(), "--q", "1"]).status.code(), Some(2));
    assert_eq!(ssc(&["solve", "/nonexistent", "--q", "1"]).status.code(), Some(2));
    let c6 = put(&dir, "c6", &cycle(6));
    assert_eq!(ssc(&["solve", c6.to_str().unwrap(), "--q", "1", "--algo", "magic"]).status.code(), Some(2));
    let big = put(&dir, "c20", &cycle(20));
    let o = ssc(&["solve", big.to_str().unwrap(), "--q", "1", "--algo", "oracle", "--budget-n", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn chi_of_small_families() {
    let dir = TempDir::new().unwrap();
    for (family, args, want) in [("complete", vec!["7"], 1), ("path", vec!["9"], 1), ("grid", vec!["3", "3"], 2)] {
        let f = dir.path().join(family);
        let mut gen = vec!["gen", family];
        gen.extend(args.iter().copied());
        gen.extend(["--out", f.to_str().unwrap()]);
        assert_eq!(ssc(&gen).status.code(), Some(0));
        let o = ssc(&["chi", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with(&format!("chi {want}\n")), "{family}");
    }
}

#[test]
fn verify_reports_violations() {
    let dir = TempDir::new().unwrap();
    let k3 = put(&dir, "k3", "p 3 3\ne 0 1\ne 1 2\ne 0 2\n");
    let good = put(&dir, "good", "c 1 1\n");
    let o = ssc(&["verify", k3.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let p4 = put(&dir, "p4", "p 4 3\ne 0 1\ne 1 2\ne 2 3\n");
    let none = put(&dir, "none", "");
    let o = ssc(&["verify", p4.to_str().unwrap(), none.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 4);

    let twice = put(&dir, "twice", "c 0 1\nc 1 1\n");
    let o = ssc(&["verify", k3.to_str().unwrap(), twice.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("colour 1 repeated"));

    let out_of_range = put(&dir, "oor", "c 9 1\n");
    assert_eq!(ssc(&["verify", k3.to_str().unwrap(), out_of_range.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn solve_witness_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g");
    ssc(&["gen", "bipperm", "9", "--seed", "3", "--out", g.to_str().unwrap()]);
    let w = dir.path().join("w");
    let o = ssc(&["solve", g.to_str().unwrap(), "--q", "4", "--algo", "twdp", "--out", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(ssc(&["verify", g.to_str().unwrap(), w.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn gen_emits_canonical_files() {
    let o = ssc(&["gen", "path", "6"]);
    assert_eq!(stdout(&o), "p 6 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n");
    let o = ssc(&["gen", "splitlb", "3"]);
    assert!(stdout(&o).starts_with("p 12 "));
    // seeded families are reproducible
    assert_eq!(stdout(&ssc(&["gen", "tree", "30", "--seed", "5"])), stdout(&ssc(&["gen", "tree", "30", "--seed", "5"])));
    assert_eq!(ssc(&["gen", "grid", "3"]).status.code(), Some(2));
    assert_eq!(ssc(&["gen", "nope", "3"]).status.code(), Some(2));
}

#[test]
fn gen_reductions() {
    let dir = TempDir::new().unwrap();
    let x = put(&dir, "x", "x3c 3 1\n0 1 2\n");
    let r = dir.path().join("r");
    assert_eq!(ssc(&["gen", "x3c-reduce", x.to_str().unwrap(), "--q", "2", "--out", r.to_str().unwrap()]).status.code(), Some(0));
    // the single set covers the universe
    assert_eq!(ssc(&["solve", r.to_str().unwrap(), "--q", "2", "--algo", "twdp"]).status.code(), Some(0));

    let c4 = put(&dir, "c4", &cycle(4));
    let k4 = put(&dir, "k4", "p 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n");
    for (g, want) in [(&c4, 0), (&k4, 1)] {
        let h = dir.path().join("h");
        ssc(&["gen", "vc-chordal", g.to_str().unwrap(), "--q", "2", "--out", h.to_str().unwrap()]);
        assert_eq!(ssc(&["solve", h.to_str().unwrap(), "--q", "2", "--algo", "twdp"]).status.code(), Some(want));
    }
    let bad = put(&dir, "bad", "x3c 4 0\n");
    assert_eq!(ssc(&["gen", "x3c-reduce", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn kernelize_writes_a_graph() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g");
    ssc(&["gen", "bipartite", "5", "5", "--out", g.to_str().unwrap()]);
    let o = ssc(&["kernelize", g.to_str().unwrap(), "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let k = put(&dir, "k", &stdout(&o));
    // two types, q + 1 = 2 vertices kept from each
    let o = ssc(&["solve", k.to_str().unwrap(), "--q", "2", "--algo", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&k).unwrap().contains("p 4 4"));
}

const HEADER: &str = "instance,family,size,algo,q,n,m,vc,t,cvd,mw,answer,colors,wall_ms";

fn without_timing(csv: &str) -> Vec<String> {
    csv.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
}

#[test]
fn bench_records() {
    let dir = TempDir::new().unwrap();
    put(&dir, "m", "path 6,9,12 oracle,twdp 1\n");
    let o = ssc_in(dir.path(), &["bench", "m"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 7);
    for l in &lines[1..] {
        let cols: Vec<&str> = l.split(',').collect();
        assert_eq!(cols.len(), 14);
        assert_eq!((cols[4], cols[11], cols[12]), ("1", "YES", "1"));
    }
    let algos: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(algos, ["oracle", "twdp", "oracle", "twdp", "oracle", "twdp"]);

    put(&dir, "empty", "# nothing\n");
    let o = ssc_in(dir.path(), &["bench", "empty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{HEADER}\n"));
}

#[test]
fn bench_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    put(&dir, "m", "tree 8,12 auto,twdp,vc 1,2\ncograph 10 mw,oracle 1,2\nbipperm 6 nd,cluster,twincover 2\n");
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_ssc"))
            .current_dir(dir.path())
            .env("SSC_THREADS", threads)
            .args(["bench", "m", "--seed", "7"])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        without_timing(&stdout(&o))
    };
    let one = run("1");
    assert_eq!(one.len(), 1 + 12 + 4 + 3);
    assert_eq!(one, run("4"));
}
