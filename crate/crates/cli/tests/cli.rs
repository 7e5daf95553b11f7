use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn queuelab(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_queuelab"));
    cmd.args(args).env_remove("QUEUELAB_CACHE");
    if let Some(path) = cache {
        cmd.env("QUEUELAB_CACHE", path);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn rainbow_prints_size_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "6\n1 6\n2 5\n3 4\n");
    let o = queuelab(&["rainbow", "--graph", &g], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "max rainbow: 3\ncertificate: (1,6) (2,5) (3,4)\n");
}

#[test]
fn partition_lists_queues() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "# a loop inside an edge\n3\n1 3\n2 2\n");
    let o = queuelab(&["partition", "--graph", &g], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "queues: 2\nqueue 1: (2,2)\nqueue 2: (1,3)\n");
}

#[test]
fn exact_queue_number_of_k4() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k4.txt", "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let o = queuelab(&["queue-number", "--graph", &g, "--exact"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("queue-number: 2 (exact)\norder: "), "{out}");
}

#[test]
fn bad_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.txt", "3\n1 4\n");
    let o = queuelab(&["rainbow", "--graph", &g], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(queuelab(&["census"], None).status.code(), Some(2));
    assert_eq!(queuelab(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(queuelab(&["gen-regular", "--n", "5", "--delta", "3"], None).status.code(), Some(2));
}

#[test]
fn census_uses_and_checks_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("census.cache");
    let o = queuelab(&["census", "--n", "3"], Some(&cache));
    assert_eq!(stdout(&o), "g(3) = 48\n");
    let o = queuelab(&["census", "--n", "3"], Some(&cache));
    assert_eq!(stdout(&o), "g(3) = 48 (cached)\n");
    let o = queuelab(&["census", "--n", "4", "--m", "5", "--k", "2"], Some(&cache));
    assert_eq!(stdout(&o), "g(4,5,2) = 252\n");
    let o = queuelab(&["census", "--n", "2", "--sizes", "1,1"], Some(&cache));
    assert_eq!(stdout(&o), "g(2; 1,1) = 3\n");
    let text = fs::read_to_string(&cache).unwrap();
    assert_eq!(text.lines().count(), 4);

    // a tampered entry is caught on recomputation
    fs::write(&cache, text.replace("\"count\":\"48\"", "\"count\":\"49\"")).unwrap();
    let o = queuelab(&["census", "--n", "3", "--recompute"], Some(&cache));
    assert_eq!(o.status.code(), Some(1));

    // an explicit flag wins over the environment
    let other = dir.path().join("other.cache");
    let o = queuelab(&["census", "--n", "2", "--cache", other.to_str().unwrap()], Some(&cache));
    assert_eq!(stdout(&o), "g(2) = 8\n");
    assert!(other.exists());
}

#[test]
fn verify_lemmas_passes() {
    let o = queuelab(&["verify", "lemmas", "--max-n", "4"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("ok")).count() == 13, "{out}");
    assert!(out.ends_with("all checks passed, n <= 4\n"));
}

#[test]
fn max_edges_and_patterns() {
    let o = queuelab(&["max-edges", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness: (1,1) (1,2) (2,2) (2,3) (3,3)"));
    let o = queuelab(&["doubling-patterns"], None);
    assert_eq!(stdout(&o).lines().next(), Some("11 patterns"));
    let o = queuelab(&["doubling-patterns", "--loop"], None);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn gen_regular_is_deterministic_and_readable() {
    let args = ["gen-regular", "--n", "10", "--delta", "3", "--seed", "42"];
    let a = stdout(&queuelab(&args, None));
    assert_eq!(a, stdout(&queuelab(&args, None)));
    let lines: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "10");
    assert_eq!(lines.len(), 1 + 15);
}

#[test]
fn bounds_report() {
    let o = queuelab(&["bounds", "--n", "1000", "--delta", "3"], None);
    let out = stdout(&o);
    assert!(out.contains("closed-form lower bound: 3.162278"), "{out}");
    assert!(out.contains("smallest k, n^n form: 4"));
    let o = queuelab(&["bounds", "--n", "4", "--m", "4", "--k", "1"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn experiment_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let svg = dir.path().join("a.svg");
    let base = ["experiment", "--delta", "3", "--n-list", "4,5,6,8", "--samples", "3", "--seed", "7"];
    let run = |out: &Path, extra: &[&str]| {
        let mut args: Vec<&str> = base.to_vec();
        args.extend(["--out", out.to_str().unwrap()]);
        args.extend(extra);
        queuelab(&args, None)
    };
    assert_eq!(run(&a, &["--svg", svg.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&b, &["--sequential"]).status.code(), Some(0));
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    assert!(csv.starts_with("# queuelab experiment v1\ndelta,n,seed,method,queue_number,"));
    assert_eq!(csv.lines().count(), 2 + 12);
    assert!(csv.lines().any(|l| l.starts_with("3,4,7,exact,2,")));
    assert!(csv.lines().any(|l| l.starts_with("3,5,7,none,,")));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}
