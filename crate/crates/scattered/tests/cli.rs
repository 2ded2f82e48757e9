use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dss")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dss-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    fs::write(dir.join("p5.dss"), "p dss 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n").unwrap();
    fs::write(dir.join("p4.dss"), "p dss 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
    fs::write(dir.join("c5.dss"), "p dss 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    dir
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_commands() {
    let dir = workdir("solve");
    let p5 = dir.join("p5.dss");
    let o = dss(&["solve", "--graph", s(&p5), "--d", "3", "--algo", "brute"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("size 2"));

    let o = dss(&["--json", "solve", "--graph", s(&p5), "--d", "3", "--algo", "approx", "--epsilon", "1/2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["size"].as_u64().unwrap() >= 2);
    assert_eq!(v["valid"], true);

    let o = dss(&["--json", "solve", "--graph", s(&p5), "--d", "3"]);
    let tw: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys = |x: &serde_json::Value| x.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(keys(&tw), keys(&v));

    let o = dss(&["solve", "--graph", s(&dir.join("p4.dss")), "--d", "2", "--algo", "vc"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tree-decomposition"));

    assert_eq!(dss(&["solve", "--graph", s(&p5), "--d", "3", "--algo", "approx", "--epsilon", "0.5"]).status.code(), Some(2));
    assert_eq!(dss(&["solve", "--graph", s(&p5), "--d", "3", "--wrong"]).status.code(), Some(2));
}

#[test]
fn count_commands() {
    let dir = workdir("count");
    let o = dss(&["count", "--graph", s(&dir.join("p5.dss")), "--d", "3", "--k", "2"]);
    assert!(stdout(&o).contains("counts 1 5 3\n"));
    let o = dss(&["--threads", "2", "count", "--graph", s(&dir.join("c5.dss")), "--d", "2", "--k", "2"]);
    assert!(stdout(&o).contains("counts 1 5 5\n"));
    let o = dss(&["count", "--graph", s(&dir.join("p5.dss")), "--d", "3", "--k", "7"]);
    assert!(stdout(&o).contains("counts 1 5 3 0 0 0 0 0\n"));
}

#[test]
fn validate_and_decompose() {
    let dir = workdir("validate");
    let p5 = dir.join("p5.dss");
    fs::write(dir.join("bad.set"), "1 3\n").unwrap();
    let o = dss(&["validate", "--graph", s(&p5), "--set", s(&dir.join("bad.set")), "--d", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation 1 3 dist 2"));
    fs::write(dir.join("empty.set"), "").unwrap();
    assert!(dss(&["validate", "--graph", s(&p5), "--set", s(&dir.join("empty.set")), "--d", "4"]).status.success());

    let td = dir.join("p5.td");
    let o = dss(&["decompose", "--graph", s(&p5), "--nice", "--out", s(&td)]);
    assert!(o.status.success());
    assert!(dss(&["validate", "--graph", s(&p5), "--td", s(&td)]).status.success());
    fs::write(dir.join("broken.td"), "s td 1 2 5\nb 1 1 2\n").unwrap();
    assert_eq!(dss(&["validate", "--graph", s(&p5), "--td", s(&dir.join("broken.td"))]).status.code(), Some(1));

    let o = dss(&["--json", "decompose", "--graph", s(&p5), "--balance"]);
    let text = stdout(&o);
    let json = &text[text.find('{').unwrap()..];
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["details"]["width"], "1");
}

#[test]
fn generators() {
    let dir = workdir("gen");
    let a = dss(&["gen", "random", "--n", "10", "--p", "1/3", "--seed", "7"]);
    let b = dss(&["gen", "random", "--n", "10", "--p", "1/3", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    fs::write(dir.join("in.mcis"), "p mcis 2 2\ne 1.1 2.2\ne 1.2 2.1\ne 1.2 2.2\n").unwrap();
    fs::write(dir.join("a.txt"), "1 1\n").unwrap();
    let prefix = dir.join("w1");
    let o = dss(&["gen", "w1vc", "--mcis", s(&dir.join("in.mcis")), "--assignment", s(&dir.join("a.txt")), "--out", s(&prefix)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for ext in ["dss", "witness", "certificate", "params.json"] {
        assert!(prefix.with_extension(ext).exists(), "{ext}");
    }
    let o = dss(&["validate", "--graph", s(&prefix.with_extension("dss")), "--set", s(&prefix.with_extension("witness")), "--d", "24"]);
    assert!(o.status.success());

    fs::write(dir.join("f.cnf"), "p cnf 3 2\n1 -2 0\n2 3 0\n").unwrap();
    let prefix = dir.join("seth");
    let o = dss(&["gen", "seth", "--cnf", s(&dir.join("f.cnf")), "--d", "4", "--epsilon", "1", "--out", s(&prefix)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let params: serde_json::Value = serde_json::from_str(&fs::read_to_string(prefix.with_extension("params.json")).unwrap()).unwrap();
    assert_eq!((params["p"].as_str(), params["gamma"].as_str()), (Some("3"), Some("6")));
}
