//! End-to-end checks of the `codeprops` binary: verdict lines and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_codeprops");

const ASTAR_B: &str = "@NFA 1 * 0\n0 a 0\n0 b 1\n";
const AB_ONLY: &str = "@NFA 2 * 0\n0 a 1\n1 b 2\n";
const THREE_WORDS: &str =
    "@NFA 2 4 7 * 0\n0 a 1\n1 b 2\n2 b 3\n3 a 4\n0 b 5\n5 a 6\n6 b 7\n";
const SUFFIX: &str =
    "@Transducer 1 * 0\n0 a @epsilon 0\n0 b @epsilon 0\n0 a @epsilon 1\n0 b @epsilon 1\n1 a a 1\n1 b b 1\n";

struct Scratch {
    dir: PathBuf,
}

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("codeprops-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch { dir }
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn satisfies_prefix_positive() {
    let s = Scratch::new("satisfies");
    let aut = s.file("astar_b.fa", ASTAR_B);
    let out = run(&["satisfies", "--fixed", "prefix", "--aut", &aut]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(stdout(&out), "SATISFIED\n");
}

#[test]
fn satisfies_prefix_negative_prints_witness() {
    let s = Scratch::new("witness");
    let aut = s.file("pair.fa", "@NFA 1 2 * 0\n0 a 1\n1 b 2\n");
    let out = run(&["satisfies", "--fixed", "prefix", "--aut", &aut]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["NOT SATISFIED", "ab", "a"]);
}

#[test]
fn ud_satisfies_negative_prints_factor_lists() {
    let s = Scratch::new("ud");
    let aut = s.file("three.fa", THREE_WORDS);
    let out = run(&["ud-satisfies", "--aut", &aut]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "NOT SATISFIED");
    assert!(lines[1].starts_with('[') && lines[1].ends_with(']'), "{}", lines[1]);
    assert!(lines[2].starts_with('[') && lines[2].ends_with(']'), "{}", lines[2]);
    assert_ne!(lines[1], lines[2]);
}

#[test]
fn functional_negative_prints_triple() {
    let s = Scratch::new("functional");
    let trans = s.file("suffix.fst", SUFFIX);
    let out = run(&["functional", "--trans", &trans]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "NOT FUNCTIONAL");
    assert_ne!(lines[2], lines[3], "the two outputs must differ");
}

#[test]
fn maximal_negative_names_the_witness() {
    let s = Scratch::new("maximal");
    let aut = s.file("ab.fa", AB_ONLY);
    let out = run(&["maximal", "--fixed", "prefix", "--aut", &aut]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert_eq!(stdout(&out), "NOT MAXIMAL witness: b\n");
}

#[test]
fn maximal_positive() {
    let s = Scratch::new("maximal-pos");
    let aut = s.file("astar_b.fa", ASTAR_B);
    let out = run(&["maximal", "--fixed", "prefix", "--aut", &aut]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(stdout(&out), "MAXIMAL\n");
}

#[test]
fn parse_error_exits_2() {
    let s = Scratch::new("parse-error");
    let aut = s.file("bad.fa", "@NFA 1 * 0\n0 a\n");
    let out = run(&["satisfies", "--fixed", "prefix", "--aut", &aut]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn construct_is_deterministic() {
    let args =
        ["construct", "--fixed", "prefix", "--n", "4", "--len", "3", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    let words: Vec<String> = stdout(&first).lines().map(str::to_owned).collect();
    assert_eq!(words.len(), 4);
    assert!(words.iter().all(|w| w.len() == 3));
}
