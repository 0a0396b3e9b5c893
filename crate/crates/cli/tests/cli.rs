// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_oneplane");

fn fixtures() -> String {
    format!("{}/../core/fixtures", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_records() {
    let o = run(&["--format", "records", "analyze", &format!("{}/h5.1pl", fixtures())]);
    assert_eq!(o.status.code(), Some(0));
    let want = "n=5\ne=9\ncrossings=2\nclean_edges=5\ncrossing_edges=4\nfaces=8\nmaximal=true\n\
hermits=-\nnests=1\nnest={p,u} {a0,a1} uv=true\nk4=2\nexceptional_edges=-\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn analyze_text_from_stdin() {
    let text = std::fs::read_to_string(format!("{}/k5.1pl", fixtures())).unwrap();
    let mut child = Command::new(BIN)
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n: 5\ne: 10\ncrossings: 1\n"), "{out}");
    assert!(out.contains("maximal: true\n"));
}

#[test]
fn oracle_five() {
    let o = run(&["oracle", "m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("m(5) = 9\n"), "{out}");
    assert!(out.contains("graph_classes: 2\n"));
    assert!(out.contains("edges e=9 drawings=1 graphs=1\n"));
    assert!(out.contains("edges e=10 drawings=1 graphs=1\n"));
}

#[test]
fn oracle_export_and_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("five");
    let o = run(&["oracle", "m", "5", "--export", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let index = std::fs::read_to_string(out.join("index.tsv")).unwrap();
    assert_eq!(index.lines().count(), 3);
    assert_eq!(run(&["oracle", "m", "7"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "m", "3"]).status.code(), Some(2));
}

#[test]
fn verify_bound_on_family_member() {
    let o = run(&["verify-bound", "H_30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=30 e=67 bound=67 slack=0 verdict=true\n"));
    let r = run(&["--format", "records", "verify-bound", "H_30.1pl"]);
    assert!(stdout(&r).contains("slack=0\n"));
}

#[test]
fn exit_codes() {
    let f = fixtures();
    assert_eq!(run(&["maximal", &format!("{f}/h6.1pl")]).status.code(), Some(0));
    let no = run(&["maximal", &format!("{f}/k4_pair.1pl")]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("maximal: false\n"));
    // Not maximal: a precondition of the sequence engine.
    assert_eq!(run(&["sequence", &format!("{f}/c5.1pl")]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "/no/such/drawing"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.1pl");
    std::fs::write(&bad, "v a\nrot a nowhere\n").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn family_table() {
    let o = run(&["family", "--table", "5..7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "row n=5 e=9 formula=9 maximal=true omega=1 ok=true\n\
row n=6 e=11 formula=11 maximal=true omega=1 ok=true\n\
row n=7 e=14 formula=14 maximal=true omega=1 ok=true\n"
    );
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("failed: 0\n"));
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(format!("{}/k4_pair.1pl", fixtures()), dir.path().join("mine.1pl")).unwrap();
    let o = Command::new(BIN)
        .args(["maximal", "mine"])
        .env("ONEPLANE_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn saturate_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sat.1pl");
    let o = run(&[
        "--policy",
        "rand:3",
        "-o",
        out.to_str().unwrap(),
        "saturate",
        &format!("{}/c5.1pl", fixtures()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let check = run(&["maximal", out.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check), "maximal: true\ninsertable: 0\n");
}
