#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::process::Command;

use relstab::workspace::Workspace;

pub const WORKSPACES: [&str; 3] = ["c2_gf2", "c3_gf3", "c2xc2_gf2"];

pub fn workspace_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("workspaces").join(format!("{name}.json"))
}

pub fn workspace(name: &str) -> Workspace {
    Workspace::load(workspace_path(name)).expect("shipped workspace loads")
}

/// Output of one CLI run.
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn relstab(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_relstab")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn relstab_json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let run = relstab(&full);
    assert_eq!(run.code, 0, "{args:?}: {}", run.stderr);
    serde_json::from_str(&run.stdout).expect("report is JSON")
}

/// One invocation of every command on the shipped workspaces.
pub fn cli_suite() -> Vec<Vec<String>> {
    let ws = |n: &str| workspace_path(n).display().to_string();
    let (c2, c3, v4) = (ws("c2_gf2"), ws("c3_gf3"), ws("c2xc2_gf2"));
    let lines: Vec<Vec<&str>> = vec![
        vec!["validate", &c2],
        vec!["validate", &c3],
        vec!["validate", &v4],
        vec!["fproj", &c2, "--instance", "WkG", "--module", "kG"],
        vec!["fproj", &c2, "--instance", "G", "--module", "line"],
        vec!["fproj", &c3, "--instance", "WkW", "--module", "J2"],
        vec!["omega", &c2, "--instance", "WkG", "--module", "k", "-n", "2"],
        vec!["omega", &v4, "--instance", "WkGH", "--module", "k", "--inverse", "-n", "2"],
        vec!["stablehom", &c2, "--instance", "WkG", "--from", "k", "--to", "k"],
        vec!["stablehom", &v4, "--instance", "WkGH", "--from", "k", "--to", "Wp"],
        vec!["transfer", &c2, "--instance", "WkG", "--from", "kG", "--to", "k"],
        vec!["stablehom", &c2, "--instance", "G", "--from", "line", "--to", "point"],
        vec!["resolve", &c2, "--instance", "WkG", "--complex", "k0", "--depth", "4"],
        vec!["resolve", &c2, "--instance", "WkG", "--complex", "k0", "--depth", "4", "--injective"],
        vec!["resolve", &c3, "--instance", "WkW", "--complex", "k_to_J2", "--depth", "3"],
        vec!["ext", &c2, "--instance", "WkG", "--from", "k", "--to", "k", "-n", "1..3"],
        vec!["ext", &v4, "--instance", "WkGH", "--from", "k", "--to", "Wp", "-n", "1..3"],
        vec!["represent", &c2, "--instance", "WkG", "--complex", "norm", "--depth", "3"],
        vec!["represent", &v4, "--instance", "WkGH", "--complex", "aug", "--depth", "3"],
        vec!["virtual", &c2, "--instance", "WkG", "--module", "k", "--against", "kG", "--range", "0..3"],
        vec!["virtual", &v4, "--instance", "WkGH", "--module", "W", "--against", "k,Wp", "--range", "0..4"],
    ];
    lines.into_iter().map(|l| l.into_iter().map(str::to_string).collect()).collect()
}
