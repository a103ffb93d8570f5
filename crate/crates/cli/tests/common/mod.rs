//! Golden-file harness shared by the golden and acceptance tests.
//!
//! `tests/golden/cases.txt` lists one invocation per line as
//! `name exit-code arguments…`; arguments are whitespace separated and run
//! from `tests/golden/inputs`. The expected stdout is `expected/<name>.out`
//! and, for failing invocations, the expected stderr is `expected/<name>.err`.
//! Set `MAW_BLESS=1` to rewrite the expected files from the current binary.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

pub struct Run {
    pub exit: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.split_whitespace();
            let name = parts.next().expect("name").to_string();
            let exit = parts.next().expect("exit code").parse().expect("numeric exit code");
            Case {
                name,
                exit,
                args: parts.map(str::to_string).collect(),
            }
        })
        .collect()
}

pub fn run(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_maw"))
        .args(args)
        .current_dir(golden_dir().join("inputs"))
        .env("MAW_COLOR", "0")
        .output()
        .expect("maw runs");
    Run {
        exit: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

/// Runs every case twice; returns one message per mismatch.
pub fn check_goldens() -> (usize, Vec<String>) {
    let bless = std::env::var("MAW_BLESS").as_deref() == Ok("1");
    let expected = golden_dir().join("expected");
    let mut failures = Vec::new();
    let cases = cases();
    for case in &cases {
        let first = run(&case.args);
        let second = run(&case.args);
        if first.stdout != second.stdout || first.stderr != second.stderr || first.exit != second.exit {
            failures.push(format!("{}: output differs between two runs", case.name));
        }
        if first.exit != case.exit {
            failures.push(format!(
                "{}: exit {} (expected {}); stderr: {}",
                case.name,
                first.exit,
                case.exit,
                String::from_utf8_lossy(&first.stderr)
            ));
        }
        let out_path = expected.join(format!("{}.out", case.name));
        let err_path = expected.join(format!("{}.err", case.name));
        if bless {
            std::fs::write(&out_path, &first.stdout).expect("write golden");
            if case.exit != 0 {
                std::fs::write(&err_path, &first.stderr).expect("write golden");
            }
            continue;
        }
        match std::fs::read(&out_path) {
            Ok(want) if want == first.stdout => {}
            Ok(_) => failures.push(format!(
                "{}: stdout differs from {}:\n{}",
                case.name,
                out_path.display(),
                String::from_utf8_lossy(&first.stdout)
            )),
            Err(e) => failures.push(format!("{}: {}: {e}", case.name, out_path.display())),
        }
        if case.exit != 0 {
            match std::fs::read(&err_path) {
                Ok(want) if want == first.stderr => {}
                Ok(_) => failures.push(format!(
                    "{}: stderr differs from {}:\n{}",
                    case.name,
                    err_path.display(),
                    String::from_utf8_lossy(&first.stderr)
                )),
                Err(e) => failures.push(format!("{}: {}: {e}", case.name, err_path.display())),
            }
        }
    }
    (cases.len(), failures)
}
