#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn session(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "sessions", name].iter().collect();
    p.to_string_lossy().into_owned()
}

pub fn logsym(args: &[&str]) -> Run {
    logsym_stdin(args, None)
}

/// Runs the binary, feeding `stdin` when given.
pub fn logsym_stdin(args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_logsym"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn logsym");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("wait logsym");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or_default()
}
