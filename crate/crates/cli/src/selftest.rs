//! Fixture corpus: `NAME.cmd` holds one invocation (arguments after the
//! program name, whitespace separated); `NAME.expected` holds the exit code
//! and both streams. An argument `@file` refers to a file in the corpus.

use std::path::{Path, PathBuf};

use crate::{run, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Canonical text form of an outcome, as stored in `.expected` files.
pub fn render(o: &Outcome) -> String {
    format!("exit: {}\n--- stdout\n{}--- stderr\n{}", o.code, o.stdout, o.stderr)
}

/// Tokens of the form `@file` name files inside the fixture directory.
fn invoke(cmd_line: &str, dir: &Path) -> Outcome {
    let args = cmd_line.split_whitespace().map(|t| match t.strip_prefix('@') {
        Some(rel) => dir.join(rel).into_os_string(),
        None => t.into(),
    });
    run(std::iter::once("weilforge".into()).chain(args))
}

pub fn run_corpus(dir: Option<PathBuf>, bless: bool) -> Outcome {
    let dir = dir.unwrap_or_else(default_dir);
    let mut cmds: Vec<PathBuf> = match std::fs::read_dir(&dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "cmd"))
            .collect(),
        Err(e) => {
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("usage error: cannot read {}: {e}\n", dir.display()) }
        }
    };
    cmds.sort();
    let mut out = String::new();
    let mut failed = 0;
    for path in &cmds {
        let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let line = std::fs::read_to_string(path).unwrap_or_default();
        let got = render(&invoke(line.trim(), &dir));
        let expected_path = path.with_extension("expected");
        if bless {
            match std::fs::write(&expected_path, &got) {
                Ok(()) => out.push_str(&format!("blessed {name}\n")),
                Err(e) => {
                    failed += 1;
                    out.push_str(&format!("FAIL {name}: {e}\n"));
                }
            }
            continue;
        }
        match std::fs::read_to_string(&expected_path) {
            Ok(want) if want == got => out.push_str(&format!("ok {name}\n")),
            Ok(_) => {
                failed += 1;
                out.push_str(&format!("FAIL {name}: output differs\n"));
            }
            Err(_) => {
                failed += 1;
                out.push_str(&format!("FAIL {name}: missing {}\n", expected_path.display()));
            }
        }
    }
    out.push_str(&format!("{} fixtures, {} failed\n", cmds.len(), failed));
    Outcome {
        code: if failed == 0 { EXIT_OK } else { EXIT_DOMAIN },
        stdout: out,
        stderr: String::new(),
    }
}
