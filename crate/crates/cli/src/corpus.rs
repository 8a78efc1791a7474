//! Golden-output corpus.
//!
//! A case is a pair `NAME.cmd` / `NAME.out`. The command file holds optional
//! header lines `# exit N` (expected exit code, default 0) and `# tol X`
//! (compare JSON numbers with absolute tolerance `X` instead of bytes),
//! followed by one line of arguments to `rct`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::{run, Outcome};

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
    pub tol: Option<f64>,
}

pub fn parse_case(name: &str, text: &str) -> Result<Case, String> {
    let mut exit = 0;
    let mut tol = None;
    let mut args = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix('#') {
            let mut it = rest.split_whitespace();
            match (it.next(), it.next()) {
                (Some("exit"), Some(v)) => exit = v.parse().map_err(|_| format!("{name}: bad exit code"))?,
                (Some("tol"), Some(v)) => tol = Some(v.parse().map_err(|_| format!("{name}: bad tolerance"))?),
                _ => {}
            }
        } else if args.is_none() {
            args = Some(shlex::split(line).ok_or_else(|| format!("{name}: unbalanced quotes"))?);
        } else {
            return Err(format!("{name}: more than one command line"));
        }
    }
    let args = args.ok_or_else(|| format!("{name}: no command line"))?;
    Ok(Case { name: name.to_string(), args, exit, tol })
}

pub fn execute(case: &Case) -> Outcome {
    run(std::iter::once("rct".to_string()).chain(case.args.iter().cloned()))
}

/// `None` when `actual` matches `expected` under the case's rules,
/// otherwise a description of the difference.
pub fn compare(case: &Case, expected: &str, actual: &Outcome) -> Option<String> {
    if actual.code != case.exit {
        return Some(format!("exit code {} (expected {})\n{}", actual.code, case.exit, actual.stderr));
    }
    match case.tol {
        None if actual.stdout == expected => None,
        None => Some(line_diff(expected, &actual.stdout)),
        Some(tol) => {
            let parsed = (serde_json::from_str::<Value>(expected), serde_json::from_str::<Value>(&actual.stdout));
            match parsed {
                (Ok(e), Ok(a)) => json_close(&e, &a, tol, "$").err(),
                _ => Some("output is not JSON".into()),
            }
        }
    }
}

fn line_diff(expected: &str, actual: &str) -> String {
    let mut out = String::new();
    let mut shown = 0;
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i).copied(), a.get(i).copied());
        if x != y {
            shown += 1;
            if shown > 10 {
                let _ = writeln!(out, "  ...");
                break;
            }
            let _ = writeln!(out, "line {}:\n  - {}\n  + {}", i + 1, x.unwrap_or("<missing>"), y.unwrap_or("<missing>"));
        }
    }
    out
}

fn json_close(e: &Value, a: &Value, tol: f64, path: &str) -> Result<(), String> {
    match (e, a) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap_or(f64::NAN), y.as_f64().unwrap_or(f64::NAN));
            if (x - y).abs() <= tol {
                Ok(())
            } else {
                Err(format!("{path}: {x} vs {y} (tolerance {tol})"))
            }
        }
        (Value::Array(xs), Value::Array(ys)) if xs.len() == ys.len() => xs
            .iter()
            .zip(ys)
            .enumerate()
            .try_for_each(|(i, (x, y))| json_close(x, y, tol, &format!("{path}[{i}]"))),
        (Value::Object(xs), Value::Object(ys)) if xs.len() == ys.len() => xs.iter().try_for_each(|(k, x)| {
            let y = ys.get(k).ok_or_else(|| format!("{path}.{k}: missing"))?;
            json_close(x, y, tol, &format!("{path}.{k}"))
        }),
        _ if e == a => Ok(()),
        _ => Err(format!("{path}: {e} vs {a}")),
    }
}

/// Case names in `dir`, sorted.
pub fn case_names(dir: &Path) -> Result<Vec<String>, String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let p = e.path();
            (p.extension()? == "cmd").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    Ok(names)
}

pub fn run_corpus(dir: &Path, bless: bool) -> Outcome {
    let names = match case_names(dir) {
        Ok(n) => n,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut report = String::new();
    let mut failures = 0;
    for name in &names {
        let cmd_path = dir.join(format!("{name}.cmd"));
        let out_path = dir.join(format!("{name}.out"));
        let case = match fs::read_to_string(&cmd_path).map_err(|e| e.to_string()).and_then(|t| parse_case(name, &t)) {
            Ok(c) => c,
            Err(e) => {
                failures += 1;
                let _ = writeln!(report, "FAIL {name}: {e}");
                continue;
            }
        };
        let actual = execute(&case);
        if bless {
            let written = fs::write(&out_path, &actual.stdout);
            let _ = writeln!(report, "BLESS {name} (exit {}){}", actual.code, written.err().map_or(String::new(), |e| format!(": {e}")));
            continue;
        }
        let expected = fs::read_to_string(&out_path).unwrap_or_default();
        match compare(&case, &expected, &actual) {
            None => {
                let _ = writeln!(report, "PASS {name}");
            }
            Some(diff) => {
                failures += 1;
                let _ = writeln!(report, "FAIL {name}\n{diff}");
            }
        }
    }
    let _ = writeln!(report, "{} cases, {} failed", names.len(), failures);
    Outcome { code: i32::from(failures > 0), stdout: report, stderr: String::new() }
}
