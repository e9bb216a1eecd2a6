//! Acceptance suite: runs `qsg selftest --seed 42` twice, checks each
//! criterion's verdict and runtime limit, and requires byte-identical
//! reports. Prints one line per criterion; exits nonzero on any failure.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

const SEED: &str = "42";
/// Runtime limits in seconds, criteria 1-8.
const LIMITS: [u64; 8] = [1, 120, 30, 60, 300, 300, 600, 600];

struct Run {
    stdout: Vec<u8>,
    timings: BTreeMap<u64, u64>,
}

fn run_selftest() -> Result<Run, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qsg"))
        .args(["selftest", "--seed", SEED, "--format", "json", "--timings"])
        .output()
        .map_err(|e| format!("cannot spawn qsg: {e}"))?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    let timings = stderr
        .lines()
        .filter_map(|l| {
            let mut it = l.strip_prefix("timing ")?.split_whitespace();
            Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
        })
        .collect();
    Ok(Run { stdout: out.stdout, timings })
}

fn main() -> ExitCode {
    let runs = match (run_selftest(), run_selftest()) {
        (Ok(a), Ok(b)) => [a, b],
        (Err(e), _) | (_, Err(e)) => {
            println!("acceptance: {e}");
            return ExitCode::FAILURE;
        }
    };
    let report: serde_json::Value = match serde_json::from_slice(&runs[0].stdout) {
        Ok(v) => v,
        Err(e) => {
            println!("acceptance: unreadable report: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results = report["results"].as_array().cloned().unwrap_or_default();
    let mut all = true;
    for id in 1..=8u64 {
        let r = results.iter().find(|r| r["id"].as_u64() == Some(id));
        let limit = LIMITS[id as usize - 1];
        let ms = runs.iter().filter_map(|x| x.timings.get(&id)).copied().max();
        let (passed, name, detail) = match r {
            Some(r) => (
                r["passed"].as_bool().unwrap_or(false),
                r["name"].as_str().unwrap_or("?").to_string(),
                r["detail"].as_str().unwrap_or("").to_string(),
            ),
            None => (false, "missing".into(), String::new()),
        };
        let in_time = ms.is_some_and(|m| m < limit * 1000);
        let ok = passed && in_time;
        all &= ok;
        let secs = ms.map_or("?".to_string(), |m| format!("{:.1}", m as f64 / 1000.0));
        println!(
            "criterion {id} [{name}]: {} ({secs}s, limit {limit}s) {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    let same = runs[0].stdout == runs[1].stdout && !runs[0].stdout.is_empty();
    all &= same;
    println!(
        "criterion 9 [determinism]: {} (two runs of `qsg selftest --seed {SEED}`, {} bytes)",
        if same { "PASS" } else { "FAIL" },
        runs[0].stdout.len()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
