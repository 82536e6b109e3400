//! Runs the binary end to end; one `PASS|FAIL` line per criterion.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

const BIN: &str = env!("CARGO_BIN_EXE_hgp-surgery");

type Criterion = (&'static str, fn() -> Vec<(bool, String)>);

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn run(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    Run { code: out.status.code().unwrap_or(-1), stdout: String::from_utf8_lossy(&out.stdout).into_owned(), elapsed: start.elapsed() }
}

fn value<'a>(stdout: &'a str, section: &str, key: &str) -> Option<&'a str> {
    let start = stdout.find(&format!("[{section}]\n"))?;
    stdout[start..]
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with('['))
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(" = "))
}

fn hamming_args() -> Vec<&'static str> {
    vec!["--c", "hamming-7-4", "--d", "transpose-of(rep(3))", "--family", "path", "--codewords", "1110000"]
}

fn hamming_product_surgery() -> Vec<(bool, String)> {
    let mut args = vec!["verify"];
    args.extend(hamming_args());
    let r = run(&args);
    let params = value(&r.stdout, "base", "params");
    let class_line = r.stdout.lines().find(|l| l.starts_with("1110 "));
    vec![
        (r.code == 0, format!("exit {}", r.code)),
        (params == Some("[[27,4,3]]"), format!("params {params:?}")),
        (value(&r.stdout, "deformed 1", "k_after") == Some("3"), "k 4 -> 3".into()),
        (class_line.is_some_and(|l| l.split_whitespace().eq(["1110", "3", "3"])), "one class, 3 certified representatives".into()),
        (r.elapsed < Duration::from_secs(10), format!("{:.2}s", r.elapsed.as_secs_f64())),
    ]
}

fn toric_fast_surgery() -> Vec<(bool, String)> {
    let r = run(&["toric-demo", "--size", "3", "--blocks", "2", "--selectors", "10,01"]);
    vec![
        (r.code == 0, format!("exit {}", r.code)),
        (value(&r.stdout, "fast-surgery", "compacted_d_z").is_some_and(|v| v.starts_with("3 (exact)")), "compacted d_1 = 3".into()),
        (value(&r.stdout, "toric", "verdict") == Some("pass"), "toric distances pass".into()),
    ]
}

fn negative_control() -> Vec<(bool, String)> {
    let r = run(&["gadget", "--c", "cyclic-rep(6)", "--d", "rep(2)", "--family", "cycle", "--codewords", "111111"]);
    let relaxed = run(&["gadget", "--c", "cyclic-rep(6)", "--d", "rep(2)", "--family", "cycle", "--codewords", "111111", "--relative", "2"]);
    vec![
        (r.code == 1, format!("strict exit {}", r.code)),
        (value(&r.stdout, "gadget 1", "cheeger") == Some("2/3"), "beta 2/3".into()),
        (r.stdout.lines().any(|l| l.split_whitespace().eq(["gadget", "1", "condition", "1", "fail"])), "condition 1 flagged".into()),
        (relaxed.code == 0, format!("relative:2 exit {}", relaxed.code)),
    ]
}

fn exit_contract() -> Vec<(bool, String)> {
    let mut tight = vec!["verify", "--budget", "16"];
    tight.extend(hamming_args());
    let r = run(&tight);
    let bad_spec = run(&["build", "--c", "golay", "--d", "rep(3)"]);
    let bad_flag = run(&["build", "--bogus"]);
    let no_codewords = run(&["gadget", "--c", "hamming-7-4", "--d", "rep(3)"]);
    let not_codeword = run(&["gadget", "--c", "hamming-7-4", "--d", "rep(3)", "--codewords", "1000000"]);
    vec![
        (r.code == 2, format!("budget 16 exit {}", r.code)),
        (value(&r.stdout, "base", "d_z").is_some_and(|v| v.ends_with("budget=16")), "distances carry their budget".into()),
        (bad_spec.code == 3, format!("unknown code spec exit {}", bad_spec.code)),
        (bad_flag.code == 3, format!("unknown flag exit {}", bad_flag.code)),
        (no_codewords.code == 3, format!("nothing to measure exit {}", no_codewords.code)),
        (not_codeword.code == 3, format!("non-codeword exit {}", not_codeword.code)),
    ]
}

fn artifacts_and_roundtrip() -> Vec<(bool, String)> {
    let dir = std::env::temp_dir().join(format!("hgp-surgery-cli-{}", std::process::id()));
    let dir_s = dir.display().to_string();
    let mut args = vec!["compact", "--output-dir", &dir_s];
    args.extend(hamming_args());
    let r = run(&args);
    let files = ["base.hx.alist", "base.hz.alist", "deformed-1.hz.alist", "compacted.hx.alist", "compacted.meta.alist", "report.txt"];
    let present = files.iter().all(|f| dir.join(f).exists());
    let report_matches = std::fs::read_to_string(dir.join("report.txt")).is_ok_and(|t| t == r.stdout);
    let rt = run(&["roundtrip", &dir.join("compacted.hz.alist").display().to_string()]);
    let rerun = run(&args);
    let out = vec![
        (r.code == 0 && present, format!("alist files and report written to output dir (exit {})", r.code)),
        (report_matches, "report file equals stdout".into()),
        (rt.code == 0 && rt.stdout.contains("rows = 27\ncols = 33"), "compacted H_Z round-trips".into()),
        (rerun.stdout == r.stdout, "report is deterministic".into()),
    ];
    let _ = std::fs::remove_dir_all(PathBuf::from(&dir));
    out
}

fn main() {
    let criteria: [Criterion; 5] = [
        ("hamming-product-surgery", hamming_product_surgery),
        ("toric-fast-surgery", toric_fast_surgery),
        ("negative-control", negative_control),
        ("exit-contract", exit_contract),
        ("artifacts-and-roundtrip", artifacts_and_roundtrip),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let results = check();
        let pass = results.iter().all(|(ok, _)| *ok);
        let details: Vec<String> = results.into_iter().map(|(ok, d)| if ok { d } else { format!("NOT {d}") }).collect();
        println!("{} {name} ({})", if pass { "PASS" } else { "FAIL" }, details.join("; "));
        failed += usize::from(!pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
