//! Helpers for the acceptance report in `tests/acceptance.rs`.
//!
//! The report lives in its own package so that it runs after the unit,
//! property and CLI tests of `multislope`.

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

/// Write one `criterion N: PASS|FAIL` line straight to stdout, then assert.
pub fn report(n: u32, pass: bool, elapsed: Duration, detail: &str) {
    let line = format!(
        "criterion {n}: {} ({:.1} s) {detail}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass, "{}", line.trim_end());
}

/// Path of a scenario file shipped with `multislope`.
pub fn scenario_path(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.pop();
    path.push("core");
    path.push("scenarios");
    path.push(name);
    path.to_string_lossy().into_owned()
}

/// Run the `multislope` command line in-process on a rayon pool of `threads`
/// workers; returns the exit code and standard output.
pub fn run_cli(args: &[&str], threads: usize) -> (i32, Vec<u8>) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let argv: Vec<&str> = std::iter::once("multislope").chain(args.iter().copied()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = pool.install(|| multislope::cli::run(argv, &mut out, &mut err));
    (code, out)
}
