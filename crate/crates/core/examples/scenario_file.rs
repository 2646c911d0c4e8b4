//! Drive the command line in-process: parse a scenario, print a ccdf CSV
//! and run a validation suite.

use multislope::cli::{run, ScenarioFile};

const SCENARIO: &str = r#"
description = "two-ray, unit noise"
density = 0.5
noise = 1.0
thresholds = [-10, 0, 10]

[pathloss]
exponents = [2, 4]
breakpoints = [1]
"#;

fn main() {
    let file = ScenarioFile::parse(SCENARIO, false).expect("valid scenario");
    println!("parsed: {:?}\n", file.scenario().expect("valid network"));

    let path = std::env::temp_dir().join("multislope_example.toml");
    std::fs::write(&path, SCENARIO).expect("writable temp dir");
    let path = path.to_string_lossy().into_owned();

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["multislope", "--scenario", &path, "ccdf"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit {code}\n");

    out.clear();
    let code = run(["multislope", "validate", "fact1", "--seed", "3"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit {code}");
}
