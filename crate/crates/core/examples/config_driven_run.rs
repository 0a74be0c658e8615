//! Drive the command layer from an in-memory configuration, the same path
//! the binary takes after reading its JSON file.

use graphene_dispersion::cli::{execute, Command, Format, RunConfig};

const CONFIG: &str = r#"{
  "model": {"kind": "graphene-longitudinal"},
  "grid": {
    "omega": {"spacing": "log", "start": 0.1, "stop": 10.0, "points": 5},
    "k": {"values": [1.0, 10.0]}
  },
  "kk": {"relations": ["re-from-im"], "exclusion": 0.05}
}"#;

fn main() {
    let config = RunConfig::from_json(CONFIG).expect("valid configuration");
    let report = execute(Command::Kk, &config).expect("dispersion run");
    print!("{}", report.render(Format::Csv));
    eprint!("{}", report.summary_lines());
    println!("passed: {}", report.passed);
}
