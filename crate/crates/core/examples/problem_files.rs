//! Reading a problem file and driving the command-line front end in-process.

use repro_matrix::cli;
use repro_matrix::problem::{parse_problem, Problem};

const FILE: &str = r#"{
  "field": "GF(2)",
  "problem": "cline",
  "params": {"m": 1, "n": 1},
  "matrices": {
    "A": [["1", "0"], ["0", "0"]],
    "B": [["1", "1"], ["0", "0"]],
    "C": [["1", "1"], ["0", "0"]]
  }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match parse_problem(FILE, None)? {
        Problem::Cline(p) => println!("parsed a Cline problem over {} with C = {}", p.field(), p.c),
        other => println!("parsed {}", other.kind()),
    }

    let dir = std::env::temp_dir().join(format!("repro-matrix-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("cline.json");
    std::fs::write(&path, FILE)?;
    let path = path.display().to_string();

    for args in [vec!["solve", path.as_str()], vec!["enumerate", path.as_str()]] {
        let out = cli::run(std::iter::once("repro-matrix").chain(args.iter().copied()));
        println!("$ repro-matrix {} -> exit {}", args.join(" "), out.code);
        print!("{}", out.stdout);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
