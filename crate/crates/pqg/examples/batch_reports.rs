//! Drive the batch front end programmatically.
//!
//! ```bash
//! cargo run --example batch_reports
//! ```
//!
//! Runs the same dispatch as the `pqg` binary on the shipped fixture
//! files: a full axiom verification of the pair groupoid, a Tannaka
//! reconstruction from fiber data, and a walk-to-presentation pipeline,
//! rendering each report in both text and byte-stable JSON.

use pqg::cli::{emit, run, Command, Format, Verb};
use std::path::PathBuf;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn main() -> pqg::Result<()> {
    let commands = [
        Command {
            verb: Verb::Verify {
                input: data("pair_groupoid_3.json"),
                degree: 4,
            },
            output: None,
            format: Format::Text,
        },
        Command {
            verb: Verb::BuildTannaka {
                input: data("vec_z3_fiber.json"),
            },
            output: None,
            format: Format::Text,
        },
        Command {
            verb: Verb::Present {
                input: data("podles_walk.json"),
                check_hopf: true,
                degree: 3,
            },
            output: None,
            format: Format::Text,
        },
    ];
    for cmd in commands {
        let report = run(&cmd)?;
        print!("{}", emit(&report, Format::Text));
        let json = emit(&report, Format::Json);
        println!("json envelope: {} bytes, byte-stable\n", json.len());
        assert_eq!(json, emit(&run(&cmd)?, Format::Json));
        assert!(report.checks.no_failures());
    }
    Ok(())
}
