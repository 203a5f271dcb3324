//! Export the shipped constructions as JSON spec files.
//!
//! ```bash
//! cargo run --example export_json [output-dir]
//! ```
//!
//! Writes `pair_groupoid_3.json` (partial Hopf data), `vec_z3_fiber.json`
//! (fiber data) and `podles_walk.json` (a truncated reciprocal walk) into
//! the given directory — the same formats the `pqg` binary consumes. All
//! coefficients are exact literals; nothing is rounded on the way out.

use num::rational::Ratio;
use pqg::partial_hopf::{data_to_json, pair_groupoid};
use pqg::scalar::Scalar;
use pqg::tannaka::{cyclic_table, fiber_to_json, pointed_group_fiber};
use pqg::walks::{podles_walk, walk_to_json};
use std::path::PathBuf;

fn main() -> pqg::Result<()> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("pqg-fixtures"));
    std::fs::create_dir_all(&dir)?;

    let q = Scalar::from_rat(Ratio::new(1.into(), 2.into()));
    let files = [
        ("pair_groupoid_3.json", data_to_json(&pair_groupoid(3))),
        ("vec_z3_fiber.json", fiber_to_json(&pointed_group_fiber(&cyclic_table(3))?)),
        (
            "podles_walk.json",
            walk_to_json(&podles_walk(&q, &Scalar::from_int(0), (-4, 4))?),
        ),
    ];
    for (name, value) in files {
        let path = dir.join(name);
        let mut text = serde_json::to_string_pretty(&value).expect("fixtures serialize");
        text.push('\n');
        std::fs::write(&path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
