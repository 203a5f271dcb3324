//! Woronowicz character functionals.
//!
//! ```bash
//! cargo run --example characters
//! ```
//!
//! Tabulates the modular character family `f_z` of the ℤ/3 function
//! algebra on its block basis and checks the defining properties: `f_0` is
//! the counit, the family is a convolution group, `S² = f_{-1} ∗ · ∗ f_1`,
//! and the integral satisfies the modular twist identity.

use pqg::corep::woronowicz_characters;
use pqg::tannaka::{cyclic_table, pointed_group_fiber, reconstruct};

fn main() -> pqg::Result<()> {
    let data = reconstruct(&pointed_group_fiber(&cyclic_table(3))?)?.data;
    let table = woronowicz_characters(&data, &[-2, -1, 0, 1, 2])?;

    println!("basis:");
    for (sq, i) in &table.basis {
        println!("  e_{i} of A{sq}");
    }
    for (z, row) in &table.functionals {
        let values: Vec<String> = row.iter().map(|v| v.render(&data.field)).collect();
        println!("f_{z:>2} = [{}]", values.join(", "));
    }
    for note in &table.notes {
        println!("note: {note}");
    }
    println!("{}", table.report.summary());
    assert!(table.report.no_failures());
    Ok(())
}
