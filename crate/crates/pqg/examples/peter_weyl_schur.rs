//! Peter–Weyl decomposition and Schur orthogonality.
//!
//! ```bash
//! cargo run --example peter_weyl_schur
//! ```
//!
//! Enumerates the irreducible corepresentations of the pair groupoid and of
//! the ℤ/2 function algebra, checks that their matrix coefficients span the
//! whole algebra bijectively, and verifies the orthogonality relations of
//! the invariant integral coefficient by coefficient.

use pqg::corep::{enumerate_irreducibles, peter_weyl_report, schur_report};
use pqg::partial_hopf::pair_groupoid;
use pqg::tannaka::{cyclic_table, pointed_group_fiber, reconstruct};

fn main() -> pqg::Result<()> {
    let z2 = reconstruct(&pointed_group_fiber(&cyclic_table(2))?)?.data;
    for (name, data) in [("pair groupoid (n = 3)", pair_groupoid(3)), ("Vec ℤ/2", z2)] {
        println!("{name}");
        let irreps = enumerate_irreducibles(&data)?;
        for (i, x) in irreps.iter().enumerate() {
            println!("  irreducible {i}: carrier dimension {}", x.total_dim());
        }

        let pw = peter_weyl_report(&data, &irreps);
        println!("  {}", pw.summary());
        assert!(pw.all_passed());

        for (i, x) in irreps.iter().enumerate() {
            let diag = schur_report(&data, x, None)?;
            println!("  schur({i}, {i}): {}", diag.summary());
            assert!(diag.no_failures());
            for (j, y) in irreps.iter().enumerate().skip(i + 1) {
                let off = schur_report(&data, x, Some(y))?;
                println!("  schur({i}, {j}): {}", off.summary());
                assert!(off.no_failures());
            }
        }
    }
    Ok(())
}
