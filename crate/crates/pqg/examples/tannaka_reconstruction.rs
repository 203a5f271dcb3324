//! Reconstruct a partial compact quantum group from fiber data.
//!
//! ```bash
//! cargo run --example tannaka_reconstruction
//! ```
//!
//! Starts from the fusion rules of the cyclic group ℤ/3 together with its
//! fiber spaces, validates the data (isometries, cocycle, duality snakes),
//! reconstructs the function algebra, and closes the loop by recovering
//! the fusion rules from the reconstructed object.

use pqg::tannaka::{
    cyclic_table, pointed_group_fiber, reconstruct, roundtrip_check, validate_fiber_data,
};

fn main() -> pqg::Result<()> {
    let fiber = pointed_group_fiber(&cyclic_table(3))?;
    println!(
        "fiber data: {} irreducibles over {} objects",
        fiber.irreducibles.len(),
        fiber.objects.len()
    );

    let validation = validate_fiber_data(&fiber);
    println!("{}", validation.summary());
    assert!(validation.all_passed());

    let out = reconstruct(&fiber)?;
    println!(
        "reconstructed: {} blocks, total dimension {}",
        out.data.blocks.len(),
        out.data.blocks.values().sum::<usize>()
    );
    for (sq, dim) in &out.data.blocks {
        println!("  dim A{sq} = {dim}");
    }

    let roundtrip = roundtrip_check(&fiber)?;
    println!("{}", roundtrip.summary());
    assert!(roundtrip.no_failures());
    Ok(())
}
