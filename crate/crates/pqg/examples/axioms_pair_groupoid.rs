//! Verify every partial Hopf *-algebra axiom on the pair groupoid.
//!
//! ```bash
//! cargo run --example axioms_pair_groupoid
//! ```
//!
//! The pair groupoid on `n` points yields the simplest genuinely partial
//! compact quantum group: `n × n` one-dimensional blocks, one irreducible
//! corepresentation, total dimension `n²`.

use pqg::partial_hopf::{
    pair_groupoid, verify_antipode, verify_canonical_maps, verify_integral,
    verify_partial_algebra, verify_partial_bialgebra, verify_star,
};

fn main() {
    let n = 3;
    let data = pair_groupoid(n);
    println!("pair groupoid on {n} points");
    println!(
        "  {} blocks, total dimension {}",
        data.blocks.len(),
        data.blocks.values().sum::<usize>()
    );

    let mut rep = verify_partial_algebra(&data);
    rep.merge(verify_partial_bialgebra(&data));
    rep.merge(verify_antipode(&data));
    rep.merge(verify_canonical_maps(&data));
    rep.merge(verify_integral(&data));
    rep.merge(verify_star(&data));
    let rep = rep.sorted();

    for check in &rep.checks {
        println!("  {:?}  {}", check.status, check.axiom);
    }
    println!("{}", rep.summary());
    assert!(rep.all_passed());
}
