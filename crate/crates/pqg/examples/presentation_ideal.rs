//! Presentations, ideal membership and Hopf well-posedness.
//!
//! ```bash
//! cargo run --example presentation_ideal
//! ```
//!
//! Builds the generator/relation presentation of the one-vertex walk (the
//! classical SU(2) case at q = 1), certifies an ideal membership with a
//! replayable witness, and verifies that coproduct, counit and antipode
//! descend to the quotient at degree 4.

use pqg::presentations::{
    build_presentation, check_hopf_wellposed, ideal_member, replay_witness,
};
use pqg::walks::one_vertex_walk;

fn main() -> pqg::Result<()> {
    let walk = one_vertex_walk();
    let p = build_presentation(&walk)?;
    println!(
        "presentation: {} generators, {} relations",
        p.generator_count(),
        p.relations.len()
    );
    for r in &p.relations {
        println!("  {} = 0   [{}]", r.poly.render(&walk.field), r.name);
    }

    // A product of two relations lies in the ideal; the search returns a
    // certificate Σ cᵢ·xᵢ·rᵢ·yᵢ that replays to the input exactly.
    let product = p.relations[0].poly.mul(&p.relations[1].poly, &walk.field);
    let witness = ideal_member(&p, &product, 4)?.expect("product of relations is in the ideal");
    println!(
        "membership certificate: {} terms at degree {}",
        witness.terms.len(),
        witness.degree
    );
    assert_eq!(replay_witness(&p, &witness), product);

    let rep = check_hopf_wellposed(&p, 4);
    println!("{}", rep.summary());
    assert!(rep.all_passed());
    Ok(())
}
