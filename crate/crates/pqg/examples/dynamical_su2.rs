//! The dynamical quantum SU(2) family over the integer lattice.
//!
//! ```bash
//! cargo run --example dynamical_su2
//! ```
//!
//! From the Podleś walk at `q = 1/2` the generators `α`, `β` are assembled
//! with square-root weight coefficients, and the report certifies their
//! twisted commutation relations, the four unitarity identities, the
//! bigrading law and both coproduct formulas — each as an exact ideal
//! membership on blocks deep inside the truncation window.

use num::rational::Ratio;
use pqg::presentations::{dynamical_generators, dynamical_su2_report};
use pqg::scalar::Scalar;
use pqg::walks::podles_walk;

fn main() -> pqg::Result<()> {
    let q = Scalar::from_rat(Ratio::new(1.into(), 2.into()));
    let x = Scalar::from_int(0);

    let walk = podles_walk(&q, &x, (-6, 6))?;
    let (alpha, beta) = dynamical_generators(&walk, &q)?;
    println!("α has {} terms, β has {} terms", alpha.terms.len(), beta.terms.len());

    let rep = dynamical_su2_report(&q, &x, (-6, 6), 3)?;
    for check in &rep.checks {
        println!("  {:?}  {}", check.status, check.axiom);
    }
    println!("{}", rep.summary());
    assert!(rep.no_failures());
    Ok(())
}
