//! Reciprocal random walks and their conjugate-equation solutions.
//!
//! ```bash
//! cargo run --example podles_walk
//! ```
//!
//! Builds the Podleś walk on the integer lattice at `q = 1/2`, truncated to
//! the window `[-8, 8]`, checks weight/sign reciprocality and the
//! row-stochasticity condition on interior vertices, and solves the
//! conjugate equations: `R*R = |q| + |q|⁻¹ = 5/2` per vertex and a snake
//! identity with sign `-1`.

use num::rational::Ratio;
use pqg::scalar::Scalar;
use pqg::walks::{build_r_map, podles_walk, validate_walk, verify_conjugate_equations};

fn main() -> pqg::Result<()> {
    let q = Scalar::from_rat(Ratio::new(1.into(), 2.into()));
    let x = Scalar::from_int(0);
    let walk = podles_walk(&q, &x, (-8, 8))?;
    println!(
        "walk: {} vertices ({} interior), {} edges",
        walk.vertices.len(),
        walk.interior.len(),
        walk.edges.len()
    );

    let validation = validate_walk(&walk);
    println!("{}", validation.summary());
    assert!(validation.no_failures());

    let r = build_r_map(&walk)?;
    for &v in walk.interior.iter().take(3) {
        let col = r.map.get(v, v).expect("interior column");
        let norm = col.adjoint().mul(col, &walk.field);
        println!("R*R at vertex {v} = {}", norm.get(0, 0).render(&walk.field));
    }
    println!("snake sign = {}", walk.sign_of_t()?);

    let conj = verify_conjugate_equations(&walk, &r);
    println!("{}", conj.summary());
    assert!(conj.no_failures());
    Ok(())
}
