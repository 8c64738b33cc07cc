//! Recovers the torus parameter from a block-diagonal matrix compatible with
//! the rank-two generators, and shows a compatible matrix over ℤ/25 whose
//! Cartan block is not the identity.
//!
//! Usage: cargo run --example torus_rigidity

use adjoint_chevalley::rings::RingDescriptor;
use adjoint_chevalley::verify::golden::reference_a2_group;
use adjoint_chevalley::verify::torus::{cartan_block_counterexample, recover_torus_parameter, torus_conditions, verify_torus_rigidity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f7: RingDescriptor = "fp:7".parse()?;
    for s in f7.units().unwrap_or_default() {
        let r = verify_torus_rigidity(&s)?;
        println!("s = {s}: recovered {} after {} deductions", r.s, r.steps.len());
    }

    let z25: RingDescriptor = "zmod:5^2".parse()?;
    let g = reference_a2_group(z25)?;
    let d = cartan_block_counterexample(2)?;
    println!("counterexample over {z25}: conditions vanish: {}", torus_conditions(&g, &d)?.all_vanish());
    println!("Cartan block: [[{}, {}], [{}, {}]]", d[(6, 6)], d[(6, 7)], d[(7, 6)], d[(7, 7)]);
    match recover_torus_parameter(&g, &d) {
        Ok(r) => println!("recovered {}", r.s),
        Err(e) => println!("recovery stops: {e}"),
    }
    Ok(())
}
