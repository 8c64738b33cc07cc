//! Derives the 27 linear equations for the image of `x_{α₁}(1)` and solves
//! them over several local rings.
//!
//! Usage: cargo run --example rigidity_system

use adjoint_chevalley::rings::RingDescriptor;
use adjoint_chevalley::verify::con_system::build_con_system;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = build_con_system()?;
    for (label, row) in sys.row_labels().iter().zip(sys.coefficients.to_rows()) {
        println!("{label:<26} {row:?}");
    }
    println!("determinant: {}", sys.determinant());
    println!("with the y25 sign in row 19 negated: {}", sys.with_negated(18, 24).determinant());
    for r in ["fp:7", "zmod:3^3", "tpoly:5:4", "zloc:11"] {
        let ring: RingDescriptor = r.parse()?;
        let y = sys.unique_solution(ring)?;
        println!("over {r}: unique solution is zero: {}", y.iter().all(|v| v.is_zero()));
    }
    Ok(())
}
