//! Structure constants, adjoint matrices and root elements of A₂, plus the
//! nilpotency profile of every root in every supported system.
//!
//! Usage: cargo run --release --example adjoint_matrices

use adjoint_chevalley::chevalley::{BasisIndex, ChevalleyAlgebra};
use adjoint_chevalley::group::ElementaryGroup;
use adjoint_chevalley::roots::{Family, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = ChevalleyAlgebra::new(RootSystem::build(Family::A, 2)?)?;
    let sys = alg.system();
    let (a1, a2) = (sys.simple(1), sys.simple(2));
    println!("N(α1, α2) = {:?}", alg.structure_constant(a1, a2));
    println!("[x_α1, x_-α1] = {:?}", alg.bracket(BasisIndex::X(a1), BasisIndex::X(sys.negative_of(a1))));
    println!("ad x_α1 =\n{:?}", alg.ad_matrix(a1).to_rows());

    let g = ElementaryGroup::build(Family::A, 2, "zmod:3^2".parse()?)?;
    let t = g.ring().parse_element("4")?;
    println!("x_α1(4) over {} =\n{}", g.ring(), g.x_matrix(a1, &t));

    let killing: Vec<Vec<i64>> = (0..2).map(|i| (0..2).map(|j| alg.killing_form(BasisIndex::H(i), BasisIndex::H(j))).collect()).collect();
    println!("Killing form on the Cartan part: {killing:?}");

    for (f, l) in [(Family::A, 2), (Family::A, 5), (Family::D, 4), (Family::D, 6), (Family::E, 6), (Family::E, 7), (Family::E, 8)] {
        let alg = ChevalleyAlgebra::new(RootSystem::build(f, l)?)?;
        let ok = (0..alg.system().num_roots()).all(|r| {
            let a = alg.ad_root(r);
            let sq = a.mul(a);
            !sq.is_zero() && sq.mul(a).is_zero()
        });
        println!("{f}{l}: cube of every ad x_α vanishes and square does not: {ok}");
    }
    Ok(())
}
