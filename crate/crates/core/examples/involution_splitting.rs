//! Splits conjugates of `h_α(−1)` over a local ring into ±1 eigenmodules and
//! compares ranks with the residue field.
//!
//! Usage: cargo run --release --example involution_splitting [ring]

use adjoint_chevalley::group::ElementaryGroup;
use adjoint_chevalley::roots::Family;
use adjoint_chevalley::verify::involution::{random_congruence_element, rank_match_residue, split_involution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = std::env::args().nth(1).unwrap_or_else(|| "tpoly:3:2".into()).parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (family, rank) in [(Family::A, 2), (Family::D, 4)] {
        let g = ElementaryGroup::build(family, rank, ring)?;
        for i in 1..=rank {
            let a = g.h_elem(g.system().simple(i), &-&ring.one())?.matrix;
            let c = random_congruence_element(ring, g.dim(), &mut rng)?;
            let conj = &(&c * &a) * &c.inverse()?;
            let split = split_involution(&conj)?;
            println!(
                "{family}{rank} α{i}: ranks {:?}, reassembles: {}, matches residue: {}",
                split.ranks(),
                split.reassemble()? == conj,
                rank_match_residue(&conj)?
            );
        }
    }
    Ok(())
}
