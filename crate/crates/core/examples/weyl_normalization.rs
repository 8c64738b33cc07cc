//! Recovers the standard Cartan blocks of the simple Weyl elements from
//! conjugates by random matrices congruent to the identity.
//!
//! Usage: cargo run --release --example weyl_normalization [ring]

use adjoint_chevalley::roots::{Family, RootSystem};
use adjoint_chevalley::verify::involution::random_congruence_element;
use adjoint_chevalley::verify::weyl::{normalize_weyl_images, pipeline, standard_cartan_blocks};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = std::env::args().nth(1).unwrap_or_else(|| "zmod:5^2".into()).parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (family, rank) in [(Family::A, 3), (Family::D, 5), (Family::E, 6)] {
        let sys = RootSystem::build(family, rank)?;
        let order: Vec<String> = pipeline(&sys).iter().map(|s| format!("α{} ({})", s.node + 1, s.label)).collect();
        println!("{family}{rank} pipeline: {}", order.join(", "));
        let std = standard_cartan_blocks(&sys, ring);
        let g0 = random_congruence_element(ring, rank, &mut rng)?;
        let g0_inv = g0.inverse()?;
        let cands: Vec<_> = std.iter().map(|w| &(&g0 * w) * &g0_inv).collect();
        let g = normalize_weyl_images(&sys, &cands)?;
        let gi = g.inverse()?;
        let ok = cands.iter().zip(&std).all(|(c, w)| &(&gi * c) * &g == *w);
        println!("  recovered standard forms: {ok}");
    }
    Ok(())
}
