//! Check every relation among root, Weyl and torus elements for a few groups.
//!
//! Usage: cargo run --release --example steinberg_relations [samples]

use std::time::Instant;

use adjoint_chevalley::group::ElementaryGroup;
use adjoint_chevalley::relations::check_relations;
use adjoint_chevalley::roots::Family;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: usize = std::env::args().nth(1).map_or(Ok(20), |s| s.parse())?;
    for (family, rank) in [(Family::A, 2), (Family::A, 3), (Family::D, 4)] {
        for ring in ["fp:7", "zmod:3^2", "tpoly:3:2"] {
            let start = Instant::now();
            let group = ElementaryGroup::build(family, rank, ring.parse()?)?;
            let report = check_relations(&group, samples, 2024)?;
            println!(
                "{family}{rank} over {ring}: {} cases, {} failures, signs match: {} ({:.2?})",
                report.cases.len(),
                report.failures(),
                report.commutator_signs_match(),
                start.elapsed()
            );
            for s in report.summary() {
                println!("  {:<24} {}/{}", s.relation.name(), s.passed, s.cases);
            }
        }
    }
    Ok(())
}
