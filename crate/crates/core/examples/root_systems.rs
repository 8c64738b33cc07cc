//! Positive roots, Cartan pairings and Weyl words for the simply-laced systems.
//!
//! Usage: cargo run --example root_systems [family] [rank]

use adjoint_chevalley::roots::{Family, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().unwrap_or_else(|| "D".into()).parse()?;
    let rank: usize = args.next().map_or(Ok(4), |s| s.parse())?;
    let sys = RootSystem::build(family, rank)?;
    println!("{family}{rank}: {} positive roots, dimension {}", sys.num_positive(), sys.dimension());
    for (j, root) in sys.positive_roots().iter().enumerate() {
        let pairings: Vec<i64> = (0..rank).map(|i| sys.pairing_with_simple(2 * j, i)).collect();
        let word = sys.weyl_word_idx(sys.simple(1), 2 * j);
        println!("  {:?}  height {}  pairings with simple roots {:?}  reached from α1 by {:?}", root.coords(), root.height(), pairings, word.iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    for f in [(Family::E, 6), (Family::E, 7), (Family::E, 8)] {
        println!("{}{}: m = {}", f.0, f.1, RootSystem::build(f.0, f.1)?.num_positive());
    }
    Ok(())
}
