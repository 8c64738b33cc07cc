//! Finds the sign normalization of the Chevalley basis under which the
//! generators of A₂ reproduce the printed 8×8 matrices.
//!
//! Usage: cargo run --example golden_sign_search

use adjoint_chevalley::verify::golden::search_golden_signs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = search_golden_signs()?;
    println!("tried {} sign vectors, {} reproduce all three matrices", report.candidates_tried, report.all_matches.len());
    for m in &report.all_matches {
        println!("  flips {:?}  N(α1, α2) = {}", m.flips, m.n_alpha1_alpha2);
    }
    println!("chosen: {:?}", report.chosen.flips);
    Ok(())
}
