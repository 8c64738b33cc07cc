//! Span closure of the group generators inside the full matrix ring, and the
//! explicit rank-two derivation of every matrix unit.
//!
//! Usage: cargo run --release --example matrix_units [--heavy]

use std::time::Instant;

use adjoint_chevalley::group::ElementaryGroup;
use adjoint_chevalley::roots::Family;
use adjoint_chevalley::verify::matrix_units::{generate_matrix_units, scripted_a2_derivation, span_closure, default_seeds, torus_parameter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let heavy = std::env::args().any(|a| a == "--heavy");
    let mut cases = vec![(Family::A, 2, "fp:3"), (Family::A, 2, "fp:5"), (Family::A, 3, "fp:3"), (Family::A, 3, "zmod:3^2"), (Family::D, 4, "fp:5")];
    if heavy {
        cases.push((Family::E, 6, "fp:5"));
    }
    for (family, rank, ring) in cases {
        let group = ElementaryGroup::build(family, rank, ring.parse()?)?;
        let start = Instant::now();
        let t0 = torus_parameter(group.ring().residue_field()?).lift_to(group.ring())?;
        let closure = span_closure(&group, &default_seeds(&group, &t0), heavy)?;
        let n = closure.n;
        println!("{family}{rank} over {ring}: closure {} of {} with t0 = {t0} ({:.2?})", closure.dimension, n * n, start.elapsed());
    }

    let group = ElementaryGroup::build(Family::A, 2, "fp:5".parse()?)?;
    let report = generate_matrix_units(&group, false)?;
    let word = report.closure.witness_word(report.closure.dimension - 1);
    println!("last spanning element: word of length {}", word.len());

    let f5 = group.ring();
    let script = scripted_a2_derivation(f5, &f5.from_i64(2))?;
    for step in &script.steps {
        let mark = if step.pass { "ok  " } else { "FAIL" };
        let extra = step.observed.as_ref().map(|o| format!(" [actual {o}]")).unwrap_or_default();
        let repair = if step.repair { " (repair)" } else { "" };
        println!("{mark} {}{repair}: {}{extra}", step.label, step.claim);
    }
    println!("units obtained: {} of 64", script.units_obtained);
    Ok(())
}
