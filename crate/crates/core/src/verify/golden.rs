//! Printed A₂ matrices in the weight-vector basis and the search for the sign
//! normalization of the Chevalley basis that reproduces them.

use std::sync::Arc;

use serde::Serialize;

use super::VerifyError;
use crate::chevalley::{ChevalleyAlgebra, StructureConstantTable};
use crate::group::ElementaryGroup;
use crate::matrix::Matrix;
use crate::rings::RingDescriptor;
use crate::roots::{Family, RootSystem};

/// `w_{α₁}(1)` in the ordering `v₁, v₋₁, v₂, v₋₂, v₁₊₂, v₋₁₋₂, V₁, V₂`.
pub const W1: [[i64; 8]; 8] = [
    [0, -1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1],
];

/// `w_{α₂}(1)`.
pub const W2: [[i64; 8]; 8] = [
    [0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, -1],
];

/// `x_{α₁}(1)`.
pub const X1: [[i64; 8]; 8] = [
    [1, -1, 0, 0, 0, 0, -2, 1],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, -1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
];

pub fn printed(m: &[[i64; 8]; 8], ring: RingDescriptor) -> Matrix {
    Matrix::from_fn(ring, 8, 8, |i, j| ring.from_i64(m[i][j]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenMatch {
    /// `ε_α` for each positive root, in root order.
    pub flips: Vec<i8>,
    /// `N_{α₁,α₂}` under that normalization.
    pub n_alpha1_alpha2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    /// Preferred match: fewest flips, then lexicographic with `+1 < −1`.
    pub chosen: GoldenMatch,
    /// Every sign vector that reproduces all three printed matrices.
    pub all_matches: Vec<GoldenMatch>,
    pub candidates_tried: usize,
}

/// A₂ group over `ring` with the Chevalley basis rescaled by `flips`.
pub fn a2_group_with_flips(flips: &[i8], ring: RingDescriptor) -> Result<ElementaryGroup, VerifyError> {
    let system = RootSystem::build(Family::A, 2)?;
    let table = StructureConstantTable::with_flips(&system, flips).map_err(|e| VerifyError::StructuralFailure(e.to_string()))?;
    let algebra = ChevalleyAlgebra::with_table(system, table).map_err(|e| VerifyError::StructuralFailure(e.to_string()))?;
    Ok(ElementaryGroup::new(Arc::new(algebra), ring))
}

fn matches_printed(group: &ElementaryGroup) -> Result<bool, VerifyError> {
    let ring = group.ring();
    let one = ring.one();
    let (a1, a2) = (group.system().simple(1), group.system().simple(2));
    Ok(group.x_matrix(a1, &one) == printed(&X1, ring)
        && group.w_elem(a1, &one)?.matrix == printed(&W1, ring)
        && group.w_elem(a2, &one)?.matrix == printed(&W2, ring))
}

/// Tries all `2³` sign vectors over ℤ.
pub fn search_golden_signs() -> Result<GoldenReport, VerifyError> {
    let ring = RingDescriptor::integers();
    let mut all = Vec::new();
    let mut tried = 0;
    for mask in 0u32..8 {
        let flips: Vec<i8> = (0..3).map(|j| if mask >> (2 - j) & 1 == 1 { -1 } else { 1 }).collect();
        tried += 1;
        let group = a2_group_with_flips(&flips, ring)?;
        if matches_printed(&group)? {
            let (a1, a2) = (group.system().simple(1), group.system().simple(2));
            let n = group.algebra().structure_constant(a1, a2).expect("α₁ + α₂ is a root");
            all.push(GoldenMatch { flips, n_alpha1_alpha2: n });
        }
    }
    let chosen = all
        .iter()
        .min_by_key(|m| (m.flips.iter().filter(|&&f| f < 0).count(), m.flips.iter().map(|&f| f < 0).collect::<Vec<_>>()))
        .cloned()
        .ok_or_else(|| VerifyError::StructuralFailure("no sign normalization reproduces the printed matrices".into()))?;
    Ok(GoldenReport { chosen, all_matches: all, candidates_tried: tried })
}

/// A₂ group over `ring` in the normalization matching the printed matrices.
pub fn reference_a2_group(ring: RingDescriptor) -> Result<ElementaryGroup, VerifyError> {
    let report = search_golden_signs()?;
    a2_group_with_flips(&report.chosen.flips, ring)
}
