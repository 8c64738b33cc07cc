//! The linear system obtained by expanding the four conditions on the image of
//! `x_{α₁}(1)` to first order around its residue.

use num_bigint::BigInt;
use serde::Serialize;

use super::affine::{AffineForm, FormMatrix};
use super::golden::{printed, W1, W2};
use super::VerifyError;
use crate::matrix::{IntMatrix, Matrix};
use crate::rings::{RingDescriptor, RingElement};

/// One of the four matrix conditions whose entries must vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `x₁ x₁₊₂ − x₁₊₂ x₁`
    Commutation,
    /// `h₂ x₁ h₂ x₁ − 1`
    TorusInversion,
    /// `x₁ w₁ x₁ w₁⁻¹ − w₁ h₂ x₁ h₂`
    WeylTwist,
    /// `x₂ x₁ − x₁₊₂ x₁ x₂`
    CommutatorLaw,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::Commutation, Condition::TorusInversion, Condition::WeylTwist, Condition::CommutatorLaw];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Commutation => "commutation",
            Condition::TorusInversion => "torus inversion",
            Condition::WeylTwist => "weyl twist",
            Condition::CommutatorLaw => "commutator law",
        }
    }
}

/// A (condition, row, column) slot, 1-based like the matrices it reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub condition: Condition,
    pub row: usize,
    pub col: usize,
}

/// The 27 slots, in equation order.
pub fn standard_slots() -> Vec<Slot> {
    use Condition::*;
    let raw: [(Condition, usize, usize); 27] = [
        (Commutation, 1, 2),
        (Commutation, 1, 3),
        (Commutation, 1, 4),
        (Commutation, 1, 5),
        (Commutation, 1, 6),
        (Commutation, 1, 7),
        (Commutation, 1, 8),
        (Commutation, 2, 6),
        (Commutation, 3, 6),
        (Commutation, 3, 7),
        (CommutatorLaw, 3, 5),
        (WeylTwist, 8, 2),
        (TorusInversion, 1, 2),
        (CommutatorLaw, 6, 2),
        (WeylTwist, 3, 3),
        (TorusInversion, 2, 2),
        (TorusInversion, 3, 3),
        (TorusInversion, 3, 4),
        (CommutatorLaw, 7, 3),
        (TorusInversion, 4, 6),
        (TorusInversion, 5, 3),
        (TorusInversion, 5, 6),
        (TorusInversion, 7, 2),
        (TorusInversion, 7, 8),
        (WeylTwist, 1, 2),
        (WeylTwist, 6, 6),
        (CommutatorLaw, 7, 5),
    ];
    raw.iter().map(|&(condition, row, col)| Slot { condition, row, col }).collect()
}

pub const NUM_VARS: usize = 27;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem27 {
    /// Row `r` holds the coefficients of `y₁ … y₂₇` at `slots[r]`.
    pub coefficients: IntMatrix,
    pub slots: Vec<Slot>,
}

/// The block-shaped perturbation of `x_{α₁}(1)` with unknowns `y₁ … y₂₇`
/// (0-based indices here), after the normalizations `a₄ = 1`, `b₄ = 0`,
/// `b₁ = 0`, `h₃ = 0` and the substitution `f₃ = −e₃`.
pub fn perturbed_x1(ring: RingDescriptor) -> FormMatrix {
    let c = |v: i64| AffineForm::constant(ring.from_i64(v));
    let y = |base: i64, var: usize| AffineForm::shifted_var(ring.from_i64(base), var - 1);
    let zero = c(0);
    let (a, b) = ([y(1, 1), y(-1, 2), y(-2, 3), c(1)], [c(0), y(1, 4), y(0, 5), c(0)]);
    let cc = [y(0, 6), y(1, 7), y(1, 8), y(0, 9)];
    let d = [y(0, 10), y(0, 11), y(0, 12), y(1, 13)];
    let e = [y(1, 14), y(0, 15), y(0, 16), y(0, 17)];
    let f = [y(0, 18), y(1, 19), -&y(0, 16), y(1, 20)];
    let g = [y(-1, 21), y(0, 22), y(1, 23), y(0, 24)];
    let h = [y(0, 25), y(0, 26), c(0), y(1, 27)];
    let outer = |row: &[AffineForm; 4], j: usize| match j {
        0 | 1 => row[j].clone(),
        6 | 7 => row[j - 4].clone(),
        _ => zero.clone(),
    };
    let inner = |row: &[AffineForm; 4], j: usize| if (2..6).contains(&j) { row[j - 2].clone() } else { zero.clone() };
    FormMatrix::from_fn(8, |i, j| match i {
        0 => outer(&a, j),
        1 => outer(&b, j),
        2 => inner(&e, j),
        3 => inner(&f, j),
        4 => inner(&g, j),
        5 => inner(&h, j),
        6 => outer(&cc, j),
        _ => outer(&d, j),
    })
}

/// Expands the four conditions over ℤ-forms.
pub fn condition_matrices() -> Result<Vec<(Condition, FormMatrix)>, VerifyError> {
    let z = RingDescriptor::integers();
    let x1 = perturbed_x1(z);
    let w1m = printed(&W1, z);
    let w2m = printed(&W2, z);
    let w1 = FormMatrix::from_matrix(&w1m);
    let w1_inv = FormMatrix::from_matrix(&w1m.inverse()?);
    let w2 = FormMatrix::from_matrix(&w2m);
    let w2_inv = FormMatrix::from_matrix(&w2m.inverse()?);
    let h2 = FormMatrix::from_matrix(&Matrix::from_fn(z, 8, 8, |i, j| z.from_i64(if i != j { 0 } else if [0, 1, 4, 5].contains(&i) { -1 } else { 1 })));
    let id = FormMatrix::from_matrix(&Matrix::identity(z, 8));
    let x12 = &(&w2 * &x1) * &w2_inv;
    let x2 = &(&w1 * &x12) * &w1_inv;
    let commutation = &(&x1 * &x12) - &(&x12 * &x1);
    let torus = &(&(&(&h2 * &x1) * &h2) * &x1) - &id;
    let twist = &(&(&(&x1 * &w1) * &x1) * &w1_inv) - &(&(&(&w1 * &h2) * &x1) * &h2);
    let law = &(&x2 * &x1) - &(&(&x12 * &x1) * &x2);
    Ok(vec![
        (Condition::Commutation, commutation),
        (Condition::TorusInversion, torus),
        (Condition::WeylTwist, twist),
        (Condition::CommutatorLaw, law),
    ])
}

/// Builds the system at the given slots. Every constant term of every
/// condition must vanish at the base point.
pub fn build_con_system_at(slots: &[Slot]) -> Result<LinearSystem27, VerifyError> {
    let conds = condition_matrices()?;
    for (cond, m) in &conds {
        for i in 0..8 {
            for j in 0..8 {
                if !m.get(i, j).constant_term().is_zero() {
                    return Err(VerifyError::NonvanishingConstant { condition: cond.name().into(), row: i + 1, col: j + 1 });
                }
            }
        }
    }
    let mut coefficients = IntMatrix::zeros(slots.len(), NUM_VARS);
    for (r, slot) in slots.iter().enumerate() {
        if slot.row == 0 || slot.col == 0 || slot.row > 8 || slot.col > 8 {
            return Err(VerifyError::PositionOutOfRange { row: slot.row, col: slot.col, size: 8 });
        }
        let m = &conds.iter().find(|(c, _)| *c == slot.condition).expect("all conditions built").1;
        for (v, c) in m.get(slot.row - 1, slot.col - 1).terms() {
            coefficients[(r, v)] = c.to_bigint().and_then(|b| i64::try_from(b).ok()).expect("small integer coefficient");
        }
    }
    Ok(LinearSystem27 { coefficients, slots: slots.to_vec() })
}

pub fn build_con_system() -> Result<LinearSystem27, VerifyError> {
    build_con_system_at(&standard_slots())
}

impl LinearSystem27 {
    pub fn determinant(&self) -> BigInt {
        self.coefficients.determinant()
    }

    /// Copy with one coefficient negated; used to compare against variants
    /// of the system that differ in a single sign.
    pub fn with_negated(&self, row: usize, col: usize) -> LinearSystem27 {
        let mut out = self.clone();
        out.coefficients[(row, col)] = -out.coefficients[(row, col)];
        out
    }

    /// Solves the homogeneous system over `ring` by unit-pivot elimination.
    /// Succeeds only when the determinant is a unit, so the solution is unique.
    pub fn unique_solution(&self, ring: RingDescriptor) -> Result<Vec<RingElement>, VerifyError> {
        let det = ring.from_bigint(&self.determinant());
        if !det.is_unit() {
            return Err(VerifyError::StructuralFailure(format!("determinant {det} is not a unit in {ring}")));
        }
        let m = Matrix::from_int(ring, &self.coefficients);
        Ok(m.solve(&vec![ring.zero(); self.coefficients.rows()])?)
    }

    /// Row labels like `commutation (1,2)`.
    pub fn row_labels(&self) -> Vec<String> {
        self.slots.iter().map(|s| format!("{} ({},{})", s.condition.name(), s.row, s.col)).collect()
    }
}
