//! Rigidity of the torus part in rank two: a block-diagonal `d` compatible
//! with the images of `x_{α₂}(1)`, `w₁`, `w₂` must be `h_{α₁}(s)`.

use serde::Serialize;

use super::golden::reference_a2_group;
use super::VerifyError;
use crate::group::ElementaryGroup;
use crate::matrix::Matrix;
use crate::rings::{RingDescriptor, RingElement};

/// The four `2×2` diagonal blocks of `d`, each stored row-major as
/// `[b₁, b₂, b₃, b₄]`: `k` on `v_{±1}`, `l` on `v_{±2}`, `m` on `v_{±(1+2)}`,
/// `n` on the Cartan lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusBlocks {
    pub k: [RingElement; 4],
    pub l: [RingElement; 4],
    pub m: [RingElement; 4],
    pub n: [RingElement; 4],
}

impl TorusBlocks {
    pub fn ring(&self) -> RingDescriptor {
        self.k[0].ring()
    }

    pub fn to_matrix(&self) -> Matrix {
        let ring = self.ring();
        let blocks = [&self.k, &self.l, &self.m, &self.n];
        Matrix::from_fn(ring, 8, 8, |i, j| if i / 2 == j / 2 { blocks[i / 2][2 * (i % 2) + j % 2].clone() } else { ring.zero() })
    }

    /// Reads the blocks, rejecting any entry outside them.
    pub fn from_matrix(d: &Matrix) -> Result<TorusBlocks, VerifyError> {
        if d.rows() != 8 || d.cols() != 8 {
            return Err(VerifyError::ConstraintViolated("block shape".into()));
        }
        for i in 0..8 {
            for j in 0..8 {
                if i / 2 != j / 2 && !d[(i, j)].is_zero() {
                    return Err(VerifyError::ConstraintViolated("block shape".into()));
                }
            }
        }
        let block = |b: usize| [d[(2 * b, 2 * b)].clone(), d[(2 * b, 2 * b + 1)].clone(), d[(2 * b + 1, 2 * b)].clone(), d[(2 * b + 1, 2 * b + 1)].clone()];
        Ok(TorusBlocks { k: block(0), l: block(1), m: block(2), n: block(3) })
    }
}

/// Which of the three conditions an entry is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusCondition {
    /// `x̃₂ x₂ − x₂ x̃₂` with `x̃₂ = d x₂ w₁ d w₁⁻¹`
    ScaledCommutation,
    /// `d w₁ d w₁⁻¹ − 1`
    WeylInversion,
    /// `w₂ d w₂⁻¹ − d w₁ w₂ d w₂⁻¹ w₁⁻¹`
    ReflectionCompatibility,
}

impl TorusCondition {
    pub fn name(self) -> &'static str {
        match self {
            TorusCondition::ScaledCommutation => "scaled commutation",
            TorusCondition::WeylInversion => "weyl inversion",
            TorusCondition::ReflectionCompatibility => "reflection compatibility",
        }
    }
}

/// The three condition matrices for a given `d`.
#[derive(Debug, Clone)]
pub struct TorusConditions {
    pub scaled_commutation: Matrix,
    pub weyl_inversion: Matrix,
    pub reflection_compatibility: Matrix,
}

impl TorusConditions {
    pub fn get(&self, c: TorusCondition) -> &Matrix {
        match c {
            TorusCondition::ScaledCommutation => &self.scaled_commutation,
            TorusCondition::WeylInversion => &self.weyl_inversion,
            TorusCondition::ReflectionCompatibility => &self.reflection_compatibility,
        }
    }

    pub fn all_vanish(&self) -> bool {
        self.scaled_commutation.is_zero() && self.weyl_inversion.is_zero() && self.reflection_compatibility.is_zero()
    }
}

pub fn torus_conditions(group: &ElementaryGroup, d: &Matrix) -> Result<TorusConditions, VerifyError> {
    let ring = group.ring();
    let one = ring.one();
    let (a1, a2) = (group.system().simple(1), group.system().simple(2));
    let w1 = group.w_elem(a1, &one)?.matrix;
    let w1_inv = group.w_elem(a1, &-&one)?.matrix;
    let w2 = group.w_elem(a2, &one)?.matrix;
    let w2_inv = group.w_elem(a2, &-&one)?.matrix;
    let x2 = group.x_matrix(a2, &one);
    let x2t = &(&(&(d * &x2) * &w1) * d) * &w1_inv;
    let scaled_commutation = &(&x2t * &x2) - &(&x2 * &x2t);
    let weyl_inversion = &(&(&(d * &w1) * d) * &w1_inv) - &Matrix::identity(ring, 8);
    let lhs = &(&w2 * d) * &w2_inv;
    let rhs = &(&(&(&(d * &w1) * &w2) * d) * &w2_inv) * &w1_inv;
    Ok(TorusConditions { scaled_commutation, weyl_inversion, reflection_compatibility: &lhs - &rhs })
}

/// One replayed deduction: the entries it reads and what it concludes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeductionStep {
    pub label: &'static str,
    pub entries: Vec<(TorusCondition, usize, usize)>,
    pub conclusion: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusRecovery {
    pub s: RingElement,
    pub steps: Vec<DeductionStep>,
}

type Check = fn(&TorusBlocks) -> bool;

fn deductions() -> Vec<(DeductionStep, Check)> {
    use TorusCondition::*;
    let step = |label, entries: &[(TorusCondition, usize, usize)], conclusion| DeductionStep { label, entries: entries.to_vec(), conclusion };
    vec![
        (step("antidiagonal of k", &[(ScaledCommutation, 1, 6)], "k2 = -k3"), |b| (&b.k[1] + &b.k[2]).is_zero()),
        (step("lower corners of l and m", &[(ScaledCommutation, 2, 1)], "m3 = l3"), |b| b.m[2] == b.l[2]),
        (step("lower corner of l", &[(ScaledCommutation, 2, 5)], "l3 = m3 = 0"), |b| b.l[2].is_zero() && b.m[2].is_zero()),
        (step("corners of k", &[(ScaledCommutation, 5, 6)], "k2 = k3 = 0"), |b| b.k[1].is_zero() && b.k[2].is_zero()),
        (
            step("diagonal products", &[(WeylInversion, 1, 1), (WeylInversion, 3, 3), (WeylInversion, 4, 4)], "k1 k4 = l1 m1 = l4 m4 = 1"),
            |b| (&b.k[0] * &b.k[3]).is_one() && (&b.l[0] * &b.m[0]).is_one() && (&b.l[3] * &b.m[3]).is_one(),
        ),
        (
            step("upper corners of l and m", &[(ReflectionCompatibility, 1, 2), (ReflectionCompatibility, 4, 3)], "m2 = l2 = 0"),
            |b| b.m[1].is_zero() && b.l[1].is_zero(),
        ),
        (step("second diagonal of l", &[(ReflectionCompatibility, 1, 1)], "l4 = l1 k1"), |b| b.l[3] == &b.l[0] * &b.k[0]),
        (
            step("cartan block", &[(WeylInversion, 7, 7), (ScaledCommutation, 3, 7)], "n = 1"),
            |b| b.n[0].is_one() && b.n[1].is_zero() && b.n[2].is_zero() && b.n[3].is_one(),
        ),
        (step("first diagonal of k", &[(ScaledCommutation, 3, 4)], "k1 l1^2 = 1"), |b| (&b.k[0] * &(&b.l[0] * &b.l[0])).is_one()),
    ]
}

/// Replays the deductions on `d`, returning `s` with `d = h_{α₁}(s)`.
pub fn recover_torus_parameter(group: &ElementaryGroup, d: &Matrix) -> Result<TorusRecovery, VerifyError> {
    let blocks = TorusBlocks::from_matrix(d)?;
    let conds = torus_conditions(group, d)?;
    let mut steps = Vec::new();
    for (step, holds) in deductions() {
        for &(c, i, j) in &step.entries {
            if !conds.get(c)[(i - 1, j - 1)].is_zero() {
                return Err(VerifyError::ConstraintViolated(format!("{}: {} ({i},{j}) does not vanish", step.label, c.name())));
            }
        }
        if !holds(&blocks) {
            return Err(VerifyError::ConstraintViolated(format!("{}: {} fails", step.label, step.conclusion)));
        }
        steps.push(step);
    }
    let s = blocks.l[0].invert().map_err(|_| VerifyError::ConstraintViolated("final: l1 is not a unit".into()))?;
    let h = group.h_elem(group.system().simple(1), &s)?.matrix;
    if h != *d {
        return Err(VerifyError::ConstraintViolated("final: d = h(α1, 1/l1) fails".into()));
    }
    steps.push(DeductionStep { label: "final", entries: Vec::new(), conclusion: "d = h(α1, 1/l1)" });
    Ok(TorusRecovery { s, steps })
}

/// Both directions for one unit `s`: `h_{α₁}(s)` satisfies the conditions,
/// and the deductions applied to it give back `s`.
pub fn verify_torus_rigidity(s: &RingElement) -> Result<TorusRecovery, VerifyError> {
    let ring = s.ring();
    if !s.is_unit() {
        return Err(VerifyError::PreconditionFailed { condition: "unit parameter".into(), index: s.to_string() });
    }
    let group = reference_a2_group(ring)?;
    let d = group.h_elem(group.system().simple(1), s)?.matrix;
    let conds = torus_conditions(&group, &d)?;
    for c in [TorusCondition::ScaledCommutation, TorusCondition::WeylInversion, TorusCondition::ReflectionCompatibility] {
        if !conds.get(c).is_zero() {
            return Err(VerifyError::ConstraintViolated(format!("necessity: {} does not vanish", c.name())));
        }
    }
    let recovery = recover_torus_parameter(&group, &d)?;
    if recovery.s != *s {
        return Err(VerifyError::ConstraintViolated(format!("final: recovered {} instead of {s}", recovery.s)));
    }
    Ok(recovery)
}

/// A `d` over ℤ/25 that satisfies all three conditions and commutes with the
/// torus, yet whose Cartan block is not the identity.
pub fn cartan_block_counterexample(s: i64) -> Result<Matrix, VerifyError> {
    let ring = RingDescriptor::integers_mod(5, 2)?;
    let e = |v: i64| ring.from_i64(v);
    let (nu, eta) = (e(5), e(10));
    let l1 = e(s).invert()?;
    // δ solves the first-order k-diagonal equation for this Cartan block.
    let delta = &(-&(&(&e(2) * &eta) + &(&e(4) * &nu))) * &(&(&e(2) + &(&e(3) * &eta)) + &(&e(3) * &nu)).invert()?;
    let k1 = &(&e(1) + &delta) * &(&l1 * &l1).invert()?;
    let n3 = nu;
    let n4 = &e(1) + &eta;
    let n1 = &n3 + &n4;
    let n2 = &n1 - &e(1);
    let blocks = TorusBlocks {
        k: [k1.clone(), e(0), e(0), k1.invert()?],
        l: [l1.clone(), e(0), e(0), &k1 * &l1],
        m: [l1.invert()?, e(0), e(0), (&k1 * &l1).invert()?],
        n: [n1, n2, n3, n4],
    };
    Ok(blocks.to_matrix())
}
