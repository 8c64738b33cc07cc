//! Elementary adjoint Chevalley group `E_ad(Φ, R)` in the adjoint representation.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{ChevalleyAlgebra, ChevalleyError};
use crate::matrix::{LinAlgError, Matrix, SparseMatrix};
use crate::rings::{RingDescriptor, RingElement, RingError};
use crate::roots::{Family, RootError, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("conjugate matches neither sign for roots {0} and {1}")]
    NoMatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    W,
    H,
}

/// One letter of a generator word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub generator: Generator,
    pub root: usize,
    pub param: RingElement,
}

impl Token {
    pub fn inverse(&self) -> Result<Token, RingError> {
        let param = match self.generator {
            Generator::X | Generator::W => -&self.param,
            Generator::H => self.param.invert()?,
        };
        Ok(Token { generator: self.generator, root: self.root, param })
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::X => "x",
            Generator::W => "w",
            Generator::H => "h",
        };
        write!(f, "{g}[{}]({})", self.root, self.param)
    }
}

/// An invertible matrix of the group, with the generator word that produced
/// it when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub word: Option<Vec<Token>>,
}

impl GroupElement {
    pub fn from_matrix(matrix: Matrix) -> Self {
        GroupElement { matrix, word: None }
    }

    pub fn ring(&self) -> RingDescriptor {
        self.matrix.ring()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Inverse, via the word when it is known.
    pub fn inverse(&self, group: &ElementaryGroup) -> Result<GroupElement, GroupError> {
        match &self.word {
            Some(word) => {
                let inv: Vec<Token> = word.iter().rev().map(Token::inverse).collect::<Result<_, _>>()?;
                group.evaluate_word(&inv)
            }
            None => Ok(GroupElement::from_matrix(self.matrix.inverse()?)),
        }
    }
}

impl Mul<&GroupElement> for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        let word = match (&self.word, &rhs.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        GroupElement { matrix: &self.matrix * &rhs.matrix, word }
    }
}

/// Generators of `E_ad(Φ, R)` for a fixed algebra and ring.
#[derive(Debug, Clone)]
pub struct ElementaryGroup {
    algebra: Arc<ChevalleyAlgebra>,
    ring: RingDescriptor,
}

impl ElementaryGroup {
    pub fn new(algebra: Arc<ChevalleyAlgebra>, ring: RingDescriptor) -> Self {
        ElementaryGroup { algebra, ring }
    }

    /// Group for `(family, rank)` with the default structure constants.
    pub fn build(family: Family, rank: usize, ring: RingDescriptor) -> Result<Self, GroupError> {
        let algebra = ChevalleyAlgebra::new(RootSystem::build(family, rank)?)?;
        Ok(Self::new(Arc::new(algebra), ring))
    }

    pub fn algebra(&self) -> &Arc<ChevalleyAlgebra> {
        &self.algebra
    }

    pub fn system(&self) -> &RootSystem {
        self.algebra.system()
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Same algebra over another ring.
    pub fn over(&self, ring: RingDescriptor) -> ElementaryGroup {
        ElementaryGroup { algebra: Arc::clone(&self.algebra), ring }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { matrix: Matrix::identity(self.ring, self.dim()), word: Some(Vec::new()) }
    }

    fn check_ring(&self, t: &RingElement) -> Result<(), RingError> {
        if t.ring() != self.ring {
            return Err(RingError::MixedRings(t.ring().to_string(), self.ring.to_string()));
        }
        Ok(())
    }

    /// `I + t·A + t²·A²/2` with `A = ad x_α`.
    pub fn x_matrix(&self, root: usize, t: &RingElement) -> Matrix {
        self.x_sparse(root, t).to_dense()
    }

    /// Sparse form of [`Self::x_matrix`].
    pub fn x_sparse(&self, root: usize, t: &RingElement) -> SparseMatrix {
        let n = self.dim();
        if t.is_zero() {
            return SparseMatrix::identity(self.ring, n);
        }
        let t2 = t * t;
        let ring = self.ring;
        let diag = (0..n).map(|i| (i, i, ring.one()));
        let linear = self.algebra.ad_root(root).entries().map(|(i, j, v)| (i, j, t * &ring.from_i64(v)));
        let quadratic = self.algebra.divided_square(root).entries().map(|(i, j, v)| (i, j, &t2 * &ring.from_i64(v)));
        SparseMatrix::from_triples(ring, n, diag.chain(linear).chain(quadratic))
    }

    /// Sparse `w_α(t)`; `t` must be a unit.
    pub fn w_sparse(&self, root: usize, t: &RingElement) -> Result<SparseMatrix, GroupError> {
        self.check_ring(t)?;
        let inv = t.invert()?;
        let xa = self.x_sparse(root, t);
        let xb = self.x_sparse(self.system().negative_of(root), &-inv);
        Ok(&(&xa * &xb) * &xa)
    }

    /// Sparse `h_α(t)`; `t` must be a unit.
    pub fn h_sparse(&self, root: usize, t: &RingElement) -> Result<SparseMatrix, GroupError> {
        self.check_ring(t)?;
        let inv = t.invert()?;
        let sys = self.system();
        let n = self.dim();
        let mut diag = Vec::with_capacity(n);
        for b in 0..n {
            let x = if b < sys.num_roots() {
                match sys.pairing_idx(b, root) {
                    e if e >= 0 => t.pow(e)?,
                    e => inv.pow(-e)?,
                }
            } else {
                self.ring.one()
            };
            diag.push((b, b, x));
        }
        Ok(SparseMatrix::from_triples(self.ring, n, diag))
    }

    pub fn x_elem(&self, root: usize, t: &RingElement) -> Result<GroupElement, GroupError> {
        self.check_ring(t)?;
        Ok(GroupElement {
            matrix: self.x_matrix(root, t),
            word: Some(vec![Token { generator: Generator::X, root, param: t.clone() }]),
        })
    }

    /// `x_α(t) x_{−α}(−t⁻¹) x_α(t)`.
    pub fn w_elem(&self, root: usize, t: &RingElement) -> Result<GroupElement, GroupError> {
        Ok(GroupElement {
            matrix: self.w_sparse(root, t)?.to_dense(),
            word: Some(vec![Token { generator: Generator::W, root, param: t.clone() }]),
        })
    }

    /// `w_α(t) w_α(1)⁻¹`, which acts on `v_β` by `t^{⟨β,α⟩}` and fixes the Cartan block.
    pub fn h_elem(&self, root: usize, t: &RingElement) -> Result<GroupElement, GroupError> {
        Ok(GroupElement {
            matrix: self.h_sparse(root, t)?.to_dense(),
            word: Some(vec![Token { generator: Generator::H, root, param: t.clone() }]),
        })
    }

    pub fn token_elem(&self, token: &Token) -> Result<GroupElement, GroupError> {
        match token.generator {
            Generator::X => self.x_elem(token.root, &token.param),
            Generator::W => self.w_elem(token.root, &token.param),
            Generator::H => self.h_elem(token.root, &token.param),
        }
    }

    pub fn evaluate_word(&self, word: &[Token]) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for token in word {
            acc = &acc * &self.token_elem(token)?;
        }
        Ok(acc)
    }

    /// The sign `c` with `w_α(1) x_β(1) w_α(1)⁻¹ = x_{s_α β}(c)`.
    pub fn c_sign(&self, alpha: usize, beta: usize) -> Result<i64, GroupError> {
        let one = self.ring.one();
        let w = self.w_sparse(alpha, &one)?;
        let w_inv = self.w_sparse(alpha, &-&one)?;
        let conj = &(&w * &self.x_sparse(beta, &one)) * &w_inv;
        let target = self.system().reflect_idx(alpha, beta);
        for c in [1, -1] {
            if conj == self.x_sparse(target, &self.ring.from_i64(c)) {
                return Ok(c);
            }
        }
        Err(GroupError::NoMatch(alpha, beta))
    }

    /// The same algebra over the residue field.
    pub fn residue_group(&self) -> Result<ElementaryGroup, RingError> {
        Ok(self.over(self.ring.residue_field()?))
    }

    /// Where `h_{α_i}(−1)` acts by `−1` on the positive root lines, read off
    /// the matrix. `i` is 1-based.
    pub fn h_minus_one_pattern(&self, i: usize) -> Result<SignPattern, GroupError> {
        let sys = self.system();
        let minus_one = -&self.ring.one();
        let h = self.h_sparse(sys.simple(i), &minus_one)?;
        let mut negated = Vec::new();
        let mut odd_pairing = Vec::new();
        let mut pairing_plus_one = Vec::new();
        for j in 0..sys.num_positive() {
            let line = 2 * j;
            if h.row(line).iter().any(|(c, x)| *c == line && *x == minus_one) {
                negated.push(j);
            }
            match sys.pairing_with_simple(line, i - 1) {
                1 => {
                    odd_pairing.push(j);
                    pairing_plus_one.push(j);
                }
                -1 => odd_pairing.push(j),
                _ => {}
            }
        }
        Ok(SignPattern { simple: i, parity_rule_holds: negated == odd_pairing, negated, pairing_plus_one })
    }
}

/// Sign pattern of `h_{α_i}(−1)` on positive roots (0-based positions in
/// the positive-root list).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    pub simple: usize,
    pub negated: Vec<usize>,
    /// `−1` occurs exactly at roots of odd pairing with `α_i`.
    pub parity_rule_holds: bool,
    /// Roots negated although their pairing is `+1`, where a "pairing equals
    /// −1" criterion would predict `+1`.
    pub pairing_plus_one: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(f: Family, l: usize, ring: &str) -> ElementaryGroup {
        ElementaryGroup::build(f, l, ring.parse().unwrap()).unwrap()
    }

    #[test]
    fn h_minus_one_follows_parity() {
        let g = group(Family::D, 4, "fp:7");
        for i in 1..=4 {
            let p = g.h_minus_one_pattern(i).unwrap();
            assert!(p.parity_rule_holds);
            // α_i itself has pairing 2 and is never negated.
            assert!(!p.negated.contains(&(i - 1)));
        }
        // In A₂, α₁ + α₂ has pairing +1 with α₁ and is negated.
        let a2 = group(Family::A, 2, "fp:7").h_minus_one_pattern(1).unwrap();
        assert_eq!(a2.negated, vec![1, 2]);
        assert_eq!(a2.pairing_plus_one, vec![2]);
    }

    #[test]
    fn x_of_zero_is_identity() {
        let g = group(Family::A, 2, "fp:7");
        assert!(g.x_elem(0, &g.ring().zero()).unwrap().is_identity());
    }

    #[test]
    fn w_requires_unit() {
        let g = group(Family::A, 2, "zmod:3^2");
        let three = g.ring().from_i64(3);
        assert!(matches!(g.w_elem(0, &three), Err(GroupError::Ring(RingError::NonUnit(_)))));
        assert!(matches!(g.h_elem(0, &three), Err(GroupError::Ring(RingError::NonUnit(_)))));
    }

    #[test]
    fn h_matches_product_definition() {
        for (f, l) in [(Family::A, 2), (Family::A, 3), (Family::D, 4)] {
            let g = group(f, l, "fp:7");
            let t = g.ring().from_i64(3);
            let minus_one = g.ring().from_i64(-1);
            for r in 0..g.system().num_roots() {
                let prod = &g.w_elem(r, &t).unwrap().matrix * &g.w_elem(r, &minus_one).unwrap().matrix;
                assert_eq!(prod, g.h_elem(r, &t).unwrap().matrix, "root {r}");
            }
        }
    }

    #[test]
    fn h_on_a2_over_rationals() {
        let g = group(Family::A, 2, "rat");
        let t = g.ring().parse_element("5/3").unwrap();
        let h = g.h_elem(0, &t).unwrap().matrix;
        let ti = t.invert().unwrap();
        let expected = [&t * &t, &ti * &ti, ti.clone(), t.clone(), t.clone(), ti.clone(), g.ring().one(), g.ring().one()];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(&h[(i, i)], e);
        }
    }

    #[test]
    fn inverse_by_word() {
        let g = group(Family::A, 3, "zmod:5^2");
        let two = g.ring().from_i64(2);
        let e = &(&g.x_elem(3, &two).unwrap() * &g.w_elem(5, &two).unwrap()) * &g.h_elem(0, &two).unwrap();
        let inv = e.inverse(&g).unwrap();
        assert!((&e * &inv).is_identity());
        let raw = GroupElement::from_matrix(e.matrix.clone());
        assert_eq!(raw.inverse(&g).unwrap().matrix, inv.matrix);
    }

    #[test]
    fn c_sign_of_root_with_itself() {
        for (f, l) in [(Family::A, 2), (Family::D, 4)] {
            let g = group(f, l, "fp:7");
            for r in 0..g.system().num_roots() {
                assert_eq!(g.c_sign(r, r).unwrap(), -1);
            }
        }
    }
}
