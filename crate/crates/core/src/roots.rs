//! Simply-laced root systems of types A, D and E in Bourbaki numbering.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("root {0:?} does not belong to this system")]
    NotARoot(Vec<i64>),
    #[error("root of rank {got} used with a system of rank {expected}")]
    MixedSystems { expected: usize, got: usize },
    #[error("simple root index {0} out of range")]
    BadSimpleIndex(usize),
}

/// Cartan-Killing family. Only A, D and E can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for Family {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootError::UnsupportedType(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|c| *c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

/// Roots are addressed by their basis position: positive root `j` (0-based) is
/// at `2j`, its negative at `2j + 1`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: IntMatrix,
    positive: Vec<Root>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    /// reflections[i][r] = index of s_{i+1}(root r)
    reflections: Vec<Vec<usize>>,
}

/// Bourbaki Cartan matrix.
pub fn cartan_matrix(family: Family, rank: usize) -> Result<IntMatrix, RootError> {
    let unsupported = || RootError::UnsupportedType(format!("{family}{rank}"));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::A if rank >= 2 => edges.extend((1..rank).map(|i| (i, i + 1))),
        Family::D if rank >= 4 => {
            edges.extend((1..rank - 1).map(|i| (i, i + 1)));
            edges.push((rank - 2, rank));
        }
        Family::E if (6..=8).contains(&rank) => {
            edges.extend([(1, 3), (3, 4), (4, 5), (2, 4)]);
            edges.extend((5..rank).map(|i| (i, i + 1)));
        }
        _ => return Err(unsupported()),
    }
    let mut c = IntMatrix::identity(rank);
    for i in 0..rank {
        c[(i, i)] = 2;
    }
    for (a, b) in edges {
        c[(a - 1, b - 1)] = -1;
        c[(b - 1, a - 1)] = -1;
    }
    Ok(c)
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<RootSystem, RootError> {
        let cartan = cartan_matrix(family, rank)?;
        let l = rank;
        let simple: Vec<Root> = (0..l).map(|i| Root((0..l).map(|j| i64::from(i == j)).collect())).collect();
        let reflect_raw = |i: usize, b: &Root| -> Root {
            let pairing: i64 = (0..l).map(|j| b.0[j] * cartan[(j, i)]).sum();
            let mut out = b.clone();
            out.0[i] -= pairing;
            out
        };
        let mut seen: HashSet<Root> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Root> = simple.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for i in 0..l {
                let s = reflect_raw(i, &r);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut positive: Vec<Root> = seen.into_iter().filter(Root::is_positive).collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        let roots: Vec<Root> = positive.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        let index: HashMap<Root, usize> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let reflections = (0..l).map(|i| roots.iter().map(|r| index[&reflect_raw(i, r)]).collect()).collect();
        Ok(RootSystem { family, rank, cartan, positive, roots, index, reflections })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Dimension of the adjoint representation, `l + 2m`.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// All roots in basis order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    /// Basis index of the simple root `α_i`, `i` counted from 1.
    pub fn simple(&self, i: usize) -> usize {
        assert!((1..=self.rank).contains(&i), "simple root index {i} out of range");
        2 * (i - 1)
    }

    pub fn negative_of(&self, idx: usize) -> usize {
        idx ^ 1
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx % 2 == 0
    }

    pub fn index_of(&self, r: &Root) -> Result<usize, RootError> {
        if r.0.len() != self.rank {
            return Err(RootError::MixedSystems { expected: self.rank, got: r.0.len() });
        }
        self.index.get(r).copied().ok_or_else(|| RootError::NotARoot(r.0.clone()))
    }

    /// Index of `a + b` if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&self.roots[a].add(&self.roots[b])).copied()
    }

    /// ⟨β, α⟩ for coordinate vectors.
    pub fn pairing(&self, beta: &Root, alpha: &Root) -> Result<i64, RootError> {
        for r in [beta, alpha] {
            if r.0.len() != self.rank {
                return Err(RootError::MixedSystems { expected: self.rank, got: r.0.len() });
            }
        }
        Ok(self.pairing_raw(beta, alpha))
    }

    fn pairing_raw(&self, beta: &Root, alpha: &Root) -> i64 {
        let l = self.rank;
        let mut s = 0;
        for i in 0..l {
            if beta.0[i] == 0 {
                continue;
            }
            for j in 0..l {
                s += beta.0[i] * self.cartan[(i, j)] * alpha.0[j];
            }
        }
        s
    }

    /// ⟨roots[b], roots[a]⟩ by index.
    pub fn pairing_idx(&self, b: usize, a: usize) -> i64 {
        self.pairing_raw(&self.roots[b], &self.roots[a])
    }

    /// ⟨roots[b], α_i⟩ with `i` counted from 0.
    pub fn pairing_with_simple(&self, b: usize, i: usize) -> i64 {
        let r = &self.roots[b];
        (0..self.rank).map(|j| r.0[j] * self.cartan[(j, i)]).sum()
    }

    /// `s_α(β) = β − ⟨β, α⟩ α`.
    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Result<Root, RootError> {
        self.index_of(alpha)?;
        self.index_of(beta)?;
        Ok(beta.sub(&alpha.scaled(self.pairing_raw(beta, alpha))))
    }

    pub fn reflect_idx(&self, a: usize, b: usize) -> usize {
        let r = self.roots[b].sub(&self.roots[a].scaled(self.pairing_idx(b, a)));
        self.index[&r]
    }

    /// Image of a root index under the simple reflection `s_i`, `i` from 1.
    pub fn simple_reflect(&self, i: usize, b: usize) -> usize {
        self.reflections[i - 1][b]
    }

    /// Shortest word `i_1, …, i_r` (1-based) such that applying
    /// `s_{i_1}` first, then `s_{i_2}`, … sends `source` to `target`.
    pub fn find_weyl_word(&self, source: &Root, target: &Root) -> Result<Vec<usize>, RootError> {
        let s = self.index_of(source)?;
        let t = self.index_of(target)?;
        Ok(self.weyl_word_idx(s, t))
    }

    pub fn weyl_word_idx(&self, s: usize, t: usize) -> Vec<usize> {
        let n = self.roots.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(r) = queue.pop_front() {
            if r == t {
                break;
            }
            for i in 1..=self.rank {
                let next = self.simple_reflect(i, r);
                if !visited[next] {
                    visited[next] = true;
                    prev[next] = Some((r, i));
                    queue.push_back(next);
                }
            }
        }
        let mut word = Vec::new();
        let mut cur = t;
        while let Some((p, i)) = prev[cur] {
            word.push(i);
            cur = p;
        }
        word.reverse();
        word
    }

    /// Apply a word left to right.
    pub fn apply_word(&self, word: &[usize], b: usize) -> usize {
        word.iter().fold(b, |r, &i| self.simple_reflect(i, r))
    }

    /// Simple roots adjacent in the Dynkin diagram (0-based indices).
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[(i, j)] == -1
    }
}

/// Closed-form positive-root counts.
pub fn expected_positive_count(family: Family, rank: usize) -> Option<usize> {
    match (family, rank) {
        (Family::A, l) if l >= 2 => Some(l * (l + 1) / 2),
        (Family::D, l) if l >= 4 => Some(l * (l - 1)),
        (Family::E, 6) => Some(36),
        (Family::E, 7) => Some(63),
        (Family::E, 8) => Some(120),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, l: usize) -> RootSystem {
        RootSystem::build(f, l).unwrap()
    }

    #[test]
    fn a2_positive_roots() {
        let s = sys(Family::A, 2);
        let coords: Vec<_> = s.positive_roots().iter().map(|r| r.0.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn counts() {
        assert_eq!(sys(Family::D, 4).num_positive(), 12);
        for (f, l) in [(Family::A, 5), (Family::D, 6), (Family::E, 6), (Family::E, 7), (Family::E, 8)] {
            assert_eq!(Some(sys(f, l).num_positive()), expected_positive_count(f, l));
        }
        assert!(matches!(RootSystem::build(Family::B, 3), Err(RootError::UnsupportedType(_))));
        assert!(RootSystem::build(Family::D, 3).is_err());
        assert!(RootSystem::build(Family::E, 9).is_err());
        assert!(RootSystem::build(Family::A, 1).is_err());
    }

    #[test]
    fn simple_roots_come_first() {
        for (f, l) in [(Family::A, 4), (Family::D, 5), (Family::E, 6)] {
            let s = sys(f, l);
            for i in 0..l {
                assert_eq!(s.positive_roots()[i].height(), 1);
                assert_eq!(s.positive_roots()[i].0[i], 1);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let s = sys(Family::A, 2);
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        assert_eq!(s.pairing(&a1, &a1).unwrap(), 2);
        assert_eq!(s.pairing(&a1, &a2).unwrap(), -1);
        assert_eq!(s.pairing(&a1, &a1.neg()).unwrap(), -2);
        assert!(matches!(s.pairing(&a1, &Root(vec![1, 0, 0])), Err(RootError::MixedSystems { .. })));
    }

    #[test]
    fn reflect_examples() {
        let s = sys(Family::A, 2);
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        assert_eq!(s.reflect(&a1, &a1).unwrap(), a1.neg());
        assert_eq!(s.reflect(&a1, &a2).unwrap(), Root(vec![1, 1]));
        let d = sys(Family::D, 4);
        let b1 = Root(vec![1, 0, 0, 0]);
        let b3 = Root(vec![0, 0, 1, 0]);
        assert_eq!(d.reflect(&b1, &b3).unwrap(), b3);
    }

    #[test]
    fn weyl_words() {
        let s = sys(Family::A, 2);
        let a1 = Root(vec![1, 0]);
        assert_eq!(s.find_weyl_word(&a1, &a1).unwrap(), Vec::<usize>::new());
        assert_eq!(s.find_weyl_word(&a1, &Root(vec![1, 1])).unwrap(), vec![2]);
        assert!(matches!(s.find_weyl_word(&a1, &Root(vec![2, 0])), Err(RootError::NotARoot(_))));
    }

    #[test]
    fn d4_branch_is_alpha2() {
        let d = sys(Family::D, 4);
        let neighbours: Vec<usize> = (0..4).filter(|&j| d.adjacent(1, j)).collect();
        assert_eq!(neighbours, vec![0, 2, 3]);
    }

    #[test]
    fn e_branch_is_alpha4() {
        for l in 6..=8 {
            let e = sys(Family::E, l);
            let deg = |i: usize| (0..l).filter(|&j| e.adjacent(i, j)).count();
            assert_eq!(deg(3), 3);
            assert!((0..l).filter(|&i| i != 3).all(|i| deg(i) <= 2));
            assert!(e.adjacent(1, 3));
        }
    }
}
