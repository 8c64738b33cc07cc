//! Chevalley basis, integer structure constants and adjoint matrices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::roots::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error("odd entry in the square of ad x for root index {0}")]
    NonIntegralDividedPower(usize),
    #[error("sign vector has length {got}, expected {expected}")]
    BadSignVector { expected: usize, got: usize },
}

/// Basis element of the Lie algebra: `X(r)` is `x_α` for the root with basis
/// index `r`, `H(i)` is `h_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    X(usize),
    H(usize),
}

impl BasisIndex {
    /// Position in the global ordering (0-based): roots first, then Cartan.
    pub fn position(self, system: &RootSystem) -> usize {
        match self {
            BasisIndex::X(r) => r,
            BasisIndex::H(i) => system.num_roots() + i,
        }
    }

    pub fn from_position(pos: usize, system: &RootSystem) -> BasisIndex {
        if pos < system.num_roots() {
            BasisIndex::X(pos)
        } else {
            BasisIndex::H(pos - system.num_roots())
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::X(r) => write!(f, "x[{r}]"),
            BasisIndex::H(i) => write!(f, "h{}", i + 1),
        }
    }
}

/// Square integer matrix stored by rows of `(column, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    n: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseIntMatrix { n, rows: vec![Vec::new(); n] }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let rows = (0..m.rows()).map(|i| (0..m.cols()).filter(|&j| m[(i, j)] != 0).map(|j| (j, m[(i, j)])).collect()).collect();
        SparseIntMatrix { n: m.rows(), rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i].iter().find(|(c, _)| *c == j).map_or(0, |(_, v)| *v)
    }

    /// Nonzero entries `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for (i, j, v) in self.entries() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        let mut rows = Vec::with_capacity(self.n);
        for row in &self.rows {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    *acc.entry(j).or_insert(0) += a * b;
                }
            }
            rows.push(acc.into_iter().filter(|(_, v)| *v != 0).collect());
        }
        SparseIntMatrix { n: self.n, rows }
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn halve(&self) -> Option<SparseIntMatrix> {
        let mut rows = Vec::with_capacity(self.n);
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for &(j, v) in row {
                if v % 2 != 0 {
                    return None;
                }
                out.push((j, v / 2));
            }
            rows.push(out);
        }
        Some(SparseIntMatrix { n: self.n, rows })
    }
}

/// Frenkel-Kac cocycle on the root lattice, bimultiplicative.
fn cocycle(system: &RootSystem, a: &[i64], b: &[i64]) -> i64 {
    let l = system.rank();
    let mut parity = 0i64;
    for i in 0..l {
        if a[i] == 0 {
            continue;
        }
        for j in i..l {
            if i == j || system.adjacent(i, j) {
                parity += a[i] * b[j];
            }
        }
    }
    if parity.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// Signs `N_{α,β}` of a Chevalley basis.
///
/// The base table comes from the cocycle construction, renormalized so that
/// every extraspecial pair `(α_i, ξ − α_i)` (smallest such `i`) has sign `+1`.
/// Optional per-positive-root flips `ε` rescale `x_{±α}` by `ε_α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantTable {
    num_roots: usize,
    /// `n[a * num_roots + b]` is `N_{a,b}` if `a + b` is a root, else 0.
    n: Vec<i8>,
    flips: Vec<i8>,
}

impl StructureConstantTable {
    pub fn build(system: &RootSystem) -> Self {
        let m = system.num_positive();
        Self::with_flips(system, &vec![1; m]).expect("length matches")
    }

    pub fn with_flips(system: &RootSystem, flips: &[i8]) -> Result<Self, ChevalleyError> {
        let m = system.num_positive();
        if flips.len() != m || flips.iter().any(|f| f.abs() != 1) {
            return Err(ChevalleyError::BadSignVector { expected: m, got: flips.len() });
        }
        let nr = system.num_roots();
        let sign = |r: usize| if system.is_positive_index(r) { 1 } else { -1 };
        let n0 = |a: usize, b: usize, c: usize| -> i64 { sign(a) * sign(b) * sign(c) * cocycle(system, system.root(a).coords(), system.root(b).coords()) };
        let mut s = vec![0i64; nr];
        for j in 0..m {
            let xi = 2 * j;
            if system.root(xi).height() == 1 {
                s[xi] = 1;
            } else {
                let (ai, eta) = (1..=system.rank())
                    .find_map(|i| {
                        let a = system.simple(i);
                        let eta = system.root(xi).sub(system.root(a));
                        system.index_of(&eta).ok().filter(|&e| system.is_positive_index(e)).map(|e| (a, e))
                    })
                    .expect("every non-simple positive root has a simple predecessor");
                s[xi] = s[eta] * n0(ai, eta, xi);
            }
            s[xi] *= i64::from(flips[j]);
            s[xi + 1] = s[xi];
        }
        let mut table = vec![0i8; nr * nr];
        for a in 0..nr {
            for b in 0..nr {
                if let Some(c) = system.sum_index(a, b) {
                    table[a * nr + b] = (s[a] * s[b] * s[c] * n0(a, b, c)) as i8;
                }
            }
        }
        Ok(StructureConstantTable { num_roots: nr, n: table, flips: flips.to_vec() })
    }

    /// `N_{a,b}` when `a + b` is a root.
    pub fn get(&self, a: usize, b: usize) -> Option<i8> {
        let v = self.n[a * self.num_roots + b];
        (v != 0).then_some(v)
    }

    pub fn flips(&self) -> &[i8] {
        &self.flips
    }
}

/// The Chevalley basis of a simply-laced Lie algebra with cached adjoint
/// matrices `ad x_α` and divided squares `(ad x_α)²/2`.
#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    system: RootSystem,
    table: StructureConstantTable,
    ad: Vec<SparseIntMatrix>,
    half_sq: Vec<SparseIntMatrix>,
}

impl ChevalleyAlgebra {
    pub fn new(system: RootSystem) -> Result<Self, ChevalleyError> {
        let table = StructureConstantTable::build(&system);
        Self::with_table(system, table)
    }

    pub fn with_table(system: RootSystem, table: StructureConstantTable) -> Result<Self, ChevalleyError> {
        let mut alg = ChevalleyAlgebra { system, table, ad: Vec::new(), half_sq: Vec::new() };
        let nr = alg.system.num_roots();
        alg.ad = (0..nr).map(|r| alg.compute_ad(BasisIndex::X(r))).collect();
        alg.half_sq = alg
            .ad
            .iter()
            .enumerate()
            .map(|(r, a)| a.mul(a).halve().ok_or(ChevalleyError::NonIntegralDividedPower(r)))
            .collect::<Result<_, _>>()?;
        Ok(alg)
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn table(&self) -> &StructureConstantTable {
        &self.table
    }

    /// Dimension `n = l + 2m`.
    pub fn dim(&self) -> usize {
        self.system.dimension()
    }

    /// `N_{a,b}` or `None` when `a + b` is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> Option<i64> {
        self.table.get(a, b).map(i64::from)
    }

    /// Lie bracket of two basis elements as a sorted integer combination.
    pub fn bracket(&self, a: BasisIndex, b: BasisIndex) -> Vec<(BasisIndex, i64)> {
        let sys = &self.system;
        let mut out = match (a, b) {
            (BasisIndex::H(_), BasisIndex::H(_)) => Vec::new(),
            (BasisIndex::H(i), BasisIndex::X(r)) => vec![(BasisIndex::X(r), sys.pairing_with_simple(r, i))],
            (BasisIndex::X(r), BasisIndex::H(i)) => vec![(BasisIndex::X(r), -sys.pairing_with_simple(r, i))],
            (BasisIndex::X(r), BasisIndex::X(q)) => {
                if q == sys.negative_of(r) {
                    sys.root(r).coords().iter().enumerate().map(|(i, &c)| (BasisIndex::H(i), c)).collect()
                } else if let Some(c) = sys.sum_index(r, q) {
                    vec![(BasisIndex::X(c), self.structure_constant(r, q).expect("sum is a root"))]
                } else {
                    Vec::new()
                }
            }
        };
        out.retain(|(_, c)| *c != 0);
        out.sort();
        out
    }

    fn compute_ad(&self, a: BasisIndex) -> SparseIntMatrix {
        let n = self.dim();
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for col in 0..n {
            for (b, c) in self.bracket(a, BasisIndex::from_position(col, &self.system)) {
                rows[b.position(&self.system)].push((col, c));
            }
        }
        SparseIntMatrix { n, rows }
    }

    /// `ad x_α` for the root with basis index `r`; column `j` is the image of basis vector `j`.
    pub fn ad_root(&self, r: usize) -> &SparseIntMatrix {
        &self.ad[r]
    }

    /// `(ad x_α)² / 2`, integral by construction.
    pub fn divided_square(&self, r: usize) -> &SparseIntMatrix {
        &self.half_sq[r]
    }

    /// Dense `ad x_α`.
    pub fn ad_matrix(&self, r: usize) -> IntMatrix {
        self.ad[r].to_dense()
    }

    /// `ad` of an arbitrary basis element.
    pub fn ad_basis(&self, a: BasisIndex) -> SparseIntMatrix {
        match a {
            BasisIndex::X(r) => self.ad[r].clone(),
            BasisIndex::H(_) => self.compute_ad(a),
        }
    }

    /// `tr(ad a · ad b)`.
    pub fn killing_form(&self, a: BasisIndex, b: BasisIndex) -> i64 {
        let (aa, bb) = (self.ad_basis(a), self.ad_basis(b));
        aa.entries().map(|(i, k, v)| v * bb.get(k, i)).sum()
    }
}
