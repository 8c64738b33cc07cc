//! Randomized verification of the Steinberg-type relations among generators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::group::{ElementaryGroup, GroupError};
use crate::matrix::SparseMatrix;
use crate::rings::RingElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `x_α(t) x_α(u) = x_α(t + u)`
    Additivity,
    /// `[x_α(t), x_β(u)] = x_{α+β}(N_{α,β} t u)`, or the identity when `α + β` is not a root
    Commutator,
    /// `w_α h_β(t) w_α⁻¹ = h_{s_α β}(t)`
    WeylTorusConjugation,
    /// `w_α x_β(t) w_α⁻¹ = x_{s_α β}(c t)` with `c = ±1` independent of `t`
    WeylRootConjugation,
    /// `h_α(t) x_β(u) h_α(t)⁻¹ = x_β(t^{⟨β,α⟩} u)`
    TorusRootConjugation,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::Additivity,
        Relation::Commutator,
        Relation::WeylTorusConjugation,
        Relation::WeylRootConjugation,
        Relation::TorusRootConjugation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Additivity => "additivity",
            Relation::Commutator => "commutator",
            Relation::WeylTorusConjugation => "weyl_torus_conjugation",
            Relation::WeylRootConjugation => "weyl_root_conjugation",
            Relation::TorusRootConjugation => "torus_root_conjugation",
        }
    }
}

/// Outcome of one sampled instance of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCase {
    pub relation: Relation,
    pub alpha: usize,
    pub beta: usize,
    pub sample: usize,
    pub params: Vec<RingElement>,
    pub pass: bool,
    /// Sign read off the matrices: `N_{α,β}` for commutators, `c(α,β)` for
    /// Weyl conjugation of root elements.
    pub realized_sign: Option<i64>,
    /// Expected sign, where one applies.
    pub expected_sign: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSummary {
    pub relation: Relation,
    pub cases: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub cases: Vec<RelationCase>,
}

impl RelationReport {
    pub fn summary(&self) -> Vec<RelationSummary> {
        Relation::ALL
            .iter()
            .map(|&relation| {
                let of_kind = self.cases.iter().filter(|c| c.relation == relation);
                RelationSummary {
                    relation,
                    cases: of_kind.clone().count(),
                    passed: of_kind.filter(|c| c.pass).count(),
                }
            })
            .collect()
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    /// True iff every realized commutator sign equals the structure constant.
    pub fn commutator_signs_match(&self) -> bool {
        self.cases
            .iter()
            .filter(|c| c.relation == Relation::Commutator)
            .all(|c| c.realized_sign.is_none() || c.realized_sign == c.expected_sign)
    }

    /// Number of commutator cases whose sign was actually observed.
    pub fn observed_commutator_signs(&self) -> usize {
        self.cases.iter().filter(|c| c.relation == Relation::Commutator && c.realized_sign.is_some()).count()
    }
}

/// Mixes the run seed with a case key so that each (relation, α, β) draws an
/// independent, schedule-free parameter stream.
pub fn case_seed(seed: u64, key: &[u64]) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &k in key {
        h = splitmix(h ^ k.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Checks every relation for every ordered pair of roots with `samples` random
/// parameter draws each. Runs on the current rayon pool; the case order is
/// canonical (relation, α, β, sample).
pub fn check_relations(group: &ElementaryGroup, samples: usize, seed: u64) -> Result<RelationReport, GroupError> {
    let nr = group.system().num_roots();
    let mut jobs = Vec::new();
    for rel in Relation::ALL {
        for a in 0..nr {
            if rel == Relation::Additivity {
                jobs.push((rel, a, a));
                continue;
            }
            for b in 0..nr {
                if rel == Relation::Commutator && b == group.system().negative_of(a) {
                    continue;
                }
                jobs.push((rel, a, b));
            }
        }
    }
    let chunks: Vec<Vec<RelationCase>> = jobs
        .par_iter()
        .map(|&(rel, a, b)| check_pair(group, rel, a, b, samples, seed))
        .collect::<Result<_, _>>()?;
    Ok(RelationReport { cases: chunks.into_iter().flatten().collect() })
}

fn check_pair(
    group: &ElementaryGroup,
    rel: Relation,
    a: usize,
    b: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<RelationCase>, GroupError> {
    let ring = group.ring();
    let sys = group.system();
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(seed, &[rel as u64, a as u64, b as u64]));
    let mut out = Vec::with_capacity(samples);
    let c_sign = if rel == Relation::WeylRootConjugation { Some(group.c_sign(a, b)?) } else { None };
    for sample in 0..samples {
        let case = match rel {
            Relation::Additivity => {
                let (t, u) = (ring.sample(&mut rng), ring.sample(&mut rng));
                let lhs = &group.x_sparse(a, &t) * &group.x_sparse(a, &u);
                let pass = lhs == group.x_sparse(a, &(&t + &u));
                RelationCase { relation: rel, alpha: a, beta: b, sample, params: vec![t, u], pass, realized_sign: None, expected_sign: None }
            }
            Relation::Commutator => {
                // Even samples use units so that the sign is always observable.
                let (t, u) = if sample % 2 == 0 {
                    (ring.sample_unit(&mut rng), ring.sample_unit(&mut rng))
                } else {
                    (ring.sample(&mut rng), ring.sample(&mut rng))
                };
                let comm = commutator(group, a, &t, b, &u);
                let (pass, realized, expected) = match sys.sum_index(a, b) {
                    Some(c) => {
                        let n = group.algebra().structure_constant(a, b).expect("sum is a root");
                        let tu = &t * &u;
                        let plus = group.x_sparse(c, &tu);
                        let minus = group.x_sparse(c, &-&tu);
                        let realized = match (comm == plus, comm == minus) {
                            (true, false) => Some(1),
                            (false, true) => Some(-1),
                            _ => None,
                        };
                        let expected = if n == 1 { &plus } else { &minus };
                        (comm == *expected, realized, Some(n))
                    }
                    None => (comm.is_identity(), None, None),
                };
                RelationCase { relation: rel, alpha: a, beta: b, sample, params: vec![t, u], pass, realized_sign: realized, expected_sign: expected }
            }
            Relation::WeylTorusConjugation => {
                let (u, t) = (ring.sample_unit(&mut rng), ring.sample_unit(&mut rng));
                let w = group.w_sparse(a, &u)?;
                let w_inv = group.w_sparse(a, &-&u)?;
                let lhs = &(&w * &group.h_sparse(b, &t)?) * &w_inv;
                let pass = lhs == group.h_sparse(sys.reflect_idx(a, b), &t)?;
                RelationCase { relation: rel, alpha: a, beta: b, sample, params: vec![u, t], pass, realized_sign: None, expected_sign: None }
            }
            Relation::WeylRootConjugation => {
                let c = c_sign.expect("computed above");
                let t = ring.sample(&mut rng);
                let one = ring.one();
                let w = group.w_sparse(a, &one)?;
                let w_inv = group.w_sparse(a, &-&one)?;
                let lhs = &(&w * &group.x_sparse(b, &t)) * &w_inv;
                let pass = lhs == group.x_sparse(sys.reflect_idx(a, b), &(&ring.from_i64(c) * &t));
                RelationCase { relation: rel, alpha: a, beta: b, sample, params: vec![t], pass, realized_sign: Some(c), expected_sign: None }
            }
            Relation::TorusRootConjugation => {
                let (t, u) = (ring.sample_unit(&mut rng), ring.sample(&mut rng));
                let h = group.h_sparse(a, &t)?;
                let h_inv = group.h_sparse(a, &t.invert()?)?;
                let lhs = &(&h * &group.x_sparse(b, &u)) * &h_inv;
                let scale = t.pow(sys.pairing_idx(b, a))?;
                let pass = lhs == group.x_sparse(b, &(&scale * &u));
                RelationCase { relation: rel, alpha: a, beta: b, sample, params: vec![t, u], pass, realized_sign: None, expected_sign: None }
            }
        };
        out.push(case);
    }
    Ok(out)
}

/// `x_α(t) x_β(u) x_α(−t) x_β(−u)`.
pub fn commutator(group: &ElementaryGroup, a: usize, t: &RingElement, b: usize, u: &RingElement) -> SparseMatrix {
    let xa = group.x_sparse(a, t);
    let xb = group.x_sparse(b, u);
    let xa_inv = group.x_sparse(a, &-t);
    let xb_inv = group.x_sparse(b, &-u);
    &(&(&xa * &xb) * &xa_inv) * &xb_inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    #[test]
    fn a2_over_f7_passes() {
        let g = ElementaryGroup::build(Family::A, 2, "fp:7".parse().unwrap()).unwrap();
        let report = check_relations(&g, 4, 1).unwrap();
        assert!(report.all_pass());
        assert!(report.commutator_signs_match());
        assert!(report.observed_commutator_signs() > 0);
    }

    #[test]
    fn non_root_sum_commutator_is_trivial() {
        let g = ElementaryGroup::build(Family::A, 3, "zmod:3^2".parse().unwrap()).unwrap();
        let (a1, a3) = (g.system().simple(1), g.system().simple(3));
        let t = g.ring().from_i64(4);
        assert!(commutator(&g, a1, &t, a3, &t).is_identity());
    }

    #[test]
    fn seeds_are_stable() {
        assert_eq!(case_seed(42, &[1, 2, 3]), case_seed(42, &[1, 2, 3]));
        assert_ne!(case_seed(42, &[1, 2, 3]), case_seed(42, &[1, 3, 2]));
    }
}
