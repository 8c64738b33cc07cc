//! Cartan blocks of Weyl elements and normalization of perturbed Weyl images
//! back to the standard forms by a basis change congruent to the identity.

use super::VerifyError;
use crate::matrix::Matrix;
use crate::rings::{RingDescriptor, RingElement};
use crate::roots::{Family, RootSystem};

/// Trailing `l × l` block of a matrix that preserves the split into root
/// lines and Cartan lines.
pub fn cartan_block(w: &Matrix, rank: usize) -> Result<Matrix, VerifyError> {
    let n = w.rows();
    let split = n - rank;
    for i in 0..n {
        for j in 0..n {
            if (i < split) != (j < split) && !w[(i, j)].is_zero() {
                return Err(VerifyError::NotBlockSplit);
            }
        }
    }
    Ok(w.submatrix(split..n, split..n))
}

/// `w̃_i = I − e_i a_iᵀ`, where `a_i` is row `i` of the Cartan matrix.
pub fn standard_cartan_blocks(system: &RootSystem, ring: RingDescriptor) -> Vec<Matrix> {
    let l = system.rank();
    let c = system.cartan();
    (0..l)
        .map(|i| Matrix::from_fn(ring, l, l, |r, s| ring.from_i64(i64::from(r == s) - if r == i { c[(i, s)] } else { 0 })))
        .collect()
}

/// One node of the normalization pipeline: the simple root it fixes, the
/// already-normalized neighbour it is glued to, and a label for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineStep {
    pub node: usize,
    pub parent: Option<usize>,
    pub label: &'static str,
}

/// Order in which simple roots are normalized: a seed block first, then the
/// chain grown away from it, then the terminal nodes. Nodes are 0-based.
pub fn pipeline(system: &RootSystem) -> Vec<PipelineStep> {
    let l = system.rank();
    let (seed, chain, terminal): (Vec<usize>, Vec<usize>, Vec<usize>) = match system.family() {
        Family::A if l == 2 => (vec![0], vec![], vec![1]),
        Family::A => (vec![0, 1], (2..l - 1).collect(), vec![l - 1]),
        // Branch node first, then its three neighbours.
        Family::D => (vec![l - 3, l - 4, l - 2, l - 1], (1..l - 4).rev().collect(), if l > 4 { vec![0] } else { vec![] }),
        Family::E => (vec![3, 1, 2, 4], (5..l - 1).collect(), vec![0, l - 1]),
        _ => unreachable!("only simply-laced systems are built"),
    };
    let mut done: Vec<usize> = Vec::new();
    let mut steps = Vec::new();
    let stages = [(seed, "seed block"), (chain, "chain extension"), (terminal, "terminal node")];
    for (nodes, label) in stages {
        for node in nodes {
            let parent = done.iter().copied().find(|&p| system.adjacent(p, node));
            assert!(parent.is_some() || done.is_empty(), "pipeline node {node} is disconnected");
            steps.push(PipelineStep { node, parent, label });
            done.push(node);
        }
    }
    steps
}

fn check_preconditions(system: &RootSystem, candidates: &[Matrix], standard: &[Matrix]) -> Result<(), VerifyError> {
    let l = system.rank();
    let fail = |condition: &str, index: String| VerifyError::PreconditionFailed { condition: condition.into(), index };
    if candidates.len() != l || candidates.iter().any(|c| c.rows() != l || c.cols() != l) {
        return Err(fail("shape", format!("expected {l} matrices of size {l}x{l}")));
    }
    for (i, c) in candidates.iter().enumerate() {
        if !(c * c).is_identity() {
            return Err(fail("involution", format!("α{}", i + 1)));
        }
        if !(c - &standard[i]).in_radical()? {
            return Err(fail("congruence to the standard block", format!("α{}", i + 1)));
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            let (ci, cj) = (&candidates[i], &candidates[j]);
            let ok = if system.adjacent(i, j) {
                let p = ci * cj;
                (&(&p * &p) * &p).is_identity()
            } else {
                ci * cj == cj * ci
            };
            if !ok {
                let cond = if system.adjacent(i, j) { "braid relation" } else { "commutation" };
                return Err(fail(cond, format!("α{}, α{}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Finds `g ∈ GL(l, R, J)` with `g⁻¹ c_i g = w̃_i` for every simple root.
///
/// Each `I − c_i` has rank one, `u_i φ_iᵀ` with `u_i` normalized at
/// coordinate `i`. Columns of `g` are `μ_i u_i`, and the scalars `μ_i` are
/// propagated along the Dynkin tree by `μ_j φ_i(u_j) = −μ_i` for adjacent
/// nodes.
pub fn normalize_weyl_images(system: &RootSystem, candidates: &[Matrix]) -> Result<Matrix, VerifyError> {
    let ring = candidates.first().map(Matrix::ring).ok_or_else(|| VerifyError::PreconditionFailed {
        condition: "shape".into(),
        index: "no candidates".into(),
    })?;
    if !ring.is_local() {
        return Err(VerifyError::NotLocal(ring.to_string()));
    }
    let l = system.rank();
    let standard = standard_cartan_blocks(system, ring);
    check_preconditions(system, candidates, &standard)?;
    let id = Matrix::identity(ring, l);
    let mut u: Vec<Option<Vec<RingElement>>> = vec![None; l];
    let mut phi: Vec<Option<Vec<RingElement>>> = vec![None; l];
    let mut mu: Vec<Option<RingElement>> = vec![None; l];
    for step in pipeline(system) {
        let i = step.node;
        let m = &id - &candidates[i];
        let pivot_inv = m[(i, i)].invert().map_err(|_| VerifyError::PivotNotUnit { step: format!("{} at α{}", step.label, i + 1) })?;
        let ui: Vec<RingElement> = m.column(i).iter().map(|x| x * &pivot_inv).collect();
        let phii: Vec<RingElement> = m.row(i).to_vec();
        for r in 0..l {
            for s in 0..l {
                if m[(r, s)] != &ui[r] * &phii[s] {
                    return Err(VerifyError::PreconditionFailed { condition: "rank-one reflection".into(), index: format!("α{}", i + 1) });
                }
            }
        }
        let mui = match step.parent {
            None => ring.one(),
            Some(p) => {
                // φ_p(u_i) must be a unit: μ_i = −μ_p / φ_p(u_i).
                let phi_p = phi[p].as_ref().expect("parent processed");
                let pairing = dot(phi_p, &ui);
                let inv = pairing.invert().map_err(|_| VerifyError::PivotNotUnit { step: format!("{} gluing α{} to α{}", step.label, i + 1, p + 1) })?;
                -(mu[p].as_ref().expect("parent processed") * &inv)
            }
        };
        u[i] = Some(ui);
        phi[i] = Some(phii);
        mu[i] = Some(mui);
    }
    let g = Matrix::from_fn(ring, l, l, |r, s| &u[s].as_ref().expect("all nodes processed")[r] * mu[s].as_ref().expect("all nodes processed"));
    if !(&g - &id).in_radical()? {
        return Err(VerifyError::StructuralFailure("basis change is not congruent to the identity".into()));
    }
    let g_inv = g.inverse()?;
    for (i, c) in candidates.iter().enumerate() {
        if &(&g_inv * c) * &g != standard[i] {
            return Err(VerifyError::ConstraintViolated(format!("normalized image of α{}", i + 1)));
        }
    }
    Ok(g)
}

fn dot(a: &[RingElement], b: &[RingElement]) -> RingElement {
    a.iter().zip(b).fold(a[0].ring().zero(), |acc, (x, y)| &acc + &(x * y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementaryGroup;
    use crate::verify::involution::random_congruence_element;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(s: &str) -> RingDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn a2_blocks_of_weyl_elements() {
        let g = ElementaryGroup::build(Family::A, 2, ring("int")).unwrap();
        let one = g.ring().one();
        let w1 = cartan_block(&g.w_elem(0, &one).unwrap().matrix, 2).unwrap();
        let w2 = cartan_block(&g.w_elem(2, &one).unwrap().matrix, 2).unwrap();
        assert_eq!(w1, Matrix::from_rows(g.ring(), &[vec![-1, 1], vec![0, 1]]));
        assert_eq!(w2, Matrix::from_rows(g.ring(), &[vec![1, 0], vec![1, -1]]));
    }

    #[test]
    fn standard_blocks_match_weyl_elements() {
        for (f, l) in [(Family::A, 4), (Family::D, 4), (Family::D, 5), (Family::E, 6)] {
            let g = ElementaryGroup::build(f, l, ring("fp:7")).unwrap();
            let std = standard_cartan_blocks(g.system(), g.ring());
            for i in 1..=l {
                let w = g.w_elem(g.system().simple(i), &g.ring().one()).unwrap().matrix;
                assert_eq!(cartan_block(&w, l).unwrap(), std[i - 1], "{f}{l} α{i}");
            }
        }
    }

    #[test]
    fn mixed_blocks_rejected() {
        let g = ElementaryGroup::build(Family::A, 2, ring("int")).unwrap();
        let x = g.x_elem(0, &g.ring().one()).unwrap().matrix;
        assert_eq!(cartan_block(&x, 2), Err(VerifyError::NotBlockSplit));
    }

    #[test]
    fn pipeline_covers_every_node_once() {
        for (f, l) in [(Family::A, 2), (Family::A, 3), (Family::A, 6), (Family::D, 4), (Family::D, 7), (Family::E, 6), (Family::E, 7), (Family::E, 8)] {
            let s = RootSystem::build(f, l).unwrap();
            let mut nodes: Vec<usize> = pipeline(&s).iter().map(|p| p.node).collect();
            nodes.sort_unstable();
            assert_eq!(nodes, (0..l).collect::<Vec<_>>(), "{f}{l}");
        }
    }

    #[test]
    fn standard_inputs_give_identity() {
        for (f, l) in [(Family::A, 2), (Family::D, 4), (Family::E, 6)] {
            let s = RootSystem::build(f, l).unwrap();
            let r = ring("zmod:3^2");
            let g = normalize_weyl_images(&s, &standard_cartan_blocks(&s, r)).unwrap();
            assert!(g.is_identity());
        }
    }

    #[test]
    fn conjugated_inputs_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (f, l) in [(Family::A, 3), (Family::D, 4), (Family::E, 6)] {
            let s = RootSystem::build(f, l).unwrap();
            let r = ring("zmod:3^2");
            let std = standard_cartan_blocks(&s, r);
            for _ in 0..5 {
                let g0 = random_congruence_element(r, l, &mut rng).unwrap();
                let g0_inv = g0.inverse().unwrap();
                let cands: Vec<Matrix> = std.iter().map(|w| &(&g0 * w) * &g0_inv).collect();
                let g = normalize_weyl_images(&s, &cands).unwrap();
                let gi = g.inverse().unwrap();
                for (c, w) in cands.iter().zip(&std) {
                    assert_eq!(&(&gi * c) * &g, *w);
                }
            }
        }
    }

    #[test]
    fn non_involution_rejected() {
        let s = RootSystem::build(Family::A, 2).unwrap();
        let r = ring("zmod:3^2");
        let mut cands = standard_cartan_blocks(&s, r);
        cands[1] = Matrix::identity(r, 2);
        cands[1][(0, 1)] = r.from_i64(3);
        let err = normalize_weyl_images(&s, &cands).unwrap_err();
        assert!(matches!(err, VerifyError::PreconditionFailed { ref condition, .. } if condition == "involution"), "{err}");
    }
}
