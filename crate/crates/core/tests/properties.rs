//! Randomized invariants of rings, root systems, the Lie algebra, the group
//! and the verification routines.

use adjoint_chevalley::chevalley::{BasisIndex, ChevalleyAlgebra};
use adjoint_chevalley::group::{ElementaryGroup, Generator, Token};
use adjoint_chevalley::rings::{RingDescriptor, RingElement};
use adjoint_chevalley::roots::{Family, RootSystem};
use adjoint_chevalley::verify::involution::{random_congruence_element, split_involution};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RINGS: [&str; 9] = ["int", "rat", "fp:7", "fp:101", "zmod:3^2", "zmod:5^3", "tpoly:3:2", "tpoly:5:4", "zloc:3"];
const LOCAL: [&str; 6] = ["fp:7", "zmod:3^2", "zmod:5^3", "tpoly:3:2", "tpoly:5:4", "zloc:3"];

fn ring(s: &str) -> RingDescriptor {
    s.parse().unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample3(r: RingDescriptor, seed: u64) -> (RingElement, RingElement, RingElement) {
    let mut g = rng(seed);
    (r.sample(&mut g), r.sample(&mut g), r.sample(&mut g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let (a, b, c) = sample3(r, seed);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, r.zero());
        prop_assert_eq!(&a * &r.one(), a.clone());
    }

    #[test]
    fn radical_is_an_ideal(idx in 0..LOCAL.len(), seed in any::<u64>()) {
        let r = ring(LOCAL[idx]);
        let mut g = rng(seed);
        let (x, y, s) = (r.sample_radical(&mut g).unwrap(), r.sample_radical(&mut g).unwrap(), r.sample(&mut g));
        prop_assert!((&x + &y).in_radical().unwrap());
        prop_assert!((&s * &x).in_radical().unwrap());
        prop_assert_eq!(x.is_unit(), !x.in_radical().unwrap());
    }

    #[test]
    fn residue_is_a_homomorphism(idx in 0..LOCAL.len(), seed in any::<u64>()) {
        let r = ring(LOCAL[idx]);
        let (a, b, _) = sample3(r, seed);
        let (ra, rb) = (a.residue().unwrap(), b.residue().unwrap());
        prop_assert_eq!((&a + &b).residue().unwrap(), &ra + &rb);
        prop_assert_eq!((&a * &b).residue().unwrap(), &ra * &rb);
        prop_assert!(r.one().residue().unwrap().is_one());
        prop_assert_eq!(a.is_unit(), !ra.is_zero());
    }

    #[test]
    fn double_inverse(idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let u = r.sample_unit(&mut rng(seed));
        let inv = u.invert().unwrap();
        prop_assert!((&u * &inv).is_one());
        prop_assert_eq!(inv.invert().unwrap(), u);
    }

    #[test]
    fn element_serialization_round_trips(idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let a = r.sample(&mut rng(seed));
        prop_assert_eq!(r.parse_element(&a.to_string()).unwrap(), a);
    }
}

fn systems() -> Vec<RootSystem> {
    [(Family::A, 2), (Family::A, 4), (Family::D, 4), (Family::D, 5), (Family::E, 6), (Family::E, 7), (Family::E, 8)]
        .iter()
        .map(|&(f, l)| RootSystem::build(f, l).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reflections_preserve_roots_and_pairings(sys_idx in 0..7usize, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let sys = &systems()[sys_idx];
        let nr = sys.num_roots();
        let (g, b1, b2) = (a.index(nr), b.index(nr), c.index(nr));
        let (r1, r2) = (sys.reflect_idx(g, b1), sys.reflect_idx(g, b2));
        prop_assert_eq!(sys.pairing_idx(r1, r2), sys.pairing_idx(b1, b2));
        prop_assert_eq!(sys.reflect_idx(g, r1), b1);
        let p = sys.pairing_idx(b1, b2);
        let in_range = if b1 == b2 { p == 2 } else if b1 == sys.negative_of(b2) { p == -2 } else { (-1..=1).contains(&p) };
        prop_assert!(in_range);
    }

    #[test]
    fn weyl_words_connect_sampled_roots(sys_idx in 4..7usize, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let sys = &systems()[sys_idx];
        let (s, t) = (a.index(sys.num_roots()), b.index(sys.num_roots()));
        let word = sys.weyl_word_idx(s, t);
        prop_assert_eq!(sys.apply_word(&word, s), t);
    }

    #[test]
    fn jacobi_on_random_triples(sys_idx in 0..7usize, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let alg = ChevalleyAlgebra::new(systems()[sys_idx].clone()).unwrap();
        let n = alg.dim();
        let idx = |i: prop::sample::Index| BasisIndex::from_position(i.index(n), alg.system());
        prop_assert!(jacobi_holds(&alg, idx(a), idx(b), idx(c)));
    }
}

fn bracket_vec(alg: &ChevalleyAlgebra, x: &[i64], y: BasisIndex) -> Vec<i64> {
    let n = alg.dim();
    let mut out = vec![0; n];
    for (i, &c) in x.iter().enumerate() {
        if c != 0 {
            for (k, v) in alg.bracket(BasisIndex::from_position(i, alg.system()), y) {
                out[k.position(alg.system())] += c * v;
            }
        }
    }
    out
}

fn jacobi_holds(alg: &ChevalleyAlgebra, a: BasisIndex, b: BasisIndex, c: BasisIndex) -> bool {
    let n = alg.dim();
    let unit = |x: BasisIndex| {
        let mut v = vec![0; n];
        v[x.position(alg.system())] = 1;
        v
    };
    // [[a,b],c] + [[b,c],a] + [[c,a],b]
    let t1 = bracket_vec(alg, &bracket_vec(alg, &unit(a), b), c);
    let t2 = bracket_vec(alg, &bracket_vec(alg, &unit(b), c), a);
    let t3 = bracket_vec(alg, &bracket_vec(alg, &unit(c), a), b);
    (0..n).all(|i| t1[i] + t2[i] + t3[i] == 0)
}

#[test]
fn jacobi_exhaustive_small_ranks() {
    for (f, l) in [(Family::A, 2), (Family::A, 3), (Family::D, 4)] {
        let alg = ChevalleyAlgebra::new(RootSystem::build(f, l).unwrap()).unwrap();
        let n = alg.dim();
        let b = |i| BasisIndex::from_position(i, alg.system());
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    assert!(jacobi_holds(&alg, b(i), b(j), b(k)), "{f}{l} {i} {j} {k}");
                }
            }
        }
    }
}

#[test]
fn weyl_transitivity_exhaustive_small_ranks() {
    for (f, l) in [(Family::A, 2), (Family::A, 3), (Family::D, 4)] {
        let sys = RootSystem::build(f, l).unwrap();
        for s in 0..sys.num_roots() {
            for t in 0..sys.num_roots() {
                assert_eq!(sys.apply_word(&sys.weyl_word_idx(s, t), s), t);
            }
        }
    }
}

fn random_word(group: &ElementaryGroup, seed: u64, len: usize) -> Vec<Token> {
    let mut g = rng(seed);
    let nr = group.system().num_roots();
    (0..len)
        .map(|i| {
            let root = (seed as usize).wrapping_add(i * 7) % nr;
            let (generator, param) = match i % 3 {
                0 => (Generator::X, group.ring().sample(&mut g)),
                1 => (Generator::W, group.ring().sample_unit(&mut g)),
                _ => (Generator::H, group.ring().sample_unit(&mut g)),
            };
            Token { generator, root, param }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_elements_have_determinant_one(idx in 0..LOCAL.len(), seed in any::<u64>()) {
        let g = ElementaryGroup::build(Family::A, 3, ring(LOCAL[idx])).unwrap();
        let elem = g.evaluate_word(&random_word(&g, seed, 4)).unwrap();
        prop_assert!(elem.matrix.determinant().unwrap().is_one());
    }

    #[test]
    fn generators_commute_with_residue(idx in 0..LOCAL.len(), seed in any::<u64>()) {
        let g = ElementaryGroup::build(Family::A, 2, ring(LOCAL[idx])).unwrap();
        let k = g.residue_group().unwrap();
        for t in random_word(&g, seed, 3) {
            let reduced = Token { generator: t.generator, root: t.root, param: t.param.residue().unwrap() };
            prop_assert_eq!(g.token_elem(&t).unwrap().matrix.residue().unwrap(), k.token_elem(&reduced).unwrap().matrix);
        }
    }

    #[test]
    fn weyl_root_sign_is_parameter_independent(seed in any::<u64>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let g = ElementaryGroup::build(Family::D, 4, ring("zmod:3^2")).unwrap();
        let nr = g.system().num_roots();
        let (alpha, beta) = (a.index(nr), b.index(nr));
        let c = g.c_sign(alpha, beta).unwrap();
        let one = g.ring().one();
        let t = g.ring().sample(&mut rng(seed));
        let w = g.w_sparse(alpha, &one).unwrap();
        let w_inv = g.w_sparse(alpha, &-&one).unwrap();
        let lhs = &(&w * &g.x_sparse(beta, &t)) * &w_inv;
        prop_assert_eq!(lhs, g.x_sparse(g.system().reflect_idx(alpha, beta), &(&g.ring().from_i64(c) * &t)));
    }

    #[test]
    fn split_ranks_are_conjugation_invariant(idx in 0..LOCAL.len(), seed in any::<u64>(), i in 1..=2usize) {
        let r = ring(LOCAL[idx]);
        let g = ElementaryGroup::build(Family::A, 2, r).unwrap();
        let a = g.h_elem(g.system().simple(i), &-&r.one()).unwrap().matrix;
        let c = random_congruence_element(r, 8, &mut rng(seed)).unwrap();
        let conj = &(&c * &a) * &c.inverse().unwrap();
        let s0 = split_involution(&a).unwrap();
        let s1 = split_involution(&conj).unwrap();
        prop_assert_eq!(s0.ranks(), s1.ranks());
        prop_assert_eq!(s1.reassemble().unwrap(), conj);
    }
}

#[test]
fn weyl_square_is_torus_minus_one() {
    for (f, l) in [(Family::A, 3), (Family::D, 4)] {
        let g = ElementaryGroup::build(f, l, ring("tpoly:3:2")).unwrap();
        let one = g.ring().one();
        for r in 0..g.system().num_roots() {
            let w = g.w_sparse(r, &one).unwrap();
            assert_eq!(&w * &w, g.h_sparse(r, &-&one).unwrap(), "{f}{l} root {r}");
        }
    }
}

#[test]
fn sum_of_two_units_sampled() {
    for r in LOCAL.map(ring) {
        let mut g = rng(3);
        for _ in 0..50 {
            let x = r.sample(&mut g);
            let u = r.sample_unit(&mut g);
            // Some unit v near u leaves x − v a unit as well.
            let split = [u.clone(), &u + &r.one(), &u - &r.one()].into_iter().find(|v| v.is_unit() && (&x - v).is_unit());
            assert!(split.is_some(), "{x} in {r}");
        }
    }
}
