//! Coset enumeration checked against permutation groups built by brute force.

mod common;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use proptest::prelude::*;
use twocx_core::chain::IntegerMatrix;
use twocx_core::group::{
    expand_matrix, regular_representation, todd_coxeter, Flavor, FiniteGroupTable, GroupPresentation,
    GroupRing, GroupRingElement, GroupRingMatrix, GroupWord, Letter, parse_presentation,
};

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply a, then b (right action, matching words read left to right)
    a.iter().map(|&i| b[i]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn perm_of_word(w: &GroupWord, gens: &[Perm]) -> Perm {
    let n = gens.first().map_or(1, Vec::len);
    w.letters().iter().fold((0..n).collect(), |acc, l| {
        let g = if l.inverse { invert(&gens[l.generator]) } else { gens[l.generator].clone() };
        compose(&acc, &g)
    })
}

fn closure_order(gens: &[Perm]) -> usize {
    let n = gens[0].len();
    let id: Perm = (0..n).collect();
    let mut seen = HashMap::from([(id.clone(), ())]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            for h in [g.clone(), invert(g)] {
                let q = compose(&p, &h);
                if seen.insert(q.clone(), ()).is_none() {
                    queue.push_back(q);
                }
            }
        }
    }
    seen.len()
}

fn cyclic_perm(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Left-regular permutations of the quaternion group {±1, ±i, ±j, ±k}.
fn quaternion_perms() -> Vec<Perm> {
    // elements encoded as (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
    let mul_unit = |a: usize, b: usize| -> (i32, usize) {
        match (a, b) {
            (0, u) | (u, 0) => (1, u),
            (x, y) if x == y => (-1, 0),
            (1, 2) => (1, 3),
            (2, 1) => (-1, 3),
            (2, 3) => (1, 1),
            (3, 2) => (-1, 1),
            (3, 1) => (1, 2),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    };
    let index = |s: i32, u: usize| u * 2 + usize::from(s < 0);
    let elem = |i: usize| (if i.is_multiple_of(2) { 1 } else { -1 }, i / 2);
    let right_mult = |g: usize| -> Perm {
        (0..8)
            .map(|i| {
                let (s1, u1) = elem(i);
                let (s2, u2) = elem(g);
                let (s3, u3) = mul_unit(u1, u2);
                index(s1 * s2 * s3, u3)
            })
            .collect()
    };
    vec![right_mult(index(1, 1)), right_mult(index(1, 2))]
}

fn oracle_generators(text: &str) -> Vec<Perm> {
    if text == common::S3 {
        vec![vec![1, 0, 2], vec![1, 2, 0]]
    } else if text == common::Q8 {
        quaternion_perms()
    } else {
        let n: usize = text.trim_end_matches('>').rsplit('^').next().unwrap().parse().unwrap();
        vec![cyclic_perm(n)]
    }
}

/// The enumerated table must be isomorphic to the permutation group via
/// representative words: a bijection respecting products.
fn assert_isomorphic(p: &GroupPresentation, t: &FiniteGroupTable, gens: &[Perm]) {
    for r in p.relators() {
        let id: Perm = (0..gens[0].len()).collect();
        assert_eq!(perm_of_word(r, gens), id, "oracle must satisfy relators");
    }
    let images: Vec<Perm> = t.representatives().iter().map(|w| perm_of_word(w, gens)).collect();
    let distinct: HashMap<_, _> = images.iter().map(|p| (p.clone(), ())).collect();
    assert_eq!(distinct.len(), t.order());
    for a in 0..t.order() {
        for b in 0..t.order() {
            assert_eq!(compose(&images[a], &images[b]), images[t.mul(a, b)]);
        }
    }
}

#[test]
fn enumeration_matches_permutation_oracles() {
    for (text, expected) in common::corpus() {
        let p = parse_presentation(&text).unwrap();
        let t = todd_coxeter(&p, 100).unwrap();
        let gens = oracle_generators(&text);
        assert_eq!(closure_order(&gens), expected, "{text}");
        assert_eq!(t.order(), expected, "{text}");
        t.check(&p).unwrap();
        assert_isomorphic(&p, &t, &gens);
    }
}

#[test]
fn word_evaluation_matches_oracle() {
    let (p, t) = common::group(common::S3);
    let gens = oracle_generators(common::S3);
    let xy = p.parse_word("x*y").unwrap();
    let expected = t.mul(t.generator_image(0), t.generator_image(1));
    assert_eq!(t.evaluate_word(&xy), expected);
    assert_eq!(t.evaluate_word(&GroupWord::identity()), 0);
    let images: Vec<Perm> = t.representatives().iter().map(|w| perm_of_word(w, &gens)).collect();
    assert_eq!(images[t.evaluate_word(&xy)], perm_of_word(&xy, &gens));
}

#[test]
fn larger_group_uses_sampled_associativity() {
    // Dihedral group of order 2 * 40 > 64.
    let p = parse_presentation("<r, s | r^40, s^2, s*r*s*r>").unwrap();
    let t = todd_coxeter(&p, 4096).unwrap();
    assert_eq!(t.order(), 80);
    t.check(&p).unwrap();
}

fn element_strategy(order: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((-5i64..=5, 0..order), 0..=6).prop_map(|terms| {
        GroupRingElement::from_elements(terms.into_iter().map(|(c, g)| (BigInt::from(c), g)))
    })
}

fn symbolic_strategy() -> impl Strategy<Value = GroupRingElement> {
    let word = prop::collection::vec((0usize..2, any::<bool>()), 0..5).prop_map(|ls| {
        twocx_core::group::free_reduce(ls.into_iter().map(|(g, i)| Letter::new(g, i)))
    });
    prop::collection::vec((-5i64..=5, word), 0..=6).prop_map(|terms| {
        GroupRingElement::from_words(terms.into_iter().map(|(c, w)| (BigInt::from(c), w)))
    })
}

fn s3_ring() -> GroupRing {
    GroupRing::finite(common::group(common::S3).1)
}

fn matrix_strategy(rows: usize, cols: usize, order: usize) -> impl Strategy<Value = GroupRingMatrix> {
    prop::collection::vec(element_strategy(order), rows * cols)
        .prop_map(move |e| GroupRingMatrix::from_entries(rows, cols, Flavor::Tabular, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tabular_ring_axioms(a in element_strategy(6), b in element_strategy(6), c in element_strategy(6)) {
        let ring = s3_ring();
        let ab_c = ring.mul(&ring.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ring.mul(&a, &ring.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = ring.mul(&a, &ring.add(&b, &c).unwrap()).unwrap();
        let right = ring.add(&ring.mul(&a, &b).unwrap(), &ring.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(ring.mul(&a, &b).unwrap().augmentation(), a.augmentation() * b.augmentation());
    }

    #[test]
    fn symbolic_ring_axioms(a in symbolic_strategy(), b in symbolic_strategy(), c in symbolic_strategy()) {
        let ring = GroupRing::Free { rank: 2 };
        let ab_c = ring.mul(&ring.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ring.mul(&a, &ring.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = ring.mul(&ring.add(&a, &b).unwrap(), &c).unwrap();
        let right = ring.add(&ring.mul(&a, &c).unwrap(), &ring.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(ring.mul(&a, &b).unwrap().augmentation(), a.augmentation() * b.augmentation());
    }

    #[test]
    fn regular_representation_is_multiplicative(a in element_strategy(6), b in element_strategy(6)) {
        let ring = s3_ring();
        let t = ring.table().unwrap();
        let ab = ring.mul(&a, &b).unwrap();
        prop_assert_eq!(
            regular_representation(&ab, t),
            regular_representation(&a, t).mul(&regular_representation(&b, t))
        );
    }

    #[test]
    fn expansion_is_functorial(
        a in matrix_strategy(2, 3, 6),
        b in matrix_strategy(3, 2, 6),
        c in matrix_strategy(3, 2, 6),
    ) {
        let ring = s3_ring();
        let t = ring.table().unwrap();
        let ab = GroupRingMatrix::compose(&ring, &a, &b).unwrap();
        prop_assert_eq!(expand_matrix(&ab, t), expand_matrix(&a, t).mul(&expand_matrix(&b, t)));
        let sum = b.add(&c).unwrap();
        prop_assert_eq!(expand_matrix(&sum, t), expand_matrix(&b, t).add(&expand_matrix(&c, t)));
    }

    #[test]
    fn expansion_is_functorial_over_cyclic(
        n in 2usize..7,
        seed in prop::collection::vec((-5i64..=5, 0usize..6), 18),
    ) {
        let ring = GroupRing::finite(common::group(&format!("<x | x^{n}>")).1);
        let t = ring.table().unwrap();
        let entry = |k: usize| GroupRingElement::from_elements(
            seed[3 * k..3 * k + 3].iter().map(|&(c, g)| (BigInt::from(c), g % n)),
        );
        let a = GroupRingMatrix::from_entries(1, 2, Flavor::Tabular, vec![entry(0), entry(1)]).unwrap();
        let b = GroupRingMatrix::from_entries(2, 2, Flavor::Tabular, (2..6).map(entry).collect()).unwrap();
        let ab = GroupRingMatrix::compose(&ring, &a, &b).unwrap();
        prop_assert_eq!(expand_matrix(&ab, t), expand_matrix(&a, t).mul(&expand_matrix(&b, t)));
    }
}

#[test]
fn identity_expands_to_identity() {
    let ring = s3_ring();
    let t = ring.table().unwrap();
    assert_eq!(expand_matrix(&GroupRingMatrix::identity(2, &ring), t), IntegerMatrix::identity(12));
}
