//! The realization pipeline: stabilization, A′, and the realizing 3-complex.

mod common;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twocx_core::chain::{
    homology, homology_table, search_equivalence, verify_complex, verify_equivalence,
    AlgebraicTwoComplex, ChainComplex, EquivalenceCertificate, Homology,
};
use twocx_core::group::{GroupRingElement, GroupRingMatrix};
use twocx_core::realization::{
    build_a_prime, build_realizing_complex, extend_by_identity, realize, verify_realization,
    wedge_spheres, RealizationError, StabilizationPlan,
};

fn algebraic(text: &str) -> AlgebraicTwoComplex {
    AlgebraicTwoComplex::new(common::cayley(text)).unwrap()
}

fn plan_for(a: AlgebraicTwoComplex, y: AlgebraicTwoComplex, q: usize) -> StabilizationPlan {
    StabilizationPlan::new(a, y, q).unwrap()
}

/// Adds a random nonzero multiple of a random group element to one entry of
/// one component of the certificate.
fn mutate(e: &EquivalenceCertificate, rng: &mut StdRng) -> EquivalenceCertificate {
    let mut e = e.clone();
    let order = e.source().ring().table().unwrap().order();
    loop {
        let pick = rng.gen_range(0..4);
        let list: &mut Vec<GroupRingMatrix> = match pick {
            0 => &mut e.forward.maps,
            1 => &mut e.backward.maps,
            2 => &mut e.homotopy_source,
            _ => &mut e.homotopy_target,
        };
        let k = rng.gen_range(0..list.len());
        let m = &mut list[k];
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        let (r, c) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
        let mut coefficient = rng.gen_range(-3i64..=3);
        if coefficient == 0 {
            coefficient = 1;
        }
        let delta = GroupRingElement::from_elements([(BigInt::from(coefficient), rng.gen_range(0..order))]);
        let value = m.get(r, c).add(&delta).unwrap();
        m.set(r, c, value);
        return e;
    }
}

#[test]
fn wedging_spheres_adds_free_second_homology() {
    for (text, order) in common::corpus() {
        let a = algebraic(&text);
        let before = homology(a.complex(), 2).unwrap().rank;
        let w = wedge_spheres(&a, 3);
        assert_eq!(homology(w.complex(), 2).unwrap().rank, before + 3 * order);
        assert!(AlgebraicTwoComplex::new(w.into_complex()).is_ok());
    }
}

#[test]
fn a_prime_certificates_verify_and_mutations_are_rejected() {
    let mut rng = StdRng::seed_from_u64(7);
    for (text, _) in common::corpus() {
        let a = algebraic(&text);
        let h = homology_table(a.complex()).unwrap();
        for extra in 0..=5 {
            let (a_prime, cert) = build_a_prime(&a, extra);
            assert_eq!(a_prime.top(), 3);
            assert!(verify_complex(&a_prime).unwrap().passed());
            assert!(verify_equivalence(&cert).unwrap().passed(), "{text} extra {extra}");
            let hp = homology_table(&a_prime).unwrap();
            assert_eq!(&hp[..3], &h[..]);
            assert!(hp[3].is_zero());
        }
        let (_, cert) = build_a_prime(&a, 2);
        for _ in 0..20 {
            assert!(!verify_equivalence(&mutate(&cert, &mut rng)).unwrap().passed(), "{text}");
        }
    }
}

#[test]
fn extension_by_identity_verifies() {
    let a = algebraic("<x | x^3>");
    let e = EquivalenceCertificate::identity(a.complex());
    for q in 0..3 {
        let ext = extend_by_identity(&e, q).unwrap();
        assert_eq!(ext.source().rank(2), 1 + q);
        assert!(verify_equivalence(&ext).unwrap().passed());
    }
}

#[test]
fn identity_round_trip_on_corpus() {
    for (text, _) in common::corpus() {
        let a = algebraic(&text);
        for q in [0, 1] {
            let plan = plan_for(a.clone(), a.clone(), q);
            let stable = EquivalenceCertificate::identity(plan.stable_source().complex());
            let r = realize(plan, &stable).unwrap();
            assert!(r.report.passed(), "{text}: {:?}", r.report.first());
            assert!(verify_realization(&r.a_prime, &r.realized, &r.extended).unwrap().passed());
            assert!(r.realized.verify_attaching_vectors().unwrap().passed());
            assert!(r.realized.top_homology_vanishes().unwrap());
            let hy = homology_table(&r.realized.complex).unwrap();
            let ha = homology_table(a.complex()).unwrap();
            assert_eq!(&hy[..3], &ha[..]);
            assert_eq!(hy[3], Homology::free(0));
        }
    }
}

#[test]
fn realizes_a_complex_with_flipped_boundary() {
    let c = common::cayley("<x | x^3>");
    let mut b = c.boundaries().to_vec();
    b[1] = b[1].neg();
    let flipped = ChainComplex::new(c.ring().clone(), c.ranks().to_vec(), b, c.augmentation().map(<[_]>::to_vec)).unwrap();
    let a = AlgebraicTwoComplex::new(flipped).unwrap();
    let y = AlgebraicTwoComplex::new(c).unwrap();
    let plan = plan_for(a.clone(), y, 0);
    let stable = search_equivalence(plan.stable_source().complex(), plan.stable_presentation_complex().complex())
        .unwrap()
        .expect("equivalent after stabilization");
    let r = realize(plan, &stable).unwrap();
    assert!(r.report.passed());
    assert_eq!(
        homology_table(&r.realized.complex).unwrap()[..3],
        homology_table(a.complex()).unwrap()[..]
    );
}

#[test]
fn corrupted_certificate_is_refused() {
    let a = algebraic("<x | x^2>");
    let plan = plan_for(a.clone(), a, 0);
    let stable = EquivalenceCertificate::identity(plan.stable_source().complex());
    let extended = extend_by_identity(&stable, 0).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    let bad = mutate(&extended, &mut rng);
    assert!(matches!(
        build_realizing_complex(&plan, &bad),
        Err(RealizationError::CertificateRejected(_))
    ));
    let other = EquivalenceCertificate::identity(&common::cayley("<x | x^2>"));
    assert!(matches!(build_realizing_complex(&plan, &other), Err(RealizationError::Mismatch(_))));
}

#[test]
fn realization_check_catches_a_changed_top_boundary() {
    let a = algebraic(common::S3);
    let plan = plan_for(a.clone(), a, 0);
    let stable = EquivalenceCertificate::identity(plan.stable_source().complex());
    let r = realize(plan, &stable).unwrap();
    let mut realized = r.realized.clone();
    let mut b = realized.complex.boundaries().to_vec();
    let top = &mut b[2];
    let value = top.get(0, 0).add(&GroupRingElement::element(1)).unwrap();
    top.set(0, 0, value);
    realized.complex = ChainComplex::new(
        realized.complex.ring().clone(),
        realized.complex.ranks().to_vec(),
        b,
        realized.complex.augmentation().map(<[_]>::to_vec),
    )
    .unwrap();
    let report = verify_realization(&r.a_prime, &realized, &r.extended).unwrap();
    assert!(!report.passed());
    assert_eq!(report.first().unwrap().degree, 3);
}
