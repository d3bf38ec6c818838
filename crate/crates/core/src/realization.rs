//! Realizing an algebraic 2-complex, up to chain homotopy equivalence, by the
//! chain complex of a 3-complex built from a presentation's Cayley complex.
//!
//! Given `A = S_2 -> S_1 -> S_0` and the Cayley complex `C_2 -> C_1 -> C_0`,
//! set `C = S_2 ⊕ C_1 ⊕ S_0` and `S = C_2 ⊕ S_1 ⊕ C_0`. An equivalence between
//! `S_2 ⊕ S -> S_1 -> S_0` and `C_2 ⊕ C -> C_1 -> C_0` is an input. Extended by
//! the identity on a free `Q`, its degree-2 component `φ_2` gives the new top
//! boundary `φ_2 ∘ ι` of
//!
//! ```text
//! S ⊕ Q --φ_2 ι--> C_2 ⊕ (C ⊕ Q) --∂_2 ⊕ 0--> C_1 --∂_1--> C_0
//! ```
//!
//! where `ι` includes `S ⊕ Q` as the second summand of `S_2 ⊕ (S ⊕ Q)`.

use std::ops::Range;

use thiserror::Error;

use crate::chain::{
    homology, rank, verify_complex, verify_equivalence, AlgebraicTwoComplex, ChainComplex,
    ChainError, ChainMapCert, EquivalenceCertificate, Report, TwoComplexError, Violation,
};
use crate::group::{GroupRing, GroupRingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    NotTwoComplex(#[from] TwoComplexError),
    #[error("complexes live over different group rings")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("equivalence certificate rejected: {0}")]
    CertificateRejected(Violation),
    #[error("top boundary has rank {rank} after expansion, expected {expected}")]
    NotInjective { rank: usize, expected: usize },
    #[error("boundaries of the realized complex do not compose to zero: {0}")]
    NotAComplex(Violation),
}

/// Ranks of the stabilizing modules `C`, `S` and the chosen `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationPlan {
    source: AlgebraicTwoComplex,
    presentation_complex: AlgebraicTwoComplex,
    rank_c: usize,
    rank_s: usize,
    rank_q: usize,
}

impl StabilizationPlan {
    pub fn new(
        source: AlgebraicTwoComplex,
        presentation_complex: AlgebraicTwoComplex,
        rank_q: usize,
    ) -> Result<Self, RealizationError> {
        let (a, y) = (source.complex(), presentation_complex.complex());
        if a.ring() != y.ring() {
            return Err(RealizationError::RingMismatch);
        }
        let rank_c = a.rank(2) + y.rank(1) + a.rank(0);
        let rank_s = y.rank(2) + a.rank(1) + y.rank(0);
        Ok(StabilizationPlan {
            source,
            presentation_complex,
            rank_c,
            rank_s,
            rank_q,
        })
    }

    pub fn source(&self) -> &AlgebraicTwoComplex {
        &self.source
    }

    pub fn presentation_complex(&self) -> &AlgebraicTwoComplex {
        &self.presentation_complex
    }

    /// Rank of `C = S_2 ⊕ C_1 ⊕ S_0`.
    pub fn rank_c(&self) -> usize {
        self.rank_c
    }

    /// Rank of `S = C_2 ⊕ S_1 ⊕ C_0`.
    pub fn rank_s(&self) -> usize {
        self.rank_s
    }

    pub fn rank_q(&self) -> usize {
        self.rank_q
    }

    /// `S_2 ⊕ S -> S_1 -> S_0`.
    pub fn stable_source(&self) -> AlgebraicTwoComplex {
        wedge_spheres(&self.source, self.rank_s)
    }

    /// `C_2 ⊕ C -> C_1 -> C_0`.
    pub fn stable_presentation_complex(&self) -> AlgebraicTwoComplex {
        wedge_spheres(&self.presentation_complex, self.rank_c)
    }

    /// `S_2 ⊕ (S ⊕ Q) -> S_1 -> S_0`.
    pub fn stabilized_source(&self) -> AlgebraicTwoComplex {
        wedge_spheres(&self.source, self.rank_s + self.rank_q)
    }

    /// `C_2 ⊕ (C ⊕ Q) -> C_1 -> C_0`, the chain complex of the Cayley complex
    /// wedged with `rank(C ⊕ Q)` spheres.
    pub fn stabilized_presentation_complex(&self) -> AlgebraicTwoComplex {
        wedge_spheres(&self.presentation_complex, self.rank_c + self.rank_q)
    }
}

fn pad_top(c: &ChainComplex, n: usize) -> ChainComplex {
    let top = c.top();
    let mut ranks = c.ranks().to_vec();
    ranks[top] += n;
    let mut boundaries = c.boundaries().to_vec();
    let last = &boundaries[top - 1];
    boundaries[top - 1] = last.embed(last.rows(), last.cols() + n, 0, 0);
    ChainComplex::new(c.ring().clone(), ranks, boundaries, c.augmentation().map(<[_]>::to_vec))
        .expect("padding preserves shapes")
}

/// Adds `n` free summands to the top module, mapped to zero.
pub fn wedge_spheres(c: &AlgebraicTwoComplex, n: usize) -> AlgebraicTwoComplex {
    // Homology in degrees 0 and 1 is untouched, so the result is still an
    // algebraic 2-complex.
    AlgebraicTwoComplex::from_verified(pad_top(c.complex(), n))
}

/// Inclusion of a rank-`m` module as the last summand of a rank-`offset + m`
/// module.
fn inclusion(ring: &GroupRing, offset: usize, m: usize) -> GroupRingMatrix {
    GroupRingMatrix::identity(m, ring).embed(offset + m, m, offset, 0)
}

/// `A′ = S ⊕ Q --ι--> S_2 ⊕ (S ⊕ Q) --d_2 ⊕ 0--> S_1 --d_1--> S_0` for
/// `extra_rank = rank(S ⊕ Q)`, with a certificate for the inclusion `A ↪ A′`.
///
/// The certificate's homotopy on `A′` is `-(projection onto S ⊕ Q)` in degree
/// 2 and zero elsewhere.
pub fn build_a_prime(a: &AlgebraicTwoComplex, extra_rank: usize) -> (ChainComplex, EquivalenceCertificate) {
    let base = a.complex();
    let ring = base.ring().clone();
    let flavor = ring.flavor();
    let s2 = base.rank(2);
    let m = extra_rank;

    let padded = pad_top(base, m);
    let mut ranks = padded.ranks().to_vec();
    ranks.push(m);
    let mut boundaries = padded.boundaries().to_vec();
    boundaries.push(inclusion(&ring, s2, m));
    let a_prime = ChainComplex::new(ring.clone(), ranks, boundaries, base.augmentation().map(<[_]>::to_vec))
        .expect("A′ shapes are consistent");

    let source = base.extended_to(3);
    let forward_maps = vec![
        GroupRingMatrix::identity(base.rank(0), &ring),
        GroupRingMatrix::identity(base.rank(1), &ring),
        GroupRingMatrix::identity(s2, &ring).embed(s2 + m, s2, 0, 0),
        GroupRingMatrix::zeros(m, 0, flavor),
    ];
    let backward_maps = vec![
        GroupRingMatrix::identity(base.rank(0), &ring),
        GroupRingMatrix::identity(base.rank(1), &ring),
        GroupRingMatrix::identity(s2, &ring).embed(s2, s2 + m, 0, 0),
        GroupRingMatrix::zeros(0, m, flavor),
    ];
    let forward = ChainMapCert::new(source.clone(), a_prime.clone(), forward_maps).expect("inclusion shapes");
    let backward = ChainMapCert::new(a_prime.clone(), source.clone(), backward_maps).expect("projection shapes");

    let homotopy_source = vec![
        GroupRingMatrix::zeros(base.rank(1), base.rank(0), flavor),
        GroupRingMatrix::zeros(s2, base.rank(1), flavor),
        GroupRingMatrix::zeros(0, s2, flavor),
    ];
    let homotopy_target = vec![
        GroupRingMatrix::zeros(base.rank(1), base.rank(0), flavor),
        GroupRingMatrix::zeros(s2 + m, base.rank(1), flavor),
        GroupRingMatrix::identity(m, &ring).embed(m, s2 + m, 0, s2).neg(),
    ];
    let cert = EquivalenceCertificate::new(forward, backward, homotopy_source, homotopy_target)
        .expect("certificate shapes are consistent");
    (a_prime, cert)
}

/// Extends an equivalence of 2-complexes by the identity on `Q` of rank `q`,
/// added as the last summand in degree 2 on both sides.
pub fn extend_by_identity(e: &EquivalenceCertificate, q: usize) -> Result<EquivalenceCertificate, RealizationError> {
    let (src, tgt) = (e.source(), e.target());
    if src.top() != 2 || tgt.top() != 2 {
        return Err(RealizationError::Mismatch(format!(
            "expected an equivalence of 2-complexes, got lengths {} and {}",
            src.top(),
            tgt.top()
        )));
    }
    let ring = src.ring();
    let (new_src, new_tgt) = (pad_top(src, q), pad_top(tgt, q));
    let id_q = GroupRingMatrix::identity(q, ring);

    let extend = |m: &ChainMapCert, from: &ChainComplex, to: &ChainComplex| {
        let mut maps = m.maps.clone();
        maps[2] = maps[2].direct_sum(&id_q);
        ChainMapCert::new(from.clone(), to.clone(), maps)
    };
    let forward = extend(&e.forward, &new_src, &new_tgt)?;
    let backward = extend(&e.backward, &new_tgt, &new_src)?;

    let pad_h1 = |h: &[GroupRingMatrix]| {
        let mut h = h.to_vec();
        let h1 = &h[1];
        h[1] = h1.embed(h1.rows() + q, h1.cols(), 0, 0);
        h
    };
    Ok(EquivalenceCertificate::new(
        forward,
        backward,
        pad_h1(&e.homotopy_source),
        pad_h1(&e.homotopy_target),
    )?)
}

/// A named block of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub name: &'static str,
    pub range: Range<usize>,
}

/// `C_*(Y)` with its 3-cell attaching data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedThreeComplex {
    pub complex: ChainComplex,
    /// Column `i` of `∂_3`: the image of the `i`-th basis vector of `S ⊕ Q`.
    pub attaching_vectors: Vec<GroupRingMatrix>,
    /// Layout of `C_2 ⊕ (C ⊕ Q)` in degree 2, with `C` split as `S_2 ⊕ C_1 ⊕ S_0`.
    pub degree_two_layout: Vec<Summand>,
}

fn layout(names: [&'static str; 5], sizes: [usize; 5]) -> Vec<Summand> {
    let mut start = 0;
    names
        .iter()
        .zip(sizes)
        .map(|(&name, size)| {
            let s = Summand {
                name,
                range: start..start + size,
            };
            start += size;
            s
        })
        .collect()
}

/// Builds `C_*(Y)` from a verified equivalence between the stabilized
/// complexes of `plan`. Refuses certificates that do not verify.
pub fn build_realizing_complex(
    plan: &StabilizationPlan,
    e: &EquivalenceCertificate,
) -> Result<RealizedThreeComplex, RealizationError> {
    let expected_source = plan.stabilized_source();
    let expected_target = plan.stabilized_presentation_complex();
    if e.source() != expected_source.complex() {
        return Err(RealizationError::Mismatch(
            "certificate source is not S_2 ⊕ (S ⊕ Q) -> S_1 -> S_0".into(),
        ));
    }
    if e.target() != expected_target.complex() {
        return Err(RealizationError::Mismatch(
            "certificate target is not C_2 ⊕ (C ⊕ Q) -> C_1 -> C_0".into(),
        ));
    }
    let report = verify_equivalence(e)?;
    if let Some(v) = report.first() {
        return Err(RealizationError::CertificateRejected(v.clone()));
    }

    let target = e.target();
    let ring = target.ring();
    let s2 = plan.source().complex().rank(2);
    let m = plan.rank_s() + plan.rank_q();
    let iota = inclusion(ring, s2, m);
    let top = GroupRingMatrix::compose(ring, &e.forward.maps[2], &iota).map_err(ChainError::from)?;

    let mut ranks = target.ranks().to_vec();
    ranks.push(m);
    let mut boundaries = target.boundaries().to_vec();
    boundaries.push(top.clone());
    let complex = ChainComplex::new(ring.clone(), ranks, boundaries, target.augmentation().map(<[_]>::to_vec))?;

    if let Some(v) = verify_complex(&complex)?.first() {
        return Err(RealizationError::NotAComplex(v.clone()));
    }
    let expanded_rank = rank(&complex.expanded_boundary(3)?);
    let expected = m * complex.ring().table().map_or(0, |t| t.order());
    if expanded_rank != expected {
        return Err(RealizationError::NotInjective {
            rank: expanded_rank,
            expected,
        });
    }

    let y = plan.presentation_complex().complex();
    let a = plan.source().complex();
    Ok(RealizedThreeComplex {
        attaching_vectors: (0..m).map(|i| top.columns(i, i + 1)).collect(),
        degree_two_layout: layout(
            ["C_2", "S_2", "C_1", "S_0", "Q"],
            [y.rank(2), a.rank(2), y.rank(1), a.rank(0), plan.rank_q()],
        ),
        complex,
    })
}

impl RealizedThreeComplex {
    /// Checks `(∂_2 ⊕ 0) v = 0` for each attaching vector `v`.
    pub fn verify_attaching_vectors(&self) -> Result<Report, ChainError> {
        let mut report = Report::default();
        let d2 = self.complex.boundary(2);
        for (i, v) in self.attaching_vectors.iter().enumerate() {
            let image = GroupRingMatrix::compose(self.complex.ring(), &d2, v)?;
            if let Some((row, _)) = image.first_nonzero() {
                report.violations.push(Violation {
                    check: "attaching vector in the kernel of the second boundary".into(),
                    degree: 3,
                    entry: Some((row, i)),
                    detail: String::new(),
                });
            }
        }
        Ok(report)
    }

    /// `H_3 = 0`, i.e. the top boundary is injective.
    pub fn top_homology_vanishes(&self) -> Result<bool, ChainError> {
        Ok(homology(&self.complex, 3)?.is_zero())
    }
}

/// Assembles the equivalence `A′ -> C_*(Y)` with components `(φ_0, φ_1, φ_2, 1)`
/// and back `(ψ_0, ψ_1, ψ_2, 1)`, reusing the homotopies of `e` and zero in
/// degree 2.
pub fn realization_certificate(
    a_prime: &ChainComplex,
    y: &RealizedThreeComplex,
    e: &EquivalenceCertificate,
) -> Result<EquivalenceCertificate, RealizationError> {
    let target = &y.complex;
    if a_prime.top() != 3 || target.top() != 3 {
        return Err(RealizationError::Mismatch("expected complexes of length 3".into()));
    }
    if e.forward.degrees() != 3 {
        return Err(RealizationError::Mismatch("expected an equivalence of 2-complexes".into()));
    }
    let ring = a_prime.ring();
    if ring != target.ring() || ring != e.source().ring() {
        return Err(RealizationError::RingMismatch);
    }
    if a_prime.rank(3) != target.rank(3) {
        return Err(RealizationError::Mismatch(format!(
            "degree-3 ranks differ: {} vs {}",
            a_prime.rank(3),
            target.rank(3)
        )));
    }
    let id3 = GroupRingMatrix::identity(a_prime.rank(3), ring);
    let with_top = |maps: &[GroupRingMatrix]| {
        let mut maps = maps.to_vec();
        maps.push(id3.clone());
        maps
    };
    let forward = ChainMapCert::new(a_prime.clone(), target.clone(), with_top(&e.forward.maps))?;
    let backward = ChainMapCert::new(target.clone(), a_prime.clone(), with_top(&e.backward.maps))?;
    let with_zero = |h: &[GroupRingMatrix], c: &ChainComplex| {
        let mut h = h.to_vec();
        h.push(GroupRingMatrix::zeros(c.rank(3), c.rank(2), ring.flavor()));
        h
    };
    Ok(EquivalenceCertificate::new(
        forward,
        backward,
        with_zero(&e.homotopy_source, a_prime),
        with_zero(&e.homotopy_target, target),
    )?)
}

/// Checks that `(1, φ_2, φ_1, φ_0)` is a chain map `A′ -> C_*(Y)` and that the
/// assembled certificate verifies in degrees 0 to 3.
pub fn verify_realization(
    a_prime: &ChainComplex,
    y: &RealizedThreeComplex,
    e: &EquivalenceCertificate,
) -> Result<Report, RealizationError> {
    let cert = realization_certificate(a_prime, y, e)?;
    Ok(verify_equivalence(&cert)?)
}

/// Everything produced by one run of the construction.
#[derive(Clone, Debug)]
pub struct Realization {
    pub plan: StabilizationPlan,
    pub a_prime: ChainComplex,
    pub inclusion: EquivalenceCertificate,
    pub extended: EquivalenceCertificate,
    pub realized: RealizedThreeComplex,
    pub certificate: EquivalenceCertificate,
    pub report: Report,
}

/// Runs the whole construction from an equivalence between `S_2 ⊕ S -> S_1 -> S_0`
/// and `C_2 ⊕ C -> C_1 -> C_0`.
pub fn realize(plan: StabilizationPlan, stable: &EquivalenceCertificate) -> Result<Realization, RealizationError> {
    if stable.source() != plan.stable_source().complex() || stable.target() != plan.stable_presentation_complex().complex() {
        return Err(RealizationError::Mismatch(
            "certificate does not relate S_2 ⊕ S and C_2 ⊕ C".into(),
        ));
    }
    let extended = extend_by_identity(stable, plan.rank_q())?;
    let (a_prime, inclusion) = build_a_prime(plan.source(), plan.rank_s() + plan.rank_q());
    let realized = build_realizing_complex(&plan, &extended)?;
    let certificate = realization_certificate(&a_prime, &realized, &extended)?;
    let mut report = verify_equivalence(&certificate)?;
    report.merge(realized.verify_attaching_vectors()?);
    Ok(Realization {
        plan,
        a_prime,
        inclusion,
        extended,
        realized,
        certificate,
        report,
    })
}
