//! Chain maps, chain homotopies, and their exact verification.
//!
//! Maps between complexes of different lengths are padded: both complexes are
//! read as having zero modules above their top degree, and a certificate
//! carries one matrix per degree `0..=max(top)`.

use crate::group::{GroupRing, GroupRingMatrix};

use super::complex::{ChainComplex, ChainError, Report};

/// A family of module maps `φ_i: source_i -> target_i`, claimed to commute
/// with the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapCert {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub maps: Vec<GroupRingMatrix>,
}

pub(crate) fn span(a: &ChainComplex, b: &ChainComplex) -> usize {
    a.top().max(b.top()) + 1
}

impl ChainMapCert {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        maps: Vec<GroupRingMatrix>,
    ) -> Result<Self, ChainError> {
        if source.ring() != target.ring() {
            return Err(ChainError::RingMismatch);
        }
        let degrees = span(&source, &target);
        if maps.len() != degrees {
            return Err(ChainError::Dimension(format!(
                "chain map needs {degrees} components, got {}",
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let expected = (target.rank(i), source.rank(i));
            if m.shape() != expected {
                return Err(ChainError::Dimension(format!(
                    "component {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
            m.check_ring(source.ring())?;
        }
        Ok(ChainMapCert {
            source,
            target,
            maps,
        })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = (0..=c.top())
            .map(|i| GroupRingMatrix::identity(c.rank(i), c.ring()))
            .collect();
        ChainMapCert {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let flavor = source.ring().flavor();
        let maps = (0..span(source, target))
            .map(|i| GroupRingMatrix::zeros(target.rank(i), source.rank(i), flavor))
            .collect();
        ChainMapCert {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn ring(&self) -> &GroupRing {
        self.source.ring()
    }

    pub fn degrees(&self) -> usize {
        self.maps.len()
    }

    /// Component in `degree`, zero beyond the stored range.
    pub fn component(&self, degree: usize) -> GroupRingMatrix {
        self.maps.get(degree).cloned().unwrap_or_else(|| {
            GroupRingMatrix::zeros(
                self.target.rank(degree),
                self.source.rank(degree),
                self.ring().flavor(),
            )
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMapCert) -> Result<ChainMapCert, ChainError> {
        if self.target != other.source {
            return Err(ChainError::Dimension("composable maps must share a complex".into()));
        }
        let degrees = span(&self.source, &other.target);
        let maps = (0..degrees)
            .map(|i| GroupRingMatrix::compose(self.ring(), &other.component(i), &self.component(i)))
            .collect::<Result<Vec<_>, _>>()?;
        ChainMapCert::new(self.source.clone(), other.target.clone(), maps)
    }
}

/// Checks `∂ᵗ_i ∘ φ_i = φ_{i-1} ∘ ∂ˢ_i` in every degree and `εᵗ ∘ φ_0 = εˢ`
/// when both complexes are augmented.
pub fn verify_chain_map(m: &ChainMapCert) -> Result<Report, ChainError> {
    verify_chain_map_labeled(m, "chain map square")
}

pub(crate) fn verify_chain_map_labeled(m: &ChainMapCert, label: &str) -> Result<Report, ChainError> {
    let ring = m.ring();
    let mut report = Report::default();
    for i in 1..m.degrees() {
        let left = GroupRingMatrix::compose(ring, &m.target.boundary(i), &m.maps[i])?;
        let right = GroupRingMatrix::compose(ring, &m.maps[i - 1], &m.source.boundary(i))?;
        report.nonzero_entries(label, i, &left.sub(&right)?);
    }
    if let (Some(src), Some(_)) = (m.source.augmentation(), m.target.augmentation()) {
        let phi0 = &m.maps[0];
        for (j, expected) in src.iter().enumerate() {
            let got = m.target.augment_column(phi0, j).unwrap_or_default();
            if &got != expected {
                report.push(
                    &format!("{label} (augmentation)"),
                    0,
                    Some((0, j)),
                    format!("expected {expected}, got {got}"),
                );
            }
        }
    }
    Ok(report)
}

/// Chain maps both ways plus homotopies witnessing `ψφ ≃ 1` and `φψ ≃ 1`.
///
/// `homotopy_source[i]: source_i -> source_{i+1}` with
/// `ψ_i φ_i - 1 = ∂_{i+1} h_i + h_{i-1} ∂_i`, where `h_{-1} = 0` and `h` is
/// zero from the top degree on. Likewise for `homotopy_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub forward: ChainMapCert,
    pub backward: ChainMapCert,
    pub homotopy_source: Vec<GroupRingMatrix>,
    pub homotopy_target: Vec<GroupRingMatrix>,
}

fn check_homotopy_shapes(c: &ChainComplex, h: &[GroupRingMatrix], degrees: usize, name: &str) -> Result<(), ChainError> {
    if h.len() + 1 != degrees {
        return Err(ChainError::Dimension(format!(
            "{name} needs {} components, got {}",
            degrees - 1,
            h.len()
        )));
    }
    for (i, m) in h.iter().enumerate() {
        let expected = (c.rank(i + 1), c.rank(i));
        if m.shape() != expected {
            return Err(ChainError::Dimension(format!(
                "{name} component {i} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                expected.0,
                expected.1
            )));
        }
        m.check_ring(c.ring())?;
    }
    Ok(())
}

impl EquivalenceCertificate {
    pub fn new(
        forward: ChainMapCert,
        backward: ChainMapCert,
        homotopy_source: Vec<GroupRingMatrix>,
        homotopy_target: Vec<GroupRingMatrix>,
    ) -> Result<Self, ChainError> {
        if forward.source != backward.target || forward.target != backward.source {
            return Err(ChainError::Dimension(
                "forward and backward maps must run between the same complexes in opposite directions".into(),
            ));
        }
        let degrees = forward.degrees();
        check_homotopy_shapes(&forward.source, &homotopy_source, degrees, "source homotopy")?;
        check_homotopy_shapes(&forward.target, &homotopy_target, degrees, "target homotopy")?;
        Ok(EquivalenceCertificate {
            forward,
            backward,
            homotopy_source,
            homotopy_target,
        })
    }

    /// `φ = ψ = 1`, `h = 0`.
    pub fn identity(c: &ChainComplex) -> Self {
        let id = ChainMapCert::identity(c);
        let h = zero_homotopy(c, id.degrees());
        EquivalenceCertificate {
            forward: id.clone(),
            backward: id,
            homotopy_source: h.clone(),
            homotopy_target: h,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.forward.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.forward.target
    }
}

pub(crate) fn zero_homotopy(c: &ChainComplex, degrees: usize) -> Vec<GroupRingMatrix> {
    (0..degrees.saturating_sub(1))
        .map(|i| GroupRingMatrix::zeros(c.rank(i + 1), c.rank(i), c.ring().flavor()))
        .collect()
}

fn homotopy_component(c: &ChainComplex, h: &[GroupRingMatrix], i: isize) -> GroupRingMatrix {
    let flavor = c.ring().flavor();
    if i < 0 {
        return GroupRingMatrix::zeros(c.rank(0), 0, flavor);
    }
    let i = i as usize;
    h.get(i)
        .cloned()
        .unwrap_or_else(|| GroupRingMatrix::zeros(c.rank(i + 1), c.rank(i), flavor))
}

/// Checks `composite_i - 1 = ∂_{i+1} h_i + h_{i-1} ∂_i` for every degree.
pub(crate) fn verify_homotopy(
    c: &ChainComplex,
    composite: &ChainMapCert,
    h: &[GroupRingMatrix],
    label: &str,
) -> Result<Report, ChainError> {
    let ring = c.ring();
    let mut report = Report::default();
    for i in 0..composite.degrees() {
        let lhs = composite
            .component(i)
            .sub(&GroupRingMatrix::identity(c.rank(i), ring))?;
        let up = GroupRingMatrix::compose(ring, &c.boundary(i + 1), &homotopy_component(c, h, i as isize))?;
        let down = if i == 0 {
            GroupRingMatrix::zeros(c.rank(0), c.rank(0), ring.flavor())
        } else {
            GroupRingMatrix::compose(ring, &homotopy_component(c, h, i as isize - 1), &c.boundary(i))?
        };
        let difference = lhs.sub(&up.add(&down)?)?;
        report.nonzero_entries(label, i, &difference);
    }
    Ok(report)
}

/// Checks both chain-map conditions and both homotopy identities exactly.
pub fn verify_equivalence(e: &EquivalenceCertificate) -> Result<Report, ChainError> {
    if e.forward.source != e.backward.target || e.forward.target != e.backward.source {
        return Err(ChainError::Dimension(
            "forward and backward maps must run between the same complexes in opposite directions".into(),
        ));
    }
    let degrees = e.forward.degrees();
    check_homotopy_shapes(e.source(), &e.homotopy_source, degrees, "source homotopy")?;
    check_homotopy_shapes(e.target(), &e.homotopy_target, degrees, "target homotopy")?;

    let mut report = verify_chain_map_labeled(&e.forward, "forward chain map square")?;
    report.merge(verify_chain_map_labeled(&e.backward, "backward chain map square")?);
    let on_source = e.forward.then(&e.backward)?;
    report.merge(verify_homotopy(e.source(), &on_source, &e.homotopy_source, "homotopy on source")?);
    let on_target = e.backward.then(&e.forward)?;
    report.merge(verify_homotopy(e.target(), &on_target, &e.homotopy_target, "homotopy on target")?);
    Ok(report)
}
