//! The subcommands, operating on file contents rather than paths.

use twocx_core::chain::{
    homology, homology_table, search_equivalence, verify_complex, verify_equivalence,
    verify_two_complex, AlgebraicTwoComplex, ChainComplex, ChainError,
};
use twocx_core::fox::cayley_complex;
use twocx_core::group::{parse_presentation, todd_coxeter};
use twocx_core::realization::{realize as run_realization, RealizationError, StabilizationPlan};

use crate::interchange::{read_certificate, read_complex, to_json, Group};
use crate::report::{inputs_digest, HomologyTable, RunReport};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Usage = 2,
    Exhausted = 3,
    Failed = 4,
    NoCertificate = 5,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// A finished run: the report, an optional interchange document, and the
/// exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub artifact: Option<String>,
    pub status: Status,
}

impl Outcome {
    fn error(mut report: RunReport, status: Status, message: String) -> Self {
        report.fail(message);
        Outcome {
            report,
            artifact: None,
            status,
        }
    }

    fn finish(report: RunReport, artifact: Option<String>) -> Self {
        let status = if report.passed { Status::Pass } else { Status::Failed };
        Outcome {
            report,
            artifact,
            status,
        }
    }
}

const EQUIVALENCE_LABELS: [&str; 4] = [
    "forward chain map square",
    "backward chain map square",
    "homotopy on source",
    "homotopy on target",
];

/// Checks a length-two complex against the algebraic 2-complex conditions and
/// records its homology under `name`.
fn two_complex_checks(report: &mut RunReport, name: &str, c: &ChainComplex) -> Result<(), ChainError> {
    let r = verify_two_complex(c)?;
    report.check_labels(&format!("{name}: "), &r.complex, &["boundary composite", "augmentation composite"]);
    if let Some(surjective) = r.augmentation_surjective {
        report.check(&format!("{name}: augmentation is surjective"), surjective, None);
    }
    if r.homology.is_empty() {
        return Ok(());
    }
    report.check(&format!("{name}: H0 is Z"), r.h0_is_integers(), Some(format!("H0 = {}", r.homology[0])));
    report.check(&format!("{name}: H1 vanishes"), r.h1_vanishes(), Some(format!("H1 = {}", r.homology[1])));
    report.homology.push(HomologyTable::new(name, &r.homology));
    Ok(())
}

/// `∂∂ = 0` check; records the full homology table when it passes.
fn complex_checks(report: &mut RunReport, name: &str, c: &ChainComplex) -> Result<bool, ChainError> {
    let r = verify_complex(c)?;
    report.check_labels(&format!("{name}: "), &r, &["boundary composite", "augmentation composite"]);
    if r.passed() {
        report.homology.push(HomologyTable::new(name, &homology_table(c)?));
    }
    Ok(r.passed())
}

pub fn cayley(presentation: &str, max_cosets: usize) -> Outcome {
    let digest = inputs_digest("cayley", &[("max-cosets", max_cosets.to_string())], &[presentation]);
    let report = RunReport::new("cayley", digest);
    let p = match parse_presentation(presentation) {
        Ok(p) => p,
        Err(e) => return Outcome::error(report, Status::Usage, format!("parse error: {e}")),
    };
    let t = match todd_coxeter(&p, max_cosets) {
        Ok(t) => t,
        Err(e) => return Outcome::error(report, Status::Exhausted, e.to_string()),
    };
    let c = match cayley_complex(&p, &t) {
        Ok(c) => c,
        Err(e) => return Outcome::error(report, Status::Failed, e.to_string()),
    };
    let group = Group::new(p, t);
    let mut report = report;
    if let Err(e) = two_complex_checks(&mut report, "Cayley complex", &c) {
        return Outcome::error(report, Status::Failed, e.to_string());
    }
    Outcome::finish(report, Some(to_json(&group.complex_document(&c))))
}

pub fn verify(complex: &str) -> Outcome {
    let mut report = RunReport::new("verify", inputs_digest("verify", &[], &[complex]));
    let (_, c) = match read_complex(complex) {
        Ok(x) => x,
        Err(e) => return Outcome::error(report, Status::Usage, e.to_string()),
    };
    let result = if c.top() == 2 {
        two_complex_checks(&mut report, "complex", &c)
    } else {
        complex_checks(&mut report, "complex", &c).map(|_| ())
    };
    match result {
        Ok(()) => Outcome::finish(report, None),
        Err(e) => Outcome::error(report, Status::Failed, e.to_string()),
    }
}

pub fn homology_command(complex: &str, degree: Option<usize>) -> Outcome {
    let options = [("degree", degree.map_or_else(|| "all".to_string(), |d| d.to_string()))];
    let mut report = RunReport::new("homology", inputs_digest("homology", &options, &[complex]));
    let (_, c) = match read_complex(complex) {
        Ok(x) => x,
        Err(e) => return Outcome::error(report, Status::Usage, e.to_string()),
    };
    if let Some(d) = degree.filter(|&d| d > c.top()) {
        return Outcome::error(report, Status::Usage, format!("degree {d} is outside 0..={}", c.top()));
    }
    let r = match verify_complex(&c) {
        Ok(r) => r,
        Err(e) => return Outcome::error(report, Status::Failed, e.to_string()),
    };
    report.check_labels("complex: ", &r, &["boundary composite", "augmentation composite"]);
    if r.passed() {
        let degrees: Vec<usize> = degree.map_or_else(|| (0..=c.top()).collect(), |d| vec![d]);
        let groups = match degrees.iter().map(|&d| homology(&c, d)).collect::<Result<Vec<_>, _>>() {
            Ok(g) => g,
            Err(e) => return Outcome::error(report, Status::Failed, e.to_string()),
        };
        report
            .homology
            .push(HomologyTable::from_degrees("complex", degrees.into_iter().zip(&groups)));
    }
    Outcome::finish(report, None)
}

pub fn cert_verify(certificate: &str) -> Outcome {
    let mut report = RunReport::new("cert-verify", inputs_digest("cert-verify", &[], &[certificate]));
    let (_, e) = match read_certificate(certificate) {
        Ok(x) => x,
        Err(err) => return Outcome::error(report, Status::Usage, err.to_string()),
    };
    let result = (|| -> Result<(), ChainError> {
        complex_checks(&mut report, "source", e.source())?;
        complex_checks(&mut report, "target", e.target())?;
        let r = verify_equivalence(&e)?;
        report.check_labels("", &r, &EQUIVALENCE_LABELS);
        Ok(())
    })();
    match result {
        Ok(()) => Outcome::finish(report, None),
        Err(err) => Outcome::error(report, Status::Failed, err.to_string()),
    }
}

/// Inputs to [`realize`].
#[derive(Clone, Debug)]
pub struct RealizeInputs<'a> {
    pub presentation: &'a str,
    pub complex: &'a str,
    pub certificate: Option<&'a str>,
    pub extra_rank: usize,
    pub search: bool,
    pub max_cosets: usize,
}

fn realization_status(e: &RealizationError) -> Status {
    match e {
        RealizationError::RingMismatch => Status::Usage,
        _ => Status::Failed,
    }
}

pub fn realize(inputs: &RealizeInputs<'_>) -> Outcome {
    let options = [
        ("extra-rank", inputs.extra_rank.to_string()),
        ("search", inputs.search.to_string()),
        ("max-cosets", inputs.max_cosets.to_string()),
    ];
    let mut files = vec![inputs.presentation, inputs.complex];
    files.extend(inputs.certificate);
    let mut report = RunReport::new("realize", inputs_digest("realize", &options, &files));

    if inputs.certificate.is_none() && !inputs.search {
        return Outcome::error(report, Status::Usage, "a certificate file or --search is required".into());
    }
    let p = match parse_presentation(inputs.presentation) {
        Ok(p) => p,
        Err(e) => return Outcome::error(report, Status::Usage, format!("parse error: {e}")),
    };
    let t = match todd_coxeter(&p, inputs.max_cosets) {
        Ok(t) => t,
        Err(e) => return Outcome::error(report, Status::Exhausted, e.to_string()),
    };
    let y = match cayley_complex(&p, &t) {
        Ok(c) => c,
        Err(e) => return Outcome::error(report, Status::Failed, e.to_string()),
    };
    let group = Group::new(p, t);
    let (a_group, a) = match read_complex(inputs.complex) {
        Ok(x) => x,
        Err(e) => return Outcome::error(report, Status::Usage, e.to_string()),
    };
    if a_group.ring != group.ring {
        return Outcome::error(
            report,
            Status::Usage,
            "the complex is not over the group of the presentation".into(),
        );
    }
    if a.top() != 2 {
        return Outcome::error(report, Status::Failed, format!("A has length {}, expected 2", a.top()));
    }
    for (name, c) in [("A", &a), ("Cayley complex", &y)] {
        if let Err(e) = two_complex_checks(&mut report, name, c) {
            return Outcome::error(report, Status::Failed, e.to_string());
        }
    }
    if !report.passed {
        return Outcome::finish(report, None);
    }
    let a = AlgebraicTwoComplex::new(a).expect("checked above");
    let y = AlgebraicTwoComplex::new(y).expect("checked above");
    let plan = match StabilizationPlan::new(a.clone(), y, inputs.extra_rank) {
        Ok(p) => p,
        Err(e) => return Outcome::error(report, realization_status(&e), e.to_string()),
    };

    let stable = match inputs.certificate {
        Some(text) => match read_certificate(text) {
            Ok((cert_group, e)) if cert_group.ring == group.ring => e,
            Ok(_) => {
                return Outcome::error(report, Status::Usage, "the certificate is not over the group of the presentation".into())
            }
            Err(e) => return Outcome::error(report, Status::Usage, e.to_string()),
        },
        None => {
            let found = search_equivalence(plan.stable_source().complex(), plan.stable_presentation_complex().complex());
            match found {
                Ok(Some(e)) => e,
                Ok(None) => {
                    return Outcome::error(report, Status::NoCertificate, "no certificate found within the search bounds".into())
                }
                Err(e) => return Outcome::error(report, Status::Failed, e.to_string()),
            }
        }
    };
    let relates = stable.source() == plan.stable_source().complex()
        && stable.target() == plan.stable_presentation_complex().complex();
    report.check(
        "certificate relates the stabilized complexes",
        relates,
        (!relates).then(|| "expected an equivalence from A wedge spheres to the Cayley complex wedge spheres".into()),
    );
    if !relates {
        return Outcome::finish(report, None);
    }
    match verify_equivalence(&stable) {
        Ok(r) => report.check_labels("certificate: ", &r, &EQUIVALENCE_LABELS),
        Err(e) => return Outcome::error(report, Status::Failed, e.to_string()),
    }
    if !report.passed {
        return Outcome::finish(report, None);
    }

    let r = match run_realization(plan, &stable) {
        Ok(r) => r,
        Err(e) => return Outcome::error(report, realization_status(&e), e.to_string()),
    };
    let result = (|| -> Result<(), ChainError> {
        let realized = &r.realized;
        report.check_labels(
            "realized complex: ",
            &verify_complex(&realized.complex)?,
            &["boundary composite", "augmentation composite"],
        );
        report.check_violation(
            "attaching vectors lie in the kernel of the second boundary",
            realized.verify_attaching_vectors()?.first(),
        );
        let cert = verify_equivalence(&r.certificate)?;
        report.check_labels("realization: ", &cert, &EQUIVALENCE_LABELS);
        let hy = homology_table(&realized.complex)?;
        let ha = homology_table(a.complex())?;
        report.check("realized complex: H3 vanishes", hy[3].is_zero(), Some(format!("H3 = {}", hy[3])));
        report.check("realized complex: H0, H1, H2 agree with A", hy[..3] == ha[..], None);
        report.homology.push(HomologyTable::new("realized complex", &hy));
        Ok(())
    })();
    if let Err(e) = result {
        return Outcome::error(report, Status::Failed, e.to_string());
    }
    let artifact = to_json(&group.realization_document(&r.a_prime, &r.realized, &r.certificate));
    Outcome::finish(report, Some(artifact))
}
