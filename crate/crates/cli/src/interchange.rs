//! JSON interchange documents for complexes, certificates and realizations.
//!
//! Every document embeds its group (presentation, element listing,
//! multiplication table), so a file can be read without re-enumerating. All
//! numbers are decimal strings. Group-ring entries are arrays of
//! `{coefficient, word}` terms, with words in presentation syntax.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use twocx_core::chain::{ChainComplex, ChainMapCert, EquivalenceCertificate};
use twocx_core::group::{
    parse_presentation, FiniteGroupTable, Flavor, GroupPresentation, GroupRing, GroupRingElement,
    GroupRingMatrix,
};
use twocx_core::realization::RealizedThreeComplex;

pub const COMPLEX_FORMAT: &str = "twocx-complex";
pub const CERTIFICATE_FORMAT: &str = "twocx-certificate";
pub const REALIZATION_FORMAT: &str = "twocx-realization";

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected a {expected} document, found {found:?}")]
    Format { expected: &'static str, found: String },
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("in {context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl ToString) -> InterchangeError {
    InterchangeError::Invalid {
        context: context.into(),
        message: message.to_string(),
    }
}

fn number<T: FromStr>(s: &str) -> Result<T, InterchangeError> {
    s.parse().map_err(|_| InterchangeError::Number(s.to_string()))
}

fn numbers<T: FromStr>(v: &[String]) -> Result<Vec<T>, InterchangeError> {
    v.iter().map(|s| number(s)).collect()
}

fn strings<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub presentation: String,
    pub order: String,
    /// Element `i` of the listing, as a word.
    pub elements: Vec<String>,
    pub generator_images: Vec<String>,
    /// `product[a][b]` is the index of `a * b`.
    pub product: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: String,
    pub cols: String,
    /// Row-major entries.
    pub entries: Vec<Vec<Vec<Term>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexBody {
    pub ranks: Vec<String>,
    /// `boundaries[i]` is `∂_{i+1}`.
    pub boundaries: Vec<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub augmentation: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub format: String,
    pub group: GroupDocument,
    pub complex: ComplexBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBody {
    pub source: ComplexBody,
    pub target: ComplexBody,
    pub forward: Vec<MatrixDocument>,
    pub backward: Vec<MatrixDocument>,
    pub homotopy_source: Vec<MatrixDocument>,
    pub homotopy_target: Vec<MatrixDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub format: String,
    pub group: GroupDocument,
    pub certificate: CertificateBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDocument {
    pub name: String,
    pub start: String,
    pub end: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationDocument {
    pub format: String,
    pub group: GroupDocument,
    /// `C_*(Y)`; its top boundary has the attaching vectors as columns.
    pub complex: ComplexBody,
    pub attaching_vectors: Vec<MatrixDocument>,
    pub degree_two_layout: Vec<SummandDocument>,
    pub a_prime: ComplexBody,
    /// Equivalence `A′ -> C_*(Y)`.
    pub certificate: CertificateBody,
}

/// A group table together with the presentation it was enumerated from.
#[derive(Clone, Debug)]
pub struct Group {
    pub presentation: GroupPresentation,
    pub ring: GroupRing,
}

impl Group {
    pub fn new(presentation: GroupPresentation, table: FiniteGroupTable) -> Self {
        Group {
            presentation,
            ring: GroupRing::finite(table),
        }
    }

    pub fn table(&self) -> &FiniteGroupTable {
        self.ring.table().expect("finite group ring")
    }

    fn word(&self, element: usize) -> String {
        self.table()
            .representative(element)
            .display(self.presentation.generators())
            .to_string()
    }

    pub fn to_document(&self) -> GroupDocument {
        let t = self.table();
        let n = t.order();
        GroupDocument {
            presentation: self.presentation.to_string(),
            order: n.to_string(),
            elements: (0..n).map(|g| self.word(g)).collect(),
            generator_images: strings(t.generator_images()),
            product: (0..n).map(|a| strings((0..n).map(|b| t.mul(a, b)))).collect(),
        }
    }

    pub fn from_document(doc: &GroupDocument) -> Result<Self, InterchangeError> {
        let presentation = parse_presentation(&doc.presentation).map_err(|e| invalid("group presentation", e))?;
        let order: usize = number(&doc.order)?;
        if doc.elements.len() != order || doc.product.len() != order {
            return Err(invalid("group", format!("listing does not have {order} elements")));
        }
        let representatives = doc
            .elements
            .iter()
            .map(|w| presentation.parse_word(w).map_err(|e| invalid(format!("element {w:?}"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut product = Vec::with_capacity(order * order);
        for row in &doc.product {
            if row.len() != order {
                return Err(invalid("group product table", "ragged row"));
            }
            product.extend(numbers::<usize>(row)?);
        }
        let images = numbers(&doc.generator_images)?;
        let table =
            FiniteGroupTable::from_parts(product, images, representatives).map_err(|e| invalid("group table", e))?;
        table.check(&presentation).map_err(|e| invalid("group table", e))?;
        for g in 0..order {
            if table.evaluate_word(table.representative(g)) != g {
                return Err(invalid("group", format!("element {g} does not evaluate to itself")));
            }
        }
        Ok(Group::new(presentation, table))
    }

    fn element_to_terms(&self, e: &GroupRingElement) -> Vec<Term> {
        e.tabular_terms()
            .expect("tabular entries")
            .iter()
            .map(|(&g, c)| Term {
                coefficient: c.to_string(),
                word: self.word(g),
            })
            .collect()
    }

    fn terms_to_element(&self, terms: &[Term], lookup: &HashMap<&str, usize>) -> Result<GroupRingElement, InterchangeError> {
        let mut out = Vec::with_capacity(terms.len());
        for term in terms {
            let coefficient: BigInt = number(&term.coefficient)?;
            let g = match lookup.get(term.word.as_str()) {
                Some(&g) => g,
                None => {
                    let w = self
                        .presentation
                        .parse_word(&term.word)
                        .map_err(|e| invalid(format!("word {:?}", term.word), e))?;
                    self.table().evaluate_word(&w)
                }
            };
            out.push((coefficient, g));
        }
        Ok(GroupRingElement::from_elements(out))
    }

    pub fn matrix_to_document(&self, m: &GroupRingMatrix) -> MatrixDocument {
        MatrixDocument {
            rows: m.rows().to_string(),
            cols: m.cols().to_string(),
            entries: (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| self.element_to_terms(m.get(r, c))).collect())
                .collect(),
        }
    }

    pub fn matrix_from_document(&self, doc: &MatrixDocument) -> Result<GroupRingMatrix, InterchangeError> {
        let (rows, cols): (usize, usize) = (number(&doc.rows)?, number(&doc.cols)?);
        if doc.entries.len() != rows || doc.entries.iter().any(|r| r.len() != cols) {
            return Err(invalid("matrix", format!("entries do not form a {rows}x{cols} array")));
        }
        let names: Vec<String> = (0..self.table().order()).map(|g| self.word(g)).collect();
        let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(g, w)| (w.as_str(), g)).collect();
        let mut entries = Vec::with_capacity(rows * cols);
        for row in &doc.entries {
            for terms in row {
                entries.push(self.terms_to_element(terms, &lookup)?);
            }
        }
        GroupRingMatrix::from_entries(rows, cols, Flavor::Tabular, entries).map_err(|e| invalid("matrix", e))
    }

    fn matrices_from(&self, docs: &[MatrixDocument]) -> Result<Vec<GroupRingMatrix>, InterchangeError> {
        docs.iter().map(|d| self.matrix_from_document(d)).collect()
    }

    pub fn complex_to_body(&self, c: &ChainComplex) -> ComplexBody {
        ComplexBody {
            ranks: strings(c.ranks()),
            boundaries: c.boundaries().iter().map(|m| self.matrix_to_document(m)).collect(),
            augmentation: c.augmentation().map(strings),
        }
    }

    pub fn complex_from_body(&self, body: &ComplexBody) -> Result<ChainComplex, InterchangeError> {
        let augmentation = body.augmentation.as_deref().map(numbers).transpose()?;
        ChainComplex::new(
            self.ring.clone(),
            numbers(&body.ranks)?,
            self.matrices_from(&body.boundaries)?,
            augmentation,
        )
        .map_err(|e| invalid("complex", e))
    }

    pub fn certificate_to_body(&self, e: &EquivalenceCertificate) -> CertificateBody {
        let ms = |v: &[GroupRingMatrix]| v.iter().map(|m| self.matrix_to_document(m)).collect();
        CertificateBody {
            source: self.complex_to_body(e.source()),
            target: self.complex_to_body(e.target()),
            forward: ms(&e.forward.maps),
            backward: ms(&e.backward.maps),
            homotopy_source: ms(&e.homotopy_source),
            homotopy_target: ms(&e.homotopy_target),
        }
    }

    pub fn certificate_from_body(&self, body: &CertificateBody) -> Result<EquivalenceCertificate, InterchangeError> {
        let source = self.complex_from_body(&body.source)?;
        let target = self.complex_from_body(&body.target)?;
        let forward = ChainMapCert::new(source.clone(), target.clone(), self.matrices_from(&body.forward)?)
            .map_err(|e| invalid("forward map", e))?;
        let backward = ChainMapCert::new(target, source, self.matrices_from(&body.backward)?)
            .map_err(|e| invalid("backward map", e))?;
        EquivalenceCertificate::new(
            forward,
            backward,
            self.matrices_from(&body.homotopy_source)?,
            self.matrices_from(&body.homotopy_target)?,
        )
        .map_err(|e| invalid("certificate", e))
    }

    pub fn complex_document(&self, c: &ChainComplex) -> ComplexDocument {
        ComplexDocument {
            format: COMPLEX_FORMAT.into(),
            group: self.to_document(),
            complex: self.complex_to_body(c),
        }
    }

    pub fn certificate_document(&self, e: &EquivalenceCertificate) -> CertificateDocument {
        CertificateDocument {
            format: CERTIFICATE_FORMAT.into(),
            group: self.to_document(),
            certificate: self.certificate_to_body(e),
        }
    }

    pub fn realization_document(
        &self,
        a_prime: &ChainComplex,
        y: &RealizedThreeComplex,
        certificate: &EquivalenceCertificate,
    ) -> RealizationDocument {
        RealizationDocument {
            format: REALIZATION_FORMAT.into(),
            group: self.to_document(),
            complex: self.complex_to_body(&y.complex),
            attaching_vectors: y.attaching_vectors.iter().map(|v| self.matrix_to_document(v)).collect(),
            degree_two_layout: y
                .degree_two_layout
                .iter()
                .map(|s| SummandDocument {
                    name: s.name.to_string(),
                    start: s.range.start.to_string(),
                    end: s.range.end.to_string(),
                })
                .collect(),
            a_prime: self.complex_to_body(a_prime),
            certificate: self.certificate_to_body(certificate),
        }
    }
}

fn check_format(found: &str, expected: &'static str) -> Result<(), InterchangeError> {
    if found == expected {
        Ok(())
    } else {
        Err(InterchangeError::Format {
            expected,
            found: found.to_string(),
        })
    }
}

pub fn read_complex(text: &str) -> Result<(Group, ChainComplex), InterchangeError> {
    let doc: ComplexDocument = serde_json::from_str(text)?;
    check_format(&doc.format, COMPLEX_FORMAT)?;
    let group = Group::from_document(&doc.group)?;
    let c = group.complex_from_body(&doc.complex)?;
    Ok((group, c))
}

pub fn read_certificate(text: &str) -> Result<(Group, EquivalenceCertificate), InterchangeError> {
    let doc: CertificateDocument = serde_json::from_str(text)?;
    check_format(&doc.format, CERTIFICATE_FORMAT)?;
    let group = Group::from_document(&doc.group)?;
    let e = group.certificate_from_body(&doc.certificate)?;
    Ok((group, e))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
