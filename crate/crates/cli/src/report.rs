//! JSON report shapes. Field order here is the key order on output.

use serde::Serialize;

use gensim_core::similarity::{Certificate, Direction, Verdict};

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: &'static str,
    pub engine: String,
    pub holds: Option<bool>,
    pub result: T,
}

#[derive(Serialize)]
pub struct CertificateReport {
    pub kind: &'static str,
    pub direction: Direction,
    pub pair: [String; 2],
    pub element: String,
    pub evidence: Option<String>,
}

impl CertificateReport {
    pub fn of(v: &Verdict, left: &str, right: &str) -> Option<Self> {
        let pair = |d: Direction| match d {
            Direction::Forward => [left.to_string(), right.to_string()],
            Direction::Backward => [right.to_string(), left.to_string()],
        };
        match &v.certificate {
            Certificate::None => None,
            Certificate::Dominating {
                direction,
                element,
                evidence,
            } => Some(CertificateReport {
                kind: "dominating",
                direction: *direction,
                pair: pair(*direction),
                element: element.clone(),
                evidence: Some(evidence.to_string()),
            }),
            Certificate::NoPartner { direction, element } => Some(CertificateReport {
                kind: "no-partner",
                direction: *direction,
                pair: pair(*direction),
                element: element.clone(),
                evidence: None,
            }),
        }
    }

    pub fn text(&self) -> String {
        let pair = format!("({}, {})", self.pair[0], self.pair[1]);
        match &self.evidence {
            Some(ev) => format!(
                "certificate: in {pair}, {} dominates with evidence {ev}",
                self.element
            ),
            None => format!(
                "certificate: in {pair}, {} has no similar partner",
                self.element
            ),
        }
    }
}

#[derive(Serialize)]
pub struct CheckResult {
    pub relation: &'static str,
    pub left: String,
    pub right: String,
    pub a: String,
    pub b: String,
    pub certificate: Option<CertificateReport>,
}

#[derive(Serialize)]
pub struct MatrixResult {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub approx: Vec<Vec<bool>>,
}

#[derive(Serialize)]
pub struct GroundLanguage {
    pub constant: String,
    pub regex: String,
}

#[derive(Serialize)]
pub struct LanguageResult {
    pub algebra: String,
    pub element: String,
    pub regex: String,
    pub states: usize,
    pub ground: Vec<GroundLanguage>,
}

#[derive(Serialize)]
pub struct CharsetResult {
    pub a: String,
    pub b: String,
    pub max_size: usize,
    pub terms: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct CloneResult {
    pub algebra: String,
    pub polynomials: Vec<String>,
}

#[derive(Serialize)]
pub struct MorphismResult {
    pub map: String,
    pub verify: &'static str,
    pub details: Vec<String>,
}

#[derive(Serialize)]
pub struct Violation {
    pub elements: Vec<String>,
    pub certificate: Option<CertificateReport>,
}

#[derive(Serialize)]
pub struct ReflexivityResult {
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
}

#[derive(Serialize)]
pub struct TransitivityResult {
    pub algebras: Vec<String>,
    pub leq_violations: Vec<Violation>,
    pub approx_violations: Vec<Violation>,
}

#[derive(Serialize)]
pub struct ExampleLine {
    pub location: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct ExamplesResult {
    pub seed: u64,
    pub checks: Vec<ExampleLine>,
}
