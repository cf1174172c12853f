use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One violated invariant, with the offending items named by their canonical keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<String>,
}

impl Violation {
    pub fn new(kind: &str, message: impl Into<String>, items: Vec<String>) -> Self {
        Violation { kind: kind.to_string(), message: message.into(), items }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)?;
        if !self.items.is_empty() {
            write!(f, " [{}]", self.items.join(", "))?;
        }
        Ok(())
    }
}

/// Violations found by a validator. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: &str, message: impl Into<String>, items: Vec<String>) {
        self.violations.push(Violation::new(kind, message, items));
    }

    pub fn has_kind(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub(crate) fn into_result(self) -> Result<(), Error> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(self.violations))
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation failed: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("simplex {0} is not in the complex")]
    SimplexNotFound(String),
    #[error("vertex {0} is already a vertex of the complex")]
    VertexCollision(String),
    #[error("center not found: {0}")]
    CenterNotFound(String),
    #[error("insufficient incidence data: {0}")]
    InsufficientIncidence(String),
    #[error("component {0} is not a divisor; divisorialize the configuration first")]
    NotDivisorial(String),
    #[error("invalid filtration: {0}")]
    Filtration(String),
    #[error("center {0} is not admissible for the filtration: {1}")]
    InadmissibleCenter(String, String),
    #[error("missing local-system data for stratum {0}")]
    MissingStratumData(String),
    #[error("cosimplicial identity fails at {stratum} via faces {face_a} and {face_b} (degree {q})")]
    Cosimplicial { stratum: String, face_a: String, face_b: String, q: usize },
    #[error("invalid local system: {0}")]
    LocalSystem(String),
    #[error("invalid double complex: {0}")]
    DoubleComplex(String),
    #[error("inconsistent S-chain: {0}")]
    InconsistentSChain(String),
    #[error("unsatisfiable generator bounds: {0}")]
    UnsatisfiableBounds(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// The error as machine-readable violations when it concerns the content
    /// of a well-formed input; `None` for malformed documents and bad bounds.
    pub fn violations(&self) -> Option<Vec<Violation>> {
        let one = |kind: &str, items: Vec<String>| Some(vec![Violation::new(kind, self.to_string(), items)]);
        match self {
            Error::Invalid(v) => Some(v.clone()),
            Error::SimplexNotFound(s) => one("simplex-not-found", vec![s.clone()]),
            Error::VertexCollision(v) => one("vertex-collision", vec![v.clone()]),
            Error::CenterNotFound(c) => one("center-not-found", vec![c.clone()]),
            Error::InsufficientIncidence(_) => one("insufficient-incidence", vec![]),
            Error::NotDivisorial(c) => one("not-divisorial", vec![c.clone()]),
            Error::Filtration(_) => one("filtration", vec![]),
            Error::InadmissibleCenter(c, _) => one("inadmissible-center", vec![c.clone()]),
            Error::MissingStratumData(s) => one("missing-stratum-data", vec![s.clone()]),
            Error::Cosimplicial { stratum, face_a, face_b, .. } => {
                one("cosimplicial", vec![stratum.clone(), face_a.clone(), face_b.clone()])
            }
            Error::LocalSystem(_) => one("local-system", vec![]),
            Error::DoubleComplex(_) => one("double-complex", vec![]),
            Error::InconsistentSChain(_) => one("inconsistent-s-chain", vec![]),
            Error::UnsatisfiableBounds(_) | Error::Format(_) | Error::Json(_) => None,
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
