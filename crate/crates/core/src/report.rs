//! Machine-readable command reports. Every rational is a `"p/q"` string so
//! the JSON form is exact and parses back to an equal value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::contraction::{AnalysisReport, Certificate, LambdaBound};
use crate::document::SpaceDocument;
use crate::iteration::{BoundReport, FixedPointCertificate, Trajectory};
use crate::space::{AxiomViolation, SpaceKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub input: InputEcho,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub path: String,
    pub document: SpaceDocument,
    /// Command-line options as given, keyed by flag name.
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSection {
    pub declared_kind: SpaceKind,
    /// Violations of the declared kind's axioms.
    pub violations: Vec<AxiomViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveSection {
    pub trajectory: Trajectory,
    /// The orbit stopped at a truncated family's boundary point.
    pub at_clamp: bool,
    pub fixed_points: Vec<FixedPointCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSection {
    pub lambda_cap: crate::rational::Rational,
    pub certificate: Option<Certificate>,
    /// Other maps of the document checked as candidate certificates.
    pub candidates: Vec<CandidateCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateCheck {
    pub name: String,
    pub injective: bool,
    pub lambda: LambdaBound,
    pub valid: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
