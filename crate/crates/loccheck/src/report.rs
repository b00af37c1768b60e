//! Serializable report documents emitted by the command-line interface.
//!
//! Every machine-readable output is wrapped in a [`ReportDocument`] carrying
//! a schema version and a `kind` tag, so downstream tooling can dispatch
//! without sniffing fields. Float spectra inside documents serialize as
//! 17-significant-digit decimal strings and reparse to identical bits.

use serde::{Deserialize, Serialize};

use crate::search::SearchReport;
use crate::spectra::MajorizationVerdict;
use crate::weight::NumericMode;

/// Version of the report document layout.
pub const SCHEMA_VERSION: &str = "1";

/// Top-level envelope for machine-readable command output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub body: ReportBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportBody {
    Search(SearchReport),
    Check(CheckReport),
}

impl ReportDocument {
    pub fn search(report: SearchReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            body: ReportBody::Search(report),
        }
    }

    pub fn check(report: CheckReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            body: ReportBody::Check(report),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report documents serialize");
        text.push('\n');
        text
    }
}

/// Result of a single convertibility check between two named spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub mode: NumericMode,
    pub dim: usize,
    /// Set when the smaller spectrum was zero-padded to match the larger.
    pub embedded_to: Option<usize>,
    pub source_entropy_bits: f64,
    pub target_entropy_bits: f64,
    pub necessary_condition: bool,
    pub per_copy: Vec<CopyCheck>,
}

impl CheckReport {
    /// Whether conversion succeeds at every requested copy count.
    pub fn all_convertible(&self) -> bool {
        self.per_copy.iter().all(|c| c.convertible)
    }
}

/// Verdict for one copy count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyCheck {
    pub copies: u32,
    pub convertible: bool,
    pub first_violation: Option<usize>,
}

impl CopyCheck {
    pub fn from_verdict(copies: u32, verdict: MajorizationVerdict) -> Self {
        Self {
            copies,
            convertible: verdict.holds,
            first_violation: verdict.first_violation,
        }
    }
}

/// One-row CSV summary of a search (header plus data row). Stored
/// counterexamples are not flattened into the row; use the JSON document
/// for those.
pub fn search_summary_csv(report: &SearchReport) -> String {
    let fraction_ii = report
        .fraction_ii_given_i
        .map(|f| f.to_string())
        .unwrap_or_default();
    let stderr_ii = report
        .stderr_ii_given_i
        .map(|f| f.to_string())
        .unwrap_or_default();
    let header = "schema_version,dim,samples,seed,k_success,k_fail,mode,distribution,\
                  n_event_i,n_event_ii_given_i,n_confirmation_rejected,\
                  fraction_i,stderr_i,fraction_ii_given_i,stderr_ii_given_i,duration_seconds";
    let mode = match report.config.mode {
        crate::search::SearchMode::Float => "float",
        crate::search::SearchMode::RationalConfirm => "rational-confirm",
    };
    format!(
        "{header}\n{},{},{},{},{},{},{mode},{},{},{},{},{},{},{fraction_ii},{stderr_ii},{}\n",
        SCHEMA_VERSION,
        report.config.dim,
        report.config.samples,
        report.config.seed,
        report.config.k_success,
        report.config.k_fail,
        report.config.distribution.name(),
        report.n_event_i,
        report.n_event_ii_given_i,
        report.n_confirmation_rejected,
        report.fraction_i,
        report.stderr_i,
        report.duration_seconds,
    )
}
