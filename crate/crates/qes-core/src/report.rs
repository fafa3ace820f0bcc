//! JSON-serializable report types shared by the library and the CLI.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityStatus {
    ExactPass,
    ExactFail,
    PassWithDiscrepancies,
}

/// One residual or discrepancy term of an operator identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermEntry {
    pub d1: u32,
    pub d2: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub identity: String,
    pub status: IdentityStatus,
    pub residual_terms: Vec<TermEntry>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity: &str, status: IdentityStatus) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION.to_string(),
            identity: identity.to_string(),
            status,
            residual_terms: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != IdentityStatus::ExactFail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema_version: String,
    pub model: String,
    pub n: u32,
    pub bindings: Vec<(String, String)>,
    /// Characteristic polynomial coefficients, ascending degree, canonical
    /// strings (symbolic when parameters are unbound).
    pub char_poly_coeffs: Vec<String>,
    pub roots: Vec<ComplexEntry>,
    /// Eigenvector coordinates per distinct root (float components), in the
    /// documented basis order.
    pub eigenvectors: Vec<Vec<f64>>,
    pub basis: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenfunctionEntry {
    pub eigenvalue: ComplexEntry,
    pub polynomial_part: String,
    /// Gauge factor as (base, exponent-string) pairs, e.g. ("D", "-1/3").
    pub gauge_factors: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenfunctionReport {
    pub schema_version: String,
    pub model: String,
    pub n: u32,
    pub coupling_kappa: String,
    pub bindings: Vec<(String, String)>,
    pub states: Vec<EigenfunctionEntry>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NumericCheckReport {
    pub schema_version: String,
    pub check: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_rel_err: f64,
    /// Estimated proportionality constant, for ratio-style checks.
    pub constant_estimate: Option<(f64, f64)>,
    pub failures: Vec<usize>,
    pub passed: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscoveryReport {
    pub schema_version: String,
    pub target: String,
    pub chart: String,
    pub max_order: u32,
    pub degree_bounds: Vec<(u32, u32)>,
    pub bindings: Vec<(String, String)>,
    pub unknowns: usize,
    pub equations: usize,
    pub nullspace_dim: usize,
    pub trivial_dim: usize,
    pub reduced_dim: usize,
    pub members: Vec<Vec<(u32, u32, String)>>,
    pub membership_checks: Vec<(String, bool)>,
    pub solvable: Option<bool>,
    pub residual_norm: Option<String>,
    pub verified: bool,
    pub notes: Vec<String>,
}
