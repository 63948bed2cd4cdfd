//! Structured pass/fail records produced by the verification routines.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Recorded observation; never fails a run.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub citation: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, citation: impl Into<String>, status: Status) -> Self {
        CheckResult {
            id: id.into(),
            citation: citation.into(),
            status,
            witnesses: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn from_outcome(id: impl Into<String>, citation: impl Into<String>, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Self::new(id, citation, Status::Pass),
            Err(w) => Self::new(id, citation, Status::Fail).with_witness(w),
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Drops timing data, for byte-stable output.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = None;
        }
        self
    }
}

/// Citation labels attached to report entries.
pub mod cite {
    pub const MAIN: &str = "Theorem main: additive categories with chain duality";
    pub const TAU_INVOLUTION: &str = "Proposition cd: tau_{D,C} o tau_{C,D} = id";
    pub const TAU_NATURAL: &str = "Lemma ec_appears: naturality tau(beta o alpha) = tau(alpha) o T(beta)";
    pub const TAU_CYCLES: &str = "Remark: tau restricts to an isomorphism on 0-cycles";
    pub const E_ROUTE: &str = "Theorem triangle / Theorem formula-eC-K: explicit formula for e_C";
    pub const E_DUALITY: &str = "Lemma ec_appears: e_{TC} o T(e_C) = id_{TC}";
    pub const E_NATURAL: &str = "Lemma ec_appears: e is a natural transformation";
    pub const E_CHE: &str = "Corollary: e_C is a chain homotopy equivalence";
    pub const SQUARE: &str = "Corollary cdvi: commutative square with vertical isomorphisms";
    pub const UNDERLYING: &str = "Proposition: dual of the underlying chain complex";
    pub const MASSEY: &str = "Theorem Massey: orientations from incidence numbers";
    pub const CDK: &str = "Theorem: C(DK) isomorphic to DeltaK^{-*} (x)_{Z(K)} DeltaK";
    pub const EPS_WE: &str = "Corollary varepsilon is a weak eq";
    pub const EPS_CHAIN: &str = "Definition of varepsilon on DeltaK^{-*} (x) DeltaK";
    pub const P_ISO: &str = "Lemma iso-in-DK";
    pub const DISSECTION: &str = "Definition def_dissection";
    pub const ORIGIN: &str = "Simplex of origin splitting of C(X)";
    pub const DUAL_CELLS: &str = "Lemma: DK is a regular CW-complex";
    pub const RULES: &str = "Lemma rules";
    pub const DSQUARED: &str = "Finite chain complexes: d o d = 0";
}
