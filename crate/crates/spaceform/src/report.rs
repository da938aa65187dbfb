//! Run configuration and the report schema: a config echo, per-check records
//! with citations, errata entries, and a wall-clock duration. JSON key order
//! is fixed by struct order, so identical configs produce identical bytes
//! apart from `duration_ms`.

use std::path::PathBuf;

use serde::Serialize;

use crate::connection::{ConnectionKind, Verdict};
use crate::errata::ErrataEntry;
use crate::error::{Error, Result};
use crate::ricci::FormVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Structure,
    Curvature,
    Submanifold,
    Ricci,
    Scalar,
    Theorems,
    Errata,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "structure" => Ok(Suite::Structure),
            "curvature" => Ok(Suite::Curvature),
            "submanifold" => Ok(Suite::Submanifold),
            "ricci" => Ok(Suite::Ricci),
            "scalar" => Ok(Suite::Scalar),
            "theorems" => Ok(Suite::Theorems),
            "errata" => Ok(Suite::Errata),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite: {other}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Fixed { f1: f64, f2: f64, f3: f64 },
    Sasakian { c: f64 },
    Random { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format: {other}")),
        }
    }
}

/// Conventions baked into every run, echoed in the report header.
pub const DF_CONVENTION: &str =
    "df = 0: f1, f2, f3 are treated as constants at the evaluation point";
pub const RICCI_CONVENTION: &str = "S(X,Y) = sum_i R(E_i, X, Y, E_i) over the tangent frame";

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub n: usize,
    pub m: usize,
    pub connection: Option<ConnectionKind>,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub param_mode: ParamMode,
    pub format: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(rename = "df_convention")]
    pub df_convention: &'static str,
    #[serde(rename = "ricci_convention")]
    pub ricci_convention: &'static str,
}

impl RunConfig {
    pub fn new(suite: Suite, n: usize, m: usize) -> Self {
        Self {
            suite,
            n,
            m,
            connection: None,
            seed: 42,
            trials: 1000,
            tol: 1e-9,
            param_mode: ParamMode::Random { lo: -2.0, hi: 2.0 },
            format: OutputFormat::Text,
            out: None,
            df_convention: DF_CONVENTION,
            ricci_convention: RICCI_CONVENTION,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig("n must be >= 2".into()));
        }
        if self.m < 1 || self.m >= 2 * self.n {
            return Err(Error::InvalidConfig(format!(
                "m must satisfy 1 <= m <= {} for n = {}",
                2 * self.n - 1,
                self.n
            )));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        if let ParamMode::Random { lo, hi } = self.param_mode {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidConfig(
                    "random param range requires lo < hi".into(),
                ));
            }
        }
        Ok(())
    }
}

/// One named check with its citation and outcome. Only adjudicated checks
/// (oracle or ground-truth comparisons) can fail the run; observations about
/// the printed formulas are recorded with `adjudicated = false`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub citation: String,
    pub variant: Option<FormVariant>,
    pub trials: usize,
    pub max_residual: f64,
    pub verdict: Verdict,
    pub witness: Option<serde_json::Value>,
    #[serde(skip)]
    pub adjudicated: bool,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        citation: impl Into<String>,
        variant: Option<FormVariant>,
        trials: usize,
        max_residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            name: name.into(),
            citation: citation.into(),
            variant,
            trials,
            max_residual,
            verdict: if max_residual <= tol {
                Verdict::Match
            } else {
                Verdict::Mismatch
            },
            witness: None,
            adjudicated: true,
        }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn observational(mut self) -> Self {
        self.adjudicated = false;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub errata: Vec<ErrataEntry>,
    pub duration_ms: u64,
}

impl RunReport {
    /// Pass iff every oracle-adjudicated check matched. Errata and printed-
    /// formula observations never fail the run.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.adjudicated)
            .all(|c| c.verdict == Verdict::Match)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let c = &self.config;
        writeln!(out, "spaceform verification report").unwrap();
        writeln!(out, "  convention: {}", c.df_convention).unwrap();
        writeln!(out, "  convention: {}", c.ricci_convention).unwrap();
        writeln!(
            out,
            "  suite {:?}, n={}, m={}, seed={}, trials={}, tol={:.1e}, params {:?}",
            c.suite, c.n, c.m, c.seed, c.trials, c.tol, c.param_mode
        )
        .unwrap();
        writeln!(out).unwrap();
        writeln!(
            out,
            "  {:<44} {:<22} {:<16} {:>8}  {:>12}  verdict",
            "check", "citation", "variant", "trials", "max residual"
        )
        .unwrap();
        for r in &self.checks {
            let variant = match r.variant {
                Some(FormVariant::AsPrinted) => "as_printed",
                Some(FormVariant::OracleDerived) => "oracle_derived",
                None => "-",
            };
            let verdict = match (r.verdict, r.adjudicated) {
                (Verdict::Match, _) => "pass",
                (Verdict::Mismatch, true) => "FAIL",
                (Verdict::Mismatch, false) => "observed",
            };
            writeln!(
                out,
                "  {:<44} {:<22} {:<16} {:>8}  {:>12.3e}  {}",
                r.name, r.citation, variant, r.trials, r.max_residual, verdict
            )
            .unwrap();
        }
        if !self.errata.is_empty() {
            writeln!(out).unwrap();
            writeln!(
                out,
                "  errata ({} entries; never alter the exit code):",
                self.errata.len()
            )
            .unwrap();
            for e in &self.errata {
                writeln!(out, "  - {}", e.location).unwrap();
                writeln!(out, "      printed: {}", e.printed_expression).unwrap();
                writeln!(out, "      derived: {}", e.derived_expression).unwrap();
                writeln!(
                    out,
                    "      witness: {} -> printed {:.6}, derived {:.6}",
                    e.witness.configuration, e.witness.printed_value, e.witness.derived_value
                )
                .unwrap();
            }
        }
        writeln!(out).unwrap();
        writeln!(
            out,
            "  result: {} ({} checks, {} errata, {} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.errata.len(),
            self.duration_ms
        )
        .unwrap();
        out
    }
}
