//! Checks of structural theorems about `HH^1(A)` on concrete algebras.
//!
//! Each check decides whether its hypotheses hold for the algebra and, if so,
//! compares exact computations with the predicted conclusion. A check fails only
//! when a certified computation contradicts the prediction; when a Monte Carlo
//! or three-valued recognizer cannot settle a question the check warns instead.

mod checks;
pub mod corpus;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::hh1::{hh1, HH1Algebra};
use crate::lie::{SeriesReport, DEFAULT_TRIALS};
use crate::quiver::{FdAlgebra, Presentation, QuiverClass, SymmetryDecision};

pub use checks::CHECK_IDS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Warn => "warn",
            Verdict::Fail => "fail",
        }
    }
}

/// Outcome of one check on one algebra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub applicable: bool,
    pub reason: String,
    pub verdict: Verdict,
    pub measured: BTreeMap<String, Value>,
    pub expected: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl CheckRecord {
    fn new(id: &str) -> CheckRecord {
        CheckRecord {
            id: id.to_string(),
            applicable: true,
            reason: String::new(),
            verdict: Verdict::Pass,
            measured: BTreeMap::new(),
            expected: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn not_applicable(id: &str, reason: impl Into<String>) -> CheckRecord {
        CheckRecord {
            applicable: false,
            reason: reason.into(),
            ..CheckRecord::new(id)
        }
    }

    fn measure(&mut self, key: &str, value: impl Into<Value>) {
        self.measured.insert(key.to_string(), value.into());
    }

    fn expect(&mut self, key: &str, value: impl Into<Value>) {
        self.expected.insert(key.to_string(), value.into());
    }

    /// Records a certified requirement; a violated one fails the check.
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.verdict = Verdict::Fail;
            self.notes.push(format!("violated: {}", what.into()));
        }
    }

    fn warn(&mut self, what: impl Into<String>) {
        self.verdict = self.verdict.max(Verdict::Warn);
        self.notes.push(what.into());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub hash: String,
    pub field: String,
    pub dim: usize,
    pub vertices: usize,
    pub arrows: usize,
    pub loewy_length: usize,
    pub hh1_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub algebra: AlgebraSummary,
    pub checks: Vec<CheckRecord>,
    pub seed: u64,
}

impl TheoremReport {
    /// Worst verdict over all checks.
    pub fn verdict(&self) -> Verdict {
        self.checks
            .iter()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Settings for a harness run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub seed: u64,
    pub trials: usize,
    /// Testing hook: shifts the numeric bounds of the solvability and
    /// dimension checks so that they fail whenever they apply.
    pub inject_fault: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            trials: DEFAULT_TRIALS,
            inject_fault: false,
        }
    }
}

impl HarnessConfig {
    pub fn with_seed(seed: u64) -> HarnessConfig {
        HarnessConfig {
            seed,
            ..HarnessConfig::default()
        }
    }
}

/// Data shared by the checks on one algebra.
pub struct Context {
    pub presentation: Presentation,
    pub algebra: FdAlgebra,
    pub hh1: HH1Algebra,
    pub series: SeriesReport,
    pub class: QuiverClass,
    pub ext1: Vec<Vec<usize>>,
    pub symmetric: SymmetryDecision,
    pub config: HarnessConfig,
}

impl Context {
    pub fn new(presentation: &Presentation, config: HarnessConfig) -> Result<Context> {
        let algebra = presentation.build()?;
        let hh1 = hh1(&algebra)?;
        let series = hh1.lie().series_report();
        let class = algebra.quiver_class();
        let ext1 = algebra.ext1_matrix();
        let symmetric = algebra.is_symmetric(config.seed);
        Ok(Context {
            presentation: presentation.clone(),
            algebra,
            hh1,
            series,
            class,
            ext1,
            symmetric,
            config,
        })
    }

    /// Bound adjustment used by fault injection.
    fn shift(&self) -> i64 {
        if self.config.inject_fault {
            1000
        } else {
            0
        }
    }

    pub fn summary(&self) -> AlgebraSummary {
        AlgebraSummary {
            hash: self.presentation.hash(),
            field: self.algebra.field().to_string(),
            dim: self.algebra.dim(),
            vertices: self.algebra.num_vertices(),
            arrows: self.algebra.num_arrows(),
            loewy_length: self.algebra.loewy_length(),
            hh1_dim: self.hh1.dim(),
        }
    }
}

/// Runs every check on the algebra of `presentation`.
pub fn run_all(presentation: &Presentation, config: HarnessConfig) -> Result<TheoremReport> {
    let ctx = Context::new(presentation, config)?;
    let checks = checks::run(&ctx)?;
    Ok(TheoremReport {
        algebra: ctx.summary(),
        checks,
        seed: config.seed,
    })
}
