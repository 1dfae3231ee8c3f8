//! Seeded property suites checking the structural theorems at finite
//! truncation, with reproducible failure witnesses.

mod rings;
mod sample;
mod suites;

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::coeff::RingKind;
use crate::error::{Error, Result};

pub use rings::{default_rings, preset, preset_labels, HarnessRing};
pub use sample::{
    sample_coeff, sample_nonzero, sample_poly, sample_unit_content, sample_with_valuation,
    SampleBounds,
};

/// Every registered suite, in run order.
pub const SUITES: &[&str] = &[
    "ghost_hom",
    "frobenius_diagram",
    "universal_poly_oracle",
    "lift_independence",
    "teichmuller",
    "delta_axioms",
    "lemma_one",
    "explicit_recursion",
    "lij_valuations",
    "thm_val",
    "modinj",
    "topology",
    "allzero",
    "modpip",
    "sadhu_finite",
    "constants_descent",
    "exp_hom",
];

const EQUAL_CHAR_ONLY: &[&str] = &["modpip", "sadhu_finite", "constants_descent"];

/// Suites whose trial count is fixed by their exhaustive design.
const EXHAUSTIVE: &[&str] = &["constants_descent"];

/// Largest number of monomials a single trial may be expected to produce.
pub const MONOMIAL_CEILING: u128 = 1_000_000;

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 1;

/// Deliberate defects for checking that suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The Taylor expansion is computed one level short and padded with 0.
    TruncateTaylor,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: String,
    pub ring: HarnessRing,
    pub seed: u64,
    pub trials: usize,
    pub n_max: usize,
    pub m_max: u32,
    pub bounds: SampleBounds,
    pub fault: Option<Fault>,
}

impl SuiteConfig {
    /// Defaults for `ring`: 100 trials, ring-dependent truncation levels.
    pub fn new(suite: &str, ring: HarnessRing) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            n_max: ring.default_n_max(),
            m_max: ring.default_m_max(),
            ring,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            bounds: SampleBounds::default(),
            fault: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_n_max(mut self, n: usize) -> Self {
        self.n_max = n;
        self
    }

    pub fn with_m_max(mut self, m: u32) -> Self {
        self.m_max = m;
        self
    }

    pub fn with_bounds(mut self, bounds: SampleBounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    fn check(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::UnknownSuite(self.suite.clone()));
        }
        if EQUAL_CHAR_ONLY.contains(&self.suite.as_str())
            && self.ring.ring().kind() != RingKind::EqualChar
        {
            return Err(Error::IncompatibleRing {
                suite: self.suite.clone(),
                reason: format!(
                    "{} is not of equal characteristic",
                    self.ring.ring().describe()
                ),
            });
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let estimate = self.monomial_estimate();
        if estimate > MONOMIAL_CEILING {
            return Err(Error::BoundExceeded(format!(
                "suite {} on {} would produce about {estimate} monomials per trial (ceiling {MONOMIAL_CEILING})",
                self.suite,
                self.ring.label()
            )));
        }
        Ok(())
    }

    /// Rough size of the largest polynomial a trial builds: every
    /// generator degree and every t-degree is multiplied by q^n.
    pub fn monomial_estimate(&self) -> u128 {
        let q = self.ring.ring().q() as u128;
        let n = suites::max_level(self) as u32;
        let scale = q.saturating_pow(n);
        let per_gen = (self.bounds.max_degree as u128).saturating_mul(scale) + 1;
        let mut est = per_gen.saturating_pow(self.ring.alg().num_generators() as u32);
        if self.ring.ring().is_equal_char() {
            let t =
                (self.bounds.t_degree as u128 + self.m_max as u128 + 1).saturating_mul(scale) + 1;
            est = est.saturating_mul(t);
        }
        est
    }

    fn trial_seed(&self, trial: usize) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self
            .suite
            .bytes()
            .chain(std::iter::once(b'/'))
            .chain(self.ring.label().bytes())
        {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        splitmix(h ^ splitmix(self.seed) ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn config_echo(&self) -> Value {
        serde_json::json!({
            "ring_description": self.ring.describe(),
            "n_max": self.n_max,
            "m_max": self.m_max,
            "bounds": self.bounds,
            "fault": self.fault,
        })
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A failed trial with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub suite: String,
    pub ring: String,
    pub seed: u64,
    pub config: Value,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    fn skipped(cfg: &SuiteConfig, reason: String) -> Self {
        VerifyReport {
            schema: 1,
            suite: cfg.suite.clone(),
            ring: cfg.ring.label().to_string(),
            seed: cfg.seed,
            config: cfg.config_echo(),
            trials: 0,
            passes: 0,
            failures: Vec::new(),
            verdict: Verdict::Skipped,
            skip_reason: Some(reason),
            wall_time_ms: 0,
        }
    }
}

/// Outcome of one trial before it is stamped with its index and seed.
pub(crate) struct Mismatch {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

impl From<Error> for Mismatch {
    fn from(e: Error) -> Self {
        Mismatch {
            inputs: Vec::new(),
            expected: "no error".into(),
            actual: e.to_string(),
        }
    }
}

/// Runs one suite. Configuration problems are errors; property violations
/// are reported as failures.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerifyReport> {
    cfg.check()?;
    let start = Instant::now();
    let trials = if EXHAUSTIVE.contains(&cfg.suite.as_str()) {
        suites::exhaustive_trials(cfg)
    } else {
        cfg.trials
    };
    let failures: Vec<Failure> = (0..trials)
        .into_par_iter()
        .filter_map(|trial| run_trial(cfg, trial).err())
        .collect();
    Ok(VerifyReport {
        schema: 1,
        suite: cfg.suite.clone(),
        ring: cfg.ring.label().to_string(),
        seed: cfg.seed,
        config: cfg.config_echo(),
        trials,
        passes: trials - failures.len(),
        verdict: if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        failures,
        skip_reason: None,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Re-runs a single trial of `cfg`; a witness from a report fails again.
pub fn replay_trial(cfg: &SuiteConfig, trial: usize) -> Result<std::result::Result<(), Failure>> {
    cfg.check()?;
    Ok(run_trial(cfg, trial))
}

fn run_trial(cfg: &SuiteConfig, trial: usize) -> std::result::Result<(), Failure> {
    let trial_seed = cfg.trial_seed(trial);
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    suites::run(cfg, trial, &mut rng).map_err(|m| Failure {
        trial,
        trial_seed,
        inputs: m.inputs,
        expected: m.expected,
        actual: m.actual,
    })
}

/// Every suite on every ring. Incompatible pairs are reported as SKIPPED;
/// a configuration error in one suite becomes a failed report rather than
/// aborting the batch.
pub fn run_all(
    rings: &[HarnessRing],
    seed: u64,
    trials: Option<usize>,
    n_max: Option<usize>,
) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    for ring in rings {
        for suite in SUITES {
            let mut cfg = SuiteConfig::new(suite, ring.clone()).with_seed(seed);
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(n) = n_max {
                cfg.n_max = n;
            }
            let report = match run_suite(&cfg) {
                Ok(r) => r,
                Err(Error::IncompatibleRing { reason, .. }) => VerifyReport::skipped(&cfg, reason),
                Err(e) => VerifyReport {
                    failures: vec![Failure {
                        trial: 0,
                        trial_seed: 0,
                        inputs: Vec::new(),
                        expected: "a runnable configuration".into(),
                        actual: e.to_string(),
                    }],
                    verdict: Verdict::Fail,
                    skip_reason: None,
                    trials: 1,
                    ..VerifyReport::skipped(&cfg, String::new())
                },
            };
            out.push(report);
        }
    }
    out
}

/// Fixed-width summary table of reports.
pub fn format_table(reports: &[VerifyReport]) -> String {
    let mut out = format!(
        "{:<22} {:<16} {:>7} {:>7} {:>9}  {}\n",
        "suite", "ring", "trials", "passes", "time_ms", "verdict"
    );
    for r in reports {
        out.push_str(&format!(
            "{:<22} {:<16} {:>7} {:>7} {:>9}  {}\n",
            r.suite, r.ring, r.trials, r.passes, r.wall_time_ms, r.verdict
        ));
        for f in &r.failures {
            out.push_str(&format!(
                "    trial {} (seed {:#x}): inputs [{}] expected {} got {}\n",
                f.trial,
                f.trial_seed,
                f.inputs.join("; "),
                f.expected,
                f.actual
            ));
        }
    }
    out
}
