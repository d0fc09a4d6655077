//! Seeded property suites: each trial computes a quantity through the
//! library and again through an independent route, and counts mismatches.

mod gen;
mod orders;
mod towers;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use gen::*;

pub const SUITES: [&str; 6] = ["le_order", "le_notq", "ramification", "ef_sum", "compositum", "canfind"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    /// Completed comparisons.
    pub trials: usize,
    pub failures: usize,
    /// Instances redrawn because they fell outside the suite's domain.
    pub redrawn: usize,
    /// The first few failures, described.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), ..Default::default() }
    }

    fn pass(&mut self) {
        self.trials += 1;
    }

    fn fail(&mut self, what: String) {
        self.trials += 1;
        self.failures += 1;
        if self.examples.len() < 5 {
            self.examples.push(what);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} trial(s), {} failure(s), {} redrawn",
            self.suite, self.trials, self.failures, self.redrawn
        )?;
        for e in &self.examples {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Option<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Some(match name {
        "le_order" => orders::le_order(&mut rng, trials),
        "le_notq" => orders::le_notq(&mut rng, trials),
        "canfind" => orders::canfind(&mut rng, trials),
        "ramification" => towers::ramification(&mut rng, trials),
        "ef_sum" => towers::ef_sum(&mut rng, trials),
        "compositum" => towers::compositum(&mut rng, trials),
        _ => return None,
    })
}
