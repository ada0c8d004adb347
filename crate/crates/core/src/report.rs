//! Run summaries in the style of posterior rule tables.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ingest::{load_problem, IngestOptions, ProblemContext};
use crate::lang::{Semantics, Side};
use crate::sampler::{run, RuleDistribution, SamplerConfig};

/// Version of the JSON layout produced by [`SolveReport`].
pub const SCHEMA_VERSION: u32 = 1;
/// Rows per side unless configured otherwise.
pub const DEFAULT_TOP: usize = 5;
/// Decimal places kept for proportions, in both output formats.
const DECIMALS: i32 = 4;

fn round(p: f64) -> f64 {
    let f = 10f64.powi(DECIMALS);
    (p * f).round() / f
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Canonical rule text including the side.
    pub rule: String,
    /// The rule without its side selector, as printed in tables.
    pub body: String,
    pub side: Side,
    pub count: u64,
    pub proportion: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideTable {
    pub side: Side,
    pub rules: Vec<ReportRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub problem: String,
    pub left: SideTable,
    pub right: SideTable,
    /// Probability mass of every rule not listed.
    pub remaining: f64,
    /// Retained samples without mistakes.
    pub samples: u64,
    pub runs: usize,
    pub burn_in: usize,
    pub discarded_with_mistakes: u64,
    pub distinct_rules_scored: u64,
    pub config: SamplerConfig,
}

impl SolveReport {
    pub fn from_distribution(problem: &str, dist: &RuleDistribution, config: &SamplerConfig, top: usize) -> Self {
        let table = |side: Side| SideTable {
            side,
            rules: dist
                .side(side)
                .take(top)
                .map(|e| ReportRow {
                    body: e.rule.split_once(':').map_or(e.rule.clone(), |(_, b)| b.to_string()),
                    rule: e.rule.clone(),
                    side,
                    count: e.count,
                    proportion: round(e.proportion),
                })
                .collect(),
        };
        let left = table(Side::Left);
        let right = table(Side::Right);
        let shown: f64 = left.rules.iter().chain(&right.rules).map(|r| r.proportion).sum();
        let remaining = if dist.total_retained == 0 {
            0.0
        } else {
            round((1.0 - shown).max(0.0))
        };
        SolveReport {
            schema_version: SCHEMA_VERSION,
            problem: problem.to_string(),
            left,
            right,
            remaining,
            samples: dist.total_retained,
            runs: config.chains,
            burn_in: config.burn_in,
            discarded_with_mistakes: dist.total_discarded,
            distinct_rules_scored: dist.distinct_scored,
            config: config.clone(),
        }
    }

    pub fn table(&self, side: Side) -> &SideTable {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let width = self
            .left
            .rules
            .iter()
            .chain(&self.right.rules)
            .map(|r| r.body.len())
            .chain(["Remaining rules".len()])
            .max()
            .unwrap_or(0)
            + 4;
        let mut out = String::new();
        let _ = writeln!(out, "Problem: {}", self.problem);
        let _ = writeln!(out, "Samples: {}", self.samples);
        let _ = writeln!(out, "Runs: {}", self.runs);
        let _ = writeln!(out, "Burn-in: {}", self.burn_in);
        let _ = writeln!(out, "Discarded rules with mistakes: {}", self.discarded_with_mistakes);
        let rule_line = "-".repeat(width + 8);
        for t in [&self.left, &self.right] {
            let _ = writeln!(out, "{rule_line}");
            let _ = writeln!(out, "{:<width$}{:>8}", t.side.name(), "p");
            let _ = writeln!(out, "{rule_line}");
            if t.rules.is_empty() {
                let _ = writeln!(out, "(none)");
            }
            for r in &t.rules {
                let _ = writeln!(out, "{:<width$}{:>8.4}", r.body, r.proportion);
            }
        }
        let _ = writeln!(out, "{rule_line}");
        let _ = writeln!(out, "{:<width$}{:>8.4}", "Remaining rules", self.remaining);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Loads a problem from its manifest, samples, and summarises the result.
pub fn solve(
    manifest: &Path,
    options: &IngestOptions,
    semantics: Semantics,
    config: &SamplerConfig,
    top: usize,
) -> Result<SolveReport> {
    config.validate()?;
    let ctx = load_problem(manifest, options, semantics)?;
    solve_problem(&manifest.display().to_string(), &ctx, config, top)
}

pub fn solve_problem(name: &str, ctx: &ProblemContext, config: &SamplerConfig, top: usize) -> Result<SolveReport> {
    let dist = run(ctx, config)?;
    Ok(SolveReport::from_distribution(name, &dist, config, top))
}
