//! The rule language: grammar, syntax trees, perceptual splits and evaluation.

pub mod ast;
pub mod eval;
pub mod grammar;
pub mod split;

use serde::{Deserialize, Serialize};

use crate::features::Attribute;

pub use ast::{ParseError, RuleAst};
pub use eval::{eval_rule, Evaluator, ObjectSet, TruthValue};
pub use grammar::{GrammarTable, Nonterminal, Production, Side};
pub use split::{perceptual_split, Split, SplitRule};

/// Tunable constants of the operator semantics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Semantics {
    /// Largest gap must be at least this multiple of the mean remaining gap.
    pub split_ratio: f64,
    /// Largest gap must be at least this fraction of the value range.
    pub split_min_range_fraction: f64,
    /// Absolute gap required for a COLOR split (replaces the relative tests).
    pub color_min_gap: f64,
    /// Required difference in log dispersion for the MORESIM operators.
    pub dispersion_log_gap: f64,
    /// Largest spread of pairwise centroid angles in an aligned set, degrees.
    pub aligned_tolerance_deg: f64,
    /// Sets up to this size are searched exhaustively by ALIGNED.
    pub aligned_exhaustive_limit: usize,
    /// Smallest set ALIGNED reports.
    pub aligned_min: usize,
}

impl Default for Semantics {
    fn default() -> Self {
        Semantics {
            split_ratio: 1.5,
            split_min_range_fraction: 0.1,
            color_min_gap: 0.3,
            dispersion_log_gap: 1.0,
            aligned_tolerance_deg: 5.0,
            aligned_exhaustive_limit: 10,
            aligned_min: 3,
        }
    }
}

impl Semantics {
    pub fn split_rule(&self, attr: Attribute) -> SplitRule {
        SplitRule {
            ratio: self.split_ratio,
            min_range_fraction: self.split_min_range_fraction,
            min_abs_gap: (attr == Attribute::Color).then_some(self.color_min_gap),
        }
    }
}
