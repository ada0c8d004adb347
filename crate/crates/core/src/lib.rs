//! Bayesian rule induction for Bongard problems.
//!
//! Binary images are segmented into figures ([`ingest`], [`features`]),
//! candidate solutions are sentences of a small visual concept grammar
//! ([`lang`]), and a posterior over sentences is sampled with
//! subtree-regeneration Metropolis-Hastings ([`sampler`]) under a
//! rational-rules prior ([`prior`]) and a pragmatic compatibility
//! likelihood ([`likelihood`]). [`synth`] renders test problems and
//! [`report`] summarises a run.

pub mod error;
pub mod features;
pub mod geom;
pub mod ingest;
pub mod lang;
pub mod likelihood;
pub mod mask;
pub mod prior;
pub mod report;
pub mod sampler;
pub mod synth;

pub use error::{Error, Result};
pub use features::{Attribute, AttributeVector, FigureObject, FillClass, ShapeClass, Transform};
pub use ingest::{
    build_problem, build_problem_with, load_binary_image, load_problem, segment, BinaryImage, IngestOptions, Manifest,
    ProblemContext, Scene,
};
pub use lang::{
    eval_rule, Evaluator, GrammarTable, Nonterminal, ObjectSet, ParseError, Production, RuleAst, Semantics, Side,
    TruthValue,
};
pub use likelihood::{check_informative, compatibility, soft_log_likelihood, CompatibilityReport, PragmaticFacts};
pub use mask::Mask;
pub use prior::{count_productions, log_prior, rule_log_prior, ProductionCounts};
pub use report::{solve, SolveReport};
pub use sampler::{run, RuleDistribution, SamplerConfig};
pub use synth::{make_problem, render, SceneSpec, Template};
