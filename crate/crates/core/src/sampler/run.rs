//! Multi-chain orchestration and posterior aggregation.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mh::{initial_state, mh_step, Scorer};
use super::pcfg::{make_proper, Pcfg, DEFAULT_MAX_NODES};
use crate::error::{Error, Result};
use crate::ingest::ProblemContext;
use crate::lang::eval::{EvalStats, DEFAULT_CACHE_LIMIT};
use crate::lang::{Evaluator, GrammarTable, RuleAst, Side};
use crate::likelihood::{pruned_weights, validate_epsilon};

/// Draws tried when looking for a chain's starting rule.
const INIT_ATTEMPTS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    pub chains: usize,
    /// Thinned states kept per chain.
    pub samples_per_chain: usize,
    pub thinning: usize,
    pub burn_in: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// Zero the weight of productions the examples cannot license.
    pub prune: bool,
    /// Memoise truth vectors of rule bodies.
    pub cache: bool,
    pub cache_limit: usize,
    /// Generated subtrees above this many nodes are redrawn.
    pub max_subtree_nodes: usize,
    /// Generation weights; the default grammar weights when absent.
    pub pcfg_weights: Option<GrammarTable>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            chains: 6,
            samples_per_chain: 50_000,
            thinning: 10,
            burn_in: 100_000,
            epsilon: 0.01,
            seed: 0,
            prune: true,
            cache: true,
            cache_limit: DEFAULT_CACHE_LIMIT,
            max_subtree_nodes: DEFAULT_MAX_NODES,
            pcfg_weights: None,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        validate_epsilon(self.epsilon)?;
        for (name, v) in [
            ("chains", self.chains),
            ("samples_per_chain", self.samples_per_chain),
            ("thinning", self.thinning),
            ("max_subtree_nodes", self.max_subtree_nodes),
        ] {
            if v == 0 {
                return Err(Error::config(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Generation weights for a problem: pruned if enabled, then made proper.
    pub fn weights_for(&self, ctx: &ProblemContext) -> Result<GrammarTable> {
        let base = self.pcfg_weights.clone().unwrap_or_default().normalized();
        let w = if self.prune {
            pruned_weights(&base, ctx.facts())
        } else {
            base
        };
        make_proper(&w)
    }
}

/// Per-chain bookkeeping.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChainStats {
    pub steps: u64,
    pub accepted: u64,
    pub kept: u64,
    pub discarded: u64,
    pub distinct_scored: u64,
    pub distinct_evaluated: u64,
    pub eval: EvalStats,
    /// The chain's most frequent kept rule.
    pub top_rule: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub rule: String,
    pub side: Side,
    pub count: u64,
    pub proportion: f64,
}

/// Posterior summary: proportions of zero-mistake retained samples per rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleDistribution {
    /// Sorted by decreasing count, then rule text.
    pub entries: Vec<RuleEntry>,
    /// Retained samples with no mistakes.
    pub total_retained: u64,
    /// Retained samples discarded for having mistakes.
    pub total_discarded: u64,
    /// Distinct rules scored across all chains.
    pub distinct_scored: u64,
    /// Distinct rules evaluated on the examples (informative ones) across all chains.
    pub distinct_evaluated: u64,
    pub chains: Vec<ChainStats>,
}

impl RuleDistribution {
    /// Rules of one side, most probable first.
    pub fn side(&self, side: Side) -> impl Iterator<Item = &RuleEntry> {
        self.entries.iter().filter(move |e| e.side == side)
    }

    pub fn proportions(&self, side: Side) -> BTreeMap<String, f64> {
        self.side(side).map(|e| (e.rule.clone(), e.proportion)).collect()
    }

    pub fn proportion(&self, rule: &str) -> f64 {
        self.entries
            .iter()
            .find(|e| e.rule == rule)
            .map_or(0.0, |e| e.proportion)
    }

    pub fn top(&self, side: Side) -> Option<&RuleEntry> {
        self.side(side).next()
    }

    /// Most probable rule overall.
    pub fn best(&self) -> Option<&RuleEntry> {
        self.entries.first()
    }
}

struct ChainOutput {
    counts: HashMap<RuleAst, u64>,
    seen: HashSet<u64>,
    evaluated: HashSet<u64>,
    stats: ChainStats,
}

/// Runs the configured chains on a problem and aggregates their samples.
pub fn run(ctx: &ProblemContext, config: &SamplerConfig) -> Result<RuleDistribution> {
    let ids: Vec<u64> = (0..config.chains as u64).collect();
    run_chains(ctx, config, &ids)
}

/// Runs the chains with the given stream indices (ignoring `config.chains`),
/// reporting per-chain statistics in the given order.
pub fn run_chains(ctx: &ProblemContext, config: &SamplerConfig, ids: &[u64]) -> Result<RuleDistribution> {
    config.validate()?;
    let weights = config.weights_for(ctx)?;
    let pcfg = Pcfg::with_max_nodes(weights, config.max_subtree_nodes)?;
    let outputs: Vec<Result<ChainOutput>> = ids
        .par_iter()
        .map(|&chain| run_chain(ctx, config, &pcfg, chain))
        .collect();
    let outputs: Vec<ChainOutput> = outputs.into_iter().collect::<Result<_>>()?;
    Ok(merge(outputs))
}

fn run_chain(ctx: &ProblemContext, config: &SamplerConfig, pcfg: &Pcfg, chain: u64) -> Result<ChainOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(chain);
    let mut evaluator = Evaluator::with_cache(ctx, config.cache);
    evaluator.set_cache_limit(config.cache_limit);
    let mut scorer = Scorer::new(evaluator, config.epsilon);
    let mut state = initial_state(&mut scorer, pcfg, &mut rng, INIT_ATTEMPTS)
        .ok_or_else(|| Error::config("no informative rule is defined on every example of this problem"))?;
    let mut stats = ChainStats::default();
    let mut counts: HashMap<RuleAst, u64> = HashMap::new();
    for _ in 0..config.burn_in {
        stats.accepted += mh_step(&mut state, &mut scorer, pcfg, &mut rng) as u64;
    }
    for _ in 0..config.samples_per_chain {
        for _ in 0..config.thinning {
            stats.accepted += mh_step(&mut state, &mut scorer, pcfg, &mut rng) as u64;
        }
        if state.mistakes == 0 {
            stats.kept += 1;
            *counts.entry(state.rule.clone()).or_insert(0) += 1;
        } else {
            stats.discarded += 1;
        }
    }
    stats.steps = (config.burn_in + config.samples_per_chain * config.thinning) as u64;
    stats.distinct_scored = scorer.seen().len() as u64;
    stats.distinct_evaluated = scorer.evaluated().len() as u64;
    stats.eval = scorer.evaluator().stats();
    stats.top_rule = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.to_string().cmp(&a.0.to_string())))
        .map(|(r, _)| r.to_string());
    Ok(ChainOutput {
        counts,
        seen: scorer.seen().iter().copied().collect(),
        evaluated: scorer.evaluated().iter().copied().collect(),
        stats,
    })
}

fn merge(outputs: Vec<ChainOutput>) -> RuleDistribution {
    let mut counts: BTreeMap<String, (Side, u64)> = BTreeMap::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut evaluated: HashSet<u64> = HashSet::new();
    let mut chains = Vec::with_capacity(outputs.len());
    for out in outputs {
        for (rule, n) in out.counts {
            counts.entry(rule.to_string()).or_insert((rule.side(), 0)).1 += n;
        }
        seen.extend(out.seen);
        evaluated.extend(out.evaluated);
        chains.push(out.stats);
    }
    let total_retained: u64 = chains.iter().map(|c| c.kept).sum();
    let total_discarded: u64 = chains.iter().map(|c| c.discarded).sum();
    let mut entries: Vec<RuleEntry> = counts
        .into_iter()
        .map(|(rule, (side, count))| RuleEntry {
            rule,
            side,
            count,
            // Entries exist only if something was retained.
            proportion: count as f64 / total_retained.max(1) as f64,
        })
        .collect();
    entries.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.rule.cmp(&b.rule)));
    RuleDistribution {
        entries,
        total_retained,
        total_discarded,
        distinct_scored: seen.len() as u64,
        distinct_evaluated: evaluated.len() as u64,
        chains,
    }
}
