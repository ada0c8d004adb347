//! Subtree-regeneration proposals and the Metropolis-Hastings step.

use std::collections::HashSet;
use std::hash::{BuildHasher, BuildHasherDefault, DefaultHasher};

use rand::Rng;

use super::pcfg::Pcfg;
use crate::lang::{Evaluator, Nonterminal, RuleAst};
use crate::likelihood::{informative_with, soft_log_likelihood_unchecked, CompatibilityReport, PragmaticFacts};
use crate::prior::rule_log_prior;

#[derive(Clone, Debug)]
pub struct Proposal {
    pub candidate: RuleAst,
    pub log_q_forward: f64,
    pub log_q_backward: f64,
}

/// Picks a node of `current` uniformly (the side selector included) and
/// redraws the subtree below it from the grammar.
pub fn propose<R: Rng + ?Sized>(current: &RuleAst, pcfg: &Pcfg, rng: &mut R) -> Proposal {
    let n = current.len();
    let at = rng.gen_range(0..n);
    let nt = current.nodes()[at].nonterminal();
    let fresh = pcfg.generate(nt, rng);
    let old = current.subtree(at);
    let candidate = current.replace_subtree(at, &fresh);
    Proposal {
        log_q_forward: -(n as f64).ln() + pcfg.log_probability(&fresh),
        log_q_backward: -(candidate.len() as f64).ln() + pcfg.log_probability(old),
        candidate,
    }
}

/// A scored rule.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainState {
    pub rule: RuleAst,
    pub log_prior: f64,
    pub log_likelihood: f64,
    /// Examples the rule gets wrong (meaningful only when the likelihood is finite).
    pub mistakes: usize,
}

impl ChainState {
    pub fn log_posterior(&self) -> f64 {
        self.log_prior + self.log_likelihood
    }
}

/// Scores rules against one problem: prior plus soft likelihood.
pub struct Scorer<'a> {
    evaluator: Evaluator<'a>,
    facts: &'a PragmaticFacts,
    epsilon: f64,
    seen: HashSet<u64, BuildHasherDefault<DefaultHasher>>,
    evaluated: HashSet<u64, BuildHasherDefault<DefaultHasher>>,
}

impl<'a> Scorer<'a> {
    /// `epsilon` must already be validated.
    pub fn new(evaluator: Evaluator<'a>, epsilon: f64) -> Self {
        let facts = evaluator.context().facts();
        Scorer {
            evaluator,
            facts,
            epsilon,
            seen: HashSet::default(),
            evaluated: HashSet::default(),
        }
    }

    pub fn score(&mut self, rule: RuleAst) -> ChainState {
        let key = BuildHasherDefault::<DefaultHasher>::default().hash_one(rule.nodes());
        self.seen.insert(key);
        let log_prior = rule_log_prior(&rule);
        if !informative_with(&rule, self.facts) {
            return ChainState {
                rule,
                log_prior,
                log_likelihood: f64::NEG_INFINITY,
                mistakes: 0,
            };
        }
        self.evaluated.insert(key);
        let truth = self.evaluator.eval_rule(&rule);
        let report = CompatibilityReport::from_truth(rule.side(), truth, true);
        ChainState {
            log_likelihood: soft_log_likelihood_unchecked(&report, self.epsilon),
            mistakes: report.mistakes,
            log_prior,
            rule,
        }
    }

    /// Hashes of every distinct rule scored so far.
    pub fn seen(&self) -> &HashSet<u64, BuildHasherDefault<DefaultHasher>> {
        &self.seen
    }

    /// Hashes of every distinct rule whose truth vector was computed.
    pub fn evaluated(&self) -> &HashSet<u64, BuildHasherDefault<DefaultHasher>> {
        &self.evaluated
    }

    pub fn evaluator(&self) -> &Evaluator<'a> {
        &self.evaluator
    }
}

/// One Metropolis-Hastings transition. Returns whether the proposal was accepted.
pub fn mh_step<R: Rng + ?Sized>(state: &mut ChainState, scorer: &mut Scorer<'_>, pcfg: &Pcfg, rng: &mut R) -> bool {
    let proposal = propose(&state.rule, pcfg, rng);
    if proposal.candidate == state.rule {
        return true;
    }
    let cand = scorer.score(proposal.candidate);
    let target = cand.log_posterior();
    if target == f64::NEG_INFINITY || proposal.log_q_backward == f64::NEG_INFINITY {
        return false;
    }
    let log_alpha = (target + proposal.log_q_backward) - (state.log_posterior() + proposal.log_q_forward);
    if log_alpha >= 0.0 || rng.gen::<f64>().ln() < log_alpha {
        *state = cand;
        true
    } else {
        false
    }
}

/// Draws rules from `R` until one has a finite score.
pub fn initial_state<R: Rng + ?Sized>(
    scorer: &mut Scorer<'_>,
    pcfg: &Pcfg,
    rng: &mut R,
    attempts: usize,
) -> Option<ChainState> {
    for _ in 0..attempts {
        let nodes = pcfg.generate(Nonterminal::R, rng);
        let rule = RuleAst::from_preorder(nodes).expect("grammar draws are derivations");
        let state = scorer.score(rule);
        if state.log_posterior().is_finite() {
            return Some(state);
        }
    }
    None
}
