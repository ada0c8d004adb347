//! The rational-rules prior: a product over nonterminals of multinomial Beta
//! functions of production counts.

use statrs::function::gamma::ln_gamma;

use crate::lang::{Nonterminal, Production, RuleAst};

/// How often each production is used in a derivation, grouped by nonterminal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductionCounts {
    counts: Vec<u32>,
}

impl ProductionCounts {
    pub fn zero() -> Self {
        ProductionCounts {
            counts: vec![0; crate::lang::grammar::PRODUCTIONS],
        }
    }

    pub fn get(&self, p: Production) -> u32 {
        self.counts[p.index()]
    }

    pub fn add(&mut self, p: Production, n: u32) {
        self.counts[p.index()] += n;
    }

    /// Count vector of one nonterminal, in table order.
    pub fn vector(&self, nt: Nonterminal) -> Vec<u32> {
        nt.productions().iter().map(|p| self.get(*p)).collect()
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }
}

/// Tally of production applications in a rule, including the side choice.
pub fn count_productions(rule: &RuleAst) -> ProductionCounts {
    let mut c = ProductionCounts::zero();
    for &p in rule.nodes() {
        c.add(p, 1);
    }
    c
}

/// `ln B(c + 1) - ln B(1)` for one count vector, where `B` is the
/// multinomial Beta function.
pub fn log_beta_ratio(counts: &[u32]) -> f64 {
    let k = counts.len() as f64;
    let n: f64 = counts.iter().map(|&c| c as f64).sum();
    let num: f64 = counts.iter().map(|&c| ln_gamma(c as f64 + 1.0)).sum::<f64>() - ln_gamma(n + k);
    // B(1) = Gamma(1)^k / Gamma(k).
    num + ln_gamma(k)
}

/// Unnormalised log prior of a count table.
pub fn log_prior(counts: &ProductionCounts) -> f64 {
    Nonterminal::ALL
        .iter()
        .map(|&nt| log_beta_ratio(&counts.vector(nt)))
        .sum()
}

pub fn rule_log_prior(rule: &RuleAst) -> f64 {
    log_prior(&count_productions(rule))
}
