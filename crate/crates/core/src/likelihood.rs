//! Compatibility of a rule with the twelve examples, the pragmatic
//! informativeness test, and the soft likelihood used while sampling.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{Attribute, FillClass, ShapeClass};
use crate::ingest::{ProblemContext, SCENES};
use crate::lang::ast::subtree_end;
use crate::lang::eval::{format_truth_vector, TruthVector};
use crate::lang::{Evaluator, GrammarTable, Production, RuleAst, Side, TruthValue};

/// What the examples exhibit anywhere in the problem. Rules that mention an
/// ingredient the examples never show are uninformative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PragmaticFacts {
    pub total_objects: usize,
    pub max_objects_per_scene: usize,
    pub circles: bool,
    pub triangles: bool,
    pub rectangles: bool,
    pub solid: bool,
    pub outline: bool,
    pub big: bool,
    pub small: bool,
    /// Per attribute: some `HIGH(FIGURES, A)` / `LOW(FIGURES, A)` is nonempty.
    pub high: BTreeMap<Attribute, bool>,
    pub low: BTreeMap<Attribute, bool>,
    pub nested_pair: bool,
}

impl PragmaticFacts {
    pub fn new(ctx: &ProblemContext) -> Self {
        let objects = || ctx.scenes().iter().flat_map(|s| s.objects.iter());
        let has_shape = |c: ShapeClass| objects().any(|o| o.shape == c);
        let has_fill = |f: FillClass| objects().any(|o| o.fill == f);
        let mut ev = Evaluator::with_cache(ctx, false);
        let mut somewhere =
            |expr: &[Production]| (0..SCENES).any(|s| ev.eval_l(expr, s).is_some_and(|set| !set.is_empty()));
        let big = somewhere(&[Production::Big, Production::Figures]);
        let small = somewhere(&[Production::Small, Production::Figures]);
        let mut high = BTreeMap::new();
        let mut low = BTreeMap::new();
        for attr in Attribute::ALL {
            let a = attr_production(attr);
            high.insert(attr, somewhere(&[Production::High, Production::Figures, a]));
            low.insert(attr, somewhere(&[Production::Low, Production::Figures, a]));
        }
        let nested_pair = ctx.scenes().iter().any(|s| {
            s.objects.iter().enumerate().any(|(i, a)| {
                s.objects
                    .iter()
                    .enumerate()
                    .any(|(j, b)| i != j && crate::features::inside(a, b))
            })
        });
        PragmaticFacts {
            total_objects: objects().count(),
            max_objects_per_scene: ctx.scenes().iter().map(|s| s.objects.len()).max().unwrap_or(0),
            circles: has_shape(ShapeClass::Circle),
            triangles: has_shape(ShapeClass::Triangle),
            rectangles: has_shape(ShapeClass::Rectangle),
            solid: has_fill(FillClass::Solid),
            outline: has_fill(FillClass::Outline),
            big,
            small,
            high,
            low,
            nested_pair,
        }
    }

    /// Whether a use of `p` is licensed. For HIGH and LOW the attribute
    /// argument must be given.
    pub fn licenses(&self, p: Production, attr: Option<Attribute>) -> bool {
        use Production::*;
        match p {
            Figures => self.total_objects > 0,
            Circles => self.circles,
            Triangles => self.triangles,
            Rectangles => self.rectangles,
            Solid => self.solid,
            Outline => self.outline,
            Big => self.big,
            Small => self.small,
            High | Low => {
                let table = if p == High { &self.high } else { &self.low };
                self.total_objects >= 2
                    && match attr {
                        Some(a) => table[&a],
                        None => table.values().any(|&b| b),
                    }
            }
            Inside | Contains => self.max_objects_per_scene >= 2 && self.nested_pair,
            Aligned => self.max_objects_per_scene >= 3,
            Distance => self.max_objects_per_scene >= 2,
            _ => true,
        }
    }
}

fn attr_production(attr: Attribute) -> Production {
    Production::all()
        .find(|p| p.attribute() == Some(attr))
        .expect("every attribute has a terminal")
}

/// The informativeness test: every ingredient the rule mentions is exhibited
/// somewhere in the problem.
pub fn check_informative(rule: &RuleAst, ctx: &ProblemContext) -> bool {
    informative_with(rule, ctx.facts())
}

pub fn informative_with(rule: &RuleAst, facts: &PragmaticFacts) -> bool {
    let nodes = rule.nodes();
    nodes.iter().enumerate().all(|(i, &p)| {
        let attr = match p {
            Production::High | Production::Low => nodes[subtree_end(nodes, i + 1)].attribute(),
            _ => None,
        };
        facts.licenses(p, attr)
    })
}

/// Outcome of checking a rule against the twelve examples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub truth: TruthVector,
    /// Examples on the wrong side of the rule.
    pub mistakes: usize,
    pub undefined_hit: bool,
    pub informative: bool,
    pub compatible: bool,
}

impl CompatibilityReport {
    pub fn from_truth(side: Side, truth: TruthVector, informative: bool) -> Self {
        let mut mistakes = 0;
        let mut undefined_hit = false;
        for (s, &t) in truth.iter().enumerate() {
            let own = ProblemContext::side_of(s) == side;
            match t {
                TruthValue::Undefined => undefined_hit = true,
                TruthValue::True if !own => mistakes += 1,
                TruthValue::False if own => mistakes += 1,
                _ => {}
            }
        }
        CompatibilityReport {
            truth,
            mistakes,
            undefined_hit,
            informative,
            compatible: mistakes == 0 && !undefined_hit && informative,
        }
    }

    pub fn truth_string(&self) -> String {
        format_truth_vector(&self.truth)
    }
}

pub fn compatibility(rule: &RuleAst, ctx: &ProblemContext) -> CompatibilityReport {
    compatibility_with(&mut Evaluator::with_cache(ctx, false), rule)
}

/// Like [`compatibility`], reusing an evaluator's caches.
pub fn compatibility_with(ev: &mut Evaluator<'_>, rule: &RuleAst) -> CompatibilityReport {
    let truth = ev.eval_rule(rule);
    let informative = check_informative(rule, ev.context());
    CompatibilityReport::from_truth(rule.side(), truth, informative)
}

pub fn validate_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::config(format!("epsilon must lie in (0, 1), got {epsilon}")))
    }
}

/// `n ln(epsilon)`, or minus infinity for uninformative rules and rules that
/// are undefined on some example.
pub fn soft_log_likelihood(report: &CompatibilityReport, epsilon: f64) -> Result<f64> {
    validate_epsilon(epsilon)?;
    Ok(soft_log_likelihood_unchecked(report, epsilon))
}

pub(crate) fn soft_log_likelihood_unchecked(report: &CompatibilityReport, epsilon: f64) -> f64 {
    if !report.informative || report.undefined_hit {
        f64::NEG_INFINITY
    } else if report.mistakes == 0 {
        0.0
    } else {
        report.mistakes as f64 * epsilon.ln()
    }
}

/// Generation weights with every production the examples cannot license set
/// to zero, then renormalised.
pub fn pruned_weights(weights: &GrammarTable, facts: &PragmaticFacts) -> GrammarTable {
    let mut out = weights.clone();
    for p in Production::all() {
        if !facts.licenses(p, None) {
            out.set_weight(p, 0.0);
        }
    }
    out.normalized()
}
