//! Probabilistic generation from the grammar and its properness check.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lang::{GrammarTable, Nonterminal, Production};

/// `m[i][j]`: expected number of `j` children when expanding nonterminal `i`.
pub fn branching_matrix(weights: &GrammarTable) -> [[f64; 6]; 6] {
    let mut m = [[0.0; 6]; 6];
    for nt in Nonterminal::ALL {
        for &p in nt.productions() {
            for child in p.children() {
                m[nt.index()][child.index()] += weights.weight(p);
            }
        }
    }
    m
}

fn mat_mul(a: &[[f64; 6]; 6], b: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    let mut c = [[0.0; 6]; 6];
    for i in 0..6 {
        for k in 0..6 {
            if a[i][k] != 0.0 {
                for j in 0..6 {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn row_norm(a: &[[f64; 6]; 6]) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Spectral radius via Gelfand's formula, `lim ||M^k||^(1/k)`, evaluated
/// with repeated squaring and rescaling.
pub fn spectral_radius(m: &[[f64; 6]; 6]) -> f64 {
    let n0 = row_norm(m);
    if n0 == 0.0 {
        return 0.0;
    }
    let mut a = m.map(|r| r.map(|x| x / n0));
    // a = M^(2^k) / exp(scale)
    let mut scale = n0.ln();
    let mut power = 1.0f64;
    for _ in 0..48 {
        a = mat_mul(&a, &a);
        power *= 2.0;
        let n = row_norm(&a);
        if n == 0.0 {
            return 0.0;
        }
        a = a.map(|r| r.map(|x| x / n));
        scale = 2.0 * scale + n.ln();
    }
    (scale / power).exp()
}

/// True iff random derivations from `R` have finite expected size: every
/// nonterminal reachable from `R` can be expanded and the branching
/// matrix has spectral radius below one.
pub fn check_properness(weights: &GrammarTable) -> bool {
    let m = branching_matrix(weights);
    let mut reachable = [false; 6];
    let mut stack = vec![Nonterminal::R];
    while let Some(nt) = stack.pop() {
        if std::mem::replace(&mut reachable[nt.index()], true) {
            continue;
        }
        for other in Nonterminal::ALL {
            if m[nt.index()][other.index()] > 0.0 {
                stack.push(other);
            }
        }
    }
    let dead = weights.dead_nonterminals();
    if dead.iter().any(|nt| reachable[nt.index()]) {
        return false;
    }
    spectral_radius(&m) < 1.0
}

/// Halves the weight of recursive productions until the grammar is proper.
pub fn make_proper(weights: &GrammarTable) -> Result<GrammarTable> {
    let mut w = weights.clone().normalized();
    for _ in 0..64 {
        if check_properness(&w) {
            return Ok(w);
        }
        for p in Production::all() {
            if p.is_recursive() {
                w.set_weight(p, w.weight(p) / 2.0);
            }
        }
        w = w.normalized();
    }
    let dead = weights.dead_nonterminals();
    Err(Error::config(if dead.is_empty() {
        "generation weights do not define a proper grammar".to_string()
    } else {
        format!("no production with positive weight for {dead:?}")
    }))
}

/// Default bound on generated subtree size; larger draws are redrawn.
pub const DEFAULT_MAX_NODES: usize = 48;

/// A proper weighted grammar ready for sampling.
#[derive(Clone, Debug)]
pub struct Pcfg {
    table: GrammarTable,
    choices: Vec<Option<(Vec<Production>, WeightedIndex<f64>)>>,
    max_nodes: usize,
}

impl Pcfg {
    pub fn new(table: GrammarTable) -> Result<Pcfg> {
        Pcfg::with_max_nodes(table, DEFAULT_MAX_NODES)
    }

    pub fn with_max_nodes(table: GrammarTable, max_nodes: usize) -> Result<Pcfg> {
        if !check_properness(&table) {
            return Err(Error::config("generation weights do not define a proper grammar"));
        }
        let choices = Nonterminal::ALL
            .iter()
            .map(|&nt| {
                let live: Vec<Production> = table.live(nt).collect();
                if live.is_empty() {
                    return None;
                }
                let dist = WeightedIndex::new(live.iter().map(|p| table.weight(*p))).expect("positive weights");
                Some((live, dist))
            })
            .collect();
        Ok(Pcfg {
            table,
            choices,
            max_nodes: max_nodes.max(1),
        })
    }

    pub fn table(&self) -> &GrammarTable {
        &self.table
    }

    /// Draws a derivation of `root` (preorder). Draws longer than the node
    /// bound are discarded and redrawn.
    pub fn generate<R: Rng + ?Sized>(&self, root: Nonterminal, rng: &mut R) -> Vec<Production> {
        let mut nodes = Vec::new();
        'draw: loop {
            nodes.clear();
            let mut stack = vec![root];
            while let Some(nt) = stack.pop() {
                if nodes.len() >= self.max_nodes {
                    continue 'draw;
                }
                let (live, dist) = self.choices[nt.index()]
                    .as_ref()
                    .expect("proper grammar expands every reachable nonterminal");
                let p = live[dist.sample(rng)];
                nodes.push(p);
                stack.extend(p.children().iter().rev());
            }
            return nodes;
        }
    }

    /// Log generation probability of a derivation (ignoring the size bound,
    /// whose normaliser cancels in proposal ratios).
    pub fn log_probability(&self, nodes: &[Production]) -> f64 {
        nodes.iter().map(|&p| self.table.weight(p).ln()).sum()
    }
}
