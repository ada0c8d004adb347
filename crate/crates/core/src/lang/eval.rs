//! Tri-valued evaluation of rules over the twelve scenes of a problem.
//!
//! An [`Evaluator`] owns per-scene object universes (original figures plus
//! interned synthetic objects from `GET`) and memoises transform outputs,
//! pairwise relations and whole-rule truth vectors. It is meant to be owned
//! by a single sampler chain.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ast::{subtree_end, RuleAst};
use super::grammar::Production;
use crate::features::{self, Attribute, FigureObject, FillClass, ShapeClass, Transform};
use crate::ingest::{ProblemContext, SCENES, SCENES_PER_SIDE};
use crate::mask::Mask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    True,
    False,
    Undefined,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    /// One-letter form: `T`, `F` or `U`.
    pub fn symbol(self) -> char {
        match self {
            TruthValue::True => 'T',
            TruthValue::False => 'F',
            TruthValue::Undefined => 'U',
        }
    }

    pub fn is_defined(self) -> bool {
        self != TruthValue::Undefined
    }
}

/// Truth values of a rule body on scenes 0-11.
pub type TruthVector = [TruthValue; SCENES];

/// Renders a truth vector as `TTTTTT FFFFFF`.
pub fn format_truth_vector(v: &TruthVector) -> String {
    let left: String = v[..SCENES_PER_SIDE].iter().map(|t| t.symbol()).collect();
    let right: String = v[SCENES_PER_SIDE..].iter().map(|t| t.symbol()).collect();
    format!("{left} {right}")
}

/// A duplicate-free set of objects of one scene, as sorted universe indices.
/// Indices below the scene's figure count refer to original figures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ObjectSet(Vec<u32>);

impl ObjectSet {
    pub fn new(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        ObjectSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.0.binary_search(&idx).is_ok()
    }

    pub fn union(&self, other: &ObjectSet) -> ObjectSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjectSet::new(v)
    }

    pub fn intersection(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn difference(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.iter().copied().filter(|&i| !other.contains(i)).collect())
    }

    fn filter(&self, mut keep: impl FnMut(u32) -> bool) -> ObjectSet {
        ObjectSet(self.0.iter().copied().filter(|&i| keep(i)).collect())
    }
}

#[derive(Debug, Default)]
struct Universe {
    originals: usize,
    synthetic: Vec<FigureObject>,
    intern: HashMap<Mask, u32>,
    transforms: HashMap<(u32, Transform), Vec<u32>>,
    /// `inside[a * n + b]` for original figures.
    inside_orig: Vec<bool>,
    inside: HashMap<(u32, u32), bool>,
    distances: HashMap<(u32, u32), f64>,
}

/// Counters for cache behaviour.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalStats {
    pub rule_evaluations: u64,
    pub cache_hits: u64,
}

/// Default bound on memoised rule bodies before the cache is flushed.
pub const DEFAULT_CACHE_LIMIT: usize = 1 << 20;

pub struct Evaluator<'a> {
    ctx: &'a ProblemContext,
    universes: Vec<Universe>,
    rules: HashMap<Box<[Production]>, TruthVector>,
    cache_rules: bool,
    cache_limit: usize,
    /// L-subtree results over all scenes, per node index, within one rule.
    scratch: HashMap<usize, Vec<Option<ObjectSet>>>,
    stats: EvalStats,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a ProblemContext) -> Self {
        Evaluator::with_cache(ctx, true)
    }

    /// With `cache_rules` false every rule is evaluated from scratch.
    pub fn with_cache(ctx: &'a ProblemContext, cache_rules: bool) -> Self {
        let universes = ctx
            .scenes()
            .iter()
            .map(|scene| {
                let n = scene.objects.len();
                let mut inside_orig = vec![false; n * n];
                for a in 0..n {
                    for b in 0..n {
                        if a != b {
                            inside_orig[a * n + b] = features::inside(&scene.objects[a], &scene.objects[b]);
                        }
                    }
                }
                Universe {
                    originals: n,
                    inside_orig,
                    ..Universe::default()
                }
            })
            .collect();
        Evaluator {
            ctx,
            universes,
            rules: HashMap::new(),
            cache_rules,
            cache_limit: DEFAULT_CACHE_LIMIT,
            scratch: HashMap::new(),
            stats: EvalStats::default(),
        }
    }

    pub fn set_cache_limit(&mut self, limit: usize) {
        self.cache_limit = limit.max(1);
    }

    pub fn context(&self) -> &'a ProblemContext {
        self.ctx
    }

    pub fn stats(&self) -> EvalStats {
        self.stats
    }

    /// The object behind a universe index of a scene.
    pub fn object(&self, scene: usize, idx: u32) -> &FigureObject {
        let u = &self.universes[scene];
        let i = idx as usize;
        if i < u.originals {
            &self.ctx.scene(scene).objects[i]
        } else {
            &u.synthetic[i - u.originals]
        }
    }

    /// Truth values of the rule's body on all twelve scenes.
    pub fn eval_rule(&mut self, rule: &RuleAst) -> TruthVector {
        self.eval_body(rule.body())
    }

    /// Evaluates an S-expression (preorder) on all scenes.
    pub fn eval_body(&mut self, body: &[Production]) -> TruthVector {
        if self.cache_rules {
            if let Some(v) = self.rules.get(body) {
                self.stats.cache_hits += 1;
                return *v;
            }
        }
        self.stats.rule_evaluations += 1;
        self.scratch.clear();
        let mut out = [TruthValue::Undefined; SCENES];
        for (s, slot) in out.iter_mut().enumerate() {
            *slot = self.s_at(body, 0, s).0;
        }
        self.scratch.clear();
        if self.cache_rules {
            if self.rules.len() >= self.cache_limit {
                self.rules.clear();
            }
            self.rules.insert(body.into(), out);
        }
        out
    }

    /// Evaluates an S-expression on one scene.
    pub fn eval_s(&mut self, expr: &[Production], scene: usize) -> TruthValue {
        self.scratch.clear();
        let v = self.s_at(expr, 0, scene).0;
        self.scratch.clear();
        v
    }

    /// Evaluates an L-expression on one scene; `None` is undefined.
    pub fn eval_l(&mut self, expr: &[Production], scene: usize) -> Option<ObjectSet> {
        self.l_at(expr, 0, scene).0
    }

    /// Values of an attribute over a set; `None` when DISTANCE meets a singleton.
    pub fn values(&mut self, scene: usize, set: &ObjectSet, attr: Attribute) -> Option<Vec<f64>> {
        if attr != Attribute::Distance {
            return Some(
                set.members()
                    .iter()
                    .map(|&i| self.object(scene, i).attributes.get(attr).expect("intrinsic"))
                    .collect(),
            );
        }
        if set.len() == 1 {
            return None;
        }
        let m = set.members();
        let mut out = Vec::with_capacity(m.len());
        for &a in m {
            let mut best = f64::INFINITY;
            for &b in m {
                if a != b {
                    best = best.min(self.distance(scene, a, b));
                }
            }
            out.push(best);
        }
        Some(out)
    }

    fn distance(&mut self, scene: usize, a: u32, b: u32) -> f64 {
        let n = self.universes[scene].originals as u32;
        if a < n && b < n {
            return self.ctx.scene(scene).distance(a as usize, b as usize);
        }
        let key = (a.min(b), a.max(b));
        if let Some(&d) = self.universes[scene].distances.get(&key) {
            return d;
        }
        let d = features::min_pair_distance(self.object(scene, a), self.object(scene, b));
        self.universes[scene].distances.insert(key, d);
        d
    }

    /// Whether object `a` lies inside object `b`.
    fn inside(&mut self, scene: usize, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        let u = &self.universes[scene];
        let n = u.originals as u32;
        if a < n && b < n {
            return u.inside_orig[(a * n + b) as usize];
        }
        if let Some(&r) = u.inside.get(&(a, b)) {
            return r;
        }
        let r = features::inside(self.object(scene, a), self.object(scene, b));
        self.universes[scene].inside.insert((a, b), r);
        r
    }

    fn transform(&mut self, scene: usize, idx: u32, kind: Transform) -> Vec<u32> {
        if let Some(v) = self.universes[scene].transforms.get(&(idx, kind)) {
            return v.clone();
        }
        let masks = features::transform_mask(self.object(scene, idx), kind);
        let height = self.ctx.scene(scene).height;
        let mut out = Vec::with_capacity(masks.len());
        for m in masks {
            let u = &mut self.universes[scene];
            let id = match u.intern.get(&m) {
                Some(&id) => id,
                None => {
                    let id = (u.originals + u.synthetic.len()) as u32;
                    let ordinal = u.synthetic.len();
                    u.synthetic.push(FigureObject::new(ordinal, m.clone(), height, true));
                    u.intern.insert(m, id);
                    id
                }
            };
            out.push(id);
        }
        self.universes[scene].transforms.insert((idx, kind), out.clone());
        out
    }

    fn originals(&self, scene: usize) -> ObjectSet {
        ObjectSet((0..self.universes[scene].originals as u32).collect())
    }

    fn l_at(&mut self, nodes: &[Production], i: usize, s: usize) -> (Option<ObjectSet>, usize) {
        use Production::*;
        let p = nodes[i];
        match p {
            Figures | Circles | Triangles | Rectangles => {
                let class = p.shape_terminal().expect("shape terminal");
                let objs = &self.ctx.scene(s).objects;
                let set = ObjectSet(
                    (0..objs.len() as u32)
                        .filter(|&k| class.is_none_or(|c| objs[k as usize].shape == c))
                        .collect(),
                );
                (Some(set), i + 1)
            }
            Cap | Cup | SetMinus => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let (b, k) = self.l_at(nodes, j, s);
                let r = match (a, b) {
                    (Some(a), Some(b)) => Some(match p {
                        Cap => a.intersection(&b),
                        Cup => a.union(&b),
                        _ => a.difference(&b),
                    }),
                    _ => None,
                };
                (r, k)
            }
            Inside | Contains => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let Some(a) = a else { return (None, j) };
                let all = self.originals(s);
                let r = all.filter(|o| {
                    a.members().iter().any(|&m| {
                        m != o
                            && if p == Inside {
                                self.inside(s, o, m)
                            } else {
                                self.inside(s, m, o)
                            }
                    })
                });
                (Some(r), j)
            }
            Aligned => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                (a.map(|a| self.aligned(s, &a)), j)
            }
            Get => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let kind = nodes[j].transform().expect("T terminal");
                let Some(a) = a else { return (None, j + 1) };
                let mut out = Vec::new();
                for &m in a.members() {
                    out.extend(self.transform(s, m, kind));
                }
                (Some(ObjectSet::new(out)), j + 1)
            }
            Solid | Outline => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let want = p.fill_filter().expect("fill filter");
                (a.map(|a| a.filter(|m| self.object(s, m).fill == want)), j)
            }
            Big | Small => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let r = a.and_then(|a| self.high_low(s, &a, Attribute::Size, p == Big));
                (r, j)
            }
            High | Low => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let attr = nodes[j].attribute().expect("A terminal");
                let r = a.and_then(|a| self.high_low(s, &a, attr, p == High));
                (r, j + 1)
            }
            other => unreachable!("{other} is not an L production"),
        }
    }

    fn high_low(&mut self, s: usize, set: &ObjectSet, attr: Attribute, high: bool) -> Option<ObjectSet> {
        if set.is_empty() {
            return Some(ObjectSet::default());
        }
        let values = self.values(s, set, attr)?;
        let Some(split) = self.ctx.split(attr) else {
            return Some(ObjectSet::default());
        };
        Some(ObjectSet(
            set.members()
                .iter()
                .zip(&values)
                .filter(|(_, &v)| split.is_high(v) == high)
                .map(|(&m, _)| m)
                .collect(),
        ))
    }

    /// Largest subset (at least `aligned_min`) whose centroids lie on a line.
    fn aligned(&self, s: usize, set: &ObjectSet) -> ObjectSet {
        let sem = &self.ctx.semantics;
        let min = sem.aligned_min.max(2);
        if set.len() < min {
            return ObjectSet::default();
        }
        let mut members: Vec<(u32, (f64, f64))> =
            set.members().iter().map(|&m| (m, self.object(s, m).centroid)).collect();
        // Canonical order independent of universe numbering.
        members.sort_by(|a, b| {
            a.1 .0
                .total_cmp(&b.1 .0)
                .then(a.1 .1.total_cmp(&b.1 .1))
                .then(a.0.cmp(&b.0))
        });
        let points: Vec<(f64, f64)> = members.iter().map(|m| m.1).collect();
        let tol = sem.aligned_tolerance_deg.to_radians();
        let chosen = if members.len() <= sem.aligned_exhaustive_limit {
            largest_collinear_exhaustive(&points, min, tol)
        } else {
            largest_collinear_greedy(&points, min, tol)
        };
        ObjectSet::new(chosen.into_iter().map(|k| members[k].0).collect())
    }

    fn s_at(&mut self, nodes: &[Production], i: usize, s: usize) -> (TruthValue, usize) {
        use Production::*;
        use TruthValue::*;
        let p = nodes[i];
        match p {
            Exists => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                (a.map_or(Undefined, |a| TruthValue::from_bool(!a.is_empty())), j)
            }
            Exactly => {
                let n = nodes[i + 1].count().expect("N terminal");
                let (a, j) = self.l_at(nodes, i + 2, s);
                (a.map_or(Undefined, |a| TruthValue::from_bool(a.len() == n)), j)
            }
            EqualNum | More => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let (b, k) = self.l_at(nodes, j, s);
                let v = match (a, b) {
                    (Some(a), Some(b)) if !(a.is_empty() && b.is_empty()) => TruthValue::from_bool(if p == More {
                        a.len() > b.len()
                    } else {
                        a.len() == b.len()
                    }),
                    _ => Undefined,
                };
                (v, k)
            }
            GreaterLLA | MoreSimLLA => {
                let (a, j) = self.l_at(nodes, i + 1, s);
                let (b, k) = self.l_at(nodes, j, s);
                let attr = nodes[k].attribute().expect("A terminal");
                let v = match (a, b) {
                    (Some(a), Some(b)) => {
                        if p == GreaterLLA {
                            self.greater(s, &a, &b, attr)
                        } else {
                            self.more_similar(s, &a, &b, attr)
                        }
                    }
                    _ => Undefined,
                };
                (v, k + 1)
            }
            GreaterLA | MoreSimLA => {
                let end = subtree_end(nodes, i + 1);
                let attr = nodes[end].attribute().expect("A terminal");
                let v = self.across_sides(nodes, i + 1, s, attr, p == GreaterLA);
                (v, end + 1)
            }
            other => unreachable!("{other} is not an S production"),
        }
    }

    fn greater(&mut self, s: usize, a: &ObjectSet, b: &ObjectSet, attr: Attribute) -> TruthValue {
        if a.is_empty() || b.is_empty() {
            return TruthValue::Undefined;
        }
        match (self.values(s, a, attr), self.values(s, b, attr)) {
            (Some(va), Some(vb)) => TruthValue::from_bool(min_of(&va) > max_of(&vb)),
            _ => TruthValue::Undefined,
        }
    }

    fn more_similar(&mut self, s: usize, a: &ObjectSet, b: &ObjectSet, attr: Attribute) -> TruthValue {
        if a.len() < 2 || b.len() < 2 {
            return TruthValue::Undefined;
        }
        match (self.values(s, a, attr), self.values(s, b, attr)) {
            (Some(va), Some(vb)) => {
                let gap = self.ctx.semantics.dispersion_log_gap;
                TruthValue::from_bool(log_dispersion(&vb, attr) - log_dispersion(&va, attr) > gap)
            }
            _ => TruthValue::Undefined,
        }
    }

    /// L-subtree at `start` on every scene, computed once per rule.
    fn all_scenes(&mut self, nodes: &[Production], start: usize) -> Vec<Option<ObjectSet>> {
        if let Some(v) = self.scratch.get(&start) {
            return v.clone();
        }
        let v: Vec<Option<ObjectSet>> = (0..SCENES).map(|s| self.l_at(nodes, start, s).0).collect();
        self.scratch.insert(start, v.clone());
        v
    }

    /// GREATERLA / MORESIMLA: this scene's set against the pooled sets of the
    /// scenes on the other side.
    fn across_sides(
        &mut self,
        nodes: &[Production],
        start: usize,
        s: usize,
        attr: Attribute,
        greater: bool,
    ) -> TruthValue {
        use TruthValue::*;
        let sets = self.all_scenes(nodes, start);
        let Some(this) = &sets[s] else {
            return Undefined;
        };
        let opposite = ProblemContext::indices(ProblemContext::side_of(s).opposite());
        if greater {
            if this.is_empty() {
                return Undefined;
            }
            let Some(mine) = self.values(s, this, attr) else {
                return Undefined;
            };
            let mut pooled = Vec::new();
            for o in opposite {
                let Some(set) = &sets[o] else {
                    return Undefined;
                };
                match self.values(o, set, attr) {
                    Some(v) => pooled.extend(v),
                    None => return Undefined,
                }
            }
            if pooled.is_empty() {
                return Undefined;
            }
            TruthValue::from_bool(min_of(&mine) > max_of(&pooled))
        } else {
            if this.len() < 2 {
                return Undefined;
            }
            let Some(mine) = self.values(s, this, attr) else {
                return Undefined;
            };
            let mut logs = Vec::new();
            for o in opposite {
                let Some(set) = &sets[o] else {
                    return Undefined;
                };
                if set.len() < 2 {
                    continue;
                }
                match self.values(o, set, attr) {
                    Some(v) => logs.push(log_dispersion(&v, attr)),
                    None => return Undefined,
                }
            }
            if logs.is_empty() {
                return Undefined;
            }
            let mean = logs.iter().sum::<f64>() / logs.len() as f64;
            TruthValue::from_bool(log_dispersion(&mine, attr) < mean - self.ctx.semantics.dispersion_log_gap)
        }
    }
}

/// Truth values of a rule on all twelve scenes, without caching.
pub fn eval_rule(rule: &RuleAst, ctx: &ProblemContext) -> TruthVector {
    Evaluator::with_cache(ctx, false).eval_rule(rule)
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Floor for logarithms of dispersions.
const LOG_FLOOR: f64 = 1e-12;

/// Log of the within-set dispersion: sample variance, or circular variance of
/// the doubled angle for orientation.
pub fn log_dispersion(values: &[f64], attr: Attribute) -> f64 {
    let n = values.len() as f64;
    let v = if attr.is_circular() {
        let (c, s) = values
            .iter()
            .fold((0.0, 0.0), |(c, s), a| (c + (2.0 * a).cos(), s + (2.0 * a).sin()));
        1.0 - (c * c + s * s).sqrt() / n
    } else {
        let mean = values.iter().sum::<f64>() / n;
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    };
    v.max(LOG_FLOOR).ln()
}

/// Spread of pairwise centroid directions (mod pi) of the given points.
pub fn direction_spread(points: &[(f64, f64)]) -> f64 {
    let mut angles = Vec::with_capacity(points.len() * points.len() / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (dx, dy) = (points[j].0 - points[i].0, points[j].1 - points[i].1);
            angles.push(dy.atan2(dx).rem_euclid(PI));
        }
    }
    if angles.len() < 2 {
        return 0.0;
    }
    angles.sort_by(f64::total_cmp);
    let mut widest = angles[0] + PI - angles[angles.len() - 1];
    for w in angles.windows(2) {
        widest = widest.max(w[1] - w[0]);
    }
    PI - widest
}

fn collinear(points: &[(f64, f64)], idx: &[usize], tol: f64) -> bool {
    let pts: Vec<(f64, f64)> = idx.iter().map(|&k| points[k]).collect();
    direction_spread(&pts) <= tol
}

/// Largest collinear index set, lexicographically first among equals.
fn largest_collinear_exhaustive(points: &[(f64, f64)], min: usize, tol: f64) -> Vec<usize> {
    let n = points.len();
    for size in (min..=n).rev() {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            if collinear(points, &comb, tol) {
                return comb;
            }
            // Next combination in lexicographic order.
            let mut k = size;
            while k > 0 && comb[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            comb[k - 1] += 1;
            for t in k..size {
                comb[t] = comb[t - 1] + 1;
            }
        }
    }
    Vec::new()
}

/// Grows a line from every seed pair, keeping the largest result.
fn largest_collinear_greedy(points: &[(f64, f64)], min: usize, tol: f64) -> Vec<usize> {
    let n = points.len();
    let mut best: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut set = vec![i, j];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                set.push(k);
                if !collinear(points, &set, tol) {
                    set.pop();
                }
            }
            set.sort_unstable();
            if set.len() > best.len() || (set.len() == best.len() && set < best) {
                best = set;
            }
        }
    }
    if best.len() >= min {
        best
    } else {
        Vec::new()
    }
}

/// Classes a shape terminal can select, in grammar order.
pub const SHAPE_CLASSES: [ShapeClass; 3] = [ShapeClass::Circle, ShapeClass::Triangle, ShapeClass::Rectangle];

/// Fill classes in grammar order.
pub const FILL_CLASSES: [FillClass; 2] = [FillClass::Solid, FillClass::Outline];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_of_collinear_points_is_zero() {
        let pts = [(0.0, 0.0), (10.0, 10.0), (20.0, 20.0)];
        assert!(direction_spread(&pts) < 1e-12);
        let bent = [(0.0, 0.0), (10.0, 0.0), (20.0, 5.0)];
        assert!(direction_spread(&bent) > 0.2);
        // Near-vertical lines straddle the wrap point of the angle range.
        let vert = [(0.0, 0.0), (0.1, 10.0), (-0.1, 20.0)];
        assert!(direction_spread(&vert) < 0.05);
    }

    #[test]
    fn exhaustive_and_greedy_agree_on_a_line_plus_noise() {
        let pts = [
            (0.0, 0.0),
            (50.0, 3.0),
            (10.0, 10.0),
            (20.0, 20.0),
            (30.0, 30.0),
            (5.0, 40.0),
        ];
        let tol = 5f64.to_radians();
        let ex = largest_collinear_exhaustive(&pts, 3, tol);
        assert_eq!(ex, vec![0, 2, 3, 4]);
        assert_eq!(largest_collinear_greedy(&pts, 3, tol), ex);
        assert!(largest_collinear_exhaustive(&pts[..2], 3, tol).is_empty());
    }

    #[test]
    fn dispersion_conventions() {
        assert!((log_dispersion(&[1.0, 3.0], Attribute::Size) - 2f64.ln()).abs() < 1e-12);
        let same = log_dispersion(&[0.1, 0.1 + PI - 1e-9], Attribute::Orientation);
        assert!(same < -15.0);
        assert_eq!(log_dispersion(&[2.0, 2.0], Attribute::Size), LOG_FLOOR.ln());
    }

    #[test]
    fn object_set_algebra() {
        let a = ObjectSet::new(vec![3, 1, 2, 3]);
        let b = ObjectSet::new(vec![2, 5]);
        assert_eq!(a.members(), &[1, 2, 3]);
        assert_eq!(a.union(&b).members(), &[1, 2, 3, 5]);
        assert_eq!(a.intersection(&b).members(), &[2]);
        assert_eq!(a.difference(&b).members(), &[1, 3]);
    }
}
