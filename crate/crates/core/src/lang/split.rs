//! Problem-wide high/low thresholds for attributes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// When a gap counts as perceptually relevant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitRule {
    pub ratio: f64,
    pub min_range_fraction: f64,
    /// If set, the gap only has to reach this absolute size.
    pub min_abs_gap: Option<f64>,
}

/// A threshold between a low and a high class.
///
/// For circular attributes values are first rotated so that `origin` maps
/// to zero; the threshold lives in the rotated coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub threshold: f64,
    pub origin: Option<f64>,
}

impl Split {
    pub fn position(&self, value: f64) -> f64 {
        match self.origin {
            Some(o) => (value - o).rem_euclid(PI),
            None => value,
        }
    }

    pub fn is_high(&self, value: f64) -> bool {
        self.position(value) > self.threshold
    }
}

/// Threshold at the midpoint of the largest gap in `values`, if relevant.
///
/// Circular values (angles modulo pi) are rotated so the largest
/// wrap-around gap becomes the ends of the range before searching.
pub fn perceptual_split(values: &[f64], circular: bool, rule: &SplitRule) -> Option<Split> {
    if values.len() < 2 {
        return None;
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    if !circular {
        return linear_split(&sorted, rule).map(|threshold| Split {
            threshold,
            origin: None,
        });
    }
    let n = sorted.len();
    let mut origin = sorted[0];
    let mut widest = sorted[0] + PI - sorted[n - 1];
    for w in sorted.windows(2) {
        if w[1] - w[0] > widest {
            widest = w[1] - w[0];
            origin = w[1];
        }
    }
    let mut rotated: Vec<f64> = sorted.iter().map(|v| (v - origin).rem_euclid(PI)).collect();
    rotated.sort_by(f64::total_cmp);
    linear_split(&rotated, rule).map(|threshold| Split {
        threshold,
        origin: Some(origin),
    })
}

fn linear_split(sorted: &[f64], rule: &SplitRule) -> Option<f64> {
    let range = sorted[sorted.len() - 1] - sorted[0];
    if range <= 0.0 {
        return None;
    }
    let gaps: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    // First widest gap wins ties.
    let (best, &gap) = gaps
        .iter()
        .enumerate()
        .fold((0, &gaps[0]), |acc, (i, g)| if *g > *acc.1 { (i, g) } else { acc });
    let relevant = match rule.min_abs_gap {
        Some(min) => gap >= min,
        None => {
            let rest = gaps.len() - 1;
            let mean_rest = if rest == 0 {
                0.0
            } else {
                (gaps.iter().sum::<f64>() - gap) / rest as f64
            };
            gap >= rule.ratio * mean_rest && gap >= rule.min_range_fraction * range
        }
    };
    relevant.then(|| sorted[best] + gap / 2.0)
}
