//! Planar geometry on pixel sets: convex hulls, boundary tracing, perimeter
//! estimation and corner detection.

use std::f64::consts::PI;

use crate::mask::{Mask, Pixel};

/// Moore neighbourhood, clockwise on screen (y grows downwards), starting east.
const RING: [(i32, i32); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

fn ring_index(dx: i32, dy: i32) -> usize {
    RING.iter()
        .position(|&d| d == (dx, dy))
        .expect("offset is a unit neighbour step")
}

#[inline]
fn cross(o: Pixel, a: Pixel, b: Pixel) -> i64 {
    (a.0 - o.0) as i64 * (b.1 - o.1) as i64 - (a.1 - o.1) as i64 * (b.0 - o.0) as i64
}

/// Convex hull of the pixel centres (monotone chain), without collinear vertices.
pub fn convex_hull(mask: &Mask) -> Vec<Pixel> {
    let Some((_, y0, _, y1)) = mask.bbox() else {
        return Vec::new();
    };
    // Only the extreme pixels of every row can be hull vertices.
    let mut rows: Vec<Option<(i32, i32)>> = vec![None; (y1 - y0 + 1) as usize];
    for (x, y) in mask.pixels() {
        let r = &mut rows[(y - y0) as usize];
        *r = Some(match *r {
            None => (x, x),
            Some((lo, hi)) => (lo.min(x), hi.max(x)),
        });
    }
    let mut pts: Vec<Pixel> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if let Some((lo, hi)) = r {
            let y = y0 + i as i32;
            pts.push((*lo, y));
            if hi != lo {
                pts.push((*hi, y));
            }
        }
    }
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Pixel> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pixel> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// All pixels whose centres lie inside or on the convex polygon.
pub fn rasterize_convex(hull: &[Pixel]) -> Mask {
    match hull.len() {
        0 => Mask::empty(),
        1 => Mask::from_pixels([hull[0]]),
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let (x0, x1) = (a.0.min(b.0), a.0.max(b.0));
            let (y0, y1) = (a.1.min(b.1), a.1.max(b.1));
            Mask::from_fn(x0, y0, x1, y1, |x, y| cross(a, b, (x, y)) == 0)
        }
        _ => {
            let x0 = hull.iter().map(|p| p.0).min().unwrap();
            let x1 = hull.iter().map(|p| p.0).max().unwrap();
            let y0 = hull.iter().map(|p| p.1).min().unwrap();
            let y1 = hull.iter().map(|p| p.1).max().unwrap();
            let n = hull.len();
            Mask::from_fn(x0, y0, x1, y1, |x, y| {
                (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], (x, y)) >= 0)
            })
        }
    }
}

/// Filled convex hull of a mask.
pub fn hull_mask(mask: &Mask) -> Mask {
    rasterize_convex(&convex_hull(mask))
}

/// Outer boundary of the 8-connected component containing the first pixel of
/// `mask` in raster order, traced clockwise (Moore neighbour tracing).
///
/// Consecutive points are 8-neighbours; the closing step back to the first
/// point is implicit.
pub fn trace_contour(mask: &Mask) -> Vec<Pixel> {
    let Some(start) = mask.pixels().next() else {
        return Vec::new();
    };
    // The pixel west of the raster-first pixel is background.
    let first = next_on_contour(mask, start, 4);
    let Some((second, first_back)) = first else {
        return vec![start];
    };
    let mut contour = vec![start];
    let (mut current, mut back) = (second, first_back);
    // Guard against pathological loops; a contour never exceeds 4 steps per pixel.
    let limit = 4 * mask.count() + 8;
    while contour.len() <= limit {
        let (next, next_back) = next_on_contour(mask, current, back).expect("contour has a successor");
        if current == start && next == second {
            break;
        }
        contour.push(current);
        current = next;
        back = next_back;
    }
    contour
}

/// From `p` with background at ring position `back`, returns the next contour
/// pixel and the ring position (relative to it) of the last background pixel.
fn next_on_contour(mask: &Mask, p: Pixel, back: usize) -> Option<(Pixel, usize)> {
    let mut prev = back;
    for step in 1..=8 {
        let d = (back + step) % 8;
        let q = (p.0 + RING[d].0, p.1 + RING[d].1);
        if mask.contains(q.0, q.1) {
            let c = (p.0 + RING[prev].0, p.1 + RING[prev].1);
            return Some((q, ring_index(c.0 - q.0, c.1 - q.1)));
        }
        prev = d;
    }
    None
}

fn chain_codes(contour: &[Pixel]) -> Vec<usize> {
    let n = contour.len();
    (0..n)
        .map(|i| {
            let a = contour[i];
            let b = contour[(i + 1) % n];
            ring_index(b.0 - a.0, b.1 - a.1)
        })
        .collect()
}

/// Corrected chain-code length of a closed contour (even steps 0.980, odd
/// steps 1.406, minus 0.091 per direction change).
pub fn contour_perimeter(contour: &[Pixel]) -> f64 {
    if contour.len() < 2 {
        return 0.0;
    }
    let codes = chain_codes(contour);
    let n = codes.len();
    let mut even = 0usize;
    let mut odd = 0usize;
    let mut changes = 0usize;
    for i in 0..n {
        if codes[i].is_multiple_of(2) {
            even += 1;
        } else {
            odd += 1;
        }
        if codes[i] != codes[(i + n - 1) % n] {
            changes += 1;
        }
    }
    (0.980 * even as f64 + 1.406 * odd as f64 - 0.091 * changes as f64).max(0.0)
}

/// Shoelace area enclosed by a closed polygon.
pub fn polygon_area(poly: &[Pixel]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let twice: i64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.0 as i64 * b.1 as i64 - b.0 as i64 * a.1 as i64
        })
        .sum();
    twice.abs() as f64 / 2.0
}

/// Minimum turning angle (radians) at the arc-length window for a point to
/// count as part of a corner.
pub const CORNER_TURN: f64 = 50.0 * PI / 180.0;

/// Corners of a closed contour, returned as contour indices in order.
///
/// The turning angle at each point is measured between the chords to the
/// points one window before and after it, the window being 1/16 of the
/// contour length (at least 3 px). A smooth curve of radius r turns by about
/// window/r there, so circles stay near 22 degrees while polygon vertices
/// turn by their full exterior angle. Runs of points above [`CORNER_TURN`]
/// form one corner each, located at their sharpest point.
pub fn corners(contour: &[Pixel]) -> Vec<usize> {
    let n = contour.len();
    if n < 8 {
        return Vec::new();
    }
    let mut arc = Vec::with_capacity(n + 1);
    arc.push(0.0);
    for i in 0..n {
        let (a, b) = (contour[i], contour[(i + 1) % n]);
        let step = (((b.0 - a.0).pow(2) + (b.1 - a.1).pow(2)) as f64).sqrt();
        arc.push(arc[i] + step);
    }
    let total = arc[n];
    let window = (total / 16.0).max(3.0);
    if 2.0 * window >= total {
        return Vec::new();
    }
    let turning: Vec<f64> = (0..n)
        .map(|i| {
            let back = point_at(contour, &arc, arc[i] - window);
            let fwd = point_at(contour, &arc, arc[i] + window);
            let p = (contour[i].0 as f64, contour[i].1 as f64);
            let u = (p.0 - back.0, p.1 - back.1);
            let v = (fwd.0 - p.0, fwd.1 - p.1);
            let dot = u.0 * v.0 + u.1 * v.1;
            let det = u.0 * v.1 - u.1 * v.0;
            det.atan2(dot).abs()
        })
        .collect();
    let hot: Vec<bool> = turning.iter().map(|&t| t >= CORNER_TURN).collect();
    if hot.iter().all(|&h| h) {
        return Vec::new();
    }
    // Rotate so that index 0 starts a cold run, then collect hot runs.
    let offset = (0..n).find(|&i| !hot[i]).unwrap();
    let mut peaks: Vec<usize> = Vec::new();
    let mut run: Option<usize> = None;
    for k in 0..=n {
        let i = (offset + k) % n;
        if k < n && hot[i] {
            run = Some(match run {
                Some(best) if turning[best] >= turning[i] => best,
                _ => i,
            });
        } else if let Some(best) = run.take() {
            peaks.push(best);
        }
    }
    // Runs split by noise within one window belong to the same corner.
    let mut merged: Vec<usize> = Vec::new();
    for p in peaks {
        if let Some(&last) = merged.last() {
            if cyclic_gap(&arc, last, p) < window {
                if turning[p] > turning[last] {
                    *merged.last_mut().unwrap() = p;
                }
                continue;
            }
        }
        merged.push(p);
    }
    if merged.len() >= 2 {
        let (first, last) = (merged[0], *merged.last().unwrap());
        if cyclic_gap(&arc, last, first) < window {
            if turning[last] > turning[first] {
                merged[0] = last;
            }
            merged.pop();
        }
    }
    merged.sort_unstable();
    merged
}

fn cyclic_gap(arc: &[f64], from: usize, to: usize) -> f64 {
    let total = arc[arc.len() - 1];
    let d = arc[to] - arc[from];
    if d < 0.0 {
        d + total
    } else {
        d
    }
}

/// Point at arc length `s` (wrapped) along the closed contour, linearly interpolated.
fn point_at(contour: &[Pixel], arc: &[f64], s: f64) -> (f64, f64) {
    let n = contour.len();
    let total = arc[n];
    let s = s.rem_euclid(total);
    // arc is sorted; find segment i with arc[i] <= s < arc[i + 1].
    let i = match arc.binary_search_by(|a| a.partial_cmp(&s).unwrap()) {
        Ok(i) => i.min(n - 1),
        Err(i) => i - 1,
    };
    let a = contour[i];
    let b = contour[(i + 1) % n];
    let len = arc[i + 1] - arc[i];
    let t = if len > 0.0 { (s - arc[i]) / len } else { 0.0 };
    (a.0 as f64 + t * (b.0 - a.0) as f64, a.1 as f64 + t * (b.1 - a.1) as f64)
}
