//! Per-object visual attributes, shape and fill classes, and the relational
//! and transforming operations on figures (inside, distance, hulls, holes).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom;
use crate::mask::{Mask, Pixel};

/// Numerical attributes a rule can compare. `Distance` is contextual: it is
/// defined only relative to a set of objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Attribute {
    XPos,
    YPos,
    Distance,
    Orientation,
    NCorners,
    Color,
    Size,
    Compactness,
    Convexity,
    Elongation,
}

impl Attribute {
    pub const ALL: [Attribute; 10] = [
        Attribute::XPos,
        Attribute::YPos,
        Attribute::Distance,
        Attribute::Orientation,
        Attribute::NCorners,
        Attribute::Color,
        Attribute::Size,
        Attribute::Compactness,
        Attribute::Convexity,
        Attribute::Elongation,
    ];

    pub fn is_circular(self) -> bool {
        self == Attribute::Orientation
    }

    pub fn name(self) -> &'static str {
        match self {
            Attribute::XPos => "XPOS",
            Attribute::YPos => "YPOS",
            Attribute::Distance => "DISTANCE",
            Attribute::Orientation => "ORIENTATION",
            Attribute::NCorners => "NCORNERS",
            Attribute::Color => "COLOR",
            Attribute::Size => "SIZE",
            Attribute::Compactness => "COMPACTNESS",
            Attribute::Convexity => "CONVEXITY",
            Attribute::Elongation => "ELONGATION",
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttributeVector {
    pub xpos: f64,
    /// Grows upwards on the page.
    pub ypos: f64,
    /// Natural log of the pixel count.
    pub size: f64,
    /// Major axis angle in `[0, pi)`, counter-clockwise from the x axis.
    pub orientation: f64,
    pub convexity: f64,
    pub compactness: f64,
    pub elongation: f64,
    pub color: f64,
    pub ncorners: f64,
}

impl AttributeVector {
    /// Intrinsic attribute value; `None` for [`Attribute::Distance`].
    pub fn get(&self, attr: Attribute) -> Option<f64> {
        Some(match attr {
            Attribute::XPos => self.xpos,
            Attribute::YPos => self.ypos,
            Attribute::Distance => return None,
            Attribute::Orientation => self.orientation,
            Attribute::NCorners => self.ncorners,
            Attribute::Color => self.color,
            Attribute::Size => self.size,
            Attribute::Compactness => self.compactness,
            Attribute::Convexity => self.convexity,
            Attribute::Elongation => self.elongation,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeClass {
    Circle,
    Triangle,
    Rectangle,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FillClass {
    Solid,
    Outline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    Hulls,
    Holes,
}

/// Colour at or above which a figure counts as solid.
pub const SOLID_THRESHOLD: f64 = 0.5;
/// Holes smaller than this are treated as rasterisation debris.
pub const MIN_HOLE_PIXELS: usize = 5;

/// One figure: a connected set of foreground pixels and everything derived from it.
#[derive(Clone, Debug)]
pub struct FigureObject {
    pub id: usize,
    pub mask: Mask,
    pub pixel_count: usize,
    /// Raster coordinates `(column, row)`.
    pub centroid: (f64, f64),
    pub attributes: AttributeVector,
    pub shape: ShapeClass,
    pub fill: FillClass,
    pub synthetic: bool,
    filled: Mask,
    boundary: Vec<Pixel>,
}

impl FigureObject {
    /// Analyses `mask` inside an image of the given height (used to flip `ypos`).
    ///
    /// Synthetic objects are filled regions and are always classed solid.
    pub fn new(id: usize, mask: Mask, frame_height: usize, synthetic: bool) -> Self {
        assert!(!mask.is_empty(), "figure needs at least one pixel");
        let filled = mask.filled();
        let attributes = compute_attributes_with_fill(&mask, &filled, frame_height);
        let shape = classify_filled(&filled, attributes.compactness);
        let fill = if synthetic {
            FillClass::Solid
        } else {
            classify_color(attributes.color)
        };
        let boundary = mask.boundary();
        let pixel_count = mask.count();
        let centroid = centroid(&mask);
        FigureObject {
            id,
            mask,
            pixel_count,
            centroid,
            attributes,
            shape,
            fill,
            synthetic,
            filled,
            boundary,
        }
    }

    /// The figure with all its holes filled in.
    pub fn filled(&self) -> &Mask {
        &self.filled
    }

    pub fn boundary(&self) -> &[Pixel] {
        &self.boundary
    }
}

fn centroid(mask: &Mask) -> (f64, f64) {
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut n = 0.0;
    for (x, y) in mask.pixels() {
        sx += x as f64;
        sy += y as f64;
        n += 1.0;
    }
    (sx / n, sy / n)
}

/// All nine intrinsic attributes of a pixel set.
pub fn compute_attributes(mask: &Mask, frame_height: usize) -> AttributeVector {
    compute_attributes_with_fill(mask, &mask.filled(), frame_height)
}

fn compute_attributes_with_fill(mask: &Mask, filled: &Mask, frame_height: usize) -> AttributeVector {
    let n = mask.count() as f64;
    let (cx, cy) = centroid(mask);

    // Second moments in page coordinates (y up). Each pixel is a unit square,
    // which contributes 1/12 to both variances.
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (x, y) in mask.pixels() {
        let dx = x as f64 - cx;
        let dy = -(y as f64 - cy);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let vxx = sxx / n + 1.0 / 12.0;
    let vyy = syy / n + 1.0 / 12.0;
    let vxy = sxy / n;
    let half_trace = (vxx + vyy) / 2.0;
    let disc = (((vxx - vyy) / 2.0).powi(2) + vxy * vxy).sqrt();
    let (l_max, l_min) = (half_trace + disc, half_trace - disc);
    let orientation = if disc < 1e-12 {
        0.0
    } else {
        (0.5 * (2.0 * vxy).atan2(vxx - vyy)).rem_euclid(PI)
    };
    let elongation = (l_max / l_min.max(1e-12)).sqrt();

    let filled_count = filled.count() as f64;
    let hull_count = geom::hull_mask(filled).count() as f64;
    let contour = geom::trace_contour(filled);
    let perimeter = geom::contour_perimeter(&contour);
    let enclosed = geom::polygon_area(&contour);
    let compactness = if perimeter > 0.0 {
        (4.0 * PI * enclosed / (perimeter * perimeter)).min(1.0)
    } else {
        1.0
    };

    AttributeVector {
        xpos: cx,
        ypos: frame_height as f64 - 1.0 - cy,
        size: n.ln(),
        orientation: orientation % PI,
        convexity: filled_count / hull_count,
        compactness,
        elongation,
        color: n / filled_count,
        ncorners: geom::corners(&contour).len() as f64,
    }
}

/// Shape class of a figure, decided on its filled silhouette.
pub fn classify_shape(obj: &FigureObject) -> ShapeClass {
    classify_filled(obj.filled(), obj.attributes.compactness)
}

/// Minimum ratio of filled area to hull area for polygon classes.
const POLYGON_SOLIDITY: f64 = 0.9;
const CIRCLE_COMPACTNESS: f64 = 0.85;
const PARALLEL_TOLERANCE: f64 = 10.0 * PI / 180.0;

fn classify_filled(filled: &Mask, compactness: f64) -> ShapeClass {
    let hull = geom::hull_mask(filled);
    let solidity = filled.count() as f64 / hull.count() as f64;
    let contour = geom::trace_contour(&hull);
    let corners = geom::corners(&contour);
    if compactness > CIRCLE_COMPACTNESS && corners.len() <= 2 {
        return ShapeClass::Circle;
    }
    if solidity <= POLYGON_SOLIDITY {
        return ShapeClass::Other;
    }
    match corners.len() {
        3 => ShapeClass::Triangle,
        4 => {
            let v: Vec<Pixel> = corners.iter().map(|&i| contour[i]).collect();
            let side = |i: usize| {
                let (a, b) = (v[i], v[(i + 1) % 4]);
                ((b.1 - a.1) as f64).atan2((b.0 - a.0) as f64)
            };
            if parallel(side(0), side(2)) && parallel(side(1), side(3)) {
                ShapeClass::Rectangle
            } else {
                ShapeClass::Other
            }
        }
        _ => ShapeClass::Other,
    }
}

fn parallel(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d) <= PARALLEL_TOLERANCE
}

pub fn classify_color(color: f64) -> FillClass {
    if color >= SOLID_THRESHOLD {
        FillClass::Solid
    } else {
        FillClass::Outline
    }
}

pub fn classify_fill(obj: &FigureObject) -> FillClass {
    classify_color(obj.attributes.color)
}

/// True iff `a` lies entirely in an enclosed background region of `b`.
pub fn inside(a: &FigureObject, b: &FigureObject) -> bool {
    if !a.mask.bbox_overlaps(b.filled(), 0) {
        return false;
    }
    a.mask
        .pixels()
        .all(|(x, y)| b.filled().contains(x, y) && !b.mask.contains(x, y))
}

/// New pixel sets produced by a transform of one object.
pub fn transform_mask(obj: &FigureObject, kind: Transform) -> Vec<Mask> {
    match kind {
        Transform::Hulls => vec![geom::hull_mask(&obj.mask)],
        Transform::Holes => obj
            .filled()
            .difference(&obj.mask)
            .components4()
            .into_iter()
            .filter(|m| m.count() >= MIN_HOLE_PIXELS)
            .collect(),
    }
}

/// Applies a transform to every object; results are synthetic objects
/// numbered in output order.
pub fn transform(objs: &[&FigureObject], kind: Transform, frame_height: usize) -> Vec<FigureObject> {
    objs.iter()
        .flat_map(|o| transform_mask(o, kind))
        .enumerate()
        .map(|(id, m)| FigureObject::new(id, m, frame_height, true))
        .collect()
}

/// Gap in pixels between the closest boundary pixels of two figures; zero
/// when they overlap or touch.
pub fn min_pair_distance(a: &FigureObject, b: &FigureObject) -> f64 {
    if a.mask.bbox_overlaps(&b.mask, 0) && !a.mask.is_disjoint(&b.mask) {
        return 0.0;
    }
    let mut best = i64::MAX;
    for &(ax, ay) in a.boundary() {
        for &(bx, by) in b.boundary() {
            let d = ((ax - bx) as i64).pow(2) + ((ay - by) as i64).pow(2);
            best = best.min(d);
        }
    }
    ((best as f64).sqrt() - 1.0).max(0.0)
}
