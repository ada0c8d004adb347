//! Deterministic rendering of Bongard-style scenes and problem templates.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FillClass, ShapeClass};
use crate::ingest::{BinaryImage, Manifest, SCENES_PER_SIDE};

/// Outline strokes thinner than this are rejected.
pub const MIN_STROKE: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShapeKind {
    Circle,
    /// Equilateral triangle inscribed in the circle of radius `scale`.
    Triangle,
    /// Rectangle with half-width `scale` and half-height `scale * aspect`.
    Rectangle {
        aspect: f64,
    },
    /// Polygon with vertices given relative to the centre in units of `scale`.
    Polygon {
        vertices: Vec<(f64, f64)>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    #[serde(flatten)]
    pub kind: ShapeKind,
    /// Centre in raster coordinates.
    pub center: (f64, f64),
    pub scale: f64,
    /// Counter-clockwise on the page, radians.
    pub rotation: f64,
    pub fill: FillClass,
    pub stroke: f64,
}

impl ShapeSpec {
    pub fn new(kind: ShapeKind, center: (f64, f64), scale: f64, rotation: f64, fill: FillClass) -> Self {
        ShapeSpec {
            kind,
            center,
            scale,
            rotation,
            fill,
            stroke: MIN_STROKE,
        }
    }

    /// The shape class the renderer intends.
    pub fn label(&self) -> ShapeClass {
        match self.kind {
            ShapeKind::Circle => ShapeClass::Circle,
            ShapeKind::Triangle => ShapeClass::Triangle,
            ShapeKind::Rectangle { .. } => ShapeClass::Rectangle,
            ShapeKind::Polygon { ref vertices } => match vertices.len() {
                3 => ShapeClass::Triangle,
                _ => ShapeClass::Other,
            },
        }
    }

    /// Vertices in raster coordinates; `None` for circles.
    pub fn polygon(&self) -> Option<Vec<(f64, f64)>> {
        let local: Vec<(f64, f64)> = match &self.kind {
            ShapeKind::Circle => return None,
            ShapeKind::Triangle => (0..3)
                .map(|k| {
                    let a = PI / 2.0 + k as f64 * 2.0 * PI / 3.0;
                    (a.cos(), a.sin())
                })
                .collect(),
            ShapeKind::Rectangle { aspect } => vec![(1.0, *aspect), (-1.0, *aspect), (-1.0, -aspect), (1.0, -aspect)],
            ShapeKind::Polygon { vertices } => vertices.clone(),
        };
        let (s, c) = self.rotation.sin_cos();
        Some(
            local
                .into_iter()
                .map(|(x, y)| {
                    let (px, py) = (self.scale * (c * x - s * y), self.scale * (s * x + c * y));
                    // Page y grows upwards, raster rows downwards.
                    (self.center.0 + px, self.center.1 - py)
                })
                .collect(),
        )
    }

    /// Inclusive pixel bounding box of the shape.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match self.polygon() {
            None => (
                self.center.0 - self.scale,
                self.center.1 - self.scale,
                self.center.0 + self.scale,
                self.center.1 + self.scale,
            ),
            Some(v) => v.iter().fold(
                (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
                |b, &(x, y)| (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y)),
            ),
        }
    }

    /// Radius of a circle around the centre that covers the shape.
    pub fn reach(&self) -> f64 {
        match self.polygon() {
            None => self.scale,
            Some(v) => v
                .iter()
                .map(|&(x, y)| (x - self.center.0).hypot(y - self.center.1))
                .fold(0.0, f64::max),
        }
    }

    /// Whether the pixel centre `(x, y)` is drawn.
    fn covers(&self, x: f64, y: f64, poly: Option<&[(f64, f64)]>) -> bool {
        let depth = match poly {
            None => self.scale - (x - self.center.0).hypot(y - self.center.1),
            Some(v) => {
                if !point_in_polygon(v, x, y) {
                    return false;
                }
                distance_to_edges(v, x, y)
            }
        };
        depth >= 0.0 && (self.fill == FillClass::Solid || depth < self.stroke)
    }
}

fn point_in_polygon(v: &[(f64, f64)], x: f64, y: f64) -> bool {
    let mut inside = false;
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        if (a.1 > y) != (b.1 > y) && x < a.0 + (y - a.1) * (b.0 - a.0) / (b.1 - a.1) {
            inside = !inside;
        }
    }
    inside
}

fn distance_to_edges(v: &[(f64, f64)], x: f64, y: f64) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let len2 = dx * dx + dy * dy;
            let t = if len2 > 0.0 {
                (((x - a.0) * dx + (y - a.1) * dy) / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            (x - a.0 - t * dx).hypot(y - a.1 - t * dy)
        })
        .fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub shapes: Vec<ShapeSpec>,
}

/// Default canvas side for templates.
pub const CANVAS: usize = 128;

impl SceneSpec {
    pub fn new(width: usize, height: usize) -> Self {
        SceneSpec {
            width,
            height,
            shapes: Vec::new(),
        }
    }

    pub fn with(mut self, shape: ShapeSpec) -> Self {
        self.shapes.push(shape);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Spec(format!(
                "canvas has zero area ({}x{})",
                self.width, self.height
            )));
        }
        for (i, s) in self.shapes.iter().enumerate() {
            if s.scale.is_nan() || s.scale <= 0.0 {
                return Err(Error::Spec(format!("shape {i} has non-positive scale {}", s.scale)));
            }
            if s.fill == FillClass::Outline && s.stroke < MIN_STROKE {
                return Err(Error::Spec(format!(
                    "shape {i} has stroke {} below {MIN_STROKE}",
                    s.stroke
                )));
            }
            if let ShapeKind::Polygon { vertices } = &s.kind {
                if vertices.len() < 3 {
                    return Err(Error::Spec(format!(
                        "shape {i} is a polygon with fewer than 3 vertices"
                    )));
                }
            }
            let (x0, y0, x1, y1) = s.bounds();
            if x0 < 0.0 || y0 < 0.0 || x1 > (self.width - 1) as f64 || y1 > (self.height - 1) as f64 {
                return Err(Error::Spec(format!(
                    "shape {i} spans ({x0:.1}, {y0:.1})-({x1:.1}, {y1:.1}) outside the {}x{} canvas",
                    self.width, self.height
                )));
            }
        }
        Ok(())
    }
}

/// Rasterises a scene: a pixel is foreground iff its centre is covered.
pub fn render(spec: &SceneSpec) -> Result<BinaryImage> {
    spec.validate()?;
    let mut img = BinaryImage::new(spec.width, spec.height)?;
    for s in &spec.shapes {
        let poly = s.polygon();
        let (x0, y0, x1, y1) = s.bounds();
        for y in y0.floor().max(0.0) as usize..=(y1.ceil() as usize).min(spec.height - 1) {
            for x in x0.floor().max(0.0) as usize..=(x1.ceil() as usize).min(spec.width - 1) {
                if s.covers(x as f64, y as f64, poly.as_deref()) {
                    img.set(x, y, true);
                }
            }
        }
    }
    Ok(img)
}

/// The bundled problem generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Template {
    #[serde(rename = "bp1_empty_vs_nonempty")]
    Bp1EmptyVsNonempty,
    #[serde(rename = "bp2_large_vs_small")]
    Bp2LargeVsSmall,
    #[serde(rename = "bp3_outline_vs_solid")]
    Bp3OutlineVsSolid,
    #[serde(rename = "bp6_triangle_vs_quadrangle")]
    Bp6TriangleVsQuadrangle,
    #[serde(rename = "bp23_one_vs_two")]
    Bp23OneVsTwo,
    #[serde(rename = "bp47_nesting")]
    Bp47Nesting,
}

impl Template {
    pub const ALL: [Template; 6] = [
        Template::Bp1EmptyVsNonempty,
        Template::Bp2LargeVsSmall,
        Template::Bp3OutlineVsSolid,
        Template::Bp6TriangleVsQuadrangle,
        Template::Bp23OneVsTwo,
        Template::Bp47Nesting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Template::Bp1EmptyVsNonempty => "bp1_empty_vs_nonempty",
            Template::Bp2LargeVsSmall => "bp2_large_vs_small",
            Template::Bp3OutlineVsSolid => "bp3_outline_vs_solid",
            Template::Bp6TriangleVsQuadrangle => "bp6_triangle_vs_quadrangle",
            Template::Bp23OneVsTwo => "bp23_one_vs_two",
            Template::Bp47Nesting => "bp47_nesting",
        }
    }

    /// Rules the template is built to satisfy.
    pub fn intended_rules(self) -> &'static [&'static str] {
        match self {
            Template::Bp1EmptyVsNonempty => &["RIGHT:EXISTS(FIGURES)"],
            Template::Bp2LargeVsSmall => &["LEFT:GREATERLA(FIGURES,SIZE)"],
            Template::Bp3OutlineVsSolid => &["LEFT:EXISTS(OUTLINE(FIGURES))", "RIGHT:GREATERLA(FIGURES,COLOR)"],
            Template::Bp6TriangleVsQuadrangle => &["LEFT:EXISTS(TRIANGLES)", "RIGHT:GREATERLA(FIGURES,NCORNERS)"],
            Template::Bp23OneVsTwo => &["LEFT:EXACTLY(1,FIGURES)", "RIGHT:EXACTLY(2,FIGURES)"],
            Template::Bp47Nesting => &["LEFT:EXISTS(INSIDE(CIRCLES))", "RIGHT:EXISTS(INSIDE(TRIANGLES))"],
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Template {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let want = s.trim().to_ascii_lowercase();
        Template::ALL
            .into_iter()
            .find(|t| t.name() == want || t.name().split('_').next() == Some(want.as_str()))
            .ok_or_else(|| {
                let names: Vec<&str> = Template::ALL.iter().map(|t| t.name()).collect();
                Error::input(format!("unknown template {s:?}; available: {}", names.join(", ")))
            })
    }
}

/// Twelve rendered images and the specs they came from.
#[derive(Clone, Debug)]
pub struct SynthProblem {
    pub template: Template,
    pub seed: u64,
    pub left_specs: Vec<SceneSpec>,
    pub right_specs: Vec<SceneSpec>,
    pub left: Vec<BinaryImage>,
    pub right: Vec<BinaryImage>,
}

impl SynthProblem {
    /// Writes `left_0.png` .. `right_5.png` and `manifest.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut manifest = Manifest {
            left: Vec::new(),
            right: Vec::new(),
        };
        for (side, images, paths) in [
            ("left", &self.left, &mut manifest.left),
            ("right", &self.right, &mut manifest.right),
        ] {
            for (i, img) in images.iter().enumerate() {
                let name = format!("{side}_{i}.png");
                img.save(&dir.join(&name))?;
                paths.push(PathBuf::from(name));
            }
        }
        let path = dir.join("manifest.json");
        manifest.save(&path)?;
        Ok(path)
    }
}

/// Generates a problem from a template; identical seeds give identical images.
pub fn make_problem(template: Template, seed: u64) -> Result<SynthProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left_specs = Vec::with_capacity(SCENES_PER_SIDE);
    let mut right_specs = Vec::with_capacity(SCENES_PER_SIDE);
    for i in 0..SCENES_PER_SIDE {
        left_specs.push(scene_for(template, true, i, &mut rng));
    }
    for i in 0..SCENES_PER_SIDE {
        right_specs.push(scene_for(template, false, i, &mut rng));
    }
    let left = left_specs.iter().map(render).collect::<Result<_>>()?;
    let right = right_specs.iter().map(render).collect::<Result<_>>()?;
    Ok(SynthProblem {
        template,
        seed,
        left_specs,
        right_specs,
        left,
        right,
    })
}

fn scene_for(template: Template, left: bool, index: usize, rng: &mut ChaCha8Rng) -> SceneSpec {
    match template {
        Template::Bp1EmptyVsNonempty => {
            if left {
                SceneSpec::new(CANVAS, CANVAS)
            } else {
                let n = rng.gen_range(1..=3);
                let shapes = (0..n)
                    .map(|_| basic_shape(rng, 18.0..26.0, FillClass::Outline))
                    .collect();
                place(rng, shapes)
            }
        }
        Template::Bp2LargeVsSmall => {
            // Every large figure has at least 4x the pixels of every small one.
            let shape = loop {
                let fill = random_fill(rng);
                let mut s = if left {
                    basic_shape(rng, 34.0..44.0, fill)
                } else {
                    basic_shape(rng, 6.0..10.0, fill)
                };
                s.stroke = 3.0;
                let n = pixel_count(&s);
                if (left && n >= BP2_LARGE_MIN) || (!left && n <= BP2_SMALL_MAX) {
                    break s;
                }
            };
            place(rng, vec![shape])
        }
        Template::Bp3OutlineVsSolid => {
            let shape = if left {
                basic_shape(rng, 22.0..36.0, FillClass::Outline)
            } else {
                basic_shape(rng, 8.0..14.0, FillClass::Solid)
            };
            place(rng, vec![shape])
        }
        Template::Bp6TriangleVsQuadrangle => {
            let fill = random_fill(rng);
            let scale = rng.gen_range(24.0..34.0);
            // Only the corner count separates the sides: the first triangle is
            // near-equilateral and the first quadrangle long and thin, so
            // compactness and elongation overlap across sides.
            let vertices = if left {
                if index == 0 {
                    triangle_with_angles(rng, 52.0..68.0)
                } else {
                    random_triangle(rng)
                }
            } else {
                if index == 0 {
                    long_trapezoid(rng)
                } else {
                    loop {
                        let axis = rng.gen_range(0.0..PI);
                        let v = stretched(random_quadrangle(rng), rng.gen_range(1.0..2.2), axis);
                        if distinct_quadrangle(&v) {
                            break v;
                        }
                    }
                }
            };
            let shape = ShapeSpec::new(ShapeKind::Polygon { vertices }, (0.0, 0.0), scale, 0.0, fill);
            place(rng, vec![shape])
        }
        Template::Bp23OneVsTwo => {
            let n = if left { 1 } else { 2 };
            let shapes = (0..n)
                .map(|_| basic_shape(rng, 18.0..26.0, FillClass::Outline))
                .collect();
            place(rng, shapes)
        }
        Template::Bp47Nesting => nested_scene(rng, left),
    }
}

const BP2_LARGE_MIN: usize = 480;
const BP2_SMALL_MAX: usize = BP2_LARGE_MIN / 4;

/// Pixels a shape covers when drawn on its own.
pub fn pixel_count(shape: &ShapeSpec) -> usize {
    let r = shape.reach().ceil() + 2.0;
    let side = 2 * r as usize + 1;
    let mut s = shape.clone();
    s.center = (r, r);
    render(&SceneSpec::new(side, side).with(s))
        .map(|img| img.foreground_count())
        .unwrap_or(0)
}

fn random_fill(rng: &mut ChaCha8Rng) -> FillClass {
    if rng.gen_bool(0.5) {
        FillClass::Solid
    } else {
        FillClass::Outline
    }
}

/// A circle, triangle or rectangle at the origin with random size and rotation.
fn basic_shape(rng: &mut ChaCha8Rng, scale: std::ops::Range<f64>, fill: FillClass) -> ShapeSpec {
    let kind = match rng.gen_range(0..3) {
        0 => ShapeKind::Circle,
        1 => ShapeKind::Triangle,
        _ => ShapeKind::Rectangle {
            aspect: rng.gen_range(0.6..1.0),
        },
    };
    let scale = rng.gen_range(scale);
    ShapeSpec::new(kind, (0.0, 0.0), scale, rng.gen_range(0.0..2.0 * PI), fill)
}

/// Triangle with interior angles in [30, 110] degrees, inscribed in the unit circle.
fn random_triangle(rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    triangle_with_angles(rng, 30.0..110.0)
}

fn triangle_with_angles(rng: &mut ChaCha8Rng, range: std::ops::Range<f64>) -> Vec<(f64, f64)> {
    let (a, b, c) = loop {
        let a: f64 = rng.gen_range(range.clone());
        let b: f64 = rng.gen_range(range.clone());
        let c = 180.0 - a - b;
        if c >= range.start && c <= range.end {
            break (a, b, c);
        }
    };
    // An inscribed angle spans twice its measure of arc.
    let t0: f64 = rng.gen_range(0.0..2.0 * PI);
    let t1 = t0 + 2.0 * c.to_radians();
    let t2 = t1 + 2.0 * a.to_radians();
    let _ = b;
    vec![(t0.cos(), t0.sin()), (t1.cos(), t1.sin()), (t2.cos(), t2.sin())]
}

/// Cyclic quadrangle with interior angles in [60, 120] degrees and no pair
/// of parallel sides (opposite arcs differ by at least 30 degrees).
fn random_quadrangle(rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let arcs = loop {
        let a: [f64; 3] = [
            rng.gen_range(60.0..120.0),
            rng.gen_range(60.0..120.0),
            rng.gen_range(60.0..120.0),
        ];
        let d = 360.0 - a[0] - a[1] - a[2];
        let arcs = [a[0], a[1], a[2], d];
        if (60.0..=120.0).contains(&d) && (arcs[0] - arcs[2]).abs() >= 30.0 && (arcs[1] - arcs[3]).abs() >= 30.0 {
            break arcs;
        }
    };
    let mut t: f64 = rng.gen_range(0.0..2.0 * PI);
    let mut v = Vec::with_capacity(4);
    for arc in arcs {
        v.push((t.cos(), t.sin()));
        t += arc.to_radians();
    }
    v
}

/// Interior angles in [60, 120] degrees, no side shorter than a sixth of
/// the perimeter and no pair of opposite sides within 15 degrees of parallel.
fn distinct_quadrangle(v: &[(f64, f64)]) -> bool {
    let side = |i: usize| {
        let (a, b) = (v[i], v[(i + 1) % 4]);
        (b.0 - a.0, b.1 - a.1)
    };
    let len = |d: (f64, f64)| d.0.hypot(d.1);
    let dir = |d: (f64, f64)| d.1.atan2(d.0);
    let perimeter: f64 = (0..4).map(|i| len(side(i))).sum();
    let angles_ok = (0..4).all(|i| {
        let (u, w) = (side(i), side((i + 1) % 4));
        let turn = (u.0 * w.1 - u.1 * w.0).atan2(u.0 * w.0 + u.1 * w.1).abs().to_degrees();
        (60.0..=120.0).contains(&(180.0 - turn))
    });
    let skew = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(PI);
        d.min(PI - d).to_degrees()
    };
    angles_ok
        && (0..4).all(|i| len(side(i)) >= perimeter / 6.0)
        && (skew(dir(side(0)), dir(side(2))) >= 15.0 || skew(dir(side(1)), dir(side(3))) >= 15.0)
}

/// Trapezoid 3.4 to 4 times as long as it is high, with both short
/// sides leaning inwards by 15 to 30 degrees, randomly rotated.
fn long_trapezoid(rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let h = 1.0 / rng.gen_range(3.4..4.0);
    let lean = |rng: &mut ChaCha8Rng| 2.0 * h * rng.gen_range(15.0f64..30.0).to_radians().tan();
    let (a, b) = (lean(rng), lean(rng));
    let v = vec![(-1.0, -h), (1.0, -h), (1.0 - b, h), (-1.0 + a, h)];
    let (s, c) = rng.gen_range(0.0..2.0 * PI).sin_cos();
    let v = v.into_iter().map(|(x, y)| (c * x - s * y, s * x + c * y)).collect();
    stretched(v, 1.0, 0.0)
}

/// Scales `v` by `factor` along the direction `axis`, then rescales so the
/// farthest vertex lies on the unit circle.
fn stretched(v: Vec<(f64, f64)>, factor: f64, axis: f64) -> Vec<(f64, f64)> {
    let (s, c) = axis.sin_cos();
    let v: Vec<(f64, f64)> = v
        .into_iter()
        .map(|(x, y)| {
            let (u, w) = (c * x + s * y, -s * x + c * y);
            let u = u * factor;
            (c * u - s * w, s * u + c * w)
        })
        .collect();
    let r = v.iter().map(|&(x, y)| x.hypot(y)).fold(0.0, f64::max);
    v.into_iter().map(|(x, y)| (x / r, y / r)).collect()
}

/// Places shapes at random non-overlapping positions inside the canvas.
fn place(rng: &mut ChaCha8Rng, mut shapes: Vec<ShapeSpec>) -> SceneSpec {
    const MARGIN: f64 = 2.0;
    const GAP: f64 = 6.0;
    'attempt: loop {
        let mut placed: Vec<ShapeSpec> = Vec::with_capacity(shapes.len());
        for s in &shapes {
            let r = s.reach();
            let lo = r + MARGIN;
            let hi = CANVAS as f64 - 1.0 - r - MARGIN;
            if lo >= hi {
                panic!("shape of reach {r} does not fit the canvas");
            }
            let mut ok = false;
            for _ in 0..200 {
                let c = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
                if placed
                    .iter()
                    .all(|p| (p.center.0 - c.0).hypot(p.center.1 - c.1) > p.reach() + r + GAP)
                {
                    let mut s = s.clone();
                    s.center = c;
                    placed.push(s);
                    ok = true;
                    break;
                }
            }
            if !ok {
                for s in shapes.iter_mut() {
                    s.scale *= 0.95;
                }
                continue 'attempt;
            }
        }
        return SceneSpec {
            width: CANVAS,
            height: CANVAS,
            shapes: placed,
        };
    }
}

/// Left: a solid triangle inside an outline circle. Right: a solid circle
/// inside an outline triangle.
fn nested_scene(rng: &mut ChaCha8Rng, left: bool) -> SceneSpec {
    let c = CANVAS as f64 / 2.0;
    let jitter = 8.0;
    let center = (c + rng.gen_range(-jitter..jitter), c + rng.gen_range(-jitter..jitter));
    let rotation = rng.gen_range(0.0..2.0 * PI);
    let (outer, inner) = if left {
        let r = rng.gen_range(36.0..46.0);
        let inner_scale = rng.gen_range(11.0..16.0);
        // Keep the inner figure clear of the stroke.
        let room = r - MIN_STROKE - inner_scale - 4.0;
        let off = rng.gen_range(0.0..room.max(0.0) + 1e-9);
        let dir = rng.gen_range(0.0..2.0 * PI);
        (
            ShapeSpec::new(ShapeKind::Circle, center, r, 0.0, FillClass::Outline),
            ShapeSpec::new(
                ShapeKind::Triangle,
                (center.0 + off * dir.cos(), center.1 + off * dir.sin()),
                inner_scale,
                rng.gen_range(0.0..2.0 * PI),
                FillClass::Solid,
            ),
        )
    } else {
        let r = rng.gen_range(50.0..56.0);
        // Equilateral inradius is half the circumradius.
        let inner_r = rng.gen_range(8.0..11.0);
        (
            ShapeSpec::new(ShapeKind::Triangle, center, r, rotation, FillClass::Outline),
            ShapeSpec::new(ShapeKind::Circle, center, inner_r, 0.0, FillClass::Solid),
        )
    };
    SceneSpec {
        width: CANVAS,
        height: CANVAS,
        shapes: vec![outer, inner],
    }
}

/// A random shape with its intended class, for classifier checks: circles,
/// triangles, rotated rectangles and irregular 12-gons.
pub fn random_labelled_shape(rng: &mut ChaCha8Rng) -> SceneSpec {
    let c = CANVAS as f64 / 2.0;
    let fill = random_fill(rng);
    let rotation = rng.gen_range(0.0..2.0 * PI);
    let kind = match rng.gen_range(0..4) {
        0 => ShapeKind::Circle,
        1 => ShapeKind::Polygon {
            vertices: random_triangle(rng),
        },
        2 => ShapeKind::Rectangle {
            aspect: rng.gen_range(0.4..1.0),
        },
        _ => {
            let vertices = (0..12)
                .map(|k| {
                    let t = k as f64 * PI / 6.0;
                    let rad = if k % 2 == 0 { 1.0 } else { rng.gen_range(0.45..0.7) };
                    (rad * t.cos(), rad * t.sin())
                })
                .collect();
            ShapeKind::Polygon { vertices }
        }
    };
    let scale = rng.gen_range(24.0..40.0);
    SceneSpec {
        width: CANVAS,
        height: CANVAS,
        shapes: vec![ShapeSpec::new(kind, (c, c), scale, rotation, fill)],
    }
}
