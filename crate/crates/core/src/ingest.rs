//! Loading binary images, segmenting them into figures and assembling the
//! twelve scenes of a problem.

use std::collections::{BTreeMap, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{self, Attribute, FigureObject};
use crate::lang::split::{perceptual_split, Split};
use crate::lang::{Semantics, Side};
use crate::likelihood::PragmaticFacts;
use crate::mask::Mask;

/// Scenes per side of a problem.
pub const SCENES_PER_SIDE: usize = 6;
/// Scenes in a problem.
pub const SCENES: usize = 2 * SCENES_PER_SIDE;

/// A raster of foreground (`true`, dark) and background pixels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    /// An all-background image.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::input(format!("image has zero area ({width}x{height})")));
        }
        Ok(BinaryImage {
            width,
            height,
            pixels: vec![false; width * height],
        })
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        let mut img = BinaryImage::new(width, height)?;
        if pixels.len() != width * height {
            return Err(Error::input(format!(
                "expected {} pixels for a {width}x{height} image, got {}",
                width * height,
                pixels.len()
            )));
        }
        img.pixels = pixels;
        Ok(img)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height && self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        self.pixels[y * self.width + x] = value;
    }

    pub fn foreground_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// Copy of the image with its content shifted; pixels leaving the frame are dropped.
    pub fn translated(&self, dx: i64, dy: i64) -> BinaryImage {
        let mut out = BinaryImage::new(self.width, self.height).expect("nonzero area");
        for y in 0..self.height {
            for x in 0..self.width {
                if self.get(x, y) {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    if nx >= 0 && ny >= 0 && (nx as usize) < self.width && (ny as usize) < self.height {
                        out.set(nx as usize, ny as usize, true);
                    }
                }
            }
        }
        out
    }

    /// Black-on-white 8-bit grayscale raster.
    pub fn to_gray(&self) -> image::GrayImage {
        image::GrayImage::from_fn(self.width as u32, self.height as u32, |x, y| {
            image::Luma([if self.get(x as usize, y as usize) { 0 } else { 255 }])
        })
    }

    /// Writes the image; the format follows the extension (`.png`, `.pgm`).
    pub fn save(&self, path: &Path) -> Result<()> {
        self.to_gray().save(path).map_err(|source| Error::Decode {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Thresholding and noise settings for turning rasters into figures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestOptions {
    /// A pixel is foreground iff its luminance is below this gray level.
    pub threshold: u8,
    /// Components with fewer pixels are dropped as noise.
    pub min_pixels: usize,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            threshold: 128,
            min_pixels: 5,
        }
    }
}

/// Decodes a PNG/PGM (or any grayscale/RGB raster the `image` crate reads).
pub fn load_binary_image(path: &Path, threshold: u8) -> Result<BinaryImage> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let decoded = image::load_from_memory(&bytes).map_err(|source| Error::Decode {
        path: path.to_path_buf(),
        source,
    })?;
    let gray = decoded.to_luma8();
    let (w, h) = gray.dimensions();
    let pixels = gray.pixels().map(|p| p.0[0] < threshold).collect();
    BinaryImage::from_pixels(w as usize, h as usize, pixels)
}

/// 8-connected foreground components in scan order, with the default noise floor.
pub fn segment(image: &BinaryImage) -> Vec<FigureObject> {
    segment_with(image, IngestOptions::default().min_pixels)
}

pub fn segment_with(image: &BinaryImage, min_pixels: usize) -> Vec<FigureObject> {
    let (w, h) = (image.width, image.height);
    let mut seen = vec![false; w * h];
    let mut objects = Vec::new();
    for start in 0..w * h {
        if !image.pixels[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut pixels = Vec::new();
        while let Some(i) = queue.pop_front() {
            let (x, y) = ((i % w) as i64, (i / w) as i64);
            pixels.push((x as i32, y as i32));
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let j = ny as usize * w + nx as usize;
                    if image.pixels[j] && !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        if pixels.len() >= min_pixels.max(1) {
            let id = objects.len();
            objects.push(FigureObject::new(id, Mask::from_pixels(pixels), h, false));
        }
    }
    objects
}

/// The figures of one example image.
#[derive(Clone, Debug)]
pub struct Scene {
    pub width: usize,
    pub height: usize,
    pub objects: Vec<FigureObject>,
    /// Row-major matrix of pairwise figure distances.
    distances: Vec<f64>,
}

impl Scene {
    pub fn new(width: usize, height: usize, objects: Vec<FigureObject>) -> Self {
        let n = objects.len();
        let mut distances = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = features::min_pair_distance(&objects[i], &objects[j]);
                distances[i * n + j] = d;
                distances[j * n + i] = d;
            }
        }
        Scene {
            width,
            height,
            objects,
            distances,
        }
    }

    pub fn from_image(image: &BinaryImage, options: &IngestOptions) -> Self {
        Scene::new(image.width, image.height, segment_with(image, options.min_pixels))
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances[i * self.objects.len() + j]
    }

    /// For each figure, the distance to its nearest other figure (`None` if alone).
    pub fn nearest_distances(&self) -> Vec<Option<f64>> {
        let n = self.objects.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| self.distance(i, j))
                    .min_by(|a, b| a.total_cmp(b))
            })
            .collect()
    }
}

/// Twelve segmented scenes plus the problem-wide statistics rules refer to.
#[derive(Debug)]
pub struct ProblemContext {
    scenes: Vec<Scene>,
    /// Every figure's value per attribute, over all twelve scenes.
    pub attribute_pool: BTreeMap<Attribute, Vec<f64>>,
    splits: BTreeMap<Attribute, Option<Split>>,
    pub semantics: Semantics,
    facts: OnceLock<PragmaticFacts>,
}

impl ProblemContext {
    pub fn from_scenes(left: Vec<Scene>, right: Vec<Scene>, semantics: Semantics) -> Result<Self> {
        if left.len() != SCENES_PER_SIDE || right.len() != SCENES_PER_SIDE {
            return Err(Error::input(format!(
                "a problem needs {SCENES_PER_SIDE} images per side, got {} left and {} right",
                left.len(),
                right.len()
            )));
        }
        let scenes: Vec<Scene> = left.into_iter().chain(right).collect();
        let mut attribute_pool = BTreeMap::new();
        for attr in Attribute::ALL {
            let values: Vec<f64> = if attr == Attribute::Distance {
                scenes
                    .iter()
                    .flat_map(|s| s.nearest_distances().into_iter().flatten())
                    .collect()
            } else {
                scenes
                    .iter()
                    .flat_map(|s| s.objects.iter().map(move |o| o.attributes.get(attr).unwrap()))
                    .collect()
            };
            attribute_pool.insert(attr, values);
        }
        let splits = attribute_pool
            .iter()
            .map(|(&attr, values)| {
                (
                    attr,
                    perceptual_split(values, attr.is_circular(), &semantics.split_rule(attr)),
                )
            })
            .collect();
        Ok(ProblemContext {
            scenes,
            attribute_pool,
            splits,
            semantics,
            facts: OnceLock::new(),
        })
    }

    pub fn scenes(&self) -> &[Scene] {
        &self.scenes
    }

    pub fn scene(&self, index: usize) -> &Scene {
        &self.scenes[index]
    }

    pub fn left_scenes(&self) -> &[Scene] {
        &self.scenes[..SCENES_PER_SIDE]
    }

    pub fn right_scenes(&self) -> &[Scene] {
        &self.scenes[SCENES_PER_SIDE..]
    }

    /// Side a scene index belongs to (0-5 left, 6-11 right).
    pub fn side_of(index: usize) -> Side {
        if index < SCENES_PER_SIDE {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Scene indices of one side.
    pub fn indices(side: Side) -> std::ops::Range<usize> {
        match side {
            Side::Left => 0..SCENES_PER_SIDE,
            Side::Right => SCENES_PER_SIDE..SCENES,
        }
    }

    /// Problem-wide high/low split of an attribute, if one is perceptually relevant.
    pub fn split(&self, attr: Attribute) -> Option<&Split> {
        self.splits.get(&attr).and_then(Option::as_ref)
    }

    /// Presence facts used by the informativeness test, computed once.
    pub fn facts(&self) -> &PragmaticFacts {
        self.facts.get_or_init(|| PragmaticFacts::new(self))
    }

    /// The same problem with left and right swapped.
    pub fn mirrored(&self) -> ProblemContext {
        let left = self.right_scenes().to_vec();
        let right = self.left_scenes().to_vec();
        ProblemContext::from_scenes(left, right, self.semantics.clone()).expect("six per side")
    }
}

/// Segments and features twelve images into a problem.
pub fn build_problem(left: &[BinaryImage], right: &[BinaryImage]) -> Result<ProblemContext> {
    build_problem_with(left, right, &IngestOptions::default(), Semantics::default())
}

pub fn build_problem_with(
    left: &[BinaryImage],
    right: &[BinaryImage],
    options: &IngestOptions,
    semantics: Semantics,
) -> Result<ProblemContext> {
    if left.len() != SCENES_PER_SIDE || right.len() != SCENES_PER_SIDE {
        return Err(Error::input(format!(
            "a problem needs {SCENES_PER_SIDE} images per side, got {} left and {} right",
            left.len(),
            right.len()
        )));
    }
    let scenes =
        |images: &[BinaryImage]| -> Vec<Scene> { images.iter().map(|img| Scene::from_image(img, options)).collect() };
    ProblemContext::from_scenes(scenes(left), scenes(right), semantics)
}

/// Six left then six right image paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub left: Vec<PathBuf>,
    pub right: Vec<PathBuf>,
}

impl Manifest {
    /// Reads a JSON manifest (`{"left": [...], "right": [...]}`) or a plain
    /// list of twelve paths, one per line (`#` starts a comment). Relative
    /// paths are resolved against the manifest's directory.
    pub fn load(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let bad = |reason: String| Error::Manifest {
            path: path.to_path_buf(),
            reason,
        };
        let mut manifest = if text.trim_start().starts_with('{') {
            serde_json::from_str::<Manifest>(&text).map_err(|e| bad(e.to_string()))?
        } else {
            let lines: Vec<PathBuf> = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(PathBuf::from)
                .collect();
            if lines.len() != SCENES {
                return Err(bad(format!("expected {SCENES} image paths, found {}", lines.len())));
            }
            Manifest {
                left: lines[..SCENES_PER_SIDE].to_vec(),
                right: lines[SCENES_PER_SIDE..].to_vec(),
            }
        };
        if manifest.left.len() != SCENES_PER_SIDE || manifest.right.len() != SCENES_PER_SIDE {
            return Err(bad(format!(
                "expected {SCENES_PER_SIDE} left and {SCENES_PER_SIDE} right paths, found {} and {}",
                manifest.left.len(),
                manifest.right.len()
            )));
        }
        let base = path.parent().unwrap_or(Path::new("."));
        for p in manifest.left.iter_mut().chain(manifest.right.iter_mut()) {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(manifest)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serialises");
        fs::write(path, json).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load_images(&self, threshold: u8) -> Result<(Vec<BinaryImage>, Vec<BinaryImage>)> {
        let load = |paths: &[PathBuf]| -> Result<Vec<BinaryImage>> {
            paths.iter().map(|p| load_binary_image(p, threshold)).collect()
        };
        Ok((load(&self.left)?, load(&self.right)?))
    }
}

/// Loads the manifest and every image it names, and builds the problem.
pub fn load_problem(manifest: &Path, options: &IngestOptions, semantics: Semantics) -> Result<ProblemContext> {
    let manifest = Manifest::load(manifest)?;
    let (left, right) = manifest.load_images(options.threshold)?;
    build_problem_with(&left, &right, options, semantics)
}
