//! Pixel sets stored as a tight bounding box plus a local bitmap.
//!
//! Coordinates are raster coordinates of the source image: `x` is the column,
//! `y` the row (growing downwards). Two masks compare equal iff they cover the
//! same pixels, which lets synthetic objects be interned by their pixels.

use std::collections::VecDeque;

/// Integer pixel coordinate `(x, y)` in the image frame.
pub type Pixel = (i32, i32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mask {
    left: i32,
    top: i32,
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

const NEIGHBOURS_4: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl Mask {
    pub fn empty() -> Self {
        Mask {
            left: 0,
            top: 0,
            width: 0,
            height: 0,
            bits: Vec::new(),
        }
    }

    /// Builds a mask from an arbitrary collection of pixels (duplicates allowed).
    pub fn from_pixels<I: IntoIterator<Item = Pixel>>(pixels: I) -> Self {
        let pixels: Vec<Pixel> = pixels.into_iter().collect();
        if pixels.is_empty() {
            return Mask::empty();
        }
        let (mut x0, mut y0, mut x1, mut y1) = (i32::MAX, i32::MAX, i32::MIN, i32::MIN);
        for &(x, y) in &pixels {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let width = (x1 - x0 + 1) as usize;
        let height = (y1 - y0 + 1) as usize;
        let mut bits = vec![false; width * height];
        for (x, y) in pixels {
            bits[(y - y0) as usize * width + (x - x0) as usize] = true;
        }
        Mask {
            left: x0,
            top: y0,
            width,
            height,
            bits,
        }
    }

    /// Builds a mask from a predicate evaluated over the box `[x0, x1] x [y0, y1]`.
    pub fn from_fn(x0: i32, y0: i32, x1: i32, y1: i32, mut f: impl FnMut(i32, i32) -> bool) -> Self {
        let mut pixels = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                if f(x, y) {
                    pixels.push((x, y));
                }
            }
        }
        Mask::from_pixels(pixels)
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Inclusive bounding box `(x0, y0, x1, y1)`; `None` for the empty mask.
    pub fn bbox(&self) -> Option<(i32, i32, i32, i32)> {
        if self.is_empty() {
            None
        } else {
            Some((
                self.left,
                self.top,
                self.left + self.width as i32 - 1,
                self.top + self.height as i32 - 1,
            ))
        }
    }

    #[inline]
    pub fn contains(&self, x: i32, y: i32) -> bool {
        let lx = x - self.left;
        let ly = y - self.top;
        if lx < 0 || ly < 0 || lx as usize >= self.width || ly as usize >= self.height {
            return false;
        }
        self.bits[ly as usize * self.width + lx as usize]
    }

    /// Iterates set pixels in raster order.
    pub fn pixels(&self) -> impl Iterator<Item = Pixel> + '_ {
        let w = self.width;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (self.left + (i % w) as i32, self.top + (i / w) as i32))
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Mask {
        Mask {
            left: self.left + dx,
            top: self.top + dy,
            ..self.clone()
        }
    }

    pub fn is_disjoint(&self, other: &Mask) -> bool {
        if !self.bbox_overlaps(other, 0) {
            return true;
        }
        self.pixels().all(|(x, y)| !other.contains(x, y))
    }

    /// True when the bounding boxes, grown by `margin`, intersect.
    pub fn bbox_overlaps(&self, other: &Mask, margin: i32) -> bool {
        match (self.bbox(), other.bbox()) {
            (Some(a), Some(b)) => {
                a.0 - margin <= b.2 && b.0 - margin <= a.2 && a.1 - margin <= b.3 && b.1 - margin <= a.3
            }
            _ => false,
        }
    }

    pub fn difference(&self, other: &Mask) -> Mask {
        Mask::from_pixels(self.pixels().filter(|&(x, y)| !other.contains(x, y)))
    }

    /// Pixels with at least one 4-neighbour outside the mask.
    pub fn boundary(&self) -> Vec<Pixel> {
        self.pixels()
            .filter(|&(x, y)| NEIGHBOURS_4.iter().any(|&(dx, dy)| !self.contains(x + dx, y + dy)))
            .collect()
    }

    /// The mask with every enclosed background region filled in.
    ///
    /// Background is 4-connected (the dual of 8-connected foreground); a
    /// background pixel is enclosed when it cannot reach the padded bounding
    /// box border without crossing the mask.
    pub fn filled(&self) -> Mask {
        let Some((x0, y0, x1, y1)) = self.bbox() else {
            return Mask::empty();
        };
        let outside = self.outside_region(x0 - 1, y0 - 1, x1 + 1, y1 + 1);
        let pw = (x1 - x0 + 3) as usize;
        Mask::from_fn(x0, y0, x1, y1, |x, y| {
            !outside[(y - y0 + 1) as usize * pw + (x - x0 + 1) as usize]
        })
    }

    /// Enclosed background pixels (filled minus self).
    pub fn holes(&self) -> Mask {
        self.filled().difference(self)
    }

    /// Flood fill of background from the border of the given box.
    fn outside_region(&self, bx0: i32, by0: i32, bx1: i32, by1: i32) -> Vec<bool> {
        let w = (bx1 - bx0 + 1) as usize;
        let h = (by1 - by0 + 1) as usize;
        let mut seen = vec![false; w * h];
        let mut queue = VecDeque::new();
        let idx = |x: i32, y: i32| (y - by0) as usize * w + (x - bx0) as usize;
        for x in bx0..=bx1 {
            for y in [by0, by1] {
                if !self.contains(x, y) && !seen[idx(x, y)] {
                    seen[idx(x, y)] = true;
                    queue.push_back((x, y));
                }
            }
        }
        for y in by0..=by1 {
            for x in [bx0, bx1] {
                if !self.contains(x, y) && !seen[idx(x, y)] {
                    seen[idx(x, y)] = true;
                    queue.push_back((x, y));
                }
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            for (dx, dy) in NEIGHBOURS_4 {
                let (nx, ny) = (x + dx, y + dy);
                if nx < bx0 || ny < by0 || nx > bx1 || ny > by1 {
                    continue;
                }
                let i = idx(nx, ny);
                if !seen[i] && !self.contains(nx, ny) {
                    seen[i] = true;
                    queue.push_back((nx, ny));
                }
            }
        }
        seen
    }

    /// 4-connected components, each returned as its own mask, in scan order.
    pub fn components4(&self) -> Vec<Mask> {
        let mut seen = vec![false; self.bits.len()];
        let mut out = Vec::new();
        for start in 0..self.bits.len() {
            if !self.bits[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut pixels = Vec::new();
            while let Some(i) = queue.pop_front() {
                let (lx, ly) = ((i % self.width) as i32, (i / self.width) as i32);
                pixels.push((self.left + lx, self.top + ly));
                for (dx, dy) in NEIGHBOURS_4 {
                    let (nx, ny) = (lx + dx, ly + dy);
                    if nx < 0 || ny < 0 || nx as usize >= self.width || ny as usize >= self.height {
                        continue;
                    }
                    let j = ny as usize * self.width + nx as usize;
                    if self.bits[j] && !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            out.push(Mask::from_pixels(pixels));
        }
        out
    }
}
