//! Raster occupancy maps and the contractors built on them.
//!
//! Cell `(c, r)` (column `c`, row `r` counted from the bottom) covers the
//! closed world rectangle `[x0 + c·res, x0 + (c+1)·res] × [y0 + r·res,
//! y0 + (r+1)·res]`. Box queries go through an integral image of obstacle
//! counts, so a contraction costs `O(log W + log H)` rectangle sums.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::contractor::{Contract, Contractor};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::interval_box::IntervalBox;
use crate::pgm::{decode_pgm, GrayImage};

/// Pixels darker than this are obstacles.
pub const DEFAULT_THRESHOLD: u8 = 128;

/// Which pixel class a raster contractor is consistent with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RasterTarget {
    Obstacle,
    Free,
}

/// World frame of a raster, read from the `.toml` sidecar next to the image.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapMeta {
    /// Meters per pixel.
    pub resolution: f64,
    /// World coordinates of the lower-left image corner.
    pub origin: [f64; 2],
    #[serde(default = "default_threshold")]
    pub threshold: u8,
    /// Whether the world outside the raster extent is free space.
    #[serde(default = "default_outside_free")]
    pub outside_free: bool,
}

fn default_threshold() -> u8 {
    DEFAULT_THRESHOLD
}

fn default_outside_free() -> bool {
    true
}

impl MapMeta {
    pub fn parse(text: &str) -> Result<MapMeta> {
        let meta: MapMeta = toml::from_str(text).map_err(|e| Error::Map(e.to_string()))?;
        if !(meta.resolution.is_finite() && meta.resolution > 0.0) {
            return Err(Error::Map("resolution must be positive".into()));
        }
        if !meta.origin.iter().all(|v| v.is_finite()) {
            return Err(Error::Map("origin must be finite".into()));
        }
        Ok(meta)
    }
}

#[derive(Clone, Debug)]
pub struct OccupancyMap {
    width: usize,
    height: usize,
    origin: [f64; 2],
    resolution: f64,
    outside_free: bool,
    /// Obstacle flags, row 0 at the bottom.
    cells: Vec<bool>,
    /// `(width+1) × (height+1)` prefix sums of obstacle cells.
    integral: Vec<u32>,
}

impl OccupancyMap {
    /// Builds a map from obstacle flags given top row first, as in images.
    pub fn from_cells_top_down(
        width: usize,
        height: usize,
        cells_top_down: &[bool],
        origin: [f64; 2],
        resolution: f64,
    ) -> Result<OccupancyMap> {
        if width == 0 || height == 0 || cells_top_down.len() != width * height {
            return Err(Error::Map("cell count does not match dimensions".into()));
        }
        if !(resolution.is_finite() && resolution > 0.0) || !origin.iter().all(|v| v.is_finite()) {
            return Err(Error::Map("invalid world frame".into()));
        }
        let mut cells = vec![false; width * height];
        for r in 0..height {
            let src = &cells_top_down[(height - 1 - r) * width..(height - r) * width];
            cells[r * width..(r + 1) * width].copy_from_slice(src);
        }
        let mut integral = vec![0u32; (width + 1) * (height + 1)];
        for r in 0..height {
            let mut row_sum = 0u32;
            for c in 0..width {
                row_sum += cells[r * width + c] as u32;
                integral[(r + 1) * (width + 1) + c + 1] = integral[r * (width + 1) + c + 1] + row_sum;
            }
        }
        Ok(OccupancyMap { width, height, origin, resolution, outside_free: true, cells, integral })
    }

    /// Parses an ASCII drawing (`#` obstacle, anything else free), top row first.
    pub fn from_ascii(rows: &[&str], origin: [f64; 2], resolution: f64) -> Result<OccupancyMap> {
        let width = rows.first().map_or(0, |r| r.chars().count());
        if rows.iter().any(|r| r.chars().count() != width) {
            return Err(Error::Map("ragged ascii map".into()));
        }
        let cells: Vec<bool> = rows.iter().flat_map(|r| r.chars().map(|c| c == '#')).collect();
        Self::from_cells_top_down(width, rows.len(), &cells, origin, resolution)
    }

    pub fn from_gray(img: &GrayImage, meta: &MapMeta) -> Result<OccupancyMap> {
        let cells: Vec<bool> = img.pixels.iter().map(|&p| p < meta.threshold).collect();
        let mut map = Self::from_cells_top_down(img.width, img.height, &cells, meta.origin, meta.resolution)?;
        map.outside_free = meta.outside_free;
        Ok(map)
    }

    /// Loads a PGM or PNG raster together with its `.toml` sidecar.
    pub fn load(path: &Path) -> Result<OccupancyMap> {
        let meta_path = path.with_extension("toml");
        let meta_text = std::fs::read_to_string(&meta_path)
            .map_err(|e| Error::Map(format!("cannot read sidecar {}: {e}", meta_path.display())))?;
        let meta = MapMeta::parse(&meta_text)?;
        let bytes = std::fs::read(path)?;
        let img = if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
            decode_pgm(&bytes)?
        } else {
            let dynimg = image::load_from_memory(&bytes).map_err(|e| Error::Map(e.to_string()))?;
            let luma = dynimg.to_luma8();
            GrayImage {
                width: luma.width() as usize,
                height: luma.height() as usize,
                pixels: luma.into_raw(),
            }
        };
        Self::from_gray(&img, &meta)
    }

    pub fn with_outside_free(mut self, outside_free: bool) -> Self {
        self.outside_free = outside_free;
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn outside_free(&self) -> bool {
        self.outside_free
    }

    fn edge(&self, axis: usize, k: usize) -> f64 {
        self.origin[axis] + k as f64 * self.resolution
    }

    fn cells_along(&self, axis: usize) -> usize {
        if axis == 0 {
            self.width
        } else {
            self.height
        }
    }

    /// World box covered by the raster.
    pub fn extent(&self) -> IntervalBox {
        IntervalBox::new([
            Interval::new(self.edge(0, 0), self.edge(0, self.width)),
            Interval::new(self.edge(1, 0), self.edge(1, self.height)),
        ])
    }

    pub fn is_obstacle_cell(&self, c: usize, r: usize) -> bool {
        self.cells[r * self.width + c]
    }

    /// Cell containing the world point, if inside the extent.
    pub fn cell_at(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let idx = |axis: usize, v: f64| -> Option<usize> {
            let n = self.cells_along(axis);
            if !(self.edge(axis, 0) <= v && v <= self.edge(axis, n)) {
                return None;
            }
            let k = ((v - self.origin[axis]) / self.resolution).floor();
            Some((k.max(0.0) as usize).min(n - 1))
        };
        Some((idx(0, x)?, idx(1, y)?))
    }

    /// Point lookup applying the out-of-extent policy.
    pub fn is_obstacle_at(&self, x: f64, y: f64) -> bool {
        match self.cell_at(x, y) {
            Some((c, r)) => self.is_obstacle_cell(c, r),
            None => !self.outside_free,
        }
    }

    /// Obstacle cells in the inclusive cell rectangle.
    fn obstacles_in(&self, c0: usize, c1: usize, r0: usize, r1: usize) -> u32 {
        let w = self.width + 1;
        let at = |c: usize, r: usize| self.integral[r * w + c];
        at(c1 + 1, r1 + 1) + at(c0, r0) - at(c0, r1 + 1) - at(c1 + 1, r0)
    }

    fn count(&self, target: RasterTarget, c0: usize, c1: usize, r0: usize, r1: usize) -> u32 {
        let obstacles = self.obstacles_in(c0, c1, r0, r1);
        match target {
            RasterTarget::Obstacle => obstacles,
            RasterTarget::Free => ((c1 - c0 + 1) * (r1 - r0 + 1)) as u32 - obstacles,
        }
    }

    /// Inclusive range of cells whose closed extent meets `iv` along `axis`.
    fn cell_span(&self, axis: usize, iv: &Interval) -> Option<(usize, usize)> {
        let n = self.cells_along(axis);
        if iv.is_empty() || iv.hi() < self.edge(axis, 0) || iv.lo() > self.edge(axis, n) {
            return None;
        }
        let guess = |v: f64| -> usize {
            let k = ((v - self.origin[axis]) / self.resolution).floor();
            if k <= 0.0 {
                0
            } else {
                (k as usize).min(n - 1)
            }
        };
        // First cell with upper edge >= lo.
        let mut lo = guess(iv.lo());
        while lo > 0 && self.edge(axis, lo) >= iv.lo() {
            lo -= 1;
        }
        while self.edge(axis, lo + 1) < iv.lo() {
            lo += 1;
        }
        // Last cell with lower edge <= hi.
        let mut hi = guess(iv.hi());
        while hi + 1 < n && self.edge(axis, hi + 1) <= iv.hi() {
            hi += 1;
        }
        while hi > 0 && self.edge(axis, hi) > iv.hi() {
            hi -= 1;
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Smallest box containing every `target` point of `x`, applying the
    /// out-of-extent policy.
    pub fn contract(&self, target: RasterTarget, x: &IntervalBox) -> IntervalBox {
        if x.is_empty() {
            return x.clone();
        }
        let mut hull = IntervalBox::empty(2);
        if let (Some((c0, c1)), Some((r0, r1))) = (self.cell_span(0, &x[0]), self.cell_span(1, &x[1])) {
            if self.count(target, c0, c1, r0, r1) > 0 {
                // Binary searches for the tight cell rectangle.
                let has = |a: usize, b: usize, c: usize, d: usize| self.count(target, a, b, c, d) > 0;
                let first = |lo: usize, hi: usize, pred: &dyn Fn(usize) -> bool| {
                    let (mut l, mut h) = (lo, hi);
                    while l < h {
                        let m = l + (h - l) / 2;
                        if pred(m) {
                            h = m;
                        } else {
                            l = m + 1;
                        }
                    }
                    l
                };
                let cmin = first(c0, c1, &|m| has(c0, m, r0, r1));
                let cmax = c1 - first(0, c1 - cmin, &|k| has(c1 - k, c1, r0, r1));
                let rmin = first(r0, r1, &|m| has(cmin, cmax, r0, m));
                let rmax = r1 - first(0, r1 - rmin, &|k| has(cmin, cmax, r1 - k, r1));
                hull = IntervalBox::new([
                    Interval::new(self.edge(0, cmin), self.edge(0, cmax + 1)),
                    Interval::new(self.edge(1, rmin), self.edge(1, rmax + 1)),
                ])
                .intersect(x);
            }
        }
        let outside_is_target = match target {
            RasterTarget::Obstacle => !self.outside_free,
            RasterTarget::Free => self.outside_free,
        };
        if outside_is_target {
            for piece in x.difference(&self.extent()) {
                hull = hull.hull(&piece);
            }
        }
        hull
    }
}

/// Contractor consistent with the obstacle or free region of a raster map.
pub fn ctc_raster(map: Arc<OccupancyMap>, target: RasterTarget) -> Contractor {
    Contractor::new(RasterContractor { map, target })
}

struct RasterContractor {
    map: Arc<OccupancyMap>,
    target: RasterTarget,
}

impl Contract for RasterContractor {
    fn dim(&self) -> usize {
        2
    }

    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.map.contract(self.target, x)
    }
}
