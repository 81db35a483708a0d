//! Canny edge detection.
//!
//! The detector follows the classic four steps: 3x3 Sobel derivatives with
//! replicated borders, gradient magnitude, non-maximum suppression along the
//! gradient direction quantized to four sectors, and double-threshold
//! hysteresis with 8-connectivity. No smoothing is applied unless
//! [`CannyParams::pre_blur_sigma`] is set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, MIN_DIMENSION};

/// Binary edge mask, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl std::fmt::Debug for EdgeMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "EdgeMap({}x{}, {} edge pixels)",
            self.width,
            self.height,
            self.count()
        )?;
        if self.width * self.height <= 400 {
            for y in 0..self.height {
                f.write_str("\n")?;
                for x in 0..self.width {
                    f.write_str(if self.get(x, y) { "#" } else { "." })?;
                }
            }
        }
        Ok(())
    }
}

impl EdgeMap {
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != width * height {
            return Err(Error::geometry(format!(
                "mask length {} does not match {width}x{height}",
                mask.len()
            )));
        }
        Ok(Self {
            width,
            height,
            mask,
        })
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            mask: vec![false; width * height],
        }
    }

    /// Builds a map with the listed `(x, y)` pixels set. Out-of-range points are an error.
    pub fn from_points(width: usize, height: usize, points: &[(usize, usize)]) -> Result<Self> {
        let mut map = Self::empty(width, height);
        for &(x, y) in points {
            if x >= width || y >= height {
                return Err(Error::geometry(format!(
                    "point ({x}, {y}) outside {width}x{height}"
                )));
            }
            map.set(x, y, true);
        }
        Ok(map)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.mask[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.mask[y * self.width + x] = value;
    }

    /// Number of edge pixels.
    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Edge pixel coordinates in raster order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(move |(i, _)| (i % w, i / w))
    }

    pub fn is_subset_of(&self, other: &EdgeMap) -> bool {
        self.mask.len() == other.mask.len()
            && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// 8-bit rendering, 255 on edges and 0 elsewhere.
    pub fn to_frame(&self) -> Frame {
        let data = self.mask.iter().map(|&m| if m { 255 } else { 0 }).collect();
        Frame::new(self.width, self.height, 1, data).expect("edge map dimensions are non-zero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MagnitudeNorm {
    /// `|dx| + |dy|`
    #[default]
    L1,
    /// `sqrt(dx^2 + dy^2)`
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CannyParams {
    /// Threshold for linking weak edge pixels.
    pub low_threshold: f64,
    /// Threshold for seeding strong edge pixels.
    pub high_threshold: f64,
    #[serde(default)]
    pub magnitude_norm: MagnitudeNorm,
    /// Optional Gaussian pre-smoothing, off by default.
    #[serde(default)]
    pub pre_blur_sigma: Option<f64>,
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            low_threshold: 100.0,
            high_threshold: 200.0,
            magnitude_norm: MagnitudeNorm::L1,
            pre_blur_sigma: None,
        }
    }
}

impl CannyParams {
    pub fn with_thresholds(low: f64, high: f64) -> Self {
        Self {
            low_threshold: low,
            high_threshold: high,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.low_threshold > 0.0 && self.low_threshold <= self.high_threshold) {
            return Err(Error::contract(format!(
                "canny thresholds must satisfy 0 < low <= high, got low={} high={}",
                self.low_threshold, self.high_threshold
            )));
        }
        if let Some(s) = self.pre_blur_sigma {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::contract(format!(
                    "blur sigma must be positive, got {s}"
                )));
            }
        }
        Ok(())
    }
}

/// Sobel derivatives of a single-channel frame with replicated borders.
pub(crate) fn sobel(frame: &Frame) -> (Vec<i32>, Vec<i32>) {
    let (w, h) = (frame.width(), frame.height());
    let px = frame.data();
    let mut gx = vec![0i32; w * h];
    let mut gy = vec![0i32; w * h];
    for y in 0..h {
        let up = &px[y.saturating_sub(1) * w..][..w];
        let mid = &px[y * w..][..w];
        let down = &px[(y + 1).min(h - 1) * w..][..w];
        for x in 0..w {
            let l = x.saturating_sub(1);
            let r = (x + 1).min(w - 1);
            let (ul, uc, ur) = (up[l] as i32, up[x] as i32, up[r] as i32);
            let (ml, mr) = (mid[l] as i32, mid[r] as i32);
            let (dl, dc, dr) = (down[l] as i32, down[x] as i32, down[r] as i32);
            gx[y * w + x] = (ur + 2 * mr + dr) - (ul + 2 * ml + dl);
            gy[y * w + x] = (dl + 2 * dc + dr) - (ul + 2 * uc + ur);
        }
    }
    (gx, gy)
}

// tan(22.5 deg) and tan(67.5 deg)
const TAN_22_5: f64 = 0.414_213_562_373_095_03;
const TAN_67_5: f64 = 2.414_213_562_373_095;

/// Detects edges in a single-channel frame.
pub fn detect_edges(frame: &Frame, params: &CannyParams) -> Result<EdgeMap> {
    if frame.channels() != 1 {
        return Err(Error::contract(format!(
            "edge detection needs a single-channel frame, got {} channels",
            frame.channels()
        )));
    }
    if frame.width() < MIN_DIMENSION || frame.height() < MIN_DIMENSION {
        return Err(Error::geometry(format!(
            "frame {}x{} is below the {MIN_DIMENSION}x{MIN_DIMENSION} minimum",
            frame.width(),
            frame.height()
        )));
    }
    params.validate()?;

    let blurred;
    let frame = match params.pre_blur_sigma {
        Some(sigma) => {
            blurred = gaussian_blur(frame, sigma);
            &blurred
        }
        None => frame,
    };

    let (w, h) = (frame.width(), frame.height());
    let (gx, gy) = sobel(frame);
    let mag: Vec<f64> = gx
        .iter()
        .zip(&gy)
        .map(|(&dx, &dy)| match params.magnitude_norm {
            MagnitudeNorm::L1 => (dx.abs() + dy.abs()) as f64,
            MagnitudeNorm::L2 => ((dx * dx + dy * dy) as f64).sqrt(),
        })
        .collect();

    let at = |x: isize, y: isize| -> f64 {
        if x < 0 || y < 0 || x >= w as isize || y >= h as isize {
            0.0
        } else {
            mag[y as usize * w + x as usize]
        }
    };

    // Non-maximum suppression. Of the two neighbours along the gradient the
    // one earlier in raster order must be strictly smaller, the later one
    // no larger, so a plateau two pixels wide yields a single edge pixel.
    let mut thin = vec![0.0f64; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let m = mag[i];
            if m < params.low_threshold {
                continue;
            }
            let (dx, dy) = (gx[i] as f64, gy[i] as f64);
            let (ax, ay) = (dx.abs(), dy.abs());
            let (xi, yi) = (x as isize, y as isize);
            let (before, after) = if ay < ax * TAN_22_5 {
                (at(xi - 1, yi), at(xi + 1, yi))
            } else if ay > ax * TAN_67_5 {
                (at(xi, yi - 1), at(xi, yi + 1))
            } else if (dx > 0.0) == (dy > 0.0) {
                (at(xi - 1, yi - 1), at(xi + 1, yi + 1))
            } else {
                (at(xi + 1, yi - 1), at(xi - 1, yi + 1))
            };
            if m > before && m >= after {
                thin[i] = m;
            }
        }
    }

    Ok(hysteresis(w, h, &thin, params))
}

fn hysteresis(w: usize, h: usize, thin: &[f64], params: &CannyParams) -> EdgeMap {
    let mut out = EdgeMap::empty(w, h);
    let mut stack: Vec<usize> = Vec::new();
    for (i, &m) in thin.iter().enumerate() {
        if m >= params.high_threshold {
            out.mask[i] = true;
            stack.push(i);
        }
    }
    while let Some(i) = stack.pop() {
        let (x, y) = ((i % w) as isize, (i / w) as isize);
        for ny in y - 1..=y + 1 {
            for nx in x - 1..=x + 1 {
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if !out.mask[j] && thin[j] >= params.low_threshold {
                    out.mask[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    out
}

/// Separable Gaussian blur with replicated borders, rounded back to 8 bits.
fn gaussian_blur(frame: &Frame, sigma: f64) -> Frame {
    let radius = (3.0 * sigma).ceil().max(1.0) as isize;
    let mut kernel: Vec<f64> = (-radius..=radius)
        .map(|k| (-(k * k) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|k| *k /= sum);

    let (w, h) = (frame.width() as isize, frame.height() as isize);
    let px = frame.data();
    let mut tmp = vec![0.0f64; px.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (k, &kv) in kernel.iter().enumerate() {
                let sx = (x + k as isize - radius).clamp(0, w - 1);
                acc += kv * px[(y * w + sx) as usize] as f64;
            }
            tmp[(y * w + x) as usize] = acc;
        }
    }
    let mut data = vec![0u8; px.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (k, &kv) in kernel.iter().enumerate() {
                let sy = (y + k as isize - radius).clamp(0, h - 1);
                acc += kv * tmp[(sy * w + x) as usize];
            }
            data[(y * w + x) as usize] = acc.round().clamp(0.0, 255.0) as u8;
        }
    }
    Frame::new(frame.width(), frame.height(), 1, data).expect("same dimensions as input")
}
