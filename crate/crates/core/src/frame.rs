//! Frames, regions and shift geometry.
//!
//! A [`Frame`] is an 8-bit raster with one (luma) or three (RGB, interleaved)
//! channels. Everything downstream consumes frames; the metric pipeline works
//! on the luma plane obtained from [`Frame::to_luma`].

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use image::codecs::png::PngDecoder;
use image::{ColorType, DynamicImage, ExtendedColorType, ImageDecoder};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest width/height an analysed frame or region may have.
pub const MIN_DIMENSION: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl std::fmt::Debug for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Frame")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("channels", &self.channels)
            .finish_non_exhaustive()
    }
}

impl Frame {
    /// Wraps row-major samples. `data.len()` must equal `width * height * channels`.
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::contract(format!(
                "frames have 1 or 3 channels, got {channels}"
            )));
        }
        if width == 0 || height == 0 {
            return Err(Error::geometry(format!("empty frame {width}x{height}")));
        }
        if data.len() != width * height * channels {
            return Err(Error::geometry(format!(
                "sample count {} does not match {width}x{height}x{channels}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    /// Single-channel frame filled with `value`.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, 1, vec![value; width * height])
    }

    /// Single-channel frame from a closure of `(x, y)`.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, 1, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    /// Samples of pixel `(x, y)`, one per channel.
    pub fn pixel(&self, x: usize, y: usize) -> &[u8] {
        let i = (y * self.width + x) * self.channels;
        &self.data[i..i + self.channels]
    }

    /// Luma sample at `(x, y)` of a single-channel frame.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        debug_assert_eq!(self.channels, 1);
        self.data[y * self.width + x]
    }

    pub fn same_shape(&self, other: &Frame) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    /// Rec. 601 luma, `round(0.299 R + 0.587 G + 0.114 B)` with halves rounded up.
    /// Single-channel frames are returned unchanged.
    pub fn to_luma(&self) -> Frame {
        if self.channels == 1 {
            return self.clone();
        }
        let data = self
            .data
            .chunks_exact(3)
            .map(|p| {
                let weighted = 299 * p[0] as u32 + 587 * p[1] as u32 + 114 * p[2] as u32;
                ((weighted + 500) / 1000).min(255) as u8
            })
            .collect();
        Frame {
            width: self.width,
            height: self.height,
            channels: 1,
            data,
        }
    }

    /// Copies `region` out of the frame without resampling.
    pub fn crop(&self, region: &Region) -> Result<Frame> {
        region.validate_within(self.width, self.height)?;
        Ok(self.crop_unchecked(region.x, region.y, region.w, region.h))
    }

    fn crop_unchecked(&self, x0: usize, y0: usize, w: usize, h: usize) -> Frame {
        let row_len = w * self.channels;
        let mut data = Vec::with_capacity(row_len * h);
        for y in y0..y0 + h {
            let start = (y * self.width + x0) * self.channels;
            data.extend_from_slice(&self.data[start..start + row_len]);
        }
        Frame {
            width: w,
            height: h,
            channels: self.channels,
            data,
        }
    }

    /// Replaces every sample by `255 - v`.
    pub fn inverted(&self) -> Frame {
        Frame {
            data: self.data.iter().map(|v| 255 - v).collect(),
            ..self.clone()
        }
    }
}

/// Axis-aligned rectangle inside a frame, at least `MIN_DIMENSION` on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl Region {
    pub fn new(x: usize, y: usize, w: usize, h: usize) -> Self {
        Self { x, y, w, h }
    }

    pub fn full(frame: &Frame) -> Self {
        Self::new(0, 0, frame.width(), frame.height())
    }

    pub fn validate_within(&self, width: usize, height: usize) -> Result<()> {
        if self.w < MIN_DIMENSION || self.h < MIN_DIMENSION {
            return Err(Error::geometry(format!(
                "region {}x{} is smaller than the {MIN_DIMENSION}x{MIN_DIMENSION} minimum",
                self.w, self.h
            )));
        }
        if self.x + self.w > width || self.y + self.h > height {
            return Err(Error::geometry(format!(
                "region ({}, {}, {}, {}) exceeds frame {width}x{height}",
                self.x, self.y, self.w, self.h
            )));
        }
        Ok(())
    }
}

/// Integer displacement of the distorted frame relative to ground truth.
/// Positive `dx` moves content right, positive `dy` moves it down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ShiftVector {
    pub dx: i32,
    pub dy: i32,
}

impl ShiftVector {
    pub const ZERO: ShiftVector = ShiftVector { dx: 0, dy: 0 };

    pub fn new(dx: i32, dy: i32) -> Self {
        Self { dx, dy }
    }

    pub fn manhattan(&self) -> i32 {
        self.dx.abs() + self.dy.abs()
    }
}

impl std::ops::Neg for ShiftVector {
    type Output = ShiftVector;

    fn neg(self) -> ShiftVector {
        ShiftVector::new(-self.dx, -self.dy)
    }
}

impl std::fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// Crops `gt` and `dist` to their common area under the hypothesis that
/// `dist` is `gt` translated by `shift`. Both outputs are
/// `(width - |dx|) x (height - |dy|)` and pixel-aligned; nothing is padded.
pub fn overlap_pair(gt: &Frame, dist: &Frame, shift: ShiftVector) -> Result<(Frame, Frame)> {
    if !gt.same_shape(dist) {
        return Err(Error::geometry(format!(
            "frame shapes differ: {}x{}x{} vs {}x{}x{}",
            gt.width, gt.height, gt.channels, dist.width, dist.height, dist.channels
        )));
    }
    let (adx, ady) = (
        shift.dx.unsigned_abs() as usize,
        shift.dy.unsigned_abs() as usize,
    );
    if adx >= gt.width || ady >= gt.height {
        return Err(Error::geometry(format!(
            "shift {shift} leaves no overlap in a {}x{} frame",
            gt.width, gt.height
        )));
    }
    let (w, h) = (gt.width - adx, gt.height - ady);
    // dist(x + dx, y + dy) corresponds to gt(x, y)
    let (gx, dx0) = if shift.dx >= 0 { (0, adx) } else { (adx, 0) };
    let (gy, dy0) = if shift.dy >= 0 { (0, ady) } else { (ady, 0) };
    Ok((
        gt.crop_unchecked(gx, gy, w, h),
        dist.crop_unchecked(dx0, dy0, w, h),
    ))
}

/// Decodes an 8-bit gray or RGB PNG. Alpha is dropped, 16-bit input is rejected.
pub fn load_frame(path: impl AsRef<Path>) -> Result<Frame> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let decode_err = |message: String| Error::Decode {
        path: path.to_path_buf(),
        message,
    };
    let decoder = PngDecoder::new(BufReader::new(file)).map_err(|e| decode_err(e.to_string()))?;
    let color = decoder.color_type();
    match color {
        ColorType::L8 | ColorType::La8 | ColorType::Rgb8 | ColorType::Rgba8 => {}
        ColorType::L16 | ColorType::La16 | ColorType::Rgb16 | ColorType::Rgba16 => {
            return Err(decode_err("unsupported bit depth 16".into()))
        }
        other => return Err(decode_err(format!("unsupported color type {other:?}"))),
    }
    let image = DynamicImage::from_decoder(decoder).map_err(|e| decode_err(e.to_string()))?;
    let (w, h) = (image.width() as usize, image.height() as usize);
    let (channels, data) = match color {
        ColorType::L8 | ColorType::La8 => (1, image.into_luma8().into_raw()),
        _ => (3, image.into_rgb8().into_raw()),
    };
    Frame::new(w, h, channels, data)
}

/// Encodes a frame as an 8-bit gray or RGB PNG.
pub fn save_frame(frame: &Frame, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let color = if frame.channels == 1 {
        ExtendedColorType::L8
    } else {
        ExtendedColorType::Rgb8
    };
    image::save_buffer_with_format(
        path,
        &frame.data,
        frame.width as u32,
        frame.height as u32,
        color,
        image::ImageFormat::Png,
    )
    .map_err(|e| match e {
        image::ImageError::IoError(io) => Error::io(path, io),
        other => Error::Decode {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    })
}
