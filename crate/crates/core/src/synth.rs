//! Deterministic synthetic test content.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frame::{Frame, ShiftVector};

/// A piecewise-smooth luma frame: a gentle gradient overlaid with random
/// rectangles, discs and thin strokes of random intensity.
pub fn textured_frame(seed: u64, width: usize, height: usize) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gx: f64 = rng.gen_range(-0.5..0.5);
    let gy: f64 = rng.gen_range(-0.5..0.5);
    let base: f64 = rng.gen_range(60.0..190.0);
    let mut px: Vec<u8> = (0..width * height)
        .map(|i| {
            let (x, y) = ((i % width) as f64, (i / width) as f64);
            (base + gx * x + gy * y).clamp(0.0, 255.0) as u8
        })
        .collect();

    let shapes = 6 + (width * height) / 900;
    for _ in 0..shapes {
        let value: u8 = rng.gen();
        match rng.gen_range(0..3) {
            0 => {
                let x0 = rng.gen_range(0..width);
                let y0 = rng.gen_range(0..height);
                let w = rng.gen_range(3..=(width / 3).max(4));
                let h = rng.gen_range(3..=(height / 3).max(4));
                for y in y0..(y0 + h).min(height) {
                    for x in x0..(x0 + w).min(width) {
                        px[y * width + x] = value;
                    }
                }
            }
            1 => {
                let cx = rng.gen_range(0..width) as f64;
                let cy = rng.gen_range(0..height) as f64;
                let r = rng.gen_range(2.0..(width.min(height) as f64 / 5.0).max(3.0));
                for y in 0..height {
                    for x in 0..width {
                        let (dx, dy) = (x as f64 - cx, y as f64 - cy);
                        if dx * dx + dy * dy <= r * r {
                            px[y * width + x] = value;
                        }
                    }
                }
            }
            _ => {
                let horizontal = rng.gen_bool(0.5);
                let thickness = rng.gen_range(1..=2);
                if horizontal {
                    let y0 = rng.gen_range(0..height);
                    for y in y0..(y0 + thickness).min(height) {
                        for x in 0..width {
                            px[y * width + x] = value;
                        }
                    }
                } else {
                    let x0 = rng.gen_range(0..width);
                    for y in 0..height {
                        for x in x0..(x0 + thickness).min(width) {
                            px[y * width + x] = value;
                        }
                    }
                }
            }
        }
    }
    Frame::new(width, height, 1, px).expect("dimensions are non-zero")
}

/// Translates a single-channel frame by `shift`; pixels uncovered by the
/// move are filled with seeded noise.
pub fn translated(frame: &Frame, shift: ShiftVector, seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (frame.width() as i64, frame.height() as i64);
    let mut data = Vec::with_capacity(frame.data().len());
    for y in 0..h {
        for x in 0..w {
            let (sx, sy) = (x - shift.dx as i64, y - shift.dy as i64);
            if sx >= 0 && sy >= 0 && sx < w && sy < h {
                data.push(frame.get(sx as usize, sy as usize));
            } else {
                data.push(rng.gen());
            }
        }
    }
    Frame::new(frame.width(), frame.height(), 1, data).expect("same dimensions as input")
}

/// Uniform random noise.
pub fn noise_frame(seed: u64, width: usize, height: usize) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..width * height).map(|_| rng.gen()).collect();
    Frame::new(width, height, 1, data).expect("dimensions are non-zero")
}
