//! Reference oracles shared by the integration tests. Nothing in here calls
//! into the production code paths it is used to check.
#![allow(dead_code)]

use erqa::{EdgeMap, Frame, ShiftVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Straight-line Canny: explicit 3x3 Sobel kernels with clamped indices,
/// direction from `atan2` in degrees, and hysteresis by repeated sweeps.
pub fn reference_canny(frame: &Frame, low: f64, high: f64) -> Vec<bool> {
    const KX: [[i32; 3]; 3] = [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]];
    const KY: [[i32; 3]; 3] = [[-1, -2, -1], [0, 0, 0], [1, 2, 1]];
    let w = frame.width() as i64;
    let h = frame.height() as i64;
    let pix =
        |x: i64, y: i64| frame.get(x.clamp(0, w - 1) as usize, y.clamp(0, h - 1) as usize) as i32;

    let mut gx = vec![vec![0i32; w as usize]; h as usize];
    let mut gy = vec![vec![0i32; w as usize]; h as usize];
    let mut mag = vec![vec![0f64; w as usize]; h as usize];
    for y in 0..h {
        for x in 0..w {
            let (mut sx, mut sy) = (0, 0);
            for ky in 0..3 {
                for kx in 0..3 {
                    let v = pix(x + kx as i64 - 1, y + ky as i64 - 1);
                    sx += KX[ky][kx] * v;
                    sy += KY[ky][kx] * v;
                }
            }
            gx[y as usize][x as usize] = sx;
            gy[y as usize][x as usize] = sy;
            mag[y as usize][x as usize] = (sx.abs() + sy.abs()) as f64;
        }
    }
    let m = |x: i64, y: i64| {
        if x < 0 || y < 0 || x >= w || y >= h {
            0.0
        } else {
            mag[y as usize][x as usize]
        }
    };

    let mut nms = vec![vec![0f64; w as usize]; h as usize];
    for y in 0..h {
        for x in 0..w {
            let here = m(x, y);
            if here == 0.0 {
                continue;
            }
            let (sx, sy) = (
                gx[y as usize][x as usize] as f64,
                gy[y as usize][x as usize] as f64,
            );
            let mut angle = sy.atan2(sx).to_degrees();
            if angle < 0.0 {
                angle += 180.0;
            }
            if angle >= 180.0 {
                angle -= 180.0;
            }
            // (earlier-in-raster neighbour, later neighbour)
            let (a, b) = if !(22.5..157.5).contains(&angle) {
                (m(x - 1, y), m(x + 1, y))
            } else if angle < 67.5 {
                (m(x - 1, y - 1), m(x + 1, y + 1))
            } else if angle < 112.5 {
                (m(x, y - 1), m(x, y + 1))
            } else {
                (m(x + 1, y - 1), m(x - 1, y + 1))
            };
            if here > a && here >= b {
                nms[y as usize][x as usize] = here;
            }
        }
    }

    let mut edge = vec![vec![false; w as usize]; h as usize];
    for y in 0..h as usize {
        for x in 0..w as usize {
            edge[y][x] = nms[y][x] >= high;
        }
    }
    loop {
        let mut changed = false;
        for y in 0..h {
            for x in 0..w {
                if edge[y as usize][x as usize] || nms[y as usize][x as usize] < low {
                    continue;
                }
                let mut linked = false;
                for ny in y - 1..=y + 1 {
                    for nx in x - 1..=x + 1 {
                        if nx >= 0 && ny >= 0 && nx < w && ny < h && edge[ny as usize][nx as usize]
                        {
                            linked = true;
                        }
                    }
                }
                if linked {
                    edge[y as usize][x as usize] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    edge.into_iter().flatten().collect()
}

/// (tp, fp, fn) of tolerant v1.0 matching by exhaustive pairwise distance checks.
pub fn brute_force_v10(gt: &EdgeMap, dist: &EdgeMap) -> (usize, usize, usize) {
    let g: Vec<(i64, i64)> = gt.points().map(|(x, y)| (x as i64, y as i64)).collect();
    let d: Vec<(i64, i64)> = dist.points().map(|(x, y)| (x as i64, y as i64)).collect();
    let near = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).abs().max((a.1 - b.1).abs()) <= 1;
    let tp = d.iter().filter(|&&p| g.iter().any(|&q| near(p, q))).count();
    let fp = d.len() - tp;
    let fn_ = g
        .iter()
        .filter(|&&q| !d.iter().any(|&p| near(p, q)))
        .count();
    (tp, fp, fn_)
}

pub fn random_edge_map(rng: &mut ChaCha8Rng, w: usize, h: usize, density: f64) -> EdgeMap {
    let mask = (0..w * h).map(|_| rng.gen_bool(density)).collect();
    EdgeMap::new(w, h, mask).unwrap()
}

/// Every edge pixel also set on its 3x3 neighbourhood.
pub fn dilate3x3(map: &EdgeMap) -> EdgeMap {
    let (w, h) = (map.width() as i64, map.height() as i64);
    let mut out = EdgeMap::empty(map.width(), map.height());
    for (x, y) in map.points() {
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                if nx >= 0 && ny >= 0 && nx < w && ny < h {
                    out.set(nx as usize, ny as usize, true);
                }
            }
        }
    }
    out
}

/// Direct PSNR of `gt(x, y)` against `dist(x + dx, y + dy)` over all valid
/// positions; `None` stands for infinity.
pub fn brute_psnr_at(gt: &Frame, dist: &Frame, dx: i32, dy: i32) -> Option<f64> {
    let (w, h) = (gt.width() as i64, gt.height() as i64);
    let (mut sse, mut n) = (0f64, 0f64);
    for y in 0..h {
        for x in 0..w {
            let (sx, sy) = (x + dx as i64, y + dy as i64);
            if sx < 0 || sy < 0 || sx >= w || sy >= h {
                continue;
            }
            let d =
                gt.get(x as usize, y as usize) as f64 - dist.get(sx as usize, sy as usize) as f64;
            sse += d * d;
            n += 1.0;
        }
    }
    if sse == 0.0 {
        None
    } else {
        Some(10.0 * (255.0f64 * 255.0 / (sse / n)).log10())
    }
}

/// Argmax of the brute-force grid with the smallest-|dx|+|dy|, then dy, then dx rule.
pub fn brute_best_shift(gt: &Frame, dist: &Frame, radius: i32) -> ShiftVector {
    let score = |v: Option<f64>| v.unwrap_or(f64::INFINITY);
    let mut best: Option<(f64, (i32, i32, i32), ShiftVector)> = None;
    for dy in -radius..=radius {
        for dx in -radius..=radius {
            let p = score(brute_psnr_at(gt, dist, dx, dy));
            let key = (dx.abs() + dy.abs(), dy, dx);
            let take = match &best {
                None => true,
                Some((bp, bk, _)) => p > *bp || (p == *bp && key < *bk),
            };
            if take {
                best = Some((p, key, ShiftVector::new(dx, dy)));
            }
        }
    }
    best.unwrap().2
}
