//! PSNR and global integer-shift compensation.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::{overlap_pair, Frame, ShiftVector, MIN_DIMENSION};

/// Default search radius: shifts in `[-3, 3]` along both axes.
pub const DEFAULT_SHIFT_RADIUS: u32 = 3;

const PEAK: f64 = 255.0;

/// PSNR in decibels, with a distinguished infinite value for identical inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsnrValue {
    Finite(f64),
    Infinite,
}

impl PsnrValue {
    pub fn from_mse(mse: f64) -> Self {
        if mse == 0.0 {
            PsnrValue::Infinite
        } else {
            PsnrValue::Finite(10.0 * (PEAK * PEAK / mse).log10())
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PsnrValue::Infinite)
    }

    /// Decibel value, `f64::INFINITY` for the infinite case.
    pub fn as_f64(&self) -> f64 {
        match *self {
            PsnrValue::Finite(v) => v,
            PsnrValue::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for PsnrValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (PsnrValue::Infinite, PsnrValue::Infinite) => Some(Ordering::Equal),
            (PsnrValue::Infinite, _) => Some(Ordering::Greater),
            (_, PsnrValue::Infinite) => Some(Ordering::Less),
            (PsnrValue::Finite(a), PsnrValue::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl std::fmt::Display for PsnrValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsnrValue::Finite(v) => write!(f, "{v:.6}"),
            PsnrValue::Infinite => f.write_str("inf"),
        }
    }
}

/// PSNR between two single-channel frames of equal size, peak 255.
pub fn psnr(a: &Frame, b: &Frame) -> Result<PsnrValue> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::geometry(format!(
            "psnr needs equal sizes, got {}x{} and {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    if a.channels() != 1 || b.channels() != 1 {
        return Err(Error::contract("psnr operates on luma planes"));
    }
    let sse: u64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&p, &q)| {
            let d = p as i64 - q as i64;
            (d * d) as u64
        })
        .sum();
    Ok(PsnrValue::from_mse(sse as f64 / a.data().len() as f64))
}

/// Outcome of the exhaustive shift search.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSearchResult {
    pub shift: ShiftVector,
    pub psnr: PsnrValue,
    radius: u32,
    grid: Vec<PsnrValue>,
}

impl ShiftSearchResult {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// PSNR of candidate `(dx, dy)`, `None` outside the searched square.
    pub fn psnr_at(&self, dx: i32, dy: i32) -> Option<PsnrValue> {
        let r = self.radius as i32;
        if dx.abs() > r || dy.abs() > r {
            return None;
        }
        let side = 2 * r + 1;
        Some(self.grid[((dy + r) * side + (dx + r)) as usize])
    }

    /// Every candidate in row-major order (dy outer, dx inner).
    pub fn grid(&self) -> impl Iterator<Item = (ShiftVector, PsnrValue)> + '_ {
        candidates(self.radius)
            .into_iter()
            .zip(self.grid.iter().copied())
    }

    /// Writes the grid as `dx,dy,psnr` rows.
    pub fn write_grid_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "dx,dy,psnr")?;
        for (s, p) in self.grid() {
            writeln!(out, "{},{},{}", s.dx, s.dy, p)?;
        }
        Ok(())
    }
}

fn candidates(radius: u32) -> Vec<ShiftVector> {
    let r = radius as i32;
    (-r..=r)
        .flat_map(|dy| (-r..=r).map(move |dx| ShiftVector::new(dx, dy)))
        .collect()
}

/// Tie-break key: smaller is preferred among equal PSNR.
fn preference(s: &ShiftVector) -> (i32, i32, i32) {
    (s.manhattan(), s.dy, s.dx)
}

/// Searches every integer shift in `[-radius, radius]^2` and returns the one
/// whose overlap has the highest luma PSNR.
pub fn find_global_shift(gt: &Frame, dist: &Frame, radius: u32) -> Result<ShiftSearchResult> {
    if !gt.same_shape(dist) {
        return Err(Error::geometry(
            "shift search needs frames of identical shape",
        ));
    }
    let min = 2 * radius as usize + MIN_DIMENSION;
    if gt.width() <= min || gt.height() <= min {
        return Err(Error::geometry(format!(
            "frame {}x{} too small for shift radius {radius} (need > {min} on each side)",
            gt.width(),
            gt.height()
        )));
    }
    let gt = gt.to_luma();
    let dist = dist.to_luma();
    let cells = candidates(radius);
    let grid = cells
        .par_iter()
        .map(|&s| {
            let (a, b) = overlap_pair(&gt, &dist, s)?;
            psnr(&a, &b)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best = 0;
    for i in 1..cells.len() {
        let better = match grid[i].partial_cmp(&grid[best]) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => preference(&cells[i]) < preference(&cells[best]),
            _ => false,
        };
        if better {
            best = i;
        }
    }
    Ok(ShiftSearchResult {
        shift: cells[best],
        psnr: grid[best],
        radius,
        grid,
    })
}

/// Evaluates `metric` on the best-aligned overlap of `gt` and `dist`.
/// When the search picks the zero shift, `metric` sees the original frames.
pub fn score_with_compensation<T, F>(metric: F, gt: &Frame, dist: &Frame, radius: u32) -> Result<T>
where
    F: Fn(&Frame, &Frame) -> Result<T>,
{
    let found = find_global_shift(gt, dist, radius)?;
    if found.shift == ShiftVector::ZERO {
        return metric(gt, dist);
    }
    let (a, b) = overlap_pair(gt, dist, found.shift)?;
    metric(&a, &b)
}
