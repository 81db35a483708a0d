//! Reference metrics: Gaussian-window SSIM and the comparison panel.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{fixed6, Fixed6};
use crate::frame::Frame;
use crate::matching::{erqa, ErqaConfig, Version};
use crate::shift::{psnr, score_with_compensation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsimParams {
    pub window: usize,
    pub sigma: f64,
    pub k1: f64,
    pub k2: f64,
    pub dynamic_range: f64,
}

impl Default for SsimParams {
    fn default() -> Self {
        Self {
            window: 11,
            sigma: 1.5,
            k1: 0.01,
            k2: 0.03,
            dynamic_range: 255.0,
        }
    }
}

impl SsimParams {
    /// Normalised 1-D Gaussian taps; the 2-D window is their outer product.
    pub fn kernel(&self) -> Vec<f64> {
        let c = (self.window as f64 - 1.0) / 2.0;
        let taps: Vec<f64> = (0..self.window)
            .map(|i| {
                let d = i as f64 - c;
                (-d * d / (2.0 * self.sigma * self.sigma)).exp()
            })
            .collect();
        let sum: f64 = taps.iter().sum();
        taps.into_iter().map(|t| t / sum).collect()
    }
}

/// Weighted window sums of `plane` over every valid window position.
fn filter_valid(plane: &[f64], w: usize, h: usize, kernel: &[f64]) -> Vec<f64> {
    let n = kernel.len();
    let (ow, oh) = (w - n + 1, h - n + 1);
    let mut horiz = vec![0.0; ow * h];
    for y in 0..h {
        let row = &plane[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = kernel.iter().zip(&row[x..x + n]).map(|(k, v)| k * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            let mut acc = 0.0;
            for (k, kv) in kernel.iter().enumerate() {
                acc += kv * horiz[(y + k) * ow + x];
            }
            out[y * ow + x] = acc;
        }
    }
    out
}

/// Mean SSIM over all valid window positions of two single-channel frames.
pub fn ssim(a: &Frame, b: &Frame, params: &SsimParams) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::geometry(format!(
            "ssim needs equal sizes, got {}x{} and {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    if a.channels() != 1 || b.channels() != 1 {
        return Err(Error::contract("ssim operates on luma planes"));
    }
    let (w, h) = (a.width(), a.height());
    if w < params.window || h < params.window {
        return Err(Error::geometry(format!(
            "frame {w}x{h} smaller than the {0}x{0} ssim window",
            params.window
        )));
    }
    let kernel = params.kernel();
    let pa: Vec<f64> = a.data().iter().map(|&v| v as f64).collect();
    let pb: Vec<f64> = b.data().iter().map(|&v| v as f64).collect();
    let paa: Vec<f64> = pa.iter().map(|v| v * v).collect();
    let pbb: Vec<f64> = pb.iter().map(|v| v * v).collect();
    let pab: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();

    let mu_a = filter_valid(&pa, w, h, &kernel);
    let mu_b = filter_valid(&pb, w, h, &kernel);
    let e_aa = filter_valid(&paa, w, h, &kernel);
    let e_bb = filter_valid(&pbb, w, h, &kernel);
    let e_ab = filter_valid(&pab, w, h, &kernel);

    let c1 = (params.k1 * params.dynamic_range).powi(2);
    let c2 = (params.k2 * params.dynamic_range).powi(2);
    let n = mu_a.len();
    let total: f64 = (0..n)
        .map(|i| {
            let (ma, mb) = (mu_a[i], mu_b[i]);
            let var_a = e_aa[i] - ma * ma;
            let var_b = e_bb[i] - mb * mb;
            let cov = e_ab[i] - ma * mb;
            let num = (2.0 * (ma * mb) + c1) * (2.0 * cov + c2);
            let den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
            num / den
        })
        .sum();
    Ok(total / n as f64)
}

/// One metric evaluated with and without global shift compensation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelRow {
    pub metric: &'static str,
    #[serde(serialize_with = "fixed6")]
    pub raw: f64,
    #[serde(serialize_with = "fixed6")]
    pub compensated: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricPanel {
    pub rows: Vec<PanelRow>,
}

impl MetricPanel {
    pub fn get(&self, metric: &str) -> Option<&PanelRow> {
        self.rows.iter().find(|r| r.metric == metric)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,raw,compensated\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                r.metric,
                Fixed6(r.raw),
                Fixed6(r.compensated)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("panel serialization is infallible")
    }
}

/// PSNR, SSIM, ERQA v1.0 and v1.1, each raw and shift-compensated.
/// `base` supplies the shift radius and detector settings for every row.
pub fn metric_panel(gt: &Frame, dist: &Frame, base: &ErqaConfig) -> Result<MetricPanel> {
    if !gt.same_shape(dist) {
        return Err(Error::geometry(
            "metric panel needs frames of identical shape",
        ));
    }
    let radius = base.shift_radius;
    let ssim_params = SsimParams::default();
    let psnr_luma = |a: &Frame, b: &Frame| psnr(&a.to_luma(), &b.to_luma()).map(|v| v.as_f64());
    let ssim_luma = |a: &Frame, b: &Frame| ssim(&a.to_luma(), &b.to_luma(), &ssim_params);

    let mut rows = vec![
        PanelRow {
            metric: "PSNR",
            raw: psnr_luma(gt, dist)?,
            compensated: score_with_compensation(psnr_luma, gt, dist, radius)?,
        },
        PanelRow {
            metric: "SSIM",
            raw: ssim_luma(gt, dist)?,
            compensated: score_with_compensation(ssim_luma, gt, dist, radius)?,
        },
    ];
    for (name, version) in [("ERQAv1.0", Version::V1_0), ("ERQAv1.1", Version::V1_1)] {
        let cfg = ErqaConfig {
            version,
            enable_local_tolerance: true,
            ..*base
        };
        rows.push(PanelRow {
            metric: name,
            raw: erqa(gt, dist, &cfg.with_global_shift(false))?.f1,
            compensated: erqa(gt, dist, &cfg.with_global_shift(true))?.f1,
        });
    }
    Ok(MetricPanel { rows })
}
