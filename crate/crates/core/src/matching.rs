//! Edge matching and the ERQA score.
//!
//! Ground-truth and distorted edge maps are compared pixel by pixel and
//! summarised with an F1 score. Two refinements sit on top of plain set
//! comparison:
//!
//! * local tolerance (v1.0): a distorted edge pixel counts as a true positive
//!   when a ground-truth edge pixel lies within Chebyshev distance 1;
//! * one-to-one matching (v1.1): each ground-truth edge pixel can be claimed
//!   by at most one distorted pixel, so thickened edges are penalised.
//!
//! Global shift compensation runs before edge detection, see [`erqa`].

use serde::{Deserialize, Serialize};

use crate::edges::{detect_edges, CannyParams, EdgeMap};
use crate::error::{Error, Result};
use crate::frame::{overlap_pair, Frame, ShiftVector};
use crate::shift::{find_global_shift, DEFAULT_SHIFT_RADIUS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Version {
    #[serde(rename = "1.0")]
    V1_0,
    #[default]
    #[serde(rename = "1.1")]
    V1_1,
}

impl std::fmt::Display for Version {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Version::V1_0 => "1.0",
            Version::V1_1 => "1.1",
        })
    }
}

impl std::str::FromStr for Version {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1.0" | "1" | "v1.0" => Ok(Version::V1_0),
            "1.1" | "v1.1" => Ok(Version::V1_1),
            other => Err(Error::contract(format!("unknown ERQA version {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ErqaConfig {
    pub version: Version,
    pub enable_global_shift: bool,
    pub enable_local_tolerance: bool,
    pub shift_radius: u32,
    pub canny: CannyParams,
}

impl Default for ErqaConfig {
    fn default() -> Self {
        Self {
            version: Version::V1_1,
            enable_global_shift: true,
            enable_local_tolerance: true,
            shift_radius: DEFAULT_SHIFT_RADIUS,
            canny: CannyParams::default(),
        }
    }
}

impl ErqaConfig {
    pub fn v1_0() -> Self {
        Self {
            version: Version::V1_0,
            ..Self::default()
        }
    }

    pub fn v1_1() -> Self {
        Self::default()
    }

    pub fn with_global_shift(mut self, on: bool) -> Self {
        self.enable_global_shift = on;
        self
    }

    pub fn with_local_tolerance(mut self, on: bool) -> Self {
        self.enable_local_tolerance = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.canny.validate()
    }

    /// All eight combinations of version and the two compensation stages.
    pub fn all_combinations() -> Vec<ErqaConfig> {
        let mut out = Vec::with_capacity(8);
        for version in [Version::V1_0, Version::V1_1] {
            for global in [false, true] {
                for local in [false, true] {
                    out.push(ErqaConfig {
                        version,
                        enable_global_shift: global,
                        enable_local_tolerance: local,
                        ..ErqaConfig::default()
                    });
                }
            }
        }
        out
    }
}

/// The four cumulative configurations of the ablation study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AblationStage {
    Baseline,
    GlobalShift,
    LocalShift,
    WideEdgePenalty,
}

impl AblationStage {
    pub const ALL: [AblationStage; 4] = [
        AblationStage::Baseline,
        AblationStage::GlobalShift,
        AblationStage::LocalShift,
        AblationStage::WideEdgePenalty,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            AblationStage::Baseline => "Without compensation (baseline)",
            AblationStage::GlobalShift => "+ Compensation of global shift",
            AblationStage::LocalShift => "+ Compensation of local shift (v1.0)",
            AblationStage::WideEdgePenalty => "+ Penalize false wide edges (v1.1)",
        }
    }

    /// The stage's configuration, keeping radius and detector settings of `base`.
    pub fn config(&self, base: &ErqaConfig) -> ErqaConfig {
        let (version, global, local) = match self {
            AblationStage::Baseline => (Version::V1_0, false, false),
            AblationStage::GlobalShift => (Version::V1_0, true, false),
            AblationStage::LocalShift => (Version::V1_0, true, true),
            AblationStage::WideEdgePenalty => (Version::V1_1, true, true),
        };
        ErqaConfig {
            version,
            enable_global_shift: global,
            enable_local_tolerance: local,
            ..*base
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Label {
    #[default]
    None,
    TruePositive,
    FalsePositive,
    FalseNegative,
}

/// Per-pixel classification produced alongside the counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationMap {
    width: usize,
    height: usize,
    labels: Vec<Label>,
}

impl ClassificationMap {
    fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            labels: vec![Label::None; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn get(&self, x: usize, y: usize) -> Label {
        self.labels[y * self.width + x]
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeMatchResult {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    #[serde(skip)]
    pub classification: ClassificationMap,
}

/// Precision, recall and F1 from raw counts.
///
/// Vacuous denominators resolve to 1 (no distorted edges means nothing was
/// wrongly added, no ground-truth edges means nothing was missed), and a
/// zero `precision + recall` gives F1 = 0.
pub fn f1_score(tp: usize, fp: usize, fn_: usize) -> (f64, f64, f64) {
    let precision = if tp + fp == 0 {
        1.0
    } else {
        tp as f64 / (tp + fp) as f64
    };
    let recall = if tp + fn_ == 0 {
        1.0
    } else {
        tp as f64 / (tp + fn_) as f64
    };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    (precision, recall, f1)
}

// N, S, W, E, NW, NE, SW, SE
const NEIGHBOURS: [(isize, isize); 8] = [
    (0, -1),
    (0, 1),
    (-1, 0),
    (1, 0),
    (-1, -1),
    (1, -1),
    (-1, 1),
    (1, 1),
];

fn any_within_one(map: &EdgeMap, x: usize, y: usize) -> bool {
    let (w, h) = (map.width() as isize, map.height() as isize);
    let (x, y) = (x as isize, y as isize);
    (y - 1..=y + 1).any(|ny| {
        (x - 1..=x + 1)
            .any(|nx| nx >= 0 && ny >= 0 && nx < w && ny < h && map.get(nx as usize, ny as usize))
    })
}

/// Compares two edge maps under `config`'s version and tolerance settings.
/// The global-shift flag is not consulted here.
pub fn match_edges(gt: &EdgeMap, dist: &EdgeMap, config: &ErqaConfig) -> Result<EdgeMatchResult> {
    if gt.width() != dist.width() || gt.height() != dist.height() {
        return Err(Error::geometry(format!(
            "edge maps differ in size: {}x{} vs {}x{}",
            gt.width(),
            gt.height(),
            dist.width(),
            dist.height()
        )));
    }
    let (w, h) = (gt.width(), gt.height());
    let mut cls = ClassificationMap::new(w, h);
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;

    if !config.enable_local_tolerance {
        for (i, (&g, &d)) in gt.mask().iter().zip(dist.mask()).enumerate() {
            cls.labels[i] = match (g, d) {
                (true, true) => {
                    tp += 1;
                    Label::TruePositive
                }
                (false, true) => {
                    fp += 1;
                    Label::FalsePositive
                }
                (true, false) => {
                    fn_ += 1;
                    Label::FalseNegative
                }
                (false, false) => Label::None,
            };
        }
    } else {
        match config.version {
            Version::V1_0 => {
                for y in 0..h {
                    for x in 0..w {
                        let i = y * w + x;
                        if dist.get(x, y) {
                            if any_within_one(gt, x, y) {
                                tp += 1;
                                cls.labels[i] = Label::TruePositive;
                            } else {
                                fp += 1;
                                cls.labels[i] = Label::FalsePositive;
                            }
                        } else if gt.get(x, y) && !any_within_one(dist, x, y) {
                            fn_ += 1;
                            cls.labels[i] = Label::FalseNegative;
                        }
                    }
                }
            }
            Version::V1_1 => {
                let mut consumed = vec![false; w * h];
                let mut matched = vec![false; w * h];
                for i in 0..w * h {
                    if dist.mask()[i] && gt.mask()[i] {
                        consumed[i] = true;
                        matched[i] = true;
                    }
                }
                for y in 0..h {
                    for x in 0..w {
                        let i = y * w + x;
                        if !dist.mask()[i] || matched[i] {
                            continue;
                        }
                        for (ox, oy) in NEIGHBOURS {
                            let (nx, ny) = (x as isize + ox, y as isize + oy);
                            if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                                continue;
                            }
                            let j = ny as usize * w + nx as usize;
                            if gt.mask()[j] && !consumed[j] {
                                consumed[j] = true;
                                matched[i] = true;
                                break;
                            }
                        }
                    }
                }
                for (i, (&edge, &used)) in gt.mask().iter().zip(&consumed).enumerate() {
                    if edge && !used {
                        fn_ += 1;
                        cls.labels[i] = Label::FalseNegative;
                    }
                }
                // distorted labels go on top, so FP wins over FN
                for (i, (&edge, &hit)) in dist.mask().iter().zip(&matched).enumerate() {
                    if edge {
                        if hit {
                            tp += 1;
                            cls.labels[i] = Label::TruePositive;
                        } else {
                            fp += 1;
                            cls.labels[i] = Label::FalsePositive;
                        }
                    }
                }
            }
        }
    }

    let (precision, recall, f1) = f1_score(tp, fp, fn_);
    Ok(EdgeMatchResult {
        tp,
        fp,
        fn_,
        precision,
        recall,
        f1,
        classification: cls,
    })
}

/// ERQA with the shift that was applied before edge detection.
#[derive(Debug, Clone, PartialEq)]
pub struct ErqaOutcome {
    pub result: EdgeMatchResult,
    pub shift: ShiftVector,
}

/// Scores `dist` against `gt`: optional global shift compensation, Canny on
/// both luma planes, edge matching and F1.
pub fn erqa(gt: &Frame, dist: &Frame, config: &ErqaConfig) -> Result<EdgeMatchResult> {
    erqa_with_shift(gt, dist, config).map(|o| o.result)
}

pub fn erqa_with_shift(gt: &Frame, dist: &Frame, config: &ErqaConfig) -> Result<ErqaOutcome> {
    config.validate()?;
    if !gt.same_shape(dist) {
        return Err(Error::geometry(format!(
            "frames differ: {}x{}x{} vs {}x{}x{}",
            gt.width(),
            gt.height(),
            gt.channels(),
            dist.width(),
            dist.height(),
            dist.channels()
        )));
    }
    let gt = gt.to_luma();
    let dist = dist.to_luma();
    let shift = if config.enable_global_shift {
        find_global_shift(&gt, &dist, config.shift_radius)?.shift
    } else {
        ShiftVector::ZERO
    };
    let (gt, dist) = if shift == ShiftVector::ZERO {
        (gt, dist)
    } else {
        overlap_pair(&gt, &dist, shift)?
    };
    let gt_edges = detect_edges(&gt, &config.canny)?;
    let dist_edges = detect_edges(&dist, &config.canny)?;
    let result = match_edges(&gt_edges, &dist_edges, config)?;
    Ok(ErqaOutcome { result, shift })
}

/// Colours: true positive white, false negative blue, false positive red,
/// over the background dimmed to 40%.
pub fn render_classification(result: &EdgeMatchResult, background: &Frame) -> Result<Frame> {
    let cls = &result.classification;
    if cls.width() != background.width() || cls.height() != background.height() {
        return Err(Error::geometry(format!(
            "classification {}x{} does not match background {}x{}",
            cls.width(),
            cls.height(),
            background.width(),
            background.height()
        )));
    }
    let dim = |v: u8| ((v as u32 * 4 + 5) / 10) as u8;
    let mut data = Vec::with_capacity(cls.width() * cls.height() * 3);
    for (i, &label) in cls.labels().iter().enumerate() {
        let px = match label {
            Label::TruePositive => [255, 255, 255],
            Label::FalseNegative => [0, 0, 255],
            Label::FalsePositive => [255, 0, 0],
            Label::None => {
                if background.channels() == 1 {
                    let v = dim(background.data()[i]);
                    [v, v, v]
                } else {
                    let p = &background.data()[i * 3..i * 3 + 3];
                    [dim(p[0]), dim(p[1]), dim(p[2])]
                }
            }
        };
        data.extend_from_slice(&px);
    }
    Frame::new(cls.width(), cls.height(), 3, data)
}
