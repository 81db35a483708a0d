//! Edge-restoration quality assessment (ERQA) for super-resolved frames.
//!
//! The crate scores how faithfully a restored frame reproduces the edges of
//! its ground truth. Edges are found with Canny, compared as binary masks and
//! summarised by an F1 score. Small global misalignments are removed by an
//! integer shift search beforehand, and single-pixel local jitter is
//! forgiven during matching. Version 1.1 additionally lets each ground-truth
//! edge pixel be matched only once, which penalises thickened edges.
//!
//! Alongside the metric the crate ships PSNR and SSIM baselines, a shift
//! compensation wrapper usable with any metric, and the statistics needed to
//! validate a metric against subjective pairwise votes (Bradley–Terry fit,
//! PLCC, SRCC).
//!
//! ```
//! use erqa::{erqa, synth, ErqaConfig, ShiftVector};
//!
//! let gt = synth::textured_frame(7, 64, 64);
//! let dist = synth::translated(&gt, ShiftVector::new(2, 1), 0);
//! let result = erqa(&gt, &dist, &ErqaConfig::default()).unwrap();
//! assert_eq!(result.f1, 1.0);
//! ```

pub mod baselines;
pub mod cli;
pub mod edges;
pub mod error;
pub mod format;
pub mod frame;
pub mod matching;
pub mod shift;
pub mod stats;
pub mod synth;

pub use baselines::{metric_panel, ssim, MetricPanel, SsimParams};
pub use edges::{detect_edges, CannyParams, EdgeMap, MagnitudeNorm};
pub use error::{Error, Result};
pub use frame::{load_frame, overlap_pair, save_frame, Frame, Region, ShiftVector};
pub use matching::{
    erqa, erqa_with_shift, f1_score, match_edges, render_classification, AblationStage,
    EdgeMatchResult, ErqaConfig, Label, Version,
};
pub use shift::{find_global_shift, psnr, score_with_compensation, PsnrValue, ShiftSearchResult};
pub use stats::{
    build_correlation_report, fit_bradley_terry, plcc, srcc, CorrelationReport, PairwiseTally,
    SubjectiveScores,
};
