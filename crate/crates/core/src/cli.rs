//! Command-line front end.
//!
//! Everything the `erqa` binary does lives here so it can be driven from
//! tests. [`run`] parses arguments, executes one subcommand and returns the
//! process exit code:
//!
//! | code | meaning                           |
//! |------|-----------------------------------|
//! | 0    | success                           |
//! | 1    | fitting or correlation failure    |
//! | 2    | manifest, frame set or geometry   |
//! | 3    | i/o or decode                     |
//! | 4    | item alignment                    |

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{metric_panel, ssim, SsimParams};
use crate::edges::detect_edges;
use crate::error::{Error, Result};
use crate::format::Fixed6;
use crate::frame::{load_frame, overlap_pair, save_frame, Frame, Region};
use crate::matching::{
    erqa, erqa_with_shift, render_classification, AblationStage, ErqaConfig, Version,
};
use crate::shift::{find_global_shift, psnr, score_with_compensation};
use crate::stats::{
    build_correlation_report, fit_votes, read_metric_scores, read_subjective, read_votes,
    subjective_to_csv, MetricScores, SubjectiveTable, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Manifest(_) | Error::FrameSet(_) | Error::Geometry(_) | Error::Contract(_) => 2,
        Error::Io { .. } | Error::Decode { .. } | Error::Csv { .. } => 3,
        Error::Alignment { .. } => 4,
        Error::Disconnected { .. }
        | Error::NoConvergence { .. }
        | Error::UndefinedCorrelation(_) => 1,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "erqa",
    about = "Edge-restoration quality assessment",
    disable_version_flag = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score frame sequences listed in a manifest.
    Score(ScoreArgs),
    /// Render the TP/FP/FN classification of one frame pair.
    Visualize(VisualizeArgs),
    /// Correlate metric scores with subjective scores.
    Correlate(CorrelateArgs),
    /// Run the global shift search on one frame pair.
    Shift(ShiftArgs),
    /// Export the Canny edge map of a frame.
    Edges(EdgesArgs),
    /// PSNR, SSIM and ERQA with and without shift compensation.
    Panel(PanelArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// ERQA version.
    #[arg(long = "version", value_name = "1.0|1.1")]
    pub erqa_version: Option<Version>,
    /// Skip the global shift search.
    #[arg(long)]
    pub no_global_shift: bool,
    /// Require exact pixel matches.
    #[arg(long)]
    pub no_local_tolerance: bool,
    /// Largest |dx| and |dy| tried by the shift search.
    #[arg(long, value_name = "N")]
    pub shift_radius: Option<u32>,
    /// Canny hysteresis low threshold.
    #[arg(long, value_name = "N")]
    pub canny_low: Option<f64>,
    /// Canny hysteresis high threshold.
    #[arg(long, value_name = "N")]
    pub canny_high: Option<f64>,
}

impl ConfigArgs {
    pub fn apply(&self, mut cfg: ErqaConfig) -> Result<ErqaConfig> {
        if let Some(v) = self.erqa_version {
            cfg.version = v;
        }
        if self.no_global_shift {
            cfg.enable_global_shift = false;
        }
        if self.no_local_tolerance {
            cfg.enable_local_tolerance = false;
        }
        if let Some(r) = self.shift_radius {
            cfg.shift_radius = r;
        }
        if let Some(l) = self.canny_low {
            cfg.canny.low_threshold = l;
        }
        if let Some(h) = self.canny_high {
            cfg.canny.high_threshold = h;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pool {
    #[default]
    Mean,
    Median,
    Min,
}

impl Pool {
    pub fn name(&self) -> &'static str {
        match self {
            Pool::Mean => "mean",
            Pool::Median => "median",
            Pool::Min => "min",
        }
    }

    pub fn apply(&self, values: &[f64]) -> f64 {
        if values.is_empty() {
            return f64::NAN;
        }
        match self {
            Pool::Mean => values.iter().sum::<f64>() / values.len() as f64,
            Pool::Min => values.iter().copied().fold(f64::INFINITY, f64::min),
            Pool::Median => {
                let mut v = values.to_vec();
                v.sort_by(f64::total_cmp);
                let n = v.len();
                if n % 2 == 1 {
                    v[n / 2]
                } else {
                    (v[n / 2 - 1] + v[n / 2]) / 2.0
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Baseline {
    Psnr,
    Ssim,
    /// PSNR after global shift compensation.
    PsnrComp,
    /// SSIM after global shift compensation.
    SsimComp,
}

impl Baseline {
    fn column(&self) -> &'static str {
        match self {
            Baseline::Psnr => "psnr",
            Baseline::Ssim => "ssim",
            Baseline::PsnrComp => "psnr_comp",
            Baseline::SsimComp => "ssim_comp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedPath {
    pub name: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedRegion {
    pub name: String,
    #[serde(flatten)]
    pub region: Region,
}

/// Declarative description of a scoring run, read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub gt_dir: PathBuf,
    #[serde(rename = "dist")]
    pub dist_dirs: Vec<NamedPath>,
    #[serde(default)]
    pub regions: Vec<NamedRegion>,
    #[serde(default)]
    pub erqa: ErqaConfig,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub pool: Pool,
    #[serde(default)]
    pub baselines: Vec<Baseline>,
    #[serde(default)]
    pub ablation: bool,
}

impl RunManifest {
    /// Parses a manifest; relative paths are resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut m: RunManifest =
            toml::from_str(text).map_err(|e| Error::Manifest(e.message().to_string()))?;
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base_dir.join(&*p);
            }
        };
        resolve(&mut m.gt_dir);
        m.dist_dirs.iter_mut().for_each(|d| resolve(&mut d.path));
        if let Some(o) = m.output.as_mut() {
            resolve(o);
        }
        if m.dist_dirs.is_empty() {
            return Err(Error::Manifest(
                "at least one [[dist]] entry is required".into(),
            ));
        }
        let mut names = BTreeSet::new();
        for d in &m.dist_dirs {
            if !names.insert(&d.name) {
                return Err(Error::Manifest(format!("duplicate dist name {:?}", d.name)));
            }
        }
        let mut names = BTreeSet::new();
        for r in &m.regions {
            if !names.insert(&r.name) {
                return Err(Error::Manifest(format!(
                    "duplicate region name {:?}",
                    r.name
                )));
            }
        }
        m.erqa
            .validate()
            .map_err(|e| Error::Manifest(e.to_string()))?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Manifest(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// TOML run manifest.
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Emit one column per ablation stage instead of a single ERQA column.
    #[arg(long)]
    pub ablation: bool,
    /// How per-frame scores are pooled per sequence.
    #[arg(long, value_enum)]
    pub pool: Option<Pool>,
    /// Worker threads, defaults to the number of logical processors.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Overrides the manifest's output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Extra comma-separated baseline columns.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub baselines: Vec<Baseline>,
}

/// Scores of one frame for every column.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameScores {
    pub frame: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceScores {
    pub model: String,
    pub region: String,
    pub frames: Vec<FrameScores>,
    pub pooled: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub columns: Vec<String>,
    pub pool: Pool,
    pub sequences: Vec<SequenceScores>,
}

impl ScoreReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,region,frame");
        for c in &self.columns {
            out.push(',');
            out.push_str(&csv_field(c));
        }
        out.push('\n');
        for s in &self.sequences {
            let rows = s
                .frames
                .iter()
                .map(|f| (f.frame.as_str(), &f.values))
                .chain(std::iter::once((self.pool.name(), &s.pooled)));
            for (frame, values) in rows {
                out.push_str(&format!(
                    "{},{},{}",
                    csv_field(&s.model),
                    csv_field(&s.region),
                    csv_field(frame)
                ));
                for v in values {
                    out.push_str(&format!(",{}", Fixed6(*v)));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct FrameRow<'a> {
            frame: &'a str,
            scores: IndexMap<&'a str, Fixed6>,
        }
        #[derive(Serialize)]
        struct Seq<'a> {
            model: &'a str,
            region: &'a str,
            frames: Vec<FrameRow<'a>>,
            pooled: IndexMap<&'a str, Fixed6>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            columns: &'a [String],
            pool: &'static str,
            sequences: Vec<Seq<'a>>,
        }
        let named = |values: &[f64]| -> IndexMap<&str, Fixed6> {
            self.columns
                .iter()
                .map(String::as_str)
                .zip(values.iter().map(|v| Fixed6(*v)))
                .collect()
        };
        let doc = Doc {
            columns: &self.columns,
            pool: self.pool.name(),
            sequences: self
                .sequences
                .iter()
                .map(|s| Seq {
                    model: &s.model,
                    region: &s.region,
                    frames: s
                        .frames
                        .iter()
                        .map(|f| FrameRow {
                            frame: &f.frame,
                            scores: named(&f.values),
                        })
                        .collect(),
                    pooled: named(&s.pooled),
                })
                .collect(),
        };
        let mut text =
            serde_json::to_string_pretty(&doc).expect("report serialization is infallible");
        text.push('\n');
        text
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn list_pngs(dir: &Path) -> Result<Vec<String>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Manifest(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let is_png = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("png"));
        if is_png && path.is_file() {
            let name = entry.file_name().into_string().map_err(|n| {
                Error::Manifest(format!("non UTF-8 file name {}", n.to_string_lossy()))
            })?;
            names.push(name);
        }
    }
    names.sort();
    Ok(names)
}

/// Checks that `dist` holds exactly the frames of `gt`, reporting the first
/// file name (in sorted order) present on one side only.
fn check_frame_sets(gt: &[String], dist: &[String], dist_name: &str) -> Result<()> {
    let a: BTreeSet<&String> = gt.iter().collect();
    let b: BTreeSet<&String> = dist.iter().collect();
    if let Some(first) = a.symmetric_difference(&b).next() {
        let side = if a.contains(first) {
            format!("missing from {dist_name}")
        } else {
            format!("not present in ground truth (found in {dist_name})")
        };
        return Err(Error::FrameSet(format!("{first}: {side}")));
    }
    Ok(())
}

/// Metric columns of a scoring run.
#[derive(Debug, Clone)]
enum Column {
    Erqa(ErqaConfig),
    Baseline(Baseline),
}

fn score_pair(column: &Column, gt: &Frame, dist: &Frame, radius: u32) -> Result<f64> {
    let ssim_params = SsimParams::default();
    let psnr_luma = |a: &Frame, b: &Frame| psnr(&a.to_luma(), &b.to_luma()).map(|v| v.as_f64());
    let ssim_luma = |a: &Frame, b: &Frame| ssim(&a.to_luma(), &b.to_luma(), &ssim_params);
    match column {
        Column::Erqa(cfg) => Ok(erqa(gt, dist, cfg)?.f1),
        Column::Baseline(Baseline::Psnr) => psnr_luma(gt, dist),
        Column::Baseline(Baseline::Ssim) => ssim_luma(gt, dist),
        Column::Baseline(Baseline::PsnrComp) => {
            score_with_compensation(psnr_luma, gt, dist, radius)
        }
        Column::Baseline(Baseline::SsimComp) => {
            score_with_compensation(ssim_luma, gt, dist, radius)
        }
    }
}

/// Scores every model, frame and region of `manifest`. Results do not depend
/// on `workers`.
pub fn score_manifest(manifest: &RunManifest, workers: Option<usize>) -> Result<ScoreReport> {
    let cfg = manifest.erqa;
    let mut columns: Vec<(String, Column)> = if manifest.ablation {
        AblationStage::ALL
            .iter()
            .map(|s| (s.label().to_string(), Column::Erqa(s.config(&cfg))))
            .collect()
    } else {
        vec![("erqa".to_string(), Column::Erqa(cfg))]
    };
    for b in &manifest.baselines {
        columns.push((b.column().to_string(), Column::Baseline(*b)));
    }

    let gt_frames = list_pngs(&manifest.gt_dir)?;
    for d in &manifest.dist_dirs {
        check_frame_sets(&gt_frames, &list_pngs(&d.path)?, &d.name)?;
    }

    let jobs: Vec<(usize, &String)> = (0..manifest.dist_dirs.len())
        .flat_map(|m| gt_frames.iter().map(move |f| (m, f)))
        .collect();

    let run_job = |&(model, name): &(usize, &String)| -> Result<Vec<Vec<f64>>> {
        let gt = load_frame(manifest.gt_dir.join(name))?;
        let dist = load_frame(manifest.dist_dirs[model].path.join(name))?;
        if !gt.same_shape(&dist) {
            return Err(Error::FrameSet(format!(
                "{name}: {} frame is {}x{}x{}, ground truth is {}x{}x{}",
                manifest.dist_dirs[model].name,
                dist.width(),
                dist.height(),
                dist.channels(),
                gt.width(),
                gt.height(),
                gt.channels()
            )));
        }
        let pairs: Vec<(Frame, Frame)> = if manifest.regions.is_empty() {
            vec![(gt, dist)]
        } else {
            manifest
                .regions
                .iter()
                .map(|r| Ok((gt.crop(&r.region)?, dist.crop(&r.region)?)))
                .collect::<Result<_>>()?
        };
        pairs
            .iter()
            .map(|(g, d)| {
                columns
                    .iter()
                    .map(|(_, c)| score_pair(c, g, d, cfg.shift_radius))
                    .collect()
            })
            .collect()
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Manifest(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Vec<Vec<f64>>> =
        pool.install(|| jobs.par_iter().map(run_job).collect::<Result<_>>())?;

    let region_names: Vec<String> = if manifest.regions.is_empty() {
        vec!["full".to_string()]
    } else {
        manifest.regions.iter().map(|r| r.name.clone()).collect()
    };
    let mut sequences = Vec::new();
    for (m, dist) in manifest.dist_dirs.iter().enumerate() {
        for (r, region) in region_names.iter().enumerate() {
            let frames: Vec<FrameScores> = gt_frames
                .iter()
                .enumerate()
                .map(|(f, name)| FrameScores {
                    frame: name.clone(),
                    values: results[m * gt_frames.len() + f][r].clone(),
                })
                .collect();
            let pooled = (0..columns.len())
                .map(|c| {
                    let col: Vec<f64> = frames.iter().map(|f| f.values[c]).collect();
                    manifest.pool.apply(&col)
                })
                .collect();
            sequences.push(SequenceScores {
                model: dist.name.clone(),
                region: region.clone(),
                frames,
                pooled,
            });
        }
    }
    Ok(ScoreReport {
        columns: columns.into_iter().map(|(n, _)| n).collect(),
        pool: manifest.pool,
        sequences,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn cmd_score(args: &ScoreArgs, out: &mut dyn Write) -> Result<()> {
    let mut manifest = RunManifest::load(&args.manifest)?;
    manifest.erqa = args.config.apply(manifest.erqa)?;
    manifest.ablation |= args.ablation;
    if let Some(p) = args.pool {
        manifest.pool = p;
    }
    if let Some(f) = args.format {
        manifest.format = f;
    }
    if let Some(o) = &args.out {
        manifest.output = Some(o.clone());
    }
    for b in &args.baselines {
        if !manifest.baselines.contains(b) {
            manifest.baselines.push(*b);
        }
    }
    let report = score_manifest(&manifest, args.workers)?;
    let text = report.render(manifest.format);
    match &manifest.output {
        Some(path) => write_text(path, &text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

#[derive(Debug, Args)]
pub struct VisualizeArgs {
    /// Ground-truth PNG frame.
    #[arg(long)]
    pub gt: PathBuf,
    /// Distorted PNG frame.
    #[arg(long)]
    pub dist: PathBuf,
    /// Output PNG for the classification image.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

fn cmd_visualize(args: &VisualizeArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = args.config.apply(ErqaConfig::default())?;
    let gt = load_frame(&args.gt)?;
    let dist = load_frame(&args.dist)?;
    let outcome = erqa_with_shift(&gt, &dist, &cfg)?;
    let (_, background) = overlap_pair(&gt, &dist, outcome.shift)?;
    let image = render_classification(&outcome.result, &background)?;
    save_frame(&image, &args.out)?;
    let r = &outcome.result;
    writeln!(
        out,
        "shift={} tp={} fp={} fn={} precision={} recall={} f1={}",
        outcome.shift,
        r.tp,
        r.fp,
        r.fn_,
        Fixed6(r.precision),
        Fixed6(r.recall),
        Fixed6(r.f1)
    )
    .map_err(|e| Error::io("<stdout>", e))
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// CSV files with `region,item,metric,value` rows.
    #[arg(long, required = true)]
    pub scores: Vec<PathBuf>,
    /// Pairwise votes `item_a,item_b,winner` (optional `region` column).
    #[arg(
        long,
        conflicts_with = "subjective",
        required_unless_present = "subjective"
    )]
    pub votes: Option<PathBuf>,
    /// Fitted subjective scores `region,item,score`.
    #[arg(long)]
    pub subjective: Option<PathBuf>,
    /// Restrict and order the report to these regions.
    #[arg(long, value_delimiter = ',')]
    pub regions: Vec<String>,
    /// Where to write the fitted subjective scores when votes are given.
    #[arg(long)]
    pub subjective_out: Option<PathBuf>,
    /// Report file, stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

fn cmd_correlate(args: &CorrelateArgs, out: &mut dyn Write) -> Result<()> {
    let mut scores = MetricScores::new();
    for path in &args.scores {
        read_metric_scores(path, &mut scores)?;
    }
    let subjective: SubjectiveTable = match (&args.votes, &args.subjective) {
        (Some(votes), _) => {
            let table = fit_votes(&read_votes(votes)?, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
            let text = subjective_to_csv(&table);
            match &args.subjective_out {
                Some(p) => write_text(p, &text)?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| Error::io("<stdout>", e))?,
            }
            table
        }
        (None, Some(path)) => read_subjective(path)?,
        (None, None) => {
            return Err(Error::contract(
                "either --votes or --subjective is required",
            ))
        }
    };
    if !args.regions.is_empty() {
        let mut picked = MetricScores::new();
        let mut missing = Vec::new();
        for r in &args.regions {
            match scores.get(r) {
                Some(v) => {
                    picked.insert(r.clone(), v.clone());
                }
                None => missing.push(format!("{r}: no metric scores")),
            }
        }
        if !missing.is_empty() {
            return Err(Error::Alignment { missing });
        }
        scores = picked;
    }
    let report = build_correlation_report(&scores, &subjective)?;
    let text = match args.format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Csv => report.to_csv(),
    };
    match &args.out {
        Some(p) => write_text(p, &text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    /// Ground-truth PNG frame.
    #[arg(long)]
    pub gt: PathBuf,
    /// Distorted PNG frame.
    #[arg(long)]
    pub dist: PathBuf,
    /// Largest |dx| and |dy| tried.
    #[arg(long, default_value_t = crate::shift::DEFAULT_SHIFT_RADIUS)]
    pub radius: u32,
    /// Write the full PSNR grid as `dx,dy,psnr` CSV.
    #[arg(long)]
    pub grid_csv: Option<PathBuf>,
}

fn cmd_shift(args: &ShiftArgs, out: &mut dyn Write) -> Result<()> {
    let gt = load_frame(&args.gt)?;
    let dist = load_frame(&args.dist)?;
    let found = find_global_shift(&gt, &dist, args.radius)?;
    if let Some(path) = &args.grid_csv {
        let mut buf = Vec::new();
        found
            .write_grid_csv(&mut buf)
            .map_err(|e| Error::io(path, e))?;
        write_text(path, &String::from_utf8_lossy(&buf))?;
    }
    writeln!(
        out,
        "dx={} dy={} psnr={}",
        found.shift.dx, found.shift.dy, found.psnr
    )
    .map_err(|e| Error::io("<stdout>", e))
}

#[derive(Debug, Args)]
pub struct EdgesArgs {
    /// Input PNG frame.
    #[arg(long)]
    pub input: PathBuf,
    /// Output PNG for the binary edge map.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 100.0)]
    pub canny_low: f64,
    #[arg(long, default_value_t = 200.0)]
    pub canny_high: f64,
}

fn cmd_edges(args: &EdgesArgs, out: &mut dyn Write) -> Result<()> {
    let frame = load_frame(&args.input)?.to_luma();
    let params = crate::edges::CannyParams::with_thresholds(args.canny_low, args.canny_high);
    let edges = detect_edges(&frame, &params)?;
    save_frame(&edges.to_frame(), &args.out)?;
    writeln!(out, "edge_pixels={}", edges.count()).map_err(|e| Error::io("<stdout>", e))
}

#[derive(Debug, Args)]
pub struct PanelArgs {
    /// Ground-truth PNG frame.
    #[arg(long)]
    pub gt: PathBuf,
    /// Distorted PNG frame.
    #[arg(long)]
    pub dist: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

fn cmd_panel(args: &PanelArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = args.config.apply(ErqaConfig::default())?;
    let gt = load_frame(&args.gt)?;
    let dist = load_frame(&args.dist)?;
    let panel = metric_panel(&gt, &dist, &cfg)?;
    let text = match args.format {
        OutputFormat::Json => panel.to_json() + "\n",
        OutputFormat::Csv => panel.to_csv(),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Score(a) => cmd_score(a, out),
        Command::Visualize(a) => cmd_visualize(a, out),
        Command::Correlate(a) => cmd_correlate(a, out),
        Command::Shift(a) => cmd_shift(a, out),
        Command::Edges(a) => cmd_edges(a, out),
        Command::Panel(a) => cmd_panel(a, out),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Errors are reported on standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
