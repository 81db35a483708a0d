//! Subjective-score fitting and correlation analysis.
//!
//! Pairwise votes are reduced to a win matrix and fitted with the
//! Bradley–Terry model, `P(i beats j) = s_i / (s_i + s_j)`, using the
//! minorization–maximization update
//!
//! ```text
//! s_i <- W_i / sum_j n_ij / (s_i + s_j)
//! ```
//!
//! where `W_i` is the total number of wins of item `i` and `n_ij` the number
//! of comparisons between `i` and `j`. Metric scores are then compared with
//! the fitted scores per region using Pearson (PLCC) and Spearman (SRCC)
//! correlation.

use std::path::Path;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{fixed6, Fixed6};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// `wins[i][j]` is how often item `i` beat item `j`; a tie adds 0.5 both ways.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseTally {
    wins: Vec<Vec<f64>>,
}

impl PairwiseTally {
    pub fn new(wins: Vec<Vec<f64>>) -> Result<Self> {
        let n = wins.len();
        for (i, row) in wins.iter().enumerate() {
            if row.len() != n {
                return Err(Error::contract(format!(
                    "win matrix row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[i] != 0.0 {
                return Err(Error::contract(format!(
                    "win matrix diagonal entry {i} is non-zero"
                )));
            }
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::contract(format!("invalid win count {v} in row {i}")));
            }
        }
        Ok(Self { wins })
    }

    pub fn zeros(n_items: usize) -> Self {
        Self {
            wins: vec![vec![0.0; n_items]; n_items],
        }
    }

    pub fn n_items(&self) -> usize {
        self.wins.len()
    }

    pub fn wins(&self) -> &[Vec<f64>] {
        &self.wins
    }

    pub fn record(&mut self, a: usize, b: usize, outcome: Outcome) {
        assert!(a != b, "an item cannot be compared with itself");
        match outcome {
            Outcome::A => self.wins[a][b] += 1.0,
            Outcome::B => self.wins[b][a] += 1.0,
            Outcome::Tie => {
                self.wins[a][b] += 0.5;
                self.wins[b][a] += 0.5;
            }
        }
    }

    fn comparisons(&self, i: usize, j: usize) -> f64 {
        self.wins[i][j] + self.wins[j][i]
    }

    /// Connected components of the comparison graph, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_items();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(i);
                for (j, visited) in seen.iter_mut().enumerate() {
                    if !*visited && self.comparisons(i, j) > 0.0 {
                        *visited = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Log-likelihood of `strengths` under the Bradley–Terry model.
    pub fn log_likelihood(&self, strengths: &[f64]) -> f64 {
        let mut ll = 0.0;
        for (i, row) in self.wins.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if w > 0.0 {
                    ll += w * (strengths[i].ln() - (strengths[i] + strengths[j]).ln());
                }
            }
        }
        ll
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    A,
    B,
    Tie,
}

/// Positive per-item scores summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SubjectiveScores {
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BradleyTerryFit {
    pub scores: SubjectiveScores,
    pub iterations: usize,
    /// Log-likelihood after each iteration, on the (possibly smoothed) tally.
    pub log_likelihoods: Vec<f64>,
    /// Whether half-win smoothing had to be applied.
    pub smoothed: bool,
}

pub fn fit_bradley_terry(
    tally: &PairwiseTally,
    tol: f64,
    max_iter: usize,
) -> Result<SubjectiveScores> {
    fit_bradley_terry_traced(tally, tol, max_iter).map(|f| f.scores)
}

/// Like [`fit_bradley_terry`], also returning the likelihood trace.
pub fn fit_bradley_terry_traced(
    tally: &PairwiseTally,
    tol: f64,
    max_iter: usize,
) -> Result<BradleyTerryFit> {
    let n = tally.n_items();
    if n == 0 {
        return Err(Error::contract("cannot fit an empty tally"));
    }
    let components = tally.components();
    if components.len() > 1 {
        return Err(Error::Disconnected { components });
    }

    let mut tally = tally.clone();
    let total_wins = |t: &PairwiseTally, i: usize| t.wins[i].iter().sum::<f64>();
    let smoothed = n > 1 && (0..n).any(|i| total_wins(&tally, i) == 0.0);
    if smoothed {
        log::warn!("an item has no wins; adding 0.5 to every compared pair in both directions");
        for i in 0..n {
            for j in 0..n {
                if i != j && tally.comparisons(i, j) > 0.0 {
                    tally.wins[i][j] += 0.5;
                }
            }
        }
    }

    let wins: Vec<f64> = (0..n).map(|i| total_wins(&tally, i)).collect();
    let mut p = vec![1.0 / n as f64; n];
    let mut trace = Vec::new();
    for iteration in 1..=max_iter {
        let mut next: Vec<f64> = (0..n)
            .map(|i| {
                let denom: f64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| tally.comparisons(i, j) / (p[i] + p[j]))
                    .sum();
                if denom == 0.0 {
                    p[i]
                } else {
                    wins[i] / denom
                }
            })
            .collect();
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= sum);
        let change = next
            .iter()
            .zip(&p)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        trace.push(tally.log_likelihood(&next));
        p = next;
        if change < tol {
            return Ok(BradleyTerryFit {
                scores: SubjectiveScores { scores: p },
                iterations: iteration,
                log_likelihoods: trace,
                smoothed,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
    })
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::contract(format!(
            "score vectors differ in length: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::UndefinedCorrelation(format!(
            "need at least 3 items, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::UndefinedCorrelation("non-finite score".into()));
    }
    Ok(())
}

/// Pearson linear correlation coefficient.
pub fn plcc(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("constant input".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks; tied values share the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman rank correlation coefficient.
pub fn srcc(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    plcc(&average_ranks(x), &average_ranks(y))
}

/// item -> value
pub type ItemScores = IndexMap<String, f64>;
/// region -> metric -> item -> value
pub type MetricScores = IndexMap<String, IndexMap<String, ItemScores>>;
/// region -> item -> subjective score
pub type SubjectiveTable = IndexMap<String, ItemScores>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    #[serde(serialize_with = "fixed6")]
    pub plcc: f64,
    #[serde(serialize_with = "fixed6")]
    pub srcc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub regions: Vec<String>,
    pub metrics: Vec<String>,
    /// region -> metric -> coefficients
    pub per_region: IndexMap<String, IndexMap<String, Coefficients>>,
    /// metric -> mean over regions
    pub mean_row: IndexMap<String, Coefficients>,
}

/// Correlates every metric with the subjective scores region by region.
/// Regions and metrics keep their input order.
pub fn build_correlation_report(
    metric_scores: &MetricScores,
    subjective: &SubjectiveTable,
) -> Result<CorrelationReport> {
    let mut missing = Vec::new();
    let mut metrics: Vec<String> = Vec::new();
    for (region, by_metric) in metric_scores {
        let Some(subj) = subjective.get(region) else {
            missing.push(format!("{region}: no subjective scores"));
            continue;
        };
        for (metric, items) in by_metric {
            if !metrics.contains(metric) {
                metrics.push(metric.clone());
            }
            for item in subj.keys() {
                if !items.contains_key(item) {
                    missing.push(format!("{region}/{metric}/{item}"));
                }
            }
            for item in items.keys() {
                if !subj.contains_key(item) {
                    missing.push(format!("{region}/subjective/{item}"));
                }
            }
        }
    }
    for (region, by_metric) in metric_scores {
        for metric in &metrics {
            if !by_metric.contains_key(metric) {
                missing.push(format!("{region}/{metric}: metric absent"));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::Alignment { missing });
    }

    let mut per_region = IndexMap::new();
    for (region, by_metric) in metric_scores {
        let subj = &subjective[region];
        let y: Vec<f64> = subj.values().copied().collect();
        let mut cells = IndexMap::new();
        for metric in &metrics {
            let items = &by_metric[metric];
            let x: Vec<f64> = subj.keys().map(|k| items[k]).collect();
            cells.insert(
                metric.clone(),
                Coefficients {
                    plcc: plcc(&x, &y)?,
                    srcc: srcc(&x, &y)?,
                },
            );
        }
        per_region.insert(region.clone(), cells);
    }

    let n = per_region.len() as f64;
    let mean_row = metrics
        .iter()
        .map(|m| {
            let (p, s) = per_region.values().fold((0.0, 0.0), |(p, s), cells| {
                (p + cells[m].plcc, s + cells[m].srcc)
            });
            (
                m.clone(),
                Coefficients {
                    plcc: p / n,
                    srcc: s / n,
                },
            )
        })
        .collect();

    Ok(CorrelationReport {
        regions: metric_scores.keys().cloned().collect(),
        metrics,
        per_region,
        mean_row,
    })
}

impl CorrelationReport {
    /// Metrics as rows, regions as columns, mean column last; one row per
    /// metric and coefficient.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,coefficient");
        for r in &self.regions {
            out.push(',');
            out.push_str(&csv_field(r));
        }
        out.push_str(",mean\n");
        for m in &self.metrics {
            for (name, pick) in [
                (
                    "plcc",
                    (|c: &Coefficients| c.plcc) as fn(&Coefficients) -> f64,
                ),
                ("srcc", |c: &Coefficients| c.srcc),
            ] {
                out.push_str(&format!("{},{name}", csv_field(m)));
                for r in &self.regions {
                    out.push_str(&format!(",{}", Fixed6(pick(&self.per_region[r][m]))));
                }
                out.push_str(&format!(",{}\n", Fixed6(pick(&self.mean_row[m]))));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            metric: &'a str,
            plcc: IndexMap<&'a str, Fixed6>,
            srcc: IndexMap<&'a str, Fixed6>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            regions: &'a [String],
            metrics: Vec<Row<'a>>,
        }
        let metrics = self
            .metrics
            .iter()
            .map(|m| {
                let mut plcc = IndexMap::new();
                let mut srcc = IndexMap::new();
                for r in &self.regions {
                    let c = self.per_region[r][m];
                    plcc.insert(r.as_str(), Fixed6(c.plcc));
                    srcc.insert(r.as_str(), Fixed6(c.srcc));
                }
                plcc.insert("mean", Fixed6(self.mean_row[m].plcc));
                srcc.insert("mean", Fixed6(self.mean_row[m].srcc));
                Row {
                    metric: m,
                    plcc,
                    srcc,
                }
            })
            .collect();
        serde_json::to_string_pretty(&Doc {
            regions: &self.regions,
            metrics,
        })
        .expect("report serialization is infallible")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One pairwise vote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vote {
    pub region: String,
    pub item_a: String,
    pub item_b: String,
    pub outcome: Outcome,
}

/// Region name used when a vote file has no `region` column.
pub const DEFAULT_REGION: &str = "all";

fn csv_error(path: &Path, message: impl std::fmt::Display) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn open_csv(path: &Path) -> Result<(csv::Reader<std::fs::File>, Vec<String>)> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    Ok((reader, headers))
}

fn column(headers: &[String], name: &str, path: &Path) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| csv_error(path, format!("missing column {name:?}")))
}

/// Reads `item_a,item_b,winner` rows (winner one of `a`, `b`, `tie`), with an
/// optional `region` column.
pub fn read_votes(path: impl AsRef<Path>) -> Result<Vec<Vote>> {
    let path = path.as_ref();
    let (mut reader, headers) = open_csv(path)?;
    let region_col = headers.iter().position(|h| h == "region");
    let a_col = column(&headers, "item_a", path)?;
    let b_col = column(&headers, "item_b", path)?;
    let w_col = column(&headers, "winner", path)?;
    let mut votes = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let get = |c: usize| rec.get(c).unwrap_or("").to_string();
        let outcome = match get(w_col).to_ascii_lowercase().as_str() {
            "a" => Outcome::A,
            "b" => Outcome::B,
            "tie" => Outcome::Tie,
            other => {
                return Err(csv_error(
                    path,
                    format!(
                        "row {}: winner must be a, b or tie, got {other:?}",
                        line + 2
                    ),
                ))
            }
        };
        let vote = Vote {
            region: region_col.map_or_else(|| DEFAULT_REGION.to_string(), get),
            item_a: get(a_col),
            item_b: get(b_col),
            outcome,
        };
        if vote.item_a == vote.item_b {
            return Err(csv_error(
                path,
                format!("row {}: item compared with itself", line + 2),
            ));
        }
        votes.push(vote);
    }
    Ok(votes)
}

/// Groups votes by region and builds one tally per region. Items keep
/// first-appearance order.
pub fn tally_votes(votes: &[Vote]) -> IndexMap<String, (Vec<String>, PairwiseTally)> {
    let mut items: IndexMap<String, IndexMap<String, usize>> = IndexMap::new();
    for v in votes {
        let idx = items.entry(v.region.clone()).or_default();
        for name in [&v.item_a, &v.item_b] {
            let next = idx.len();
            idx.entry(name.clone()).or_insert(next);
        }
    }
    let mut out: IndexMap<String, (Vec<String>, PairwiseTally)> = items
        .iter()
        .map(|(region, idx)| {
            (
                region.clone(),
                (
                    idx.keys().cloned().collect(),
                    PairwiseTally::zeros(idx.len()),
                ),
            )
        })
        .collect();
    for v in votes {
        let idx = &items[&v.region];
        let tally = &mut out[&v.region].1;
        tally.record(idx[&v.item_a], idx[&v.item_b], v.outcome);
    }
    out
}

/// Fits Bradley–Terry scores for every region of a vote list.
pub fn fit_votes(votes: &[Vote], tol: f64, max_iter: usize) -> Result<SubjectiveTable> {
    tally_votes(votes)
        .into_iter()
        .map(|(region, (names, tally))| {
            let fit = fit_bradley_terry(&tally, tol, max_iter)?;
            Ok((region, names.into_iter().zip(fit.scores).collect()))
        })
        .collect()
}

/// Reads `region,item,metric,value` rows, appending to `into`.
pub fn read_metric_scores(path: impl AsRef<Path>, into: &mut MetricScores) -> Result<()> {
    let path = path.as_ref();
    let (mut reader, headers) = open_csv(path)?;
    let cols = [
        column(&headers, "region", path)?,
        column(&headers, "item", path)?,
        column(&headers, "metric", path)?,
        column(&headers, "value", path)?,
    ];
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let [region, item, metric, value] = cols.map(|c| rec.get(c).unwrap_or(""));
        let value: f64 = value
            .parse()
            .map_err(|_| csv_error(path, format!("row {}: bad value {value:?}", line + 2)))?;
        into.entry(region.to_string())
            .or_default()
            .entry(metric.to_string())
            .or_default()
            .insert(item.to_string(), value);
    }
    Ok(())
}

/// Reads `region,item,score` rows of already fitted subjective scores.
pub fn read_subjective(path: impl AsRef<Path>) -> Result<SubjectiveTable> {
    let path = path.as_ref();
    let (mut reader, headers) = open_csv(path)?;
    let cols = [
        column(&headers, "region", path)?,
        column(&headers, "item", path)?,
        column(&headers, "score", path)?,
    ];
    let mut out = SubjectiveTable::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let [region, item, score] = cols.map(|c| rec.get(c).unwrap_or(""));
        let score: f64 = score
            .parse()
            .map_err(|_| csv_error(path, format!("row {}: bad score {score:?}", line + 2)))?;
        out.entry(region.to_string())
            .or_default()
            .insert(item.to_string(), score);
    }
    Ok(out)
}

/// Writes `region,item,score` rows.
pub fn subjective_to_csv(table: &SubjectiveTable) -> String {
    let mut out = String::from("region,item,score\n");
    for (region, items) in table {
        for (item, score) in items {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_field(region),
                csv_field(item),
                Fixed6(*score)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_item_closed_form() {
        let t = PairwiseTally::new(vec![vec![0.0, 3.0], vec![1.0, 0.0]]).unwrap();
        let s = fit_bradley_terry(&t, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        assert!((s.scores[0] - 0.75).abs() < 1e-12);
        assert!((s.scores[1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn symmetric_tally_is_uniform() {
        let t = PairwiseTally::new(vec![
            vec![0.0, 2.0, 2.0],
            vec![2.0, 0.0, 2.0],
            vec![2.0, 2.0, 0.0],
        ])
        .unwrap();
        let s = fit_bradley_terry(&t, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        for v in s.scores {
            assert!((v - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disconnected_graph_names_components() {
        let t = PairwiseTally::new(vec![
            vec![0.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 2.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        match fit_bradley_terry(&t, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER) {
            Err(Error::Disconnected { components }) => {
                assert_eq!(components, vec![vec![0, 1], vec![2, 3]])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_win_item_is_smoothed() {
        let t = PairwiseTally::new(vec![vec![0.0, 4.0], vec![0.0, 0.0]]).unwrap();
        let fit = fit_bradley_terry_traced(&t, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        assert!(fit.smoothed);
        // 4.5 vs 0.5 wins after smoothing
        assert!((fit.scores.scores[0] - 0.9).abs() < 1e-9);
    }

    #[test]
    fn non_convergence_is_reported() {
        let t = PairwiseTally::new(vec![
            vec![0.0, 5.0, 1.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(matches!(
            fit_bradley_terry(&t, 0.0, 3),
            Err(Error::NoConvergence { iterations: 3 })
        ));
    }

    #[test]
    fn invalid_tallies() {
        assert!(PairwiseTally::new(vec![vec![1.0]]).is_err());
        assert!(PairwiseTally::new(vec![vec![0.0, -1.0], vec![0.0, 0.0]]).is_err());
        assert!(PairwiseTally::new(vec![vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn correlation_fixture() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [1.0, 3.0, 2.0, 4.0];
        assert!((plcc(&x, &y).unwrap() - 0.8).abs() < 1e-12);
        assert!((srcc(&x, &y).unwrap() - 0.8).abs() < 1e-12);
        let lin: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((plcc(&x, &lin).unwrap() - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((plcc(&x, &neg).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn tie_ranks() {
        assert_eq!(
            average_ranks(&[1.0, 2.0, 2.0, 4.0]),
            vec![1.0, 2.5, 2.5, 4.0]
        );
        assert_eq!(average_ranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            plcc(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(srcc(&[5.0, 5.0, 5.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(plcc(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(plcc(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
    }

    fn items(pairs: &[(&str, f64)]) -> ItemScores {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn report_self_correlation_and_alignment() {
        let subj = items(&[("m1", 0.5), ("m2", 0.3), ("m3", 0.2)]);
        let mut scores = MetricScores::new();
        scores
            .entry("board".into())
            .or_default()
            .insert("self".into(), subj.clone());
        let mut table = SubjectiveTable::new();
        table.insert("board".into(), subj);
        let report = build_correlation_report(&scores, &table).unwrap();
        assert_eq!(
            report.per_region["board"]["self"],
            Coefficients {
                plcc: 1.0,
                srcc: 1.0
            }
        );
        assert_eq!(report.mean_row["self"].srcc, 1.0);

        scores["board"]["self"].shift_remove("m2");
        match build_correlation_report(&scores, &table) {
            Err(Error::Alignment { missing }) => assert_eq!(missing, vec!["board/self/m2"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn report_mean_over_regions() {
        let mut scores = MetricScores::new();
        let mut table = SubjectiveTable::new();
        // srcc 0.8 on the first region, -0.4 on the second
        let x = [1.0, 2.0, 3.0, 4.0];
        for (region, y) in [("r1", [1.0, 3.0, 2.0, 4.0]), ("r2", [4.0, 1.0, 3.0, 2.0])] {
            let names = ["a", "b", "c", "d"];
            table.insert(
                region.into(),
                names.iter().map(|n| n.to_string()).zip(y).collect(),
            );
            scores.entry(region.into()).or_default().insert(
                "m".into(),
                names.iter().map(|n| n.to_string()).zip(x).collect(),
            );
        }
        let report = build_correlation_report(&scores, &table).unwrap();
        let s1 = report.per_region["r1"]["m"].srcc;
        let s2 = report.per_region["r2"]["m"].srcc;
        assert!((s1 - 0.8).abs() < 1e-12);
        assert_eq!(report.mean_row["m"].srcc, (s1 + s2) / 2.0);
        let csv = report.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "metric,coefficient,r1,r2,mean");
        assert_eq!(csv.lines().count(), 3);
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["metrics"][0]["srcc"]["r1"], 0.8);
    }

    #[test]
    fn vote_tally_with_ties() {
        let votes = vec![
            Vote {
                region: "all".into(),
                item_a: "x".into(),
                item_b: "y".into(),
                outcome: Outcome::Tie,
            },
            Vote {
                region: "all".into(),
                item_a: "y".into(),
                item_b: "x".into(),
                outcome: Outcome::A,
            },
        ];
        let tallies = tally_votes(&votes);
        let (names, t) = &tallies["all"];
        assert_eq!(names, &["x", "y"]);
        assert_eq!(t.wins(), &[vec![0.0, 0.5], vec![1.5, 0.0]]);
    }
}
