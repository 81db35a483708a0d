// Correlates objective scores against subjective ones for two crop regions.

use erqa::stats::{MetricScores, SubjectiveTable};
use erqa::{build_correlation_report, erqa, psnr, synth, ErqaConfig, Frame, Region};

pub fn run_example() -> erqa::Result<()> {
    let gt = synth::textured_frame(42, 96, 64);
    let regions = [
        ("left", Region::new(0, 0, 48, 64)),
        ("right", Region::new(48, 0, 48, 64)),
    ];
    // stand-in "models": increasingly strong vertical blurs
    let models: Vec<(String, Frame)> = (0..5)
        .map(|k| {
            let f = Frame::from_fn(96, 64, |x, y| {
                let lo = y.saturating_sub(k);
                let hi = (y + k).min(63);
                let sum: usize = (lo..=hi).map(|yy| gt.get(x, yy) as usize).sum();
                (sum / (hi - lo + 1)) as u8
            })
            .expect("valid size");
            (format!("blur{k}"), f)
        })
        .collect();

    let mut scores = MetricScores::new();
    let mut subjective = SubjectiveTable::new();
    for (region, r) in &regions {
        let g = gt.crop(r)?;
        let by_metric = scores.entry(region.to_string()).or_default();
        let subj = subjective.entry(region.to_string()).or_default();
        for (i, (name, f)) in models.iter().enumerate() {
            let d = f.crop(r)?;
            let e = erqa(&g, &d, &ErqaConfig::default())?.f1;
            let p = psnr(&g, &d)?.as_f64().min(100.0);
            by_metric
                .entry("ERQA".into())
                .or_default()
                .insert(name.clone(), e);
            by_metric
                .entry("PSNR".into())
                .or_default()
                .insert(name.clone(), p);
            // viewers prefer sharper output
            subj.insert(name.clone(), 1.0 / (1.0 + i as f64));
        }
    }

    let report = build_correlation_report(&scores, &subjective)?;
    print!("{}", report.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
