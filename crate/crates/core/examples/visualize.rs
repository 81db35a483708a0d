// Renders the per-pixel classification map for a degraded frame.

use erqa::{
    erqa_with_shift, overlap_pair, render_classification, save_frame, synth, ErqaConfig, Frame,
    Label,
};

pub fn run_example() -> erqa::Result<()> {
    let gt = synth::textured_frame(5, 80, 64);
    // drop every fourth column to manufacture misses and spurious edges
    let dist = Frame::from_fn(80, 64, |x, y| {
        if x % 4 == 3 {
            gt.get(x - 1, y)
        } else {
            gt.get(x, y)
        }
    })?;

    let outcome = erqa_with_shift(&gt, &dist, &ErqaConfig::default())?;
    let (_, background) = overlap_pair(&gt, &dist, outcome.shift)?;
    let image = render_classification(&outcome.result, &background)?;

    let path = std::env::temp_dir().join("erqa-example-visualize.png");
    save_frame(&image, &path)?;
    let map = &outcome.result.classification;
    println!(
        "shift {} f1={:.4} tp={} fp={} fn={} -> {}",
        outcome.shift,
        outcome.result.f1,
        map.count(Label::TruePositive),
        map.count(Label::FalsePositive),
        map.count(Label::FalseNegative),
        path.display()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
