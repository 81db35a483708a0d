// Walks through the cumulative ablation stages on a translated, noisy copy.

use erqa::{erqa, synth, AblationStage, ErqaConfig, Frame, ShiftVector};

pub fn run_example() -> erqa::Result<()> {
    let gt = synth::textured_frame(21, 96, 72);
    let moved = synth::translated(&gt, ShiftVector::new(1, -2), 2);
    let jittered = Frame::from_fn(96, 72, |x, y| {
        // a one-pixel wobble on alternate rows stands in for restoration error
        let sx = if y % 8 < 4 { x } else { x.saturating_sub(1) };
        moved.get(sx, y)
    })?;

    let base = ErqaConfig::default();
    for stage in AblationStage::ALL {
        let score = erqa(&gt, &jittered, &stage.config(&base))?;
        println!("{:<40} {:.4}", stage.label(), score.f1);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
