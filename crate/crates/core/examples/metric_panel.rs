use erqa::{metric_panel, synth, ErqaConfig, ShiftVector};

pub fn run_example() -> erqa::Result<()> {
    let gt = synth::textured_frame(3, 64, 64);
    let moved = synth::translated(&gt, ShiftVector::new(2, 1), 9);
    let panel = metric_panel(&gt, &moved, &ErqaConfig::default())?;
    print!("{}", panel.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
