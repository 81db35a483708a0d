// Recovers an integer translation between two frames and prints the PSNR grid.

use erqa::{find_global_shift, synth, ShiftVector};

pub fn run_example() -> erqa::Result<()> {
    let gt = synth::textured_frame(11, 80, 60);
    let moved = synth::translated(&gt, ShiftVector::new(-2, 3), 1);

    let search = find_global_shift(&gt, &moved, 3)?;
    println!("best shift {} at psnr {}", search.shift, search.psnr);
    assert_eq!(search.shift, ShiftVector::new(-2, 3));

    for dy in -3..=3 {
        let row: Vec<String> = (-3..=3)
            .map(|dx| format!("{:>9}", search.psnr_at(dx, dy).unwrap().to_string()))
            .collect();
        println!("dy={dy:+} {}", row.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
