// Fits Bradley-Terry strengths to a small pairwise preference tally.

use erqa::stats::{fit_bradley_terry_traced, Outcome, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use erqa::PairwiseTally;

pub fn run_example() -> erqa::Result<()> {
    let names = ["bicubic", "model-a", "model-b", "model-c"];
    let mut tally = PairwiseTally::zeros(names.len());
    let record = |t: &mut PairwiseTally, a, b, wins_a: usize, wins_b: usize| {
        (0..wins_a).for_each(|_| t.record(a, b, Outcome::A));
        (0..wins_b).for_each(|_| t.record(a, b, Outcome::B));
    };
    record(&mut tally, 0, 1, 2, 8);
    record(&mut tally, 0, 2, 1, 9);
    record(&mut tally, 1, 2, 4, 6);
    record(&mut tally, 2, 3, 5, 5);
    record(&mut tally, 1, 3, 3, 7);
    tally.record(0, 3, Outcome::Tie);

    let fit = fit_bradley_terry_traced(&tally, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
    println!("converged after {} iterations", fit.iterations);
    for (name, s) in names.iter().zip(&fit.scores.scores) {
        println!("{name:<8} {s:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
