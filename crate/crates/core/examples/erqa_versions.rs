// Compares the two metric versions. Doubling the width of every detected
// edge costs nothing under v1.0 but lowers precision under v1.1.

use erqa::{detect_edges, erqa, match_edges, synth, CannyParams, EdgeMap, ErqaConfig};

fn widen(map: &EdgeMap) -> EdgeMap {
    let mut out = map.clone();
    for (x, y) in map.points() {
        if x + 1 < map.width() {
            out.set(x + 1, y, true);
        }
    }
    out
}

pub fn run_example() -> erqa::Result<()> {
    let frame = synth::textured_frame(13, 96, 64);
    let gt = detect_edges(&frame, &CannyParams::default())?;
    let wide = widen(&gt);
    println!(
        "{} reference edge pixels, {} after widening",
        gt.count(),
        wide.count()
    );

    for (name, cfg) in [("v1.0", ErqaConfig::v1_0()), ("v1.1", ErqaConfig::v1_1())] {
        let same = erqa(&frame, &frame, &cfg)?;
        let r = match_edges(&gt, &wide, &cfg)?;
        println!(
            "{name}: identical f1={:.4}  widened f1={:.4} (tp={} fp={} fn={})",
            same.f1, r.f1, r.tp, r.fp, r.fn_
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
