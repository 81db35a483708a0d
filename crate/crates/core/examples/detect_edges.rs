// Runs the edge detector on a synthetic frame and saves the binary map.

use erqa::{detect_edges, save_frame, synth, CannyParams};

pub fn run_example() -> erqa::Result<()> {
    let frame = synth::textured_frame(7, 96, 64);
    let out_dir = std::env::temp_dir().join("erqa-example-detect-edges");
    std::fs::create_dir_all(&out_dir).map_err(|e| erqa::Error::Io {
        path: out_dir.clone(),
        source: e,
    })?;

    for (low, high) in [(50.0, 100.0), (100.0, 200.0), (200.0, 400.0)] {
        let edges = detect_edges(&frame, &CannyParams::with_thresholds(low, high))?;
        let path = out_dir.join(format!("edges_{low}_{high}.png"));
        save_frame(&edges.to_frame(), &path)?;
        println!(
            "thresholds {low}/{high}: {} edge pixels -> {}",
            edges.count(),
            path.display()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> erqa::Result<()> {
    run_example()
}
