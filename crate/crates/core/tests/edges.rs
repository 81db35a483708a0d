mod common;

use erqa::{detect_edges, synth, CannyParams, Frame};
use proptest::prelude::*;

fn production(frame: &Frame, low: f64, high: f64) -> Vec<bool> {
    detect_edges(frame, &CannyParams::with_thresholds(low, high))
        .unwrap()
        .mask()
        .to_vec()
}

#[test]
fn matches_reference_on_random_noise() {
    for seed in 0..100 {
        let f = synth::noise_frame(seed, 32, 32);
        assert_eq!(
            production(&f, 100.0, 200.0),
            common::reference_canny(&f, 100.0, 200.0),
            "seed {seed}"
        );
    }
}

#[test]
fn matches_reference_on_textured_frames() {
    for seed in 0..50 {
        let f = synth::textured_frame(seed, 40, 36);
        for (low, high) in [(100.0, 200.0), (50.0, 100.0), (300.0, 600.0)] {
            assert_eq!(
                production(&f, low, high),
                common::reference_canny(&f, low, high),
                "seed {seed} thresholds {low}/{high}"
            );
        }
    }
}

#[test]
fn matches_reference_on_fixtures() {
    let step = Frame::from_fn(16, 16, |x, _| if x < 8 { 0 } else { 255 }).unwrap();
    let ramp = Frame::from_fn(16, 16, |x, y| (x * 12 + y * 3) as u8).unwrap();
    let steep = Frame::from_fn(16, 16, |x, _| (x * 17).min(255) as u8).unwrap();
    let constant = Frame::filled(16, 16, 128).unwrap();
    let diag = Frame::from_fn(16, 16, |x, y| if x + y < 16 { 10 } else { 240 }).unwrap();
    for f in [step, ramp, steep, constant, diag] {
        assert_eq!(
            production(&f, 100.0, 200.0),
            common::reference_canny(&f, 100.0, 200.0)
        );
    }
}

#[test]
fn step_edge_is_one_pixel_wide() {
    let step = Frame::from_fn(16, 16, |x, _| if x < 8 { 0 } else { 255 }).unwrap();
    let edges = detect_edges(&step, &CannyParams::default()).unwrap();
    assert_eq!(edges.count(), 16);
    assert!(edges.points().all(|(x, _)| x == 7));
}

#[test]
fn hysteresis_invariant_holds() {
    // every edge pixel reaches a strong pixel through >= low edge pixels
    for seed in 0..20 {
        let f = synth::textured_frame(seed, 48, 48);
        let edges = detect_edges(&f, &CannyParams::default()).unwrap();
        let strong = detect_edges(&f, &CannyParams::with_thresholds(200.0, 200.0)).unwrap();
        assert!(strong.is_subset_of(&edges));
        let (w, h) = (edges.width(), edges.height());
        let mut reached = strong.mask().to_vec();
        let mut stack: Vec<usize> = (0..w * h).filter(|&i| reached[i]).collect();
        while let Some(i) = stack.pop() {
            let (x, y) = ((i % w) as i64, (i / w) as i64);
            for ny in y - 1..=y + 1 {
                for nx in x - 1..=x + 1 {
                    if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let j = ny as usize * w + nx as usize;
                    if edges.mask()[j] && !reached[j] {
                        reached[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        assert_eq!(reached, edges.mask(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raising_high_threshold_never_adds(seed in 0u64..10_000, extra in 1.0f64..400.0) {
        let f = synth::textured_frame(seed, 32, 32);
        let base = detect_edges(&f, &CannyParams::with_thresholds(100.0, 200.0)).unwrap();
        let raised = detect_edges(&f, &CannyParams::with_thresholds(100.0, 200.0 + extra)).unwrap();
        prop_assert!(raised.is_subset_of(&base));
    }

    #[test]
    fn lower_thresholds_give_superset(seed in 0u64..10_000) {
        let f = synth::noise_frame(seed, 24, 24);
        let strict = detect_edges(&f, &CannyParams::with_thresholds(100.0, 200.0)).unwrap();
        let loose = detect_edges(&f, &CannyParams::with_thresholds(50.0, 100.0)).unwrap();
        prop_assert!(strict.is_subset_of(&loose));
    }

    #[test]
    fn inversion_invariance(seed in 0u64..10_000, textured in any::<bool>()) {
        let f = if textured { synth::textured_frame(seed, 32, 32) } else { synth::noise_frame(seed, 32, 32) };
        let params = CannyParams::default();
        prop_assert_eq!(detect_edges(&f, &params).unwrap(), detect_edges(&f.inverted(), &params).unwrap());
    }

    #[test]
    fn deterministic(seed in 0u64..10_000) {
        let f = synth::textured_frame(seed, 32, 32);
        let g = f.clone();
        let params = CannyParams::default();
        prop_assert_eq!(detect_edges(&f, &params).unwrap(), detect_edges(&g, &params).unwrap());
    }
}
