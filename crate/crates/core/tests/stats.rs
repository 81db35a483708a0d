mod common;

use erqa::stats::{
    fit_bradley_terry_traced, fit_votes, read_metric_scores, read_subjective, read_votes,
    subjective_to_csv, MetricScores, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};
use erqa::{build_correlation_report, fit_bradley_terry, plcc, srcc, PairwiseTally};
use proptest::prelude::*;
use rand::Rng;

fn random_tally(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> PairwiseTally {
    let wins = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        rng.gen_range(1..10) as f64
                    }
                })
                .collect()
        })
        .collect();
    PairwiseTally::new(wins).unwrap()
}

#[test]
fn likelihood_never_decreases() {
    let mut rng = common::rng(31);
    for _ in 0..50 {
        let n = rng.gen_range(2..8);
        let tally = random_tally(&mut rng, n);
        let fit = fit_bradley_terry_traced(&tally, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        let start = tally.log_likelihood(&vec![1.0 / n as f64; n]);
        let mut prev = start;
        for &ll in &fit.log_likelihoods {
            assert!(ll >= prev - 1e-12 * prev.abs().max(1.0), "{ll} < {prev}");
            prev = ll;
        }
        let total: f64 = fit.scores.scores.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(fit.scores.scores.iter().all(|&s| s > 0.0));
    }
}

#[test]
fn three_item_dominance_matches_grid_search() {
    // A beats B 8:2, B beats C 8:2, A beats C 9:1
    let tally = PairwiseTally::new(vec![
        vec![0.0, 8.0, 9.0],
        vec![2.0, 0.0, 8.0],
        vec![1.0, 2.0, 0.0],
    ])
    .unwrap();
    let s = fit_bradley_terry(&tally, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
        .unwrap()
        .scores;
    assert!(s[0] > s[1] && s[1] > s[2]);

    // likelihood grid over the simplex, refined around the best cell
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    let (mut lo_a, mut hi_a, mut lo_b, mut hi_b) = (0.0, 1.0, 0.0, 1.0);
    for _ in 0..6 {
        let steps = 200;
        for i in 1..steps {
            for j in 1..steps {
                let a = lo_a + (hi_a - lo_a) * i as f64 / steps as f64;
                let b = lo_b + (hi_b - lo_b) * j as f64 / steps as f64;
                if a + b >= 1.0 {
                    continue;
                }
                let ll = tally.log_likelihood(&[a, b, 1.0 - a - b]);
                if ll > best.0 {
                    best = (ll, a, b);
                }
            }
        }
        let (span_a, span_b) = ((hi_a - lo_a) / 20.0, (hi_b - lo_b) / 20.0);
        (lo_a, hi_a) = ((best.1 - span_a).max(0.0), (best.1 + span_a).min(1.0));
        (lo_b, hi_b) = ((best.2 - span_b).max(0.0), (best.2 + span_b).min(1.0));
    }
    assert!((s[0] - best.1).abs() < 1e-5, "{} vs {}", s[0], best.1);
    assert!((s[1] - best.2).abs() < 1e-5, "{} vs {}", s[1], best.2);
}

#[test]
fn scale_invariance_of_win_probabilities() {
    let mut rng = common::rng(32);
    let tally = random_tally(&mut rng, 5);
    let s = fit_bradley_terry(&tally, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
        .unwrap()
        .scores;
    let scaled: Vec<f64> = s.iter().map(|v| v * 37.5).collect();
    for i in 0..5 {
        for j in 0..5 {
            let p = s[i] / (s[i] + s[j]);
            let q = scaled[i] / (scaled[i] + scaled[j]);
            assert!((p - q).abs() < 1e-12);
        }
    }
    assert!((tally.log_likelihood(&s) - tally.log_likelihood(&scaled)).abs() < 1e-9);
}

fn arb_vec() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-50.0f64..50.0, 3..30)
        .prop_filter("non-constant", |v| v.iter().any(|&x| x != v[0]))
}

proptest! {
    #[test]
    fn srcc_is_rank_invariant((x, y) in (arb_vec(), arb_vec()).prop_filter("same length", |(a, b)| a.len() == b.len())) {
        let r = srcc(&x, &y).unwrap();
        let ex: Vec<f64> = x.iter().map(|v| (v / 10.0).exp()).collect();
        let cube: Vec<f64> = y.iter().map(|v| v * v * v).collect();
        prop_assert!((srcc(&ex, &y).unwrap() - r).abs() < 1e-12);
        prop_assert!((srcc(&x, &cube).unwrap() - r).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&r));
    }

    #[test]
    fn plcc_is_affine_invariant(
        (x, y) in (arb_vec(), arb_vec()).prop_filter("same length", |(a, b)| a.len() == b.len()),
        scale in 0.1f64..10.0,
        offset in -100.0f64..100.0,
    ) {
        let r = plcc(&x, &y).unwrap();
        let t: Vec<f64> = x.iter().map(|v| scale * v + offset).collect();
        prop_assert!((plcc(&t, &y).unwrap() - r).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&r));
    }
}

#[test]
fn csv_ingestion_joins_external_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let votes = dir.path().join("votes.csv");
    std::fs::write(
        &votes,
        "region,item_a,item_b,winner\n\
         board,m1,m2,a\nboard,m1,m2,a\nboard,m2,m3,a\nboard,m1,m3,a\nboard,m3,m2,tie\nboard,m3,m1,a\n",
    )
    .unwrap();
    let subjective = fit_votes(
        &read_votes(&votes).unwrap(),
        DEFAULT_TOLERANCE,
        DEFAULT_MAX_ITER,
    )
    .unwrap();
    let items: Vec<&String> = subjective["board"].keys().collect();
    assert_eq!(items, ["m1", "m2", "m3"]);

    // the subjective CSV round trips through its own reader
    let subj_path = dir.path().join("subjective.csv");
    std::fs::write(&subj_path, subjective_to_csv(&subjective)).unwrap();
    let reread = read_subjective(&subj_path).unwrap();
    for (item, v) in &subjective["board"] {
        assert!((reread["board"][item] - v).abs() < 1e-6);
    }

    let scores_path = dir.path().join("external.csv");
    let mut text = String::from("region,item,metric,value\n");
    for (item, v) in &subjective["board"] {
        text.push_str(&format!("board,{item},LPIPS,{}\n", -v));
        text.push_str(&format!("board,{item},self,{v}\n"));
    }
    std::fs::write(&scores_path, text).unwrap();
    let mut metric_scores = MetricScores::new();
    read_metric_scores(&scores_path, &mut metric_scores).unwrap();
    let report = build_correlation_report(&metric_scores, &reread).unwrap();
    assert_eq!(report.metrics, ["LPIPS", "self"]);
    assert!((report.per_region["board"]["LPIPS"].srcc + 1.0).abs() < 1e-12);
    assert!((report.per_region["board"]["self"].plcc - 1.0).abs() < 1e-9);
}

#[test]
fn malformed_vote_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v.csv");
    std::fs::write(&p, "item_a,item_b,winner\nx,y,maybe\n").unwrap();
    assert!(matches!(read_votes(&p), Err(erqa::Error::Csv { .. })));
    std::fs::write(&p, "item_a,winner\nx,a\n").unwrap();
    assert!(read_votes(&p).is_err());
}
