mod common;

use lanespline::assign::{assign_labels, make_reference_points, Border};
use lanespline::nms::{fast_nms, sequential_nms, NmsConfig, ScoredCurve};
use lanespline::synth::{random_lane_bspline, random_points, rng};
use lanespline::{symmetric_distance, LaneCurve, Point2};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn brute_force(start: Point2, refs: &[Point2], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..refs.len()).collect();
    idx.sort_by(|&a, &b| {
        refs[a]
            .distance(start)
            .partial_cmp(&refs[b].distance(start))
            .unwrap()
            .then(a.cmp(&b))
    });
    idx.truncate(k);
    idx
}

fn scene(seed: u64, n: usize) -> Vec<ScoredCurve> {
    let mut r = rng(seed);
    // distinct confidences so rank order does not depend on input order
    let mut confs: Vec<f64> = (0..n).map(|i| 0.3 + 0.7 * (i as f64 + 0.5) / n as f64).collect();
    confs.shuffle(&mut r);
    confs
        .into_iter()
        .map(|confidence| ScoredCurve {
            curve: random_lane_bspline(&mut r, 8, 400.0, 300.0).unwrap(),
            confidence,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn assignment_matches_brute_force(seed in 0u64..100_000, quarter in 1usize..30, k_raw in 1usize..10) {
        let mut r = rng(seed);
        let n_p = 4 * quarter;
        let k = k_raw.min(n_p);
        let (w, h) = (r.gen_range(100.0..2000.0), r.gen_range(100.0..1000.0));
        let refs = make_reference_points(n_p, w, h).unwrap();
        let starts = random_points(&mut r, 6, w, h);
        let got = assign_labels(&starts, &refs, k).unwrap();
        for (g, s) in got.iter().zip(&starts) {
            prop_assert_eq!(&g.proposal_indices, &brute_force(*s, &refs.points, k));
        }
    }

    #[test]
    fn reference_split(quarter in 1usize..50, w in 10.0..3000.0f64, h in 10.0..3000.0f64) {
        let refs = make_reference_points(4 * quarter, w, h).unwrap();
        prop_assert_eq!(refs.count(Border::Left), quarter);
        prop_assert_eq!(refs.count(Border::Right), quarter);
        prop_assert_eq!(refs.count(Border::Bottom), 2 * quarter);
        for (p, b) in refs.points.iter().zip(&refs.border_of) {
            match b {
                Border::Left => prop_assert!(p.x == 0.0 && p.y > 0.0 && p.y < h),
                Border::Right => prop_assert!(p.x == w && p.y > 0.0 && p.y < h),
                Border::Bottom => prop_assert!(p.y == h && p.x > 0.0 && p.x < w),
            }
        }
    }

    #[test]
    fn sequential_matches_oracle(seed in 0u64..100_000, n in 1usize..10, tau in 5.0..200.0f64) {
        let c = scene(seed, n);
        let cfg = NmsConfig { distance_threshold: tau, ..Default::default() };
        let polys: Vec<_> = c.iter().map(|s| s.curve.sample(cfg.n_dis).unwrap()).collect();
        let scores: Vec<f64> = c.iter().map(|s| s.confidence).collect();
        let dist = |i: usize, j: usize| symmetric_distance(&polys[i], &polys[j]).d_symmetric;
        let want = common::sequential_nms_oracle(&scores, &dist, tau, cfg.conf_threshold);
        prop_assert_eq!(sequential_nms(&c, &cfg).unwrap(), want);
    }

    #[test]
    fn fast_is_subset_of_sequential(seed in 0u64..100_000, n in 1usize..10, tau in 5.0..200.0f64) {
        let c = scene(seed, n);
        let cfg = NmsConfig { distance_threshold: tau, ..Default::default() };
        let fast = fast_nms(&c, &cfg).unwrap();
        let seq = sequential_nms(&c, &cfg).unwrap();
        prop_assert!(fast.iter().all(|i| seq.contains(i)));
        // the best candidate always survives
        if let Some(top) = (0..c.len()).filter(|&i| c[i].confidence >= cfg.conf_threshold).max_by(|&a, &b| c[a].confidence.total_cmp(&c[b].confidence)) {
            prop_assert_eq!(fast[0], top);
        }
    }

    #[test]
    fn nms_ignores_input_order(seed in 0u64..100_000, n in 1usize..10) {
        let c = scene(seed, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng(seed ^ 0xabcdef));
        let shuffled: Vec<ScoredCurve> = perm.iter().map(|&i| c[i].clone()).collect();
        let cfg = NmsConfig::default();
        let a: Vec<usize> = fast_nms(&c, &cfg).unwrap();
        let b: Vec<usize> = fast_nms(&shuffled, &cfg).unwrap().into_iter().map(|j| perm[j]).collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn assignment_errors() {
    let refs = make_reference_points(60, 1640.0, 590.0).unwrap();
    assert!(assign_labels(&[Point2::new(f64::NAN, 1.0)], &refs, 3).is_err());
    assert!(assign_labels(&[Point2::ZERO], &refs, 61).is_err());
    assert!(assign_labels(&[], &refs, 3).unwrap().is_empty());
    assert!(make_reference_points(0, 1.0, 1.0).is_err());
}
