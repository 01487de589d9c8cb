mod common;

use common::{random_returns, series};
use pathlens_core::{segment_episodes, wealth_path, Episode};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Quadratic reference segmentation. Wealth is rebuilt from the returns with
/// the initial unit at position 0, so observation `t` sits at position
/// `t + 1`. For every position that is a running maximum and is followed by
/// a drop, scan forward for the first position back at that level.
fn brute_force(returns: &[f64], threshold: f64) -> Vec<Episode> {
    let mut w = vec![1.0];
    for r in returns {
        let last = *w.last().unwrap();
        w.push(last * (1.0 + r));
    }
    let mut out = Vec::new();
    for i in 0..w.len() {
        let is_running_max = (0..=i).all(|s| w[s] <= w[i]);
        if !is_running_max || i + 1 >= w.len() || w[i + 1] >= w[i] {
            continue;
        }
        let mut j = i + 1;
        let mut trough = i + 1;
        while j < w.len() && w[j] < w[i] {
            if w[j] < w[trough] {
                trough = j;
            }
            j += 1;
        }
        let depth = 1.0 - w[trough] / w[i];
        if depth >= threshold {
            let resolved = j < w.len();
            out.push(Episode {
                peak_index: i.checked_sub(1),
                trough_index: trough - 1,
                recovery_index: resolved.then(|| j - 1),
                depth,
                underwater_periods: j - i - 1,
                truncated: !resolved,
            });
        }
    }
    out
}

#[test]
fn segmentation_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=200);
        let rets = random_returns(&mut rng, n, 0.08);
        let path = wealth_path(&series("w", &rets));
        for threshold in [0.05, 0.10, 0.20] {
            assert_eq!(segment_episodes(&path, threshold), brute_force(&rets, threshold));
        }
    }
}

#[test]
fn worked_example_against_oracle() {
    let rets = [0.10, -0.20, 0.05, 0.10, 0.12];
    let got = segment_episodes(&wealth_path(&series("b", &rets)), 0.10);
    assert_eq!(got, brute_force(&rets, 0.10));
    assert_eq!(got.len(), 1);
    // 1.1 * 0.95 * ... : 1.10, 0.88, 0.924, 1.0164, 1.13837
    assert!((got[0].depth - 0.20).abs() < 1e-12);
}

fn returns_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.15f64..0.15, 1..120)
}

proptest! {
    #[test]
    fn episodes_are_ordered_disjoint_and_deep_enough(rets in returns_strategy(), threshold in 0.01f64..0.5) {
        let path = wealth_path(&series("w", &rets));
        let eps = segment_episodes(&path, threshold);
        for e in &eps {
            prop_assert!(e.depth >= threshold);
            let peak = path.wealth_at(e.peak_index);
            prop_assert!((e.depth - (1.0 - path.wealth[e.trough_index] / peak)).abs() < 1e-15);
            if let Some(b) = e.recovery_index {
                prop_assert!(e.trough_index < b);
                prop_assert!(path.wealth[b] >= peak);
                for t in e.first_underwater()..b {
                    prop_assert!(path.wealth[t] < peak);
                }
            } else {
                prop_assert!(e.truncated);
            }
        }
        for w in eps.windows(2) {
            prop_assert!(w[0].window_end() <= w[1].window_start());
        }
    }

    #[test]
    fn lowering_threshold_only_adds(rets in returns_strategy(), hi in 0.05f64..0.5, frac in 0.0f64..1.0) {
        let lo = hi * frac.max(0.01);
        let path = wealth_path(&series("w", &rets));
        let deep = segment_episodes(&path, hi);
        let shallow = segment_episodes(&path, lo);
        for e in &deep {
            prop_assert!(shallow.contains(e));
        }
    }

    #[test]
    fn resolved_episodes_survive_any_suffix(rets in returns_strategy(), suffix in returns_strategy()) {
        let base = segment_episodes(&wealth_path(&series("w", &rets)), 0.05);
        let mut longer = rets.clone();
        longer.extend_from_slice(&suffix);
        let extended = segment_episodes(&wealth_path(&series("w", &longer)), 0.05);
        for e in base.iter().filter(|e| !e.truncated) {
            prop_assert!(extended.contains(e));
        }
    }
}
