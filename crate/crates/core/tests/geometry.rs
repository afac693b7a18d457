mod common;

use centerstone_core::oracle::{oracle_depth, OracleHull};
use centerstone_core::{centerpoint_2d, depth, in_convex_hull, radon_point, CenterpointConfig};
use common::{grid_set, map_set, point_set, subsets, uniform_set};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn depth_is_bounded(ps in point_set(2, 1..=25), q in prop::array::uniform2(-1.2f64..1.2)) {
        let n = ps.len();
        let dq = depth(&q, &ps).unwrap();
        prop_assert!(dq <= n.div_ceil(2));
        for p in ps.iter() {
            let dp = depth(p, &ps).unwrap();
            prop_assert!((1..=n).contains(&dp));
        }
    }

    #[test]
    fn depth_survives_translation_and_scaling(
        ps in grid_set(2, 3..=14),
        q in prop::array::uniform2(-4i32..=4),
        shift in prop::array::uniform2(-8i32..=8),
        k in -3i32..=3,
    ) {
        // Integers, a dyadic scale and an integer shift keep every sign exact.
        let s = 2f64.powi(k);
        let t = |p: &[f64]| vec![s * p[0] + f64::from(shift[0]), s * p[1] + f64::from(shift[1])];
        let q = [f64::from(q[0]), f64::from(q[1])];
        let moved = map_set(&ps, t);
        prop_assert_eq!(depth(&q, &ps).unwrap(), depth(&t(&q), &moved).unwrap());
    }

    #[test]
    fn random_depth_survives_translation_and_scaling(
        seed in any::<u64>(),
        n in 4usize..=20,
        shift in prop::array::uniform3(-3.0f64..3.0),
        k in -4i32..=4,
    ) {
        let ps = uniform_set(seed, n + 1, 3);
        let q = ps.point(n).to_vec();
        let ps = ps.select(&(0..n).collect::<Vec<_>>());
        let s = 2f64.powi(k);
        let t = |p: &[f64]| p.iter().zip(&shift).map(|(x, b)| s * x + b).collect::<Vec<_>>();
        prop_assert_eq!(depth(&q, &ps).unwrap(), depth(&t(&q), &map_set(&ps, t)).unwrap());
    }

    #[test]
    fn strict_hull_implies_closed_hull(ps in point_set(2, 3..=12), q in prop::array::uniform2(-1.1f64..1.1)) {
        if in_convex_hull(&q, &ps, true).unwrap() {
            prop_assert!(in_convex_hull(&q, &ps, false).unwrap());
        }
        for p in ps.iter() {
            prop_assert!(in_convex_hull(p, &ps, false).unwrap());
        }
    }

    #[test]
    fn radon_witness_is_in_both_hulls(seed in any::<u64>(), d in 1usize..=4) {
        let ps = uniform_set(seed, d + 2, d);
        let r = radon_point(&ps).unwrap();
        let mut all: Vec<usize> = r.part_a.iter().chain(&r.part_b).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..d + 2).collect::<Vec<_>>());
        for (part, w) in [(&r.part_a, &r.weights_a), (&r.part_b, &r.weights_b)] {
            prop_assert!(w.iter().all(|&x| x >= -1e-9));
            prop_assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
            for k in 0..d {
                let x: f64 = part.iter().zip(w).map(|(&i, wi)| wi * ps.point(i)[k]).sum();
                prop_assert!((x - r.witness.coords()[k]).abs() <= 1e-9);
            }
            prop_assert!(in_convex_hull(r.witness.coords(), &ps.select(part), false).unwrap());
        }
    }
}

/// Points of depth at least `⌈n/3⌉` lie in the hull of every subset with
/// more than `2n/3` points.
#[test]
fn deep_points_lie_in_large_subset_hulls() {
    for seed in 0..40u64 {
        let n = 6 + (seed % 7) as usize;
        let ps = uniform_set(seed, n, 2);
        let k = n.div_ceil(3);
        let mut candidates: Vec<Vec<f64>> = ps.iter().map(<[f64]>::to_vec).collect();
        candidates.push(centerpoint_2d(&ps, &CenterpointConfig::seeded(seed)).unwrap().point.into_coords());
        for a in -8..=8 {
            for b in -8..=8 {
                candidates.push(vec![a as f64 / 8.0, b as f64 / 8.0]);
            }
        }
        let size = 2 * n / 3 + 1;
        let hulls: Vec<OracleHull> = subsets(n, size)
            .iter()
            .map(|t| OracleHull::new(&ps.select(t)).unwrap())
            .collect();
        for q in candidates.iter().filter(|q| depth(q, &ps).unwrap() >= k) {
            for h in &hulls {
                assert!(h.contains(q), "seed {seed}: depth-{k} point {q:?} escapes a hull");
            }
        }
    }
}

/// The LP-based routines against the brute-force ones on 1000 random pairs.
#[test]
fn fast_paths_match_oracle() {
    let mut hull_disagree = 0;
    for seed in 0..1000u64 {
        let d = 1 + (seed % 3) as usize;
        let n = d + 1 + (seed % 11) as usize;
        let ps = uniform_set(seed, n + 1, d);
        let q = ps.point(n).to_vec();
        let ps = ps.select(&(0..n).collect::<Vec<_>>());
        assert_eq!(depth(&q, &ps).unwrap(), oracle_depth(&q, &ps).unwrap(), "seed {seed}");
        let h = OracleHull::new(&ps).unwrap();
        // Points within the shared tolerance of a facet may go either way.
        if h.margin(&q).abs() > 1e-7 && h.contains(&q) != in_convex_hull(&q, &ps, false).unwrap() {
            hull_disagree += 1;
        }
    }
    assert_eq!(hull_disagree, 0);
}
