mod common;

use centerstone_core::oracle::OracleHull;
use centerstone_core::tverberg::tverberg_part_bound;
use centerstone_core::{approx_tverberg, in_convex_hull, tverberg_safe_point, TverbergSafePoint};
use common::{subsets, uniform_set};

#[test]
fn witness_in_every_part_up_to_four_dimensions() {
    for seed in 0..500u64 {
        let d = 1 + (seed % 4) as usize;
        let lo = 1 << d;
        let n = lo + (seed as usize * 7) % (61 - lo);
        let ps = uniform_set(seed, n, d);
        let t = approx_tverberg(&ps).unwrap();
        assert!(t.parts.len() >= n >> d, "seed {seed}: {} parts", t.parts.len());
        assert!(t.parts.len() >= tverberg_part_bound(n, d));
        let mut seen = vec![false; n];
        for part in &t.parts {
            for &i in part {
                assert!(!seen[i], "seed {seed}: index {i} reused");
                seen[i] = true;
            }
            assert!(
                in_convex_hull(t.witness.coords(), &ps.select(part), false).unwrap(),
                "seed {seed}: witness outside a part"
            );
        }
    }
}

#[test]
fn deterministic() {
    for seed in 0..20u64 {
        let ps = uniform_set(seed, 30, 3);
        assert_eq!(approx_tverberg(&ps).unwrap(), approx_tverberg(&ps).unwrap());
    }
}

/// With `n_f` below the part count, the witness lies in every hull that
/// keeps at least one whole part.
#[test]
fn safe_point_sound_at_desk_scale() {
    for seed in 0..40u64 {
        let d = 1 + (seed % 2) as usize;
        let n = 6 + (seed % 7) as usize;
        let ps = uniform_set(seed, n, d);
        let parts = approx_tverberg(&ps).unwrap().parts;
        let r = parts.len();
        for n_f in 0..r {
            let TverbergSafePoint::Point(w) = tverberg_safe_point(&ps, n_f).unwrap() else {
                // Only the advertised bound is promised, not every extra part.
                assert!(n_f >= tverberg_part_bound(n, d), "seed {seed}: n_f={n_f}");
                continue;
            };
            for t in subsets(n, n - n_f) {
                if !parts.iter().any(|p| p.iter().all(|i| t.contains(i))) {
                    continue;
                }
                let h = OracleHull::new(&ps.select(&t)).unwrap();
                assert!(h.contains(w.coords()), "seed {seed} n_f={n_f} subset {t:?}");
            }
        }
        assert_eq!(tverberg_safe_point(&ps, r).unwrap(), TverbergSafePoint::NoGuarantee);
    }
}
