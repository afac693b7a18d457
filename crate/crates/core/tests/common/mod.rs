#![allow(dead_code)]

use centerstone_core::PointSet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn uniform_set(seed: u64, n: usize, d: usize) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flat = (0..n * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    PointSet::from_flat(d, flat).unwrap()
}

/// Proptest strategy for a set of `n` points in `[-1, 1]^d`, `n` in `ns`.
pub fn point_set(d: usize, ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PointSet> {
    ns.prop_flat_map(move |n| prop::collection::vec(-1.0f64..1.0, n * d))
        .prop_map(move |flat| PointSet::from_flat(d, flat).unwrap())
}

/// Small-integer grid points: exact arithmetic, plenty of ties.
pub fn grid_set(d: usize, ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PointSet> {
    ns.prop_flat_map(move |n| prop::collection::vec(-4i32..=4, n * d))
        .prop_map(move |v| PointSet::from_flat(d, v.into_iter().map(f64::from).collect()).unwrap())
}

pub fn map_set(ps: &PointSet, f: impl Fn(&[f64]) -> Vec<f64>) -> PointSet {
    let rows: Vec<Vec<f64>> = ps.iter().map(f).collect();
    PointSet::from_rows(&rows).unwrap()
}

/// Every `k`-subset of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
