//! Approximate Tverberg partitions by coordinate-wise median lifting.
//!
//! On the line, pairing points outward from the lower median gives `⌈n/2⌉`
//! parts whose hulls share the median. In higher dimensions we partition the
//! projection that drops the last coordinate, then, over the shared
//! projected witness `w'`, each part's hull covers an interval of heights.
//! Picking a height `h` from the interval endpoints and pairing parts that
//! lie strictly below `h` with parts strictly above it keeps at least half of
//! the parts (rounded up), so `d` levels give at least `⌈n / 2^d⌉` parts.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GeometryError;
use crate::lp::{self, LpOutcome};
use crate::point::{frame, Point, PointSet};

/// Disjoint index sets whose convex hulls all contain `witness`.
#[derive(Debug, Clone, PartialEq)]
pub struct TverbergPartition {
    pub parts: Vec<Vec<usize>>,
    pub witness: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TverbergSafePoint {
    Point(Point),
    /// The assumed number of faulty points exceeds what the partition can
    /// tolerate.
    NoGuarantee,
}

/// `⌈n / 2^d⌉`, the number of parts [`approx_tverberg`] always produces.
pub fn tverberg_part_bound(n: usize, d: usize) -> usize {
    if d >= usize::BITS as usize {
        return usize::from(n > 0);
    }
    n.div_ceil(1usize << d)
}

/// Partitions `ps` into at least `⌈n / 2^d⌉` parts with a common point.
/// Needs `n >= 2^d`.
pub fn approx_tverberg(ps: &PointSet) -> Result<TverbergPartition, GeometryError> {
    let d = ps.dim();
    let needed = if d >= usize::BITS as usize { usize::MAX } else { 1usize << d };
    if ps.len() < needed {
        return Err(GeometryError::InsufficientPoints {
            needed,
            got: ps.len(),
        });
    }
    partition(ps)
}

fn partition(ps: &PointSet) -> Result<TverbergPartition, GeometryError> {
    if ps.is_empty() {
        return Err(GeometryError::Empty);
    }
    let (center, scale) = frame(ps);
    let norm = ps.normalized(&center, scale);
    let (mut parts, w) = lift(&norm, ps.dim())?;
    for p in &mut parts {
        p.sort_unstable();
    }
    let witness = w
        .iter()
        .zip(&center)
        .map(|(x, c)| c + x * scale)
        .collect();
    Ok(TverbergPartition {
        parts,
        witness: Point::new(witness)?,
    })
}

/// Safe point tolerating up to `⌈n / 2^d⌉ − 1` faulty inputs: with more
/// parts than faulty points, some part is entirely non-faulty and its hull
/// contains the witness.
pub fn tverberg_safe_point(ps: &PointSet, n_f: usize) -> Result<TverbergSafePoint, GeometryError> {
    if ps.is_empty() {
        return Err(GeometryError::Empty);
    }
    if n_f + 1 > tverberg_part_bound(ps.len(), ps.dim()) {
        return Ok(TverbergSafePoint::NoGuarantee);
    }
    // Small sets still get a single part containing everything.
    let t = partition(ps)?;
    if t.parts.len() <= n_f {
        return Ok(TverbergSafePoint::NoGuarantee);
    }
    Ok(TverbergSafePoint::Point(t.witness))
}

/// Partition using the first `k` coordinates of the (normalized) set.
fn lift(ps: &PointSet, k: usize) -> Result<(Vec<Vec<usize>>, Vec<f64>), GeometryError> {
    if k == 1 {
        return Ok(median_pairs(ps));
    }
    let (parts, w_prev) = lift(ps, k - 1)?;
    let axis = k - 1;
    let mut intervals: Vec<Option<(f64, f64)>> = Vec::with_capacity(parts.len());
    for part in &parts {
        intervals.push(height_interval(ps, part, &w_prev, axis));
    }

    let mut candidates: Vec<f64> = intervals
        .iter()
        .flatten()
        .flat_map(|&(lo, hi)| [lo, hi])
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let tol = 1e-12;
    let mut best: Option<(usize, usize, f64)> = None;
    for &h in &candidates {
        let (mut below, mut above, mut inside) = (0usize, 0usize, 0usize);
        for &(lo, hi) in intervals.iter().flatten() {
            if hi < h - tol {
                below += 1;
            } else if lo > h + tol {
                above += 1;
            } else {
                inside += 1;
            }
        }
        let score = inside + below.min(above);
        let imbalance = below.abs_diff(above);
        let better = match best {
            None => true,
            Some((s, i, _)) => score > s || (score == s && imbalance < i),
        };
        if better {
            best = Some((score, imbalance, h));
        }
    }

    let Some((_, _, h)) = best else {
        // No part's hull reaches the previous witness; keep everything
        // together at its centroid.
        let all: Vec<usize> = (0..ps.len()).collect();
        let c = ps.select(&all).centroid();
        return Ok((vec![all], c.coords()[..k].to_vec()));
    };

    let mut next: Vec<Vec<usize>> = Vec::new();
    let (mut below, mut above, mut leftover) = (Vec::new(), Vec::new(), Vec::new());
    for (part, iv) in parts.into_iter().zip(&intervals) {
        match *iv {
            Some((_, hi)) if hi < h - tol => below.push(part),
            Some((lo, _)) if lo > h + tol => above.push(part),
            Some(_) => next.push(part),
            None => leftover.push(part),
        }
    }
    let pairs = below.len().min(above.len());
    let mut below = below.into_iter();
    let mut above = above.into_iter();
    for _ in 0..pairs {
        let mut p = below.next().unwrap_or_default();
        p.extend(above.next().unwrap_or_default());
        next.push(p);
    }
    leftover.extend(below);
    leftover.extend(above);
    if let Some(first) = next.first_mut() {
        for p in leftover {
            first.extend(p);
        }
    }
    let mut w = w_prev;
    w.push(h);
    Ok((next, w))
}

/// 1-D partition of the first coordinate around the lower median.
fn median_pairs(ps: &PointSet) -> (Vec<Vec<usize>>, Vec<f64>) {
    let n = ps.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ps.point(a)[0].total_cmp(&ps.point(b)[0]).then(a.cmp(&b)));
    let m = (n - 1) / 2;
    let witness = ps.point(order[m])[0];
    let mut parts = Vec::with_capacity(n.div_ceil(2));
    if n % 2 == 1 {
        parts.push(vec![order[m]]);
        for i in 1..=m {
            parts.push(vec![order[m - i], order[m + i]]);
        }
    } else {
        for i in 0..=m {
            parts.push(vec![order[m - i], order[m + 1 + i]]);
        }
    }
    (parts, vec![witness])
}

/// Range of coordinate `axis` over `conv(part) ∩ {x : x[..axis] = w}`.
fn height_interval(ps: &PointSet, part: &[usize], w: &[f64], axis: usize) -> Option<(f64, f64)> {
    let m = part.len();
    let rows = axis + 1;
    let mut a = vec![0.0; rows * m];
    let mut heights = Vec::with_capacity(m);
    for (j, &i) in part.iter().enumerate() {
        let p = ps.point(i);
        for r in 0..axis {
            a[r * m + j] = p[r];
        }
        a[axis * m + j] = 1.0;
        heights.push(p[axis]);
    }
    let mut b = w.to_vec();
    b.push(1.0);
    let lo = match lp::solve_standard(&a, &b, &heights, 1e-9) {
        LpOutcome::Optimal(s) => s.value,
        _ => return None,
    };
    let neg: Vec<f64> = heights.iter().map(|v| -v).collect();
    let hi = match lp::solve_standard(&a, &b, &neg, 1e-9) {
        LpOutcome::Optimal(s) => -s.value,
        _ => return None,
    };
    Some((lo.min(hi), hi.max(lo)))
}
