//! Core geometric primitives: general position, Tukey depth, convex-hull
//! membership and Radon partitions.
//!
//! Inputs are translated and scaled to unit diameter before any tolerance
//! decision, so every threshold in [`crate::tolerance`] acts relatively.

use alloc::vec;
use alloc::vec::Vec;

use crate::combin::for_each_subset;
use crate::error::GeometryError;
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::point::{dot, frame, norm, Point, PointSet};
use crate::rng;
use crate::tolerance;

/// Whether every `d + 1` points of `ps` are affinely independent (for
/// `n <= d + 1`, whether the whole set is).
pub fn is_general_position(ps: &PointSet) -> bool {
    let d = ps.dim();
    let n = ps.len();
    let (c, s) = frame(ps);
    let ps = ps.normalized(&c, s);
    if n <= d + 1 {
        return affine_rank(&ps) == n - 1;
    }
    let mut ok = true;
    let mut m = vec![0.0; d * d];
    for_each_subset(n, d + 1, |idx| {
        let base = ps.point(idx[0]);
        let mut hadamard = 1.0;
        for (r, &i) in idx[1..].iter().enumerate() {
            let row = &mut m[r * d..(r + 1) * d];
            for (k, v) in row.iter_mut().enumerate() {
                *v = ps.point(i)[k] - base[k];
            }
            hadamard *= norm(row);
        }
        let det = determinant(&mut m, d);
        if det.abs() <= tolerance::RANK * hadamard {
            ok = false;
        }
        ok
    });
    ok
}

/// Determinant by Gaussian elimination; clobbers `m`.
fn determinant(m: &mut [f64], d: usize) -> f64 {
    match d {
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        _ => {
            let mut det = 1.0;
            for c in 0..d {
                let mut pi = c;
                for i in c + 1..d {
                    if m[i * d + c].abs() > m[pi * d + c].abs() {
                        pi = i;
                    }
                }
                if m[pi * d + c] == 0.0 {
                    return 0.0;
                }
                if pi != c {
                    for j in 0..d {
                        m.swap(pi * d + j, c * d + j);
                    }
                    det = -det;
                }
                let p = m[c * d + c];
                det *= p;
                for i in c + 1..d {
                    let f = m[i * d + c] / p;
                    for j in c..d {
                        m[i * d + j] -= f * m[c * d + j];
                    }
                }
            }
            det
        }
    }
}

/// Dimension of the affine hull of `ps`.
pub fn affine_rank(ps: &PointSet) -> usize {
    let n = ps.len();
    let d = ps.dim();
    if n < 2 {
        return 0;
    }
    let (c, s) = frame(ps);
    let ps = ps.normalized(&c, s);
    let base = ps.point(0);
    let mut m = Vec::with_capacity((n - 1) * d);
    for p in ps.iter().skip(1) {
        m.extend(p.iter().zip(base).map(|(a, b)| a - b));
    }
    linalg::rank(&m, n - 1, d, tolerance::RANK)
}

/// Tukey depth of `p` in `ps`: the largest `α` such that every closed
/// half-space containing `p` holds at least `α` points of `ps`.
///
/// Computed exactly (up to the relative coplanarity tolerance) by visiting
/// every hyperplane through `p` and `d − 1` sample points. Points on such a
/// hyperplane can be rotated to either side; the minimum over those
/// rotations is itself a depth problem one dimension down and is solved
/// recursively. Sample points coinciding with `p` lie in every half-space.
pub fn depth(p: &[f64], ps: &PointSet) -> Result<usize, GeometryError> {
    ps.check_point(p)?;
    let d = ps.dim();
    let scale = ps
        .iter()
        .map(|s| norm(&sub(s, p)))
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Ok(ps.len());
    }
    let mut always = 0;
    let mut flat = Vec::with_capacity(ps.len() * d);
    for s in ps.iter() {
        let v: Vec<f64> = s.iter().zip(p).map(|(a, b)| (a - b) / scale).collect();
        if norm(&v) <= tolerance::RANK {
            always += 1;
        } else {
            flat.extend(v);
        }
    }
    Ok(always + depth_of_origin(&flat, d))
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Minimum over generic closed half-spaces through the origin of the number
/// of (nonzero) vectors they contain.
fn depth_of_origin(flat: &[f64], dim: usize) -> usize {
    let n = flat.len() / dim;
    if n == 0 {
        return 0;
    }
    if dim == 1 {
        let pos = flat.iter().filter(|v| **v > 0.0).count();
        return pos.min(n - pos);
    }
    let basis = linalg::orthonormal_basis(flat.chunks_exact(dim), dim, tolerance::RANK);
    if basis.len() < dim {
        let k = basis.len();
        let mut proj = Vec::with_capacity(n * k);
        for v in flat.chunks_exact(dim) {
            proj.extend(basis.iter().map(|b| dot(b, v)));
        }
        return depth_of_origin(&proj, k);
    }
    let norms: Vec<f64> = flat.chunks_exact(dim).map(norm).collect();
    let mut best = n;
    let mut m = vec![0.0; (dim - 1) * dim];
    for_each_subset(n, dim - 1, |idx| {
        for (r, &i) in idx.iter().enumerate() {
            m[r * dim..(r + 1) * dim].copy_from_slice(&flat[i * dim..(i + 1) * dim]);
        }
        let ker = linalg::kernel(&m, dim - 1, dim, tolerance::RANK);
        if ker.len() != 1 {
            return true;
        }
        let mut u = ker.into_iter().next().unwrap_or_default();
        let l = norm(&u);
        u.iter_mut().for_each(|x| *x /= l);
        let (mut pos, mut neg) = (0usize, 0usize);
        let mut on_plane: Vec<usize> = Vec::new();
        for (j, v) in flat.chunks_exact(dim).enumerate() {
            let s = dot(&u, v);
            if s.abs() <= tolerance::RANK * norms[j] {
                on_plane.push(j);
            } else if s > 0.0 {
                pos += 1;
            } else {
                neg += 1;
            }
        }
        let side = pos.min(neg);
        if side >= best {
            return true;
        }
        // The defining vectors alone are linearly independent and can all
        // be rotated out; extra coplanar vectors need the recursive count.
        let sub_depth = if on_plane.len() == dim - 1 {
            0
        } else {
            let comp = linalg::complement_basis(&u);
            let mut proj = Vec::with_capacity(on_plane.len() * (dim - 1));
            for &j in &on_plane {
                let v = &flat[j * dim..(j + 1) * dim];
                proj.extend(comp.iter().map(|b| dot(b, v)));
            }
            depth_of_origin(&proj, dim - 1)
        };
        best = best.min(side + sub_depth);
        best > 0
    });
    best
}

/// Whether `p` is a convex combination of `ps` (within [`tolerance::FEAS`]).
/// With `strict`, additionally requires `conv(ps)` to be full-dimensional and
/// `p` to admit weights all at least `tolerance::INTERIOR / n`, which places
/// it in the interior.
pub fn in_convex_hull(p: &[f64], ps: &PointSet, strict: bool) -> Result<bool, GeometryError> {
    ps.check_point(p)?;
    let d = ps.dim();
    let n = ps.len();
    let (_, scale) = frame(ps);
    let w: Vec<Vec<f64>> = ps
        .iter()
        .map(|s| s.iter().zip(p).map(|(a, b)| (a - b) / scale).collect())
        .collect();
    if !strict {
        let cols = n;
        let mut a = vec![0.0; (d + 1) * cols];
        for (j, wj) in w.iter().enumerate() {
            for k in 0..d {
                a[k * cols + j] = wj[k];
            }
            a[d * cols + j] = 1.0;
        }
        let mut b = vec![0.0; d + 1];
        b[d] = 1.0;
        return Ok(match lp::solve_standard(&a, &b, &vec![0.0; cols], tolerance::FEAS) {
            LpOutcome::Optimal(sol) => combination_residual(&w, &sol.x) <= tolerance::FEAS,
            _ => false,
        });
    }
    if affine_rank(ps) < d {
        return Ok(false);
    }
    // λ_i = μ_i + ε with μ >= 0; maximize ε.
    let cols = n + 1;
    let mut a = vec![0.0; (d + 1) * cols];
    for (j, wj) in w.iter().enumerate() {
        for k in 0..d {
            a[k * cols + j] = wj[k];
            a[k * cols + n] += wj[k];
        }
        a[d * cols + j] = 1.0;
    }
    a[d * cols + n] = n as f64;
    let mut b = vec![0.0; d + 1];
    b[d] = 1.0;
    let mut c = vec![0.0; cols];
    c[n] = -1.0;
    Ok(match lp::solve_standard(&a, &b, &c, tolerance::FEAS) {
        LpOutcome::Optimal(sol) => {
            let eps = sol.x[n];
            let lambda: Vec<f64> = sol.x[..n].iter().map(|m| m + eps).collect();
            combination_residual(&w, &lambda) <= tolerance::FEAS
                && eps * n as f64 >= tolerance::INTERIOR
        }
        _ => false,
    })
}

/// `max(|Σλ_i w_i|_inf, |Σλ_i - 1|)`.
fn combination_residual(w: &[Vec<f64>], lambda: &[f64]) -> f64 {
    let d = w.first().map_or(0, Vec::len);
    let mut acc = vec![0.0; d];
    let mut total = 0.0;
    for (wj, &l) in w.iter().zip(lambda) {
        total += l;
        for k in 0..d {
            acc[k] += l * wj[k];
        }
    }
    acc.iter().fold((total - 1.0).abs(), |m, v| m.max(v.abs()))
}

/// Radon partition of `d + 2` points: two index sets whose hulls meet, a
/// witness in the intersection, and the convex weights that produce it
/// from each side.
#[derive(Debug, Clone, PartialEq)]
pub struct RadonPartition {
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
    pub witness: Point,
    /// Weights over `part_a` (same order), summing to one.
    pub weights_a: Vec<f64>,
    /// Weights over `part_b` (same order), summing to one.
    pub weights_b: Vec<f64>,
}

/// Radon point from the signs of the affine dependence `Σc_i x_i = 0`,
/// `Σc_i = 0`. `part_a` is the smaller side (the side holding index 0 on
/// ties). Fails when the dependence is not unique.
pub fn radon_point(ps: &PointSet) -> Result<RadonPartition, GeometryError> {
    let d = ps.dim();
    let n = ps.len();
    if n != d + 2 {
        return Err(GeometryError::InvalidParameter(
            "a Radon partition needs exactly d + 2 points",
        ));
    }
    let (center, scale) = frame(ps);
    let norm_ps = ps.normalized(&center, scale);
    let mut m = vec![0.0; (d + 1) * n];
    for (j, p) in norm_ps.iter().enumerate() {
        for k in 0..d {
            m[k * n + j] = p[k];
        }
        m[d * n + j] = 1.0;
    }
    let ker = linalg::kernel(&m, d + 1, n, tolerance::RANK);
    if ker.len() != 1 {
        return Err(GeometryError::Degenerate("affine dependence is not unique"));
    }
    let mut coef = ker.into_iter().next().unwrap_or_default();
    let cmax = coef.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    coef.iter_mut().for_each(|c| *c /= cmax);
    let pos: Vec<usize> = (0..n).filter(|&i| coef[i] > 0.0).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| coef[i] <= 0.0).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(GeometryError::Degenerate("one-sided affine dependence"));
    }
    let wpos = normalize_weights(pos.iter().map(|&i| coef[i]));
    let wneg = normalize_weights(neg.iter().map(|&i| -coef[i]));
    let pos_first = pos.len() < neg.len() || (pos.len() == neg.len() && pos[0] == 0);
    let (part_a, weights_a, part_b, weights_b) = if pos_first {
        (pos, wpos, neg, wneg)
    } else {
        (neg, wneg, pos, wpos)
    };
    let mut witness = vec![0.0; d];
    for (&i, &w) in part_a.iter().zip(&weights_a) {
        for k in 0..d {
            witness[k] += w * ps.point(i)[k];
        }
    }
    Ok(RadonPartition {
        part_a,
        part_b,
        witness: Point::from_vec_unchecked(witness),
        weights_a,
        weights_b,
    })
}

fn normalize_weights(w: impl Iterator<Item = f64>) -> Vec<f64> {
    let w: Vec<f64> = w.collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Deterministic perturbation: point `i` moves by at most
/// `rel * diameter(ps)`, drawn from the `(seed, JITTER, i)` stream.
pub fn jitter(ps: &PointSet, seed: u64, rel: f64) -> PointSet {
    let d = ps.dim();
    let (_, diam) = frame(ps);
    let mag = rel * diam;
    let mut out = PointSet::with_capacity(d, ps.len());
    for (i, p) in ps.iter().enumerate() {
        let mut r = rng::substream(seed, &[rng::TAG_JITTER, i as u64]);
        let off = rng::offset_in_ball(&mut r, d, mag);
        let q: Vec<f64> = p.iter().zip(&off).map(|(a, b)| a + b).collect();
        out.push(&q);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn general_position_examples() {
        assert!(is_general_position(&set(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])));
        assert!(!is_general_position(&set(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]])));
        // Duplicates are flagged.
        assert!(!is_general_position(&set(&[&[0.5, 0.5], &[0.5, 0.5]])));
        let cube = set(&[
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[1.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
        ]);
        assert!(!is_general_position(&cube));
    }

    #[test]
    fn depth_examples() {
        let tri = set(&[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0]]);
        assert_eq!(depth(&[1.0, 1.0], &tri).unwrap(), 1);
        assert_eq!(depth(&[5.0, 5.0], &tri).unwrap(), 0);
        assert_eq!(depth(&[0.0, 0.0], &tri).unwrap(), 1);
        let line = set(&[&[1.0], &[2.0], &[3.0], &[4.0], &[5.0]]);
        assert_eq!(depth(&[3.0], &line).unwrap(), 3);
        assert_eq!(depth(&[2.5], &line).unwrap(), 2);
        assert_eq!(depth(&[9.0], &line).unwrap(), 0);
    }

    #[test]
    fn depth_handles_collinear_sets() {
        // All points on the x-axis: a 1D depth problem embedded in 2D.
        let ps = set(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0], &[3.0, 0.0], &[4.0, 0.0]]);
        assert_eq!(depth(&[2.0, 0.0], &ps).unwrap(), 3);
        assert_eq!(depth(&[1.5, 0.0], &ps).unwrap(), 2);
        assert_eq!(depth(&[2.0, 1.0], &ps).unwrap(), 0);
        // Collinear with p along a line through the cloud.
        let ps = set(&[&[-1.0, -1.0], &[1.0, 1.0], &[2.0, 2.0], &[1.0, -1.0], &[-1.0, 1.0]]);
        assert_eq!(depth(&[0.0, 0.0], &ps).unwrap(), 2);
    }

    #[test]
    fn depth_dimension_mismatch() {
        let tri = set(&[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0]]);
        assert!(matches!(
            depth(&[1.0], &tri),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hull_examples() {
        let tri = set(&[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0]]);
        assert!(in_convex_hull(&[1.0, 1.0], &tri, false).unwrap());
        assert!(in_convex_hull(&[1.0, 1.0], &tri, true).unwrap());
        assert!(in_convex_hull(&[3.0, 0.0], &tri, false).unwrap());
        assert!(!in_convex_hull(&[3.0, 0.0], &tri, true).unwrap());
        assert!(in_convex_hull(&[1.5, 1.5], &tri, false).unwrap());
        assert!(!in_convex_hull(&[1.5, 1.5], &tri, true).unwrap());
        assert!(!in_convex_hull(&[2.0, 2.0], &tri, false).unwrap());
        // Flat hulls have no interior.
        let seg = set(&[&[0.0, 0.0], &[2.0, 0.0]]);
        assert!(in_convex_hull(&[1.0, 0.0], &seg, false).unwrap());
        assert!(!in_convex_hull(&[1.0, 0.0], &seg, true).unwrap());
    }

    #[test]
    fn radon_examples() {
        let sq = set(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let r = radon_point(&sq).unwrap();
        assert_eq!(r.part_a, vec![0, 3]);
        assert_eq!(r.part_b, vec![1, 2]);
        assert!((r.witness[0] - 0.5).abs() < 1e-12 && (r.witness[1] - 0.5).abs() < 1e-12);

        let tri = set(&[&[0.0, 0.0], &[4.0, 0.0], &[0.0, 4.0], &[1.0, 1.0]]);
        let r = radon_point(&tri).unwrap();
        assert_eq!(r.part_a, vec![3]);
        assert_eq!(r.part_b, vec![0, 1, 2]);
        assert!((r.witness[0] - 1.0).abs() < 1e-12 && (r.witness[1] - 1.0).abs() < 1e-12);
        let from_b: f64 = r
            .part_b
            .iter()
            .zip(&r.weights_b)
            .map(|(&i, w)| w * tri.point(i)[0])
            .sum();
        assert!((from_b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn radon_rejects_degenerate_and_wrong_size() {
        let dup = set(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]);
        assert!(matches!(radon_point(&dup), Err(GeometryError::Degenerate(_))));
        let three = set(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert!(radon_point(&three).is_err());
    }

    #[test]
    fn jitter_is_small_and_deterministic() {
        let sq = set(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let a = jitter(&sq, 3, 1e-7);
        assert_eq!(a, jitter(&sq, 3, 1e-7));
        assert_ne!(a, jitter(&sq, 4, 1e-7));
        for (p, q) in a.iter().zip(sq.iter()) {
            let dx: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
            assert!(libm::sqrt(dx) <= 1e-7 * libm::sqrt(2.0) + 1e-18);
        }
    }
}
