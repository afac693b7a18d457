//! Brute-force ground truth.
//!
//! Everything here is deliberately naive and self-contained: hyperplanes
//! come from cofactor expansion, systems are solved by a local Gaussian
//! elimination, and polytopes are handled by enumerating facets and
//! vertices. Nothing calls into [`crate::lp`], [`crate::linalg`] or
//! [`crate::geometry`], so the fast paths can be checked against it.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::combin::for_each_subset;
use crate::error::GeometryError;
use crate::point::{dot, PointSet};

/// Slack allowed when testing a point against a facet (unit-diameter frame).
const SIDE_TOL: f64 = 1e-9;
/// Margin required of a certified interior point.
const INTERIOR_TOL: f64 = 1e-7;

/// Largest `n` accepted by [`oracle_depth`] in dimension `d`.
pub fn depth_limit(d: usize) -> usize {
    match d {
        1 => 1_000_000,
        2 => 200,
        3 => 80,
        4 => 60,
        5 => 60,
        _ => 20,
    }
}

/// Largest `n` accepted by [`oracle_safe_point_exists`] in dimension `d`.
pub fn safe_point_limit(d: usize) -> usize {
    match d {
        1 | 2 => 15,
        3 => 10,
        _ => 8,
    }
}

fn too_large(d: usize, limit: usize, n: usize) -> Result<(), GeometryError> {
    if n > limit {
        Err(GeometryError::TooLarge {
            dim: d,
            limit,
            got: n,
        })
    } else {
        Ok(())
    }
}

fn norm2(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

/// Determinant of a `k × k` row-major matrix by elimination (consumes it).
fn det(mut m: Vec<f64>, k: usize) -> f64 {
    let mut acc = 1.0;
    for c in 0..k {
        let pi = (c..k)
            .max_by(|&a, &b| m[a * k + c].abs().total_cmp(&m[b * k + c].abs()))
            .unwrap_or(c);
        if m[pi * k + c] == 0.0 {
            return 0.0;
        }
        if pi != c {
            for j in 0..k {
                m.swap(pi * k + j, c * k + j);
            }
            acc = -acc;
        }
        let p = m[c * k + c];
        acc *= p;
        for i in c + 1..k {
            let f = m[i * k + c] / p;
            for j in c..k {
                m[i * k + j] -= f * m[c * k + j];
            }
        }
    }
    acc
}

/// Vector orthogonal to `rows` (`d − 1` vectors of `R^d`) by cofactor
/// expansion, normalized; `None` if the rows are (nearly) dependent.
fn cross(rows: &[&[f64]], d: usize) -> Option<Vec<f64>> {
    if d == 1 {
        return Some(vec![1.0]);
    }
    let mut out = vec![0.0; d];
    let k = d - 1;
    for (col, o) in out.iter_mut().enumerate() {
        let mut minor = Vec::with_capacity(k * k);
        for r in rows {
            minor.extend(r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| *v));
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        *o = sign * det(minor, k);
    }
    let scale: f64 = rows.iter().map(|r| norm2(r)).product();
    let n = norm2(&out);
    if scale == 0.0 || n <= 1e-10 * scale {
        return None;
    }
    out.iter_mut().for_each(|v| *v /= n);
    Some(out)
}

/// Solves a square system by Gaussian elimination with partial pivoting.
fn gauss(mut a: Vec<f64>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let k = b.len();
    for c in 0..k {
        let pi = (c..k).max_by(|&x, &y| a[x * k + c].abs().total_cmp(&a[y * k + c].abs()))?;
        if a[pi * k + c].abs() < 1e-13 {
            return None;
        }
        for j in 0..k {
            a.swap(pi * k + j, c * k + j);
        }
        b.swap(pi, c);
        for i in 0..k {
            if i != c {
                let f = a[i * k + c] / a[c * k + c];
                for j in c..k {
                    a[i * k + j] -= f * a[c * k + j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    Some((0..k).map(|i| b[i] / a[i * k + i]).collect())
}

/// Points moved to a frame where their bounding box has unit diagonal.
fn unit_frame(ps: &PointSet) -> (Vec<Vec<f64>>, Vec<f64>, f64) {
    let d = ps.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in ps.iter() {
        for k in 0..d {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let diag: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| b - a).collect();
    let mut scale = norm2(&diag);
    if scale == 0.0 {
        scale = 1.0;
    }
    let pts = ps
        .iter()
        .map(|p| p.iter().zip(&center).map(|(x, c)| (x - c) / scale).collect())
        .collect();
    (pts, center, scale)
}

/// Exact Tukey depth by exhaustive search over closed half-spaces through
/// `p`.
///
/// Each hyperplane through `p` and `d − 1` sample points is tilted by a
/// small rotation in every combination of directions for the points that
/// define it; every tilted plane is a concrete closed half-space, so each
/// count is an upper bound, and in general position the minimum over them
/// is attained. When no other sample point lies on the defining plane the
/// best tilt is known in closed form (push all defining points out).
pub fn oracle_depth(p: &[f64], ps: &PointSet) -> Result<usize, GeometryError> {
    Ok(oracle_depth_witness(p, ps)?.0)
}

/// [`oracle_depth`] together with the normal `u` of a closed half-space
/// `{x : u · (x − p) >= 0}` that attains it (`None` when every sample point
/// coincides with `p`).
pub fn oracle_depth_witness(
    p: &[f64],
    ps: &PointSet,
) -> Result<(usize, Option<Vec<f64>>), GeometryError> {
    ps.check_point(p)?;
    let d = ps.dim();
    let n = ps.len();
    too_large(d, depth_limit(d), n)?;
    let raw: Vec<Vec<f64>> = ps
        .iter()
        .map(|s| s.iter().zip(p).map(|(a, b)| a - b).collect())
        .collect();
    let scale = raw.iter().map(|v| norm2(v)).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Ok((n, None));
    }
    let mut always = 0usize;
    let mut live: Vec<Vec<f64>> = Vec::with_capacity(n);
    for v in raw {
        let v: Vec<f64> = v.iter().map(|x| x / scale).collect();
        if norm2(&v) <= 1e-12 {
            always += 1;
        } else {
            live.push(v);
        }
    }

    // Points within rounding distance of the boundary are on it, and a
    // closed half-space contains them.
    let closed_count = |u: &[f64]| {
        let l = norm2(u);
        live.iter().filter(|v| dot(u, v) >= -1e-12 * l).count()
    };
    let mut best = usize::MAX;
    let mut arg: Vec<f64> = Vec::new();
    let consider = |u: Vec<f64>, best: &mut usize, arg: &mut Vec<f64>| {
        let c = closed_count(&u);
        if c < *best {
            *best = c;
            *arg = u;
        }
    };
    // Axis and sample directions: cheap upper bounds that also cover
    // configurations with no valid defining planes.
    for k in 0..d {
        for s in [1.0, -1.0] {
            let mut u = vec![0.0; d];
            u[k] = s;
            consider(u, &mut best, &mut arg);
        }
    }
    for v in &live {
        consider(v.clone(), &mut best, &mut arg);
        consider(v.iter().map(|x| -x).collect(), &mut best, &mut arg);
    }

    if d > 1 {
        let m = live.len();
        let mut a = vec![0.0; m];
        for_each_subset(m, d - 1, |q| {
            let rows: Vec<&[f64]> = q.iter().map(|&i| live[i].as_slice()).collect();
            let Some(u0) = cross(&rows, d) else {
                return true;
            };
            let (mut pos, mut neg, mut flat) = (0usize, 0usize, false);
            for (j, v) in live.iter().enumerate() {
                a[j] = dot(&u0, v);
                if q.contains(&j) {
                    continue;
                }
                if a[j] > 1e-9 {
                    pos += 1;
                } else if a[j] < -1e-9 {
                    neg += 1;
                } else {
                    flat = true;
                }
            }
            if !flat && pos.min(neg) >= best {
                return true;
            }
            // Tilt the plane so that the defining points fall on chosen
            // sides. Without other points on the plane, pushing them all
            // out of the smaller side is optimal; otherwise try every tilt.
            let tilts: Vec<(f64, u32)> = if flat {
                (0u32..(1 << (d - 1)))
                    .flat_map(|pat| [(1.0, pat), (-1.0, pat)])
                    .collect()
            } else {
                let sgn = if pos <= neg { -1.0 } else { 1.0 };
                vec![(sgn, 0)]
            };
            for (sgn, pattern) in tilts {
                let u0s: Vec<f64> = u0.iter().map(|x| -sgn * x).collect();
                let mut sys = Vec::with_capacity(d * d);
                let mut rhs = Vec::with_capacity(d);
                for (bit, &i) in q.iter().enumerate() {
                    sys.extend_from_slice(&live[i]);
                    rhs.push(if pattern >> bit & 1 == 1 { 1.0 } else { -1.0 });
                }
                sys.extend_from_slice(&u0s);
                rhs.push(0.0);
                let Some(w) = gauss(sys, rhs) else { continue };
                let mut eps: f64 = 1e-3;
                for (j, v) in live.iter().enumerate() {
                    let wv = dot(&w, v).abs();
                    if a[j].abs() > 1e-9 && wv > 0.0 {
                        eps = eps.min(0.5 * a[j].abs() / wv);
                    }
                }
                let u: Vec<f64> = u0s.iter().zip(&w).map(|(x, y)| x + eps * y).collect();
                consider(u, &mut best, &mut arg);
            }
            best > 0
        });
    }
    let mut u = arg;
    let l = norm2(&u);
    u.iter_mut().for_each(|x| *x /= l);
    Ok((always + best, Some(u)))
}

/// Inward facet `normal · x >= offset` of a brute-force hull, remembered by
/// the sample indices that span it.
#[derive(Debug, Clone)]
struct Facet {
    normal: Vec<f64>,
    offset: f64,
}

/// Facets of `conv(pts[idx])`, or `None` if that hull is not full
/// dimensional. Keys identify each facet by its spanning indices and side.
fn facets(pts: &[Vec<f64>], idx: &[usize], d: usize) -> Option<Vec<(Vec<usize>, bool, Facet)>> {
    let mut out = Vec::new();
    let mut full = false;
    for_each_subset(idx.len(), d, |sub| {
        let base = &pts[idx[sub[0]]];
        let diffs: Vec<Vec<f64>> = sub[1..]
            .iter()
            .map(|&s| pts[idx[s]].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let rows: Vec<&[f64]> = diffs.iter().map(Vec::as_slice).collect();
        let Some(normal) = cross(&rows, d) else {
            return true;
        };
        let offset = dot(&normal, base);
        let (mut above, mut below) = (false, false);
        for &i in idx {
            let s = dot(&normal, &pts[i]) - offset;
            above |= s > SIDE_TOL;
            below |= s < -SIDE_TOL;
        }
        full |= above || below;
        if above != below {
            let key: Vec<usize> = sub.iter().map(|&s| idx[s]).collect();
            let facet = if above {
                Facet { normal, offset }
            } else {
                Facet {
                    normal: normal.iter().map(|x| -x).collect(),
                    offset: -offset,
                }
            };
            out.push((key, above, facet));
        }
        true
    });
    if full {
        Some(out)
    } else {
        None
    }
}

/// Whether the interiors of `conv(T)` over all `(n − n_f)`-subsets `T`
/// share a point.
///
/// All subset facets are collected, the vertices of their common polytope
/// are enumerated by solving every `d × d` system of facet planes, and the
/// answer is yes iff the vertex centroid clears every facet by a positive
/// margin.
pub fn oracle_safe_point_exists(ps: &PointSet, n_f: usize) -> Result<bool, GeometryError> {
    let d = ps.dim();
    let n = ps.len();
    too_large(d, safe_point_limit(d), n)?;
    if n_f >= n {
        return Err(GeometryError::InvalidParameter("n_f must be below the set size"));
    }
    let (pts, _, _) = unit_frame(ps);
    let keep = n - n_f;
    if keep < d + 1 {
        return Ok(false);
    }
    let mut seen: BTreeSet<(Vec<usize>, bool)> = BTreeSet::new();
    let mut planes: Vec<Facet> = Vec::new();
    let mut degenerate = false;
    for_each_subset(n, keep, |t| {
        match facets(&pts, t, d) {
            None => degenerate = true,
            Some(fs) => {
                for (key, side, f) in fs {
                    if seen.insert((key, side)) {
                        planes.push(f);
                    }
                }
            }
        }
        !degenerate
    });
    if degenerate {
        return Ok(false);
    }
    let vertices = vertices_of(&planes, d);
    if vertices.is_empty() {
        return Ok(false);
    }
    let mut c = vec![0.0; d];
    for v in &vertices {
        c.iter_mut().zip(v).for_each(|(a, b)| *a += b);
    }
    c.iter_mut().for_each(|a| *a /= vertices.len() as f64);
    let margin = planes
        .iter()
        .map(|f| dot(&f.normal, &c) - f.offset)
        .fold(f64::INFINITY, f64::min);
    Ok(margin > INTERIOR_TOL)
}

/// Feasible vertices of `{x : normal · x >= offset}` for every plane.
fn vertices_of(planes: &[Facet], d: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for_each_subset(planes.len(), d, |sel| {
        let mut sys = Vec::with_capacity(d * d);
        let mut rhs = Vec::with_capacity(d);
        for &i in sel {
            sys.extend_from_slice(&planes[i].normal);
            rhs.push(planes[i].offset);
        }
        if let Some(x) = gauss(sys, rhs) {
            if planes
                .iter()
                .all(|f| dot(&f.normal, &x) - f.offset >= -SIDE_TOL)
            {
                out.push(x);
            }
        }
        true
    });
    out
}

/// Convex hull described by brute-force facets, for repeated membership
/// queries. Lower-dimensional sets are handled in their own affine hull.
#[derive(Debug, Clone)]
pub struct OracleHull {
    center: Vec<f64>,
    scale: f64,
    origin: Vec<f64>,
    /// Orthonormal basis of the affine hull's direction space.
    basis: Vec<Vec<f64>>,
    /// Facets in basis coordinates.
    facets: Vec<Facet>,
    /// Extent of a 1-dimensional hull along its basis vector.
    segment: Option<(f64, f64)>,
}

impl OracleHull {
    pub fn new(ps: &PointSet) -> Result<Self, GeometryError> {
        if ps.is_empty() {
            return Err(GeometryError::Empty);
        }
        let (pts, center, scale) = unit_frame(ps);
        let d = ps.dim();
        let origin = pts[0].clone();
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for p in &pts[1..] {
            let mut w: Vec<f64> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&w, b);
                    w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let l = norm2(&w);
            if l > 1e-9 {
                w.iter_mut().for_each(|x| *x /= l);
                basis.push(w);
                if basis.len() == d {
                    break;
                }
            }
        }
        let local: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| {
                let diff: Vec<f64> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
                basis.iter().map(|b| dot(b, &diff)).collect()
            })
            .collect();
        let k = basis.len();
        let mut facets_out = Vec::new();
        let mut segment = None;
        if k == 1 {
            let lo = local.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
            let hi = local.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
            segment = Some((lo, hi));
        } else if k >= 2 {
            let idx: Vec<usize> = (0..local.len()).collect();
            let fs = facets(&local, &idx, k)
                .ok_or(GeometryError::Numerical("oracle hull lost a dimension"))?;
            facets_out = fs.into_iter().map(|(_, _, f)| f).collect();
        }
        Ok(OracleHull {
            center,
            scale,
            origin,
            basis,
            facets: facets_out,
            segment,
        })
    }

    /// Signed distance-like margin of `p` (unit-diameter frame): positive
    /// inside, negative outside. Off the affine hull the margin is minus the
    /// distance to it.
    pub fn margin(&self, p: &[f64]) -> f64 {
        let q: Vec<f64> = p
            .iter()
            .zip(&self.center)
            .map(|(x, c)| (x - c) / self.scale)
            .collect();
        let diff: Vec<f64> = q.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        let local: Vec<f64> = self.basis.iter().map(|b| dot(b, &diff)).collect();
        let mut resid = diff.clone();
        for (b, c) in self.basis.iter().zip(&local) {
            resid.iter_mut().zip(b).for_each(|(r, x)| *r -= c * x);
        }
        let off = norm2(&resid);
        let inner = match (self.basis.len(), self.segment) {
            (0, _) => 0.0,
            (_, Some((lo, hi))) => (local[0] - lo).min(hi - local[0]),
            _ => self
                .facets
                .iter()
                .map(|f| dot(&f.normal, &local) - f.offset)
                .fold(f64::INFINITY, f64::min),
        };
        if off > SIDE_TOL {
            -off
        } else {
            inner
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.margin(p) >= -SIDE_TOL
    }
}

/// One-shot closed hull membership with the brute-force hull.
pub fn oracle_in_hull(p: &[f64], ps: &PointSet) -> Result<bool, GeometryError> {
    ps.check_point(p)?;
    Ok(OracleHull::new(ps)?.contains(p))
}
