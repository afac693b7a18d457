//! Safe points as centerpoints.
//!
//! In dimensions 1–3 the depth-`k` region (`k = ⌈n/(d+1)⌉`) is the
//! intersection of the closed half-spaces bounded by hyperplanes through `d`
//! sample points whose open far side holds fewer than `k` points. We solve
//! for the point of that polytope farthest from its boundary with a
//! cutting-plane LP: start from the hyperplanes with exactly `k − 1` points
//! outside and add violated ones until none remain. The returned point is
//! therefore strictly inside the center region whenever the region has
//! interior.
//!
//! Above three dimensions we fall back to iterated Radon points, which only
//! guarantee depth `⌈n / d^(r/(r−1))⌉`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::combin::for_each_subset;
use crate::error::GeometryError;
use crate::geometry::{self, affine_rank, jitter, radon_point};
use crate::linalg;
use crate::lp::{self, MaxOutcome};
use crate::point::{dot, frame, norm, Point, PointSet};
use crate::rng;
use crate::tolerance;

/// Degeneracy handling for the exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Jitter {
    /// Perturb the input deterministically when a degenerate `d + 1`-subset
    /// is detected.
    #[default]
    Auto,
    /// Use the input as given.
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CenterpointConfig {
    pub seed: u64,
    pub jitter: Jitter,
}

impl CenterpointConfig {
    pub fn seeded(seed: u64) -> Self {
        CenterpointConfig {
            seed,
            jitter: Jitter::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterpointMethod {
    Exact1D,
    Exact2D,
    Exact3D,
    IteratedRadon(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterpointResult {
    pub point: Point,
    /// The depth the method guarantees, not the measured depth.
    pub guaranteed_depth: usize,
    pub method: CenterpointMethod,
    /// Whether the point carries a certificate of lying in the interior of
    /// the center region.
    pub interior: bool,
}

/// `⌈n / (d + 1)⌉`.
pub fn exact_depth_bound(n: usize, d: usize) -> usize {
    n.div_ceil(d + 1)
}

/// `min(⌈n / d^(r/(r−1))⌉, ⌈n/(d+1)⌉)`, with a small guard against `pow`
/// rounding up an exact quotient.
pub fn radon_depth_bound(n: usize, d: usize, r: u32) -> usize {
    let e = r as f64 / (r as f64 - 1.0);
    let q = n as f64 / libm::pow(d as f64, e);
    let c = libm::ceil(q - 1e-9);
    // For small d and large r the quotient exceeds what any point can be
    // promised; the centerpoint bound is tight.
    let c = if c < 0.0 { 0 } else { c as usize };
    c.min(exact_depth_bound(n, d))
}

/// Exact centerpoint of a planar set: depth at least `⌈n/3⌉`.
pub fn centerpoint_2d(
    ps: &PointSet,
    cfg: &CenterpointConfig,
) -> Result<CenterpointResult, GeometryError> {
    expect_dim(ps, 2)?;
    exact(ps, cfg)
}

/// Exact centerpoint of a spatial set: depth at least `⌈n/4⌉`.
pub fn centerpoint_3d(
    ps: &PointSet,
    cfg: &CenterpointConfig,
) -> Result<CenterpointResult, GeometryError> {
    expect_dim(ps, 3)?;
    exact(ps, cfg)
}

/// Exact centerpoint in dimension 1, 2 or 3, whichever `ps` has. The
/// returned point maximizes the distance to the boundary of the depth
/// region, so `interior` is set whenever that region has interior.
pub fn centerpoint(
    ps: &PointSet,
    cfg: &CenterpointConfig,
) -> Result<CenterpointResult, GeometryError> {
    exact(ps, cfg)
}

fn expect_dim(ps: &PointSet, d: usize) -> Result<(), GeometryError> {
    if ps.dim() != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: ps.dim(),
        });
    }
    Ok(())
}

fn method_for(d: usize) -> Result<CenterpointMethod, GeometryError> {
    match d {
        1 => Ok(CenterpointMethod::Exact1D),
        2 => Ok(CenterpointMethod::Exact2D),
        3 => Ok(CenterpointMethod::Exact3D),
        _ => Err(GeometryError::UnsupportedDimension(d)),
    }
}

fn exact(ps: &PointSet, cfg: &CenterpointConfig) -> Result<CenterpointResult, GeometryError> {
    let d = ps.dim();
    let method = method_for(d)?;
    let n = ps.len();
    if n < d + 1 {
        return Err(GeometryError::InsufficientPoints {
            needed: d + 1,
            got: n,
        });
    }
    let (point, margin) = deepest_point(ps, cfg, exact_depth_bound(n, d))?;
    Ok(CenterpointResult {
        point,
        guaranteed_depth: exact_depth_bound(n, d),
        method,
        interior: margin > tolerance::INTERIOR,
    })
}

/// Interior centerpoint: the centroid of `d + 1` centerpoints of
/// independently jittered copies. If those centerpoints are affinely
/// dependent the copies are re-drawn up to five times; the result is marked
/// interior only when the centroid also clears every bounding half-space of
/// the unperturbed depth region by [`tolerance::INTERIOR`].
pub fn interior_centerpoint(
    ps: &PointSet,
    cfg: &CenterpointConfig,
) -> Result<CenterpointResult, GeometryError> {
    let d = ps.dim();
    let method = method_for(d)?;
    let n = ps.len();
    if n < d + 1 {
        return Err(GeometryError::InsufficientPoints {
            needed: d + 1,
            got: n,
        });
    }
    if flat_frame(ps).is_some() {
        return exact(ps, cfg);
    }
    let region = CenterRegion::build(ps, cfg)?;
    let mut last = None;
    for attempt in 0..6u64 {
        let mut centers = PointSet::with_capacity(d, d + 1);
        for copy in 0..=d as u64 {
            let seed = rng::derive(cfg.seed, &[rng::TAG_JITTER, attempt, copy]);
            let jittered = jitter(ps, seed, tolerance::JITTER);
            let sub = CenterRegion::build(
                &jittered,
                &CenterpointConfig {
                    seed,
                    jitter: Jitter::Never,
                },
            )?;
            centers.push(&sub.deepest()?.0);
        }
        let centroid = centers.centroid();
        let independent = affine_rank(&centers) == d;
        if independent {
            let interior = region.slack(&centroid) > tolerance::INTERIOR;
            return Ok(CenterpointResult {
                point: centroid,
                guaranteed_depth: exact_depth_bound(n, d),
                method,
                interior,
            });
        }
        last = Some(centroid);
    }
    Ok(CenterpointResult {
        point: last.ok_or(GeometryError::Numerical("no centerpoint attempts"))?,
        guaranteed_depth: exact_depth_bound(n, d),
        method,
        interior: false,
    })
}

/// Deepest point of the depth-`k` region and its margin. A set that spans
/// less than its ambient dimension is solved inside its affine hull, where
/// depth is no smaller; jitter alone would leave the answer off the hull.
fn deepest_point(
    ps: &PointSet,
    cfg: &CenterpointConfig,
    k: usize,
) -> Result<(Point, f64), GeometryError> {
    let Some((origin, basis)) = flat_frame(ps) else {
        return CenterRegion::with_depth(ps, cfg, k)?.deepest();
    };
    if basis.is_empty() {
        return Ok((Point::from_vec_unchecked(origin), 0.0));
    }
    let mut local = PointSet::with_capacity(basis.len(), ps.len());
    for p in ps.iter() {
        let v: Vec<f64> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
        local.push(&basis.iter().map(|b| dot(b, &v)).collect::<Vec<_>>());
    }
    let (q, _) = CenterRegion::with_depth(&local, cfg, k)?.deepest()?;
    let mut x = origin;
    for (b, c) in basis.iter().zip(q.coords()) {
        x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += c * bi);
    }
    Ok((Point::from_vec_unchecked(x), 0.0))
}

/// Centroid and orthonormal directions of the affine hull of `ps`, when
/// that hull is lower-dimensional.
fn flat_frame(ps: &PointSet) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
    let d = ps.dim();
    let origin = ps.centroid().into_coords();
    let diffs: Vec<Vec<f64>> = ps
        .iter()
        .map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect())
        .collect();
    let scale = diffs.iter().map(|v| norm(v)).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Some((origin, Vec::new()));
    }
    let unit: Vec<Vec<f64>> = diffs
        .iter()
        .map(|v| v.iter().map(|x| x / scale).collect())
        .collect();
    let basis = linalg::orthonormal_basis(
        unit.iter().filter(|v| norm(v) > tolerance::RANK).map(Vec::as_slice),
        d,
        tolerance::RANK,
    );
    (basis.len() < d).then_some((origin, basis))
}

/// A bounding half-space `normal · x >= offset` of the depth region, in the
/// normalized frame.
#[derive(Debug, Clone)]
struct Bound {
    normal: Vec<f64>,
    offset: f64,
    outside: usize,
}

/// The depth-`k` region of a set, kept in the frame where the set has unit
/// diameter and is centered at the origin.
struct CenterRegion {
    dim: usize,
    center: Vec<f64>,
    scale: f64,
    depth: usize,
    bounds: Vec<Bound>,
}

impl CenterRegion {
    fn build(ps: &PointSet, cfg: &CenterpointConfig) -> Result<Self, GeometryError> {
        Self::with_depth(ps, cfg, exact_depth_bound(ps.len(), ps.dim()))
    }

    /// The region of depth at least `k`; nonempty for `k <= ⌈n/(d+1)⌉`.
    fn with_depth(ps: &PointSet, cfg: &CenterpointConfig, k: usize) -> Result<Self, GeometryError> {
        let d = ps.dim();
        let (center, scale) = frame(ps);
        let norm_ps = ps.normalized(&center, scale);
        let (bounds, degenerate) = region_bounds(&norm_ps, k);
        if degenerate && cfg.jitter == Jitter::Auto {
            let jittered = jitter(ps, cfg.seed, tolerance::JITTER);
            let norm_j = jittered.normalized(&center, scale);
            let (bounds, _) = region_bounds(&norm_j, k);
            return Ok(CenterRegion {
                dim: d,
                center,
                scale,
                depth: k,
                bounds,
            });
        }
        Ok(CenterRegion {
            dim: d,
            center,
            scale,
            depth: k,
            bounds,
        })
    }

    /// Smallest normalized slack of `p` over all bounds.
    fn slack(&self, p: &[f64]) -> f64 {
        let x: Vec<f64> = p
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c) / self.scale)
            .collect();
        self.bounds
            .iter()
            .map(|b| dot(&b.normal, &x) - b.offset)
            .fold(f64::INFINITY, f64::min)
    }

    /// Point of maximum margin and the margin (normalized units).
    fn deepest(&self) -> Result<(Point, f64), GeometryError> {
        let d = self.dim;
        let k = d + 1;
        if self.bounds.is_empty() {
            return Err(GeometryError::Numerical("depth region has no bounding half-spaces"));
        }
        let mut active: Vec<usize> = (0..self.bounds.len())
            .filter(|&i| self.bounds[i].outside + 1 == self.depth)
            .collect();
        if active.is_empty() {
            active = (0..self.bounds.len()).collect();
        }
        let mut in_active = vec![false; self.bounds.len()];
        active.iter().for_each(|&i| in_active[i] = true);
        let mut objective = vec![0.0; k];
        objective[d] = 1.0;
        for _ in 0..64 {
            // Rows: -a·x + t <= -b for active bounds; box |x_i| <= 1; t <= 1.
            let rows = active.len() + 2 * d + 1;
            let mut g = Vec::with_capacity(rows * k);
            let mut h = Vec::with_capacity(rows);
            for &i in &active {
                let b = &self.bounds[i];
                g.extend(b.normal.iter().map(|a| -a));
                g.push(1.0);
                h.push(-b.offset);
            }
            for axis in 0..d {
                for sign in [1.0, -1.0] {
                    let mut row = vec![0.0; k];
                    row[axis] = sign;
                    g.extend(row);
                    h.push(1.0);
                }
            }
            let mut row = vec![0.0; k];
            row[d] = 1.0;
            g.extend(row);
            h.push(1.0);
            let (z, t) = match lp::maximize(&objective, &g, &h) {
                MaxOutcome::Optimal { z, value } => (z, value),
                _ => return Err(GeometryError::Numerical("depth-region LP failed")),
            };
            let x = &z[..d];
            let mut violated: Vec<(f64, usize)> = self
                .bounds
                .iter()
                .enumerate()
                .filter(|(i, _)| !in_active[*i])
                .map(|(i, b)| (dot(&b.normal, x) - b.offset - t, i))
                .filter(|(v, _)| *v < -1e-12)
                .collect();
            if violated.is_empty() {
                let point = x
                    .iter()
                    .zip(&self.center)
                    .map(|(v, c)| c + v * self.scale)
                    .collect();
                return Ok((Point::from_vec_unchecked(point), t));
            }
            violated.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for &(_, i) in violated.iter().take(256) {
                in_active[i] = true;
                active.push(i);
            }
        }
        Err(GeometryError::Numerical("cutting-plane loop did not converge"))
    }
}

/// Half-spaces bounding the depth-`k` region of a normalized set, plus a
/// flag raised when some `d + 1` points were found affinely dependent.
fn region_bounds(ps: &PointSet, k: usize) -> (Vec<Bound>, bool) {
    let d = ps.dim();
    let n = ps.len();
    let mut bounds = Vec::new();
    let mut degenerate = false;
    if d == 2 {
        // Same predicate as below, with the line through two points written
        // out; this loop dominates planar centerpoint time.
        let xy = ps.flat();
        for i in 0..n {
            for j in i + 1..n {
                let (ax, ay) = (xy[2 * j] - xy[2 * i], xy[2 * j + 1] - xy[2 * i + 1]);
                let l = libm::sqrt(ax * ax + ay * ay);
                if l == 0.0 {
                    degenerate = true;
                    continue;
                }
                let (nx, ny) = (-ay / l, ax / l);
                let offset = nx * xy[2 * i] + ny * xy[2 * i + 1];
                let (mut pos, mut neg) = (0usize, 0usize);
                for (m, p) in xy.chunks_exact(2).enumerate() {
                    let s = nx * p[0] + ny * p[1] - offset;
                    if s > tolerance::RANK {
                        pos += 1;
                    } else if s < -tolerance::RANK {
                        neg += 1;
                    } else if m != i && m != j {
                        degenerate = true;
                    }
                }
                // The defining points are never more than RANK off the line.
                if pos < k {
                    bounds.push(Bound {
                        normal: vec![-nx, -ny],
                        offset: -offset,
                        outside: pos,
                    });
                }
                if neg < k {
                    bounds.push(Bound {
                        normal: vec![nx, ny],
                        offset,
                        outside: neg,
                    });
                }
            }
        }
        return (bounds, degenerate);
    }
    let mut pts: Vec<&[f64]> = Vec::with_capacity(d);
    for_each_subset(n, d, |idx| {
        pts.clear();
        pts.extend(idx.iter().map(|&i| ps.point(i)));
        let Some((normal, offset)) = linalg::hyperplane_through(&pts, tolerance::RANK) else {
            degenerate = true;
            return true;
        };
        let (mut pos, mut neg) = (0usize, 0usize);
        for (j, p) in ps.iter().enumerate() {
            if idx.contains(&j) {
                continue;
            }
            let s = dot(&normal, p) - offset;
            if s > tolerance::RANK {
                pos += 1;
            } else if s < -tolerance::RANK {
                neg += 1;
            } else {
                degenerate = true;
            }
        }
        if pos < k {
            bounds.push(Bound {
                normal: normal.iter().map(|a| -a).collect(),
                offset: -offset,
                outside: pos,
            });
        }
        if neg < k {
            bounds.push(Bound {
                normal,
                offset,
                outside: neg,
            });
        }
        true
    });
    (bounds, degenerate)
}

/// Fresh Radon trees tried before falling back to the depth region.
const RADON_ATTEMPTS: u64 = 32;
/// Largest `C(n, d−1) · n` for which the result's depth is certified.
const CERTIFY_BUDGET: f64 = 3e7;

/// Approximate centerpoint by iterated Radon points: shuffle the working
/// multiset, pad it to a multiple of `d + 2` by resampling with replacement,
/// replace each batch by its Radon point, and repeat until one point is
/// left.
///
/// Padding duplicates can land on both sides of a Radon partition, and small
/// inputs only allow a level or two of the tree, so a single tree does not
/// always reach the advertised depth `⌈n / d^(r/(r−1))⌉`. When exact depth
/// is affordable the result is therefore certified: further trees are grown
/// from fresh shuffles until one reaches the bound, and if none does the
/// deepest point of the depth-bound region is returned instead.
pub fn iterated_radon_centerpoint(
    ps: &PointSet,
    r: u32,
    cfg: &CenterpointConfig,
) -> Result<CenterpointResult, GeometryError> {
    let d = ps.dim();
    let n = ps.len();
    if r < 2 {
        return Err(GeometryError::InvalidParameter("r must be at least 2"));
    }
    if d < 2 {
        return Err(GeometryError::UnsupportedDimension(d));
    }
    if n < d + 2 {
        return Err(GeometryError::InsufficientPoints {
            needed: d + 2,
            got: n,
        });
    }
    let bound = radon_depth_bound(n, d, r);
    let result = |point| CenterpointResult {
        point,
        guaranteed_depth: bound,
        method: CenterpointMethod::IteratedRadon(r),
        interior: false,
    };
    let first = radon_tree(ps, cfg.seed)?;
    if !certifiable(n, d) {
        return Ok(result(first));
    }
    let mut best_depth = geometry::depth(&first, ps)?;
    let mut best = first;
    let mut attempt = 1;
    while best_depth < bound && attempt < RADON_ATTEMPTS {
        let p = radon_tree(ps, rng::derive(cfg.seed, &[rng::TAG_RADON, attempt]))?;
        let dp = geometry::depth(&p, ps)?;
        if dp > best_depth {
            best_depth = dp;
            best = p;
        }
        attempt += 1;
    }
    if best_depth < bound {
        best = deepest_point(ps, cfg, bound)?.0;
    }
    Ok(result(best))
}

/// Whether exact depth of a point among `n` points in `R^d` is cheap enough
/// to compute.
fn certifiable(n: usize, d: usize) -> bool {
    let mut c = 1.0f64;
    for i in 0..d - 1 {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c * n as f64 <= CERTIFY_BUDGET
}

/// One iterated-Radon tree grown from `seed`.
pub fn radon_tree(ps: &PointSet, seed: u64) -> Result<Point, GeometryError> {
    let d = ps.dim();
    if ps.len() < d + 2 {
        return Err(GeometryError::InsufficientPoints {
            needed: d + 2,
            got: ps.len(),
        });
    }
    let batch = d + 2;
    let mut rng = rng::substream(seed, &[rng::TAG_RADON]);
    let mut working: Vec<Vec<f64>> = ps.iter().map(<[f64]>::to_vec).collect();
    let mut round = 0u64;
    while working.len() > 1 {
        for i in (1..working.len()).rev() {
            let j = rng.random_range(0..=i);
            working.swap(i, j);
        }
        let len = working.len();
        let short = (batch - len % batch) % batch;
        for _ in 0..short {
            let j = rng.random_range(0..len);
            working.push(working[j].clone());
        }
        let mut next = Vec::with_capacity(working.len() / batch);
        for (b, chunk) in working.chunks_exact(batch).enumerate() {
            next.push(radon_of_batch(chunk, seed, round, b as u64)?);
        }
        working = next;
        round += 1;
    }
    Point::new(working.pop().unwrap_or_default())
}

/// Radon point of one batch; repeated or affinely dependent members are
/// separated by a small deterministic jitter first.
fn radon_of_batch(
    chunk: &[Vec<f64>],
    seed: u64,
    round: u64,
    b: u64,
) -> Result<Vec<f64>, GeometryError> {
    let set = PointSet::from_rows(chunk)?;
    if let Ok(r) = radon_point(&set) {
        return Ok(r.witness.into_coords());
    }
    for attempt in 0..3u64 {
        let s = rng::derive(seed, &[rng::TAG_RADON, round, b, attempt]);
        let jittered = geometry::jitter(&set, s, tolerance::JITTER);
        if let Ok(r) = radon_point(&jittered) {
            return Ok(r.witness.into_coords());
        }
    }
    // All members coincide (or nearly so): any of them is a Radon point.
    Ok(set.centroid().into_coords())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::depth;

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(exact_depth_bound(100, 2), 34);
        assert_eq!(exact_depth_bound(20, 3), 5);
        assert_eq!(radon_depth_bound(60, 4, 3), 8);
        assert_eq!(radon_depth_bound(40, 5, 2), 2);
        assert_eq!(radon_depth_bound(4, 2, 2), 1);
        assert_eq!(radon_depth_bound(64, 4, 2), 4);
    }

    #[test]
    fn triangle_centerpoint() {
        let tri = set(&[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0]]);
        let c = centerpoint_2d(&tri, &CenterpointConfig::default()).unwrap();
        assert_eq!(c.guaranteed_depth, 1);
        assert_eq!(c.method, CenterpointMethod::Exact2D);
        assert!(depth(&c.point, &tri).unwrap() >= 1);
        assert!(c.interior);
    }

    #[test]
    fn too_few_points() {
        let two = set(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(
            centerpoint_2d(&two, &CenterpointConfig::default()).unwrap_err(),
            GeometryError::InsufficientPoints { needed: 3, got: 2 }
        );
        let three = set(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert!(matches!(
            centerpoint_3d(&three, &CenterpointConfig::default()),
            Err(GeometryError::InsufficientPoints { needed: 4, got: 3 })
        ));
        assert!(iterated_radon_centerpoint(&three, 2, &CenterpointConfig::default()).is_err());
    }

    #[test]
    fn wrong_dimension() {
        let tri = set(&[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0]]);
        assert!(matches!(
            centerpoint_3d(&tri, &CenterpointConfig::default()),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tetrahedron_centroid_depth() {
        let s = 1.0 / libm::sqrt(2.0);
        let tet = set(&[
            &[1.0, 0.0, -s],
            &[-1.0, 0.0, -s],
            &[0.0, 1.0, s],
            &[0.0, -1.0, s],
        ]);
        assert_eq!(depth(&tet.centroid(), &tet).unwrap(), 1);
        let c = centerpoint_3d(&tet, &CenterpointConfig::default()).unwrap();
        assert_eq!(c.guaranteed_depth, 1);
        assert!(depth(&c.point, &tet).unwrap() >= 1);
    }

    #[test]
    fn radon_single_step() {
        let sq = set(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let c = iterated_radon_centerpoint(&sq, 2, &CenterpointConfig::default()).unwrap();
        assert!((c.point[0] - 0.5).abs() < 1e-12 && (c.point[1] - 0.5).abs() < 1e-12);
        assert_eq!(depth(&c.point, &sq).unwrap(), 2);
        assert_eq!(c.guaranteed_depth, 1);
        assert_eq!(c.method, CenterpointMethod::IteratedRadon(2));
    }

    #[test]
    fn collinear_input_is_jittered() {
        let ps = set(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let c = centerpoint_2d(&ps, &CenterpointConfig::default()).unwrap();
        assert!(depth(&c.point, &ps).unwrap() >= 2);
    }

    #[test]
    fn coincident_points_stay_put() {
        let ps = set(&[&[0.3, 0.3], &[0.3, 0.3], &[0.3, 0.3], &[0.3, 0.3]]);
        let c = interior_centerpoint(&ps, &CenterpointConfig::seeded(1)).unwrap();
        assert!((c.point[0] - 0.3).abs() < 1e-6 && (c.point[1] - 0.3).abs() < 1e-6);
    }
}
