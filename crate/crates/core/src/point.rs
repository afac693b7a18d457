use alloc::vec::Vec;
use core::ops::{Deref, Index};

use crate::error::GeometryError;

/// A point (or state vector) in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::Empty);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(Point(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Point(alloc::vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dist(&self, other: &[f64]) -> f64 {
        libm::sqrt(dist_sq(&self.0, other))
    }

    /// `alpha * self + (1 - alpha) * other`.
    pub fn lerp_toward(&self, other: &Point, alpha: f64) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(s, o)| alpha * o + (1.0 - alpha) * s)
                .collect(),
        )
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        Point(coords)
    }
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl From<&[f64]> for Point {
    fn from(c: &[f64]) -> Self {
        Point(c.to_vec())
    }
}

pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// An ordered multiset of points sharing one dimension, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a set from rows, rejecting empty input, ragged rows and
    /// non-finite coordinates.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, GeometryError> {
        let first = rows.first().ok_or(GeometryError::Empty)?;
        let dim = first.as_ref().len();
        if dim == 0 {
            return Err(GeometryError::Empty);
        }
        let mut coords = Vec::with_capacity(dim * rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if r.iter().any(|c| !c.is_finite()) {
                return Err(GeometryError::NonFinite);
            }
            coords.extend_from_slice(r);
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_points(points: &[Point]) -> Result<Self, GeometryError> {
        Self::from_rows(points)
    }

    /// Wraps a flat row-major buffer. `coords.len()` must be a nonzero
    /// multiple of `dim`.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self, GeometryError> {
        if dim == 0 || coords.is_empty() {
            return Err(GeometryError::Empty);
        }
        if coords.len() % dim != 0 {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(PointSet { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> core::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_points(&self) -> Vec<Point> {
        self.iter().map(Point::from).collect()
    }

    /// The sub-multiset at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet {
            dim: self.dim,
            coords,
        }
    }

    pub fn check_point(&self, p: &[f64]) -> Result<(), GeometryError> {
        if p.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: p.len(),
            });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(())
    }

    /// Axis-aligned bounding box as `(min, max)` corner vectors.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.point(0).to_vec();
        let mut hi = lo.clone();
        for p in self.iter() {
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    pub fn diameter_bound(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        libm::sqrt(dist_sq(&lo, &hi))
    }

    pub fn centroid(&self) -> Point {
        let mut c = alloc::vec![0.0; self.dim];
        for p in self.iter() {
            for k in 0..self.dim {
                c[k] += p[k];
            }
        }
        let n = self.len() as f64;
        c.iter_mut().for_each(|v| *v /= n);
        Point(c)
    }

    /// Applies `x -> (x - shift) / scale` to every point.
    pub(crate) fn normalized(&self, shift: &[f64], scale: f64) -> PointSet {
        let coords = self
            .coords
            .chunks_exact(self.dim)
            .flat_map(|p| p.iter().zip(shift).map(move |(x, s)| (x - s) / scale))
            .collect();
        PointSet {
            dim: self.dim,
            coords,
        }
    }

    pub(crate) fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub(crate) fn with_capacity(dim: usize, n: usize) -> PointSet {
        PointSet {
            dim,
            coords: Vec::with_capacity(dim * n),
        }
    }
}

impl Index<usize> for PointSet {
    type Output = [f64];
    fn index(&self, i: usize) -> &[f64] {
        self.point(i)
    }
}

/// Normalization frame: bounding-box center and diameter (1 for a single
/// repeated point).
pub(crate) fn frame(ps: &PointSet) -> (Vec<f64>, f64) {
    let (lo, hi) = ps.bounding_box();
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let diam = libm::sqrt(dist_sq(&lo, &hi));
    (center, if diam > 0.0 { diam } else { 1.0 })
}

/// Closed half-space `{x : normal · x >= offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    normal: Point,
    offset: f64,
}

impl HalfSpace {
    pub fn new(normal: Point, offset: f64) -> Result<Self, GeometryError> {
        if norm(&normal) == 0.0 {
            return Err(GeometryError::Degenerate("half-space normal is zero"));
        }
        if !offset.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        dot(&self.normal, p) >= self.offset
    }

    /// Number of points of `ps` in the closed half-space.
    pub fn count(&self, ps: &PointSet) -> usize {
        ps.iter().filter(|p| self.contains(p)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ragged_rows_rejected() {
        let err = PointSet::from_rows(&[vec![0.0, 1.0], vec![2.0]]).unwrap_err();
        assert_eq!(
            err,
            GeometryError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(
            PointSet::from_rows(&[vec![f64::NAN]]).unwrap_err(),
            GeometryError::NonFinite
        );
        assert!(Point::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn half_space_counts_closed_side() {
        let ps = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap();
        let h = HalfSpace::new(Point::new(vec![1.0, 0.0]).unwrap(), 1.0).unwrap();
        assert_eq!(h.count(&ps), 2);
        assert!(HalfSpace::new(Point::origin(2), 0.0).is_err());
    }
}
