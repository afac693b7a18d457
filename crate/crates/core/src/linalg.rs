//! Small dense linear algebra on row-major `f64` buffers.
//!
//! Everything here is sized for `d <= 8` style problems: hyperplanes through
//! `d` points, affine dependences of `d + 2` points, projections onto flats.

use alloc::vec;
use alloc::vec::Vec;

use crate::point::{dot, norm};

fn max_abs(m: &[f64]) -> f64 {
    m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Numerical rank with complete pivoting; entries below `tol * max|m|`
/// count as zero.
pub fn rank(m: &[f64], rows: usize, cols: usize, tol: f64) -> usize {
    debug_assert_eq!(m.len(), rows * cols);
    let mut a = m.to_vec();
    let thresh = tol * max_abs(&a);
    if thresh == 0.0 {
        return 0;
    }
    let mut r = 0;
    let mut col_perm: Vec<usize> = (0..cols).collect();
    while r < rows.min(cols) {
        // Largest remaining entry.
        let (mut pi, mut pj, mut best) = (r, r, 0.0);
        for i in r..rows {
            for j in r..cols {
                let v = a[i * cols + col_perm[j]].abs();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best <= thresh {
            break;
        }
        if pi != r {
            for j in 0..cols {
                a.swap(pi * cols + j, r * cols + j);
            }
        }
        col_perm.swap(pj, r);
        let pc = col_perm[r];
        let pivot = a[r * cols + pc];
        for i in r + 1..rows {
            let f = a[i * cols + pc] / pivot;
            if f != 0.0 {
                for j in r..cols {
                    let c = col_perm[j];
                    a[i * cols + c] -= f * a[r * cols + c];
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the null space `{x : m x = 0}` from reduced row echelon form.
/// Vectors are not orthonormalized.
pub fn kernel(m: &[f64], rows: usize, cols: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut a = m.to_vec();
    let thresh = tol * max_abs(&a);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (mut pi, mut best) = (r, 0.0);
        for i in r..rows {
            let v = a[i * cols + c].abs();
            if v > best {
                best = v;
                pi = i;
            }
        }
        if best <= thresh || best == 0.0 {
            continue;
        }
        if pi != r {
            for j in 0..cols {
                a.swap(pi * cols + j, r * cols + j);
            }
        }
        let p = a[r * cols + c];
        for j in 0..cols {
            a[r * cols + j] /= p;
        }
        for i in 0..rows {
            if i != r {
                let f = a[i * cols + c];
                if f != 0.0 {
                    for j in 0..cols {
                        a[i * cols + j] -= f * a[r * cols + j];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row * cols + free];
        }
        basis.push(v);
    }
    basis
}

/// Solves the square system `m x = b` with partial pivoting. Returns `None`
/// when a pivot falls below `tol * max|m|`.
pub fn solve(m: &[f64], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert_eq!(m.len(), n * n);
    let mut a = m.to_vec();
    let mut x = b.to_vec();
    let thresh = tol * max_abs(&a);
    for c in 0..n {
        let (mut pi, mut best) = (c, 0.0);
        for i in c..n {
            let v = a[i * n + c].abs();
            if v > best {
                best = v;
                pi = i;
            }
        }
        if best <= thresh || best == 0.0 {
            return None;
        }
        if pi != c {
            for j in 0..n {
                a.swap(pi * n + j, c * n + j);
            }
            x.swap(pi, c);
        }
        let p = a[c * n + c];
        for i in c + 1..n {
            let f = a[i * n + c] / p;
            if f != 0.0 {
                for j in c..n {
                    a[i * n + j] -= f * a[c * n + j];
                }
                x[i] -= f * x[c];
            }
        }
    }
    for c in (0..n).rev() {
        let mut s = x[c];
        for j in c + 1..n {
            s -= a[c * n + j] * x[j];
        }
        x[c] = s / a[c * n + c];
    }
    Some(x)
}

/// Orthonormal basis of the span of `vectors` (modified Gram–Schmidt with
/// one reorthogonalization pass). A vector contributes a new direction only
/// if its residual exceeds `tol` times its own norm.
pub fn orthonormal_basis<'a>(
    vectors: impl IntoIterator<Item = &'a [f64]>,
    dim: usize,
    tol: f64,
) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        if basis.len() == dim {
            break;
        }
        let n0 = norm(v);
        if n0 == 0.0 {
            continue;
        }
        let mut w: Vec<f64> = v.iter().map(|x| x / n0).collect();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
            }
        }
        let nw = norm(&w);
        if nw > tol {
            w.iter_mut().for_each(|x| *x /= nw);
            basis.push(w);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of the unit vector `u`.
pub fn complement_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let dim = u.len();
    let mut seed: Vec<Vec<f64>> = vec![u.to_vec()];
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        seed.push(e);
    }
    let mut basis = orthonormal_basis(seed.iter().map(|v| v.as_slice()), dim, 1e-6);
    basis.remove(0);
    basis
}

/// Unit normal `a` and offset `b` of the hyperplane `{x : a·x = b}` through
/// `d` points of `R^d`, or `None` when they are affinely dependent.
pub fn hyperplane_through(points: &[&[f64]], tol: f64) -> Option<(Vec<f64>, f64)> {
    let d = points.first()?.len();
    if points.len() != d {
        return None;
    }
    let normal = if d == 1 {
        vec![1.0]
    } else {
        let base = points[0];
        let mut m = Vec::with_capacity((d - 1) * d);
        for q in &points[1..] {
            m.extend(q.iter().zip(base).map(|(a, b)| a - b));
        }
        let ker = kernel(&m, d - 1, d, tol);
        if ker.len() != 1 {
            return None;
        }
        let mut n = ker.into_iter().next()?;
        let l = norm(&n);
        n.iter_mut().for_each(|x| *x /= l);
        n
    };
    let offset = dot(&normal, points[0]);
    Some((normal, offset))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_detects_dependence() {
        let m = [1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0];
        assert_eq!(rank(&m, 3, 3, 1e-9), 2);
        assert_eq!(rank(&[0.0; 4], 2, 2, 1e-9), 0);
    }

    #[test]
    fn kernel_of_radon_system() {
        // Square corners with the affine row appended.
        let m = [
            0.0, 1.0, 0.0, 1.0, //
            0.0, 0.0, 1.0, 1.0, //
            1.0, 1.0, 1.0, 1.0,
        ];
        let k = kernel(&m, 3, 4, 1e-9);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let ratio = v[3] / v[0];
        assert!((ratio - 1.0).abs() < 1e-12);
        assert!((v[1] / v[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn solve_roundtrip() {
        let m = [2.0, 1.0, 1.0, 3.0];
        let x = solve(&m, &[3.0, 5.0], 1e-12).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve(&[1.0, 2.0, 2.0, 4.0], &[1.0, 1.0], 1e-12).is_none());
    }

    #[test]
    fn hyperplane_through_three_points() {
        let pts: [&[f64]; 3] = [&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]];
        let (n, b) = hyperplane_through(&pts, 1e-9).unwrap();
        let s = 1.0 / libm::sqrt(3.0);
        assert!(n.iter().all(|v| (v.abs() - s).abs() < 1e-12));
        assert!((b.abs() - s).abs() < 1e-12);
    }

    #[test]
    fn complement_is_orthonormal() {
        let u = [0.6, 0.8, 0.0];
        let c = complement_basis(&u);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!(dot(v, &u).abs() < 1e-12);
            assert!((norm(v) - 1.0).abs() < 1e-12);
        }
        assert!(dot(&c[0], &c[1]).abs() < 1e-12);
    }
}
