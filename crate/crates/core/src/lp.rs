//! Dense two-phase simplex.
//!
//! The solver works on the standard form `min c·x  s.t.  A x = b, x >= 0`
//! with few rows and possibly many columns, which is the shape of every LP in
//! this crate: convex-combination feasibility (`d + 1` rows, one column per
//! point) and the duals of small-dimensional margin problems (one row per
//! coordinate, one column per half-space constraint). [`maximize`] exposes
//! the latter directly in primal form.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;

/// Result of a standard-form solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible { residual: f64 },
    Unbounded,
    /// Pivoting did not terminate within the iteration budget.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    /// Basic column per row; `None` marks a redundant equality row.
    pub basis: Vec<Option<usize>>,
}

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
/// Degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 64;

struct Tableau {
    rows: usize,
    /// Structural columns; artificials follow, then the right-hand side.
    cols: usize,
    width: usize,
    t: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i * self.width + self.width - 1]
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let w = self.width;
        let p = self.t[r * w + s];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = row[s];
            if f != 0.0 {
                row.iter_mut().zip(prow.iter()).for_each(|(a, b)| *a -= f * b);
                row[s] = 0.0;
            }
        }
        let f = self.obj[s];
        if f != 0.0 {
            self.obj.iter_mut().zip(prow.iter()).for_each(|(a, b)| *a -= f * b);
            self.obj[s] = 0.0;
        }
        self.basis[r] = s;
    }

    /// Runs simplex iterations on the current objective row, letting only
    /// columns `< enter_limit` enter. Returns `Some(false)` on unboundedness
    /// and `None` when the budget runs out.
    fn optimize(&mut self, enter_limit: usize) -> Option<bool> {
        let budget = 200 + 20 * (self.rows + enter_limit);
        let mut streak = 0usize;
        for _ in 0..budget {
            let bland = streak > DEGENERATE_STREAK;
            let mut enter = None;
            let mut best = -COST_TOL;
            for j in 0..enter_limit {
                let d = self.obj[j];
                if d < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = d;
                }
            }
            let Some(s) = enter else { return Some(true) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, s);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    match leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-14
                                || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li])
                            {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Some(false);
            };
            streak = if ratio <= 1e-14 { streak + 1 } else { 0 };
            self.pivot(r, s);
        }
        None
    }
}

/// Solves `min c·x  s.t.  A x = b, x >= 0` where `a` is row-major
/// `b.len() × c.len()`. Feasibility is accepted when the phase-one residual
/// is at most `feas_tol * max(1, |b|_inf)`.
pub fn solve_standard(a: &[f64], b: &[f64], c: &[f64], feas_tol: f64) -> LpOutcome {
    let rows = b.len();
    let cols = c.len();
    debug_assert_eq!(a.len(), rows * cols);
    let width = cols + rows + 1;
    let mut t = vec![0.0; rows * width];
    for i in 0..rows {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..cols {
            t[i * width + j] = sign * a[i * cols + j];
        }
        t[i * width + cols + i] = 1.0;
        t[i * width + width - 1] = sign * b[i];
    }
    // Phase one: minimize the sum of artificials.
    let mut obj = vec![0.0; width];
    for i in 0..rows {
        for j in 0..cols {
            obj[j] -= t[i * width + j];
        }
        obj[width - 1] -= t[i * width + width - 1];
    }
    let mut tab = Tableau {
        rows,
        cols,
        width,
        t,
        obj,
        basis: (cols..cols + rows).collect(),
    };
    if tab.optimize(cols).is_none() {
        return LpOutcome::Stalled;
    }
    let residual: f64 = (0..rows)
        .filter(|&i| tab.basis[i] >= cols)
        .map(|i| tab.rhs(i).abs())
        .sum();
    let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if residual > feas_tol * scale {
        return LpOutcome::Infeasible { residual };
    }
    // Drive artificials out of the basis where possible.
    let mut redundant = vec![false; rows];
    for i in 0..rows {
        if tab.basis[i] >= cols {
            let mut best = (None, 1e-9);
            for j in 0..cols {
                let v = tab.at(i, j).abs();
                if v > best.1 {
                    best = (Some(j), v);
                }
            }
            match best.0 {
                Some(j) => tab.pivot(i, j),
                None => redundant[i] = true,
            }
        }
    }
    // Phase two.
    let mut obj = vec![0.0; width];
    obj[..cols].copy_from_slice(c);
    for i in 0..rows {
        let bj = tab.basis[i];
        let cb = if bj < cols { c[bj] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..width {
                obj[j] -= cb * tab.at(i, j);
            }
        }
    }
    tab.obj = obj;
    match tab.optimize(cols) {
        None => return LpOutcome::Stalled,
        Some(false) => return LpOutcome::Unbounded,
        Some(true) => {}
    }
    let mut x = vec![0.0; cols];
    let mut basis = vec![None; rows];
    for i in 0..rows {
        let bj = tab.basis[i];
        if bj < tab.cols && !redundant[i] {
            x[bj] = tab.rhs(i).max(0.0);
            basis[i] = Some(bj);
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal(LpSolution { x, value, basis })
}

/// Outcome of [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub enum MaxOutcome {
    Optimal { z: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
    Stalled,
}

/// `max obj·z  s.t.  g_j·z <= h_j` for free `z ∈ R^k`, solved through the
/// standard-form dual `min h·y  s.t.  Gᵀy = obj, y >= 0`. `g` is row-major
/// `h.len() × k`. The primal optimum is recovered from the optimal dual basis
/// by solving the `k` tight constraints.
pub fn maximize(objective: &[f64], g: &[f64], h: &[f64]) -> MaxOutcome {
    let k = objective.len();
    let m = h.len();
    debug_assert_eq!(g.len(), m * k);
    let mut gt = vec![0.0; k * m];
    for j in 0..m {
        for i in 0..k {
            gt[i * m + j] = g[j * k + i];
        }
    }
    let sol = match solve_standard(&gt, objective, h, 1e-10) {
        LpOutcome::Optimal(s) => s,
        // Dual infeasible: primal unbounded (or infeasible); dual unbounded:
        // primal infeasible.
        LpOutcome::Infeasible { .. } => return MaxOutcome::Unbounded,
        LpOutcome::Unbounded => return MaxOutcome::Infeasible,
        LpOutcome::Stalled => return MaxOutcome::Stalled,
    };
    let tight: Vec<usize> = sol.basis.iter().flatten().copied().collect();
    if tight.len() != k {
        return MaxOutcome::Stalled;
    }
    let mut sys = Vec::with_capacity(k * k);
    let mut rhs = Vec::with_capacity(k);
    for &j in &tight {
        sys.extend_from_slice(&g[j * k..(j + 1) * k]);
        rhs.push(h[j]);
    }
    match linalg::solve(&sys, &rhs, 1e-13) {
        Some(z) => {
            let value = z.iter().zip(objective).map(|(a, b)| a * b).sum();
            MaxOutcome::Optimal { z, value }
        }
        None => MaxOutcome::Stalled,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_standard_problem() {
        // min -x0 - x1  s.t. x0 + 2 x1 + s0 = 4, 3 x0 + x1 + s1 = 6.
        let a = [1.0, 2.0, 1.0, 0.0, 3.0, 1.0, 0.0, 1.0];
        let b = [4.0, 6.0];
        let c = [-1.0, -1.0, 0.0, 0.0];
        let LpOutcome::Optimal(sol) = solve_standard(&a, &b, &c, 1e-9) else {
            panic!()
        };
        assert!((sol.value + 2.8).abs() < 1e-12, "{}", sol.value);
        assert!((sol.x[0] - 1.6).abs() < 1e-12 && (sol.x[1] - 1.2).abs() < 1e-12);
    }

    #[test]
    fn infeasible_detected() {
        // x0 + x1 = -1 with x >= 0.
        let out = solve_standard(&[1.0, 1.0], &[-1.0], &[0.0, 0.0], 1e-9);
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn unbounded_detected() {
        // min -x0 s.t. x0 - x1 = 0.
        let out = solve_standard(&[1.0, -1.0], &[0.0], &[-1.0, 0.0], 1e-9);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_tolerated() {
        let a = [1.0, 1.0, 2.0, 2.0];
        let out = solve_standard(&a, &[1.0, 2.0], &[1.0, 2.0], 1e-9);
        let LpOutcome::Optimal(sol) = out else { panic!("{out:?}") };
        assert!((sol.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_center_of_square() {
        // max t s.t. x_i + t <= 1, -x_i + t <= 1 (unit square [-1,1]^2).
        let g = [
            1.0, 0.0, 1.0, //
            -1.0, 0.0, 1.0, //
            0.0, 1.0, 1.0, //
            0.0, -1.0, 1.0,
        ];
        let h = [1.0; 4];
        let MaxOutcome::Optimal { z, value } = maximize(&[0.0, 0.0, 1.0], &g, &h) else {
            panic!()
        };
        assert!((value - 1.0).abs() < 1e-12);
        assert!(z[0].abs() < 1e-12 && z[1].abs() < 1e-12);
    }

    #[test]
    fn primal_infeasible_and_unbounded() {
        // x <= -1 and -x <= -1.
        let out = maximize(&[1.0], &[1.0, -1.0], &[-1.0, -1.0]);
        assert_eq!(out, MaxOutcome::Infeasible);
        let out = maximize(&[1.0], &[-1.0], &[0.0]);
        assert_eq!(out, MaxOutcome::Unbounded);
    }
}
