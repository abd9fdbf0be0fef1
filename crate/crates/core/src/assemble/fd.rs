//! Finite-difference discretizations used as an independent check on the
//! Galerkin matrices.
//!
//! `y''''` uses the five-point stencil and `2(p y')'` the conservative form
//! `2 [p_{i+1/2}(y_{i+1} - y_i) - p_{i-1/2}(y_i - y_{i-1})] / h^2`, so every
//! matrix is symmetric. Dirichlet problems live on the interior nodes of
//! `[0,1]` with `y_0 = 0` and the odd reflection `y_{-1} = -y_1` (which
//! enforces `y'' = 0`); periodic problems use `2M` nodes on `[0,2]`. The
//! matrices are stored in double-double because the stencil weights reach
//! `6 M^4` while the eigenvalues of interest are of order one.

use alloc::vec::Vec;

use twofloat::TwoFloat;

use crate::eigen::BandedSymmetric;
use crate::trigpoly::{CoefficientPair, TrigPoly};
use crate::{Error, Result};

/// Smallest accepted number of cells per unit length.
pub const MIN_CELLS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdProblem {
    FourthDirichlet,
    FourthPeriodic,
    /// `-y'' + q y` with `y(0) = y(1) = 0`.
    SecondDirichlet,
    /// `-y'' + q y`, 2-periodic.
    SecondPeriodic,
}

impl FdProblem {
    pub fn is_periodic(self) -> bool {
        matches!(self, FdProblem::FourthPeriodic | FdProblem::SecondPeriodic)
    }

    pub fn is_fourth_order(self) -> bool {
        matches!(self, FdProblem::FourthDirichlet | FdProblem::FourthPeriodic)
    }
}

#[derive(Debug, Clone)]
pub struct FdOperator {
    problem: FdProblem,
    cells: usize,
    matrix: BandedSymmetric,
}

impl FdOperator {
    pub fn problem(&self) -> FdProblem {
        self.problem
    }

    /// Cells per unit length.
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn matrix(&self) -> &BandedSymmetric {
        &self.matrix
    }

    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        self.matrix.lowest_eigenvalues(k)
    }
}

fn dd(v: f64) -> TwoFloat {
    TwoFloat::from(v)
}

/// Discretizes `problem` for the coefficients shifted by `t`, using `cells`
/// cells per unit length.
pub fn fd_oracle(cp: &CoefficientPair, t: f64, problem: FdProblem, cells: usize) -> Result<FdOperator> {
    if cells < MIN_CELLS {
        return Err(Error::GridTooSmall { cells, min: MIN_CELLS });
    }
    let s = cp.shift(t);
    let h = 1.0 / cells as f64;
    let m2 = (cells * cells) as f64;
    let periodic = problem.is_periodic();
    // node i sits at x = (i + first) h
    let (n, first) = if periodic { (2 * cells, 0usize) } else { (cells - 1, 1usize) };
    let x = |i: usize| (i + first) as f64 * h;
    let band = if problem.is_fourth_order() { 2 } else { 1 };
    let mut a = BandedSymmetric::new(n, band, periodic)?;

    let add_potential = |a: &mut BandedSymmetric, w: &TrigPoly| {
        for i in 0..n {
            a.add(i, 0, dd(w.eval(x(i))));
        }
    };

    if problem.is_fourth_order() {
        let m4 = m2 * m2;
        for i in 0..n {
            let reflected = !periodic && (i == 0 || i == n - 1);
            a.add(i, 0, dd(if reflected { 5.0 * m4 } else { 6.0 * m4 }));
            a.add(i, 1, dd(-4.0 * m4));
            a.add(i, 2, dd(m4));
        }
        // 2(p y')' between node i and i+1, plus the half-cells next to the
        // Dirichlet boundary nodes
        let p = s.p();
        let flux = |a: &mut BandedSymmetric, left: Option<usize>, right: Option<usize>, mid: f64| {
            let c = TwoFloat::new_mul(2.0 * m2, p.eval(mid));
            if let Some(l) = left {
                a.add(l, 0, -c);
            }
            if let Some(r) = right {
                a.add(r, 0, -c);
            }
            if let (Some(l), Some(_)) = (left, right) {
                a.add(l, 1, c);
            }
        };
        let edges = if periodic { n } else { n + 1 };
        for e in 0..edges {
            // edge e joins node e-1 and node e (interior indexing); for
            // periodic grids node -1 is n-1
            let mid = (e as f64 + first as f64 - 0.5) * h;
            if periodic {
                let l = (e + n - 1) % n;
                flux(&mut a, Some(l), Some(e), mid);
            } else {
                let l = e.checked_sub(1);
                let r = if e < n { Some(e) } else { None };
                flux(&mut a, l, r, mid);
            }
        }
        add_potential(&mut a, s.q());
    } else {
        for i in 0..n {
            a.add(i, 0, dd(2.0 * m2));
            a.add(i, 1, dd(-m2));
        }
        add_potential(&mut a, s.q());
    }
    Ok(FdOperator { problem, cells, matrix: a })
}

/// Two-stage Richardson extrapolation of a quantity with an even error
/// expansion in `h`, from values at `h`, `h/2` and `h/4`.
pub fn richardson(coarse: f64, mid: f64, fine: f64) -> f64 {
    let r1 = (4.0 * mid - coarse) / 3.0;
    let r2 = (4.0 * fine - mid) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// The `k` lowest eigenvalues extrapolated from three grids. The grids must
/// double successively.
pub fn extrapolated_eigenvalues(
    cp: &CoefficientPair,
    t: f64,
    problem: FdProblem,
    grids: [usize; 3],
    k: usize,
) -> Result<Vec<f64>> {
    if grids[1] != 2 * grids[0] || grids[2] != 2 * grids[1] {
        return Err(Error::InvalidArgument("extrapolation grids must double successively"));
    }
    let mut levels = Vec::with_capacity(3);
    for &g in &grids {
        levels.push(fd_oracle(cp, t, problem, g)?.lowest_eigenvalues(k)?);
    }
    Ok((0..k.min(levels[0].len()))
        .map(|i| richardson(levels[0][i], levels[1][i], levels[2][i]))
        .collect())
}
