//! Symmetric eigenvalue solvers.
//!
//! - [`symmetric_eigenvalues`]: cyclic two-sided Jacobi on a dense matrix.
//!   With a relative off-diagonal threshold Jacobi resolves small eigenvalues
//!   of scaled diagonally dominant matrices to high relative accuracy, which
//!   matters here because Galerkin matrices carry a `(pi m)^4` diagonal that
//!   dwarfs the low end of the spectrum.
//! - [`BandedSymmetric`]: inertia (Sturm) counts by `LDL^T` in double-double
//!   arithmetic and bisection, used by the finite-difference oracle whose
//!   matrices are large, banded and badly scaled.

use alloc::vec;
use alloc::vec::Vec;

use twofloat::TwoFloat;

use crate::{Error, Result};

/// Dense real symmetric matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds from a row-major array; the caller promises symmetry.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::InvalidArgument("row-major data length is not dim^2"));
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets `(i, j)` only; callers keep the matrix symmetric.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    /// Sets `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.set(i, j, v);
        self.set(j, i, v);
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Largest `|a_ij - a_ji| / (1 + |a_ij|)`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                let (a, b) = (self.get(i, j), self.get(j, i));
                worst = worst.max((a - b).abs() / (1.0 + a.abs()));
            }
        }
        worst
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    pub fn matmul(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument("matrix dimensions differ"));
        }
        let n = self.dim;
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `u^T A v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|i| u[i] * (0..n).map(|j| self.get(i, j) * v[j]).sum::<f64>())
            .sum()
    }

    fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim {
            let r: f64 = (0..self.dim).filter(|&j| j != i).map(|j| self.get(i, j).abs()).sum();
            lo = lo.min(self.get(i, i) - r);
            hi = hi.max(self.get(i, i) + r);
        }
        (lo, hi)
    }
}

const MAX_SWEEPS: usize = 80;

/// All eigenvalues of a real symmetric matrix, ascending.
///
/// The matrix is first shifted to be positive definite (Gershgorin), then
/// diagonalised by cyclic Jacobi rotations. A pair `(p, q)` is annihilated
/// while `|a_pq| > eps * sqrt(a_pp a_qq)`.
pub fn symmetric_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteCoefficient);
    }
    let off_diagonal = (0..n).any(|i| (i + 1..n).any(|j| m.get(i, j) != 0.0));
    if !off_diagonal {
        let mut d = m.diagonal();
        d.sort_by(f64::total_cmp);
        return Ok(d);
    }
    let (glo, _) = m.gershgorin();
    let shift = if glo > 0.0 { 0.0 } else { 1.0 - glo };

    let mut a = m.as_slice().to_vec();
    for i in 0..n {
        a[i * n + i] += shift;
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    // Diagonal updates are accumulated separately (`z`) and folded in once per
    // sweep, which keeps the diagonal accurate over many rotations.
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    let eps = f64::EPSILON;

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let scale = libm::sqrt((d[p] * d[q]).abs());
                if apq.abs() <= eps * scale {
                    a[p * n + q] = 0.0;
                    continue;
                }
                rotated = true;
                let h = d[q] - d[p];
                let theta = 0.5 * h / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + libm::sqrt(1.0 + theta * theta));
                    if theta < 0.0 { -t } else { t }
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let tau = s / (1.0 + c);
                let hdelta = t * apq;
                z[p] -= hdelta;
                z[q] += hdelta;
                d[p] -= hdelta;
                d[q] += hdelta;
                a[p * n + q] = 0.0;
                let rot = |a: &mut [f64], i: usize, j: usize, k: usize, l: usize| {
                    let g = a[i * n + j];
                    let h = a[k * n + l];
                    a[i * n + j] = g - s * (h + g * tau);
                    a[k * n + l] = h + s * (g - h * tau);
                };
                for j in 0..p {
                    rot(&mut a, j, p, j, q);
                }
                for j in p + 1..q {
                    rot(&mut a, p, j, j, q);
                }
                for j in q + 1..n {
                    rot(&mut a, p, j, q, j);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
        if !rotated {
            let mut ev: Vec<f64> = d.iter().map(|&v| v - shift).collect();
            ev.sort_by(f64::total_cmp);
            return Ok(ev);
        }
    }
    Err(Error::NonConvergence { sweeps: MAX_SWEEPS })
}

/// Double-double reciprocal by one Newton step from the f64 reciprocal.
///
/// `TwoFloat` division forms its residual without a fused multiply-add and is
/// only accurate to f64 precision.
#[inline]
fn recip(d: TwoFloat) -> TwoFloat {
    let r0 = TwoFloat::from(1.0 / d.hi());
    let e = TwoFloat::from(1.0) - d * r0;
    r0 + r0 * e
}

/// Symmetric banded matrix held in double-double precision, optionally with
/// periodic (circulant) wraparound of the band.
///
/// Row `i` stores `A[i][i + j]` for `j = 0..=bandwidth` (indices taken modulo
/// `n` when periodic).
#[derive(Debug, Clone)]
pub struct BandedSymmetric {
    n: usize,
    bandwidth: usize,
    periodic: bool,
    upper: Vec<TwoFloat>,
}

impl BandedSymmetric {
    pub fn new(n: usize, bandwidth: usize, periodic: bool) -> Result<Self> {
        if n == 0 || bandwidth == 0 {
            return Err(Error::InvalidArgument("banded matrix needs n >= 1 and bandwidth >= 1"));
        }
        if periodic && n < 2 * bandwidth + 2 {
            return Err(Error::InvalidArgument("periodic band wraps onto itself"));
        }
        Ok(BandedSymmetric {
            n,
            bandwidth,
            periodic,
            upper: vec![TwoFloat::from(0.0); n * (bandwidth + 1)],
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// Adds `v` to `A[i][i+offset]` (and its mirror). Out-of-range entries of
    /// a non-periodic matrix are dropped.
    pub fn add(&mut self, i: usize, offset: usize, v: TwoFloat) {
        debug_assert!(offset <= self.bandwidth);
        if !self.periodic && i + offset >= self.n {
            return;
        }
        let slot = i * (self.bandwidth + 1) + offset;
        self.upper[slot] += v;
    }

    /// `A[i][j]` in double-double, zero outside the band.
    pub fn entry(&self, i: usize, j: usize) -> TwoFloat {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let direct = hi - lo;
        let w = self.bandwidth;
        if direct <= w {
            return self.upper[lo * (w + 1) + direct];
        }
        if self.periodic {
            let wrapped = self.n - direct;
            if wrapped <= w {
                return self.upper[hi * (w + 1) + wrapped];
            }
        }
        TwoFloat::from(0.0)
    }

    pub fn to_dense(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.entry(i, j).hi() + self.entry(i, j).lo());
            }
        }
        m
    }

    fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let n = self.n;
        for i in 0..n {
            let mut r = 0.0;
            for off in 1..=self.bandwidth {
                let right = if self.periodic || i + off < n { Some((i + off) % n) } else { None };
                let left = if self.periodic || i >= off { Some((i + n - off) % n) } else { None };
                for j in right.into_iter().chain(left) {
                    r += f64::from(self.entry(i, j)).abs();
                }
            }
            let d = f64::from(self.entry(i, i));
            lo = lo.min(d - r);
            hi = hi.max(d + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `sigma`.
    ///
    /// `LDL^T` of `A - sigma I` without pivoting on the skyline profile: rows
    /// of the band plus, for a periodic matrix, the last `bandwidth` rows,
    /// which fill in completely. The count is the number of negative pivots
    /// (Sylvester's law of inertia).
    pub fn count_below(&self, sigma: f64) -> usize {
        let n = self.n;
        let w = self.bandwidth;
        let border = if self.periodic { w } else { 0 };
        let inner = n - border;
        // first stored column of each lower-triangular row
        let first = |i: usize| if i >= inner { 0 } else { i.saturating_sub(w) };
        let start: Vec<usize> = {
            let mut s = Vec::with_capacity(n + 1);
            let mut acc = 0;
            for i in 0..n {
                s.push(acc);
                acc += i - first(i) + 1;
            }
            s.push(acc);
            s
        };
        let mut l = vec![TwoFloat::from(0.0); start[n]];
        let mut dpiv = vec![TwoFloat::from(0.0); n];
        let tiny = TwoFloat::from(libm::sqrt(f64::MIN_POSITIVE));
        let sig = TwoFloat::from(sigma);
        let mut negatives = 0;

        for i in 0..n {
            let fi = first(i);
            for j in fi..=i {
                let mut s = if i == j { self.entry(i, i) - sig } else { self.entry(i, j) };
                let fj = first(j);
                for k in fi.max(fj)..j {
                    s -= l[start[i] + (k - fi)] * l[start[j] + (k - fj)] * dpiv[k];
                }
                if i == j {
                    if s == 0.0 {
                        s = tiny;
                    }
                    if s < 0.0 {
                        negatives += 1;
                    }
                    dpiv[i] = s;
                } else {
                    l[start[i] + (j - fi)] = s * recip(dpiv[j]);
                }
            }
        }
        negatives
    }

    /// The `k` lowest eigenvalues by bisection on [`count_below`](Self::count_below),
    /// each bracketed to a relative width of a few ulps.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let k = k.min(self.n);
        let (mut glo, mut ghi) = self.gershgorin();
        glo -= 1.0 + glo.abs() * 1e-12;
        ghi += 1.0 + ghi.abs() * 1e-12;
        let mut lower = vec![glo; k];
        let mut upper = vec![ghi; k];
        for target in 0..k {
            for _ in 0..400 {
                let (a, b) = (lower[target], upper[target]);
                let mid = 0.5 * (a + b);
                let tol = 4.0 * f64::EPSILON * a.abs().max(b.abs()) + 1e-300;
                if b - a <= tol || mid <= a || mid >= b {
                    break;
                }
                let c = self.count_below(mid);
                for (j, (lo, hi)) in lower.iter_mut().zip(upper.iter_mut()).enumerate().skip(target) {
                    if j < c {
                        *hi = hi.min(mid);
                    } else {
                        *lo = lo.max(mid);
                    }
                }
            }
        }
        Ok(lower.iter().zip(&upper).map(|(a, b)| 0.5 * (a + b)).collect())
    }
}
