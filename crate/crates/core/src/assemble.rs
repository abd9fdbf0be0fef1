//! Galerkin matrices of the truncated operators.
//!
//! | operator                     | boundary conditions          | basis |
//! |------------------------------|------------------------------|-------|
//! | `y'''' + 2(p y')' + q y`     | 2-periodic on `[0,2]`        | exp2  |
//! | `y'''' + 2(p y')' + q y`     | `y = y'' = 0` at 0 and 1     | sine1 |
//! | `-y'' + w y`                 | 2-periodic on `[0,2]`        | exp2  |
//! | `-y'' + w y`                 | `y = 0` at 0 and 1           | sine1 |
//!
//! Entries are closed-form integrals of the trigonometric coefficients, and
//! `2(p y')'` enters in its weak form `-2 int p u' v'`. The exp2 matrices are
//! built on `e_m = e^{i pi m x}/sqrt(2)`, `m = -N..N`, then rotated to the
//! real orthonormal basis `1/sqrt(2), cos(pi m x), sin(pi m x)` so that every
//! eigenproblem is real symmetric.

pub mod fd;

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::eigen::SymMatrix;
use crate::trigpoly::{CoefficientPair, TrigPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Realified `e^{i pi m x}/sqrt(2)`, `m = -N..N`, on `[0,2]`. Index 0 is
    /// the constant, `2m-1` is `cos(pi m x)` and `2m` is `sin(pi m x)`.
    Exp2,
    /// `sqrt(2) sin(pi m x)`, `m = 1..N`, on `[0,1]`; index `m-1`.
    Sine1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Second,
    Fourth,
}

impl Order {
    pub fn as_u8(self) -> u8 {
        match self {
            Order::Second => 2,
            Order::Fourth => 4,
        }
    }

    pub fn from_u8(v: u8) -> Result<Self> {
        match v {
            2 => Ok(Order::Second),
            4 => Ok(Order::Fourth),
            _ => Err(Error::InvalidArgument("operator order must be 2 or 4")),
        }
    }
}

/// `(pi m)^order`, evaluated as a power of `(pi m)^2` so that the fourth-order
/// symbol is bitwise the square of the second-order one.
#[inline]
pub fn free_symbol(m: i64, order: Order) -> f64 {
    let w = PI * m as f64;
    let w2 = w * w;
    match order {
        Order::Second => w2,
        Order::Fourth => w2 * w2,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: Basis,
    order: Order,
    truncation: usize,
    shift: f64,
    matrix: SymMatrix,
}

impl OperatorMatrix {
    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// `N`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

fn check_truncation(n: usize, degree: usize) -> Result<()> {
    if n == 0 || 2 * degree > n {
        return Err(Error::TruncationTooSmall { truncation: n, degree });
    }
    Ok(())
}

fn trimmed_degree(fs: &[&TrigPoly]) -> usize {
    fs.iter().map(|f| (*f).clone().trimmed().degree()).max().unwrap_or(0)
}

/// Period-2 exponential coefficient `(1/2) int_0^2 f e^{-i pi j x} dx` of a
/// 1-periodic `f`; zero for odd `j`.
pub(crate) fn exp2_coefficient(f: &TrigPoly, j: i64) -> Complex64 {
    if j == 0 {
        return Complex64::new(f.mean(), 0.0);
    }
    if j % 2 != 0 {
        return Complex64::new(0.0, 0.0);
    }
    let k = (j.unsigned_abs() / 2) as usize;
    let (c, s) = (f.cos_at(k), f.sin_at(k));
    if j > 0 {
        Complex64::new(0.5 * c, -0.5 * s)
    } else {
        Complex64::new(0.5 * c, 0.5 * s)
    }
}

/// `int_0^1 f(x) cos(pi r x) dx` for a 1-periodic trigonometric polynomial.
///
/// Cosine modes hit only `r = 2k`; sine modes contribute at every odd `r`.
pub(crate) fn cos_moment(f: &TrigPoly, r: i64) -> f64 {
    let r = r.unsigned_abs() as usize;
    let mut v = if r == 0 { f.mean() } else { 0.0 };
    if r % 2 == 0 {
        if r > 0 {
            v += 0.5 * f.cos_at(r / 2);
        }
    } else {
        let rr = (r * r) as f64;
        for (i, &s) in f.sin_coeffs().iter().enumerate() {
            if s != 0.0 {
                let k = (i + 1) as f64;
                v += s * 4.0 * k / (PI * (4.0 * k * k - rr));
            }
        }
    }
    v
}

/// Complex Hermitian matrix `<H e_m, e_k>` in row `k + N`, column `m + N`.
pub(crate) fn exp2_entries(
    weak: Option<&TrigPoly>,
    potential: &TrigPoly,
    order: Option<Order>,
    n: usize,
) -> Vec<Complex64> {
    let dim = 2 * n + 1;
    let ni = n as i64;
    let mut a = alloc::vec![Complex64::new(0.0, 0.0); dim * dim];
    for k in -ni..=ni {
        for m in -ni..=ni {
            let j = k - m;
            let mut v = exp2_coefficient(potential, j);
            if let Some(p) = weak {
                v -= exp2_coefficient(p, j) * (2.0 * PI * PI * (k * m) as f64);
            }
            if let (0, Some(order)) = (j, order) {
                v += free_symbol(m, order);
            }
            a[((k + ni) as usize) * dim + (m + ni) as usize] = v;
        }
    }
    a
}

/// Components of realified basis vector `a` on the `e_m`, as a unit phase.
/// The amplitude is 1 for the constant and `1/sqrt(2)` otherwise.
fn realified_components(a: usize) -> [(i64, Complex64); 2] {
    if a == 0 {
        return [(0, Complex64::new(1.0, 0.0)), (0, Complex64::new(0.0, 0.0))];
    }
    let m = a.div_ceil(2) as i64;
    if a % 2 == 1 {
        [(m, Complex64::new(1.0, 0.0)), (-m, Complex64::new(1.0, 0.0))]
    } else {
        [(m, Complex64::new(0.0, -1.0)), (-m, Complex64::new(0.0, 1.0))]
    }
}

/// `R = U^* A U` with `U` the map to `1/sqrt(2), cos, sin`.
fn realify(a: &[Complex64], n: usize) -> SymMatrix {
    let dim = 2 * n + 1;
    let ni = n as i64;
    let comps: Vec<_> = (0..dim).map(realified_components).collect();
    let mut r = SymMatrix::zeros(dim);
    for row in 0..dim {
        for col in 0..=row {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(k, uk) in &comps[row] {
                if uk.norm_sqr() == 0.0 {
                    continue;
                }
                for &(m, um) in &comps[col] {
                    if um.norm_sqr() == 0.0 {
                        continue;
                    }
                    let akm = a[((k + ni) as usize) * dim + (m + ni) as usize];
                    acc += uk.conj() * akm * um;
                }
            }
            let scale = match (row, col) {
                (0, 0) => 1.0,
                (0, _) | (_, 0) => FRAC_1_SQRT_2,
                _ => 0.5,
            };
            debug_assert!(acc.im.abs() <= 1e-9 * (1.0 + acc.re.abs()));
            r.set_sym(row, col, scale * acc.re);
        }
    }
    r
}

fn sine_entries(weak: Option<&TrigPoly>, potential: &TrigPoly, order: Option<Order>, n: usize) -> SymMatrix {
    let mut r = SymMatrix::zeros(n);
    for k in 1..=n as i64 {
        for m in 1..=k {
            let (lo, hi) = (cos_moment(potential, m - k), cos_moment(potential, m + k));
            let mut v = lo - hi;
            if let Some(p) = weak {
                let c = cos_moment(p, m - k) + cos_moment(p, m + k);
                v -= 2.0 * PI * PI * (k * m) as f64 * c;
            }
            if let (true, Some(order)) = (k == m, order) {
                v += free_symbol(m, order);
            }
            r.set_sym((k - 1) as usize, (m - 1) as usize, v);
        }
    }
    r
}

/// `d^4 + 2 d p d + q` on `[0,2]`, 2-periodic, coefficients shifted by `t`.
pub fn fourth_periodic(cp: &CoefficientPair, t: f64, n: usize) -> Result<OperatorMatrix> {
    check_truncation(n, trimmed_degree(&[cp.p(), cp.q()]))?;
    let s = cp.shift(t);
    let a = exp2_entries(Some(s.p()), s.q(), Some(Order::Fourth), n);
    Ok(OperatorMatrix { basis: Basis::Exp2, order: Order::Fourth, truncation: n, shift: t, matrix: realify(&a, n) })
}

/// `d^4 + 2 d p d + q` on `[0,1]` with `y(0) = y''(0) = y(1) = y''(1) = 0`,
/// coefficients shifted by `t`.
pub fn fourth_dirichlet(cp: &CoefficientPair, t: f64, n: usize) -> Result<OperatorMatrix> {
    check_truncation(n, trimmed_degree(&[cp.p(), cp.q()]))?;
    let s = cp.shift(t);
    Ok(OperatorMatrix {
        basis: Basis::Sine1,
        order: Order::Fourth,
        truncation: n,
        shift: t,
        matrix: sine_entries(Some(s.p()), s.q(), Some(Order::Fourth), n),
    })
}

/// `-y'' + w y` on `[0,2]`, 2-periodic. `w = q` is the Hill operator,
/// `w = -p` is `-y'' - p y`.
pub fn second_periodic(w: &TrigPoly, t: f64, n: usize) -> Result<OperatorMatrix> {
    if w.period() != 1.0 {
        return Err(Error::NotUnitPeriod(w.period()));
    }
    check_truncation(n, trimmed_degree(&[w]))?;
    let a = exp2_entries(None, &w.shift(t), Some(Order::Second), n);
    Ok(OperatorMatrix { basis: Basis::Exp2, order: Order::Second, truncation: n, shift: t, matrix: realify(&a, n) })
}

/// `-y'' + w y` on `[0,1]` with `y(0) = y(1) = 0`.
pub fn second_dirichlet(w: &TrigPoly, t: f64, n: usize) -> Result<OperatorMatrix> {
    if w.period() != 1.0 {
        return Err(Error::NotUnitPeriod(w.period()));
    }
    check_truncation(n, trimmed_degree(&[w]))?;
    Ok(OperatorMatrix {
        basis: Basis::Sine1,
        order: Order::Second,
        truncation: n,
        shift: t,
        matrix: sine_entries(None, &w.shift(t), Some(Order::Second), n),
    })
}

/// Matrix of multiplication by a 1-periodic `f` in the given basis.
pub fn multiplication_matrix(f: &TrigPoly, basis: Basis, n: usize) -> Result<SymMatrix> {
    if f.period() != 1.0 {
        return Err(Error::NotUnitPeriod(f.period()));
    }
    check_truncation(n, trimmed_degree(&[f]))?;
    Ok(match basis {
        Basis::Exp2 => realify(&exp2_entries(None, f, None, n), n),
        Basis::Sine1 => sine_entries(None, f, None, n),
    })
}
