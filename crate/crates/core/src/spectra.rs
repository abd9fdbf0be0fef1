//! Eigenvalues of the truncated operators, labeled as periodic pairs or as
//! ascending Dirichlet lists, with their large-`n` reference values.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::assemble::{self, OperatorMatrix, Order};
use crate::eigen::symmetric_eigenvalues;
use crate::trigpoly::{CoefficientPair, TrigPoly};
use crate::Result;

/// All eigenvalues of an assembled matrix, ascending.
pub fn eigensolve(mat: &OperatorMatrix) -> Result<Vec<f64>> {
    symmetric_eigenvalues(mat.matrix())
}

/// Number of trusted eigenvalue indices for truncation `n`.
pub fn trusted_count(n: usize) -> usize {
    n / 4
}

/// 2-periodic spectrum labeled `λ0+ <= λ1- <= λ1+ <= λ2- <= ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSpectrum {
    order: Order,
    truncation: usize,
    eigenvalues: Vec<f64>,
}

impl PeriodicSpectrum {
    pub fn from_sorted(order: Order, truncation: usize, eigenvalues: Vec<f64>) -> Self {
        debug_assert_eq!(eigenvalues.len(), 2 * truncation + 1);
        PeriodicSpectrum { order, truncation, eigenvalues }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn trusted(&self) -> usize {
        trusted_count(self.truncation)
    }

    pub fn lambda0_plus(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `(λn-, λn+)`; `n` may run up to `N`, though only `n <= trusted()` is
    /// reliable.
    pub fn pair(&self, n: usize) -> (f64, f64) {
        assert!(n >= 1 && n <= self.truncation, "pair index out of range");
        (self.eigenvalues[2 * n - 1], self.eigenvalues[2 * n])
    }

    /// Trusted pairs, `n = 1..=trusted()`.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        (1..=self.trusted()).map(|n| self.pair(n)).collect()
    }

    /// Every eigenvalue of the truncation, ascending.
    pub fn all(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// Ascending Dirichlet-type spectrum `μ1 <= μ2 <= ...` at shift `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSpectrum {
    order: Order,
    truncation: usize,
    shift: f64,
    eigenvalues: Vec<f64>,
}

impl DirichletSpectrum {
    pub fn from_sorted(order: Order, truncation: usize, shift: f64, eigenvalues: Vec<f64>) -> Self {
        DirichletSpectrum { order, truncation, shift, eigenvalues }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn trusted(&self) -> usize {
        trusted_count(self.truncation)
    }

    /// `μn`, one-based.
    pub fn mu(&self, n: usize) -> f64 {
        assert!(n >= 1 && n <= self.truncation, "eigenvalue index out of range");
        self.eigenvalues[n - 1]
    }

    /// Trusted eigenvalues `μ1..μ_trusted`.
    pub fn trusted_mu(&self) -> &[f64] {
        &self.eigenvalues[..self.trusted()]
    }

    pub fn all(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// Periodic spectrum of `H` (order 4) or of the Hill operator `-y'' + q y`
/// (order 2).
pub fn periodic_spectrum(cp: &CoefficientPair, order: Order, n: usize) -> Result<PeriodicSpectrum> {
    match order {
        Order::Fourth => {
            let m = assemble::fourth_periodic(cp, 0.0, n)?;
            Ok(PeriodicSpectrum::from_sorted(order, n, eigensolve(&m)?))
        }
        Order::Second => hill_periodic_spectrum(cp.q(), n),
    }
}

/// Dirichlet-type spectrum of `H` (order 4) or of `-y'' + q y` (order 2)
/// with coefficients shifted by `t`.
pub fn dirichlet_spectrum(cp: &CoefficientPair, order: Order, t: f64, n: usize) -> Result<DirichletSpectrum> {
    match order {
        Order::Fourth => {
            let m = assemble::fourth_dirichlet(cp, t, n)?;
            Ok(DirichletSpectrum::from_sorted(order, n, t, eigensolve(&m)?))
        }
        Order::Second => hill_dirichlet_spectrum(cp.q(), t, n),
    }
}

/// Periodic spectrum of `-y'' + w y`.
pub fn hill_periodic_spectrum(w: &TrigPoly, n: usize) -> Result<PeriodicSpectrum> {
    let m = assemble::second_periodic(w, 0.0, n)?;
    Ok(PeriodicSpectrum::from_sorted(Order::Second, n, eigensolve(&m)?))
}

/// Dirichlet spectrum of `-y'' + w y` with `w` shifted by `t`.
pub fn hill_dirichlet_spectrum(w: &TrigPoly, t: f64, n: usize) -> Result<DirichletSpectrum> {
    let m = assemble::second_dirichlet(w, t, n)?;
    Ok(DirichletSpectrum::from_sorted(Order::Second, n, t, eigensolve(&m)?))
}

/// `(πn)^4 - 2 p0 (πn)^2 + (p0^2 - |p|^2)/2 + q0`, with `|p|^2` the mean
/// square of `p` over a period.
pub fn asymptotic_reference(cp: &CoefficientPair, n: usize) -> f64 {
    let (p0, p2) = cp.p().mean_and_norm();
    let w = PI * n as f64;
    let w2 = w * w;
    w2 * w2 - 2.0 * p0 * w2 + 0.5 * (p0 * p0 - p2) + cp.q().mean()
}

/// `(πn)^2 + w0`.
pub fn hill_asymptotic_reference(w: &TrigPoly, n: usize) -> f64 {
    let k = PI * n as f64;
    k * k + w.mean()
}

/// Deviation of the `n`-th eigenvalue (or pair) from its reference value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defect {
    pub n: usize,
    /// `(λn+ + λn-)/2 - ref` for pairs, `μn - ref` for Dirichlet lists.
    pub value: f64,
    /// Largest of `|λn± - ref|` (or `|μn - ref|`).
    pub max_abs: f64,
}

fn reference(cp: &CoefficientPair, order: Order, n: usize) -> f64 {
    match order {
        Order::Fourth => asymptotic_reference(cp, n),
        Order::Second => hill_asymptotic_reference(cp.q(), n),
    }
}

/// Defects of the trusted pairs. For order 2 the reference uses `w = q`.
pub fn periodic_defects(spec: &PeriodicSpectrum, cp: &CoefficientPair) -> Vec<Defect> {
    (1..=spec.trusted())
        .map(|n| {
            let r = reference(cp, spec.order(), n);
            let (lm, lp) = spec.pair(n);
            let (dm, dp) = (lm - r, lp - r);
            Defect { n, value: 0.5 * (dm + dp), max_abs: dm.abs().max(dp.abs()) }
        })
        .collect()
}

/// Defects of the trusted Dirichlet eigenvalues.
pub fn dirichlet_defects(spec: &DirichletSpectrum, cp: &CoefficientPair) -> Vec<Defect> {
    (1..=spec.trusted())
        .map(|n| {
            let d = spec.mu(n) - reference(cp, spec.order(), n);
            Defect { n, value: d, max_abs: d.abs() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::SymMatrix;

    fn pi4(n: f64) -> f64 {
        let w = PI * n;
        (w * w) * (w * w)
    }

    #[test]
    fn free_spectra() {
        let cp = CoefficientPair::free();
        let s = periodic_spectrum(&cp, Order::Fourth, 2).unwrap();
        assert_eq!(s.all().len(), 5);
        assert!(s.lambda0_plus().abs() < 1e-12);
        for n in 1..=2 {
            let (a, b) = s.pair(n);
            assert!((a - pi4(n as f64)).abs() <= 1e-13 * pi4(n as f64));
            assert!((b - pi4(n as f64)).abs() <= 1e-13 * pi4(n as f64));
        }
        let d = dirichlet_spectrum(&cp, Order::Fourth, 0.37, 12).unwrap();
        for n in 1..=12 {
            assert!((d.mu(n) - pi4(n as f64)).abs() <= 1e-13 * pi4(n as f64));
        }
        for def in periodic_defects(&periodic_spectrum(&cp, Order::Fourth, 32).unwrap(), &cp) {
            assert!(def.max_abs <= 1e-13 * pi4(def.n as f64), "{def:?}");
        }
    }

    #[test]
    fn two_by_two() {
        let m = SymMatrix::from_row_major(2, alloc::vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let ev = symmetric_eigenvalues(&m).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constant_coefficients_match_reference() {
        let (p0, q0) = (0.4, 1.7);
        let cp = CoefficientPair::new(TrigPoly::constant(p0), TrigPoly::constant(q0)).unwrap();
        let s = periodic_spectrum(&cp, Order::Fourth, 24).unwrap();
        for def in periodic_defects(&s, &cp) {
            assert!(def.max_abs <= 1e-12 * pi4(def.n as f64), "{def:?}");
        }
        let cp = CoefficientPair::new(TrigPoly::zero(), TrigPoly::constant(q0)).unwrap();
        let d = dirichlet_spectrum(&cp, Order::Fourth, 0.1, 16).unwrap();
        for def in dirichlet_defects(&d, &cp) {
            assert!(def.max_abs <= 1e-12 * pi4(def.n as f64), "{def:?}");
        }
        let h = hill_dirichlet_spectrum(&TrigPoly::constant(q0), 0.0, 16).unwrap();
        for n in 1..=16 {
            let r = hill_asymptotic_reference(&TrigPoly::constant(q0), n);
            assert!((h.mu(n) - r).abs() <= 1e-12 * r);
        }
    }

    #[test]
    fn reference_values() {
        let free = CoefficientPair::free();
        assert!((asymptotic_reference(&free, 3) - pi4(3.0)).abs() < 1e-9);
        let cp = CoefficientPair::new(TrigPoly::constant(1.0), TrigPoly::zero()).unwrap();
        let w = 2.0 * PI;
        assert!((asymptotic_reference(&cp, 2) - (w.powi(4) - 2.0 * w * w)).abs() < 1e-9);
        let cp = CoefficientPair::new(TrigPoly::cosine(1, 2.0), TrigPoly::zero()).unwrap();
        assert!((asymptotic_reference(&cp, 5) - (pi4(5.0) - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn labels_are_positional() {
        let cp = CoefficientPair::new(TrigPoly::cosine(1, 1.0), TrigPoly::sine(1, 1.0)).unwrap();
        let s = periodic_spectrum(&cp, Order::Fourth, 16).unwrap();
        assert!(s.all().windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(s.pairs().len(), 4);
        assert_eq!(s.pair(3), (s.all()[5], s.all()[6]));
    }
}
