//! Trace identities for the periodic and Dirichlet spectra, the Fourier form
//! of `F(λ)` and the contour functional built from resolvent traces.
//!
//! Series terms are formed by pairing each periodic eigenvalue with its
//! Dirichlet partner before summation, `(λn+ - μn) + (λn- - μn)`, because
//! the individual eigenvalues grow like `n^4` while their differences decay.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::assemble::{self, free_symbol, Basis, Order};
use crate::spectra::{
    self, hill_dirichlet_spectrum, hill_periodic_spectrum, trusted_count, DirichletSpectrum, PeriodicSpectrum,
};
use crate::trigpoly::{effective_potential, CoefficientPair, TrigPoly};
use crate::{Error, Result};

/// Partial sums of a trace series evaluated at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub x: f64,
    /// `d_1..d_M`.
    pub terms: Vec<f64>,
    /// `partial_sums[0]` is the leading term, `partial_sums[k]` adds `d_1..d_k`.
    pub partial_sums: Vec<f64>,
    pub extrapolated: f64,
    pub target: f64,
    pub residual_raw: f64,
    pub residual_extrapolated: f64,
    pub m: usize,
    pub n: usize,
}

impl TraceReport {
    fn new(x: f64, leading: f64, terms: Vec<f64>, target: f64, n: usize) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len() + 1);
        let mut acc = leading;
        partial_sums.push(acc);
        for d in &terms {
            acc += d;
            partial_sums.push(acc);
        }
        let extrapolated = aitken(&partial_sums);
        TraceReport {
            x,
            m: terms.len(),
            n,
            residual_raw: (acc - target).abs(),
            residual_extrapolated: (extrapolated - target).abs(),
            terms,
            partial_sums,
            extrapolated,
            target,
        }
    }

    /// Last partial sum.
    pub fn sum(&self) -> f64 {
        *self.partial_sums.last().expect("partial sums start with the leading term")
    }
}

/// One Aitken delta-squared step on the last three partial sums. Falls back
/// to the last partial sum when the tail ratio is not that of a contracting
/// geometric sequence.
pub fn aitken(partial_sums: &[f64]) -> f64 {
    let k = partial_sums.len();
    let last = partial_sums[k - 1];
    if k < 3 {
        return last;
    }
    let d1 = partial_sums[k - 2] - partial_sums[k - 3];
    let d2 = last - partial_sums[k - 2];
    if d1 == 0.0 {
        return last;
    }
    let r = d2 / d1;
    if !r.is_finite() || r.abs() >= 1.0 {
        return last;
    }
    last + d2 * r / (1.0 - r)
}

fn check_range(m: usize, n: usize) -> Result<()> {
    let trusted = trusted_count(n);
    if m == 0 || m > trusted {
        return Err(Error::TrustedRange { requested: m, trusted });
    }
    Ok(())
}

fn paired_terms(per: &PeriodicSpectrum, dir: &DirichletSpectrum, m: usize) -> Vec<f64> {
    (1..=m)
        .map(|n| {
            let (lm, lp) = per.pair(n);
            let mu = dir.mu(n);
            (lp - mu) + (lm - mu)
        })
        .collect()
}

fn fourth_report(per: &PeriodicSpectrum, cp: &CoefficientPair, x: f64, m: usize, n: usize) -> Result<TraceReport> {
    let dir = spectra::dirichlet_spectrum(cp, Order::Fourth, x, n)?;
    let target = cp.q().eval(x) - 0.5 * cp.p().derivative(2).eval(x);
    Ok(TraceReport::new(x, per.lambda0_plus(), paired_terms(per, &dir, m), target, n))
}

/// `q(x) - p''(x)/2` against `λ0+ + Σ (λn+ + λn- - 2 μn(x))`.
pub fn fourth_trace(cp: &CoefficientPair, x: f64, m: usize, n: usize) -> Result<TraceReport> {
    check_range(m, n)?;
    let per = spectra::periodic_spectrum(cp, Order::Fourth, n)?;
    fourth_report(&per, cp, x, m, n)
}

/// `q(x)` against `α0+ + Σ (αn+ + αn- - 2 βn(x))` for `-y'' + q y`.
pub fn second_trace(q: &TrigPoly, x: f64, m: usize, n: usize) -> Result<TraceReport> {
    check_range(m, n)?;
    let per = hill_periodic_spectrum(q, n)?;
    let dir = hill_dirichlet_spectrum(q, x, n)?;
    Ok(TraceReport::new(x, per.lambda0_plus(), paired_terms(&per, &dir, m), q.eval(x), n))
}

/// `p(0)^2 + p''(0)/2` against `(α0+)^2 + Σ ((αn+)^2 + (αn-)^2 - 2 βn^2)`,
/// with `α`, `β` the periodic and Dirichlet eigenvalues of `-y'' - p y`.
pub fn s01_trace(p: &TrigPoly, m: usize, n: usize) -> Result<TraceReport> {
    check_range(m, n)?;
    let w = p.scale(-1.0);
    let per = hill_periodic_spectrum(&w, n)?;
    let dir = hill_dirichlet_spectrum(&w, 0.0, n)?;
    let terms = (1..=m)
        .map(|k| {
            let (am, ap) = per.pair(k);
            let b = dir.mu(k);
            (ap - b) * (ap + b) + (am - b) * (am + b)
        })
        .collect();
    let p0 = p.eval(0.0);
    let target = p0 * p0 + 0.5 * p.derivative(2).eval(0.0);
    let a0 = per.lambda0_plus();
    Ok(TraceReport::new(0.0, a0 * a0, terms, target, n))
}

/// Fourth-order traces over a grid of points.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub reports: Vec<TraceReport>,
    /// Grid average of the final partial sums.
    pub mean_sum: f64,
    /// `q0`, the average of `q - p''/2` over a period.
    pub mean_target: f64,
}

/// [`fourth_trace`] at every grid point, sharing one periodic spectrum.
pub fn sweep_trace(cp: &CoefficientPair, x_grid: &[f64], m: usize, n: usize) -> Result<SweepReport> {
    check_range(m, n)?;
    if x_grid.is_empty() {
        return Err(Error::InvalidArgument("sweep grid is empty"));
    }
    let per = spectra::periodic_spectrum(cp, Order::Fourth, n)?;
    let reports = x_grid
        .iter()
        .map(|&x| fourth_report(&per, cp, x, m, n))
        .collect::<Result<Vec<_>>>()?;
    let mean_sum = reports.iter().map(TraceReport::sum).sum::<f64>() / reports.len() as f64;
    Ok(SweepReport { reports, mean_sum, mean_target: cp.q().mean() })
}

fn check_pole(lambda: Complex64, pole: f64) -> Result<()> {
    if (lambda - pole).norm() <= 1e-6 * (1.0 + lambda.norm()) {
        return Err(Error::NearPole { re: lambda.re, im: lambda.im, pole });
    }
    Ok(())
}

/// `-V0/λ + Σ_{n<=N} c_n/((πn)^4 - λ)` where `V = q - p'' - p^2` has
/// cosine coefficients `c_n`.
pub fn f_of_lambda(cp: &CoefficientPair, lambda: Complex64, n: usize) -> Result<Complex64> {
    let v = effective_potential(cp);
    check_pole(lambda, 0.0)?;
    let mut acc = -Complex64::new(v.mean(), 0.0) / lambda;
    for k in 1..=n {
        let pole = free_symbol(k as i64, Order::Fourth);
        check_pole(lambda, pole)?;
        let c = v.cos_at(k);
        if c != 0.0 {
            acc += c / (pole - lambda);
        }
    }
    Ok(acc)
}

fn diagonal_resolvent_trace(v: &[f64], free: impl Fn(usize) -> f64, lambda: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &vi) in v.iter().enumerate() {
        let d = free(i);
        check_pole(lambda, d)?;
        acc += vi / (d - lambda);
    }
    Ok(acc)
}

/// `Tr V (h2^2 - λ)^{-1} - 2 Tr V (h1^2 - λ)^{-1}` with the free operators
/// `h_j = -d^2` truncated at `N` and `V` assembled in the matching basis.
/// The free resolvents are diagonal, so each trace is a diagonal solve.
pub fn f_matrix(cp: &CoefficientPair, lambda: Complex64, n: usize) -> Result<Complex64> {
    let v = effective_potential(cp);
    let ve = assemble::multiplication_matrix(&v, Basis::Exp2, n)?.diagonal();
    let vs = assemble::multiplication_matrix(&v, Basis::Sine1, n)?.diagonal();
    let periodic = diagonal_resolvent_trace(&ve, |i| free_symbol(i.div_ceil(2) as i64, Order::Fourth), lambda)?;
    let dirichlet = diagonal_resolvent_trace(&vs, |i| free_symbol(i as i64 + 1, Order::Fourth), lambda)?;
    Ok(periodic - dirichlet * 2.0)
}

/// Result of the contour integral on `|λ| = (π(n+1/2))^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourResult {
    pub n: usize,
    pub radius: f64,
    pub q: usize,
    pub value: Complex64,
    /// `-V(0)`.
    pub target: f64,
    pub truncation: usize,
}

/// `Tr (A - λ)^{-1} - Tr (B - λ)^{-1}` from sorted spectra of equal length,
/// summed pairwise as `(b - a)/((a - λ)(b - λ))`.
pub fn paired_resolvent_difference(a: &[f64], b: &[f64], lambda: Complex64) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (&ai, &bi) in a.iter().zip(b) {
        if ai != bi {
            acc += (bi - ai) / ((ai - lambda) * (bi - lambda));
        }
    }
    acc
}

/// The four spectra entering `Φ`, computed once per contour.
struct PhiSpectra {
    h2: Vec<f64>,
    h2_free: Vec<f64>,
    h1: Vec<f64>,
    h1_free: Vec<f64>,
}

fn squared_sorted(ev: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = ev.iter().map(|v| v * v).collect();
    s.sort_by(f64::total_cmp);
    s
}

impl PhiSpectra {
    fn new(cp: &CoefficientPair, n: usize) -> Result<Self> {
        let w = cp.p().scale(-1.0);
        Ok(PhiSpectra {
            h2: spectra::periodic_spectrum(cp, Order::Fourth, n)?.all().to_vec(),
            h2_free: squared_sorted(hill_periodic_spectrum(&w, n)?.all()),
            h1: spectra::dirichlet_spectrum(cp, Order::Fourth, 0.0, n)?.all().to_vec(),
            h1_free: squared_sorted(hill_dirichlet_spectrum(&w, 0.0, n)?.all()),
        })
    }

    fn check_radius(&self, contour: usize, r: f64) -> Result<()> {
        for ev in [&self.h2, &self.h2_free, &self.h1, &self.h1_free] {
            if let Some(&e) = ev.iter().find(|e| (e.abs() - r).abs() < 1e-6 * r) {
                return Err(Error::ContourHitsEigenvalue { contour, radius: r, eigenvalue: e });
            }
        }
        Ok(())
    }

    fn phi(&self, lambda: Complex64) -> Complex64 {
        paired_resolvent_difference(&self.h2, &self.h2_free, lambda)
            - paired_resolvent_difference(&self.h1, &self.h1_free, lambda) * 2.0
    }
}

/// `(1/2πi) ∮ λ Φ(λ) dλ` on the circle of radius `(π(n+1/2))^4` by the
/// `Q`-point trapezoid rule, where
/// `Φ = Tr(H2-λ)^{-1} - Tr(h2^2-λ)^{-1} - 2[Tr(H1-λ)^{-1} - Tr(h1^2-λ)^{-1}]`
/// and `h_j = -d^2 - p`.
pub fn contour_functional(cp: &CoefficientPair, contour: usize, q: usize, n: usize) -> Result<ContourResult> {
    contour_values(cp, &[contour], q, n).map(|mut v| v.remove(0))
}

/// [`contour_functional`] for several contours sharing one set of spectra.
pub fn contour_values(cp: &CoefficientPair, contours: &[usize], q: usize, n: usize) -> Result<Vec<ContourResult>> {
    if q < 64 {
        return Err(Error::InvalidArgument("contour quadrature needs at least 64 points"));
    }
    let trusted = n / 8;
    if let Some(&bad) = contours.iter().find(|&&c| c == 0 || c > trusted) {
        return Err(Error::TrustedRange { requested: bad, trusted });
    }
    let spectra = PhiSpectra::new(cp, n)?;
    let target = -effective_potential(cp).eval(0.0);
    contours
        .iter()
        .map(|&c| {
            let rho = PI * (c as f64 + 0.5);
            let r = (rho * rho) * (rho * rho);
            spectra.check_radius(c, r)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..q {
                let theta = 2.0 * PI * j as f64 / q as f64;
                let lambda = Complex64::from_polar(r, theta);
                acc += lambda * lambda * spectra.phi(lambda);
            }
            Ok(ContourResult { n: c, radius: r, q, value: acc / q as f64, target, truncation: n })
        })
        .collect()
}
