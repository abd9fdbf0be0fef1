//! Real trigonometric polynomials.
//!
//! A [`TrigPoly`] with period `P` and degree `K` is
//!
//! ```text
//! f(x) = mean + sum_{k=1..K} ( cos_k cos(2 pi k x / P) + sin_k sin(2 pi k x / P) )
//! ```
//!
//! All operations are exact coefficient manipulations; nothing is sampled.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    period: f64,
    mean: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

/// Fractional part of `v` folded into `[-1/2, 1/2]`.
#[inline]
fn fold(v: f64) -> f64 {
    v - libm::round(v)
}

/// `(cos 2 pi k r, sin 2 pi k r)` with the phase reduced before scaling by
/// `2 pi`, so whole periods are removed exactly.
#[inline]
fn cis_turns(k: usize, r: f64) -> (f64, f64) {
    let phase = 2.0 * PI * fold(k as f64 * r);
    (libm::cos(phase), libm::sin(phase))
}

impl TrigPoly {
    /// Builds a polynomial; the shorter of `cos`/`sin` is zero padded.
    pub fn new(period: f64, mean: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidPeriod(period));
        }
        if !mean.is_finite() || cos.iter().chain(sin.iter()).any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient);
        }
        let k = cos.len().max(sin.len());
        let mut cos = cos;
        let mut sin = sin;
        cos.resize(k, 0.0);
        sin.resize(k, 0.0);
        Ok(TrigPoly { period, mean, cos, sin })
    }

    /// 1-periodic polynomial from its coefficients.
    pub fn unit(mean: f64, cos: &[f64], sin: &[f64]) -> Result<Self> {
        Self::new(1.0, mean, cos.to_vec(), sin.to_vec())
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// 1-periodic constant.
    pub fn constant(c: f64) -> Self {
        TrigPoly { period: 1.0, mean: c, cos: Vec::new(), sin: Vec::new() }
    }

    /// `amplitude * cos(2 pi k x)`, 1-periodic.
    pub fn cosine(k: usize, amplitude: f64) -> Self {
        Self::single(k, amplitude, true)
    }

    /// `amplitude * sin(2 pi k x)`, 1-periodic.
    pub fn sine(k: usize, amplitude: f64) -> Self {
        Self::single(k, amplitude, false)
    }

    fn single(k: usize, amplitude: f64, is_cos: bool) -> Self {
        if k == 0 {
            return if is_cos { Self::constant(amplitude) } else { Self::zero() };
        }
        let mut cos = vec![0.0; k];
        let mut sin = vec![0.0; k];
        if is_cos {
            cos[k - 1] = amplitude;
        } else {
            sin[k - 1] = amplitude;
        }
        TrigPoly { period: 1.0, mean: 0.0, cos, sin }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Cosine coefficients for `k = 1..=K` (slot `k-1`).
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    /// Sine coefficients for `k = 1..=K` (slot `k-1`).
    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    /// Stored degree `K`; may include trailing zero pairs, see [`TrigPoly::trimmed`].
    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    /// Coefficient of `cos(2 pi k x / P)`; `k = 0` gives the mean.
    pub fn cos_at(&self, k: usize) -> f64 {
        match k {
            0 => self.mean,
            _ => self.cos.get(k - 1).copied().unwrap_or(0.0),
        }
    }

    /// Coefficient of `sin(2 pi k x / P)`; zero for `k = 0`.
    pub fn sin_at(&self, k: usize) -> f64 {
        match k {
            0 => 0.0,
            _ => self.sin.get(k - 1).copied().unwrap_or(0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mean == 0.0 && self.cos.iter().chain(self.sin.iter()).all(|&c| c == 0.0)
    }

    /// Drops trailing all-zero coefficient pairs.
    pub fn trimmed(mut self) -> Self {
        while self.cos.last() == Some(&0.0) && self.sin.last() == Some(&0.0) {
            self.cos.pop();
            self.sin.pop();
        }
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = fold(x / self.period);
        let mut acc = self.mean;
        for (k, (&c, &s)) in self.cos.iter().zip(&self.sin).enumerate() {
            if c == 0.0 && s == 0.0 {
                continue;
            }
            let (ck, sk) = cis_turns(k + 1, r);
            acc += c * ck + s * sk;
        }
        acc
    }

    /// Exact `m`-th derivative.
    pub fn derivative(&self, m: u32) -> TrigPoly {
        let mut out = self.clone();
        for _ in 0..m {
            out.mean = 0.0;
            for k in 0..out.cos.len() {
                let w = 2.0 * PI * (k + 1) as f64 / self.period;
                let (c, s) = (out.cos[k], out.sin[k]);
                out.cos[k] = w * s;
                out.sin[k] = -w * c;
            }
        }
        out
    }

    /// `g(x) = f(x + t)`.
    pub fn shift(&self, t: f64) -> TrigPoly {
        let r = fold(t / self.period);
        let mut out = self.clone();
        if r == 0.0 {
            return out;
        }
        for k in 0..out.cos.len() {
            let (ct, st) = cis_turns(k + 1, r);
            let (c, s) = (self.cos[k], self.sin[k]);
            out.cos[k] = c * ct + s * st;
            out.sin[k] = s * ct - c * st;
        }
        out
    }

    /// Exact product by coefficient convolution; degree `K_f + K_g`.
    pub fn multiply(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.check_period(other)?;
        let ka = self.degree();
        let kb = other.degree();
        let k = ka + kb;
        // Slot 0 of `cos` is the constant term while building.
        let mut cos = vec![0.0; k + 1];
        let mut sin = vec![0.0; k + 1];
        let add_cos = |cos: &mut [f64], idx: isize, v: f64| cos[idx.unsigned_abs()] += v;
        let add_sin = |sin: &mut [f64], idx: isize, v: f64| {
            if idx != 0 {
                sin[idx.unsigned_abs()] += v * idx.signum() as f64;
            }
        };
        for i in 0..=ka {
            let (ai, bi) = (self.cos_at(i), self.sin_at(i));
            if ai == 0.0 && bi == 0.0 {
                continue;
            }
            for j in 0..=kb {
                let (cj, dj) = (other.cos_at(j), other.sin_at(j));
                if cj == 0.0 && dj == 0.0 {
                    continue;
                }
                let plus = (i + j) as isize;
                let minus = i as isize - j as isize;
                // cos cos, sin sin
                add_cos(&mut cos, plus, 0.5 * (ai * cj - bi * dj));
                add_cos(&mut cos, minus, 0.5 * (ai * cj + bi * dj));
                // cos_i sin_j and sin_i cos_j
                add_sin(&mut sin, plus, 0.5 * (ai * dj + bi * cj));
                add_sin(&mut sin, minus, 0.5 * (bi * cj - ai * dj));
            }
        }
        let mean = cos[0];
        Ok(TrigPoly { period: self.period, mean, cos: cos[1..].to_vec(), sin: sin[1..].to_vec() })
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.check_period(other)?;
        let k = self.degree().max(other.degree());
        let cos = (1..=k).map(|i| self.cos_at(i) + other.cos_at(i)).collect();
        let sin = (1..=k).map(|i| self.sin_at(i) + other.sin_at(i)).collect();
        Ok(TrigPoly { period: self.period, mean: self.mean + other.mean, cos, sin })
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> TrigPoly {
        TrigPoly {
            period: self.period,
            mean: c * self.mean,
            cos: self.cos.iter().map(|v| c * v).collect(),
            sin: self.sin.iter().map(|v| c * v).collect(),
        }
    }

    /// `(f_0, ||f||^2)`: the mean and the mean square over one period
    /// (Parseval). For period 1 these are `int_0^1 f` and `int_0^1 f^2`.
    pub fn mean_and_norm(&self) -> (f64, f64) {
        let half: f64 = self.cos.iter().chain(&self.sin).map(|c| c * c).sum::<f64>() * 0.5;
        (self.mean, self.mean * self.mean + half)
    }

    /// `(int_0^1 f cos 2 pi n x, int_0^1 f sin 2 pi n x)` for `n >= 1`,
    /// `(mean, 0)` for `n = 0`.
    pub fn fourier_on_unit(&self, n: usize) -> Result<(f64, f64)> {
        if self.period != 1.0 {
            return Err(Error::NotUnitPeriod(self.period));
        }
        Ok(match n {
            0 => (self.mean, 0.0),
            _ => (0.5 * self.cos_at(n), 0.5 * self.sin_at(n)),
        })
    }

    fn check_period(&self, other: &TrigPoly) -> Result<()> {
        if self.period != other.period {
            return Err(Error::PeriodMismatch { left: self.period, right: other.period });
        }
        Ok(())
    }
}

/// Coefficients `(p, q)` of `y'''' + 2(p y')' + q y`, both 1-periodic.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPair {
    p: TrigPoly,
    q: TrigPoly,
}

impl CoefficientPair {
    pub fn new(p: TrigPoly, q: TrigPoly) -> Result<Self> {
        for f in [&p, &q] {
            if f.period() != 1.0 {
                return Err(Error::NotUnitPeriod(f.period()));
            }
        }
        Ok(CoefficientPair { p, q })
    }

    /// `p = q = 0`.
    pub fn free() -> Self {
        CoefficientPair { p: TrigPoly::zero(), q: TrigPoly::zero() }
    }

    pub fn p(&self) -> &TrigPoly {
        &self.p
    }

    pub fn q(&self) -> &TrigPoly {
        &self.q
    }

    /// Largest stored degree of `p` and `q`.
    pub fn degree(&self) -> usize {
        self.p.degree().max(self.q.degree())
    }

    pub fn shift(&self, t: f64) -> CoefficientPair {
        CoefficientPair { p: self.p.shift(t), q: self.q.shift(t) }
    }
}

/// `V = q - p'' - p^2`, so that `d^4 + 2 d p d + q = (-d^2 - p)^2 + V`.
pub fn effective_potential(cp: &CoefficientPair) -> TrigPoly {
    let p = cp.p();
    let p2 = p.multiply(p).expect("both 1-periodic");
    cp.q()
        .sub(&p.derivative(2))
        .and_then(|v| v.sub(&p2))
        .expect("both 1-periodic")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU: f64 = 2.0 * PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(TrigPoly::cosine(1, 1.0).eval(0.0), 1.0);
        assert_eq!(TrigPoly::constant(3.0).eval(0.7), 3.0);
        assert!(close(TrigPoly::sine(1, 1.0).eval(0.25), 1.0, 1e-15));
    }

    #[test]
    fn eval_is_periodic() {
        let f = TrigPoly::new(2.0, 0.3, vec![1.0, -0.5], vec![0.25, 2.0]).unwrap();
        for i in 0..50 {
            let x = -3.0 + 0.137 * i as f64;
            assert!(close(f.eval(x), f.eval(x + 2.0), 1e-14));
        }
    }

    #[test]
    fn derivative_examples() {
        let d2 = TrigPoly::cosine(1, 1.0).derivative(2);
        assert_eq!(d2.mean(), 0.0);
        assert!(close(d2.cos_at(1), -TAU * TAU, 1e-15));
        assert_eq!(d2.sin_at(1), 0.0);

        let f = TrigPoly::unit(1.5, &[2.0], &[-1.0]).unwrap();
        assert_eq!(f.derivative(0), f);
        assert!(TrigPoly::constant(5.0).derivative(1).is_zero());
    }

    #[test]
    fn shift_examples() {
        let g = TrigPoly::cosine(1, 1.0).shift(0.5);
        assert!(close(g.cos_at(1), -1.0, 1e-15));
        assert!(g.sin_at(1).abs() < 1e-15);

        let g = TrigPoly::sine(1, 1.0).shift(0.25);
        assert!(close(g.cos_at(1), 1.0, 1e-15));
        assert!(g.sin_at(1).abs() < 1e-15);

        let f = TrigPoly::unit(0.1, &[1.0, 2.0, 3.0], &[0.5, -0.5, 0.0]).unwrap();
        assert_eq!(f.shift(1.0), f);
        assert_eq!(f.shift(-3.0), f);
    }

    #[test]
    fn multiply_examples() {
        let c = TrigPoly::cosine(1, 1.0);
        let s = TrigPoly::sine(1, 1.0);
        let cc = c.multiply(&c).unwrap().trimmed();
        assert_eq!(cc.mean(), 0.5);
        assert_eq!(cc.cos_coeffs(), &[0.0, 0.5]);
        assert_eq!(cc.sin_coeffs(), &[0.0, 0.0]);

        let cs = c.multiply(&s).unwrap();
        assert_eq!(cs.mean(), 0.0);
        assert_eq!(cs.sin_coeffs(), &[0.0, 0.5]);
        assert_eq!(cs.cos_coeffs(), &[0.0, 0.0]);

        let g = TrigPoly::unit(0.5, &[1.0, -2.0], &[3.0]).unwrap();
        let two_g = TrigPoly::constant(2.0).multiply(&g).unwrap();
        assert_eq!(two_g, g.scale(2.0));
    }

    #[test]
    fn multiply_rejects_period_mismatch() {
        let a = TrigPoly::constant(1.0);
        let b = TrigPoly::new(2.0, 1.0, vec![], vec![]).unwrap();
        assert_eq!(
            a.multiply(&b),
            Err(Error::PeriodMismatch { left: 1.0, right: 2.0 })
        );
    }

    #[test]
    fn mean_and_norm_examples() {
        assert_eq!(TrigPoly::cosine(1, 1.0).mean_and_norm(), (0.0, 0.5));
        assert_eq!(TrigPoly::constant(3.0).mean_and_norm(), (3.0, 9.0));
        let f = TrigPoly::unit(1.0, &[], &[0.0, 2.0]).unwrap();
        assert_eq!(f.mean_and_norm(), (1.0, 3.0));
    }

    #[test]
    fn effective_potential_examples() {
        let q = TrigPoly::unit(0.2, &[1.0], &[0.3]).unwrap();
        let cp = CoefficientPair::new(TrigPoly::zero(), q.clone()).unwrap();
        assert_eq!(effective_potential(&cp).trimmed(), q);

        let cp = CoefficientPair::new(TrigPoly::constant(1.0), TrigPoly::zero()).unwrap();
        let v = effective_potential(&cp).trimmed();
        assert_eq!(v, TrigPoly::constant(-1.0));

        let cp = CoefficientPair::new(TrigPoly::cosine(1, 1.0), TrigPoly::zero()).unwrap();
        let v = effective_potential(&cp);
        assert!(close(v.mean(), -0.5, 1e-15));
        assert!(close(v.cos_at(1), TAU * TAU, 1e-15));
        assert!(close(v.cos_at(2), -0.5, 1e-15));
        assert_eq!(v.sin_at(1), 0.0);
        assert_eq!(v.sin_at(2), 0.0);
    }

    #[test]
    fn effective_potential_mean() {
        let p = TrigPoly::unit(0.7, &[0.3, -0.2], &[0.1]).unwrap();
        let q = TrigPoly::unit(1.3, &[0.5], &[]).unwrap();
        let (p0, pn) = p.mean_and_norm();
        let cp = CoefficientPair::new(p, q).unwrap();
        let v = effective_potential(&cp);
        assert!(close(v.mean(), 1.3 - pn, 1e-15));
        assert!(pn > p0 * p0);
    }

    #[test]
    fn fourier_on_unit_examples() {
        assert_eq!(TrigPoly::cosine(1, 1.0).fourier_on_unit(1), Ok((0.5, 0.0)));
        assert_eq!(TrigPoly::constant(7.0).fourier_on_unit(0), Ok((7.0, 0.0)));
        assert_eq!(TrigPoly::sine(3, 2.0).fourier_on_unit(3), Ok((0.0, 1.0)));
        assert_eq!(TrigPoly::sine(3, 2.0).fourier_on_unit(9), Ok((0.0, 0.0)));
        let f = TrigPoly::new(2.0, 1.0, vec![], vec![]).unwrap();
        assert_eq!(f.fourier_on_unit(0), Err(Error::NotUnitPeriod(2.0)));
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(TrigPoly::new(0.0, 0.0, vec![], vec![]), Err(Error::InvalidPeriod(0.0)));
        assert_eq!(
            TrigPoly::new(1.0, f64::NAN, vec![], vec![]),
            Err(Error::NonFiniteCoefficient)
        );
        let f = TrigPoly::new(1.0, 0.0, vec![1.0], vec![0.0, 0.0, 2.0]).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.cos_coeffs(), &[1.0, 0.0, 0.0]);
        let half = TrigPoly::new(2.0, 0.0, vec![], vec![]).unwrap();
        assert_eq!(
            CoefficientPair::new(half, TrigPoly::zero()),
            Err(Error::NotUnitPeriod(2.0))
        );
    }

    #[test]
    fn trimmed_preserves_values() {
        let f = TrigPoly::unit(1.0, &[1.0, 0.0, 0.0], &[0.0, 2.0, 0.0]).unwrap();
        let g = f.clone().trimmed();
        assert_eq!(g.degree(), 2);
        for i in 0..10 {
            let x = 0.1 * i as f64;
            assert_eq!(f.eval(x), g.eval(x));
        }
    }
}
