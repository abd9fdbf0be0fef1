#![allow(dead_code)]

use proptest::prelude::*;
use spectrace_core::trigpoly::{CoefficientPair, TrigPoly};

/// Trigonometric polynomials of period 1 and degree at most 2 whose
/// coefficients lie in `[-amp, amp]`.
pub fn trig_poly(amp: f64) -> impl Strategy<Value = TrigPoly> {
    (
        -amp..=amp,
        prop::collection::vec(-amp..=amp, 2),
        prop::collection::vec(-amp..=amp, 2),
    )
        .prop_map(|(m, c, s)| TrigPoly::unit(m, &c, &s).unwrap())
}

pub fn coefficient_pair(amp: f64) -> impl Strategy<Value = CoefficientPair> {
    (trig_poly(amp), trig_poly(amp)).prop_map(|(p, q)| CoefficientPair::new(p, q).unwrap())
}

/// Composite 5-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss(g: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W) {
            acc += w * g(mid + 0.5 * h * x);
        }
    }
    0.5 * h * acc
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
