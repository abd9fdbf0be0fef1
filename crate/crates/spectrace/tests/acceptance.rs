//! One PASS/FAIL line per acceptance criterion. Checks listed in
//! `EXPECTED_FAILURES` are reported as FAIL with their reason; the target
//! fails on any other failure, or if an expected failure starts passing.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use spectrace_core::assemble::fd::{extrapolated_eigenvalues, FdProblem};
use spectrace_core::assemble::Order;
use spectrace_core::spectra::{self, dirichlet_defects, periodic_defects};
use spectrace_core::trigpoly::{CoefficientPair, TrigPoly};
use spectrace_core::{traceform, Complex64};

const EXPECTED_FAILURES: &[(&str, &str)] = &[(
    "3b",
    "gaps of a trigonometric-polynomial potential close super-exponentially; \
     the tail beyond M=8 is below double precision, so residual_raw(24) sits at \
     the rounding and truncation floor instead of halving",
)];

struct Check {
    id: &'static str,
    pass: bool,
    detail: String,
}

/// Outcome of one criterion: its checks plus the numbers it produced, kept
/// for the determinism comparison.
struct Outcome {
    checks: Vec<Check>,
    table: Vec<f64>,
    elapsed: Duration,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: Vec::new(), table: Vec::new(), elapsed: Duration::ZERO }
    }

    fn check(&mut self, id: &'static str, pass: bool, detail: String) {
        self.checks.push(Check { id, pass, detail });
    }
}

fn cosine() -> TrigPoly {
    TrigPoly::cosine(1, 1.0)
}

fn pair(p: TrigPoly, q: TrigPoly) -> CoefficientPair {
    CoefficientPair::new(p, q).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn timed(f: fn() -> Outcome, limit: Option<(&'static str, Duration)>) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    out.elapsed = start.elapsed();
    if let Some((id, limit)) = limit {
        let e = out.elapsed;
        out.check(id, e < limit, format!("runtime {:.2} s, limit {} s", e.as_secs_f64(), limit.as_secs()));
    }
    out
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    let free = CoefficientPair::free();
    let per = spectra::periodic_spectrum(&free, Order::Fourth, 64).unwrap();
    let dir = spectra::dirichlet_spectrum(&free, Order::Fourth, 0.0, 64).unwrap();
    let l0 = per.lambda0_plus();
    let mut worst = 0.0f64;
    let mut identical = true;
    for n in 1..=16 {
        let want = (PI * n as f64).powi(4);
        let (a, b) = per.pair(n);
        worst = worst.max((a - want).abs() / want).max((b - want).abs() / want);
        identical &= dir.mu(n) == a;
        o.table.extend([a, b, dir.mu(n)]);
    }
    o.table.push(l0);
    o.check("1a", l0.abs() <= 1e-8 && worst <= 1e-8, format!("|λ0+| = {:.1e}, max rel defect {:.1e}", l0.abs(), worst));
    o.check("1b", identical, "Dirichlet μn equal to λn-".into());
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    let cp = pair(cosine(), TrigPoly::cosine(1, 2.0));
    let grids = [512, 1024, 2048];
    let cases = [
        ("order 4 periodic", Order::Fourth, FdProblem::FourthPeriodic),
        ("order 4 Dirichlet", Order::Fourth, FdProblem::FourthDirichlet),
        ("order 2 periodic", Order::Second, FdProblem::SecondPeriodic),
        ("order 2 Dirichlet", Order::Second, FdProblem::SecondDirichlet),
    ];
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (name, order, problem) in cases {
        let gal = if problem.is_periodic() {
            spectra::periodic_spectrum(&cp, order, 64).unwrap().all().to_vec()
        } else {
            spectra::dirichlet_spectrum(&cp, order, 0.0, 64).unwrap().all().to_vec()
        };
        let fd = extrapolated_eigenvalues(&cp, 0.0, problem, grids, 10).unwrap();
        let w = gal.iter().zip(&fd).map(|(g, f)| rel(*g, *f)).fold(0.0, f64::max);
        worst = worst.max(w);
        parts.push(format!("{name} {w:.1e}"));
        o.table.extend(&gal[..10]);
        o.table.extend(&fd);
    }
    o.check("2a", worst <= 1e-6, format!("max rel diff {}", parts.join(", ")));
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    let q = cosine();
    let mut extrap = Vec::new();
    let mut halving = Vec::new();
    let mut ok_a = true;
    let mut ok_b = true;
    for x in [0.0, 0.3] {
        let r24 = traceform::second_trace(&q, x, 24, 96).unwrap();
        let r8 = traceform::second_trace(&q, x, 8, 96).unwrap();
        ok_a &= r24.residual_extrapolated <= 1e-3;
        ok_b &= r24.residual_raw <= 0.5 * r8.residual_raw;
        extrap.push(format!("x={x}: {:.1e}", r24.residual_extrapolated));
        halving.push(format!("x={x}: raw(8) {:.1e}, raw(24) {:.1e}", r8.residual_raw, r24.residual_raw));
        o.table.extend(&r24.partial_sums);
        o.table.extend([r24.extrapolated, r8.residual_raw]);
    }
    o.check("3a", ok_a, format!("extrapolated residual {}", extrap.join(", ")));
    o.check("3b", ok_b, halving.join("; "));
    o
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    let r = traceform::s01_trace(&cosine(), 24, 96).unwrap();
    let target = 1.0 - 2.0 * PI * PI;
    let tol = 1e-2 * (1.0 + target.abs());
    o.check(
        "4a",
        (r.target - target).abs() <= 1e-12 && r.residual_extrapolated <= tol,
        format!("target {:.6}, residual {:.1e}, tol {:.1e}", r.target, r.residual_extrapolated, tol),
    );
    o.table.extend(&r.partial_sums);
    o.table.push(r.extrapolated);
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    let grid: Vec<f64> = (0..16).map(|i| i as f64 / 16.0).collect();
    let cases = [("a", pair(TrigPoly::zero(), cosine())), ("b", pair(TrigPoly::cosine(1, 0.5), cosine()))];
    let mut ok_a = true;
    let mut ok_b = true;
    let mut resid = Vec::new();
    let mut decrease = Vec::new();
    for (name, cp) in &cases {
        let s = traceform::sweep_trace(cp, &grid, 24, 96).unwrap();
        let worst = s
            .reports
            .iter()
            .map(|r| r.residual_extrapolated / (1.0 + r.target.abs()))
            .fold(0.0, f64::max);
        ok_a &= worst <= 2e-3;
        resid.push(format!("({name}) {worst:.1e}"));
        let m8 = traceform::sweep_trace(cp, &grid, 8, 128).unwrap();
        let m16 = traceform::sweep_trace(cp, &grid, 16, 128).unwrap();
        let max8 = m8.reports.iter().map(|r| r.residual_raw).fold(0.0, f64::max);
        let max16 = m16.reports.iter().map(|r| r.residual_raw).fold(0.0, f64::max);
        let strict = m8.reports.iter().zip(&m16.reports).filter(|(a, b)| b.residual_raw < a.residual_raw).count();
        ok_b &= max16 < max8;
        decrease.push(format!("({name}) {max8:.1e} -> {max16:.1e}, {strict}/16 points strictly lower"));
        for r in s.reports.iter().chain(&m8.reports).chain(&m16.reports) {
            o.table.extend([r.sum(), r.extrapolated]);
        }
    }
    o.check("5a", ok_a, format!("max extrapolated residual/(1+|target|) {}", resid.join(", ")));
    o.check("5b", ok_b, format!("grid max residual_raw M=8 -> 16 at N=128 {}", decrease.join(", ")));

    let cp = pair(TrigPoly::constant(0.7), TrigPoly::constant(1.3));
    let mut worst = 0.0f64;
    for x in [0.0, 0.3, 0.75] {
        let r = traceform::fourth_trace(&cp, x, 24, 96).unwrap();
        worst = worst.max(r.residual_raw);
        o.table.extend(&r.partial_sums);
    }
    o.check("5c", worst <= 1e-9, format!("constant coefficients, residual {worst:.1e}"));
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    let potentials = [cosine(), cosine().add(&TrigPoly::sine(2, 0.5)).unwrap()];
    let mut worst = f64::NEG_INFINITY;
    for q in &potentials {
        let per = spectra::hill_periodic_spectrum(q, 64).unwrap();
        for i in 0..16 {
            let t = i as f64 / 16.0;
            let dir = spectra::hill_dirichlet_spectrum(q, t, 64).unwrap();
            for n in 1..=16 {
                let (am, ap) = per.pair(n);
                let b = dir.mu(n);
                let tau = 1e-7 * (1.0 + ap.abs());
                // positive when outside [am - tau, ap + tau]
                worst = worst.max((am - tau - b).max(b - ap - tau));
                o.table.push(b);
            }
        }
        o.table.extend(per.all());
    }
    o.check("6a", worst <= 0.0, format!("largest excursion beyond the tolerance band {worst:.1e}"));
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    let cp = pair(cosine(), TrigPoly::sine(1, 1.0));
    let per = periodic_defects(&spectra::periodic_spectrum(&cp, Order::Fourth, 96).unwrap(), &cp);
    let dir = dirichlet_defects(&spectra::dirichlet_spectrum(&cp, Order::Fourth, 0.0, 96).unwrap(), &cp);
    let (p4, p16) = (per[3].max_abs, per[15].max_abs);
    o.check("7a", p16 < p4, format!("|periodic defect| n=4 {p4:.2e}, n=16 {p16:.2e}"));
    let scaled: Vec<f64> = dir[3..16].iter().map(|d| d.value.abs() * (d.n * d.n) as f64).collect();
    let max = scaled.iter().cloned().fold(0.0, f64::max);
    o.check("7b", max <= 4.0 * scaled[0], format!("n^2 |Dirichlet defect|: n=4 {:.3}, max over 4..16 {max:.3}", scaled[0]));
    o.table.extend(per.iter().map(|d| d.max_abs));
    o.table.extend(scaled);
    o
}

fn c8() -> Outcome {
    let mut o = Outcome::new();
    let cp = pair(TrigPoly::zero(), cosine());
    let radius = (PI * 4.5).powi(4);
    let mut worst = 0.0f64;
    for j in 0..20 {
        let theta = 2.0 * PI * j as f64 / 20.0;
        let lambda = Complex64::from_polar(radius, theta);
        let a = traceform::f_matrix(&cp, lambda, 64).unwrap();
        let b = traceform::f_of_lambda(&cp, lambda, 64).unwrap();
        worst = worst.max((a - b).norm() / (1.0 + b.norm()));
        o.table.extend([a.re, a.im, b.re, b.im]);
    }
    o.check("8a", worst <= 1e-6, format!("max |F_matrix - F|/(1+|F|) {worst:.1e}"));
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    let cp = pair(TrigPoly::zero(), cosine());
    let vals = traceform::contour_values(&cp, &[2, 3, 4, 5, 6], 128, 96).unwrap();
    let dist: Vec<f64> = vals.iter().map(|r| (r.value - Complex64::new(-1.0, 0.0)).norm()).collect();
    o.check(
        "9a",
        dist[4] < dist[0] && dist[4] < 0.1,
        format!("|value(n)+1| for n=2..6: {}", dist.iter().map(|d| format!("{d:.1e}")).collect::<Vec<_>>().join(", ")),
    );
    let free = traceform::contour_values(&CoefficientPair::free(), &[2, 3, 4, 5, 6], 128, 96).unwrap();
    let worst = free.iter().map(|r| r.value.norm()).fold(0.0, f64::max);
    o.check("9b", worst <= 1e-9, format!("free operator max |value| {worst:.1e}"));
    for r in vals.iter().chain(&free) {
        o.table.extend([r.value.re, r.value.im]);
    }
    o
}

type Criterion = (fn() -> Outcome, Option<(&'static str, Duration)>);

fn criteria() -> [Criterion; 9] {
    [
        (c1, Some(("1c", Duration::from_secs(1)))),
        (c2, Some(("2b", Duration::from_secs(30)))),
        (c3, None),
        (c4, None),
        (c5, None),
        (c6, None),
        (c7, None),
        (c8, None),
        (c9, Some(("9c", Duration::from_secs(120)))),
    ]
}

fn main() {
    let first: Vec<Outcome> = criteria().into_iter().map(|(f, l)| timed(f, l)).collect();
    let second: Vec<Vec<u64>> =
        criteria().into_iter().map(|(f, _)| f().table.into_iter().map(f64::to_bits).collect()).collect();
    let identical = first
        .iter()
        .zip(&second)
        .all(|(a, b)| a.table.iter().map(|v| v.to_bits()).eq(b.iter().copied()));
    let count: usize = first.iter().map(|o| o.table.len()).sum();

    let mut checks: Vec<&Check> = first.iter().flat_map(|o| &o.checks).collect();
    let determinism = Check { id: "10a", pass: identical, detail: format!("{count} values compared bitwise across two runs") };
    checks.push(&determinism);

    let mut unexpected = Vec::new();
    for c in checks {
        let expected = EXPECTED_FAILURES.iter().find(|(id, _)| *id == c.id);
        let status = if c.pass { "PASS" } else { "FAIL" };
        match (c.pass, expected) {
            (false, Some((_, why))) => println!("criterion {:<3} {status}  {}  [expected failure: {why}]", c.id, c.detail),
            (true, Some(_)) => {
                println!("criterion {:<3} {status}  {}  [listed as expected failure]", c.id, c.detail);
                unexpected.push(c.id);
            }
            (false, None) => {
                println!("criterion {:<3} {status}  {}", c.id, c.detail);
                unexpected.push(c.id);
            }
            (true, None) => println!("criterion {:<3} {status}  {}", c.id, c.detail),
        }
    }
    for (o, i) in first.iter().zip(1..) {
        println!("criterion {i} ran in {:.2} s", o.elapsed.as_secs_f64());
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcomes: {unexpected:?}");
        std::process::exit(1);
    }
}
