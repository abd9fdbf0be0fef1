//! Command dispatch.

use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};
use spectrace_core::assemble::fd::{extrapolated_eigenvalues, FdProblem};
use spectrace_core::assemble::Order;
use spectrace_core::spectra::{self, Defect};
use spectrace_core::traceform::{self, TraceReport};

use crate::config::{Boundary, Command, Identity, RunConfig};
use crate::table::{Cell, Table};

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: Table,
    /// Scalars that do not fit the row layout (e.g. `λ0+`).
    pub summary: Map<String, Value>,
    pub elapsed: Duration,
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput, spectrace_core::Error> {
    let start = Instant::now();
    let mut summary = Map::new();
    let table = match cfg.command {
        Command::Spectrum => spectrum(cfg, &mut summary)?,
        Command::Trace => trace(cfg)?,
        Command::Sweep => sweep(cfg, &mut summary)?,
        Command::Contour => contour(cfg)?,
        Command::OracleCompare => oracle_compare(cfg, &mut summary)?,
        Command::Asymptotics => asymptotics(cfg)?,
    };
    Ok(RunOutput { table, summary, elapsed: start.elapsed() })
}

fn reference(cfg: &RunConfig, n: usize) -> f64 {
    match cfg.order {
        Order::Fourth => spectra::asymptotic_reference(&cfg.coefficients, n),
        Order::Second => spectra::hill_asymptotic_reference(cfg.coefficients.q(), n),
    }
}

fn spectrum(cfg: &RunConfig, summary: &mut Map<String, Value>) -> Result<Table, spectrace_core::Error> {
    let cp = &cfg.coefficients;
    Ok(match cfg.boundary {
        Boundary::Periodic => {
            let s = spectra::periodic_spectrum(cp, cfg.order, cfg.n)?;
            summary.insert("lambda0_plus".into(), json!(s.lambda0_plus()));
            let mut t = Table::new(&["n", "lambda_minus", "lambda_plus", "reference", "defect"]);
            for n in 1..=cfg.m {
                let (lm, lp) = s.pair(n);
                let r = reference(cfg, n);
                t.push(vec![n.into(), lm.into(), lp.into(), r.into(), (0.5 * ((lm - r) + (lp - r))).into()]);
            }
            t
        }
        Boundary::Dirichlet => {
            let s = spectra::dirichlet_spectrum(cp, cfg.order, cfg.t, cfg.n)?;
            let mut t = Table::new(&["n", "mu", "reference", "defect"]);
            for n in 1..=cfg.m {
                let r = reference(cfg, n);
                t.push(vec![n.into(), s.mu(n).into(), r.into(), (s.mu(n) - r).into()]);
            }
            t
        }
    })
}

const TRACE_COLUMNS: [&str; 6] = ["n", "d_n", "partial_sum", "target", "residual_raw", "residual_extrapolated"];

fn trace(cfg: &RunConfig) -> Result<Table, spectrace_core::Error> {
    let cp = &cfg.coefficients;
    let r = match cfg.identity {
        Identity::Fourth => traceform::fourth_trace(cp, cfg.x, cfg.m, cfg.n)?,
        Identity::Second => traceform::second_trace(cp.q(), cfg.x, cfg.m, cfg.n)?,
        Identity::Squared => traceform::s01_trace(cp.p(), cfg.m, cfg.n)?,
    };
    let mut t = Table::new(&TRACE_COLUMNS);
    push_trace_rows(&mut t, &r);
    Ok(t)
}

/// Row 0 carries the leading term, rows `1..=M` the series terms, and a
/// final `summary` row the extrapolated sum and residuals.
fn push_trace_rows(t: &mut Table, r: &TraceReport) {
    let leading = r.partial_sums[0];
    t.push(vec![0usize.into(), leading.into(), leading.into(), Cell::Empty, Cell::Empty, Cell::Empty]);
    for (k, (d, s)) in r.terms.iter().zip(&r.partial_sums[1..]).enumerate() {
        t.push(vec![(k + 1).into(), (*d).into(), (*s).into(), Cell::Empty, Cell::Empty, Cell::Empty]);
    }
    t.push(vec![
        "summary".into(),
        Cell::Empty,
        r.extrapolated.into(),
        r.target.into(),
        r.residual_raw.into(),
        r.residual_extrapolated.into(),
    ]);
}

fn sweep(cfg: &RunConfig, summary: &mut Map<String, Value>) -> Result<Table, spectrace_core::Error> {
    let s = traceform::sweep_trace(&cfg.coefficients, &cfg.x_grid, cfg.m, cfg.n)?;
    let mut t = Table::new(&["x", "partial_sum", "extrapolated", "target", "residual_raw", "residual_extrapolated"]);
    for r in &s.reports {
        t.push(vec![
            r.x.into(),
            r.sum().into(),
            r.extrapolated.into(),
            r.target.into(),
            r.residual_raw.into(),
            r.residual_extrapolated.into(),
        ]);
    }
    t.push(vec![
        "mean".into(),
        s.mean_sum.into(),
        Cell::Empty,
        s.mean_target.into(),
        (s.mean_sum - s.mean_target).abs().into(),
        Cell::Empty,
    ]);
    let worst = s.reports.iter().map(|r| r.residual_extrapolated).fold(0.0, f64::max);
    summary.insert("max_residual_extrapolated".into(), json!(worst));
    Ok(t)
}

fn contour(cfg: &RunConfig) -> Result<Table, spectrace_core::Error> {
    let rs = traceform::contour_values(&cfg.coefficients, &cfg.contours, cfg.q_points, cfg.n)?;
    let mut t = Table::new(&["n", "radius", "re", "im", "target"]);
    for r in rs {
        t.push(vec![r.n.into(), r.radius.into(), r.value.re.into(), r.value.im.into(), r.target.into()]);
    }
    Ok(t)
}

fn oracle_compare(cfg: &RunConfig, summary: &mut Map<String, Value>) -> Result<Table, spectrace_core::Error> {
    let cp = &cfg.coefficients;
    let (galerkin, problem) = match (cfg.boundary, cfg.order) {
        (Boundary::Periodic, o) => {
            let all = spectra::periodic_spectrum(cp, o, cfg.n)?.all().to_vec();
            (all, if o == Order::Fourth { FdProblem::FourthPeriodic } else { FdProblem::SecondPeriodic })
        }
        (Boundary::Dirichlet, o) => {
            let all = spectra::dirichlet_spectrum(cp, o, cfg.t, cfg.n)?.all().to_vec();
            (all, if o == Order::Fourth { FdProblem::FourthDirichlet } else { FdProblem::SecondDirichlet })
        }
    };
    let fd = extrapolated_eigenvalues(cp, cfg.t, problem, cfg.grids, cfg.count)?;
    let mut t = Table::new(&["n", "galerkin", "fd_extrapolated", "rel_diff"]);
    let mut worst = 0.0f64;
    for (k, (g, f)) in galerkin.iter().zip(&fd).enumerate() {
        let rel = (g - f).abs() / g.abs().max(1.0);
        worst = worst.max(rel);
        t.push(vec![(k + 1).into(), (*g).into(), (*f).into(), rel.into()]);
    }
    summary.insert("max_rel_diff".into(), json!(worst));
    Ok(t)
}

fn asymptotics(cfg: &RunConfig) -> Result<Table, spectrace_core::Error> {
    let cp = &cfg.coefficients;
    let per = spectra::periodic_spectrum(cp, cfg.order, cfg.n)?;
    let dir = spectra::dirichlet_spectrum(cp, cfg.order, cfg.t, cfg.n)?;
    let pd: Vec<Defect> = spectra::periodic_defects(&per, cp);
    let dd: Vec<Defect> = spectra::dirichlet_defects(&dir, cp);
    let mut t = Table::new(&["n", "periodic_mean_defect", "periodic_max_defect", "dirichlet_defect", "dirichlet_defect_n2"]);
    for (a, b) in pd.iter().zip(&dd).take(cfg.m) {
        let n2 = (a.n * a.n) as f64;
        t.push(vec![a.n.into(), a.value.into(), a.max_abs.into(), b.value.into(), (b.value * n2).into()]);
    }
    Ok(t)
}
