//! Run configuration: a flat TOML document.
//!
//! ```toml
//! command = "trace"
//! order = 4
//! N = 96
//! M = 24
//! x = 0.3
//!
//! [p]
//! cos = [0.5]
//!
//! [q]
//! mean = 0.0
//! cos = [1.0]
//! sin = []
//! ```
//!
//! Coefficient tables mirror [`TrigPoly`]: `period` (default 1), `mean`,
//! `cos` and `sin`, where `cos[k-1]` multiplies `cos(2 pi k x / period)`.
//! Instead of inline `[p]`/`[q]` tables, `coefficients_file` may name a TOML
//! file holding them.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spectrace_core::assemble::Order;
use spectrace_core::trigpoly::{CoefficientPair, TrigPoly};

pub const DEFAULT_N: usize = 64;
pub const DEFAULT_Q: usize = 128;
pub const DEFAULT_GRID_POINTS: usize = 16;
pub const DEFAULT_FD_GRIDS: [usize; 3] = [512, 1024, 2048];
pub const DEFAULT_ORACLE_COUNT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Trace,
    Sweep,
    Contour,
    OracleCompare,
    Asymptotics,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Trace => "trace",
            Command::Sweep => "sweep",
            Command::Contour => "contour",
            Command::OracleCompare => "oracle-compare",
            Command::Asymptotics => "asymptotics",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Command::Spectrum,
            Command::Trace,
            Command::Sweep,
            Command::Contour,
            Command::OracleCompare,
            Command::Asymptotics,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Dirichlet,
}

/// Which trace identity the `trace` command evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// Fourth-order operator, `q(x) - p''(x)/2`.
    Fourth,
    /// Hill operator `-y'' + q y`, `q(x)`.
    Second,
    /// Squared eigenvalues of `-y'' - p y`, `p(0)^2 + p''(0)/2`.
    Squared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientTable {
    #[serde(default = "unit_period")]
    pub period: f64,
    #[serde(default)]
    pub mean: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

fn unit_period() -> f64 {
    1.0
}

impl CoefficientTable {
    pub fn from_poly(f: &TrigPoly) -> Self {
        CoefficientTable { period: f.period(), mean: f.mean(), cos: f.cos_coeffs().to_vec(), sin: f.sin_coeffs().to_vec() }
    }

    fn to_poly(&self) -> Result<TrigPoly, spectrace_core::Error> {
        TrigPoly::new(self.period, self.mean, self.cos.clone(), self.sin.clone())
    }
}

/// The document as written, before defaults and validation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u8>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q_points: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Boundary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<Identity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contours: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grids: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<CoefficientTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<CoefficientTable>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientFile {
    p: Option<CoefficientTable>,
    q: Option<CoefficientTable>,
}

/// Fully validated configuration with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub coefficients: CoefficientPair,
    pub order: Order,
    pub n: usize,
    pub m: usize,
    pub q_points: usize,
    pub t: f64,
    pub x: f64,
    pub x_grid: Vec<f64>,
    pub boundary: Boundary,
    pub identity: Identity,
    pub contours: Vec<usize>,
    pub grids: [usize; 3],
    pub count: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigErrorKind {
    /// Malformed document, unknown field, bad or missing value.
    Invalid,
    /// An index range beyond what the truncation supports.
    TrustedRange,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub kind: ConfigErrorKind,
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "config line {l}, field `{}`: {}", self.field, self.message),
            None => write!(f, "config field `{}`: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// 1-based line on which `key = ...` appears, looking inside `[table]`
/// when the key is dotted (`q.cos`).
pub fn line_of(text: &str, key: &str) -> Option<usize> {
    let (table, name) = match key.split_once('.') {
        Some((t, n)) => (Some(t), n),
        None => (None, key),
    };
    let mut current: Option<&str> = None;
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if let Some(h) = l.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            current = Some(h.trim());
            if table == Some(h.trim()) && name.is_empty() {
                return Some(i + 1);
            }
            continue;
        }
        if current != table {
            continue;
        }
        if let Some((k, _)) = l.split_once('=') {
            if k.trim().trim_matches('"') == name {
                return Some(i + 1);
            }
        }
    }
    if let Some(t) = table {
        return text.lines().position(|l| l.trim() == format!("[{t}]")).map(|i| i + 1);
    }
    None
}

fn invalid(text: &str, field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { kind: ConfigErrorKind::Invalid, field: field.to_string(), line: line_of(text, field), message: message.into() }
}

fn out_of_range(text: &str, field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        kind: ConfigErrorKind::TrustedRange,
        field: field.to_string(),
        line: line_of(text, field),
        message: message.into(),
    }
}

/// Parses the document without applying defaults.
pub fn parse_raw(text: &str) -> Result<RawConfig, ConfigError> {
    toml::from_str(text).map_err(|e| toml_error(text, &e))
}

fn toml_error(text: &str, e: &toml::de::Error) -> ConfigError {
    let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
    let message = e.message().to_string();
    let field = message
        .split('`')
        .nth(1)
        .filter(|_| message.starts_with("unknown field") || message.starts_with("missing field"))
        .map(str::to_string)
        .or_else(|| {
            let idx = line? - 1;
            let key = text.lines().nth(idx)?.split_once('=')?.0.trim().to_string();
            let table = text
                .lines()
                .take(idx)
                .filter_map(|l| l.trim().strip_prefix('[')?.strip_suffix(']').map(str::trim))
                .last();
            Some(match table {
                Some(t) => format!("{t}.{key}"),
                None => key,
            })
        })
        .unwrap_or_else(|| "<document>".to_string());
    ConfigError { kind: ConfigErrorKind::Invalid, field, line, message }
}

/// Parses and validates a document. Relative `coefficients_file` paths are
/// resolved against the current directory.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_raw(text)?.validate(text, None)
}

fn positive(text: &str, field: &str, v: Option<i64>, default: usize) -> Result<usize, ConfigError> {
    match v {
        None => Ok(default),
        Some(v) if v >= 1 => Ok(v as usize),
        Some(v) => Err(invalid(text, field, format!("must be a positive integer, got {v}"))),
    }
}

impl RawConfig {
    /// Applies defaults and checks every field. `text` is the source
    /// document (for line numbers) and `base_dir` resolves a relative
    /// `coefficients_file`.
    pub fn validate(self, text: &str, base_dir: Option<&Path>) -> Result<RunConfig, ConfigError> {
        let command = self.command.ok_or_else(|| invalid(text, "command", "missing field `command`"))?;
        let order = match self.order {
            None => Order::Fourth,
            Some(v) => Order::from_u8(v).map_err(|_| invalid(text, "order", format!("must be 2 or 4, got {v}")))?,
        };
        let n = positive(text, "N", self.n, DEFAULT_N)?;
        let trusted = n / 4;
        let m = match self.m {
            None => 24.min(trusted),
            Some(v) if v < 1 => return Err(invalid(text, "M", format!("must be a positive integer, got {v}"))),
            Some(v) if v as usize > trusted => {
                return Err(out_of_range(text, "M", format!("M exceeds N/4 (M = {v}, N = {n}, N/4 = {trusted})")));
            }
            Some(v) => v as usize,
        };
        if m == 0 && matches!(command, Command::Spectrum | Command::Trace | Command::Sweep | Command::Asymptotics) {
            return Err(out_of_range(text, "N", format!("N = {n} leaves no trusted indices (need N >= 4)")));
        }
        let q_points = positive(text, "Q", self.q_points, DEFAULT_Q)?;
        if q_points < 64 {
            return Err(invalid(text, "Q", format!("contour quadrature needs Q >= 64, got {q_points}")));
        }
        let t = self.t.unwrap_or(0.0);
        let x = self.x.unwrap_or(0.0);
        for (name, v) in [("t", t), ("x", x)] {
            if !v.is_finite() {
                return Err(invalid(text, name, "must be finite"));
            }
        }
        let x_grid = match (self.x_grid, self.grid_points) {
            (Some(_), Some(_)) => return Err(invalid(text, "grid_points", "give either x_grid or grid_points, not both")),
            (Some(g), None) => {
                if g.is_empty() || g.iter().any(|v| !v.is_finite()) {
                    return Err(invalid(text, "x_grid", "must be a non-empty list of finite numbers"));
                }
                g
            }
            (None, gp) => {
                let k = positive(text, "grid_points", gp, DEFAULT_GRID_POINTS)?;
                (0..k).map(|i| i as f64 / k as f64).collect()
            }
        };
        let contour_limit = n / 8;
        let contours = match self.contours {
            None => (1..=contour_limit).collect(),
            Some(c) => {
                if c.is_empty() {
                    return Err(invalid(text, "contours", "must not be empty"));
                }
                let mut out = Vec::with_capacity(c.len());
                for v in c {
                    if v < 1 {
                        return Err(invalid(text, "contours", format!("contour indices must be positive, got {v}")));
                    }
                    if v as usize > contour_limit {
                        return Err(out_of_range(
                            text,
                            "contours",
                            format!("contour {v} exceeds N/8 = {contour_limit}"),
                        ));
                    }
                    out.push(v as usize);
                }
                out
            }
        };
        if command == Command::Contour && contours.is_empty() {
            return Err(out_of_range(text, "N", format!("N = {n} admits no contour (need N >= 8)")));
        }
        let grids = match self.grids {
            None => DEFAULT_FD_GRIDS,
            Some(g) => {
                let ok = g.len() == 3 && g[0] >= 64 && g[1] == 2 * g[0] && g[2] == 2 * g[1];
                if !ok {
                    return Err(invalid(text, "grids", "need three grids, the first >= 64, each doubling the last"));
                }
                [g[0] as usize, g[1] as usize, g[2] as usize]
            }
        };
        let boundary = self.boundary.unwrap_or(Boundary::Periodic);
        let count = positive(text, "count", self.count, DEFAULT_ORACLE_COUNT)?;
        let available = match boundary {
            Boundary::Periodic => 2 * trusted + 1,
            Boundary::Dirichlet => trusted,
        };
        if command == Command::OracleCompare && count > available {
            return Err(out_of_range(
                text,
                "count",
                format!("count = {count} exceeds the {available} trusted eigenvalues at N = {n}"),
            ));
        }
        let identity = match (self.identity, order) {
            (None, Order::Fourth) => Identity::Fourth,
            (None, Order::Second) => Identity::Second,
            (Some(Identity::Fourth), Order::Second) => {
                return Err(invalid(text, "identity", "identity `fourth` needs order = 4"));
            }
            (Some(i @ (Identity::Second | Identity::Squared)), Order::Fourth) => {
                let name = if i == Identity::Second { "second" } else { "squared" };
                return Err(invalid(text, "identity", format!("identity `{name}` needs order = 2")));
            }
            (Some(i), _) => i,
        };

        let (p, q, source) = match (&self.coefficients_file, &self.p, &self.q) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                return Err(invalid(text, "coefficients_file", "give coefficients inline or by file, not both"));
            }
            (Some(path), None, None) => {
                let path = match base_dir {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                let body = std::fs::read_to_string(&path).map_err(|e| {
                    invalid(text, "coefficients_file", format!("cannot read {}: {e}", path.display()))
                })?;
                let file: CoefficientFile = toml::from_str(&body).map_err(|e| {
                    let inner = toml_error(&body, &e);
                    invalid(text, "coefficients_file", format!("{}: {inner}", path.display()))
                })?;
                (file.p, file.q, "coefficients_file")
            }
            (None, p, q) => (p.clone(), q.clone(), "q"),
        };
        if p.is_none() && q.is_none() {
            return Err(invalid(text, source, "missing coefficients: give a [p] and/or [q] table"));
        }
        let poly = |table: Option<CoefficientTable>, name: &str| -> Result<TrigPoly, ConfigError> {
            match table {
                None => Ok(TrigPoly::zero()),
                Some(t) => t.to_poly().map_err(|e| invalid(text, &format!("{name}."), e.to_string())),
            }
        };
        let (p, q) = (poly(p, "p")?, poly(q, "q")?);
        let coefficients = CoefficientPair::new(p, q).map_err(|e| invalid(text, "p.period", e.to_string()))?;
        let degree = coefficients.degree();
        if 2 * degree > n {
            return Err(invalid(text, "N", format!("N = {n} cannot resolve coefficients of degree {degree} (need N >= {})", 2 * degree)));
        }

        Ok(RunConfig {
            command,
            coefficients,
            order,
            n,
            m,
            q_points,
            t,
            x,
            x_grid,
            boundary,
            identity,
            contours,
            grids,
            count,
            format: self.format.unwrap_or(Format::Csv),
            output: self.output,
        })
    }
}

impl RunConfig {
    /// The equivalent fully explicit document.
    pub fn to_raw(&self) -> RawConfig {
        RawConfig {
            command: Some(self.command),
            order: Some(self.order.as_u8()),
            n: Some(self.n as i64),
            m: Some(self.m as i64),
            q_points: Some(self.q_points as i64),
            t: Some(self.t),
            x: Some(self.x),
            x_grid: Some(self.x_grid.clone()),
            grid_points: None,
            boundary: Some(self.boundary),
            identity: Some(self.identity),
            contours: Some(self.contours.iter().map(|&c| c as i64).collect()),
            grids: Some(self.grids.iter().map(|&g| g as i64).collect()),
            count: Some(self.count as i64),
            format: Some(self.format),
            output: self.output.clone(),
            coefficients_file: None,
            p: Some(CoefficientTable::from_poly(self.coefficients.p())),
            q: Some(CoefficientTable::from_poly(self.coefficients.q())),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_raw()).expect("configuration serializes")
    }
}
