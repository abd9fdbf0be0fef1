use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Binary operation on polynomials with different periods.
    PeriodMismatch { left: f64, right: f64 },
    /// Period must be finite and positive.
    InvalidPeriod(f64),
    /// The operation is only defined for 1-periodic data.
    NotUnitPeriod(f64),
    /// A coefficient is NaN or infinite.
    NonFiniteCoefficient,
    /// Galerkin truncation cannot carry every Fourier mode of the coefficients.
    TruncationTooSmall { truncation: usize, degree: usize },
    /// Finite-difference grid below the supported minimum.
    GridTooSmall { cells: usize, min: usize },
    /// Requested index beyond the trusted part of a truncated spectrum.
    TrustedRange { requested: usize, trusted: usize },
    /// The eigensolver did not converge within its sweep budget.
    NonConvergence { sweeps: usize },
    /// Spectral parameter too close to a pole of a resolvent.
    NearPole { re: f64, im: f64, pole: f64 },
    /// A contour passes too close to an eigenvalue of a truncated operator.
    ContourHitsEigenvalue { contour: usize, radius: f64, eigenvalue: f64 },
    /// Any other out-of-range argument.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PeriodMismatch { left, right } => {
                write!(f, "period mismatch: {left} vs {right}")
            }
            Error::InvalidPeriod(p) => write!(f, "invalid period {p}"),
            Error::NotUnitPeriod(p) => write!(f, "expected a 1-periodic function, got period {p}"),
            Error::NonFiniteCoefficient => f.write_str("non-finite coefficient"),
            Error::TruncationTooSmall { truncation, degree } => write!(
                f,
                "truncation N={truncation} cannot represent coefficients of degree {degree} (need N >= {})",
                2 * degree
            ),
            Error::GridTooSmall { cells, min } => {
                write!(f, "grid of {cells} cells is below the minimum of {min}")
            }
            Error::TrustedRange { requested, trusted } => write!(
                f,
                "index {requested} exceeds the trusted range n <= {trusted} (N/4)"
            ),
            Error::NonConvergence { sweeps } => {
                write!(f, "eigensolver failed to converge after {sweeps} sweeps")
            }
            Error::NearPole { re, im, pole } => {
                write!(f, "lambda = {re}{im:+}i lies within tolerance of the pole {pole}")
            }
            Error::ContourHitsEigenvalue { contour, radius, eigenvalue } => write!(
                f,
                "contour K_{contour} (radius {radius}) passes within tolerance of eigenvalue {eigenvalue}; choose another contour index"
            ),
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
