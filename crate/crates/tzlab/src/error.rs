//! Error type shared by every pipeline stage.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// A spectral-domain precondition was violated (λ = 0, light cone, γ pole, ...).
    Domain(String),
    /// ODE integration failed; carries the spectral parameter at fault.
    Integration { lambda: f64, reason: String },
    /// |s11| fell below the solitonless guard (violates the no-soliton assumption).
    SolitonSuspicion { lambda: f64, s11_abs: f64 },
    /// Building a reflection table failed at one or more grid points.
    TableBuild { failures: Vec<(f64, String)> },
    /// The leading-order amplitude pushed the log argument non-positive.
    AmplitudeValidity { x: f64, t: f64, log_arg: f64 },
    /// PDE stability failure (non-finite field or blow-up guard tripped).
    PdeStability { t: f64, max_abs: f64, detail: String },
    /// Degenerate input to the error-decay fit.
    DegenerateFit(String),
    /// Configuration file problem; line is 1-based when known.
    Config {
        line: Option<usize>,
        key: Option<String>,
        msg: String,
    },
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Integration { lambda, reason } => {
                write!(f, "integration failure at lambda = {lambda}: {reason}")
            }
            Error::SolitonSuspicion { lambda, s11_abs } => write!(
                f,
                "soliton suspicion at lambda = {lambda}: |s11| = {s11_abs:.3e} below guard"
            ),
            Error::TableBuild { failures } => {
                write!(f, "reflection table failed at {} lambda(s):", failures.len())?;
                for (lam, why) in failures {
                    write!(f, " [{lam}: {why}]")?;
                }
                Ok(())
            }
            Error::AmplitudeValidity { x, t, log_arg } => write!(
                f,
                "amplitude exceeds validity at (x, t) = ({x}, {t}): log argument {log_arg:.3e} <= 0"
            ),
            Error::PdeStability { t, max_abs, detail } => {
                write!(f, "PDE stability failure at t = {t}: max|u| = {max_abs:.3e} ({detail})")
            }
            Error::DegenerateFit(msg) => write!(f, "degenerate fit: {msg}"),
            Error::Config { line, key, msg } => {
                write!(f, "config error")?;
                if let Some(n) = line {
                    write!(f, " (line {n})")?;
                }
                if let Some(k) = key {
                    write!(f, " [{k}]")?;
                }
                write!(f, ": {msg}")
            }
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl Error {
    /// Process exit code for the CLI contract: 1 config, 2 numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Io(_) => 1,
            _ => 2,
        }
    }
}
