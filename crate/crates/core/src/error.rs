//! Error types shared by every module in the crate.

use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance. Carries the best estimate so callers can
    /// decide whether the partial result is still usable.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (best estimate {estimate:.6e}, error bound {err_est:.3e})"
    )]
    NonConvergence {
        estimate: f64,
        err_est: f64,
        subdivisions: usize,
    },

    /// Model or solver parameters violate an invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A normalized ratio was requested but its denominator vanishes.
    #[error("degenerate normalization: {0}")]
    DivisionDegenerate(String),

    /// A root search found no sign change anywhere on its grid.
    #[error("no root found on (0, {x_max}]")]
    NoRootFound { x_max: f64 },

    /// An eigenvalue computation produced non-finite output.
    #[error("eigenvalue computation failed: {0}")]
    NumericalDegeneracy(String),

    /// Wrapper attaching the grid point at which a sweep evaluation failed.
    #[error("at x = {x}: {source}")]
    AtX {
        x: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the sweep coordinate at which it occurred.
    pub fn at_x(self, x: f64) -> Self {
        Error::AtX {
            x,
            source: Box::new(self),
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_includes_context() {
        let e = Error::NonConvergence {
            estimate: 1.25,
            err_est: 1e-3,
            subdivisions: 10,
        };
        let msg = e.to_string();
        assert!(msg.contains("10 subdivisions"));
        assert!(msg.contains("1.250000e0"));
    }

    #[test]
    fn at_x_wraps_source() {
        let inner = Error::Domain("y must be positive".into());
        let wrapped = inner.clone().at_x(3.5);
        match &wrapped {
            Error::AtX { x, source } => {
                assert_eq!(*x, 3.5);
                assert_eq!(**source, inner);
            }
            other => panic!("unexpected variant {other:?}"),
        }
        assert!(wrapped.to_string().contains("at x = 3.5"));
    }
}
