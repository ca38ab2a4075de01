use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Arithmetic mode for the scalar coefficient kernels.
///
/// `Extended` routes the q-Pochhammer / q-series coefficient sums through
/// double-double (~32 decimal digit) arithmetic before rounding to `f64`.
/// It is an opt-in for q close to 1, where the (1-q^2)-type denominators
/// degrade conditioning; matrix linear algebra stays in `f64` either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

/// Parameter bundle threaded through every evaluation: the deformation
/// parameter q in (0,1), the precision mode and the tolerances used by
/// consistency checks inside the kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: f64,
    precision: Precision,
    tol_abs: f64,
    tol_rel: f64,
}

impl QContext {
    /// Context with default tolerances (1e-10) and machine-double precision.
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) || !q.is_finite() {
            return Err(Error::InvalidArgument(format!("q must lie in (0,1), got {q}")));
        }
        Ok(QContext {
            q,
            precision: Precision::Double,
            tol_abs: 1e-10,
            tol_rel: 1e-10,
        })
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn with_tolerances(mut self, tol_abs: f64, tol_rel: f64) -> Result<Self> {
        if !tol_abs.is_finite() || !tol_rel.is_finite() || tol_abs < 0.0 || tol_rel < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tolerances must be finite and nonnegative, got ({tol_abs}, {tol_rel})"
            )));
        }
        self.tol_abs = tol_abs;
        self.tol_rel = tol_rel;
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn tol_abs(&self) -> f64 {
        self.tol_abs
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }
}
