use nalgebra::DMatrix;

use crate::{HalfInt, QContext, Result};

/// Matrices of the U_q(su(2)) generators k^{±1/2}, e, f on the spin-ℓ space
/// H^ℓ in the orthonormal basis e_{-ℓ}, ..., e_{ℓ}.
#[derive(Debug, Clone)]
pub struct SpinRep {
    pub ell: HalfInt,
    pub k_half: DMatrix<f64>,
    pub k_half_inv: DMatrix<f64>,
    pub e: DMatrix<f64>,
    pub f: DMatrix<f64>,
}

/// b^ℓ(p) = sqrt((q^{-ℓ+p-1} - q^{ℓ-p+1})(q^{-ℓ-p} - q^{ℓ+p}))/(q^{-1}-q);
/// zero outside -ℓ < p <= ℓ. Arguments are doubled (two_p = 2p).
pub fn b_coeff(two_ell: i64, two_p: i64, q: f64) -> f64 {
    let lp = (two_ell + two_p) as f64 / 2.0;
    let lm = (two_ell - two_p) as f64 / 2.0;
    let f1 = q.powf(-lm - 1.0) - q.powf(lm + 1.0);
    let f2 = q.powf(-lp) - q.powf(lp);
    let v = f1 * f2;
    if v <= 0.0 {
        return 0.0;
    }
    v.sqrt() / (1.0 / q - q)
}

/// The spin-ℓ representation: t(k^{1/2})e_p = q^{-p} e_p,
/// t(e)e_p = q^{2-p} b(p) e_{p-1}, t(f)e_p = q^{p-1} b(p+1) e_{p+1}.
pub fn spin_rep(ell: HalfInt, qc: &QContext) -> Result<SpinRep> {
    ell.require_spin()?;
    let q = qc.q();
    let two_ell = ell.twice();
    let d = ell.dim();
    let mut k_half = DMatrix::zeros(d, d);
    let mut k_half_inv = DMatrix::zeros(d, d);
    let mut e = DMatrix::zeros(d, d);
    let mut f = DMatrix::zeros(d, d);
    for idx in 0..d {
        let two_p = 2 * idx as i64 - two_ell;
        let p = two_p as f64 / 2.0;
        k_half[(idx, idx)] = q.powf(-p);
        k_half_inv[(idx, idx)] = q.powf(p);
        if idx > 0 {
            e[(idx - 1, idx)] = q.powf(2.0 - p) * b_coeff(two_ell, two_p, q);
        }
        if idx + 1 < d {
            f[(idx + 1, idx)] = q.powf(p - 1.0) * b_coeff(two_ell, two_p + 2, q);
        }
    }
    Ok(SpinRep { ell, k_half, k_half_inv, e, f })
}

impl SpinRep {
    pub fn k(&self) -> DMatrix<f64> {
        &self.k_half * &self.k_half
    }

    pub fn k_inv(&self) -> DMatrix<f64> {
        &self.k_half_inv * &self.k_half_inv
    }

    /// Matrix of the Casimir ω = (q k^{-1} + q^{-1} k - 2)/(q - q^{-1})² + ef.
    pub fn casimir(&self, qc: &QContext) -> DMatrix<f64> {
        let q = qc.q();
        let d = self.ell.dim();
        let denom = (q - 1.0 / q) * (q - 1.0 / q);
        (self.k_inv() * q + self.k() / q - DMatrix::identity(d, d) * 2.0) / denom + &self.e * &self.f
    }
}

/// Scalar by which the Casimir ω acts on the spin-ℓ representation:
/// ((q^{-1/2-ℓ} - q^{1/2+ℓ})/(q^{-1} - q))².
pub fn casimir_scalar(ell: HalfInt, q: f64) -> f64 {
    let l = ell.as_f64();
    let num = q.powf(-0.5 - l) - q.powf(0.5 + l);
    (num / (1.0 / q - q)).powi(2)
}
