use nalgebra::DMatrix;

use crate::qseries::{chebyshev_u_ext, qpoch_exp, qpoch_t};
use crate::dd::{Dd, Real};
use crate::{Error, HalfInt, Precision, QContext, Result};

/// Chebyshev expansion coefficient α_t(m,n) of the weight entry
/// W_{m,n} = Σ_t α_t(m,n) U_{m+n-2t}, for 0 <= m <= n <= 2ℓ, 0 <= t <= n.
pub fn alpha_coeff(ell: HalfInt, m: u32, n: u32, t: u32, qc: &QContext) -> Result<f64> {
    let two_l = ell.twice();
    ell.require_spin()?;
    if !(m <= n && (n as i64) <= two_l && t <= n) {
        return Err(Error::InvalidArgument(format!(
            "alpha_coeff requires 0 <= m <= n <= 2ℓ and t <= n, got (m,n,t)=({m},{n},{t}) at 2ℓ={two_l}"
        )));
    }
    Ok(match qc.precision() {
        Precision::Double => alpha_t::<f64>(two_l, m as i64, n as i64, t as i64, qc.q()),
        Precision::Extended => alpha_t::<Dd>(two_l, m as i64, n as i64, t as i64, qc.q()).to_f64(),
    })
}

fn alpha_t<T: Real>(two_l: i64, m: i64, n: i64, t: i64, q: f64) -> T {
    let qt = T::from_f64(q);
    let expo = 2 * n * (two_l + 1) - n * n - (2 * two_l + 3) * t + t * t - two_l + m;
    let mut v = qt.powi(expo);
    v = v * (T::one() - qt.powi(2 * two_l + 2)) / (T::one() - qt.powi(2 * m + 2));
    let a: T = qpoch_exp(2, 2, q, (two_l - n) as u32);
    let b: T = qpoch_exp(2, 2, q, n as u32);
    let c: T = qpoch_exp(2, 2, q, two_l as u32);
    v = v * a * b / c;
    let sign = if (n - t) % 2 == 0 { T::one() } else { -T::one() };
    let d: T = qpoch_exp(2 * m - 2 * two_l, 2, q, (n - t) as u32);
    let e: T = qpoch_exp(2 * m + 4, 2, q, (n - t) as u32);
    v = v * sign * d / e;
    let f: T = qpoch_exp(2 * two_l + 4 - 2 * t, 2, q, t as u32);
    let g: T = qpoch_t(q * q, q * q, t as u32);
    v * f / g
}

/// The full symmetric weight matrix W(x) via the Chebyshev expansion,
/// extended by W_{m,n} = W_{n,m} for m > n. Chebyshev indices below zero use
/// the standard continuation U_{-1} = 0, U_{-n-2} = -U_n.
pub fn weight_eval(ell: HalfInt, qc: &QContext, x: f64) -> Result<DMatrix<f64>> {
    if x.abs() > 1.0 {
        return Err(Error::Domain(format!("weight_eval requires |x| <= 1, got {x}")));
    }
    weight_eval_unchecked(ell, qc, x)
}

/// Chebyshev-expansion evaluation without the domain guard; the expansion is
/// polynomial so internal identity checks may evaluate it off [-1,1].
pub(crate) fn weight_eval_unchecked(ell: HalfInt, qc: &QContext, x: f64) -> Result<DMatrix<f64>> {
    ell.require_spin()?;
    let d = ell.dim();
    let mut w = DMatrix::zeros(d, d);
    for m in 0..d {
        for n in m..d {
            let mut s = 0.0;
            for t in 0..=n {
                s += alpha_coeff(ell, m as u32, n as u32, t as u32, qc)?
                    * chebyshev_u_ext((m + n) as i64 - 2 * t as i64, x);
            }
            w[(m, n)] = s;
            w[(n, m)] = s;
        }
    }
    Ok(w)
}

/// Orthonormal J-eigenbasis rows: the first block of rows spans the +1
/// eigenspace ((e_i + e_{2ℓ-i})/√2 ordered by increasing i, the middle vector
/// for integer ℓ included), the remaining rows the -1 eigenspace.
/// Returns (plus_rows, minus_rows).
pub fn j_eigenbasis(dim: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let half = 0.5_f64.sqrt();
    let n_minus = dim / 2;
    let n_plus = dim - n_minus;
    let mut plus = DMatrix::zeros(n_plus, dim);
    let mut minus = DMatrix::zeros(n_minus, dim);
    for i in 0..n_plus {
        if 2 * i + 1 == dim {
            plus[(i, i)] = 1.0;
        } else {
            plus[(i, i)] = half;
            plus[(i, dim - 1 - i)] = half;
        }
    }
    for i in 0..n_minus {
        minus[(i, i)] = half;
        minus[(i, dim - 1 - i)] = -half;
    }
    (plus, minus)
}

/// Restrictions of W(x) to the ±1 eigenspaces of J in the basis of
/// [`j_eigenbasis`]; the -1 block is empty (0×0) for ℓ = 0.
pub fn block_split(ell: HalfInt, qc: &QContext, x: f64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let w = weight_eval(ell, qc, x)?;
    let (p, m) = j_eigenbasis(ell.dim());
    Ok((&p * &w * p.transpose(), &m * &w * m.transpose()))
}
